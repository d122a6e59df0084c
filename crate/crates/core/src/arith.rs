//! Exact integer arithmetic: deterministic primality, budgeted factorization
//! and p-adic valuations.
//!
//! Big integers and rationals are the `num` types; everything here is a pure
//! function of its arguments.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Smallest integer for which the Miller-Rabin witness set {2, 3, ..., 41}
/// is no longer known to be deterministic.
pub const PRIMALITY_BOUND: &str = "3317044064679887385961981";

const WITNESSES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Default bound for trial division.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;
/// Default total number of Pollard rho iterations spent per factorization.
pub const DEFAULT_RHO_ITERATIONS: u64 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("primality of {0} cannot be decided deterministically (bound is {PRIMALITY_BOUND})")]
    OutOfRange(BigInt),
    #[error("factorization incomplete: budget exhausted on cofactor {cofactor}")]
    FactorizationIncomplete { cofactor: BigInt },
    #[error("cannot factor zero")]
    Zero,
    #[error("{0} is not a prime")]
    NotPrime(BigInt),
}

/// Work limits for [`factor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    pub trial_bound: u64,
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: DEFAULT_TRIAL_BOUND,
            rho_iterations: DEFAULT_RHO_ITERATIONS,
        }
    }
}

/// `unit * prod(p^e)` with primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    pub unit: i8,
    pub factors: Vec<(BigInt, u32)>,
}

impl PrimeFactorization {
    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::from(self.unit);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    /// Exponent of `p` (0 if absent).
    pub fn multiplicity(&self, p: &BigInt) -> u32 {
        self.factors.iter().find(|(q, _)| q == p).map_or(0, |(_, e)| *e)
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }
}

fn primality_bound() -> &'static BigInt {
    static BOUND: OnceLock<BigInt> = OnceLock::new();
    BOUND.get_or_init(|| PRIMALITY_BOUND.parse().unwrap())
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        let w = w as u64;
        if n == w {
            return true;
        }
        if n.is_multiple_of(w) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &w in &WITNESSES {
        let mut x = pow_mod_u64(w as u64, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_prime_big(n: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &w in &WITNESSES {
        if (n % w).is_zero() {
            return n == &BigUint::from(w);
        }
        let mut x = BigUint::from(w).modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic primality test.
///
/// Values below 2 are not prime. Inputs at or above [`PRIMALITY_BOUND`] are
/// rejected rather than answered probabilistically.
pub fn is_prime(n: &BigInt) -> Result<bool, ArithError> {
    if n < &BigInt::from(2) {
        return Ok(false);
    }
    if n >= primality_bound() {
        return Err(ArithError::OutOfRange(n.clone()));
    }
    if let Some(small) = n.to_u64() {
        return Ok(is_prime_u64(small));
    }
    Ok(is_prime_big(n.magnitude()))
}

/// Exponent of the prime `p` in the nonzero integer `n`.
pub fn vp_int(n: &BigInt, p: &BigInt) -> u32 {
    debug_assert!(!n.is_zero() && p > &BigInt::one());
    let mut k = 0;
    let mut n = n.abs();
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn vp(x: &BigRational, p: &BigInt) -> i64 {
    assert!(!x.is_zero(), "valuation of zero");
    vp_int(x.numer(), p) as i64 - vp_int(x.denom(), p) as i64
}

/// 2-adic valuation of a positive machine integer.
pub fn v2(m: u64) -> u32 {
    assert!(m > 0);
    m.trailing_zeros()
}

fn small_primes(bound: u64) -> Vec<u32> {
    let bound = bound as usize;
    let mut sieve = vec![true; bound + 1];
    let mut primes = Vec::new();
    for i in 2..=bound {
        if sieve[i] {
            primes.push(i as u32);
            let mut j = i * i;
            while j <= bound {
                sieve[j] = false;
                j += i;
            }
        }
    }
    primes
}

fn cached_primes(bound: u64) -> std::borrow::Cow<'static, [u32]> {
    static DEFAULT: OnceLock<Vec<u32>> = OnceLock::new();
    if bound <= DEFAULT_TRIAL_BOUND {
        let all = DEFAULT.get_or_init(|| small_primes(DEFAULT_TRIAL_BOUND));
        let end = all.partition_point(|&p| (p as u64) <= bound);
        std::borrow::Cow::Borrowed(&all[..end])
    } else {
        std::borrow::Cow::Owned(small_primes(bound))
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Brent's variant of Pollard rho on a machine-word odd composite.
fn rho_u64(n: u64, c: u64, budget: &mut u64) -> Option<u64> {
    let f = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
    let batch = 128u64;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let steps = batch.min(r - k);
            if *budget < steps {
                return None;
            }
            *budget -= steps;
            for _ in 0..steps {
                y = f(y);
                q = mul_mod_u64(q, x.abs_diff(y), n);
            }
            g = gcd_u64(q, n);
            k += batch;
        }
        r *= 2;
    }
    if g == n {
        loop {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            ys = f(ys);
            g = gcd_u64(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn rho_big(n: &BigUint, c: u64, budget: &mut u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let batch = 128u64;
    let mut y = BigUint::from(2u32);
    let (mut r, mut q, mut g) = (1u64, BigUint::one(), BigUint::one());
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let steps = batch.min(r - k);
            if *budget < steps {
                return None;
            }
            *budget -= steps;
            for _ in 0..steps {
                y = f(&y);
                q = (&q * diff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += batch;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            ys = f(&ys);
            g = diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

/// Splits an odd composite (or an unprovable cofactor) into two nontrivial
/// parts, or gives up when the budget runs out.
fn split(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if let Some(root) = exact_sqrt(n) {
        return Some(root);
    }
    for c in 1u64.. {
        if *budget == 0 {
            return None;
        }
        let found = match n.to_u64() {
            Some(small) => rho_u64(small, c, budget).map(BigUint::from),
            None => rho_big(n, c, budget),
        };
        if found.is_some() {
            return found;
        }
    }
    unreachable!()
}

fn exact_sqrt(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Complete prime factorization of a nonzero integer.
///
/// Trial division up to `budget.trial_bound`, then Pollard rho. Every
/// reported prime has been proven prime; when that is not possible within the
/// budget the unfactored cofactor is returned in the error.
pub fn factor(n: &BigInt, budget: FactorBudget) -> Result<PrimeFactorization, ArithError> {
    if n.is_zero() {
        return Err(ArithError::Zero);
    }
    let unit: i8 = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut rest = n.magnitude().clone();
    let mut found: Vec<(BigUint, u32)> = Vec::new();

    for &p in cached_primes(budget.trial_bound).iter() {
        if rest.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            found.push((pb, e));
        }
    }

    let mut iterations = budget.rho_iterations;
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        let mi = BigInt::from(m.clone());
        match is_prime(&mi) {
            Ok(true) => found.push((m, 1)),
            Ok(false) | Err(ArithError::OutOfRange(_)) => match split(&m, &mut iterations) {
                Some(d) => {
                    let other = &m / &d;
                    stack.push(d);
                    stack.push(other);
                }
                None => return Err(ArithError::FactorizationIncomplete { cofactor: mi }),
            },
            Err(e) => return Err(e),
        }
    }

    found.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for (p, e) in found {
        let p = BigInt::from(p);
        match factors.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => factors.push((p, e)),
        }
    }
    Ok(PrimeFactorization { unit, factors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn trial_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn factor_examples() {
        let f = factor(&big(25), FactorBudget::default()).unwrap();
        assert_eq!(f.unit, 1);
        assert_eq!(f.factors, vec![(big(5), 2)]);

        let f = factor(&big(-108), FactorBudget::default()).unwrap();
        assert_eq!(f.unit, -1);
        assert_eq!(f.factors, vec![(big(2), 2), (big(3), 3)]);

        let f = factor(&big(900), FactorBudget::default()).unwrap();
        assert_eq!(f.factors, vec![(big(2), 2), (big(3), 2), (big(5), 2)]);

        let f = factor(&big(-1), FactorBudget::default()).unwrap();
        assert!(f.is_unit());
        assert_eq!(f.unit, -1);
        assert_eq!(factor(&big(0), FactorBudget::default()), Err(ArithError::Zero));
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(&big(5)).unwrap());
        assert!(!is_prime(&big(561)).unwrap());
        assert!(is_prime(&big((1 << 31) - 1)).unwrap());
        assert!(!is_prime(&big(1)).unwrap());
        // Mersenne M61 and a strong pseudoprime to several small bases.
        assert!(is_prime(&big((1 << 61) - 1)).unwrap());
        assert!(!is_prime(&big(3_215_031_751)).unwrap());
        // 2^64 + 13 is the least prime above 2^64 and takes the big-integer path.
        let p = (BigInt::one() << 64) + 13;
        assert!(is_prime(&p).unwrap());
        assert!(!is_prime(&(&p * 3)).unwrap());
        assert!(!is_prime(&((BigInt::one() << 64) + 1)).unwrap());
    }

    #[test]
    fn primality_rejects_out_of_range() {
        let huge: BigInt = PRIMALITY_BOUND.parse().unwrap();
        assert!(matches!(is_prime(&huge), Err(ArithError::OutOfRange(_))));
    }

    #[test]
    fn is_prime_agrees_with_trial_division_below_a_million() {
        // Full sweep; trial division oracle is independent of Miller-Rabin.
        let sieve = small_primes(1_000_000);
        let mut next = sieve.iter().peekable();
        for n in 0..1_000_000u64 {
            let expected = next.peek().is_some_and(|&&p| p as u64 == n);
            if expected {
                next.next();
            }
            assert_eq!(is_prime_u64(n), expected, "n = {n}");
        }
        for n in [999_983u64, 1_000_003, 104_729, 7_919 * 7_919] {
            assert_eq!(is_prime(&big(n as i64)).unwrap(), trial_is_prime(n));
        }
    }

    #[test]
    fn rho_splits_products_of_large_primes() {
        let p = big(1_000_003);
        let q = big(999_999_937);
        let r: BigInt = "1000000000000000003".parse().unwrap();
        let n = &p * &q * &r;
        let f = factor(&n, FactorBudget::default()).unwrap();
        assert_eq!(f.factors, vec![(p.clone(), 1), (q, 1), (r, 1)]);
        let sq = &p * &p * 7;
        let f = factor(&sq, FactorBudget::default()).unwrap();
        assert_eq!(f.factors, vec![(big(7), 1), (p, 2)]);
    }

    #[test]
    fn exhausted_budget_reports_cofactor() {
        let p = big(1_000_003);
        let q = big(1_000_033);
        let budget = FactorBudget {
            trial_bound: 1000,
            rho_iterations: 0,
        };
        let err = factor(&(&p * &q * 4), budget).unwrap_err();
        assert_eq!(err, ArithError::FactorizationIncomplete { cofactor: &p * &q });
    }

    #[test]
    fn unprovable_prime_is_not_guessed() {
        // 2^127 - 1 is prime but above the deterministic bound.
        let m127 = (BigInt::one() << 127) - 1;
        let budget = FactorBudget {
            trial_bound: 1000,
            rho_iterations: 10_000,
        };
        assert!(matches!(
            factor(&m127, budget),
            Err(ArithError::FactorizationIncomplete { .. })
        ));
    }

    #[test]
    fn valuation_examples() {
        let r = |n: i64, d: i64| BigRational::new(big(n), big(d));
        assert_eq!(vp(&r(54, 1), &big(3)), 3);
        assert_eq!(vp(&r(25, 1), &big(5)), 2);
        assert_eq!(vp(&r(15, 2), &big(5)), 1);
        assert_eq!(vp(&r(15, 2), &big(2)), -1);
        assert_eq!(vp(&r(-7, 9), &big(3)), -2);
        assert_eq!(v2(12), 2);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn nonzero_rational() -> impl Strategy<Value = BigRational> {
            ((-10_000i64..10_000).prop_filter("nonzero", |n| *n != 0), 1i64..10_000)
                .prop_map(|(n, d)| BigRational::new(big(n), big(d)))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn factor_multiplies_back(n in -999_999_999_999i64..1_000_000_000_000) {
                prop_assume!(n != 0);
                let f = factor(&big(n), FactorBudget::default()).unwrap();
                prop_assert_eq!(f.product(), big(n));
                for w in f.factors.windows(2) {
                    prop_assert!(w[0].0 < w[1].0);
                }
                for (p, e) in &f.factors {
                    prop_assert!(*e > 0);
                    prop_assert!(trial_is_prime(p.to_u64().unwrap()));
                }
            }
        }

        proptest! {
            #[test]
            fn valuation_is_additive(a in nonzero_rational(), b in nonzero_rational(),
                                     p in prop::sample::select(vec![2i64, 3, 5, 7, 11])) {
                let p = big(p);
                prop_assert_eq!(vp(&(&a * &b), &p), vp(&a, &p) + vp(&b, &p));
                let s = &a + &b;
                if !s.is_zero() {
                    prop_assert!(vp(&s, &p) >= vp(&a, &p).min(vp(&b, &p)));
                }
            }
        }
    }
}
