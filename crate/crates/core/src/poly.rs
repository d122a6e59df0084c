//! Dense univariate polynomials with integer coefficients.
//!
//! Discriminants go through a fraction-free subresultant resultant, and
//! irreducibility is decided (when possible) by rational-root exclusion or by
//! exhibiting a prime modulo which the polynomial stays irreducible.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{self, FactorBudget};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial must have degree at least {min}, got {got:?}")]
    DegreeTooSmall { min: usize, got: Option<usize> },
}

/// Polynomial in `x` over the integers, coefficients lowest degree first.
///
/// Trailing zero coefficients are stripped on construction, so the zero
/// polynomial has an empty coefficient list and no degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &BigInt) -> Self {
        Self::new(vec![-r, BigInt::one()])
    }

    /// Monic polynomial with the given integer roots.
    pub fn from_roots(roots: &[BigInt]) -> Self {
        roots
            .iter()
            .fold(Self::constant(BigInt::one()), |acc, r| &acc * &Self::linear_root(r))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Checks the monic / minimum-degree preconditions shared by the
    /// certifier entry points.
    pub fn require_monic(&self, min_degree: usize) -> Result<usize, PolyError> {
        match self.degree() {
            Some(d) if d >= min_degree => {
                if self.is_monic() {
                    Ok(d)
                } else {
                    Err(PolyError::NotMonic)
                }
            }
            got => Err(PolyError::DegreeTooSmall { min: min_degree, got }),
        }
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `f(x + c)`
    pub fn shift(&self, c: &BigInt) -> Self {
        let step = Self::new(vec![c.clone(), BigInt::one()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| &(&acc * &step) + &Self::constant(a.clone()))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.exact_div_scalar(&c)
    }

    fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    fn exact_div_scalar(&self, k: &BigInt) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| {
                    debug_assert!((c % k).is_zero());
                    c / k
                })
                .collect(),
        )
    }

    /// `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("pseudo-remainder by zero");
        let Some(da) = self.degree() else {
            return IntPoly::zero();
        };
        if da < db {
            return self.clone();
        }
        let lb = b.leading();
        let mut r = self.clone();
        let mut remaining = da - db + 1;
        while let Some(dr) = r.degree().filter(|&dr| dr >= db) {
            let lr = r.leading();
            let mut next = r.scale(&lb).coeffs;
            for (i, c) in b.coeffs.iter().enumerate() {
                next[i + dr - db] -= &lr * c;
            }
            r = IntPoly::new(next);
            remaining -= 1;
        }
        r.scale(&num_traits::pow(lb, remaining))
    }

    /// Exact division in Z[x]; `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &IntPoly) -> Option<IntPoly> {
        let db = b.degree()?;
        let lb = b.leading();
        let mut r = self.coeffs.clone();
        let Some(da) = self.degree() else {
            return Some(IntPoly::zero());
        };
        if da < db {
            return None;
        }
        let mut q = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let (qk, rem) = r[k + db].div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            for (i, c) in b.coeffs.iter().enumerate() {
                r[k + i] -= &qk * c;
            }
            q[k] = qk;
        }
        r.iter().all(Zero::is_zero).then(|| IntPoly::new(q))
    }
}

impl std::ops::Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl std::ops::Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl std::ops::Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

/// Resultant by the subresultant pseudo-remainder sequence.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    let (Some(mut da), Some(mut db)) = (a.degree(), b.degree()) else {
        return BigInt::zero();
    };
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut sign_negative = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut da, &mut db);
        if da % 2 == 1 && db % 2 == 1 {
            sign_negative = true;
        }
    }
    if db == 0 {
        let r = num_traits::pow(b.leading(), da);
        return if sign_negative { -r } else { r };
    }

    let ca = a.content();
    let cb = b.content();
    a = a.exact_div_scalar(&ca);
    b = b.exact_div_scalar(&cb);
    let t = num_traits::pow(ca, db) * num_traits::pow(cb, da);

    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_negative = !sign_negative;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        b = r.exact_div_scalar(&(&g * num_traits::pow(h.clone(), delta)));
        g = a.leading();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1)
        };
        match b.degree() {
            None => return BigInt::zero(),
            Some(0) => break,
            Some(_) => {}
        }
    }
    let da = a.degree().unwrap();
    let h = num_traits::pow(b.leading(), da) / num_traits::pow(h, da - 1);
    let r = t * h;
    if sign_negative {
        -r
    } else {
        r
    }
}

/// `(-1)^(d(d-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant(f: &IntPoly) -> Result<BigInt, PolyError> {
    let d = match f.degree() {
        Some(d) if d >= 2 => d,
        got => return Err(PolyError::DegreeTooSmall { min: 2, got }),
    };
    let res = resultant(f, &f.derivative());
    let disc = res / f.leading();
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -disc } else { disc })
}

/// Greatest common divisor in Z[x], primitive with positive leading
/// coefficient times the gcd of the contents.
pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive_part().scale(&b.content());
    }
    if b.is_zero() {
        return a.primitive_part().scale(&a.content());
    }
    let c = a.content().gcd(&b.content());
    let (mut a, mut b) = (a.primitive_part(), b.primitive_part());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = a.pseudo_rem(&b);
        match r.degree() {
            None => break,
            Some(0) => return IntPoly::constant(c),
            Some(_) => {
                a = b;
                b = r.primitive_part();
            }
        }
    }
    b.primitive_part().scale(&c)
}

/// True iff `gcd(f, f')` is constant.
pub fn is_squarefree(f: &IntPoly) -> bool {
    assert!(f.degree().is_some_and(|d| d >= 1), "degree must be positive");
    gcd(f, &f.derivative()).degree() == Some(0)
}

/// How irreducibility was established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrreducibilityWitness {
    Linear,
    /// Degree 2 or 3 with no integer root among the divisors of the constant term.
    NoRationalRoot,
    /// Irreducible modulo `p`, with `p` not dividing the discriminant.
    ModPrime(u64),
}

impl fmt::Display for IrreducibilityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrreducibilityWitness::Linear => write!(f, "degree 1"),
            IrreducibilityWitness::NoRationalRoot => {
                write!(f, "degree <= 3 with no rational root")
            }
            IrreducibilityWitness::ModPrime(p) => write!(f, "irreducible modulo {p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrreducibilityVerdict {
    Proven(IrreducibilityWitness),
    /// Carries a nontrivial factor that divides the input exactly.
    Disproven(IntPoly),
    Unknown,
}

const WITNESS_PRIME_LIMIT: u64 = 1000;

/// Searches for a sound irreducibility witness for a monic polynomial.
pub fn irreducibility_witness(f: &IntPoly) -> IrreducibilityVerdict {
    let d = f.require_monic(1).expect("monic polynomial of positive degree");
    if d == 1 {
        return IrreducibilityVerdict::Proven(IrreducibilityWitness::Linear);
    }
    let repeated = gcd(f, &f.derivative());
    if repeated.degree() > Some(0) {
        return IrreducibilityVerdict::Disproven(repeated);
    }

    match integer_root(f) {
        Some(Some(r)) => return IrreducibilityVerdict::Disproven(IntPoly::linear_root(&r)),
        Some(None) if d <= 3 => return IrreducibilityVerdict::Proven(IrreducibilityWitness::NoRationalRoot),
        _ => {}
    }

    let disc = discriminant(f).expect("degree >= 2");
    for p in (2..=WITNESS_PRIME_LIMIT).filter(|&p| arith::is_prime(&BigInt::from(p)) == Ok(true)) {
        if (&disc % p).is_zero() {
            continue;
        }
        if fp::is_irreducible(&fp::reduce(f, p), p) {
            return IrreducibilityVerdict::Proven(IrreducibilityWitness::ModPrime(p));
        }
    }
    IrreducibilityVerdict::Unknown
}

/// Integer root of a monic polynomial, searched among divisors of the
/// constant term. `None` when the constant term could not be factored.
fn integer_root(f: &IntPoly) -> Option<Option<BigInt>> {
    let a0 = f.coeff(0);
    if a0.is_zero() {
        return Some(Some(BigInt::zero()));
    }
    let fac = arith::factor(&a0, FactorBudget::default()).ok()?;
    let mut divisors = vec![BigInt::one()];
    for (p, e) in &fac.factors {
        let mut next = Vec::with_capacity(divisors.len() * (*e as usize + 1));
        for d in &divisors {
            let mut pk = d.clone();
            for _ in 0..=*e {
                next.push(pk.clone());
                pk *= p;
            }
        }
        divisors = next;
    }
    divisors.sort();
    for d in divisors {
        for r in [d.clone(), -d] {
            if f.evaluate(&r).is_zero() {
                return Some(Some(r));
            }
        }
    }
    Some(None)
}

/// Small-prime polynomial arithmetic used by the irreducibility search.
mod fp {
    use super::*;

    pub type Poly = Vec<u64>;

    fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn reduce(f: &IntPoly, p: u64) -> Poly {
        let pb = BigInt::from(p);
        trim(f.coeffs().iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
    }

    fn inv(a: u64, p: u64) -> u64 {
        let (mut t, mut new_t, mut r, mut new_r) = (0i64, 1i64, p as i64, a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        t.rem_euclid(p as i64) as u64
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let q = r[top] * lead_inv % p;
            if q != 0 {
                for (i, &c) in m.iter().enumerate() {
                    let idx = top - dm + i;
                    r[idx] = (r[idx] + p - q * c % p) % p;
                }
            }
            r.pop();
            r = trim(r);
        }
        trim(r)
    }

    fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    fn pow_mod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Poly {
        let mut acc = rem(&[1], m, p);
        let mut b = rem(base, m, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(&acc, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            exp >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// No irreducible factor of degree <= deg/2, via gcd with x^(p^k) - x.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let d = f.len() - 1;
        let x = vec![0, 1];
        let mut frob = rem(&x, f, p);
        for _ in 1..=d / 2 {
            frob = pow_mod(&frob, p, f, p);
            let mut h = frob.clone();
            h.resize(h.len().max(2), 0);
            h[1] = (h[1] + p - 1) % p;
            let g = gcd(f, &trim(h), p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = PolyError;

    /// Accepts a coefficient list `[-2,0,0,1]` (lowest degree first) or a
    /// human form such as `x^3 - 7x^2 + 6*x`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        if let Some(inner) = s.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| PolyError::Parse("missing ']'".into()))?;
            let coeffs = inner
                .split(',')
                .map(|t| {
                    t.parse::<BigInt>()
                        .map_err(|_| PolyError::Parse(format!("bad coefficient {t:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(IntPoly::new(coeffs));
        }
        parse_human(&s)
    }
}

fn parse_human(s: &str) -> Result<IntPoly, PolyError> {
    let mut coeffs: Vec<BigInt> = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut negative = false;
        match bytes[i] {
            b'+' => i += 1,
            b'-' => {
                negative = true;
                i += 1;
            }
            _ if i > 0 => return Err(PolyError::Parse(format!("expected sign at {i}"))),
            _ => {}
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let mut coef = if i > start {
            s[start..i].parse::<BigInt>().unwrap()
        } else {
            BigInt::one()
        };
        let has_number = i > start;
        if i < bytes.len() && bytes[i] == b'*' {
            if !has_number {
                return Err(PolyError::Parse("'*' without coefficient".into()));
            }
            i += 1;
            if bytes.get(i) != Some(&b'x') {
                return Err(PolyError::Parse("expected 'x' after '*'".into()));
            }
        }
        let mut power = 0usize;
        if i < bytes.len() && bytes[i] == b'x' {
            i += 1;
            power = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let ps = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                power = s[ps..i].parse().map_err(|_| PolyError::Parse("bad exponent".into()))?;
            }
        } else if !has_number {
            return Err(PolyError::Parse(format!("empty term at {start}")));
        }
        if i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            return Err(PolyError::Parse(format!("unexpected character {:?}", bytes[i] as char)));
        }
        if negative {
            coef = -coef;
        }
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigInt::zero());
        }
        coeffs[power] += coef;
    }
    Ok(IntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// Product of squared root differences.
    fn root_product_disc(roots: &[i64]) -> BigInt {
        let mut acc = BigInt::one();
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let d = big(roots[i] - roots[j]);
                acc *= &d * &d;
            }
        }
        acc
    }

    /// Sylvester determinant by Bareiss elimination, independent of the PRS.
    fn sylvester_resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
        let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n {
            for (k, c) in a.coeffs().iter().rev().enumerate() {
                mat[row][row + k] = c.clone();
            }
        }
        for row in 0..m {
            for (k, c) in b.coeffs().iter().rev().enumerate() {
                mat[n + row][row + k] = c.clone();
            }
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..size {
            if mat[k][k].is_zero() {
                match (k + 1..size).find(|&r| !mat[r][k].is_zero()) {
                    Some(r) => {
                        mat.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                    mat[i][j] = v / &prev;
                }
            }
            prev = mat[k][k].clone();
        }
        sign * &mat[size - 1][size - 1]
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p("x^3-2").evaluate(&big(3)), big(25));
        assert_eq!(p("x^3-2").evaluate(&big(1)), big(-1));
        assert_eq!(p("x^3-7x^2+6x").evaluate(&big(6)), big(0));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p("x^2-1")).unwrap(), big(4));
        assert_eq!(discriminant(&p("x^3-2")).unwrap(), big(-108));
        assert_eq!(discriminant(&p("x^3-7x^2+6x")).unwrap(), big(900));
        assert_eq!(discriminant(&p("x^4+x+1")).unwrap(), big(229));
        assert_eq!(discriminant(&p("x^2+1")).unwrap(), big(-4));
        assert_eq!(discriminant(&p("x^2+2x+1")).unwrap(), big(0));
        assert!(discriminant(&p("x+1")).is_err());
    }

    #[test]
    fn cubic_and_quartic_closed_forms() {
        // x^3 + px + q: -4p^3 - 27q^2 ; x^4 + cx + d: -27c^4 + 256d^3
        for (pp, q) in [(0i64, -2i64), (3, 5), (-7, 1), (11, -13)] {
            let f = IntPoly::from_i64s(&[q, pp, 0, 1]);
            let expected = big(-4 * pp * pp * pp - 27 * q * q);
            assert_eq!(discriminant(&f).unwrap(), expected);
        }
        for (c, d) in [(1i64, 1i64), (2, -3), (-5, 7)] {
            let f = IntPoly::from_i64s(&[d, c, 0, 0, 1]);
            assert_eq!(discriminant(&f).unwrap(), big(-27 * c.pow(4) + 256 * d.pow(3)));
        }
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(&p("x^2-1")));
        assert!(!is_squarefree(&p("x^2+2x+1")));
        assert!(is_squarefree(&p("x^3-2")));
        assert!(!is_squarefree(&p("x^5-x^4")));
    }

    #[test]
    fn irreducibility_examples() {
        assert_eq!(
            irreducibility_witness(&p("x^3-2")),
            IrreducibilityVerdict::Proven(IrreducibilityWitness::NoRationalRoot)
        );
        assert_eq!(
            irreducibility_witness(&p("x^2-1")),
            IrreducibilityVerdict::Disproven(p("x-1"))
        );
        assert_eq!(
            irreducibility_witness(&p("x^4+x+1")),
            IrreducibilityVerdict::Proven(IrreducibilityWitness::ModPrime(2))
        );
        assert!(matches!(
            irreducibility_witness(&p("x^2+2x+1")),
            IrreducibilityVerdict::Disproven(_)
        ));
        // (x^2+1)(x^2+2) has no rational root and is reducible mod every prime.
        assert_eq!(irreducibility_witness(&p("x^4+3x^2+2")), IrreducibilityVerdict::Unknown);
        // Cyclotomic-style quartic: irreducible over Q, reducible mod every
        // prime, so no witness exists.
        assert_eq!(irreducibility_witness(&p("x^4+1")), IrreducibilityVerdict::Unknown);
        assert!(matches!(
            irreducibility_witness(&p("x^5-x-1")),
            IrreducibilityVerdict::Proven(IrreducibilityWitness::ModPrime(_))
        ));
    }

    #[test]
    fn mod_p_irreducibility_matches_small_enumeration() {
        // x^4+x+1 over F_2: no roots and not divisible by x^2+x+1.
        let f = fp::reduce(&p("x^4+x+1"), 2);
        assert!(fp::is_irreducible(&f, 2));
        let g = fp::reduce(&p("x^4+x^2+1"), 2);
        assert!(!fp::is_irreducible(&g, 2));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("[-2,0,0,1]"), p("x^3-2"));
        assert_eq!(p("x^3 - 7*x^2 + 6*x"), IntPoly::from_i64s(&[0, 6, -7, 1]));
        assert_eq!(p("-x^2+x-1"), IntPoly::from_i64s(&[-1, 1, -1]));
        assert_eq!(p("2x+3x"), IntPoly::from_i64s(&[0, 5]));
        assert_eq!(p("x^3-7x^2+6x").to_string(), "x^3 - 7*x^2 + 6*x");
        for bad in ["", "x^", "3y", "x**2", "[1,2", "x+*2"] {
            assert!(bad.parse::<IntPoly>().is_err(), "{bad:?} parsed");
        }
    }

    #[test]
    fn exact_division() {
        let f = p("x^3-7x^2+6x");
        assert_eq!(f.div_exact(&p("x-1")), Some(p("x^2-6x")));
        assert_eq!(f.div_exact(&p("x-2")), None);
        assert_eq!(p("2x^2+4").div_exact(&p("2")), Some(p("x^2+2")));
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        let pairs = [
            ("x^3-2", "3x^2"),
            ("x^4+x+1", "4x^3+1"),
            ("2x^3+x-5", "3x^2-4x+7"),
            ("x^5-3x^2+x+9", "x^2+x+1"),
            ("x^2-1", "x-1"),
        ];
        for (a, b) in pairs {
            let (a, b) = (p(a), p(b));
            assert_eq!(resultant(&a, &b), sylvester_resultant(&a, &b), "{a} / {b}");
        }
    }

    fn distinct_roots() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::btree_set(-40i64..40, 2..=6).prop_map(|s| s.into_iter().collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn discriminant_matches_root_product(roots in distinct_roots()) {
            let f = IntPoly::from_roots(&roots.iter().map(|&r| big(r)).collect::<Vec<_>>());
            prop_assert_eq!(discriminant(&f).unwrap(), root_product_disc(&roots));
        }
    }

    proptest! {
        #[test]
        fn discriminant_is_translation_invariant(
            coeffs in prop::collection::vec(-20i64..20, 2..=6),
            c in -30i64..30,
        ) {
            let mut coeffs = coeffs;
            coeffs.push(1);
            let f = IntPoly::from_i64s(&coeffs);
            prop_assert_eq!(discriminant(&f.shift(&big(c))).unwrap(), discriminant(&f).unwrap());
        }

        #[test]
        fn squarefree_iff_nonzero_discriminant(
            coeffs in prop::collection::vec(-3i64..3, 2..=5),
        ) {
            let mut coeffs = coeffs;
            coeffs.push(1);
            let f = IntPoly::from_i64s(&coeffs);
            prop_assert_eq!(is_squarefree(&f), !discriminant(&f).unwrap().is_zero());
        }

        #[test]
        fn disproven_factor_divides(
            coeffs in prop::collection::vec(-6i64..6, 1..=4),
        ) {
            let mut coeffs = coeffs;
            coeffs.push(1);
            let f = IntPoly::from_i64s(&coeffs);
            if let IrreducibilityVerdict::Disproven(g) = irreducibility_witness(&f) {
                let d = g.degree().unwrap();
                prop_assert!(d >= 1 && d < f.degree().unwrap());
                prop_assert!(f.div_exact(&g).is_some());
            }
        }

        #[test]
        fn display_round_trips(coeffs in prop::collection::vec(-50i64..50, 1..=7)) {
            let f = IntPoly::from_i64s(&coeffs);
            prop_assert_eq!(f.to_string().parse::<IntPoly>().unwrap(), f);
        }
    }
}
