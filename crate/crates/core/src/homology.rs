//! Mod-2 homology of a hyperelliptic curve through even partitions of its
//! branch points, and the valuation-preserving Moebius shift of roots.
//!
//! Branch points carry labels `1..=2g+2`. A class in H1(C, F2) is an even
//! partition of the labels, stored as the part that avoids label `2g+2`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{self, vp};
use crate::gf2::{self, BitVector};

/// Largest supported genus; labels must fit in a 64-bit mask.
pub const MAX_GENUS: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("genus {0} outside 1..={MAX_GENUS}")]
    Genus(usize),
    #[error("index {index} outside 1..={max}")]
    Index { index: usize, max: usize },
    #[error("label {label} outside 1..={max}")]
    Label { label: usize, max: usize },
    #[error("partition part has odd cardinality")]
    OddPart,
    #[error("roots are not pairwise distinct")]
    RepeatedRoot,
    #[error("{0} is not an odd prime")]
    NotOddPrime(BigInt),
    #[error("no shift parameter exists modulo {0}")]
    NoShiftAvailable(BigInt),
    #[error(transparent)]
    Arith(#[from] arith::ArithError),
}

fn check_genus(g: usize) -> Result<(), HomologyError> {
    if g == 0 || g > MAX_GENUS {
        return Err(HomologyError::Genus(g));
    }
    Ok(())
}

/// Even partition of the labels `1..=2g+2`; bit `l - 1` marks label `l`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct EvenPartition {
    g: usize,
    mask: u64,
}

impl EvenPartition {
    pub fn new(g: usize, labels: &[usize]) -> Result<Self, HomologyError> {
        check_genus(g)?;
        let max = 2 * g + 2;
        let mut mask = 0u64;
        for &l in labels {
            if l == 0 || l > max {
                return Err(HomologyError::Label { label: l, max });
            }
            mask ^= 1 << (l - 1);
        }
        if mask.count_ones() % 2 == 1 {
            return Err(HomologyError::OddPart);
        }
        Ok(Self::normalized(g, mask))
    }

    fn normalized(g: usize, mask: u64) -> Self {
        let full = (1u64 << (2 * g + 2)) - 1;
        let mask = if mask >> (2 * g + 1) & 1 == 1 {
            full ^ mask
        } else {
            mask
        };
        EvenPartition { g, mask }
    }

    pub fn empty(g: usize) -> Self {
        EvenPartition { g, mask: 0 }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    /// Labels of the normalized part, ascending.
    pub fn labels(&self) -> Vec<usize> {
        (0..2 * self.g + 2)
            .filter(|b| self.mask >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        assert_eq!(self.g, other.g);
        Self::normalized(self.g, self.mask ^ other.mask)
    }
}

impl fmt::Debug for EvenPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for EvenPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels().iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", labels.join(", "))
    }
}

/// Element of H1(C, F2) in coordinates `a_1..a_g, b_1..b_g`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct HomClassF2 {
    g: usize,
    coords: Vec<u8>,
}

impl HomClassF2 {
    pub fn new(g: usize, coords: Vec<u8>) -> Self {
        assert_eq!(coords.len(), 2 * g, "class needs 2g coordinates");
        HomClassF2 {
            g,
            coords: coords.into_iter().map(|c| c & 1).collect(),
        }
    }

    pub fn zero(g: usize) -> Self {
        Self::new(g, vec![0; 2 * g])
    }

    /// Basis vector `a_i` (1-based).
    pub fn a(g: usize, i: usize) -> Self {
        let mut c = Self::zero(g);
        c.coords[i - 1] = 1;
        c
    }

    /// Basis vector `b_i` (1-based).
    pub fn b(g: usize, i: usize) -> Self {
        let mut c = Self::zero(g);
        c.coords[g + i - 1] = 1;
        c
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.g, other.g);
        HomClassF2 {
            g: self.g,
            coords: self.coords.iter().zip(&other.coords).map(|(x, y)| x ^ y).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for HomClassF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HomClassF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = (0..2 * self.g)
            .filter(|&k| self.coords[k] == 1)
            .map(|k| {
                if k < self.g {
                    format!("a{}", k + 1)
                } else {
                    format!("b{}", k - self.g + 1)
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BasisKind {
    A,
    B,
}

/// `A_i = {2i-1, 2i}` and `B_i = {2i, ..., 2g+1}`.
pub fn basis_partition(kind: BasisKind, i: usize, g: usize) -> Result<EvenPartition, HomologyError> {
    check_genus(g)?;
    if i == 0 || i > g {
        return Err(HomologyError::Index { index: i, max: g });
    }
    let labels: Vec<usize> = match kind {
        BasisKind::A => vec![2 * i - 1, 2 * i],
        BasisKind::B => (2 * i..=2 * g + 1).collect(),
    };
    EvenPartition::new(g, &labels)
}

/// Coordinates of `p` in the basis `A_1..A_g, B_1..B_g`.
pub fn partition_to_class(p: &EvenPartition) -> HomClassF2 {
    let g = p.g;
    let basis: Vec<EvenPartition> = (1..=g)
        .map(|i| basis_partition(BasisKind::A, i, g).unwrap())
        .chain((1..=g).map(|i| basis_partition(BasisKind::B, i, g).unwrap()))
        .collect();
    // One equation per label 1..=2g+1; unknowns are the 2g basis coefficients.
    let rows: Vec<BitVector> = (0..2 * g + 1)
        .map(|label| BitVector::from_bits(basis.iter().map(|q| q.mask >> label & 1 == 1)))
        .collect();
    let rhs: Vec<bool> = (0..2 * g + 1).map(|label| p.mask >> label & 1 == 1).collect();
    let sol = gf2::solve(&rows, &rhs, 2 * g).expect("even partitions span the label space");
    debug_assert!(sol.kernel.is_empty());
    HomClassF2::new(g, (0..2 * g).map(|k| sol.particular.get(k) as u8).collect())
}

/// Class of the loop separating labels `{i, 2g+1}` from the rest.
pub fn c_class(i: usize, g: usize) -> Result<HomClassF2, HomologyError> {
    check_genus(g)?;
    if i == 0 || i > 2 * g {
        return Err(HomologyError::Index { index: i, max: 2 * g });
    }
    Ok(partition_to_class(&EvenPartition::new(g, &[i, 2 * g + 1])?))
}

/// All of `c_class(1..=2g, g)`.
pub fn c_classes(g: usize) -> Result<Vec<HomClassF2>, HomologyError> {
    (1..=2 * g).map(|i| c_class(i, g)).collect()
}

/// The closed-form expression printed alongside the definition of the
/// c-classes: `a_s + ... + a_g + b_s` with `s = (i+1)/2` for odd `i` and
/// `s = i/2 + 1` for even `i`. `None` when it names `b_{g+1}`.
pub fn printed_c_class(i: usize, g: usize) -> Option<HomClassF2> {
    let s = if i % 2 == 1 { i.div_ceil(2) } else { i / 2 + 1 };
    if s == 0 || s > g {
        return None;
    }
    let mut c = HomClassF2::b(g, s);
    for k in s..=g {
        c = c.add(&HomClassF2::a(g, k));
    }
    Some(c)
}

/// `u^T J v mod 2`.
pub fn pairing_f2(u: &HomClassF2, v: &HomClassF2) -> u8 {
    assert_eq!(u.g, v.g);
    let g = u.g;
    (0..g)
        .map(|i| u.coords[i] & v.coords[g + i] ^ u.coords[g + i] & v.coords[i])
        .fold(0, |acc, x| acc ^ x)
}

#[derive(Debug, Clone, Serialize)]
pub struct CClassRow {
    pub index: usize,
    pub partition: String,
    pub class: String,
    pub printed: Option<String>,
    pub printed_agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CClassReport {
    pub genus: usize,
    pub rows: Vec<CClassRow>,
    /// Every pair of distinct c-classes pairs to 1.
    pub all_pairings_one: bool,
    /// Rank of the c-classes in F2^{2g}.
    pub rank: usize,
    pub is_basis: bool,
    /// Odd indices agree with the printed closed form.
    pub odd_formula_agrees: bool,
    /// Even indices where the printed closed form differs or is undefined.
    pub even_discrepancies: Vec<usize>,
}

impl CClassReport {
    pub fn pass(&self) -> bool {
        self.all_pairings_one && self.is_basis && self.odd_formula_agrees
    }
}

pub fn cclass_report(g: usize) -> Result<CClassReport, HomologyError> {
    let classes = c_classes(g)?;
    let mut rows = Vec::new();
    for (k, c) in classes.iter().enumerate() {
        let i = k + 1;
        let printed = printed_c_class(i, g);
        rows.push(CClassRow {
            index: i,
            partition: EvenPartition::new(g, &[i, 2 * g + 1])?.to_string(),
            class: c.to_string(),
            printed_agrees: printed.as_ref() == Some(c),
            printed: printed.map(|p| p.to_string()),
        });
    }
    let all_pairings_one =
        (0..classes.len()).all(|i| (i + 1..classes.len()).all(|j| pairing_f2(&classes[i], &classes[j]) == 1));
    let vectors: Vec<BitVector> = classes
        .iter()
        .map(|c| BitVector::from_bits(c.coords.iter().map(|&x| x == 1)))
        .collect();
    let rank = gf2::rank(&vectors);
    Ok(CClassReport {
        genus: g,
        odd_formula_agrees: rows.iter().filter(|r| r.index % 2 == 1).all(|r| r.printed_agrees),
        even_discrepancies: rows
            .iter()
            .filter(|r| r.index % 2 == 0 && !r.printed_agrees)
            .map(|r| r.index)
            .collect(),
        rows,
        all_pairings_one,
        rank,
        is_basis: rank == 2 * g,
    })
}

/// Valuation comparison for one pair of points.
#[derive(Debug, Clone, Serialize)]
pub struct PairValuation {
    pub i: usize,
    pub j: usize,
    pub before: i64,
    pub after: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ShiftReport {
    pub p: String,
    pub beta: String,
    /// Images `x*beta/(beta - x)` of the input roots.
    pub shifted: Vec<String>,
    /// Image of the point at infinity, `-beta`.
    pub infinity_image: String,
    pub pairs: Vec<PairValuation>,
    /// `v_p(beta - root_i)` for every root.
    pub beta_gaps: Vec<i64>,
    /// `v_p(infinity_image - shifted_i)` for every root.
    pub infinity_gaps: Vec<i64>,
    /// `v_p(beta - shifted_i)`: the extra point placed at `beta` itself.
    pub beta_image_gaps: Vec<i64>,
    pub preserved: bool,
    #[serde(skip)]
    pub shifted_values: Vec<BigRational>,
    #[serde(skip)]
    pub infinity_value: BigRational,
}

/// Moebius shift with the least admissible positive `beta`.
pub fn moebius_shift(roots: &[BigInt], p: &BigInt) -> Result<ShiftReport, HomologyError> {
    check_shift_input(roots, p)?;
    let mut beta = BigInt::one();
    while &beta < p {
        if admissible(&beta, roots, p) {
            return moebius_shift_with(roots, p, &beta);
        }
        beta += 1;
    }
    Err(HomologyError::NoShiftAvailable(p.clone()))
}

fn admissible(beta: &BigInt, roots: &[BigInt], p: &BigInt) -> bool {
    !(beta % p).is_zero() && roots.iter().all(|a| !((beta - a) % p).is_zero())
}

fn check_shift_input(roots: &[BigInt], p: &BigInt) -> Result<(), HomologyError> {
    if *p == BigInt::from(2) || !p.is_positive() || !arith::is_prime(p)? {
        return Err(HomologyError::NotOddPrime(p.clone()));
    }
    for i in 0..roots.len() {
        if roots[i + 1..].contains(&roots[i]) {
            return Err(HomologyError::RepeatedRoot);
        }
    }
    Ok(())
}

/// Moebius shift `x -> x*beta/(beta - x)` with a caller-chosen `beta`.
pub fn moebius_shift_with(roots: &[BigInt], p: &BigInt, beta: &BigInt) -> Result<ShiftReport, HomologyError> {
    check_shift_input(roots, p)?;
    if !admissible(beta, roots, p) {
        return Err(HomologyError::NoShiftAvailable(p.clone()));
    }
    let rat = |x: &BigInt| BigRational::from_integer(x.clone());
    let b = rat(beta);
    let shifted: Vec<BigRational> = roots.iter().map(|a| rat(a) * &b / (&b - rat(a))).collect();
    let infinity = -b.clone();
    let v = |x: BigRational| vp(&x, p);

    let mut pairs = Vec::new();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            pairs.push(PairValuation {
                i: i + 1,
                j: j + 1,
                before: v(rat(&(&roots[i] - &roots[j]))),
                after: v(&shifted[i] - &shifted[j]),
            });
        }
    }
    let beta_gaps: Vec<i64> = roots.iter().map(|a| v(rat(&(beta - a)))).collect();
    let infinity_gaps: Vec<i64> = shifted.iter().map(|s| v(&infinity - s)).collect();
    let beta_image_gaps: Vec<i64> = shifted
        .iter()
        .map(|s| if *s == b { i64::MAX } else { v(&b - s) })
        .collect();
    let preserved = pairs.iter().all(|pv| pv.before == pv.after)
        && beta_gaps.iter().all(|&x| x == 0)
        && infinity_gaps.iter().all(|&x| x == 0);
    Ok(ShiftReport {
        p: p.to_string(),
        beta: beta.to_string(),
        shifted: shifted.iter().map(|x| x.to_string()).collect(),
        infinity_image: infinity.to_string(),
        pairs,
        beta_gaps,
        infinity_gaps,
        beta_image_gaps,
        preserved,
        shifted_values: shifted,
        infinity_value: infinity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn basis_partitions() {
        assert_eq!(basis_partition(BasisKind::A, 1, 1).unwrap().labels(), vec![1, 2]);
        assert_eq!(basis_partition(BasisKind::B, 1, 1).unwrap().labels(), vec![2, 3]);
        assert_eq!(basis_partition(BasisKind::B, 2, 2).unwrap().labels(), vec![4, 5]);
        assert!(basis_partition(BasisKind::A, 3, 2).is_err());
    }

    #[test]
    fn normalization_drops_last_label() {
        let p = EvenPartition::new(1, &[3, 4]).unwrap();
        assert_eq!(p.labels(), vec![1, 2]);
        assert!(EvenPartition::new(1, &[1]).is_err());
    }

    #[test]
    fn partition_classes() {
        let p = EvenPartition::new(1, &[1, 3]).unwrap();
        assert_eq!(partition_to_class(&p), HomClassF2::a(1, 1).add(&HomClassF2::b(1, 1)));
        let p = EvenPartition::new(2, &[2, 5]).unwrap();
        assert_eq!(partition_to_class(&p), HomClassF2::b(2, 1).add(&HomClassF2::a(2, 2)));
        for g in 1..=4 {
            for i in 1..=g {
                let a = basis_partition(BasisKind::A, i, g).unwrap();
                let b = basis_partition(BasisKind::B, i, g).unwrap();
                assert_eq!(partition_to_class(&a), HomClassF2::a(g, i));
                assert_eq!(partition_to_class(&b), HomClassF2::b(g, i));
            }
        }
    }

    #[test]
    fn genus_one_c_classes() {
        assert_eq!(c_class(1, 1).unwrap().to_string(), "a1 + b1");
        assert_eq!(c_class(2, 1).unwrap().to_string(), "b1");
        assert_eq!(c_class(2, 2).unwrap().to_string(), "a2 + b1");
    }

    #[test]
    fn pairings() {
        assert_eq!(pairing_f2(&HomClassF2::a(1, 1), &HomClassF2::b(1, 1)), 1);
        assert_eq!(pairing_f2(&HomClassF2::a(2, 1), &HomClassF2::a(2, 2)), 0);
        assert_eq!(pairing_f2(&c_class(1, 2).unwrap(), &c_class(2, 2).unwrap()), 1);
    }

    #[test]
    fn c_class_reports() {
        for g in 1..=5 {
            let r = cclass_report(g).unwrap();
            assert!(r.pass(), "g={g}: {r:?}");
            // The printed even case never matches the partition oracle.
            assert_eq!(r.even_discrepancies, (1..=g).map(|k| 2 * k).collect::<Vec<_>>());
        }
    }

    #[test]
    fn even_c_class_shape() {
        // b_{i/2} + a_{i/2+1} + ... + a_g
        for g in 1..=5 {
            for h in 1..=g {
                let mut expected = HomClassF2::b(g, h);
                for k in h + 1..=g {
                    expected = expected.add(&HomClassF2::a(g, k));
                }
                assert_eq!(c_class(2 * h, g).unwrap(), expected);
            }
        }
    }

    #[test]
    fn shift_least_beta() {
        let r = moebius_shift(&big(&[0, 1, 6]), &BigInt::from(5)).unwrap();
        assert_eq!(r.beta, "2");
        assert_eq!(r.shifted, vec!["0", "2", "-3"]);
        assert!(r.preserved);
        assert_eq!(r.pairs.iter().map(|p| p.before).collect::<Vec<_>>(), vec![0, 0, 1]);
    }

    #[test]
    fn shift_fixed_beta() {
        let r = moebius_shift_with(&big(&[0, 1, 6]), &BigInt::from(5), &BigInt::from(3)).unwrap();
        assert_eq!(r.shifted, vec!["0", "3/2", "-6"]);
        assert!(r.preserved);
        assert_eq!(r.pairs[2].after, 1);
    }

    #[test]
    fn extra_point_at_beta_can_collide() {
        let r = moebius_shift(&big(&[0, 1]), &BigInt::from(3)).unwrap();
        assert_eq!(r.beta, "2");
        assert_eq!(r.shifted, vec!["0", "2"]);
        assert!(r.preserved);
        assert_eq!(r.beta_image_gaps[1], i64::MAX);
    }

    #[test]
    fn shift_errors() {
        assert!(matches!(
            moebius_shift(&big(&[0, 1, 2]), &BigInt::from(3)),
            Err(HomologyError::NoShiftAvailable(_))
        ));
        assert!(matches!(
            moebius_shift(&big(&[0, 1]), &BigInt::from(2)),
            Err(HomologyError::NotOddPrime(_))
        ));
        assert!(matches!(
            moebius_shift(&big(&[0, 0]), &BigInt::from(5)),
            Err(HomologyError::RepeatedRoot)
        ));
    }

    proptest! {
        #[test]
        fn class_map_is_additive(g in 1usize..=5, a in any::<u64>(), b in any::<u64>()) {
            let keep = (1u64 << (2 * g + 1)) - 1;
            let even = |m: u64| { let m = m & keep; if m.count_ones() % 2 == 1 { m ^ 1 } else { m } };
            let p = EvenPartition::normalized(g, even(a));
            let q = EvenPartition::normalized(g, even(b));
            prop_assert_eq!(
                partition_to_class(&p.symmetric_difference(&q)),
                partition_to_class(&p).add(&partition_to_class(&q))
            );
        }

        #[test]
        fn shift_preserves_valuations(
            roots in prop::collection::btree_set(-200i64..200, 2..6),
            pi in 0usize..4,
        ) {
            let p = BigInt::from([7, 11, 13, 17][pi]);
            let roots = big(&roots.into_iter().collect::<Vec<_>>());
            let r = moebius_shift(&roots, &p).unwrap();
            prop_assert!(r.preserved);
        }
    }
}
