//! Symplectic matrices over `Z/2^e`, transvections, and the congruence
//! filtration `Gamma(2^k)`.
//!
//! Coordinates are ordered `a_1..a_g, b_1..b_g` with `<a_i, b_i> = -1`.
//! Matrices act on column vectors and are stored row-major.

use std::fmt;

use thiserror::Error;

use crate::gf2::{self, BitVector, F2Matrix};

pub mod subgroup;
pub mod verify;

pub use subgroup::{generate_subgroup, SubgroupTable, DEFAULT_CAP};

/// Largest supported level exponent.
pub const MAX_LEVEL: u32 = 12;
/// Largest supported genus.
pub const MAX_GENUS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error("level exponent {0} outside 1..={MAX_LEVEL}")]
    LevelOutOfRange(u32),
    #[error("genus {0} outside 1..={MAX_GENUS}")]
    Genus(usize),
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("matrix does not preserve the symplectic form modulo 2^{0}")]
    NotSymplectic(u32),
    #[error("matrix is not in the symplectic Lie algebra over F2")]
    NotInLieAlgebra,
    #[error("matrix is not congruent to the identity modulo 2^{0}")]
    NotCongruent(u32),
    #[error("operands differ in genus or level")]
    Mismatch,
    #[error("{0}")]
    Precondition(String),
    #[error("enumeration needs {size} elements, cap is {cap}")]
    CapExceeded { size: String, cap: usize },
}

/// Exponent `e` of the modulus `2^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(u32);

impl Level {
    pub fn new(e: u32) -> Result<Self, SymplecticError> {
        if e == 0 || e > MAX_LEVEL {
            return Err(SymplecticError::LevelOutOfRange(e));
        }
        Ok(Level(e))
    }

    pub fn exponent(self) -> u32 {
        self.0
    }

    pub fn modulus(self) -> u32 {
        1 << self.0
    }

    fn mask(self) -> u32 {
        self.modulus() - 1
    }

    fn reduce(self, x: i64) -> u32 {
        (x & self.mask() as i64) as u32
    }
}

/// The standard symplectic Gram matrix of genus `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GramForm {
    g: usize,
}

impl GramForm {
    pub fn new(g: usize) -> Result<Self, SymplecticError> {
        if g == 0 || g > MAX_GENUS {
            return Err(SymplecticError::Genus(g));
        }
        Ok(GramForm { g })
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    /// `J[i][j] = <e_i, e_j>`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        let g = self.g;
        if i < g && j == i + g {
            -1
        } else if i >= g && j + g == i {
            1
        } else {
            0
        }
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// `J v` over the integers.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let g = self.g;
        (0..2 * g).map(|i| if i < g { -v[i + g] } else { v[i - g] }).collect()
    }

    /// `<u, v> = u^T J v` over the integers.
    pub fn pairing(&self, u: &[i64], v: &[i64]) -> i64 {
        u.iter().zip(self.apply(v)).map(|(x, y)| x * y).sum()
    }
}

/// Element of `Sp_2g(Z/2^e)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpMatrix {
    g: usize,
    level: Level,
    entries: Vec<u32>,
}

impl SpMatrix {
    /// Reduces `entries` (row-major, `2g x 2g`) modulo `2^e` and checks
    /// `M^T J M = J`.
    pub fn new(g: usize, level: Level, entries: &[i64]) -> Result<Self, SymplecticError> {
        GramForm::new(g)?;
        let n = 2 * g;
        if entries.len() != n * n {
            return Err(SymplecticError::Shape {
                expected: n * n,
                got: entries.len(),
            });
        }
        let m = SpMatrix {
            g,
            level,
            entries: entries.iter().map(|&x| level.reduce(x)).collect(),
        };
        if !m.form_defect().iter().all(|&x| level.reduce(x) == 0) {
            return Err(SymplecticError::NotSymplectic(level.exponent()));
        }
        Ok(m)
    }

    pub fn from_fn(g: usize, level: Level, f: impl Fn(usize, usize) -> i64) -> Result<Self, SymplecticError> {
        let n = 2 * g;
        let entries: Vec<i64> = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::new(g, level, &entries)
    }

    pub(crate) fn from_raw(g: usize, level: Level, entries: Vec<u32>) -> Self {
        debug_assert_eq!(entries.len(), 4 * g * g);
        SpMatrix { g, level, entries }
    }

    pub fn identity(g: usize, level: Level) -> Self {
        let n = 2 * g;
        Self::from_raw(g, level, (0..n * n).map(|k| (k / n == k % n) as u32).collect())
    }

    /// `-I`.
    pub fn minus_identity(g: usize, level: Level) -> Self {
        Self::identity(g, level).scale_identity(-1)
    }

    fn scale_identity(&self, s: i64) -> Self {
        let entries = self.entries.iter().map(|&x| self.level.reduce(x as i64 * s)).collect();
        Self::from_raw(self.g, self.level, entries)
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        2 * self.g
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.dim() + j]
    }

    /// Row-major residues in `[0, 2^e)`.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// `M^T J M - J` over the integers, for the canonical representatives.
    fn form_defect(&self) -> Vec<i64> {
        let n = self.dim();
        let form = GramForm { g: self.g };
        // JM, column by column.
        let mut jm = vec![0i64; n * n];
        for c in 0..n {
            let col: Vec<i64> = (0..n).map(|r| self.entry(r, c) as i64).collect();
            for (r, x) in form.apply(&col).into_iter().enumerate() {
                jm[r * n + c] = x;
            }
        }
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let s: i64 = (0..n).map(|k| self.entry(k, i) as i64 * jm[k * n + j]).sum();
                out[i * n + j] = s - form.entry(i, j);
            }
        }
        out
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            self.g == other.g && self.level == other.level,
            "operands differ in genus or level"
        );
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let n = self.dim();
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = out[i * n + j].wrapping_add(a * other.entries[k * n + j]);
                }
            }
        }
        let mask = self.level.mask();
        out.iter_mut().for_each(|x| *x &= mask);
        Self::from_raw(self.g, self.level, out)
    }

    /// `M^{-1} = -J M^T J`.
    pub fn inverse(&self) -> Self {
        let g = self.g;
        let n = self.dim();
        // (J X J)[i][j] = s(i) s'(j) X[i^][j^] with i^ the paired index.
        let pair = |i: usize| if i < g { i + g } else { i - g };
        let sign = |i: usize| if i < g { -1i64 } else { 1 };
        let entries = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                // (J M^T J)[i][j] = J[i][pair i] M[pair j][pair i] J[pair j][j]
                let v = sign(i) * self.entry(pair(j), pair(i)) as i64 * -sign(j);
                self.level.reduce(-v)
            })
            .collect();
        Self::from_raw(self.g, self.level, entries)
    }

    pub fn pow(&self, k: i64) -> Self {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = Self::identity(self.g, self.level);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// `M N M^{-1} N^{-1}`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.g, self.level)
    }

    /// Image modulo `2^f` for `f <= e`.
    pub fn reduce(&self, level: Level) -> Result<Self, SymplecticError> {
        if level > self.level {
            return Err(SymplecticError::Precondition(format!(
                "cannot reduce from 2^{} to 2^{}",
                self.level.exponent(),
                level.exponent()
            )));
        }
        let entries = self.entries.iter().map(|&x| x & level.mask()).collect();
        Ok(Self::from_raw(self.g, level, entries))
    }

    /// Largest `k <= e` with `M = 1 mod 2^k`.
    pub fn congruence_level(&self) -> u32 {
        let n = self.dim();
        let e = self.level.exponent();
        self.entries
            .iter()
            .enumerate()
            .map(|(k, &x)| {
                let d = x as i64 - (k / n == k % n) as i64;
                let d = self.level.reduce(d);
                if d == 0 {
                    e
                } else {
                    d.trailing_zeros()
                }
            })
            .min()
            .unwrap_or(e)
    }

    /// `(M - 1)/2^k mod 2` for `M = 1 mod 2^k`, `k >= 1`, `e >= k + 1`.
    pub fn layer_log(&self, k: u32) -> Result<SpAlgElemF2, SymplecticError> {
        if k == 0 || self.level.exponent() < k + 1 {
            return Err(SymplecticError::Precondition(format!(
                "layer {k} needs 1 <= k and level >= k + 1, level is {}",
                self.level.exponent()
            )));
        }
        if self.congruence_level() < k {
            return Err(SymplecticError::NotCongruent(k));
        }
        let n = self.dim();
        let m = F2Matrix::from_fn(n, |i, j| {
            let d = self.level.reduce(self.entry(i, j) as i64 - (i == j) as i64);
            d >> k & 1 == 1
        });
        SpAlgElemF2::new(self.g, m)
    }

    /// `M v` for an integer vector.
    pub fn apply(&self, v: &[i64]) -> Vec<u32> {
        let n = self.dim();
        (0..n)
            .map(|i| self.level.reduce((0..n).map(|j| self.entry(i, j) as i64 * v[j]).sum()))
            .collect()
    }
}

impl fmt::Debug for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpMatrix(mod 2^{}) {self}", self.level.exponent())
    }
}

impl fmt::Display for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        let rows: Vec<String> = (0..n)
            .map(|i| {
                let r: Vec<String> = (0..n).map(|j| self.entry(i, j).to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Element of `sp_2g(F2)`: `J t` is symmetric.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpAlgElemF2 {
    g: usize,
    m: F2Matrix,
}

impl SpAlgElemF2 {
    pub fn new(g: usize, m: F2Matrix) -> Result<Self, SymplecticError> {
        GramForm::new(g)?;
        if m.size() != 2 * g {
            return Err(SymplecticError::Shape {
                expected: 4 * g * g,
                got: m.size() * m.size(),
            });
        }
        if !Self::in_algebra(g, &m) {
            return Err(SymplecticError::NotInLieAlgebra);
        }
        Ok(SpAlgElemF2 { g, m })
    }

    pub fn zero(g: usize) -> Self {
        SpAlgElemF2 {
            g,
            m: F2Matrix::zero(2 * g),
        }
    }

    /// `t^T J + J t = 0 mod 2`, i.e. `J t` symmetric.
    pub fn in_algebra(g: usize, m: &F2Matrix) -> bool {
        let pair = |i: usize| if i < g { i + g } else { i - g };
        (0..2 * g).all(|i| (0..2 * g).all(|j| m.get(pair(i), j) == m.get(pair(j), i)))
    }

    /// `2g^2 + g`.
    pub fn dimension(g: usize) -> usize {
        2 * g * g + g
    }

    /// Basis `J E` with `E` running over symmetric elementary matrices.
    pub fn basis(g: usize) -> Vec<Self> {
        let n = 2 * g;
        let pair = |i: usize| if i < g { i + g } else { i - g };
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                // J swaps the a- and b-blocks of rows mod 2.
                let m = F2Matrix::from_fn(n, |r, c| {
                    let r = pair(r);
                    (r == i && c == j) || (r == j && c == i)
                });
                out.push(SpAlgElemF2 { g, m });
            }
        }
        out
    }

    /// Every element, in binary order of the coefficients on [`Self::basis`].
    pub fn all(g: usize) -> Vec<Self> {
        let basis = Self::basis(g);
        assert!(basis.len() < 24, "Lie algebra too large to list");
        (0u32..1 << basis.len())
            .map(|mask| {
                basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(Self::zero(g), |acc, (_, b)| acc.add(b))
            })
            .collect()
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn matrix(&self) -> &F2Matrix {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        SpAlgElemF2 {
            g: self.g,
            m: self.m.add(&other.m),
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        SpAlgElemF2 {
            g: self.g,
            m: self.m.commutator(&other.m),
        }
    }

    pub fn to_bitvector(&self) -> BitVector {
        self.m.to_bitvector()
    }

    /// A matrix `M = 1 + 2^k t mod 2^{k+1}` that is symplectic modulo
    /// `2^e`, for `1 <= k < e`.
    pub fn exponentiate(&self, k: u32, level: Level) -> Result<SpMatrix, SymplecticError> {
        if k == 0 || k >= level.exponent() {
            return Err(SymplecticError::Precondition(format!(
                "layer {k} needs 1 <= k < {}",
                level.exponent()
            )));
        }
        let start = Level::new(k + 1)?;
        let m = SpMatrix::from_fn(self.g, start, |i, j| (i == j) as i64 + ((self.m.get(i, j) as i64) << k))?;
        Ok(lift_to(&m, level))
    }
}

impl fmt::Debug for SpAlgElemF2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.m)
    }
}

/// Matrix of `v -> v + k <v, c> c`, i.e. `1 + k c (Jc)^T`.
pub fn transvection_power(c: &[i64], k: i64, form: &GramForm, level: Level) -> SpMatrix {
    let n = form.dim();
    assert_eq!(c.len(), n, "transvection vector needs 2g entries");
    let c: Vec<i64> = c.iter().map(|&x| level.reduce(x) as i64).collect();
    let k = level.reduce(k) as i64;
    let jc = form.apply(&c);
    let entries = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            level.reduce((i == j) as i64 + k * c[i] * jc[j])
        })
        .collect();
    SpMatrix::from_raw(form.genus(), level, entries)
}

/// Matrix of `v -> v + <v, c> c`.
pub fn transvection(c: &[i64], form: &GramForm, level: Level) -> SpMatrix {
    transvection_power(c, 1, form, level)
}

/// Integer matrix `c (Jc)^T`, row-major.
pub fn transvection_nilpotent(c: &[i64], form: &GramForm) -> Vec<i64> {
    let n = form.dim();
    let jc = form.apply(c);
    (0..n * n).map(|idx| c[idx / n] * jc[idx % n]).collect()
}

/// All lifts of `m` to level `e + 1`: `m + 2^e Y` symplectic modulo
/// `2^{e+1}`. Returns the affine solution space of `Y` (row-major bits).
pub fn lift_solutions(m: &SpMatrix) -> gf2::AffineSolution {
    let n = m.dim();
    let e = m.level.exponent();
    let form = GramForm { g: m.g };
    // D = (R^T J R - J)/2^e mod 2.
    let defect = m.form_defect();
    // jr[q][r] = (JR)[r][q] mod 2.
    let jr: Vec<Vec<bool>> = (0..n)
        .map(|q| {
            let col: Vec<i64> = (0..n).map(|s| m.entry(s, q) as i64).collect();
            form.apply(&col).iter().map(|v| v & 1 == 1).collect()
        })
        .collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    // Entry (p, q), p < q, of D + Y^T J R + R^T J Y; the diagonal vanishes.
    for p in 0..n {
        for q in p + 1..n {
            let mut row = BitVector::zeros(n * n);
            for (r, (&at_q, &at_p)) in jr[q].iter().zip(&jr[p]).enumerate() {
                if at_q {
                    row.flip(r * n + p);
                }
                if at_p {
                    row.flip(r * n + q);
                }
            }
            rows.push(row);
            rhs.push((defect[p * n + q] >> e) & 1 == 1);
        }
    }
    gf2::solve(&rows, &rhs, n * n).expect("symplectic matrices always lift")
}

fn apply_lift(m: &SpMatrix, y: &BitVector) -> SpMatrix {
    let e = m.level.exponent();
    let level = Level(e + 1);
    let entries = m
        .entries
        .iter()
        .enumerate()
        .map(|(k, &x)| x + ((y.get(k) as u32) << e))
        .collect();
    SpMatrix::from_raw(m.g, level, entries)
}

/// Every lift of `m` to the next level.
pub fn lifts(m: &SpMatrix) -> Vec<SpMatrix> {
    assert!(m.level.exponent() < MAX_LEVEL, "cannot lift past the maximal level");
    lift_solutions(m).enumerate().map(|y| apply_lift(m, &y)).collect()
}

/// One lift of `m` to level `level`.
pub fn lift_to(m: &SpMatrix, level: Level) -> SpMatrix {
    let mut m = m.clone();
    while m.level < level {
        let sol = lift_solutions(&m);
        m = apply_lift(&m, &sol.particular);
    }
    m
}

/// `log2 |Gamma(2^k) mod 2^e|`.
pub fn congruence_image_log_order(g: usize, k: u32, level: Level) -> u64 {
    SpAlgElemF2::dimension(g) as u64 * level.exponent().saturating_sub(k) as u64
}

/// Every element of `Gamma(2^k) mod 2^e`, `1 <= k <= e`.
pub fn congruence_image(g: usize, k: u32, level: Level, cap: usize) -> Result<Vec<SpMatrix>, SymplecticError> {
    GramForm::new(g)?;
    if k == 0 || k > level.exponent() {
        return Err(SymplecticError::Precondition(format!(
            "need 1 <= k <= {}, got k = {k}",
            level.exponent()
        )));
    }
    let log = congruence_image_log_order(g, k, level);
    if log >= 64 || 1u64 << log > cap as u64 {
        return Err(SymplecticError::CapExceeded {
            size: format!("2^{log}"),
            cap,
        });
    }
    let mut current = vec![SpMatrix::identity(g, Level(k))];
    for _ in k..level.exponent() {
        current = current.iter().flat_map(lifts).collect();
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lvl(e: u32) -> Level {
        Level::new(e).unwrap()
    }

    #[test]
    fn level_bounds() {
        assert!(Level::new(0).is_err());
        assert!(Level::new(13).is_err());
        assert_eq!(lvl(3).modulus(), 8);
    }

    #[test]
    fn gram_form_pairings() {
        let f = GramForm::new(2).unwrap();
        let a1 = [1, 0, 0, 0];
        let b1 = [0, 0, 1, 0];
        let a2 = [0, 1, 0, 0];
        assert_eq!(f.pairing(&a1, &b1), -1);
        assert_eq!(f.pairing(&b1, &a1), 1);
        assert_eq!(f.pairing(&a1, &a2), 0);
    }

    #[test]
    fn construction_rejects_non_symplectic() {
        assert!(SpMatrix::new(1, lvl(3), &[1, 1, 0, 1]).is_ok());
        assert!(matches!(
            SpMatrix::new(1, lvl(3), &[2, 0, 0, 1]),
            Err(SymplecticError::NotSymplectic(3))
        ));
        assert!(SpMatrix::new(1, lvl(3), &[1, 0, 0]).is_err());
    }

    #[test]
    fn transvection_examples() {
        let f = GramForm::new(1).unwrap();
        let t = transvection(&[1, 0], &f, lvl(3));
        assert_eq!(t.apply(&[1, 0]), vec![1, 0]);
        assert_eq!(t.apply(&[0, 1]), vec![1, 1]);
        assert!(transvection(&[0, 0], &f, lvl(3)).is_identity());
        // a1 + <a1, a1 + b1>(a1 + b1) = -b1
        let t = transvection(&[1, 1], &f, lvl(3));
        assert_eq!(t.apply(&[1, 0]), vec![0, 7]);
    }

    #[test]
    fn congruence_levels() {
        let f = GramForm::new(2).unwrap();
        assert_eq!(SpMatrix::identity(2, lvl(5)).congruence_level(), 5);
        let t = transvection(&[1, 0, 1, 1], &f, lvl(8));
        assert_eq!(t.pow(2).congruence_level(), 1);
        let x = SpAlgElemF2::basis(2)[3].clone();
        let m = x.exponentiate(2, lvl(4)).unwrap();
        assert_eq!(m.congruence_level(), 2);
        assert_eq!(m.layer_log(2).unwrap(), x);
    }

    #[test]
    fn inverse_is_inverse() {
        let f = GramForm::new(2).unwrap();
        let t = transvection(&[1, 3, 0, 5], &f, lvl(4)).mul(&transvection(&[0, 1, 1, 0], &f, lvl(4)));
        assert!(t.mul(&t.inverse()).is_identity());
        assert!(t.inverse().mul(&t).is_identity());
    }

    #[test]
    fn lie_algebra_dimension() {
        for g in 1..=4 {
            let b = SpAlgElemF2::basis(g);
            assert_eq!(b.len(), SpAlgElemF2::dimension(g));
            let vs: Vec<_> = b.iter().map(|x| x.to_bitvector()).collect();
            assert_eq!(gf2::rank(&vs), SpAlgElemF2::dimension(g));
            assert!(b.iter().all(|x| SpAlgElemF2::in_algebra(g, x.matrix())));
        }
        // Brute force over all 2x2 matrices for g = 1.
        let count = (0u32..16)
            .filter(|&m| SpAlgElemF2::in_algebra(1, &F2Matrix::from_fn(2, |i, j| m >> (2 * i + j) & 1 == 1)))
            .count();
        assert_eq!(count, 8);
    }

    #[test]
    fn lift_counts() {
        for g in 1..=2 {
            let id = SpMatrix::identity(g, lvl(2));
            let ls = lifts(&id);
            assert_eq!(ls.len(), 1 << SpAlgElemF2::dimension(g));
            assert!(ls.iter().all(|m| SpMatrix::new(g, lvl(3), &to_i64(m)).is_ok()));
        }
        assert_eq!(congruence_image(1, 1, lvl(3), DEFAULT_CAP).unwrap().len(), 64);
        assert!(matches!(
            congruence_image(2, 1, lvl(4), 1 << 20),
            Err(SymplecticError::CapExceeded { .. })
        ));
    }

    #[test]
    fn lift_of_non_congruent_element() {
        let f = GramForm::new(2).unwrap();
        let m = transvection(&[1, 1, 0, 1], &f, lvl(2)).mul(&transvection(&[0, 1, 1, 0], &f, lvl(2)));
        let ls = lifts(&m);
        assert_eq!(ls.len(), 1 << 10);
        for l in ls.iter().take(50) {
            assert!(SpMatrix::new(2, lvl(3), &to_i64(l)).is_ok());
            assert_eq!(l.reduce(lvl(2)).unwrap(), m);
        }
    }

    fn to_i64(m: &SpMatrix) -> Vec<i64> {
        m.entries().iter().map(|&x| x as i64).collect()
    }

    fn c_vec() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-20i64..20, 4)
    }

    proptest! {
        #[test]
        fn transvections_are_symplectic(c in c_vec(), k in -9i64..9, e in 1u32..=12) {
            let f = GramForm::new(2).unwrap();
            let t = transvection_power(&c, k, &f, lvl(e));
            prop_assert!(SpMatrix::new(2, lvl(e), &to_i64(&t)).is_ok());
        }

        #[test]
        fn transvection_powers_add(c in c_vec(), a in -40i64..40, b in -40i64..40) {
            let f = GramForm::new(2).unwrap();
            let l = lvl(6);
            let ta = transvection_power(&c, a, &f, l);
            let tb = transvection_power(&c, b, &f, l);
            prop_assert_eq!(ta.mul(&tb), transvection_power(&c, a + b, &f, l));
            prop_assert_eq!(transvection(&c, &f, l).pow(a), ta);
        }

        #[test]
        fn layer_log_is_additive(i in 0usize..1024, j in 0usize..1024, k in 1u32..=2) {
            let l = lvl(k + 1);
            let layer = congruence_image(2, k, l, DEFAULT_CAP).unwrap();
            let (m, n) = (&layer[i], &layer[j]);
            prop_assert_eq!(
                m.mul(n).layer_log(k).unwrap(),
                m.layer_log(k).unwrap().add(&n.layer_log(k).unwrap())
            );
        }
    }
}
