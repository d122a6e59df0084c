//! Dense linear algebra over GF(2).

use std::fmt;

/// Bit vector of fixed length, packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

/// Rank of a family of vectors.
pub fn rank(vectors: &[BitVector]) -> usize {
    // Reduced basis keyed by leading bit.
    let mut basis: Vec<BitVector> = Vec::new();
    for v in vectors {
        let mut v = v.clone();
        for b in &basis {
            let lead = b.first_one().unwrap();
            if v.get(lead) {
                v.xor_assign(b);
            }
        }
        if let Some(lead) = v.first_one() {
            for b in basis.iter_mut() {
                if b.get(lead) {
                    b.xor_assign(&v);
                }
            }
            basis.push(v);
        }
    }
    basis.len()
}

/// Solution set of a linear system `A x = b`.
#[derive(Debug, Clone)]
pub struct AffineSolution {
    pub particular: BitVector,
    pub kernel: Vec<BitVector>,
}

impl AffineSolution {
    /// Every solution, in the order of the binary expansion of the kernel
    /// coefficients.
    pub fn enumerate(&self) -> impl Iterator<Item = BitVector> + '_ {
        let k = self.kernel.len();
        assert!(k < 32, "solution space too large to enumerate");
        (0u32..1 << k).map(move |mask| {
            let mut x = self.particular.clone();
            for (i, v) in self.kernel.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    x.xor_assign(v);
                }
            }
            x
        })
    }
}

/// Solves `rows * x = rhs` with `rows[i]` the i-th equation over `ncols`
/// unknowns. Returns `None` for an inconsistent system.
pub fn solve(rows: &[BitVector], rhs: &[bool], ncols: usize) -> Option<AffineSolution> {
    assert_eq!(rows.len(), rhs.len());
    let mut m: Vec<(BitVector, bool)> = rows.iter().cloned().zip(rhs.iter().copied()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i].0.get(col)) else {
            continue;
        };
        m.swap(r, p);
        let (pivot_row, pivot_rhs) = m[r].clone();
        for (i, (row, b)) in m.iter_mut().enumerate() {
            if i != r && row.get(col) {
                row.xor_assign(&pivot_row);
                *b ^= pivot_rhs;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if m[r..].iter().any(|(_, b)| *b) {
        return None;
    }
    let mut particular = BitVector::zeros(ncols);
    for (i, &col) in pivots.iter().enumerate() {
        particular.set(col, m[i].1);
    }
    let kernel = (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = BitVector::zeros(ncols);
            v.set(free, true);
            for (i, &col) in pivots.iter().enumerate() {
                if m[i].0.get(free) {
                    v.set(col, true);
                }
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, kernel })
}

/// Square matrix over GF(2) of size at most 64, one word per row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    n: usize,
    rows: Vec<u64>,
}

impl F2Matrix {
    pub fn zero(n: usize) -> Self {
        assert!(n <= 64);
        F2Matrix { n, rows: vec![0; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn add(&self, other: &F2Matrix) -> F2Matrix {
        F2Matrix {
            n: self.n,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a ^ b).collect(),
        }
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        let rows = self
            .rows
            .iter()
            .map(|&row| {
                let mut acc = 0u64;
                let mut bits = row;
                while bits != 0 {
                    let k = bits.trailing_zeros() as usize;
                    acc ^= other.rows[k];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        F2Matrix { n: self.n, rows }
    }

    pub fn transpose(&self) -> F2Matrix {
        F2Matrix::from_fn(self.n, |i, j| self.get(j, i))
    }

    /// `[self, other] = self*other - other*self`
    pub fn commutator(&self, other: &F2Matrix) -> F2Matrix {
        self.mul(other).add(&other.mul(self))
    }

    pub fn apply(&self, v: &[u8]) -> Vec<u8> {
        (0..self.n)
            .map(|i| (0..self.n).filter(|&j| self.get(i, j)).map(|j| v[j]).sum::<u8>() & 1)
            .collect()
    }

    pub fn inverse(&self) -> Option<F2Matrix> {
        let n = self.n;
        let mut a = self.rows.clone();
        let mut inv = F2Matrix::identity(n).rows;
        for col in 0..n {
            let p = (col..n).find(|&r| a[r] >> col & 1 == 1)?;
            a.swap(col, p);
            inv.swap(col, p);
            for r in 0..n {
                if r != col && a[r] >> col & 1 == 1 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Some(F2Matrix { n, rows: inv })
    }

    /// Row-major flattening.
    pub fn to_bitvector(&self) -> BitVector {
        BitVector::from_bits((0..self.n * self.n).map(|k| self.get(k / self.n, k % self.n)))
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}
