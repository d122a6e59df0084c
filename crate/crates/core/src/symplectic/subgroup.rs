//! Breadth-first enumeration of finite subgroups of `Sp_2g(Z/2^e)`.

use std::collections::HashSet;
use std::hash::{BuildHasherDefault, Hasher};

use rayon::prelude::*;

use super::{Level, SpMatrix, SymplecticError};

/// Default bound on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 1 << 22;

/// Frontiers smaller than this are expanded sequentially.
const PARALLEL_THRESHOLD: usize = 4096;

/// Multiplicative mixer for keys that are already uniformly packed residues.
#[derive(Default)]
pub struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(8) ^ b as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        }
    }

    fn write_u128(&mut self, x: u128) {
        let folded = (x as u64) ^ ((x >> 64) as u64).rotate_left(29);
        let h = folded.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        self.0 = h ^ (h >> 31);
    }
}

type KeySet = HashSet<u128, BuildHasherDefault<KeyHasher>>;

/// Packs row-major residues of `bits` bits each into a single key.
#[derive(Debug, Clone, Copy)]
struct Packer {
    n: usize,
    bits: u32,
    mask: u32,
}

impl Packer {
    fn new(g: usize, level: Level) -> Result<Self, SymplecticError> {
        let n = 2 * g;
        let bits = level.exponent();
        if (n * n) as u32 * bits > 128 {
            return Err(SymplecticError::Precondition(format!(
                "a {n}x{n} matrix modulo 2^{bits} does not fit a 128-bit key"
            )));
        }
        Ok(Packer {
            n,
            bits,
            mask: level.modulus() - 1,
        })
    }

    fn pack(&self, entries: &[u32]) -> u128 {
        entries.iter().rev().fold(0u128, |acc, &x| acc << self.bits | x as u128)
    }

    fn unpack(&self, key: u128, out: &mut [u32]) {
        let mut k = key;
        for x in out.iter_mut().take(self.n * self.n) {
            *x = (k as u32) & self.mask;
            k >>= self.bits;
        }
    }

    /// Key of `unpack(key) * gen`.
    fn mul_key(&self, key: u128, gen: &[u32]) -> u128 {
        let n = self.n;
        let mut a = [0u32; 128];
        self.unpack(key, &mut a);
        let mut c = [0u32; 128];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x != 0 {
                    for j in 0..n {
                        c[i * n + j] = c[i * n + j].wrapping_add(x * gen[k * n + j]);
                    }
                }
            }
        }
        c.iter_mut().take(n * n).for_each(|x| *x &= self.mask);
        self.pack(&c[..n * n])
    }
}

/// A finite subgroup of `Sp_2g(Z/2^e)` with constant-time membership.
#[derive(Debug, Clone)]
pub struct SubgroupTable {
    g: usize,
    level: Level,
    packer: Packer,
    generators: Vec<SpMatrix>,
    elements: KeySet,
}

impl SubgroupTable {
    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn generators(&self) -> &[SpMatrix] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &SpMatrix) -> bool {
        m.genus() == self.g && m.level() == self.level && self.elements.contains(&self.packer.pack(m.entries()))
    }

    /// Elements in ascending key order.
    pub fn elements(&self) -> Vec<SpMatrix> {
        let mut keys: Vec<u128> = self.elements.iter().copied().collect();
        keys.sort_unstable();
        let nn = 4 * self.g * self.g;
        keys.into_iter()
            .map(|k| {
                let mut buf = [0u32; 128];
                self.packer.unpack(k, &mut buf);
                SpMatrix::from_raw(self.g, self.level, buf[..nn].to_vec())
            })
            .collect()
    }
}

/// Closure of `gens` under products and inverses, by breadth-first search
/// from the identity. Fails once more than `cap` elements are found.
pub fn generate_subgroup(
    g: usize,
    level: Level,
    gens: &[SpMatrix],
    cap: usize,
) -> Result<SubgroupTable, SymplecticError> {
    if gens.iter().any(|m| m.genus() != g || m.level() != level) {
        return Err(SymplecticError::Mismatch);
    }
    let packer = Packer::new(g, level)?;
    let mut steps: Vec<Vec<u32>> = Vec::new();
    for m in gens {
        for s in [m.clone(), m.inverse()] {
            if !s.is_identity() && !steps.iter().any(|x| x[..] == s.entries()[..]) {
                steps.push(s.entries().to_vec());
            }
        }
    }

    let identity = packer.pack(SpMatrix::identity(g, level).entries());
    let mut elements = KeySet::default();
    elements.insert(identity);
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let expand = |&key: &u128| steps.iter().map(move |s| packer.mul_key(key, s));
        let products: Vec<u128> = if frontier.len() >= PARALLEL_THRESHOLD {
            frontier.par_iter().flat_map_iter(expand).collect()
        } else {
            frontier.iter().flat_map(expand).collect()
        };
        let mut next = Vec::new();
        for p in products {
            if elements.insert(p) {
                if elements.len() > cap {
                    return Err(SymplecticError::CapExceeded {
                        size: format!("more than {cap}"),
                        cap,
                    });
                }
                next.push(p);
            }
        }
        frontier = next;
    }
    Ok(SubgroupTable {
        g,
        level,
        packer,
        generators: gens.to_vec(),
        elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{congruence_image, transvection, GramForm};

    fn lvl(e: u32) -> Level {
        Level::new(e).unwrap()
    }

    #[test]
    fn minus_identity_has_order_two() {
        let t = generate_subgroup(1, lvl(2), &[SpMatrix::minus_identity(1, lvl(2))], DEFAULT_CAP).unwrap();
        assert_eq!(t.order(), 2);
    }

    /// All `[[a, b], [c, d]]` modulo 4 with `ad - bc = 1`.
    fn sl2_mod4() -> Vec<SpMatrix> {
        let mut out = Vec::new();
        for a in 0..4i64 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        if (a * d - b * c).rem_euclid(4) == 1 {
                            out.push(SpMatrix::new(1, lvl(2), &[a, b, c, d]).unwrap());
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn elementary_transvections_generate_sl2_mod_4() {
        let f = GramForm::new(1).unwrap();
        let gens = [transvection(&[1, 0], &f, lvl(2)), transvection(&[0, 1], &f, lvl(2))];
        let t = generate_subgroup(1, lvl(2), &gens, DEFAULT_CAP).unwrap();
        let all = sl2_mod4();
        assert_eq!(all.len(), 48);
        assert_eq!(t.order(), 48);
        assert!(all.iter().all(|m| t.contains(m)));
    }

    #[test]
    fn level_two_subgroup_mod_4() {
        let gens = congruence_image(1, 1, lvl(2), DEFAULT_CAP).unwrap();
        let t = generate_subgroup(1, lvl(2), &gens, DEFAULT_CAP).unwrap();
        assert_eq!(t.order(), 8);
        let elems = t.elements();
        assert_eq!(elems.len(), 8);
        assert!(elems.iter().all(|m| m.congruence_level() >= 1));
    }

    #[test]
    fn closure_and_cap() {
        let f = GramForm::new(2).unwrap();
        let gens = [
            transvection(&[1, 0, 0, 0], &f, lvl(3)),
            transvection(&[0, 1, 1, 0], &f, lvl(3)),
        ];
        let t = generate_subgroup(2, lvl(3), &gens, DEFAULT_CAP).unwrap();
        let elems = t.elements();
        for a in elems.iter().step_by(7) {
            for b in elems.iter().step_by(11) {
                assert!(t.contains(&a.mul(b)));
            }
            assert!(t.contains(&a.inverse()));
        }
        assert!(matches!(
            generate_subgroup(2, lvl(3), &gens, 10),
            Err(SymplecticError::CapExceeded { .. })
        ));
    }

    #[test]
    fn mismatched_generators_rejected() {
        let gens = [SpMatrix::identity(1, lvl(3))];
        assert!(matches!(
            generate_subgroup(1, lvl(2), &gens, DEFAULT_CAP),
            Err(SymplecticError::Mismatch)
        ));
    }

    #[test]
    fn parallel_and_sequential_agree() {
        // Large enough to take the parallel path.
        let f = GramForm::new(2).unwrap();
        let gens: Vec<_> = [[1i64, 0, 1, 0], [0, 1, 0, 1], [1, 1, 0, 0], [0, 0, 1, 1]]
            .iter()
            .map(|c| transvection(c, &f, lvl(3)).pow(2))
            .collect();
        let a = generate_subgroup(2, lvl(3), &gens, DEFAULT_CAP).unwrap();
        let b = generate_subgroup(2, lvl(3), &gens, DEFAULT_CAP).unwrap();
        assert_eq!(a.elements(), b.elements());
    }
}
