//! Finite verifications: the transvection basis of `sp_2g(F2)`, congruence
//! containment of transvection subgroups, the degree-four equality, and the
//! layer and squaring structure of the congruence filtration.

use std::collections::HashSet;

use serde::Serialize;

use super::{
    congruence_image, generate_subgroup, lifts, transvection_nilpotent, transvection_power, GramForm, Level,
    SpAlgElemF2, SpMatrix, SymplecticError, DEFAULT_CAP,
};
use crate::gf2::{self, F2Matrix};
use crate::homology::{self, HomClassF2};

/// 0/1 integer lifts of the c-classes of genus `g`.
pub fn c_lifts(g: usize) -> Result<Vec<Vec<i64>>, SymplecticError> {
    let classes = homology::c_classes(g).map_err(|e| SymplecticError::Precondition(e.to_string()))?;
    Ok(classes.iter().map(class_lift).collect())
}

fn class_lift(c: &HomClassF2) -> Vec<i64> {
    c.coords().iter().map(|&x| x as i64).collect()
}

/// `c (Jc)^T mod 2`, the reduction of `T_c - 1`.
fn nilpotent_f2(g: usize, c: &HomClassF2) -> F2Matrix {
    let form = GramForm { g };
    let t = transvection_nilpotent(&class_lift(c), &form);
    F2Matrix::from_fn(2 * g, |i, j| t[i * 2 * g + j] & 1 == 1)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpBasisReport {
    pub genus: usize,
    pub dimension: usize,
    pub rank: usize,
    pub elements: usize,
    pub all_in_algebra: bool,
    /// `[t_i, t_j](v) = <v, c_i> c_j + <v, c_j> c_i` for every pair.
    pub commutator_formula: bool,
    /// Upper-left 2x2 blocks of `t_1`, `t_2`, `[t_1, t_2]` in the basis of
    /// c-classes.
    pub base_case: Vec<Vec<Vec<u8>>>,
    pub base_case_expected: bool,
    pub pass: bool,
}

/// Rank of `{t_i} U {[t_i, t_j] : i < j}` inside `sp_2g(F2)`.
pub fn sp_basis_certify(g: usize, c_classes: &[HomClassF2]) -> Result<SpBasisReport, SymplecticError> {
    GramForm::new(g)?;
    if c_classes.len() != 2 * g || c_classes.iter().any(|c| c.genus() != g) {
        return Err(SymplecticError::Precondition(format!(
            "expected {} classes of genus {g}",
            2 * g
        )));
    }
    let n = 2 * g;
    let ts: Vec<F2Matrix> = c_classes.iter().map(|c| nilpotent_f2(g, c)).collect();
    let mut elems: Vec<F2Matrix> = ts.clone();
    let mut commutator_formula = true;
    for i in 0..n {
        for j in i + 1..n {
            let comm = ts[i].commutator(&ts[j]);
            // Column k is the image of e_k; <e_k, c> = (Jc)_k.
            let (ci, cj) = (c_classes[i].coords(), c_classes[j].coords());
            let jci = GramForm { g }.apply(&class_lift(&c_classes[i]));
            let jcj = GramForm { g }.apply(&class_lift(&c_classes[j]));
            let expected = F2Matrix::from_fn(n, |r, k| {
                ((jci[k] & 1) as u8 * cj[r] + (jcj[k] & 1) as u8 * ci[r]) & 1 == 1
            });
            commutator_formula &= comm == expected;
            elems.push(comm);
        }
    }
    let all_in_algebra = elems.iter().all(|m| SpAlgElemF2::in_algebra(g, m));
    let vectors: Vec<_> = elems.iter().map(|m| m.to_bitvector()).collect();
    let rank = gf2::rank(&vectors);
    let dimension = SpAlgElemF2::dimension(g);

    let p = F2Matrix::from_fn(n, |r, k| c_classes[k].coords()[r] == 1);
    let base_case: Vec<Vec<Vec<u8>>> = match p.inverse() {
        Some(pinv) => [&ts[0], &ts[1], &elems[n]]
            .iter()
            .map(|x| {
                let y = pinv.mul(x).mul(&p).to_rows();
                vec![y[0][..2].to_vec(), y[1][..2].to_vec()]
            })
            .collect(),
        None => Vec::new(),
    };
    let base_case_expected = base_case
        == vec![
            vec![vec![0, 1], vec![0, 0]],
            vec![vec![0, 0], vec![1, 0]],
            vec![vec![1, 0], vec![0, 1]],
        ];
    Ok(SpBasisReport {
        genus: g,
        dimension,
        rank,
        elements: elems.len(),
        all_in_algebra,
        commutator_formula,
        pass: rank == dimension && all_in_algebra && commutator_formula && base_case_expected,
        base_case,
        base_case_expected,
    })
}

fn check_enumeration_size(log_size: u64, cap: usize) -> Result<(), SymplecticError> {
    if log_size >= 63 || (1u64 << log_size) > cap as u64 {
        return Err(SymplecticError::CapExceeded {
            size: format!("2^{log_size}"),
            cap,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct ContainmentReport {
    pub genus: usize,
    pub n: u32,
    pub n_prime: u32,
    /// `n + max(n, n')`.
    pub big_n: u32,
    pub level: u32,
    pub generated_order: usize,
    /// `|Gamma(2^N) mod 2^e|`.
    pub target_order: usize,
    pub contained: bool,
    /// Some generator lies outside `Gamma(2^N)`.
    pub strict: bool,
    pub generator_levels: Vec<u32>,
}

impl ContainmentReport {
    pub fn pass(&self) -> bool {
        self.contained && self.strict
    }
}

/// Checks that `T_{c_1}^{2^n}, ..., T_{c_{2g-1}}^{2^n}, T_{c_{2g}}^{2^{n'}}`
/// generate a subgroup containing `Gamma(2^N)` modulo `2^{N + layers}`.
pub fn containment_certify(
    g: usize,
    n: u32,
    n_prime: u32,
    layers: u32,
    cap: usize,
) -> Result<ContainmentReport, SymplecticError> {
    let form = GramForm::new(g)?;
    if n == 0 || n_prime == 0 || layers == 0 {
        return Err(SymplecticError::Precondition(
            "n, n' and layers must be positive".into(),
        ));
    }
    let big_n = n + n.max(n_prime);
    let level = Level::new(big_n + layers)?;
    check_enumeration_size(super::congruence_image_log_order(g, big_n, level), cap)?;

    let cs = c_lifts(g)?;
    let gens: Vec<SpMatrix> = cs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let exp = if i + 1 == 2 * g { n_prime } else { n };
            transvection_power(c, 1 << exp, &form, level)
        })
        .collect();
    let generator_levels: Vec<u32> = gens.iter().map(|m| m.congruence_level()).collect();
    let table = generate_subgroup(g, level, &gens, cap)?;
    let target = congruence_image(g, big_n, level, cap)?;
    let contained = target.iter().all(|m| table.contains(m));
    Ok(ContainmentReport {
        genus: g,
        n,
        n_prime,
        big_n,
        level: level.exponent(),
        generated_order: table.order(),
        target_order: target.len(),
        contained,
        strict: generator_levels.iter().any(|&k| k < big_n),
        generator_levels,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeFourReport {
    pub n: u32,
    pub layers: u32,
    pub level: u32,
    pub generated_order: usize,
    /// `2^{3 layers}`.
    pub expected_order: usize,
    /// `|Gamma(2^n) mod 2^e|` by enumeration.
    pub full_order: usize,
    pub equal: bool,
}

impl DegreeFourReport {
    pub fn pass(&self) -> bool {
        self.equal && self.generated_order == self.expected_order
    }
}

/// Genus one: `T_{a1+b1}^{2^n}, T_{b1}^{2^n}, T_{a1}^{2^n}` generate all of
/// `Gamma(2^n)` modulo `2^{n + layers}`.
pub fn degree_four_certify(n: u32, layers: u32, cap: usize) -> Result<DegreeFourReport, SymplecticError> {
    if n == 0 || layers == 0 {
        return Err(SymplecticError::Precondition("n and layers must be positive".into()));
    }
    let form = GramForm::new(1)?;
    let level = Level::new(n + layers)?;
    check_enumeration_size(super::congruence_image_log_order(1, n, level), cap)?;
    let mut cs = c_lifts(1)?;
    cs.push(vec![1, 0]);
    let gens: Vec<SpMatrix> = cs.iter().map(|c| transvection_power(c, 1 << n, &form, level)).collect();
    let table = generate_subgroup(1, level, &gens, cap)?;
    let full = congruence_image(1, n, level, cap)?;
    let equal = table.order() == full.len() && full.iter().all(|m| table.contains(m));
    Ok(DegreeFourReport {
        n,
        layers,
        level: level.exponent(),
        generated_order: table.order(),
        expected_order: 1 << (3 * layers),
        full_order: full.len(),
        equal,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IndexReport {
    pub genus: usize,
    pub n: u32,
    pub level: u32,
    pub generated_order: usize,
    pub ambient_order: usize,
    /// `[Gamma(2) mod 2^e : G mod 2^e]`.
    pub index: usize,
}

/// Index in `Gamma(2) mod 2^e` of the group generated by
/// `T_{c_i}^{2^{n+1}}`, `1 <= i <= 2g`.
pub fn generated_index(g: usize, n: u32, level: Level, cap: usize) -> Result<IndexReport, SymplecticError> {
    let form = GramForm::new(g)?;
    check_enumeration_size(super::congruence_image_log_order(g, 1, level), cap)?;
    let gens: Vec<SpMatrix> = c_lifts(g)?
        .iter()
        .map(|c| transvection_power(c, 1 << (n + 1), &form, level))
        .collect();
    let table = generate_subgroup(g, level, &gens, cap)?;
    let ambient = congruence_image(g, 1, level, cap)?;
    debug_assert!(table.elements().iter().all(|m| m.congruence_level() >= 1));
    Ok(IndexReport {
        genus: g,
        n,
        level: level.exponent(),
        generated_order: table.order(),
        ambient_order: ambient.len(),
        index: ambient.len() / table.order(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CongruenceReport {
    pub genus: usize,
    pub cases: usize,
    /// `t_i^2 = 0` over the integers.
    pub nilpotent: bool,
    /// `(1 + 2^n t_i)^{2^{n''}} = 1 + 2^{n+n''} t_i mod 2^{n+n''+1}`.
    pub power: bool,
    /// Group commutator of `1 + 2^n t_i` and `1 + 2^{n''} t_j` is
    /// `1 + 2^{n+n''}[t_i, t_j] mod 2^{n+n''+1}`.
    pub commutator: bool,
    pub failures: Vec<String>,
}

impl CongruenceReport {
    pub fn pass(&self) -> bool {
        self.nilpotent && self.power && self.commutator
    }
}

fn int_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i * n + j] += a[i * n + k] * b[k * n + j];
            }
        }
    }
    out
}

/// `1 + 2^s x mod 2^e` as raw residues.
fn one_plus(x: &[i64], s: u32, n: usize, e: u32) -> Vec<u32> {
    let mask = (1i64 << e) - 1;
    x.iter()
        .enumerate()
        .map(|(k, &v)| (((k / n == k % n) as i64 + (v << s)) & mask) as u32)
        .collect()
}

/// Nilpotency, power and commutator congruences for exponents
/// `n, n'' in exponents`.
pub fn congruence_suite(g: usize, exponents: &[u32]) -> Result<CongruenceReport, SymplecticError> {
    let form = GramForm::new(g)?;
    let dim = 2 * g;
    let cs = c_lifts(g)?;
    let ts: Vec<Vec<i64>> = cs.iter().map(|c| transvection_nilpotent(c, &form)).collect();
    let mut failures = Vec::new();
    let mut cases = 0;

    let mut nilpotent = true;
    for (i, t) in ts.iter().enumerate() {
        if int_mul(t, t, dim).iter().any(|&x| x != 0) {
            nilpotent = false;
            failures.push(format!("t_{}^2 != 0", i + 1));
        }
    }

    let (mut power, mut commutator) = (true, true);
    for &n in exponents {
        for &n2 in exponents {
            let e = n + n2 + 1;
            let level = Level::new(e)?;
            let a: Vec<SpMatrix> = cs.iter().map(|c| transvection_power(c, 1 << n, &form, level)).collect();
            let b: Vec<SpMatrix> = cs
                .iter()
                .map(|c| transvection_power(c, 1 << n2, &form, level))
                .collect();
            for i in 0..dim {
                cases += 1;
                if a[i].pow(1 << n2).entries() != one_plus(&ts[i], n + n2, dim, e) {
                    power = false;
                    failures.push(format!("power i={} n={n} n''={n2}", i + 1));
                }
                for j in i + 1..dim {
                    cases += 1;
                    let bracket: Vec<i64> = int_mul(&ts[i], &ts[j], dim)
                        .iter()
                        .zip(int_mul(&ts[j], &ts[i], dim))
                        .map(|(x, y)| x - y)
                        .collect();
                    if a[i].commutator(&b[j]).entries() != one_plus(&bracket, n + n2, dim, e) {
                        commutator = false;
                        failures.push(format!("commutator i={} j={} n={n} n''={n2}", i + 1, j + 1));
                    }
                }
            }
        }
    }
    Ok(CongruenceReport {
        genus: g,
        cases,
        nilpotent,
        power,
        commutator,
        failures,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LayerReport {
    pub genus: usize,
    pub k: u32,
    /// `|Gamma(2^k) mod 2^{k+1}|` by lifting.
    pub order: usize,
    /// Count of `X in M_2g(F2)` with `1 + 2^k X` symplectic mod `2^{k+1}`.
    pub bruteforce_order: usize,
    pub expected_order: usize,
    pub exponent_two: bool,
    pub abelian: bool,
    /// `M -> (M - 1)/2^k` is a bijection onto `sp_2g(F2)`.
    pub log_bijective: bool,
}

impl LayerReport {
    pub fn pass(&self) -> bool {
        self.order == self.expected_order
            && self.bruteforce_order == self.expected_order
            && self.exponent_two
            && self.abelian
            && self.log_bijective
    }
}

/// Largest genus for which all of `M_2g(F2)` is scanned.
pub const BRUTE_FORCE_MAX_GENUS: usize = 2;

/// Structure of `Gamma(2^k)/Gamma(2^{k+1})` for `g <= 2`.
pub fn layer_structure(g: usize, k: u32) -> Result<LayerReport, SymplecticError> {
    GramForm::new(g)?;
    if g > BRUTE_FORCE_MAX_GENUS || k == 0 {
        return Err(SymplecticError::Precondition(format!(
            "layer enumeration needs 1 <= g <= {BRUTE_FORCE_MAX_GENUS} and k >= 1"
        )));
    }
    let level = Level::new(k + 1)?;
    let n = 2 * g;
    let layer = congruence_image(g, k, level, DEFAULT_CAP)?;

    let bruteforce_order = (0u64..1 << (n * n))
        .filter(|bits| {
            SpMatrix::from_fn(g, level, |i, j| {
                (i == j) as i64 + ((((bits >> (i * n + j)) & 1) as i64) << k)
            })
            .is_ok()
        })
        .count();

    let id = SpMatrix::identity(g, level);
    let exponent_two = layer.iter().all(|m| m.mul(m) == id);
    let abelian = layer
        .iter()
        .enumerate()
        .all(|(i, a)| layer[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)));
    let logs: HashSet<SpAlgElemF2> = layer.iter().map(|m| m.layer_log(k)).collect::<Result<_, _>>()?;
    Ok(LayerReport {
        genus: g,
        k,
        order: layer.len(),
        bruteforce_order,
        expected_order: 1 << SpAlgElemF2::dimension(g),
        exponent_two,
        abelian,
        log_bijective: logs.len() == layer.len() && logs.len() == 1 << SpAlgElemF2::dimension(g),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SquaringReport {
    pub genus: usize,
    pub k: u32,
    pub domain_order: usize,
    pub image_order: usize,
    pub codomain_order: usize,
    /// The class of `M^2` does not depend on the lift of `M`.
    pub well_defined: bool,
    pub bijective: bool,
}

/// `M -> M^2` from `Gamma(2^k)/Gamma(2^{k+1})` to
/// `Gamma(2^{k+1})/Gamma(2^{k+2})`, checked over every lift.
pub fn squaring_map(g: usize, k: u32) -> Result<SquaringReport, SymplecticError> {
    GramForm::new(g)?;
    if g > BRUTE_FORCE_MAX_GENUS || k == 0 {
        return Err(SymplecticError::Precondition(format!(
            "squaring check needs 1 <= g <= {BRUTE_FORCE_MAX_GENUS} and k >= 1"
        )));
    }
    let layer = congruence_image(g, k, Level::new(k + 1)?, DEFAULT_CAP)?;
    let mut image = HashSet::new();
    let mut well_defined = true;
    for m in &layer {
        let mut classes = lifts(m).into_iter().map(|l| l.mul(&l).layer_log(k + 1));
        let first = classes.next().expect("every element lifts")?;
        for c in classes {
            well_defined &= c? == first;
        }
        image.insert(first);
    }
    let codomain_order = 1 << SpAlgElemF2::dimension(g);
    Ok(SquaringReport {
        genus: g,
        k,
        domain_order: layer.len(),
        image_order: image.len(),
        codomain_order,
        well_defined,
        bijective: well_defined && layer.len() == codomain_order && image.len() == codomain_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_ranks() {
        for (g, rank) in [(1, 3), (2, 10), (3, 21), (4, 36)] {
            let r = sp_basis_certify(g, &homology::c_classes(g).unwrap()).unwrap();
            assert_eq!(r.rank, rank);
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn base_case_blocks() {
        let r = sp_basis_certify(1, &homology::c_classes(1).unwrap()).unwrap();
        assert_eq!(
            r.base_case,
            vec![
                vec![vec![0, 1], vec![0, 0]],
                vec![vec![0, 0], vec![1, 0]],
                vec![vec![1, 0], vec![0, 1]]
            ]
        );
    }

    #[test]
    fn basis_fails_for_dependent_classes() {
        let a = HomClassF2::a(1, 1);
        let r = sp_basis_certify(1, &[a.clone(), a]).unwrap();
        assert!(!r.pass);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn containment_genus_one() {
        for (n, np) in [(1, 1), (1, 2), (2, 1)] {
            let r = containment_certify(1, n, np, 1, DEFAULT_CAP).unwrap();
            assert!(r.pass(), "{r:?}");
            assert_eq!(r.target_order, 8);
        }
    }

    #[test]
    fn containment_cap_checked_first() {
        assert!(matches!(
            containment_certify(2, 1, 1, 3, 1 << 20),
            Err(SymplecticError::CapExceeded { .. })
        ));
    }

    #[test]
    fn degree_four_orders() {
        for (n, layers, order) in [(1, 1, 8), (1, 2, 64), (2, 1, 8)] {
            let r = degree_four_certify(n, layers, DEFAULT_CAP).unwrap();
            assert_eq!(r.generated_order, order);
            assert_eq!(r.expected_order, order);
            assert!(r.equal);
        }
    }

    #[test]
    fn two_transvections_have_index_two() {
        let r = generated_index(1, 0, Level::new(3).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(r.ambient_order, 64);
        assert_eq!(r.index, 2);
    }

    #[test]
    fn congruences_hold() {
        for g in 1..=3 {
            let r = congruence_suite(g, &[1, 2]).unwrap();
            assert!(r.pass(), "{:?}", r.failures);
        }
    }

    #[test]
    fn commutator_congruence_needs_positive_exponents() {
        let r = congruence_suite(1, &[0]).unwrap();
        assert!(r.nilpotent && r.power);
        assert!(!r.commutator);
    }

    #[test]
    fn layers_genus_one() {
        for k in 1..=2 {
            let r = layer_structure(1, k).unwrap();
            assert!(r.pass(), "{r:?}");
            assert_eq!(r.order, 8);
        }
    }

    #[test]
    fn squaring_first_layer_is_not_injective() {
        let r = squaring_map(1, 1).unwrap();
        assert!(r.well_defined);
        assert!(!r.bijective);
        // X -> X + X^2 over F2 on sp_2(F2).
        assert_eq!(r.image_order, 4);
    }

    #[test]
    fn squaring_higher_layers() {
        for k in 2..=3 {
            let r = squaring_map(1, k).unwrap();
            assert!(r.bijective, "{r:?}");
        }
    }
}
