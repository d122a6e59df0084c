//! Certificates of congruence-subgroup containment for the 2-adic Galois
//! image of hyperelliptic Jacobians over the rationals.
//!
//! Three criteria are supported, one per curve shape:
//!
//! * single parameter, `y^2 = f(x)(x - lambda)`;
//! * two parameters, `y^2 = f(x)(x - lambda)(x - lambda')`;
//! * split roots, `y^2 = prod (x - alpha_i)` with `alpha_{d'}` distinguished.
//!
//! A certificate asserts `G_2 ∩ Sp(T_2 J) ⊋ Gamma(2^k)` once the hypotheses
//! have been checked; it never computes `G_2` itself.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arith::{self, factor, v2, vp_int, ArithError, FactorBudget};
use crate::poly::{discriminant, irreducibility_witness, IntPoly, IrreducibilityVerdict};

/// Largest number of parameters a single scan will evaluate.
pub const MAX_SCAN_LENGTH: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("abstained: could not factor {cofactor}")]
    Abstained { cofactor: BigInt },
    #[error("not applicable: {0}")]
    NotApplicable(String),
}

impl From<ArithError> for CertifyError {
    fn from(e: ArithError) -> Self {
        match e {
            ArithError::FactorizationIncomplete { cofactor } => CertifyError::Abstained { cofactor },
            ArithError::OutOfRange(n) => CertifyError::Abstained { cofactor: n },
            other => CertifyError::InvalidInput(other.to_string()),
        }
    }
}

/// Why no certificate was issued.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    /// Every prime of `f(lambda)` divides `2 disc(f)`.
    AllPrimesDivide2Delta,
    /// `f(lambda) = ±1`.
    UnitValue,
    Reducible,
    /// `f(lambda) = 0`, or the curve polynomial has a repeated root.
    Degenerate,
    NoPrimeForFLambda,
    NoPrimeForDifference,
    NoAssignment,
}

const REASONS: [Reason; 7] = [
    Reason::AllPrimesDivide2Delta,
    Reason::UnitValue,
    Reason::Reducible,
    Reason::Degenerate,
    Reason::NoPrimeForFLambda,
    Reason::NoPrimeForDifference,
    Reason::NoAssignment,
];

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Conditions under which a certificate still depends on an unproven fact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    IrreducibilityUnknown,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Certified,
    CertifiedConditional(Condition),
    NotCertified(Reason),
}

impl Status {
    pub fn is_certified(&self) -> bool {
        !matches!(self, Status::NotCertified(_))
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Certified => write!(f, "Certified"),
            Status::CertifiedConditional(c) => write!(f, "CertifiedConditional({c})"),
            Status::NotCertified(r) => write!(f, "NotCertified({r})"),
        }
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "Certified" {
            return Ok(Status::Certified);
        }
        if s == "CertifiedConditional(IrreducibilityUnknown)" {
            return Ok(Status::CertifiedConditional(Condition::IrreducibilityUnknown));
        }
        REASONS
            .iter()
            .find(|r| s == format!("NotCertified({r})"))
            .map(|&r| Status::NotCertified(r))
            .ok_or_else(|| format!("unknown status {s:?}"))
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Status {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    SingleParameter,
    TwoParameter,
    SplitRoots,
}

impl Criterion {
    /// One-line statement of what the criterion guarantees.
    pub fn citation(&self) -> &'static str {
        match self {
            Criterion::SingleParameter => {
                "y^2 = f(x)(x - lambda), f irreducible monic: a prime p | f(lambda), p ∤ 2·disc(f), \
                 m = v_p(f(lambda)) gives G_2 ∩ Sp ⊋ Gamma(2^(2·v2(m)+2)), or Gamma(2^(v2(m)+1)) when deg f = 3"
            }
            Criterion::TwoParameter => {
                "y^2 = f(x)(x - lambda)(x - lambda'): p | f(lambda) avoiding (lambda - lambda') and 2·disc(f), \
                 p' | (lambda - lambda') avoiding f(lambda) and 2·disc(f); level from v2(m), v2(m')"
            }
            Criterion::SplitRoots => {
                "y^2 = prod(x - alpha_i): for each i < d' an odd prime separating exactly alpha_i and alpha_d'; \
                 level from n = max v2(m_i) (i <= d'-2) and n' = v2(m_(d'-1))"
            }
        }
    }
}

/// A witness prime with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub p: String,
    pub m: u32,
    pub v2m: u32,
}

impl Witness {
    fn new(p: &BigInt, m: u32) -> Self {
        Witness {
            p: p.to_string(),
            m,
            v2m: v2(m as u64),
        }
    }

    pub fn prime(&self) -> BigInt {
        self.p.parse().expect("witness primes are decimal integers")
    }
}

/// Outcome of applying a criterion. Field order is part of the JSON format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub status: Status,
    pub theorem: Criterion,
    /// Degree of `f`; for split roots, the number of non-distinguished roots.
    pub d: usize,
    /// Degree of the curve polynomial.
    pub d_prime: usize,
    pub genus: usize,
    pub witnesses: Vec<Witness>,
    /// `k` with `G_2 ∩ Sp ⊋ Gamma(2^k)`.
    pub level_exponent: Option<u32>,
    /// `2^k` in decimal.
    pub gamma_level: Option<String>,
    pub openness: bool,
    pub index_bound: Option<String>,
    pub conditional_reasons: Vec<String>,
    pub notes: Vec<String>,
}

impl Certificate {
    fn not_certified(theorem: Criterion, d: usize, d_prime: usize, reason: Reason, note: Option<String>) -> Self {
        Certificate {
            status: Status::NotCertified(reason),
            theorem,
            d,
            d_prime,
            genus: genus_of_degree(d_prime),
            witnesses: Vec::new(),
            level_exponent: None,
            gamma_level: None,
            openness: false,
            index_bound: None,
            conditional_reasons: Vec::new(),
            notes: note.into_iter().collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Multi-line human-readable rendering.
    pub fn to_human(&self) -> String {
        let mut out = format!("status: {}\n", self.status);
        out += &format!("criterion: {}\n", self.theorem.citation());
        out += &format!(
            "degree d = {}, curve degree d' = {}, genus {}\n",
            self.d, self.d_prime, self.genus
        );
        for w in &self.witnesses {
            out += &format!("witness p = {}, m = {}, v2(m) = {}\n", w.p, w.m, w.v2m);
        }
        if let (Some(k), Some(n)) = (self.level_exponent, &self.gamma_level) {
            out += &format!("G_2 ∩ Sp(T_2 J) ⊋ Gamma({n}) = Gamma(2^{k}); open: {}\n", self.openness);
        }
        if let Some(b) = &self.index_bound {
            out += &format!("index bound: {b}\n");
        }
        for r in &self.conditional_reasons {
            out += &format!("conditional: {r}\n");
        }
        for n in &self.notes {
            out += &format!("note: {n}\n");
        }
        out
    }
}

/// Genus of a hyperelliptic model of degree `d'`.
pub fn genus_of_degree(d_prime: usize) -> usize {
    d_prime.saturating_sub(1) / 2
}

/// Level exponent from the split-root parameters `n`, `n'`.
pub fn split_level(n: u32, n_prime: u32, d_prime: usize) -> u32 {
    let mut k = if n_prime <= n || d_prime.is_multiple_of(2) {
        2 * n + 2
    } else {
        n + n_prime + 2
    };
    if d_prime == 4 {
        k = k.min(n.max(n_prime) + 1);
    }
    k
}

/// Level exponent of the single-parameter criterion.
pub fn single_level(v2m: u32, d: usize) -> u32 {
    split_level(v2m, v2m, d + 1)
}

/// Level exponent of the two-parameter criterion.
pub fn two_parameter_level(v2m: u32, v2m_prime: u32, d: usize) -> u32 {
    split_level(v2m, v2m_prime, d + 2)
}

/// `2^{(2n+1)(2g^2+g) - (n+1)(d'-1)}` when `n = n'`.
pub fn index_bound(n: u32, g: usize, d_prime: usize) -> Result<BigInt, CertifyError> {
    if d_prime == 0 {
        return Err(CertifyError::NotApplicable("curve degree must be positive".into()));
    }
    let exponent = (2 * n as i64 + 1) * (2 * (g * g) as i64 + g as i64) - (n as i64 + 1) * (d_prime as i64 - 1);
    if exponent < 0 {
        return Err(CertifyError::NotApplicable(format!("exponent {exponent} is negative")));
    }
    Ok(BigInt::one() << exponent as usize)
}

/// Variant of [`index_bound`] that rejects unequal parameters.
pub fn index_bound_for(n: u32, n_prime: u32, g: usize, d_prime: usize) -> Result<BigInt, CertifyError> {
    if n != n_prime {
        return Err(CertifyError::NotApplicable(format!(
            "bound needs n = n', got {n} and {n_prime}"
        )));
    }
    index_bound(n, g, d_prime)
}

fn gamma_level(k: u32) -> String {
    (BigInt::one() << k as usize).to_string()
}

/// The input shapes accepted by [`certify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveSpec {
    IrredPlusLambda {
        f: IntPoly,
        lambda: BigInt,
    },
    IrredPlusTwoLambdas {
        f: IntPoly,
        lambda: BigInt,
        lambda2: BigInt,
    },
    /// The last root is the distinguished one.
    SplitRoots {
        roots: Vec<BigInt>,
    },
}

pub fn certify(spec: &CurveSpec, budget: FactorBudget) -> Result<Certificate, CertifyError> {
    match spec {
        CurveSpec::IrredPlusLambda { f, lambda } => certify_single(f, lambda, budget),
        CurveSpec::IrredPlusTwoLambdas { f, lambda, lambda2 } => certify_two(f, lambda, lambda2, budget),
        CurveSpec::SplitRoots { roots } => certify_split(roots, budget),
    }
}

/// Data of `f` shared by every parameter value.
#[derive(Debug, Clone)]
pub struct PreparedPoly {
    pub f: IntPoly,
    pub d: usize,
    pub disc: BigInt,
    pub two_disc: BigInt,
    pub irreducibility: IrreducibilityVerdict,
}

impl PreparedPoly {
    pub fn new(f: &IntPoly) -> Result<Self, CertifyError> {
        let d = f
            .require_monic(2)
            .map_err(|e| CertifyError::InvalidInput(e.to_string()))?;
        let disc = discriminant(f).map_err(|e| CertifyError::InvalidInput(e.to_string()))?;
        Ok(PreparedPoly {
            f: f.clone(),
            d,
            two_disc: &disc * 2,
            disc,
            irreducibility: irreducibility_witness(f),
        })
    }

    fn divides_two_disc(&self, p: &BigInt) -> bool {
        (&self.two_disc % p).is_zero()
    }

    fn reducibility_note(&self) -> Option<String> {
        match &self.irreducibility {
            IrreducibilityVerdict::Disproven(g) => Some(format!("f has the proper factor {g}")),
            _ => None,
        }
    }

    fn finish(&self, mut cert: Certificate) -> Certificate {
        match &self.irreducibility {
            IrreducibilityVerdict::Proven(w) => cert.notes.push(format!("f is irreducible: {w}")),
            IrreducibilityVerdict::Unknown => {
                cert.status = Status::CertifiedConditional(Condition::IrreducibilityUnknown);
                cert.conditional_reasons
                    .push("irreducibility of f was neither proven nor disproven".into());
            }
            IrreducibilityVerdict::Disproven(_) => unreachable!("reducible inputs are rejected first"),
        }
        cert
    }
}

fn containment_notes(cert: &mut Certificate, k: u32, degree_four: bool) {
    cert.notes.push(format!(
        "containment claim concerns G_2 ∩ Sp(T_2 J); G_2 itself is not computed (k = {k})"
    ));
    if degree_four {
        cert.notes.push(
            "the degree-four refinement yields G_2 ∩ Sp ⊇ Gamma(2^k); strictness is only guaranteed for the generic level"
                .into(),
        );
    }
}

/// Single-parameter criterion for `y^2 = f(x)(x - lambda)`.
pub fn certify_single(f: &IntPoly, lambda: &BigInt, budget: FactorBudget) -> Result<Certificate, CertifyError> {
    certify_single_prepared(&PreparedPoly::new(f)?, lambda, budget)
}

pub fn certify_single_prepared(
    pf: &PreparedPoly,
    lambda: &BigInt,
    budget: FactorBudget,
) -> Result<Certificate, CertifyError> {
    let (d, d_prime) = (pf.d, pf.d + 1);
    let theorem = Criterion::SingleParameter;
    if let Some(note) = pf.reducibility_note() {
        return Ok(Certificate::not_certified(
            theorem,
            d,
            d_prime,
            Reason::Reducible,
            Some(note),
        ));
    }
    let value = pf.f.evaluate(lambda);
    if value.is_zero() {
        return Ok(Certificate::not_certified(
            theorem,
            d,
            d_prime,
            Reason::Degenerate,
            None,
        ));
    }
    if value.abs().is_one() {
        return Ok(Certificate::not_certified(
            theorem,
            d,
            d_prime,
            Reason::UnitValue,
            Some(format!("f(lambda) = {value}")),
        ));
    }
    let fac = factor(&value, budget)?;
    // Smallest v2(m), then smallest prime; factors are already ascending.
    let best = fac
        .factors
        .iter()
        .filter(|(p, _)| !pf.divides_two_disc(p))
        .min_by_key(|(_, m)| v2(*m as u64));
    let Some((p, m)) = best else {
        return Ok(Certificate::not_certified(
            theorem,
            d,
            d_prime,
            Reason::AllPrimesDivide2Delta,
            Some(format!("f(lambda) = {value}, 2·disc(f) = {}", pf.two_disc)),
        ));
    };
    let w = Witness::new(p, *m);
    let k = single_level(w.v2m, d);
    let g = genus_of_degree(d_prime);
    let mut cert = Certificate {
        status: Status::Certified,
        theorem,
        d,
        d_prime,
        genus: g,
        level_exponent: Some(k),
        gamma_level: Some(gamma_level(k)),
        openness: true,
        index_bound: index_bound(w.v2m, g, d_prime).ok().map(|b| b.to_string()),
        witnesses: vec![w],
        conditional_reasons: Vec::new(),
        notes: Vec::new(),
    };
    containment_notes(&mut cert, k, d == 3);
    if cert.index_bound.is_some() {
        cert.notes.push("index bound is for [Gamma(2) : G_2 ∩ Gamma(2)]".into());
    }
    Ok(pf.finish(cert))
}

/// Two-parameter criterion for `y^2 = f(x)(x - lambda)(x - lambda')`.
pub fn certify_two(
    f: &IntPoly,
    lambda: &BigInt,
    lambda2: &BigInt,
    budget: FactorBudget,
) -> Result<Certificate, CertifyError> {
    let pf = PreparedPoly::new(f)?;
    if lambda == lambda2 {
        return Err(CertifyError::InvalidInput("lambda and lambda' must differ".into()));
    }
    let (d, d_prime) = (pf.d, pf.d + 2);
    let theorem = Criterion::TwoParameter;
    if let Some(note) = pf.reducibility_note() {
        return Ok(Certificate::not_certified(
            theorem,
            d,
            d_prime,
            Reason::Reducible,
            Some(note),
        ));
    }
    let value = pf.f.evaluate(lambda);
    let diff = lambda - lambda2;
    if value.is_zero() || pf.f.evaluate(lambda2).is_zero() {
        return Ok(Certificate::not_certified(
            theorem,
            d,
            d_prime,
            Reason::Degenerate,
            None,
        ));
    }
    if value.abs().is_one() {
        return Ok(Certificate::not_certified(
            theorem,
            d,
            d_prime,
            Reason::UnitValue,
            Some(format!("f(lambda) = {value}")),
        ));
    }
    let fv = factor(&value, budget)?;
    let fd = factor(&diff, budget)?;
    let ps: Vec<&(BigInt, u32)> = fv
        .factors
        .iter()
        .filter(|(p, _)| !(&diff % p).is_zero() && !pf.divides_two_disc(p))
        .collect();
    // The difference clause is reported first when both fail.
    let qs: Vec<&(BigInt, u32)> = fd
        .factors
        .iter()
        .filter(|(q, _)| !(&value % q).is_zero() && !pf.divides_two_disc(q))
        .collect();
    if qs.is_empty() {
        return Ok(Certificate::not_certified(
            theorem,
            d,
            d_prime,
            Reason::NoPrimeForDifference,
            None,
        ));
    }
    if ps.is_empty() {
        return Ok(Certificate::not_certified(
            theorem,
            d,
            d_prime,
            Reason::NoPrimeForFLambda,
            None,
        ));
    }
    let mut best: Option<(u32, &BigInt, &BigInt, u32, u32)> = None;
    for (p, m) in &ps {
        for (q, mq) in &qs {
            let k = two_parameter_level(v2(*m as u64), v2(*mq as u64), d);
            if best.is_none_or(|(bk, bp, bq, _, _)| (k, p, q) < (bk, bp, bq)) {
                best = Some((k, p, q, *m, *mq));
            }
        }
    }
    let (k, p, q, m, mq) = best.expect("both candidate lists are nonempty");
    let (w, wq) = (Witness::new(p, m), Witness::new(q, mq));
    let g = genus_of_degree(d_prime);
    let mut cert = Certificate {
        status: Status::Certified,
        theorem,
        d,
        d_prime,
        genus: g,
        level_exponent: Some(k),
        gamma_level: Some(gamma_level(k)),
        openness: true,
        index_bound: index_bound_for(w.v2m, wq.v2m, g, d_prime).ok().map(|b| b.to_string()),
        witnesses: vec![w, wq],
        conditional_reasons: Vec::new(),
        notes: Vec::new(),
    };
    containment_notes(&mut cert, k, d == 2);
    if cert.index_bound.is_some() {
        cert.notes.push("index bound is for [Gamma(2) : G_2 ∩ Gamma(2)]".into());
    }
    Ok(pf.finish(cert))
}

fn check_distinct(roots: &[BigInt]) -> Result<(), CertifyError> {
    for i in 0..roots.len() {
        if roots[i + 1..].contains(&roots[i]) {
            return Err(CertifyError::InvalidInput(format!("root {} is repeated", roots[i])));
        }
    }
    Ok(())
}

/// Odd primes of `alpha_{d'} - alpha_i` dividing no other root difference,
/// with multiplicities, sorted by `(v2(m), p)`.
fn split_candidates(roots: &[BigInt], i: usize, budget: FactorBudget) -> Result<Vec<(BigInt, u32)>, CertifyError> {
    let last = roots.len() - 1;
    let fac = factor(&(&roots[last] - &roots[i]), budget)?;
    let mut out: Vec<(BigInt, u32)> = fac
        .factors
        .into_iter()
        .filter(|(p, _)| p.is_odd())
        .filter(|(p, _)| {
            (0..roots.len()).all(|j| {
                (j + 1..roots.len()).all(|k| (j == i && k == last) || !((&roots[j] - &roots[k]) % p).is_zero())
            })
        })
        .collect();
    out.sort_by(|(p, m), (q, n)| (v2(*m as u64), p).cmp(&(v2(*n as u64), q)));
    Ok(out)
}

/// First injective assignment in the lexicographic order of the sorted
/// candidate lists.
fn assign(cands: &[Vec<(BigInt, u32)>], used: &mut Vec<BigInt>) -> Option<Vec<(BigInt, u32)>> {
    let Some((first, rest)) = cands.split_first() else {
        return Some(Vec::new());
    };
    for (p, m) in first {
        if used.contains(p) {
            continue;
        }
        used.push(p.clone());
        if let Some(mut tail) = assign(rest, used) {
            tail.insert(0, (p.clone(), *m));
            return Some(tail);
        }
        used.pop();
    }
    None
}

/// Split-roots criterion for `y^2 = prod (x - alpha_i)`.
pub fn certify_split(roots: &[BigInt], budget: FactorBudget) -> Result<Certificate, CertifyError> {
    let d_prime = roots.len();
    if d_prime < 3 {
        return Err(CertifyError::InvalidInput("need at least three roots".into()));
    }
    check_distinct(roots)?;
    let theorem = Criterion::SplitRoots;
    let cands: Vec<Vec<(BigInt, u32)>> = (0..d_prime - 1)
        .map(|i| split_candidates(roots, i, budget))
        .collect::<Result<_, _>>()?;
    // The k rule is monotone in every v2(m_i), so the first assignment in
    // sorted order minimizes it.
    let Some(assignment) = assign(&cands, &mut Vec::new()) else {
        let empty: Vec<String> = (0..d_prime - 1)
            .filter(|&i| cands[i].is_empty())
            .map(|i| format!("no odd prime separates exactly roots {} and {d_prime}", i + 1))
            .collect();
        let note = (!empty.is_empty()).then(|| empty.join("; "));
        return Ok(Certificate::not_certified(
            theorem,
            d_prime - 1,
            d_prime,
            Reason::NoAssignment,
            note,
        ));
    };
    let witnesses: Vec<Witness> = assignment.iter().map(|(p, m)| Witness::new(p, *m)).collect();
    let n = witnesses[..d_prime - 2].iter().map(|w| w.v2m).max().unwrap_or(0);
    let n_prime = witnesses[d_prime - 2].v2m;
    let k = split_level(n, n_prime, d_prime);
    let g = genus_of_degree(d_prime);
    let uniform = witnesses.iter().all(|w| w.v2m == n);
    let mut cert = Certificate {
        status: Status::Certified,
        theorem,
        d: d_prime - 1,
        d_prime,
        genus: g,
        level_exponent: Some(k),
        gamma_level: Some(gamma_level(k)),
        openness: true,
        index_bound: if uniform {
            index_bound(n, g, d_prime).ok().map(|b| b.to_string())
        } else {
            None
        },
        witnesses,
        conditional_reasons: Vec::new(),
        notes: Vec::new(),
    };
    containment_notes(&mut cert, k, d_prime == 4);
    if cert.index_bound.is_some() {
        cert.notes
            .push("index bound is for [Gamma(2) : G_2 ∩ Sp(T_2 J)]".into());
    }
    Ok(cert)
}

/// Recomputes every hypothesis of a certificate from scratch.
pub fn replay(spec: &CurveSpec, cert: &Certificate) -> Result<bool, CertifyError> {
    if !cert.status.is_certified() {
        return Ok(cert.witnesses.is_empty() && cert.level_exponent.is_none() && !cert.openness);
    }
    let is_prime = |w: &Witness| -> Result<bool, CertifyError> { Ok(arith::is_prime(&w.prime())?) };
    let consistent = |w: &Witness| w.m >= 1 && w.v2m == v2(w.m as u64);
    let level_ok = |k: u32| cert.level_exponent == Some(k) && cert.gamma_level.as_deref() == Some(&*gamma_level(k));
    match spec {
        CurveSpec::IrredPlusLambda { f, lambda } => {
            let pf = PreparedPoly::new(f)?;
            let [w] = cert.witnesses.as_slice() else {
                return Ok(false);
            };
            let p = w.prime();
            let value = pf.f.evaluate(lambda);
            Ok(cert.theorem == Criterion::SingleParameter
                && !matches!(pf.irreducibility, IrreducibilityVerdict::Disproven(_))
                && is_prime(w)?
                && consistent(w)
                && !value.is_zero()
                && vp_int(&value, &p) == w.m
                && !pf.divides_two_disc(&p)
                && level_ok(single_level(w.v2m, pf.d)))
        }
        CurveSpec::IrredPlusTwoLambdas { f, lambda, lambda2 } => {
            let pf = PreparedPoly::new(f)?;
            let [w, wq] = cert.witnesses.as_slice() else {
                return Ok(false);
            };
            let (p, q) = (w.prime(), wq.prime());
            let value = pf.f.evaluate(lambda);
            let diff = lambda - lambda2;
            Ok(cert.theorem == Criterion::TwoParameter
                && !matches!(pf.irreducibility, IrreducibilityVerdict::Disproven(_))
                && is_prime(w)?
                && is_prime(wq)?
                && consistent(w)
                && consistent(wq)
                && !value.is_zero()
                && !diff.is_zero()
                && !pf.f.evaluate(lambda2).is_zero()
                && vp_int(&value, &p) == w.m
                && !(&diff % &p).is_zero()
                && !pf.divides_two_disc(&p)
                && vp_int(&diff, &q) == wq.m
                && !(&value % &q).is_zero()
                && !pf.divides_two_disc(&q)
                && level_ok(two_parameter_level(w.v2m, wq.v2m, pf.d)))
        }
        CurveSpec::SplitRoots { roots } => {
            let d_prime = roots.len();
            check_distinct(roots)?;
            if cert.theorem != Criterion::SplitRoots || d_prime < 3 || cert.witnesses.len() != d_prime - 1 {
                return Ok(false);
            }
            let last = d_prime - 1;
            let mut seen: Vec<BigInt> = Vec::new();
            for (i, w) in cert.witnesses.iter().enumerate() {
                let p = w.prime();
                if !is_prime(w)? || !consistent(w) || p.is_even() || seen.contains(&p) {
                    return Ok(false);
                }
                if vp_int(&(&roots[last] - &roots[i]), &p) != w.m {
                    return Ok(false);
                }
                for j in 0..d_prime {
                    for k in j + 1..d_prime {
                        if !(j == i && k == last) && ((&roots[j] - &roots[k]) % &p).is_zero() {
                            return Ok(false);
                        }
                    }
                }
                seen.push(p);
            }
            let n = cert.witnesses[..d_prime - 2].iter().map(|w| w.v2m).max().unwrap_or(0);
            Ok(level_ok(split_level(n, cert.witnesses[d_prime - 2].v2m, d_prime)))
        }
    }
}

/// `f(lambda) ∈ Σ·(Q^×)^s`: every prime not dividing `2 disc(f)` occurs in
/// `f(lambda)` to a multiple of `s`. With `s = 0` the test is membership in
/// `Σ` itself, i.e. no such prime occurs at all.
pub fn sigma_class(f: &IntPoly, lambda: &BigInt, s: u32, budget: FactorBudget) -> Result<bool, CertifyError> {
    sigma_class_prepared(&PreparedPoly::new(f)?, lambda, s, budget)
}

pub fn sigma_class_prepared(
    pf: &PreparedPoly,
    lambda: &BigInt,
    s: u32,
    budget: FactorBudget,
) -> Result<bool, CertifyError> {
    let value = pf.f.evaluate(lambda);
    if value.is_zero() {
        return Err(CertifyError::InvalidInput("f(lambda) = 0".into()));
    }
    let fac = factor(&value, budget)?;
    Ok(fac
        .factors
        .iter()
        .filter(|(p, _)| !pf.divides_two_disc(p))
        .all(|(_, m)| if s == 0 { false } else { m % s == 0 }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScanOutcome {
    Certified { k: u32, conditional: bool },
    SigmaObstructed,
    UnitValue,
    Degenerate,
    Abstained { cofactor: BigInt },
}

impl ScanOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            ScanOutcome::Certified { conditional: false, .. } => "Certified",
            ScanOutcome::Certified { conditional: true, .. } => "CertifiedConditional",
            ScanOutcome::SigmaObstructed => "SigmaObstructed",
            ScanOutcome::UnitValue => "UnitValue",
            ScanOutcome::Degenerate => "Degenerate",
            ScanOutcome::Abstained { .. } => "Abstained",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanEntry {
    pub lambda: String,
    pub outcome: &'static str,
    pub level_exponent: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cofactor: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ScanCounts {
    pub total: usize,
    pub certified: usize,
    pub certified_conditional: usize,
    pub sigma_obstructed: usize,
    pub unit_value: usize,
    pub degenerate: usize,
    pub abstained: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub f: String,
    pub from: String,
    pub to: String,
    pub counts: ScanCounts,
    pub non_certified: Vec<String>,
    pub entries: Vec<ScanEntry>,
    #[serde(skip)]
    pub outcomes: Vec<(BigInt, ScanOutcome)>,
}

/// Applies the single-parameter criterion to every integer in `[lo, hi]`.
pub fn scan(f: &IntPoly, lo: &BigInt, hi: &BigInt, budget: FactorBudget) -> Result<ScanReport, CertifyError> {
    let pf = PreparedPoly::new(f)?;
    if let IrreducibilityVerdict::Disproven(g) = &pf.irreducibility {
        return Err(CertifyError::InvalidInput(format!(
            "f is reducible: it has the factor {g}"
        )));
    }
    let len = if hi < lo { BigInt::zero() } else { hi - lo + 1 };
    if len > BigInt::from(MAX_SCAN_LENGTH) {
        return Err(CertifyError::InvalidInput(format!(
            "scan range exceeds {MAX_SCAN_LENGTH} values"
        )));
    }
    let lambdas: Vec<BigInt> = num_iter_range(lo, &len);
    let outcomes: Vec<(BigInt, ScanOutcome)> = lambdas
        .into_par_iter()
        .map(|l| {
            let o = match certify_single_prepared(&pf, &l, budget) {
                Ok(c) => match c.status {
                    Status::NotCertified(Reason::Degenerate) => ScanOutcome::Degenerate,
                    Status::NotCertified(Reason::UnitValue) => ScanOutcome::UnitValue,
                    Status::NotCertified(_) => ScanOutcome::SigmaObstructed,
                    s => ScanOutcome::Certified {
                        k: c.level_exponent.expect("certified results carry a level"),
                        conditional: matches!(s, Status::CertifiedConditional(_)),
                    },
                },
                Err(CertifyError::Abstained { cofactor }) => ScanOutcome::Abstained { cofactor },
                Err(e) => unreachable!("inputs were validated: {e}"),
            };
            (l, o)
        })
        .collect();

    let mut counts = ScanCounts {
        total: outcomes.len(),
        ..Default::default()
    };
    for (_, o) in &outcomes {
        match o {
            ScanOutcome::Certified { conditional: false, .. } => counts.certified += 1,
            ScanOutcome::Certified { conditional: true, .. } => counts.certified_conditional += 1,
            ScanOutcome::SigmaObstructed => counts.sigma_obstructed += 1,
            ScanOutcome::UnitValue => counts.unit_value += 1,
            ScanOutcome::Degenerate => counts.degenerate += 1,
            ScanOutcome::Abstained { .. } => counts.abstained += 1,
        }
    }
    let entries = outcomes
        .iter()
        .map(|(l, o)| ScanEntry {
            lambda: l.to_string(),
            outcome: o.label(),
            level_exponent: match o {
                ScanOutcome::Certified { k, .. } => Some(*k),
                _ => None,
            },
            cofactor: match o {
                ScanOutcome::Abstained { cofactor } => Some(cofactor.to_string()),
                _ => None,
            },
        })
        .collect();
    Ok(ScanReport {
        f: f.to_string(),
        from: lo.to_string(),
        to: hi.to_string(),
        counts,
        non_certified: outcomes
            .iter()
            .filter(|(_, o)| !matches!(o, ScanOutcome::Certified { .. }))
            .map(|(l, _)| l.to_string())
            .collect(),
        entries,
        outcomes,
    })
}

fn num_iter_range(lo: &BigInt, len: &BigInt) -> Vec<BigInt> {
    let n: u64 = len.try_into().expect("range length was bounded");
    let mut out = Vec::with_capacity(n as usize);
    let mut x = lo.clone();
    for _ in 0..n {
        out.push(x.clone());
        x += 1;
    }
    out
}
