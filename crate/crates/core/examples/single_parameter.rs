//! y^2 = f(x)(x - lambda) for a few values of lambda.

use galois2::arith::FactorBudget;
use galois2::certifier::certify_single;
use galois2::poly::IntPoly;
use num_bigint::BigInt;

fn main() {
    let budget = FactorBudget::default();
    for (f, lambda) in [
        ("x^3-2", 3),
        ("x^4+x+1", 2),
        ("x^3-2", 1),
        ("x^3-2", -172),
        ("x^2-1", 5),
    ] {
        let f: IntPoly = f.parse().unwrap();
        let cert = certify_single(&f, &BigInt::from(lambda), budget).unwrap();
        let level = cert.gamma_level.map(|n| format!("Gamma({n})")).unwrap_or_default();
        let witnesses: Vec<String> = cert.witnesses.iter().map(|w| format!("{}^{}", w.p, w.m)).collect();
        println!(
            "f = {:<12} lambda = {lambda:>5}  {:<26} {level:<10} {}",
            f.to_string(),
            cert.status.to_string(),
            witnesses.join(" ")
        );
    }
}
