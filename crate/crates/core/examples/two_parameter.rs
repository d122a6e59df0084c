//! y^2 = f(x)(x - lambda)(x - lambda'), emitted as JSON.

use galois2::arith::FactorBudget;
use galois2::certifier::certify_two;
use num_bigint::BigInt;

fn main() {
    let budget = FactorBudget::default();
    for (f, l1, l2) in [("x^3-2", 3, 10), ("x^2+1", 2, -1), ("x^3-2", 3, 8)] {
        let cert = certify_two(&f.parse().unwrap(), &BigInt::from(l1), &BigInt::from(l2), budget).unwrap();
        println!("# f = {f}, lambda = {l1}, lambda' = {l2}");
        println!("{}", cert.to_json());
    }
}
