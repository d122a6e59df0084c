//! Which lambda in a range give a certificate for y^2 = (x^3 - 2)(x - lambda)?

use galois2::arith::FactorBudget;
use galois2::certifier::scan;
use num_bigint::BigInt;

fn main() {
    let f = "x^3-2".parse().unwrap();
    let r = scan(&f, &BigInt::from(-50), &BigInt::from(50), FactorBudget::default()).unwrap();
    println!("{:#?}", r.counts);
    println!("not certified: {}", r.non_certified.join(", "));
    let mut by_level = std::collections::BTreeMap::new();
    for e in &r.entries {
        if let Some(k) = e.level_exponent {
            *by_level.entry(k).or_insert(0) += 1;
        }
    }
    println!("certified by level exponent: {by_level:?}");
}
