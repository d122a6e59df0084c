//! The curve y^2 = x(x - 1)(x - 6): roots 0 and 1 are separated from 6 by
//! the primes 3 and 5, so the image contains Gamma(4).

use galois2::arith::FactorBudget;
use galois2::certifier::{certify, replay, CurveSpec};
use num_bigint::BigInt;

fn main() {
    let spec = CurveSpec::SplitRoots {
        roots: [0, 1, 6].map(BigInt::from).to_vec(),
    };
    let cert = certify(&spec, FactorBudget::default()).expect("small roots always factor");
    print!("{}", cert.to_human());
    println!("replay: {}", replay(&spec, &cert).unwrap());
    // $ cargo run --example legendre_curve
    // status: Certified
    // ...
    // G_2 ∩ Sp(T_2 J) ⊋ Gamma(4) = Gamma(2^2); open: true
}
