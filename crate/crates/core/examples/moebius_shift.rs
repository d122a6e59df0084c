//! Moving the roots away from infinity at p without changing any p-adic
//! distance between them.

use galois2::homology::{moebius_shift, moebius_shift_with};
use num_bigint::BigInt;

fn main() {
    let roots = [0, 1, 6].map(BigInt::from);
    let p = BigInt::from(5);
    for r in [
        moebius_shift(&roots, &p).unwrap(),
        moebius_shift_with(&roots, &p, &BigInt::from(3)).unwrap(),
    ] {
        println!("beta = {}: {:?}, infinity -> {}", r.beta, r.shifted, r.infinity_image);
        for pair in &r.pairs {
            println!(
                "  v_5(root{} - root{}): {} -> {}",
                pair.i, pair.j, pair.before, pair.after
            );
        }
        println!("  v_5(beta - root): {:?}, preserved: {}", r.beta_gaps, r.preserved);
    }
}
