//! Gamma(2^k)/Gamma(2^{k+1}) and the squaring map into the next layer.
//! Squaring is bijective for k >= 2 but not for k = 1, where -1 squares to 1.

use galois2::symplectic::verify::{layer_structure, squaring_map};

fn main() {
    for g in 1..=2 {
        for k in 1..=3 {
            let l = layer_structure(g, k).unwrap();
            let s = squaring_map(g, k).unwrap();
            println!(
                "g={g} k={k}: layer order {} (brute force {}), abelian {}, exponent two {}; squaring image {}/{}",
                l.order, l.bruteforce_order, l.abelian, l.exponent_two, s.image_order, s.codomain_order
            );
        }
    }
}
