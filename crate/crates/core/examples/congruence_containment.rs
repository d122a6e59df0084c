//! Subgroups generated by transvection powers, enumerated modulo 2^e.

use galois2::symplectic::verify::{containment_certify, degree_four_certify, generated_index};
use galois2::symplectic::{Level, DEFAULT_CAP};

fn main() {
    for (g, n, np) in [(1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1)] {
        let r = containment_certify(g, n, np, 1, DEFAULT_CAP).unwrap();
        println!(
            "g={g} n={n} n'={np}: |G mod 2^{}| = {}, contains Gamma(2^{}) ({} elements): {}, strict: {}",
            r.level, r.generated_order, r.big_n, r.target_order, r.contained, r.strict
        );
    }
    for (n, layers) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let r = degree_four_certify(n, layers, DEFAULT_CAP).unwrap();
        println!(
            "genus one, n={n}, {layers} layer(s): generated {} = |Gamma(2^{n}) mod 2^{}| {}",
            r.generated_order, r.level, r.full_order
        );
    }
    let r = generated_index(1, 0, Level::new(3).unwrap(), DEFAULT_CAP).unwrap();
    println!("index of <T_c^2> in Gamma(2) mod 8: {}", r.index);
}
