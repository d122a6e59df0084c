//! Mod-2 transvections along the c-classes and their commutators span
//! sp_2g(F2), which has dimension 2g^2 + g.

use galois2::homology::c_classes;
use galois2::symplectic::verify::sp_basis_certify;

fn main() {
    for g in 1..=5 {
        let r = sp_basis_certify(g, &c_classes(g).unwrap()).unwrap();
        println!(
            "g = {g}: rank {}/{} from {} elements, commutator formula {}",
            r.rank, r.dimension, r.elements, r.commutator_formula
        );
    }
    let r = sp_basis_certify(1, &c_classes(1).unwrap()).unwrap();
    println!("genus one blocks of t1, t2, [t1, t2]: {:?}", r.base_case);
}
