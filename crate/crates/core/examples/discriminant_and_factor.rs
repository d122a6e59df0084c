use galois2::arith::{factor, FactorBudget};
use galois2::poly::{discriminant, irreducibility_witness, IntPoly, IrreducibilityVerdict};
use num_bigint::BigInt;

fn main() {
    for s in ["x^3-2", "x^4+x+1", "[1,0,0,0,1]", "x^2-1"] {
        let f: IntPoly = s.parse().unwrap();
        let d = discriminant(&f).unwrap();
        let fac = factor(&d, FactorBudget::default()).unwrap();
        let verdict = match irreducibility_witness(&f) {
            IrreducibilityVerdict::Proven(w) => format!("irreducible ({w})"),
            IrreducibilityVerdict::Disproven(g) => format!("reducible, factor {g}"),
            IrreducibilityVerdict::Unknown => "undecided".to_string(),
        };
        println!("disc({f}) = {d} = {:?}; {verdict}", fac.factors);
    }
    let n: BigInt = "1000000000039000000000319".parse().unwrap();
    println!("{n} = {:?}", factor(&n, FactorBudget::default()).unwrap().factors);
}
