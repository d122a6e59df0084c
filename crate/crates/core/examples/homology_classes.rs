//! c-classes from even partitions of the branch points.

use galois2::homology::{basis_partition, cclass_report, BasisKind};

fn main() {
    let g = 3;
    for i in 1..=g {
        println!(
            "a{i} <- {}   b{i} <- {}",
            basis_partition(BasisKind::A, i, g).unwrap(),
            basis_partition(BasisKind::B, i, g).unwrap()
        );
    }
    let r = cclass_report(g).unwrap();
    for row in &r.rows {
        let printed = row.printed.as_deref().unwrap_or("(none)");
        println!(
            "c{} <- {}  =  {:<20} closed form: {printed}",
            row.index, row.partition, row.class
        );
    }
    println!(
        "pairwise pairings all 1: {}, basis: {}, even-index discrepancies: {:?}",
        r.all_pairings_one, r.is_basis, r.even_discrepancies
    );
}
