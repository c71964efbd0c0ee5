//! Odd Khovanov homology, unreduced and reduced, and its mod-2 collapse
//! onto the even theory.

use khova::cube::build_complex;
use khova::diagram::parse_braid;
use khova::frobenius::FrobeniusSpec;
use khova::homalg::homology_field;
use khova::odd::{build_odd_cube, odd_homology};
use num_bigint::BigInt;

fn main() {
    let trefoil = parse_braid("aaa", 2).unwrap();

    println!("odd trefoil:\n{}", odd_homology(&trefoil, false).unwrap().to_tsv());
    // Reduction happens at a marked edge.
    let marked = trefoil.with_marked_edge(trefoil.edges().first().copied());
    println!("reduced odd trefoil:\n{}", odd_homology(&marked, true).unwrap().to_tsv());

    // Over F2 the even and odd differentials agree entry by entry.
    let cube = build_odd_cube(&trefoil).unwrap();
    let signs = cube.solve_signs().unwrap();
    let odd_c = cube.complex(&trefoil, &signs, false).unwrap();
    let even_c = build_complex(&trefoil, &FrobeniusSpec::<BigInt>::khovanov(), false).unwrap();
    let odd2 = homology_field(&odd_c.mod_p(2), "F2");
    let even2 = homology_field(&even_c.mod_p(2), "F2");
    assert_eq!(odd2.entries, even2.entries);
    println!("odd == even over F2 on the trefoil");
}
