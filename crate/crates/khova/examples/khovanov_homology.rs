//! Khovanov homology over ℤ, 𝔽₂, and ℚ, plus the reduced flavor.

use khova::cube::build_complex;
use khova::diagram::parse_braid;
use khova::frobenius::FrobeniusSpec;
use khova::homalg::{homology_field, homology_z};
use num_bigint::BigInt;

fn main() {
    let trefoil = parse_braid("aaa", 2).unwrap();
    let spec = FrobeniusSpec::<BigInt>::khovanov();
    let c = build_complex(&trefoil, &spec, false).unwrap();
    assert!(c.verify_d_squared());

    println!("trefoil over Z:\n{}", homology_z(&c).to_tsv());
    println!("trefoil over F2:\n{}", homology_field(&c.mod_p(2), "F2").to_tsv());
    println!("trefoil over Q:\n{}", homology_field(&c.to_rational(), "Q").to_tsv());

    // Reduced homology needs a marked edge; it halves the unreduced rank.
    let marked = trefoil.with_marked_edge(trefoil.edges().first().copied());
    let r = build_complex(&marked, &spec, true).unwrap();
    println!("reduced trefoil over Z:\n{}", homology_z(&r).to_tsv());

    // Graded Euler characteristic recovers the Jones polynomial.
    let table = homology_z(&c);
    println!("euler characteristic: {}", table.euler_characteristic());
}
