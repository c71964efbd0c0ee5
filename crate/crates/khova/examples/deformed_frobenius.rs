//! Deformations of the Frobenius algebra R[X]/(X² − hX − t): the Lee
//! complex (t = 1) and the Bar-Natan complex (h = 1) both collapse a
//! knot's homology to two generators over ℚ.

use khova::cube::build_complex;
use khova::diagram::parse_braid;
use khova::frobenius::FrobeniusSpec;
use khova::snf::rank_over_field;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn total_dim(d: &khova::diagram::PlanarDiagram, spec: &FrobeniusSpec<BigRational>) -> usize {
    let c = build_complex(d, spec, false).unwrap();
    assert!(c.verify_d_squared());
    let mut dim = 0usize;
    let mut prev_rank = 0usize;
    for k in 0..c.degree_count() {
        let gens = c.gens[k].len();
        let rank = if k + 1 < c.degree_count() {
            rank_over_field(&c.diff[k])
        } else {
            0
        };
        dim += gens - rank - prev_rank;
        prev_rank = rank;
    }
    dim
}

fn main() {
    let trefoil = parse_braid("aaa", 2).unwrap();

    let lee = FrobeniusSpec::<BigRational>::lee();
    let bar_natan = FrobeniusSpec {
        h: BigRational::one(),
        t: BigRational::zero(),
    };
    println!("lee dimension:       {}", total_dim(&trefoil, &lee));
    println!("bar-natan dimension: {}", total_dim(&trefoil, &bar_natan));

    // The undeformed complex keeps its quantum grading.
    let kh = FrobeniusSpec::<BigInt>::khovanov();
    assert!(kh.is_graded() && !FrobeniusSpec::<BigInt>::lee().is_graded());
    let c = build_complex(&trefoil, &kh, false).unwrap();
    println!("graded generators:   {}", c.total_generators());
}
