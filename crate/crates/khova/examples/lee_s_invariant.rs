//! Lee homology, its spectral sequence from Khovanov homology, and the
//! Rasmussen s-invariant with its slice-genus bound.

use khova::diagram::parse_braid;
use khova::lee::{genus_bounds, lee_homology, s_invariant};

fn main() {
    let trefoil = parse_braid("aaa", 2).unwrap();
    let lee = lee_homology(&trefoil).unwrap();
    println!("lee dimension: {}", lee.dimension);
    println!("survivors (i, filtration): {:?}", lee.e_infinity);
    for page in &lee.ss.pages {
        let total: usize = page.dims.values().sum();
        println!("page jump={} total dim={}", page.jump, total);
    }

    let s = s_invariant(&trefoil).unwrap();
    println!("s(trefoil) = {s}, slice genus >= {}", genus_bounds(s));
    let s_m = s_invariant(&trefoil.mirror()).unwrap();
    println!("s(mirror trefoil) = {s_m}");
    assert_eq!(s_m, -s);

    // A Hopf link has a 4-dimensional Lee homology (2^components) but no s.
    let hopf = parse_braid("aa", 2).unwrap();
    println!("lee dim of hopf link: {}", lee_homology(&hopf).unwrap().dimension);
    assert!(s_invariant(&hopf).is_err());
}
