//! Scanning construction: build the Khovanov complex one crossing at a
//! time with delooping and Gaussian elimination, and compare against the
//! full cube of resolutions.

use std::time::Instant;

use khova::cube::build_complex;
use khova::diagram::parse_braid;
use khova::frobenius::FrobeniusSpec;
use khova::homalg::homology_z;
use khova::scan::scan_complex;
use num_bigint::BigInt;

fn main() {
    let d = parse_braid(&"ab".repeat(5), 3).unwrap(); // T(3,5), 10 crossings
    let spec = FrobeniusSpec::<BigInt>::khovanov();

    let t0 = Instant::now();
    let (scanned, stats) = scan_complex(&d, &spec);
    let scan_time = t0.elapsed();
    println!("{stats}");
    println!(
        "scanned complex: {} generators in {:.1?}",
        scanned.total_generators(),
        scan_time
    );

    let t1 = Instant::now();
    let cube = build_complex(&d, &spec, false).unwrap();
    let cube_time = t1.elapsed();
    println!(
        "full cube: {} generators in {:.1?}",
        cube.total_generators(),
        cube_time
    );

    let a = homology_z(&scanned);
    let b = homology_z(&cube);
    assert_eq!(a.entries, b.entries);
    println!("homology agrees:\n{}", a.to_tsv());
}
