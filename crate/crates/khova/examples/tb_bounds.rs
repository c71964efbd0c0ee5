//! Thurston–Bennequin bounds from the Khovanov homology support, compared
//! with the sharper s-invariant bound tb ≤ s − 1.

use khova::cube::build_complex;
use khova::diagram::parse_braid;
use khova::frobenius::FrobeniusSpec;
use khova::homalg::{homology_z, TbConvention};
use khova::lee::s_invariant;
use num_bigint::BigInt;

fn main() {
    let spec = FrobeniusSpec::<BigInt>::khovanov();
    for (name, word, strands) in [
        ("right trefoil", "aaa", 2),
        ("left trefoil", "AAA", 2),
        ("T(2,5)", "aaaaa", 2),
        ("figure-eight", "aBaB", 3),
    ] {
        let d = parse_braid(word, strands).unwrap();
        let table = homology_z(&build_complex(&d, &spec, false).unwrap());
        let tb = table.tb_bound(TbConvention::JMinusI).unwrap();
        let s = s_invariant(&d).unwrap();
        println!("{name}: tb <= {tb}, s - 1 = {}", s - 1);
        assert!(tb <= s - 1);
    }
}
