//! Kauffman bracket and Jones polynomial of some small knots.

use khova::bracket::{jones, jones_reduced, kauffman_bracket};
use khova::diagram::{parse_braid, parse_pd};

fn main() {
    let trefoil = parse_braid("aaa", 2).unwrap();
    println!("trefoil bracket:       {}", kauffman_bracket(&trefoil));
    println!("trefoil jones:         {}", jones(&trefoil));
    println!("trefoil jones reduced: {}", jones_reduced(&trefoil));

    let mirror = trefoil.mirror();
    println!("mirror jones:          {}", jones(&mirror));

    let fig8 = parse_braid("aBaB", 3).unwrap();
    println!("figure-eight jones:    {}", jones(&fig8));

    // The same knot from its PD code.
    let tre_pd = parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]").unwrap();
    assert_eq!(jones(&tre_pd), jones(&trefoil));
    println!("PD code agrees with the braid closure");
}
