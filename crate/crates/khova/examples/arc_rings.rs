//! Crossingless matchings, arc-ring elements, and elementary tangle
//! complexes.

use khova::arcs::{enumerate_matchings, tangle_complex, ArcRingElement, TangleSlice};
use khova::frobenius::FrobeniusSpec;
use num_bigint::BigInt;

fn main() {
    // Catalan counts: 1, 2, 5, 14, ... noncrossing matchings on 2n points.
    for n in 1..=5 {
        println!("matchings on {} points: {}", 2 * n, enumerate_matchings(n).len());
    }

    let spec = FrobeniusSpec::<BigInt>::khovanov();
    let ms = enumerate_matchings(2);
    let (a, b) = (&ms[0], &ms[1]);

    // Idempotents compose to themselves; mismatched boundaries are errors.
    let ea = ArcRingElement::idempotent(a);
    assert_eq!(ea.then(&ea, &spec).unwrap().terms, ea.terms);

    // Hom(P_a, P_b) is a tensor power of the Frobenius algebra over the
    // glue cycles of b̄a; the saddle cobordism is its all-ones element.
    let f = ArcRingElement::cobordism(&spec, a, b);
    let g = ArcRingElement::cobordism(&spec, b, a);
    let back = f.then(&g, &spec).unwrap();
    println!("saddle there-and-back degree: {:?}", back.degree());
    println!("terms: {:?}", back.terms);

    // A single crossing resolves into a two-object complex over the arc ring.
    let c = tangle_complex(&TangleSlice::Crossing { positive: true }, &spec);
    println!("crossing complex objects: {}", c.object_count());
    for (k, level) in c.levels.iter().enumerate() {
        for (m, shift) in level {
            println!("  level {k}: matching {:?} shift {shift}", m);
        }
    }
}
