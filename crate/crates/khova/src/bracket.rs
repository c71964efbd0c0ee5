//! Kauffman bracket state sum and the Jones polynomial.
//!
//! ⟨D⟩ = Σ_s (q^{-1/2})^{#0(s)} (−q^{1/2})^{#1(s)} (q+q^{-1})^{circles(s)},
//! normalized by K(D) = (−1)^{n₋} q^{3(n₊−n₋)/2} ⟨D⟩ so the unknot gives
//! q + q^{-1}.

use num_bigint::BigInt;

use crate::diagram::{PlanarDiagram, ResolutionState};
use crate::poly::LaurentPoly;

/// The bracket state sum; exponents may be half-integral.
pub fn kauffman_bracket(d: &PlanarDiagram) -> LaurentPoly {
    let n = d.crossing_count();
    let circle = LaurentPoly::circle();
    // Powers of (q + q^{-1}) come up repeatedly; precompute.
    let max_circles = n + 2 + d.free_loops() as usize;
    let mut circle_pow = vec![LaurentPoly::one()];
    for k in 1..=max_circles {
        circle_pow.push(&circle_pow[k - 1] * &circle);
    }
    let mut total = LaurentPoly::zero();
    for bits in 0..(1u64 << n) {
        let s = ResolutionState::new(bits, n);
        let ones = s.weight() as i32;
        let zeros = n as i32 - ones;
        let circles = d.resolve(&s).unwrap().count();
        let sign = if ones % 2 == 0 { 1 } else { -1 };
        let mono = LaurentPoly::monomial_half(ones - zeros, BigInt::from(sign));
        total += &mono * &circle_pow[circles];
    }
    total
}

/// The Jones polynomial with J(unknot) = q + q^{-1}.
pub fn jones(d: &PlanarDiagram) -> LaurentPoly {
    let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
    let sign = if nm % 2 == 0 { 1 } else { -1 };
    let norm = LaurentPoly::monomial_half(3 * (np - nm), BigInt::from(sign));
    let k = &norm * &kauffman_bracket(d);
    assert!(
        k.has_integer_exponents(),
        "half-integral exponents survived normalization: convention bug"
    );
    k
}

/// The reduced normalization J(unknot) = 1.
pub fn jones_reduced(d: &PlanarDiagram) -> LaurentPoly {
    jones(d)
        .div_circle()
        .expect("Jones polynomial is divisible by q + q^{-1}")
}

/// Does the skein relation q^{-2}J(d₊) − q²J(d₋) = (q^{-1}−q)J(d₀) hold?
pub fn check_skein(
    d_plus: &PlanarDiagram,
    d_minus: &PlanarDiagram,
    d_zero: &PlanarDiagram,
) -> bool {
    let one = BigInt::from(1);
    let lhs = jones(d_plus).mul_monomial_half(-4, &one)
        - jones(d_minus).mul_monomial_half(4, &one);
    let bracket = LaurentPoly::monomial(-1, 1) - LaurentPoly::monomial(1, 1);
    lhs == &bracket * &jones(d_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{legal_moves, parse_braid, parse_pd, RMove};

    #[test]
    fn unknot_normalizations() {
        assert_eq!(jones(&PlanarDiagram::unknot()), LaurentPoly::circle());
        assert_eq!(jones(&PlanarDiagram::empty()), LaurentPoly::one());
        assert_eq!(jones_reduced(&PlanarDiagram::unknot()), LaurentPoly::one());
        // One-crossing unknots, both kinks.
        for positive in [true, false] {
            let k = PlanarDiagram::unknot()
                .apply_reidemeister(&RMove::R1Add {
                    edge: None,
                    positive,
                })
                .unwrap();
            assert_eq!(jones(&k), LaurentPoly::circle());
        }
    }

    #[test]
    fn unlink_multiplicativity() {
        let t = parse_braid("aaa", 2).unwrap();
        let with_loop = t.with_free_loops(1);
        assert_eq!(jones(&with_loop), &jones(&t) * &LaurentPoly::circle());
        let unlink3 = PlanarDiagram::empty().with_free_loops(3);
        assert_eq!(
            jones_reduced(&unlink3).to_string(),
            (&LaurentPoly::circle() * &LaurentPoly::circle()).to_string()
        );
    }

    #[test]
    fn trefoil_regression_values() {
        // Frozen from the 8-state sum; the right-handed trefoil.
        let t = parse_braid("aaa", 2).unwrap();
        assert_eq!(jones(&t).to_string(), "q + q^3 + q^5 - q^9");
        assert_eq!(jones_reduced(&t).to_string(), "q^2 + q^6 - q^8");
        let pd = parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3]").unwrap();
        assert_eq!(jones(&pd), jones(&t));
    }

    #[test]
    fn mirror_inverts_variable() {
        for (word, strands) in [("aaa", 2), ("aBaB", 3), ("aabab", 3), ("aaaaa", 2)] {
            let d = parse_braid(word, strands).unwrap();
            assert_eq!(jones(&d.mirror()), jones(&d).invert_variable());
        }
    }

    #[test]
    fn skein_triples() {
        // Switching one Hopf crossing gives the unlink; the oriented
        // resolution of that site is a one-circle closure.
        let hopf_plus = parse_braid("aa", 2).unwrap();
        let unlink2 = parse_braid("aA", 2).unwrap();
        let unknot = parse_braid("a", 2).unwrap();
        assert!(check_skein(&hopf_plus, &unlink2, &unknot));
        // Crossing change at one trefoil site.
        let trefoil = parse_braid("aaa", 2).unwrap();
        let switched = parse_braid("aaA", 2).unwrap();
        assert!(check_skein(&trefoil, &switched, &hopf_plus));
        // Unknot triple via opposite kinks.
        let u_plus = parse_braid("a", 2).unwrap();
        let u_minus = parse_braid("A", 2).unwrap();
        let u_zero = parse_braid("", 2).unwrap();
        assert!(check_skein(&u_plus, &u_minus, &u_zero));
        // A mismatched triple fails.
        let hopf_minus = parse_braid("AA", 2).unwrap();
        assert!(!check_skein(&trefoil, &hopf_minus, &unlink2));
    }

    #[test]
    fn markov_stabilization_fixes_jones() {
        for (w, n) in [("ab", 3), ("aB", 3), ("abab", 3)] {
            let left = parse_braid(&format!("a{w}"), n).unwrap();
            let right = parse_braid(&format!("{w}a"), n).unwrap();
            assert_eq!(jones(&left), jones(&right));
        }
    }

    #[test]
    fn reidemeister_invariance_sampler() {
        // Every legal move on a couple of small diagrams preserves Jones.
        for (word, strands) in [("aaa", 2), ("aba", 3), ("aBa", 3)] {
            let d = parse_braid(word, strands).unwrap();
            let j = jones(&d);
            for mv in legal_moves(&d) {
                let e = d.apply_reidemeister(&mv).unwrap();
                assert_eq!(jones(&e), j, "move {mv:?} on {word} broke Jones");
            }
        }
    }
}
