//! The rank-2 Frobenius algebra R[X]/(X² − hX − t) driving the TQFT.
//!
//! Basis {1, X}. The comultiplication is fixed by duality against the counit
//! ε(1)=0, ε(X)=1: writing Δ(a) = Σ c_{bc} b⊗c with ε(Δ(a)·(1⊗d)) matching
//! m, the 4-entry pairing inverts to
//!   Δ(1) = 1⊗X + X⊗1 − h·1⊗1,   Δ(X) = X⊗X + t·1⊗1,
//! which at (h,t)=(0,0) is the classic square-zero case and at (0,1) the
//! Lee deformation.

use crate::ring::Coeff;

/// Basis label of a circle: 1 or X.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    One,
    X,
}

impl Label {
    /// Internal quantum degree: deg(1) = +1, deg(X) = −1.
    pub fn degree(&self) -> i32 {
        match self {
            Label::One => 1,
            Label::X => -1,
        }
    }
}

/// Deformation parameters of the Frobenius algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusSpec<R: Coeff> {
    pub h: R,
    pub t: R,
}

impl<R: Coeff> FrobeniusSpec<R> {
    /// (h,t) = (0,0): ordinary Khovanov homology.
    pub fn khovanov() -> Self {
        FrobeniusSpec {
            h: R::zero(),
            t: R::zero(),
        }
    }

    /// (h,t) = (0,1): the Lee deformation.
    pub fn lee() -> Self {
        FrobeniusSpec {
            h: R::zero(),
            t: R::one(),
        }
    }

    pub fn is_graded(&self) -> bool {
        self.h.is_zero() && self.t.is_zero()
    }

    /// m(a⊗b) as a sum of labeled terms.
    pub fn multiply(&self, a: Label, b: Label) -> Vec<(Label, R)> {
        let mut out = match (a, b) {
            (Label::One, x) | (x, Label::One) => vec![(x, R::one())],
            (Label::X, Label::X) => vec![(Label::X, self.h.clone()), (Label::One, self.t.clone())],
        };
        out.retain(|(_, c)| !c.is_zero());
        out
    }

    /// Δ(a) as a sum of labeled pairs.
    pub fn comultiply(&self, a: Label) -> Vec<(Label, Label, R)> {
        let mut out = match a {
            Label::One => vec![
                (Label::One, Label::X, R::one()),
                (Label::X, Label::One, R::one()),
                (Label::One, Label::One, self.h.neg()),
            ],
            Label::X => vec![
                (Label::X, Label::X, R::one()),
                (Label::One, Label::One, self.t.clone()),
            ],
        };
        out.retain(|(_, _, c)| !c.is_zero());
        out
    }

    /// Counit: ε(1)=0, ε(X)=1.
    pub fn counit(&self, a: Label) -> R {
        match a {
            Label::One => R::zero(),
            Label::X => R::one(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn spec(h: i64, t: i64) -> FrobeniusSpec<BigInt> {
        FrobeniusSpec {
            h: BigInt::from(h),
            t: BigInt::from(t),
        }
    }

    #[test]
    fn classic_multiplication() {
        let s = spec(0, 0);
        assert_eq!(s.multiply(Label::X, Label::X), vec![]);
        assert_eq!(s.multiply(Label::One, Label::X), vec![(Label::X, 1.into())]);
        assert_eq!(
            s.multiply(Label::One, Label::One),
            vec![(Label::One, 1.into())]
        );
    }

    #[test]
    fn lee_square() {
        let s = spec(0, 1);
        assert_eq!(s.multiply(Label::X, Label::X), vec![(Label::One, 1.into())]);
        assert_eq!(
            s.comultiply(Label::X),
            vec![
                (Label::X, Label::X, 1.into()),
                (Label::One, Label::One, 1.into())
            ]
        );
    }

    #[test]
    fn frobenius_compatibility() {
        // (m ⊗ id) ∘ (id ⊗ Δ) = Δ ∘ m on all basis pairs, for several (h,t).
        for (h, t) in [(0, 0), (0, 1), (1, 0), (2, 3), (-1, 5)] {
            let s = spec(h, t);
            for a in [Label::One, Label::X] {
                for b in [Label::One, Label::X] {
                    // Δ(m(a⊗b)) collected as coefficient map on pairs.
                    let mut lhs: std::collections::HashMap<(Label, Label), BigInt> =
                        Default::default();
                    for (m, c) in s.multiply(a, b) {
                        for (x, y, d) in s.comultiply(m) {
                            *lhs.entry((x, y)).or_default() += c.clone() * d;
                        }
                    }
                    // (m⊗id)(a ⊗ Δ(b)).
                    let mut rhs: std::collections::HashMap<(Label, Label), BigInt> =
                        Default::default();
                    for (x, y, d) in s.comultiply(b) {
                        for (m, c) in s.multiply(a, x) {
                            *rhs.entry((m, y)).or_default() += c * d.clone();
                        }
                    }
                    lhs.retain(|_, v| *v != BigInt::from(0));
                    rhs.retain(|_, v| *v != BigInt::from(0));
                    assert_eq!(lhs, rhs, "failed at h={h}, t={t}, {a:?}·{b:?}");
                }
            }
        }
    }
}
