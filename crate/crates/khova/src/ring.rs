//! Coefficient rings for chain complexes: exact integers, exact rationals,
//! and prime fields with a runtime modulus.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The operations homology computation needs from a coefficient ring.
///
/// `Fp` carries its modulus in each element, so constructors like `zero`
/// produce modulus-agnostic values that adopt a modulus on first contact.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse; `None` when not a unit.
    fn inv(&self) -> Option<Self>;
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    /// True for coefficient rings that are fields.
    fn is_field() -> bool;
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv(&self) -> Option<Self> {
        if self.is_unit() {
            Some(self.clone())
        } else {
            None
        }
    }
    fn is_field() -> bool {
        false
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        !Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_field() -> bool {
        true
    }
}

/// Element of a prime field `F_p` with the modulus carried alongside the
/// value. `modulus == 0` marks a context-free constant (0, 1, -1, ...) that
/// takes on the modulus of the first concrete operand it meets.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    value: i64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus >= 2, "modulus must be at least 2");
        Fp { value: value.rem_euclid(modulus as i64), modulus }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    fn joined_modulus(&self, rhs: &Fp) -> u64 {
        match (self.modulus, rhs.modulus) {
            (0, m) | (m, 0) => m,
            (a, b) => {
                assert_eq!(a, b, "mixed moduli {a} and {b}");
                a
            }
        }
    }

    fn reduce(v: i64, m: u64) -> i64 {
        if m == 0 {
            v
        } else {
            v.rem_euclid(m as i64)
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        let m = match (self.modulus, other.modulus) {
            (0, m) | (m, 0) => m,
            (a, b) if a == b => a,
            _ => return false,
        };
        Fp::reduce(self.value, m) == Fp::reduce(other.value, m)
    }
}

impl Coeff for Fp {
    fn zero() -> Self {
        Fp { value: 0, modulus: 0 }
    }
    fn one() -> Self {
        Fp { value: 1, modulus: 0 }
    }
    fn from_i64(v: i64) -> Self {
        Fp { value: v, modulus: 0 }
    }
    fn is_zero(&self) -> bool {
        Fp::reduce(self.value, self.modulus) == 0
    }
    fn is_unit(&self) -> bool {
        !self.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        let m = self.joined_modulus(rhs);
        Fp { value: Fp::reduce(self.value + rhs.value, m), modulus: m }
    }
    fn neg(&self) -> Self {
        Fp { value: Fp::reduce(-self.value, self.modulus), modulus: self.modulus }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let m = self.joined_modulus(rhs);
        Fp {
            value: Fp::reduce(
                Fp::reduce(self.value, m).wrapping_mul(Fp::reduce(rhs.value, m)),
                m,
            ),
            modulus: m,
        }
    }
    fn inv(&self) -> Option<Self> {
        let m = self.modulus;
        assert!(m != 0, "cannot invert a modulus-free Fp element");
        let v = Fp::reduce(self.value, m);
        if v == 0 {
            return None;
        }
        // extended Euclid
        let (mut r0, mut r1) = (m as i64, v);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1, "modulus not prime or value not coprime");
        Some(Fp::new(s0, m))
    }
    fn is_field() -> bool {
        true
    }
}
