//! Integer Laurent polynomials in `q`, allowing half-integer exponents.
//!
//! Exponents are stored doubled, so a key of `3` means `q^(3/2)` and a key
//! of `-4` means `q^-2`. Brackets of `n`-crossing diagrams live in
//! `q^(n/2) Z[q, q^-1]`; everything downstream of the writhe normalization
//! has even keys only.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Laurent polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    /// doubled exponent -> coefficient; zero coefficients are never stored.
    coeffs: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial_half(0, BigInt::one())
    }

    /// `c * q^(de/2)` where `de` is the doubled exponent.
    pub fn monomial_half(de: i32, c: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(de, c);
        }
        LaurentPoly { coeffs }
    }

    /// `c * q^e` with an integer exponent.
    pub fn monomial(e: i32, c: i64) -> Self {
        LaurentPoly::monomial_half(2 * e, BigInt::from(c))
    }

    /// The circle value `q + q^-1`.
    pub fn circle() -> Self {
        LaurentPoly::monomial(1, 1) + LaurentPoly::monomial(-1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when every exponent is an integer (all doubled exponents even).
    pub fn has_integer_exponents(&self) -> bool {
        self.coeffs.keys().all(|de| de % 2 == 0)
    }

    /// Iterate `(doubled_exponent, coefficient)` in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.coeffs.iter().map(|(de, c)| (*de, c))
    }

    pub fn coeff_half(&self, de: i32) -> BigInt {
        self.coeffs.get(&de).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.coeff_half(2 * e)
    }

    pub fn add_term(&mut self, de: i32, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(de).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&de);
        }
    }

    /// Multiply by `c * q^(de/2)`.
    pub fn mul_monomial_half(&self, de: i32, c: &BigInt) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, k) in self.iter() {
            out.add_term(e + de, &(k * c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `q -> q^-1`.
    pub fn invert_variable(&self) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.iter() {
            out.add_term(-e, c);
        }
        out
    }

    /// Exact division by `q + q^-1`; `None` if the division leaves a remainder.
    pub fn div_circle(&self) -> Option<Self> {
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        // Peel leading terms: q^d / q = q^(d-1).
        while !rem.is_zero() {
            let (&de, c) = rem.coeffs.iter().next_back().unwrap();
            let c = c.clone();
            quot.add_term(de - 2, &c);
            // subtract (c q^(de/2 - 1)) * (q + q^-1)
            rem.add_term(de, &-&c);
            rem.add_term(de - 4, &-c);
        }
        Some(quot)
    }

    /// Evaluate at `q^2 = -1`, i.e. report the pair (value at i, well-defined
    /// only up to the stated convention). Doubled exponents must be even.
    /// Returns the sum of `c * (-1)^(e/2)` over integer exponents `e` split by
    /// parity: `(even_part, odd_part)` so that the value is
    /// `even_part + odd_part * q` with `q^2 = -1`.
    pub fn eval_q2_minus_one(&self) -> Option<(BigInt, BigInt)> {
        let mut even = BigInt::zero();
        let mut odd = BigInt::zero();
        for (de, c) in self.iter() {
            if de % 2 != 0 {
                return None;
            }
            let e = de / 2;
            let sign = if (e.div_euclid(2)) % 2 == 0 { 1 } else { -1 };
            let term = c * sign;
            if e.rem_euclid(2) == 0 {
                even += term;
            } else {
                odd += term;
            }
        }
        Some((even, odd))
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (e, c) in rhs.iter() {
            self.add_term(e, c);
        }
        self
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.iter() {
            self.add_term(e, c);
        }
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let coeffs = self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect();
        LaurentPoly { coeffs }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.iter() {
            for (e2, c2) in rhs.iter() {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms ascending by exponent, e.g. `q^-2 + 1 + 2*q^2 - q^6`;
    /// half-integer exponents render as `q^(3/2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (de, c) in self.iter() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let var = if de == 0 {
                None
            } else if de == 2 {
                Some("q".to_string())
            } else if de % 2 == 0 {
                Some(format!("q^{}", de / 2))
            } else {
                Some(format!("q^({}/2)", de))
            };
            match var {
                None => write!(f, "{}", mag)?,
                Some(v) => {
                    if mag.is_one() {
                        write!(f, "{}", v)?;
                    } else {
                        write!(f, "{}*{}", mag, v)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_basics() {
        let p = LaurentPoly::circle();
        let sq = &p * &p;
        assert_eq!(sq.coeff(0), BigInt::from(2));
        assert_eq!(sq.coeff(2), BigInt::from(1));
        assert_eq!(sq.coeff(-2), BigInt::from(1));
        assert!((p.clone() - p).is_zero());
    }

    #[test]
    fn div_circle_exact() {
        let p = LaurentPoly::circle().pow(3);
        let q = p.div_circle().unwrap();
        assert_eq!(q, LaurentPoly::circle().pow(2));
    }

    #[test]
    fn rendering() {
        let p = LaurentPoly::monomial(-2, 1)
            + LaurentPoly::monomial(0, 1)
            + LaurentPoly::monomial(2, 2)
            + LaurentPoly::monomial(6, -1);
        assert_eq!(p.to_string(), "q^-2 + 1 + 2*q^2 - q^6");
        let h = LaurentPoly::monomial_half(3, BigInt::one());
        assert_eq!(h.to_string(), "q^(3/2)");
        assert_eq!(LaurentPoly::monomial(1, 1).to_string(), "q");
    }

    #[test]
    fn variable_inversion() {
        let p = LaurentPoly::monomial(3, 2) + LaurentPoly::monomial(-1, 5);
        let q = p.invert_variable();
        assert_eq!(q.coeff(-3), BigInt::from(2));
        assert_eq!(q.coeff(1), BigInt::from(5));
    }
}
