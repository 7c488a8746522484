//! The field of rational functions in one variable over the rationals.
//!
//! Every value is kept in canonical form — numerator and denominator
//! coprime, denominator monic — so structural equality is field equality.

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::scalar::{is_integer, Rational};
use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: UniPoly, den: UniPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc {
                num,
                den: UniPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).unwrap();
        let den = den.exact_div(&g).unwrap();
        let lead_inv = den.leading().unwrap().recip();
        RatFunc {
            num: num.map(|c| c * &lead_inv),
            den: den.map(|c| c * &lead_inv),
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    /// The variable `t`.
    pub fn var() -> Self {
        Self::from_poly(UniPoly::var())
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> Option<Rational> {
        if self.den.is_one() && self.num.degree().map_or(true, |d| d == 0) {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// True when the value lies in `Z[t, 1/t]`: the (canonical) denominator
    /// is a power of `t` and the numerator has integer coefficients.
    pub fn is_integer_laurent(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let den_is_t_power = self.den.order_at_zero() == self.den.degree();
        den_is_t_power && self.num.coeffs().iter().all(is_integer)
    }

    /// Evaluates at a rational point; errors at a pole of the reduced form.
    pub fn eval(&self, t0: &Rational) -> Result<Rational> {
        let den = self.den.eval(t0);
        if den.is_zero() {
            return Err(Error::EvaluationPole(t0.to_string()));
        }
        Ok(self.num.eval(t0) / den)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }
}

/// Canonical literal form: a bare polynomial when the denominator is one,
/// otherwise `(num)/(den)`.
impl std::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
}

impl Add for RatFunc {
    type Output = RatFunc;

    fn add(self, rhs: Self) -> RatFunc {
        let num = self.num * rhs.den.clone() + rhs.num * self.den.clone();
        RatFunc::reduced(num, self.den * rhs.den)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;

    fn sub(self, rhs: Self) -> RatFunc {
        self + (-rhs)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;

    fn mul(self, rhs: Self) -> RatFunc {
        RatFunc::reduced(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;

    fn div(self, rhs: Self) -> RatFunc {
        let inv = rhs.recip().expect("division by zero rational function");
        self * inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::scalar::{rat, rat_int};

    fn p(coeffs: &[i64]) -> UniPoly {
        Poly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(p(num), p(den)).unwrap()
    }

    #[test]
    fn canonical_form_reduces() {
        // (2t + 2) / (2t^2 + 2t) = 1/t
        let f = rf(&[2, 2], &[0, 2, 2]);
        assert_eq!(f, rf(&[1], &[0, 1]));
        assert_eq!(f.numerator(), &p(&[1]));
        assert_eq!(f.denominator(), &p(&[0, 1]));
    }

    #[test]
    fn denominator_is_monic() {
        // 1 / (2t - 2) = (1/2) / (t - 1)
        let f = rf(&[1], &[-2, 2]);
        assert!(f.denominator().is_monic());
        assert_eq!(f.numerator(), &Poly::constant(rat(1, 2)));
    }

    #[test]
    fn field_arithmetic() {
        let t = RatFunc::var();
        let inv_t = t.clone().recip().unwrap();
        assert_eq!(t.clone() * inv_t.clone(), RatFunc::one());
        // t + 1/t = (t^2 + 1)/t
        assert_eq!(t.clone() + inv_t, rf(&[1, 0, 1], &[0, 1]));
        assert!((t.clone() - t).is_zero());
    }

    #[test]
    fn zero_division_is_an_error() {
        assert_eq!(
            RatFunc::new(p(&[1]), UniPoly::zero()),
            Err(Error::DivisionByZero)
        );
        assert!(RatFunc::zero().recip().is_err());
    }

    #[test]
    fn evaluation_and_poles() {
        let f = rf(&[1], &[-1, 1]); // 1/(t - 1)
        assert_eq!(f.eval(&rat_int(3)).unwrap(), rat(1, 2));
        assert!(matches!(
            f.eval(&rat_int(1)),
            Err(Error::EvaluationPole(_))
        ));
    }

    #[test]
    fn integer_laurent_detection() {
        assert!(rf(&[3, 0, 0, 1], &[0, 0, 1]).is_integer_laurent()); // (3 + t^3)/t^2
        assert!(rf(&[5], &[1]).is_integer_laurent());
        assert!(RatFunc::zero().is_integer_laurent());
        assert!(!rf(&[1], &[2]).is_integer_laurent()); // 1/2
        assert!(!rf(&[1], &[1, 1]).is_integer_laurent()); // 1/(t + 1)
        assert!(!rf(&[1, 2], &[0, 2]).is_integer_laurent()); // (1 + 2t)/(2t)
    }

    #[test]
    fn constants() {
        assert_eq!(rf(&[6], &[4]).is_constant(), Some(rat(3, 2)));
        assert_eq!(rf(&[0, 1], &[1]).is_constant(), None);
        assert_eq!(RatFunc::zero().is_constant(), Some(rat_int(0)));
    }

    #[test]
    fn display_canonical() {
        assert_eq!(RatFunc::zero().to_string(), "0");
        assert_eq!(rf(&[1, 2], &[1]).to_string(), "2*t + 1");
        assert_eq!(rf(&[1], &[0, 1]).to_string(), "(1)/(t)");
        assert_eq!(rf(&[0, 0, 1], &[1, 1]).to_string(), "(t^2)/(t + 1)");
    }
}
