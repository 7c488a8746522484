//! The working scalar: a tagged union over the supported coefficient
//! families.
//!
//! Plain rationals embed canonically into every other family, so binary
//! operations promote a rational operand to match the other side. Any other
//! mix (a rational function with a number-field element, number-field
//! elements over different moduli) has no canonical common field and panics;
//! scenario ingestion validates families up front so such a mix is a
//! programming error, not a data error.

use crate::algext::AlgElem;
use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::ratfunc::RatFunc;
use crate::scalar::{rational_string, Rational};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldFamily {
    Rational,
    RationalFunction,
    Algebraic,
    Multivariate,
}

impl fmt::Display for FieldFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            FieldFamily::Rational => "rational",
            FieldFamily::RationalFunction => "rational-function",
            FieldFamily::Algebraic => "algebraic",
            FieldFamily::Multivariate => "multivariate",
        };
        write!(f, "{name}")
    }
}

#[derive(Debug, Clone)]
pub enum FieldElem {
    Rational(Rational),
    RatFunc(RatFunc),
    AlgElem(AlgElem),
    MultiPoly(MultiPoly),
}

/// Equality along the canonical embeddings: a plain rational equals its
/// image in any other family. Elements with no common field are unequal.
impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = if matches!(self, FieldElem::Rational(_)) {
            match self.promoted_like(other) {
                Ok(a) => (a, other.clone()),
                Err(_) => return false,
            }
        } else {
            match other.promoted_like(self) {
                Ok(b) => (self.clone(), b),
                Err(_) => return false,
            }
        };
        match (a, b) {
            (FieldElem::Rational(x), FieldElem::Rational(y)) => x == y,
            (FieldElem::RatFunc(x), FieldElem::RatFunc(y)) => x == y,
            (FieldElem::AlgElem(x), FieldElem::AlgElem(y)) => x == y,
            (FieldElem::MultiPoly(x), FieldElem::MultiPoly(y)) => x == y,
            _ => unreachable!("promotion aligns families"),
        }
    }
}

impl FieldElem {
    pub fn family(&self) -> FieldFamily {
        match self {
            FieldElem::Rational(_) => FieldFamily::Rational,
            FieldElem::RatFunc(_) => FieldFamily::RationalFunction,
            FieldElem::AlgElem(_) => FieldFamily::Algebraic,
            FieldElem::MultiPoly(_) => FieldFamily::Multivariate,
        }
    }

    pub fn from_int(n: i64) -> Self {
        FieldElem::Rational(Rational::from_integer(n.into()))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElem::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_ratfunc(&self) -> Option<&RatFunc> {
        match self {
            FieldElem::RatFunc(f) => Some(f),
            _ => None,
        }
    }

    pub fn as_algelem(&self) -> Option<&AlgElem> {
        match self {
            FieldElem::AlgElem(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_multipoly(&self) -> Option<&MultiPoly> {
        match self {
            FieldElem::MultiPoly(m) => Some(m),
            _ => None,
        }
    }

    /// Promotes `self` into the family of `exemplar` along the canonical
    /// embedding of the rationals; errors when no such embedding applies.
    pub fn promoted_like(&self, exemplar: &FieldElem) -> Result<FieldElem> {
        if self.family() == exemplar.family() {
            // Same family; for number fields also require the same modulus.
            if let (FieldElem::AlgElem(a), FieldElem::AlgElem(b)) = (self, exemplar) {
                if !a.same_field(b) {
                    return Err(Error::IncompatibleFamilies(
                        format!("algebraic over {}", a.field().modulus()),
                        format!("algebraic over {}", b.field().modulus()),
                    ));
                }
            }
            return Ok(self.clone());
        }
        match (self, exemplar) {
            (FieldElem::Rational(r), FieldElem::RatFunc(_)) => {
                Ok(FieldElem::RatFunc(RatFunc::constant(r.clone())))
            }
            (FieldElem::Rational(r), FieldElem::AlgElem(b)) => {
                Ok(FieldElem::AlgElem(b.field().from_rational(r.clone())))
            }
            (FieldElem::Rational(r), FieldElem::MultiPoly(_)) => {
                Ok(FieldElem::MultiPoly(MultiPoly::constant(r.clone())))
            }
            _ => Err(Error::IncompatibleFamilies(
                self.family().to_string(),
                exemplar.family().to_string(),
            )),
        }
    }

    fn promote_pair(self, rhs: FieldElem) -> (FieldElem, FieldElem) {
        if matches!(self, FieldElem::Rational(_)) {
            let a = self
                .promoted_like(&rhs)
                .unwrap_or_else(|e| panic!("field element arithmetic: {e}"));
            (a, rhs)
        } else {
            let b = rhs
                .promoted_like(&self)
                .unwrap_or_else(|e| panic!("field element arithmetic: {e}"));
            (self, b)
        }
    }

    pub fn is_zero_elem(&self) -> bool {
        match self {
            FieldElem::Rational(r) => r.is_zero(),
            FieldElem::RatFunc(f) => f.is_zero(),
            FieldElem::AlgElem(a) => a.is_zero(),
            FieldElem::MultiPoly(m) => m.is_zero(),
        }
    }

    /// Checked multiplicative inverse.
    pub fn try_inv(&self) -> Result<FieldElem> {
        if self.is_zero_elem() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElem::Rational(r) => FieldElem::Rational(r.recip()),
            FieldElem::RatFunc(f) => FieldElem::RatFunc(f.recip()?),
            FieldElem::AlgElem(a) => FieldElem::AlgElem(a.inv()?),
            FieldElem::MultiPoly(m) => match m.is_constant() {
                Some(c) => FieldElem::MultiPoly(MultiPoly::constant(c.recip())),
                None => {
                    return Err(Error::Unsupported(
                        "nonconstant multivariate polynomials are not invertible".into(),
                    ))
                }
            },
        })
    }
}

/// Canonical literal form of the underlying element.
impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(r) => write!(f, "{}", rational_string(r)),
            FieldElem::RatFunc(x) => write!(f, "{x}"),
            FieldElem::AlgElem(a) => write!(f, "{a}"),
            FieldElem::MultiPoly(m) => write!(f, "{m}"),
        }
    }
}

impl Zero for FieldElem {
    fn zero() -> Self {
        FieldElem::Rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.is_zero_elem()
    }
}

impl One for FieldElem {
    fn one() -> Self {
        FieldElem::Rational(Rational::one())
    }
}

macro_rules! promote_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for FieldElem {
            type Output = FieldElem;

            fn $method(self, rhs: FieldElem) -> FieldElem {
                let (a, b) = self.promote_pair(rhs);
                match (a, b) {
                    (FieldElem::Rational(x), FieldElem::Rational(y)) => {
                        FieldElem::Rational(x.$method(y))
                    }
                    (FieldElem::RatFunc(x), FieldElem::RatFunc(y)) => {
                        FieldElem::RatFunc(x.$method(y))
                    }
                    (FieldElem::AlgElem(x), FieldElem::AlgElem(y)) => {
                        FieldElem::AlgElem(x.$method(y))
                    }
                    (FieldElem::MultiPoly(x), FieldElem::MultiPoly(y)) => {
                        FieldElem::MultiPoly(x.$method(y))
                    }
                    _ => unreachable!("promote_pair aligns families"),
                }
            }
        }
    };
}

promote_binop!(Add, add);
promote_binop!(Sub, sub);
promote_binop!(Mul, mul);

impl Neg for FieldElem {
    type Output = FieldElem;

    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rational(r) => FieldElem::Rational(-r),
            FieldElem::RatFunc(f) => FieldElem::RatFunc(-f),
            FieldElem::AlgElem(a) => FieldElem::AlgElem(-a),
            FieldElem::MultiPoly(m) => FieldElem::MultiPoly(-m),
        }
    }
}

impl Div for FieldElem {
    type Output = FieldElem;

    fn div(self, rhs: FieldElem) -> FieldElem {
        let inv = rhs.try_inv().expect("division by zero field element");
        self * inv
    }
}

impl From<Rational> for FieldElem {
    fn from(r: Rational) -> Self {
        FieldElem::Rational(r)
    }
}

impl From<RatFunc> for FieldElem {
    fn from(f: RatFunc) -> Self {
        FieldElem::RatFunc(f)
    }
}

impl From<AlgElem> for FieldElem {
    fn from(a: AlgElem) -> Self {
        FieldElem::AlgElem(a)
    }
}

impl From<MultiPoly> for FieldElem {
    fn from(m: MultiPoly) -> Self {
        FieldElem::MultiPoly(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algext::NumberField;
    use crate::poly::Poly;
    use crate::scalar::{rat, rat_int};

    fn q(n: i64, d: i64) -> FieldElem {
        FieldElem::Rational(rat(n, d))
    }

    #[test]
    fn rational_promotes_into_rational_functions() {
        let t = FieldElem::RatFunc(RatFunc::var());
        let sum = q(1, 2) + t.clone();
        assert_eq!(sum.family(), FieldFamily::RationalFunction);
        assert_eq!(sum.to_string(), "t + 1/2");
        // and multiplication
        assert_eq!((q(2, 1) * t).to_string(), "2*t");
    }

    #[test]
    fn rational_promotes_into_number_fields() {
        let k = NumberField::new(Poly::new(vec![rat_int(-2), rat_int(0), rat_int(1)])).unwrap();
        let s = FieldElem::AlgElem(k.from_poly(&Poly::monomial(rat_int(1), 1)));
        let v = q(1, 1) + s.clone();
        assert_eq!(v.family(), FieldFamily::Algebraic);
        assert_eq!(v.to_string(), "t + 1");
        assert_eq!((s.clone() * s).to_string(), "2");
    }

    #[test]
    fn zero_and_one_are_rational() {
        assert_eq!(FieldElem::zero().family(), FieldFamily::Rational);
        assert!(FieldElem::zero().is_zero());
        assert!((FieldElem::one() - FieldElem::one()).is_zero());
    }

    #[test]
    fn division_uses_exact_inverses() {
        let t = FieldElem::RatFunc(RatFunc::var());
        let r = FieldElem::one() / t.clone();
        assert_eq!(r.to_string(), "(1)/(t)");
        assert_eq!((r * t).to_string(), "1");
        assert!(q(0, 1).try_inv().is_err());
    }

    #[test]
    #[should_panic(expected = "field element arithmetic")]
    fn mixing_distinct_extensions_panics() {
        let f = FieldElem::RatFunc(RatFunc::var());
        let k = NumberField::new(Poly::new(vec![rat_int(-2), rat_int(0), rat_int(1)])).unwrap();
        let a = FieldElem::AlgElem(k.one());
        let _ = f + a;
    }

    #[test]
    fn equality_follows_the_embedding() {
        assert_eq!(FieldElem::one(), FieldElem::RatFunc(RatFunc::one()));
        assert_eq!(
            FieldElem::MultiPoly(MultiPoly::constant(rat(1, 2))),
            q(1, 2)
        );
        assert_ne!(FieldElem::RatFunc(RatFunc::var()), q(1, 1));
        // no common field: unequal rather than an error
        assert_ne!(
            FieldElem::RatFunc(RatFunc::var()),
            FieldElem::MultiPoly(MultiPoly::var(0))
        );
    }

    #[test]
    fn promoted_like_errors_are_typed() {
        let f = FieldElem::RatFunc(RatFunc::var());
        let m = FieldElem::MultiPoly(MultiPoly::var(0));
        assert!(matches!(
            f.promoted_like(&m),
            Err(Error::IncompatibleFamilies(_, _))
        ));
    }
}
