//! Discrete valuations on the supported fields.
//!
//! A valuation is a map `ν: K → ℤ ∪ {+∞}` with `ν(x) = +∞` iff `x = 0`,
//! `ν(xy) = ν(x) + ν(y)`, and `ν(x+y) ≥ min(ν(x), ν(y))`. Four descriptors
//! are supported, each tied to exactly one field family:
//!
//! * `PAdic(p)` on rationals — the multiplicity of `p`;
//! * `OrderAtZero` on rational functions — the vanishing order at `t = 0`;
//! * `OrderAtInfinity` on rational functions — `deg(den) − deg(num)`;
//! * `OrderAtIrreducible(q)` on rational functions — the multiplicity of a
//!   monic irreducible factor `q`.
//!
//! Applying a descriptor to the wrong family is an error, never a coercion.

use crate::algext::is_irreducible_over_q;
use crate::elem::{FieldElem, FieldFamily};
use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::poly::UniPoly;
use crate::ratfunc::RatFunc;
use crate::scalar::{int_multiplicity, is_integer, is_prime, Integer, Rational};
use num_traits::Zero;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Valuation {
    PAdic { p: Integer },
    OrderAtZero,
    OrderAtInfinity,
    OrderAtIrreducible { q: UniPoly },
}

impl Valuation {
    /// A p-adic valuation; `p` must be prime.
    pub fn p_adic(p: u64) -> Result<Valuation> {
        let p = Integer::from(p);
        if !is_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Valuation::PAdic { p })
    }

    /// Order at a monic irreducible polynomial with integer coefficients.
    pub fn order_at_irreducible(q: UniPoly) -> Result<Valuation> {
        if !q.is_monic() {
            return Err(Error::Validation(format!("{q} is not monic")));
        }
        if !q.coeffs().iter().all(is_integer) {
            return Err(Error::Validation(format!(
                "{q} does not have integer coefficients"
            )));
        }
        if !is_irreducible_over_q(&q)? {
            return Err(Error::NotIrreducible(q.to_string()));
        }
        Ok(Valuation::OrderAtIrreducible { q })
    }

    /// The single field family this valuation applies to.
    pub fn family(&self) -> FieldFamily {
        match self {
            Valuation::PAdic { .. } => FieldFamily::Rational,
            _ => FieldFamily::RationalFunction,
        }
    }

    fn incompatible(&self, x: &FieldElem) -> Error {
        Error::IncompatibleValuation {
            valuation: self.to_string(),
            family: x.family().to_string(),
        }
    }

    /// Evaluates the valuation. Zero maps to `+∞`; a family mismatch is an
    /// error.
    pub fn valuate(&self, x: &FieldElem) -> Result<ExtInt> {
        match (self, x) {
            (Valuation::PAdic { p }, FieldElem::Rational(r)) => {
                if r.is_zero() {
                    return Ok(ExtInt::Infinity);
                }
                let num = int_multiplicity(r.numer(), p);
                let den = int_multiplicity(r.denom(), p);
                Ok(ExtInt::Finite(num - den))
            }
            (Valuation::OrderAtZero, FieldElem::RatFunc(f)) => {
                Ok(Self::ratfunc_val(f, |p| {
                    p.order_at_zero().unwrap() as i64
                }))
            }
            (Valuation::OrderAtInfinity, FieldElem::RatFunc(f)) => {
                Ok(Self::ratfunc_val(f, |p| -(p.degree().unwrap() as i64)))
            }
            (Valuation::OrderAtIrreducible { q }, FieldElem::RatFunc(f)) => {
                Ok(Self::ratfunc_val(f, |p| p.multiplicity_of(q) as i64))
            }
            _ => Err(self.incompatible(x)),
        }
    }

    fn ratfunc_val(f: &RatFunc, poly_val: impl Fn(&UniPoly) -> i64) -> ExtInt {
        if f.is_zero() {
            return ExtInt::Infinity;
        }
        ExtInt::Finite(poly_val(f.numerator()) - poly_val(f.denominator()))
    }

    /// An element `π` with `ν(π) = 1`.
    pub fn uniformizer(&self) -> FieldElem {
        match self {
            Valuation::PAdic { p } => {
                FieldElem::Rational(Rational::from_integer(p.clone()))
            }
            Valuation::OrderAtZero => FieldElem::RatFunc(RatFunc::var()),
            Valuation::OrderAtInfinity => {
                FieldElem::RatFunc(RatFunc::var().recip().unwrap())
            }
            Valuation::OrderAtIrreducible { q } => {
                FieldElem::RatFunc(RatFunc::from_poly(q.clone()))
            }
        }
    }

    /// `π^k` for any integer `k` (negative powers allowed: π is invertible).
    pub fn uniformizer_power(&self, k: i64) -> FieldElem {
        let pi = self.uniformizer();
        let mut acc = FieldElem::from_int(1);
        let base = if k >= 0 {
            pi
        } else {
            pi.try_inv().expect("uniformizer is nonzero")
        };
        for _ in 0..k.unsigned_abs() {
            acc = acc * base.clone();
        }
        acc
    }

    /// Membership in the valuation ring: `ν(x) ≥ 0`.
    pub fn is_integral(&self, x: &FieldElem) -> Result<bool> {
        Ok(self.valuate(x)?.at_least(0))
    }

    /// Size of the residue field, or `None` when infinite. Only p-adic
    /// valuations have a finite residue field here.
    pub fn residue_field_size(&self) -> Option<Integer> {
        match self {
            Valuation::PAdic { p } => Some(p.clone()),
            _ => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::PAdic { p } => write!(f, "p-adic({p})"),
            Valuation::OrderAtZero => write!(f, "order-at-zero"),
            Valuation::OrderAtInfinity => write!(f, "order-at-infinity"),
            Valuation::OrderAtIrreducible { q } => write!(f, "order-at({q})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::literal::{parse_elem, parse_ratfunc, parse_unipoly, FieldCtx};
    use crate::scalar::rat;

    fn v2() -> Valuation {
        Valuation::p_adic(2).unwrap()
    }

    fn rf(s: &str) -> FieldElem {
        FieldElem::RatFunc(parse_ratfunc(s).unwrap())
    }

    #[test]
    fn construction_checks_primality() {
        assert!(Valuation::p_adic(2).is_ok());
        assert!(Valuation::p_adic(97).is_ok());
        assert_eq!(Valuation::p_adic(6), Err(Error::NotPrime("6".into())));
        assert_eq!(Valuation::p_adic(1), Err(Error::NotPrime("1".into())));
    }

    #[test]
    fn p_adic_values() {
        let x = FieldElem::Rational(rat(12, 1));
        assert_eq!(v2().valuate(&x).unwrap(), ExtInt::Finite(2));
        let x = FieldElem::Rational(rat(3, 4));
        assert_eq!(v2().valuate(&x).unwrap(), ExtInt::Finite(-2));
        let x = FieldElem::Rational(rat(-40, 3));
        assert_eq!(v2().valuate(&x).unwrap(), ExtInt::Finite(3));
        assert_eq!(
            v2().valuate(&FieldElem::from_int(0)).unwrap(),
            ExtInt::Infinity
        );
    }

    #[test]
    fn order_valuations() {
        // deg(den) - deg(num) for (t^2+1)/t^5 is 3
        let x = rf("(t^2 + 1)/(t^5)");
        assert_eq!(
            Valuation::OrderAtInfinity.valuate(&x).unwrap(),
            ExtInt::Finite(3)
        );
        // (3 + t^3)/t^2 = 3t^-2 + t: order at zero is -2
        let x = rf("(3 + t^3)/(t^2)");
        assert_eq!(
            Valuation::OrderAtZero.valuate(&x).unwrap(),
            ExtInt::Finite(-2)
        );
        assert_eq!(
            Valuation::OrderAtInfinity.valuate(&x).unwrap(),
            ExtInt::Finite(-1)
        );
        let x = rf("0");
        assert_eq!(Valuation::OrderAtZero.valuate(&x).unwrap(), ExtInt::Infinity);
    }

    #[test]
    fn order_at_irreducible() {
        let q = parse_unipoly("t^2 + 1").unwrap();
        let v = Valuation::order_at_irreducible(q).unwrap();
        let x = rf("(t^4 + 2*t^2 + 1)/(t)"); // (t^2+1)^2 / t
        assert_eq!(v.valuate(&x).unwrap(), ExtInt::Finite(2));
        let x = rf("(1)/(t^2 + 1)");
        assert_eq!(v.valuate(&x).unwrap(), ExtInt::Finite(-1));
        // constructor rejects reducible and non-monic inputs
        assert!(Valuation::order_at_irreducible(parse_unipoly("t^2 - 1").unwrap()).is_err());
        assert!(Valuation::order_at_irreducible(parse_unipoly("2*t + 1").unwrap()).is_err());
    }

    #[test]
    fn family_mismatch_is_an_error() {
        let x = rf("t");
        assert!(matches!(
            v2().valuate(&x),
            Err(Error::IncompatibleValuation { .. })
        ));
        let y = FieldElem::Rational(rat(1, 2));
        assert!(matches!(
            Valuation::OrderAtZero.valuate(&y),
            Err(Error::IncompatibleValuation { .. })
        ));
    }

    #[test]
    fn uniformizers_have_valuation_one() {
        for v in [
            v2(),
            Valuation::p_adic(5).unwrap(),
            Valuation::OrderAtZero,
            Valuation::OrderAtInfinity,
            Valuation::order_at_irreducible(parse_unipoly("t^2 + 1").unwrap()).unwrap(),
        ] {
            let pi = v.uniformizer();
            assert_eq!(v.valuate(&pi).unwrap(), ExtInt::Finite(1), "{v}");
            assert_eq!(
                v.valuate(&v.uniformizer_power(-3)).unwrap(),
                ExtInt::Finite(-3),
                "{v}"
            );
        }
    }

    #[test]
    fn integrality() {
        assert!(!v2().is_integral(&FieldElem::Rational(rat(3, 4))).unwrap());
        assert!(v2().is_integral(&FieldElem::from_int(5)).unwrap());
        assert!(v2().is_integral(&FieldElem::from_int(0)).unwrap());
        let x = rf("(t + 1)/(t)");
        assert!(!Valuation::OrderAtZero.is_integral(&x).unwrap());
        assert!(Valuation::OrderAtInfinity.is_integral(&x).unwrap());
    }

    #[test]
    fn infinity_uniformizer_round_trip() {
        // uniformizer of order-at-infinity is 1/t
        let pi = Valuation::OrderAtInfinity.uniformizer();
        assert_eq!(pi.to_string(), "(1)/(t)");
        let e = parse_elem("(1)/(t)", &FieldCtx::rational_function()).unwrap();
        assert_eq!(pi, e);
    }
}
