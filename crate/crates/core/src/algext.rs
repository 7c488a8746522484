//! Algebraic number fields `Q[t]/(f)` for a monic irreducible integer
//! polynomial `f` of degree at most six.
//!
//! Elements are coordinate vectors in the power basis `1, t, ..., t^(d-1)`.
//! The field is shared behind an `Arc`; arithmetic between elements of
//! different fields is a construction bug and panics.

use crate::error::{Error, Result};
use crate::poly::{Poly, UniPoly};
use crate::scalar::{is_integer, signed_divisors, Integer, Rational};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub const MAX_MODULUS_DEGREE: usize = 6;

/// Decides irreducibility over the rationals for any nonconstant integer
/// polynomial of degree at most [`2 * MAX_MODULUS_DEGREE`]: a rational-root
/// test rules out linear factors, then factor candidates of each degree up
/// to half the total are interpolated from divisor tuples of sample values
/// and checked by exact division. Complete for this degree range.
pub fn is_irreducible_over_q(f: &UniPoly) -> Result<bool> {
    let deg = match f.degree() {
        None | Some(0) => {
            return Err(Error::Validation(
                "irreducibility is undefined for constants".into(),
            ))
        }
        Some(d) => d,
    };
    if deg > 2 * MAX_MODULUS_DEGREE {
        return Err(Error::Unsupported(format!(
            "irreducibility check supports degree <= {}, got {deg}",
            2 * MAX_MODULUS_DEGREE
        )));
    }
    if deg == 1 {
        return Ok(true);
    }
    // Clear denominators: irreducibility over Q is invariant under scaling.
    let scale = f
        .coeffs()
        .iter()
        .fold(Integer::one(), |acc, c| lcm(&acc, c.denom()));
    let g = f.map(|c| c * Rational::from_integer(scale.clone()));
    debug_assert!(g.coeffs().iter().all(is_integer));

    if g.coeff(0).is_zero() {
        return Ok(false); // t divides
    }
    // Rational roots p/q: p | constant, q | leading.
    for p in signed_divisors(g.coeff(0).numer()) {
        for q in signed_divisors(g.leading().unwrap().numer()) {
            if q.is_negative() {
                continue;
            }
            if g.eval(&Rational::new(p.clone(), q.clone())).is_zero() {
                return Ok(false);
            }
        }
    }
    // Kronecker: a degree-d factor is determined by its values at d+1
    // points, and those values divide the values of g.
    let sample_points: Vec<i64> = vec![0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6];
    for d in 2..=deg / 2 {
        let points = &sample_points[..=d];
        let values: Vec<Integer> = points
            .iter()
            .map(|&x| g.eval(&Rational::from_integer(Integer::from(x))))
            .map(|v| v.numer().clone())
            .collect();
        debug_assert!(values.iter().all(|v| !v.is_zero()));
        let divisor_lists: Vec<Vec<Integer>> =
            values.iter().map(|v| signed_divisors(v)).collect();
        for choice in divisor_lists.iter().multi_cartesian_product() {
            let candidate = lagrange_interpolate(points, &choice);
            if candidate.degree() != Some(d) {
                continue;
            }
            if !candidate.coeffs().iter().all(is_integer) {
                continue;
            }
            if g.exact_div(&candidate).is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn lcm(a: &Integer, b: &Integer) -> Integer {
    num_integer::Integer::lcm(a, b)
}

fn lagrange_interpolate(points: &[i64], values: &[&Integer]) -> UniPoly {
    let mut acc = UniPoly::zero();
    for (i, &xi) in points.iter().enumerate() {
        let mut basis = UniPoly::one();
        let mut denom = Rational::one();
        for (j, &xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis * Poly::new(vec![rational_of(-xj), Rational::one()]);
            denom *= rational_of(xi - xj);
        }
        let scale = Rational::from_integer(values[i].clone()) / denom;
        acc = acc + basis.map(|c| c * scale.clone());
    }
    acc
}

fn rational_of(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

/// A number field `Q[t]/(modulus)`.
#[derive(Debug, PartialEq, Eq)]
pub struct NumberField {
    modulus: UniPoly,
}

impl NumberField {
    /// Validates the modulus: monic, integer coefficients, degree in
    /// `1..=6`, irreducible over the rationals.
    pub fn new(modulus: UniPoly) -> Result<Arc<Self>> {
        let deg = modulus
            .degree()
            .ok_or_else(|| Error::Validation("modulus must be nonconstant".into()))?;
        if deg == 0 || deg > MAX_MODULUS_DEGREE {
            return Err(Error::Validation(format!(
                "modulus degree must be in 1..={MAX_MODULUS_DEGREE}, got {deg}"
            )));
        }
        if !modulus.is_monic() {
            return Err(Error::Validation("modulus must be monic".into()));
        }
        if !modulus.coeffs().iter().all(is_integer) {
            return Err(Error::Validation(
                "modulus must have integer coefficients".into(),
            ));
        }
        if !is_irreducible_over_q(&modulus)? {
            return Err(Error::NotIrreducible(format!("{modulus:?}")));
        }
        Ok(Arc::new(NumberField { modulus }))
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn zero(self: &Arc<Self>) -> AlgElem {
        AlgElem {
            coords: vec![Rational::zero(); self.degree()],
            field: Arc::clone(self),
        }
    }

    pub fn one(self: &Arc<Self>) -> AlgElem {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(self: &Arc<Self>, c: Rational) -> AlgElem {
        let mut coords = vec![Rational::zero(); self.degree()];
        coords[0] = c;
        AlgElem {
            coords,
            field: Arc::clone(self),
        }
    }

    /// The class of a polynomial, reduced modulo the modulus.
    pub fn from_poly(self: &Arc<Self>, p: &UniPoly) -> AlgElem {
        let (_, rem) = p.divrem(&self.modulus);
        let mut coords = vec![Rational::zero(); self.degree()];
        for (i, c) in rem.coeffs().iter().enumerate() {
            coords[i] = c.clone();
        }
        AlgElem {
            coords,
            field: Arc::clone(self),
        }
    }
}

/// An element of a number field, as coordinates in the power basis.
#[derive(Debug, Clone)]
pub struct AlgElem {
    coords: Vec<Rational>,
    field: Arc<NumberField>,
}

impl AlgElem {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn as_poly(&self) -> UniPoly {
        Poly::new(self.coords.clone())
    }

    pub fn same_field(&self, other: &AlgElem) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field.modulus == other.field.modulus
    }

    fn check_field(&self, other: &AlgElem) {
        assert!(
            self.same_field(other),
            "cannot combine elements of different number fields"
        );
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> Option<Rational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<AlgElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Bezout: u * self + v * modulus = 1 in Q[t], so u is the inverse.
        let (g, u, _) = self.as_poly().extended_gcd(self.field.modulus());
        debug_assert!(g.is_one(), "modulus is irreducible, gcd must be 1");
        Ok(self.field.from_poly(&u))
    }

    /// The matrix of multiplication by `self` in the power basis, columns
    /// indexed by basis vectors. Its characteristic polynomial witnesses
    /// integrality of the element.
    pub fn multiplication_matrix(&self) -> Vec<Vec<Rational>> {
        let d = self.field.degree();
        let mut cols = Vec::with_capacity(d);
        for k in 0..d {
            let basis_vec = self.field.from_poly(&Poly::monomial(Rational::one(), k));
            let image = self.clone() * basis_vec;
            cols.push(image.coords);
        }
        // transpose columns into rows
        (0..d)
            .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
            .collect()
    }
}

/// Canonical literal form: the reduced polynomial in the field generator,
/// printed like any univariate polynomial.
impl std::fmt::Display for AlgElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_poly())
    }
}

impl PartialEq for AlgElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coords == other.coords
    }
}

impl Eq for AlgElem {}

impl Add for AlgElem {
    type Output = AlgElem;

    fn add(mut self, rhs: Self) -> AlgElem {
        self.check_field(&rhs);
        for (a, b) in self.coords.iter_mut().zip(rhs.coords) {
            *a += b;
        }
        self
    }
}

impl Sub for AlgElem {
    type Output = AlgElem;

    fn sub(self, rhs: Self) -> AlgElem {
        self + (-rhs)
    }
}

impl Neg for AlgElem {
    type Output = AlgElem;

    fn neg(mut self) -> AlgElem {
        for c in self.coords.iter_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for AlgElem {
    type Output = AlgElem;

    fn mul(self, rhs: Self) -> AlgElem {
        self.check_field(&rhs);
        let prod = self.as_poly() * rhs.as_poly();
        self.field.from_poly(&prod)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn p(coeffs: &[i64]) -> UniPoly {
        Poly::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn irreducibility_known_cases() {
        // irreducible
        for f in [
            p(&[1, 0, 1]),     // t^2 + 1
            p(&[-2, 0, 1]),    // t^2 - 2
            p(&[-1, -1, 1]),   // t^2 - t - 1
            p(&[-2, 0, 0, 1]), // t^3 - 2
            p(&[1, 1, 1, 1, 1]), // t^4 + t^3 + t^2 + t + 1
            p(&[7, 2]),        // 2t + 7
        ] {
            assert_eq!(is_irreducible_over_q(&f), Ok(true), "{f:?}");
        }
        // reducible
        for f in [
            p(&[-1, 0, 1]),    // (t-1)(t+1)
            p(&[0, 0, 1]),     // t^2
            p(&[1, 2, 1]),     // (t+1)^2
            p(&[-6, 11, -6, 1]), // (t-1)(t-2)(t-3)
            p(&[1, 0, 2, 0, 1]), // (t^2+1)^2
            p(&[4, 0, 0, 0, 1]), // (t^2-2t+2)(t^2+2t+2)
            p(&[2, 3, 2, 3]),  // (3t + 2)(t^2 + 1), no rational roots
        ] {
            assert_eq!(is_irreducible_over_q(&f), Ok(false), "{f:?}");
        }
    }

    #[test]
    fn irreducibility_clears_denominators() {
        // (1/2) t^2 + 1/2 = (1/2)(t^2 + 1): irreducible
        let f = Poly::new(vec![rat(1, 2), rat_int(0), rat(1, 2)]);
        assert_eq!(is_irreducible_over_q(&f), Ok(true));
    }

    #[test]
    fn field_construction_validates() {
        assert!(NumberField::new(p(&[-2, 0, 1])).is_ok());
        assert!(matches!(
            NumberField::new(p(&[-1, 0, 1])),
            Err(Error::NotIrreducible(_))
        ));
        assert!(NumberField::new(p(&[5])).is_err()); // constant
        assert!(NumberField::new(p(&[1, 0, 2])).is_err()); // not monic
        let too_big = Poly::monomial(rat_int(1), 7) + Poly::constant(rat_int(3));
        assert!(NumberField::new(too_big).is_err()); // degree 7
        let half = Poly::new(vec![rat(1, 2), rat_int(0), rat_int(1)]);
        assert!(NumberField::new(half).is_err()); // non-integer coefficient
    }

    #[test]
    fn sqrt2_arithmetic() {
        let k = NumberField::new(p(&[-2, 0, 1])).unwrap(); // Q(sqrt 2)
        let s = k.from_poly(&p(&[0, 1])); // sqrt 2
        assert_eq!(s.clone() * s.clone(), k.from_rational(rat_int(2)));
        // (1 + sqrt2)(1 - sqrt2) = -1
        let a = k.from_poly(&p(&[1, 1]));
        let b = k.from_poly(&p(&[1, -1]));
        assert_eq!(a * b, k.from_rational(rat_int(-1)));
    }

    #[test]
    fn inverse_is_exact() {
        let k = NumberField::new(p(&[-2, 0, 0, 1])).unwrap(); // Q(cbrt 2)
        let a = k.from_poly(&p(&[1, 1, 0])); // 1 + cbrt2
        let inv = a.inv().unwrap();
        assert_eq!(a * inv, k.one());
        assert!(k.zero().inv().is_err());
    }

    #[test]
    fn multiplication_matrix_of_sqrt2() {
        let k = NumberField::new(p(&[-2, 0, 1])).unwrap();
        let s = k.from_poly(&p(&[0, 1]));
        // multiplication by sqrt2 in basis {1, sqrt2}: [[0, 2], [1, 0]]
        let m = s.multiplication_matrix();
        assert_eq!(m[0], vec![rat_int(0), rat_int(2)]);
        assert_eq!(m[1], vec![rat_int(1), rat_int(0)]);
    }
}
