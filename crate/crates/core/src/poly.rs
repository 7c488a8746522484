//! Dense univariate polynomials over a generic ring.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so
//! structural equality is semantic equality and the zero polynomial is the
//! empty coefficient vector.

use crate::scalar::{Field, Rational, Ring};
use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

/// Polynomials with rational coefficients — the workhorse instantiation.
pub type UniPoly = Poly<Rational>;

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Poly::new(vec![]);
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The variable `t`.
    pub fn var() -> Self {
        Poly::monomial(T::one(), 1)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Index of the lowest nonzero coefficient, or `None` for zero.
    pub fn order_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    /// Multiplies by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }
}

impl<T: Field> Poly<T> {
    /// Scales to leading coefficient one. Panics on the zero polynomial.
    pub fn monic(&self) -> Self {
        let lead = self.leading().expect("monic of zero polynomial");
        let inv = lead.inv().expect("leading coefficient is nonzero");
        self.map(|c| c.clone() * inv.clone())
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    /// Panics if `d` is zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap().clone() * lead_inv.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                let sub = factor.clone() * dc.clone();
                rem[k + i] = rem[k + i].clone() - sub;
            }
            quot[k] = factor;
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact division; `None` if the remainder is nonzero.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic greatest common divisor (Euclid). `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended Euclid: returns `(g, u, v)` with `u*self + v*other = g`,
    /// `g` monic (or zero).
    pub fn extended_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = Poly::constant(T::one());
        let mut s1 = Poly::new(vec![]);
        let mut t0 = Poly::new(vec![]);
        let mut t1 = Poly::constant(T::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0 - q.clone() * s1.clone();
            let t = t0 - q * t1.clone();
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let lead_inv = r0.leading().unwrap().inv().unwrap();
        let scale = |p: Poly<T>| p.map(|c| c.clone() * lead_inv.clone());
        (scale(r0), scale(s0), scale(t0))
    }

    /// Multiplicity of the factor `d` in `self` (zero if coprime).
    /// Panics if `d` is constant or zero; returns 0 for `self = 0` callers
    /// must handle zero separately.
    pub fn multiplicity_of(&self, d: &Self) -> usize {
        assert!(
            d.degree().map_or(false, |k| k >= 1),
            "multiplicity of a constant factor"
        );
        let mut count = 0;
        let mut cur = self.clone();
        if cur.is_zero() {
            return 0;
        }
        while let Some(q) = cur.exact_div(d) {
            count += 1;
            cur = q;
        }
        count
    }
}

/// Canonical literal form: terms in descending degree, `3/2*t^2 - t + 1`.
impl std::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use num_traits::Signed;
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if k == 0 {
                write!(f, "{}", crate::scalar::rational_string(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", crate::scalar::rational_string(&mag))?;
                }
                if k == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl<T: Ring> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Ring> One for Poly<T> {
    fn one() -> Self {
        Poly::constant(T::one())
    }
}

impl<T: Ring> Add for Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: Self) -> Poly<T> {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (i, c) in short.into_iter().enumerate() {
            long[i] = long[i].clone() + c;
        }
        Poly::new(long)
    }
}

impl<T: Ring> Sub for Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: Self) -> Poly<T> {
        self + (-rhs)
    }
}

impl<T: Ring> Neg for Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<T: Ring> Mul for Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Field> Div for Poly<T> {
    type Output = Poly<T>;

    /// Exact division only; panics on a nonzero remainder. Use
    /// [`Poly::divrem`] for Euclidean division.
    fn div(self, rhs: Self) -> Poly<T> {
        self.exact_div(&rhs).expect("inexact polynomial division")
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
    fn trims_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
        assert_eq!(p(&[5]).degree(), Some(0));
    }

    #[test]
    fn arithmetic() {
        // (1 + t)(1 - t) = 1 - t^2
        assert_eq!(p(&[1, 1]) * p(&[1, -1]), p(&[1, 0, -1]));
        assert_eq!(p(&[1, 2]) + p(&[3, -2, 4]), p(&[4, 0, 4]));
        assert_eq!(p(&[1]) - p(&[1]), UniPoly::zero());
    }

    #[test]
    fn evaluation() {
        // 2 - t + 3t^2 at t = 2 is 12
        assert_eq!(p(&[2, -1, 3]).eval(&rat_int(2)), rat_int(12));
        assert_eq!(p(&[2, -1, 3]).eval(&rat(1, 2)), rat(9, 4));
    }

    #[test]
    fn division_with_remainder() {
        // t^3 - 1 = (t - 1)(t^2 + t + 1)
        let (q, r) = p(&[-1, 0, 0, 1]).divrem(&p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());

        // t^2 + 1 = t * t + 1
        let (q, r) = p(&[1, 0, 1]).divrem(&p(&[0, 1]));
        assert_eq!(q, p(&[0, 1]));
        assert_eq!(r, p(&[1]));
    }

    #[test]
    fn gcd_is_monic() {
        // gcd(2t^2 - 2, 4t - 4) = t - 1
        let g = p(&[-2, 0, 2]).gcd(&p(&[-4, 4]));
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(p(&[3]).gcd(&p(&[0, 7])), UniPoly::one());
    }

    #[test]
    fn extended_gcd_bezout() {
        let a = p(&[1, 0, 1]); // t^2 + 1
        let b = p(&[1, 1]); // t + 1
        let (g, u, v) = a.extended_gcd(&b);
        assert_eq!(g, UniPoly::one());
        assert_eq!(u * a + v * b, UniPoly::one());
    }

    #[test]
    fn multiplicity() {
        // t^2 (t - 1)^3
        let f = p(&[0, 0, 1]) * p(&[-1, 1]) * p(&[-1, 1]) * p(&[-1, 1]);
        assert_eq!(f.multiplicity_of(&p(&[0, 1])), 2);
        assert_eq!(f.multiplicity_of(&p(&[-1, 1])), 3);
        assert_eq!(f.multiplicity_of(&p(&[1, 1])), 0);
    }

    #[test]
    fn order_at_zero() {
        assert_eq!(p(&[0, 0, 3, 1]).order_at_zero(), Some(2));
        assert_eq!(p(&[7]).order_at_zero(), Some(0));
        assert_eq!(UniPoly::zero().order_at_zero(), None);
    }

    #[test]
    fn display_canonical() {
        assert_eq!(UniPoly::zero().to_string(), "0");
        assert_eq!(p(&[5]).to_string(), "5");
        assert_eq!(p(&[-5]).to_string(), "-5");
        assert_eq!(p(&[0, 1]).to_string(), "t");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
        assert_eq!(p(&[5, -1, 2]).to_string(), "2*t^2 - t + 5");
        assert_eq!(p(&[0, 0, 0, 1]).to_string(), "t^3");
        let half_t = Poly::new(vec![rat_int(0), rat(1, 2)]);
        assert_eq!(half_t.to_string(), "1/2*t");
        let mixed = Poly::new(vec![rat(-3, 2), rat_int(0), rat_int(1)]);
        assert_eq!(mixed.to_string(), "t^2 - 3/2");
    }
}
