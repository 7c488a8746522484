//! Scalar traits and exact base types.
//!
//! Everything in this crate computes exactly: the working scalars are
//! arbitrary-precision rationals, rational functions, number-field elements
//! and multivariate polynomials. The `Ring`/`Field` traits below capture the
//! operations the generic containers (`Poly<T>`, `Mat<T>`) need, bounded by
//! the `num-traits` identities.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use std::fmt::Debug;
use std::ops::{Div, Neg, Sub};

pub type Integer = BigInt;
pub type Rational = num_rational::Ratio<BigInt>;

/// A commutative ring with exact equality. Implemented automatically by any
/// type with the listed operations, including all scalars in this crate.
pub trait Ring:
    Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + Debug + Zero + One + Neg<Output = Self> + Sub<Output = Self>
{
}

/// A ring in which every nonzero element is invertible. Division by zero is
/// a caller bug and panics; use [`Field::inv`] for a checked inverse.
pub trait Field: Ring + Div<Output = Self> {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one() / self.clone())
        }
    }
}

impl<T> Field for T where T: Ring + Div<Output = Self> {}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for a nonzero rational base and any integer exponent.
pub fn rat_pow(base: &Rational, exp: i64) -> Rational {
    assert!(!base.is_zero() || exp >= 0, "zero to a negative power");
    let positive = num_traits::pow::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp >= 0 {
        positive
    } else {
        positive.recip()
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Canonical literal form: `a/b` in lowest terms, or just `a` for integers.
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Multiplicity of the prime `p` in a nonzero integer.
pub fn int_multiplicity(n: &BigInt, p: &BigInt) -> i64 {
    assert!(!n.is_zero(), "multiplicity of zero is undefined");
    let mut count = 0i64;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return count;
        }
        count += 1;
        m = q;
    }
}

/// Deterministic primality by trial division; valuations only ever use
/// desk-scale primes.
pub fn is_prime(p: &BigInt) -> bool {
    let two = BigInt::from(2);
    if p < &two {
        return false;
    }
    if p == &two {
        return true;
    }
    if p.is_even() {
        return false;
    }
    let mut d = BigInt::from(3);
    while &d * &d <= *p {
        if (p % &d).is_zero() {
            return false;
        }
        d += 2;
    }
    true
}

/// All divisors of a nonzero integer, positive and negative, ascending by
/// magnitude. Used by the factor-candidate enumeration in irreducibility
/// checks, so inputs are small by construction.
pub fn signed_divisors(n: &BigInt) -> Vec<BigInt> {
    let m = n.abs();
    assert!(!m.is_zero());
    let mut positive = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= m {
        if (&m % &d).is_zero() {
            positive.push(d.clone());
            let q = &m / &d;
            if q != d {
                positive.push(q);
            }
        }
        d += 1;
    }
    positive.sort();
    let mut out = Vec::with_capacity(positive.len() * 2);
    for d in positive {
        out.push(-&d);
        out.push(d);
    }
    out
}
