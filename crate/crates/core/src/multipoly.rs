//! Sparse multivariate polynomials with rational coefficients.
//!
//! Terms are keyed by exponent vectors with trailing zeros trimmed, so the
//! variable arity is implicit: a polynomial in `t1` and one in `t1, t2`
//! combine without any arity bookkeeping. Variables are indexed from zero
//! (`t1` is index 0).

use crate::error::{Error, Result};
use crate::scalar::Rational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiPoly {
    /// exponent vector (trailing zeros trimmed) -> nonzero coefficient
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn trim(mut key: Vec<u32>) -> Vec<u32> {
    while key.last() == Some(&0) {
        key.pop();
    }
    key
}

impl MultiPoly {
    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![], c);
        }
        MultiPoly { terms }
    }

    /// The variable with 0-based index `i` (printed as `t{i+1}`).
    pub fn var(i: usize) -> Self {
        let mut key = vec![0u32; i + 1];
        key[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(key, Rational::one());
        MultiPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut out = MultiPoly::default();
        for (key, c) in terms {
            out.add_term(key, c);
        }
        out
    }

    fn add_term(&mut self, key: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = trim(key);
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Number of variables actually present (max index + 1).
    pub fn arity(&self) -> usize {
        self.terms.keys().map(|k| k.len()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[] as &[u32]).cloned(),
            _ => None,
        }
    }

    /// Renames every variable `t{i}` to `t{i + offset}`; used to give each
    /// row of an independence determinant its own fresh block of variables.
    pub fn shift_vars(&self, offset: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(key, c)| {
                let mut shifted = vec![0u32; key.len() + offset];
                shifted[offset..].copy_from_slice(key);
                (shifted, c.clone())
            })
            .collect();
        MultiPoly { terms }
    }

    /// Largest exponent of variable `i` across all terms.
    pub fn max_degree_of(&self, i: usize) -> u32 {
        self.terms
            .keys()
            .map(|k| k.get(i).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Total degree of the largest term, zero for constants.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|k| k.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Evaluates at a full point; errors if the point has fewer coordinates
    /// than the polynomial has variables.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() < self.arity() {
            return Err(Error::Validation(format!(
                "evaluation point has {} coordinates, polynomial uses {}",
                point.len(),
                self.arity()
            )));
        }
        let mut acc = Rational::zero();
        for (key, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in key.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        Ok(acc)
    }
}

/// Canonical literal form: terms by descending total degree (ties broken by
/// descending exponent vector), variables printed `t1, t2, ...`.
impl std::fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use num_traits::Signed;
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        let mut first = true;
        for key in keys {
            let c = &self.terms[key];
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
            let vars: Vec<String> = key
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("t{}", i + 1)
                    } else {
                        format!("t{}^{}", i + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", crate::scalar::rational_string(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", crate::scalar::rational_string(&mag))?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;

    fn add(mut self, rhs: Self) -> MultiPoly {
        for (key, c) in rhs.terms {
            self.add_term(key, c);
        }
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: Self) -> MultiPoly {
        self + (-rhs)
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: Self) -> MultiPoly {
        let mut out = MultiPoly::default();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let mut key = vec![0u32; ka.len().max(kb.len())];
                for (i, e) in ka.iter().enumerate() {
                    key[i] += e;
                }
                for (i, e) in kb.iter().enumerate() {
                    key[i] += e;
                }
                out.add_term(key, ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    #[test]
    fn constants_and_vars() {
        assert!(MultiPoly::constant(rat_int(0)).is_zero());
        assert_eq!(MultiPoly::var(0).arity(), 1);
        assert_eq!(MultiPoly::var(2).arity(), 3);
        assert_eq!(MultiPoly::one().is_constant(), Some(rat_int(1)));
    }

    #[test]
    fn arithmetic_cancels() {
        let t1 = MultiPoly::var(0);
        let t2 = MultiPoly::var(1);
        // (t1 + t2)(t1 - t2) = t1^2 - t2^2
        let prod = (t1.clone() + t2.clone()) * (t1.clone() - t2.clone());
        let expect = t1.clone() * t1.clone() - t2.clone() * t2.clone();
        assert_eq!(prod, expect);
        assert_eq!(prod.num_terms(), 2);
    }

    #[test]
    fn shift_renames_variables() {
        let p = MultiPoly::var(0) * MultiPoly::var(0) + MultiPoly::var(1);
        let q = p.shift_vars(2);
        assert_eq!(q.arity(), 4);
        let expect = MultiPoly::var(2) * MultiPoly::var(2) + MultiPoly::var(3);
        assert_eq!(q, expect);
    }

    #[test]
    fn evaluation() {
        // 2*t1^2*t2 - 1/2 at (3, 4) = 72 - 1/2
        let p = MultiPoly::from_terms([(vec![2, 1], rat_int(2)), (vec![], rat(-1, 2))]);
        assert_eq!(p.eval(&[rat_int(3), rat_int(4)]).unwrap(), rat(143, 2));
        assert!(p.eval(&[rat_int(3)]).is_err());
    }

    #[test]
    fn degrees() {
        let p = MultiPoly::from_terms([(vec![2, 1], rat_int(1)), (vec![0, 3], rat_int(1))]);
        assert_eq!(p.max_degree_of(0), 2);
        assert_eq!(p.max_degree_of(1), 3);
        assert_eq!(p.total_degree(), 3);
    }

    #[test]
    fn display_canonical() {
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!(MultiPoly::var(1).to_string(), "t2");
        let p = MultiPoly::from_terms([
            (vec![2], rat_int(1)),
            (vec![1, 1], rat_int(-2)),
            (vec![], rat(1, 2)),
        ]);
        assert_eq!(p.to_string(), "t1^2 - 2*t1*t2 + 1/2");
    }
}
