//! Exact square matrices over a generic ring or field.
//!
//! Determinants are available over any ring (cofactor expansion — all
//! matrices here are desk-scale); inverses, ranks and linear solves need a
//! field and use fraction-free-enough Gaussian elimination with exact
//! arithmetic.

use crate::elem::{FieldElem, FieldFamily};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Field, Rational, Ring};
use num_traits::One;
use std::fmt;
use std::ops::Mul;

#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    n: usize,
    entries: Vec<T>, // row-major
}

/// Matrices over plain rationals.
pub type QMat = Mat<Rational>;
/// Matrices over the working scalar union — the common case.
pub type EMat = Mat<FieldElem>;

impl<T: Ring> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Validation(format!(
                "matrix rows must form a nonempty square, got {} rows",
                n
            )));
        }
        Ok(Mat {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![T::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = T::one();
        }
        Mat { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// True when every entry below the diagonal is zero and every diagonal
    /// entry is one.
    pub fn is_uni_upper_triangular(&self) -> bool {
        for i in 0..self.n {
            if !self.get(i, i).is_one() {
                return false;
            }
            for j in 0..i {
                if !self.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_diagonal(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && !self.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                out.entries[j * self.n + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// The submatrix on the given row and column index sets (used for minor
    /// enumeration). Indices must be strictly ascending.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat<T> {
        debug_assert_eq!(rows.len(), cols.len());
        let k = rows.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        Mat { n: k, entries }
    }

    /// Determinant by cofactor expansion along the first column; works over
    /// any ring. Exponential in `n`, which is fine at the sizes used here.
    pub fn det(&self) -> T {
        match self.n {
            1 => self.entries[0].clone(),
            2 => {
                self.get(0, 0).clone() * self.get(1, 1).clone()
                    - self.get(0, 1).clone() * self.get(1, 0).clone()
            }
            _ => {
                let mut acc = T::zero();
                let rest: Vec<usize> = (1..self.n).collect();
                for i in 0..self.n {
                    if self.get(i, 0).is_zero() {
                        continue;
                    }
                    let rows: Vec<usize> = (0..self.n).filter(|&r| r != i).collect();
                    let minor = self.submatrix(&rows, &rest).det();
                    let term = self.get(i, 0).clone() * minor;
                    acc = if i % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }

    /// The characteristic polynomial `det(λ·I − g)`, monic of degree n,
    /// computed exactly over the polynomial ring.
    pub fn char_poly(&self) -> Poly<T> {
        let lambda = Poly::monomial(T::one(), 1);
        let lifted: Mat<Poly<T>> = Mat {
            n: self.n,
            entries: (0..self.n * self.n)
                .map(|idx| {
                    let i = idx / self.n;
                    let j = idx % self.n;
                    let e = Poly::constant(-self.entries[idx].clone());
                    if i == j {
                        e + lambda.clone()
                    } else {
                        e
                    }
                })
                .collect(),
        };
        lifted.det()
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.n {
            acc = acc + self.get(i, i).clone();
        }
        acc
    }
}

impl<T: Field> Mat<T> {
    /// Gaussian elimination with exact pivoting. Returns `(rank, det)`.
    fn eliminate(&self) -> (usize, T) {
        let n = self.n;
        let mut m = self.entries.clone();
        let mut det = T::one();
        let mut sign_flip = false;
        let mut rank = 0;
        for col in 0..n {
            let pivot_row = (rank..n).find(|&r| !m[r * n + col].is_zero());
            let Some(pr) = pivot_row else {
                continue;
            };
            if pr != rank {
                for j in 0..n {
                    m.swap(pr * n + j, rank * n + j);
                }
                sign_flip = !sign_flip;
            }
            let pivot = m[rank * n + col].clone();
            det = det * pivot.clone();
            let pinv = pivot.inv().expect("pivot is nonzero");
            for r in rank + 1..n {
                let factor = m[r * n + col].clone() * pinv.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let sub = factor.clone() * m[rank * n + j].clone();
                    m[r * n + j] = m[r * n + j].clone() - sub;
                }
            }
            rank += 1;
        }
        if rank < n {
            det = T::zero();
        } else if sign_flip {
            det = -det;
        }
        (rank, det)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    /// Determinant via elimination — cheaper than cofactors for n ≥ 4 over
    /// a field.
    pub fn det_field(&self) -> T {
        self.eliminate().1
    }

    /// Exact inverse by Gauss-Jordan on the augmented system.
    pub fn inverse(&self) -> Result<Mat<T>> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut b = Mat::<T>::identity(n).entries;
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !a[r * n + col].is_zero());
            let Some(pr) = pivot_row else {
                return Err(Error::SingularMatrix);
            };
            if pr != col {
                for j in 0..n {
                    a.swap(pr * n + j, col * n + j);
                    b.swap(pr * n + j, col * n + j);
                }
            }
            let pinv = a[col * n + col].clone().inv().expect("pivot is nonzero");
            for j in 0..n {
                a[col * n + j] = a[col * n + j].clone() * pinv.clone();
                b[col * n + j] = b[col * n + j].clone() * pinv.clone();
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let s = factor.clone() * a[col * n + j].clone();
                    a[r * n + j] = a[r * n + j].clone() - s;
                    let s = factor.clone() * b[col * n + j].clone();
                    b[r * n + j] = b[r * n + j].clone() - s;
                }
            }
        }
        Ok(Mat { n, entries: b })
    }

    /// Rank of a (possibly non-square) stack of row vectors — the helper
    /// behind every rational-rank computation.
    pub fn row_rank(rows: &[Vec<T>]) -> usize {
        if rows.is_empty() {
            return 0;
        }
        let width = rows.iter().map(|r| r.len()).max().unwrap();
        let mut m: Vec<Vec<T>> = rows
            .iter()
            .map(|r| {
                let mut row = r.clone();
                row.resize(width, T::zero());
                row
            })
            .collect();
        let mut rank = 0;
        for col in 0..width {
            let Some(pr) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(pr, rank);
            let pinv = m[rank][col].clone().inv().expect("pivot is nonzero");
            for r in rank + 1..m.len() {
                let factor = m[r][col].clone() * pinv.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..width {
                    let s = factor.clone() * m[rank][j].clone();
                    m[r][j] = m[r][j].clone() - s;
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }
}

impl Mat<FieldElem> {
    /// The field family of the entries, or `None` when every entry is a
    /// plain rational (which embeds anywhere).
    pub fn family_exemplar(&self) -> Option<&FieldElem> {
        self.entries
            .iter()
            .find(|e| e.family() != FieldFamily::Rational)
    }

    /// Promotes every entry into the family of `exemplar` (no-op for
    /// matrices already in that family).
    pub fn promoted_like(&self, exemplar: &FieldElem) -> Result<Mat<FieldElem>> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.promoted_like(exemplar))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat {
            n: self.n,
            entries,
        })
    }

    /// Checks `det = 1` exactly.
    pub fn require_special_linear(&self) -> Result<()> {
        let d = self.det();
        if d.is_one() {
            Ok(())
        } else {
            Err(Error::NotSpecialLinear(d.to_string()))
        }
    }

    /// Canonical printed form, `[[a, b], [c, d]]`; doubles as the
    /// deduplication key in word-ball enumeration.
    pub fn canonical_string(&self) -> String {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let cells: Vec<String> =
                    (0..self.n).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl fmt::Display for Mat<FieldElem> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

impl<T: Ring> Mul for Mat<T> {
    type Output = Mat<T>;

    fn mul(self, rhs: Self) -> Mat<T> {
        &self * &rhs
    }
}

impl<T: Ring> Mul for &Mat<T> {
    type Output = Mat<T>;

    fn mul(self, rhs: Self) -> Mat<T> {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = T::zero();
                for k in 0..n {
                    if self.get(i, k).is_zero() || rhs.get(k, j).is_zero() {
                        continue;
                    }
                    acc = acc + self.get(i, k).clone() * rhs.get(k, j).clone();
                }
                entries.push(acc);
            }
        }
        Mat { n, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::RatFunc;
    use crate::scalar::{rat, rat_int};

    fn qm(rows: &[&[i64]]) -> EMat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| FieldElem::from_int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn construction_validates_shape() {
        assert!(Mat::from_rows(vec![vec![FieldElem::from_int(1)], vec![]]).is_err());
        assert!(Mat::<FieldElem>::from_rows(vec![]).is_err());
    }

    #[test]
    fn multiplication() {
        let a = qm(&[&[1, 2], &[3, 4]]);
        let b = qm(&[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &b, qm(&[&[2, 1], &[4, 3]]));
        assert_eq!(&a * &Mat::identity(2), a);
    }

    #[test]
    fn determinants() {
        assert_eq!(qm(&[&[1, 2], &[3, 4]]).det(), FieldElem::from_int(-2));
        assert_eq!(
            qm(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 4]]).det(),
            FieldElem::from_int(24)
        );
        let m = qm(&[&[1, 2, 3, 4], &[0, 1, 2, 3], &[0, 0, 1, 2], &[5, 0, 0, 1]]);
        assert_eq!(m.det(), m.det_field());
    }

    #[test]
    fn inverse_round_trips() {
        let m = qm(&[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!((&inv * &m).is_identity());
        // [[1,z],[0,1]]^-1 = [[1,-z],[0,1]]
        let u = qm(&[&[1, 7], &[0, 1]]);
        assert_eq!(u.inverse().unwrap(), qm(&[&[1, -7], &[0, 1]]));
        // rotation inverse
        let s = qm(&[&[0, -1], &[1, 0]]);
        assert_eq!(s.inverse().unwrap(), qm(&[&[0, 1], &[-1, 0]]));
        assert_eq!(
            qm(&[&[1, 2], &[2, 4]]).inverse(),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn char_poly_cases() {
        // identity: (λ-1)^2 = λ^2 - 2λ + 1
        let cp = Mat::<FieldElem>::identity(2).char_poly();
        assert_eq!(
            cp.coeffs().to_vec(),
            vec![
                FieldElem::from_int(1),
                FieldElem::from_int(-2),
                FieldElem::from_int(1)
            ]
        );
        // rotation: λ^2 + 1
        let cp = qm(&[&[0, -1], &[1, 0]]).char_poly();
        assert_eq!(
            cp.coeffs().to_vec(),
            vec![
                FieldElem::from_int(1),
                FieldElem::from_int(0),
                FieldElem::from_int(1)
            ]
        );
        // diag(t, 1/t): λ^2 - (t + 1/t)λ + 1
        let t = FieldElem::RatFunc(RatFunc::var());
        let tinv = t.clone().try_inv().unwrap();
        let m = Mat::from_rows(vec![
            vec![t.clone(), FieldElem::from_int(0)],
            vec![FieldElem::from_int(0), tinv.clone()],
        ])
        .unwrap();
        let cp = m.char_poly();
        assert_eq!(cp.coeff(2), FieldElem::from_int(1));
        assert_eq!(cp.coeff(1), -(t + tinv));
        assert_eq!(cp.coeff(0), FieldElem::from_int(1));
    }

    #[test]
    fn rank_and_row_rank() {
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(qm(&[&[1, 0], &[0, 1]]).rank(), 2);
        let rows = vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat(1, 2), rat(1, 2)],
            vec![rat_int(0), rat_int(1)],
        ];
        assert_eq!(QMat::row_rank(&rows), 2);
        assert_eq!(QMat::row_rank(&[]), 0);
    }

    #[test]
    fn shape_predicates() {
        assert!(qm(&[&[1, 5], &[0, 1]]).is_uni_upper_triangular());
        assert!(!qm(&[&[1, 0], &[5, 1]]).is_uni_upper_triangular());
        assert!(!qm(&[&[2, 0], &[0, 1]]).is_uni_upper_triangular());
        assert!(qm(&[&[2, 0], &[0, 1]]).is_diagonal());
        assert!(!qm(&[&[1, 1], &[0, 1]]).is_diagonal());
    }

    #[test]
    fn special_linear_gate() {
        assert!(qm(&[&[1, 5], &[0, 1]]).require_special_linear().is_ok());
        assert!(matches!(
            qm(&[&[2, 0], &[0, 1]]).require_special_linear(),
            Err(Error::NotSpecialLinear(_))
        ));
    }

    #[test]
    fn canonical_strings() {
        let m = Mat::from_rows(vec![
            vec![FieldElem::from_int(1), FieldElem::Rational(rat(1, 2))],
            vec![FieldElem::from_int(0), FieldElem::from_int(1)],
        ])
        .unwrap();
        assert_eq!(m.canonical_string(), "[[1, 1/2], [0, 1]]");
    }

    #[test]
    fn trace() {
        assert_eq!(qm(&[&[1, 2], &[3, 4]]).trace(), FieldElem::from_int(5));
    }
}
