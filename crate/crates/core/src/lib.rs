//! Exact discrete valuations, lattice-class trees, and displacement
//! diagnostics for finitely generated matrix groups.
//!
//! The crate computes everything over exact scalars: arbitrary-precision
//! rationals, rational functions, number-field elements, and multivariate
//! polynomials, wrapped in the [`FieldElem`] union. On top of that sit
//! discrete valuations ([`Valuation`]), word balls in matrix groups, the
//! lattice-class tree for rank-two groups, matrix length functions,
//! unipotent rank bounds, the trace-form linearization of a matrix group,
//! and integrality certificates for vertex stabilizers.

pub mod algext;
pub mod alperin_shalen;
pub mod bttree;
pub mod elem;
pub mod error;
pub mod extint;
pub mod length;
pub mod literal;
pub mod matrix;
pub mod multipoly;
pub mod poly;
pub mod probe;
pub mod ratfunc;
pub mod scalar;
pub mod scenario;
pub mod tracerep;
pub mod unipotent;
pub mod valuation;
pub mod wordball;

pub use algext::{AlgElem, NumberField};
pub use elem::{FieldElem, FieldFamily};
pub use error::{Error, Result};
pub use extint::ExtInt;
pub use matrix::{EMat, Mat, QMat};
pub use multipoly::MultiPoly;
pub use poly::{Poly, UniPoly};
pub use ratfunc::RatFunc;
pub use scalar::{Field, Integer, Rational, Ring};
