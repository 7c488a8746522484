//! The trace-form linearization of an irreducible matrix group.
//!
//! When the group generated by `S` acts irreducibly, its elements span the
//! full matrix algebra, so some `n²` of them form a linear basis
//! `g₁,…,g_{n²}` (found greedily over the word ball). The trace form
//! `⟨x, y⟩ = tr(xy)` is nondegenerate on the matrix algebra, so the Gram
//! matrix `G_jk = tr(g_j g_k)` is invertible and left multiplication by any
//! `γ` is captured exactly through traces: solving
//! `tr(γ g_i g_k) = Σ_j α_ij tr(g_j g_k)` recovers the matrix of
//! `x ↦ γx` in the chosen basis, a faithful multiplicative representation
//! `α` whose entries involve only ring operations and Gauss-Jordan
//! elimination over the traces.

use crate::elem::{FieldElem, FieldFamily};
use crate::error::{Error, Result};
use crate::matrix::{EMat, Mat, QMat};
use crate::scalar::is_integer;
use crate::valuation::Valuation;
use crate::wordball::{word_ball_capped, GeneratorSet, DEFAULT_ELEMENT_CAP};

/// A linear basis of the matrix algebra drawn from the group, with the
/// trace Gram matrix and its exact inverse cached for repeated `α` solves.
#[derive(Debug, Clone)]
pub struct TraceBasis {
    basis: Vec<EMat>,
    words: Vec<Vec<usize>>,
    gram: EMat,
    gram_inv: EMat,
    n: usize,
}

impl TraceBasis {
    pub fn basis(&self) -> &[EMat] {
        &self.basis
    }

    /// Generator-index words producing the basis elements.
    pub fn words(&self) -> &[Vec<usize>] {
        &self.words
    }

    pub fn gram(&self) -> &EMat {
        &self.gram
    }

    /// Dimension of the underlying matrices (the basis has `n²` members).
    pub fn n(&self) -> usize {
        self.n
    }
}

fn flatten(m: &EMat) -> Vec<FieldElem> {
    m.entries().to_vec()
}

/// Greedy Burnside basis search: walk the word ball in breadth-first order
/// and keep every element that enlarges the flattened span, stopping at
/// rank `n²`. If the rank plateaus across two consecutive word-length
/// increments (or the group is exhausted) below `n²`, the action is
/// reducible and the search fails with [`Error::NotIrreducible`]; an
/// undecided search at the cap fails with [`Error::Unsupported`].
pub fn burnside_basis(s: &GeneratorSet, max_word_len: usize) -> Result<TraceBasis> {
    let n = s.n();
    let target = n * n;
    let ball = word_ball_capped(s, max_word_len, DEFAULT_ELEMENT_CAP)?;
    let mut basis: Vec<EMat> = Vec::with_capacity(target);
    let mut words: Vec<Vec<usize>> = Vec::with_capacity(target);
    let mut rows: Vec<Vec<FieldElem>> = Vec::with_capacity(target);
    let mut rank = 0usize;
    let mut rank_at_len: Vec<usize> = Vec::new(); // rank after finishing each length
    let mut current_len = 0usize;
    for e in ball.iter_discovery() {
        if e.len > current_len {
            for _ in current_len..e.len {
                rank_at_len.push(rank);
            }
            current_len = e.len;
            let l = rank_at_len.len();
            if rank < target
                && l >= 2
                && rank_at_len[l - 1] == rank_at_len[l - 2]
                && rank_at_len[l - 1] == rank
            {
                return Err(Error::NotIrreducible(format!(
                    "matrix span plateaued at rank {rank} < {target} \
                     across two word-length increments"
                )));
            }
        }
        let mut tentative = rows.clone();
        tentative.push(flatten(&e.mat));
        let r = Mat::<FieldElem>::row_rank(&tentative);
        if r > rank {
            rank = r;
            rows = tentative;
            basis.push(e.mat.clone());
            words.push(e.word.clone());
            if rank == target {
                break;
            }
        }
    }
    if rank < target {
        // the ball stopped growing before the cap iff the whole group was
        // enumerated, which settles reducibility definitively
        let exhausted = {
            let larger = word_ball_capped(s, ball.radius() + 1, DEFAULT_ELEMENT_CAP)?;
            larger.len() == ball.len()
        };
        if exhausted {
            return Err(Error::NotIrreducible(format!(
                "the whole group spans only rank {rank} < {target}"
            )));
        }
        return Err(Error::Unsupported(format!(
            "basis search undecided at word length {max_word_len}: rank {rank} < {target} \
             but still growing; raise the cap"
        )));
    }
    let mut gram_rows = Vec::with_capacity(target);
    for gi in &basis {
        let mut row = Vec::with_capacity(target);
        for gk in &basis {
            row.push((gi * gk).trace());
        }
        gram_rows.push(row);
    }
    let gram = Mat::from_rows(gram_rows)?;
    let gram_inv = gram
        .inverse()
        .expect("trace form is nondegenerate on the full matrix algebra");
    Ok(TraceBasis {
        basis,
        words,
        gram,
        gram_inv,
        n,
    })
}

/// The matrix of left multiplication `x ↦ γx` in the trace basis: entry
/// `(j, i)` is the coefficient of `g_j` in `γ·g_i`, recovered exactly from
/// the trace system `tr(γ g_i g_k) = Σ_j c_ij tr(g_j g_k)`. Multiplicative
/// and faithful; `α(1) = 1`.
pub fn alpha(gamma: &EMat, tb: &TraceBasis) -> Result<EMat> {
    if gamma.n() != tb.n {
        return Err(Error::Validation(format!(
            "matrix of dimension {} against a trace basis for dimension {}",
            gamma.n(),
            tb.n
        )));
    }
    let target = tb.n * tb.n;
    let mut b_rows = Vec::with_capacity(target);
    for gi in &tb.basis {
        let gamma_gi = gamma * gi;
        let mut row = Vec::with_capacity(target);
        for gk in &tb.basis {
            row.push((&gamma_gi * gk).trace());
        }
        b_rows.push(row);
    }
    let b = Mat::from_rows(b_rows)?;
    // row i of B·G⁻¹ lists the coordinates of γ·g_i in the basis; the
    // transpose is the (covariant) operator matrix, which multiplies in
    // the same order as γ does
    Ok((&b * &tb.gram_inv).transpose())
}

/// Whether every coefficient of the characteristic polynomial of `g` is an
/// algebraic integer, tested per field family: integers for rational
/// entries; for rational-function entries, integrality at both the order
/// valuations (at zero and at infinity) plus integer Laurent coefficients,
/// which together force constant integers; for number-field entries,
/// integrality of the characteristic polynomial of the coefficient's
/// multiplication operator.
pub fn integral_characteristic(g: &EMat) -> Result<bool> {
    let exemplar = g
        .family_exemplar()
        .cloned()
        .unwrap_or_else(|| FieldElem::from_int(0));
    let coeffs: Vec<FieldElem> = g
        .char_poly()
        .coeffs()
        .iter()
        .map(|c| c.promoted_like(&exemplar))
        .collect::<Result<Vec<_>>>()?;
    match exemplar.family() {
        FieldFamily::Rational => Ok(coeffs
            .iter()
            .all(|c| is_integer(c.as_rational().expect("promoted to rational")))),
        FieldFamily::RationalFunction => {
            for c in &coeffs {
                let f = c.as_ratfunc().expect("promoted to rational function");
                let at_zero = Valuation::OrderAtZero.is_integral(c)?;
                let at_infinity = Valuation::OrderAtInfinity.is_integral(c)?;
                if !(at_zero && at_infinity && f.is_integer_laurent()) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        FieldFamily::Algebraic => {
            for c in &coeffs {
                let a = c.as_algelem().expect("promoted to algebraic");
                let mult = QMat::from_rows(a.multiplication_matrix())?;
                if !mult.char_poly().coeffs().iter().all(is_integer) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        FieldFamily::Multivariate => Err(Error::Unsupported(
            "integral characteristic over multivariate polynomial entries".into(),
        )),
    }
}
