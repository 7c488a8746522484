//! Valuation length functions on special linear matrices.
//!
//! For `g ∈ SL(n, K)` and a discrete valuation `ν` on `K`, the length is
//!
//! ```text
//! l(g) = −min over i,j of { ν(g_ij), ν(g⁻¹_ij) }
//! ```
//!
//! which satisfies `l(1) = 0`, `l(g) = l(g⁻¹)` and `l(gh) ≤ l(g) + l(h)`,
//! hence induces the pseudometric `dist(g, h) = l(g⁻¹h)`. For uni-upper-
//! triangular matrices there is the finer ultrametric-style length
//!
//! ```text
//! l̃(g) = −min over i<j of { 0, ν(g_ij) / 2^(j−i−1) }
//! ```
//!
//! with `l̃(gh) ≤ max(l̃(g), l̃(h))` and the sandwich `l̃ ≤ l ≤ 2·l̃`.

use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::matrix::EMat;
use crate::scalar::{rat_pow, rat_int, Rational};
use crate::valuation::Valuation;
use num_traits::Zero;

/// Minimum finite valuation over the nonzero entries of the given matrices.
/// Zero entries have valuation `+∞` and never attain the minimum (every
/// invertible matrix has a nonzero entry in each row).
fn min_entry_valuation(v: &Valuation, mats: &[&EMat]) -> Result<i64> {
    let mut min_val: Option<i64> = None;
    for m in mats {
        for e in m.entries() {
            if e.is_zero_elem() {
                continue;
            }
            match v.valuate(e)? {
                ExtInt::Finite(k) => {
                    min_val = Some(min_val.map_or(k, |cur| cur.min(k)));
                }
                ExtInt::Infinity => unreachable!("nonzero element valuates finitely"),
            }
        }
    }
    Ok(min_val.expect("invertible matrix has a nonzero entry"))
}

/// `l(g) = −min { ν(g_ij), ν(g⁻¹_ij) }` for `g ∈ SL(n, K)`.
pub fn length(v: &Valuation, g: &EMat) -> Result<ExtInt> {
    g.require_special_linear()?;
    let inv = g.inverse()?;
    let m = min_entry_valuation(v, &[g, &inv])?;
    Ok(ExtInt::Finite(-m))
}

/// `l̃(g) = −min { 0, ν(g_ij)/2^(j−i−1) : i < j }` for uni-upper-triangular
/// `g`, as an exact rational (the superdiagonal weights leave ℤ).
pub fn tilde_length(v: &Valuation, g: &EMat) -> Result<Rational> {
    if !g.is_uni_upper_triangular() {
        return Err(Error::NotUnipotentForm);
    }
    let mut min_val = Rational::zero();
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            let e = g.get(i, j);
            if e.is_zero_elem() {
                continue;
            }
            let ExtInt::Finite(k) = v.valuate(e)? else {
                unreachable!("nonzero element valuates finitely");
            };
            let weight = rat_pow(&rat_int(2), -((j - i - 1) as i64));
            let candidate = rat_int(k) * weight;
            if candidate < min_val {
                min_val = candidate;
            }
        }
    }
    Ok(-min_val)
}

/// `dist(g, h) = l(g⁻¹h)` — a pseudometric: `dist(g, h) = 0` does not force
/// `g = h`.
pub fn pseudometric(v: &Valuation, g: &EMat, h: &EMat) -> Result<ExtInt> {
    g.require_special_linear()?;
    length(v, &(&g.inverse()? * h))
}

/// The coarse version of a diagonal matrix: each diagonal entry is replaced
/// by `π^(ν(entry))`. The result is at pseudometric distance zero from the
/// input.
pub fn diagonal_coarse(v: &Valuation, g: &EMat) -> Result<EMat> {
    if !g.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    g.require_special_linear()?;
    let mut out = EMat::identity(g.n());
    for i in 0..g.n() {
        let ExtInt::Finite(k) = v.valuate(g.get(i, i))? else {
            unreachable!("diagonal entries of an invertible matrix are nonzero");
        };
        out.set(i, i, v.uniformizer_power(k));
    }
    out.promoted_like(&v.uniformizer())
}

/// Executable witness of the elementary inequality behind the sandwich
/// `l̃ ≤ l ≤ 2·l̃`: for any rationals `a`, `b`,
/// `−min{0, a, b/2} ≤ −min{0, a, b} ≤ −2·min{0, a, b/2}`.
/// Always true; exposed so property suites can exercise it directly.
pub fn check_inequality_lemma(a: &Rational, b: &Rational) -> bool {
    let zero = Rational::zero();
    let half_b = b / rat_int(2);
    let weighted_min = zero.clone().min(a.clone()).min(half_b);
    let plain_min = zero.min(a.clone()).min(b.clone());
    let lhs = -weighted_min.clone();
    let mid = -plain_min;
    let rhs = -rat_int(2) * weighted_min;
    lhs <= mid && mid <= rhs
}
