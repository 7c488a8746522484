//! Composition-rank analysis of uni-upper-triangular matrix groups.
//!
//! The group of uni-upper-triangular matrices filters into layers: the k-th
//! layer map reads off the k-th superdiagonal of elements that vanish on
//! all lower superdiagonals, landing in a torsion-free abelian group whose
//! rank over ℚ is the layer's contribution. The module computes certified
//! lower bounds (ranks of entry tuples realized in a word ball) and upper
//! bounds (inductive span closure under the products that matrix
//! multiplication can form), plus the generalized Vandermonde determinant
//! that detects ℚ-linear independence symbolically and the finite-box
//! certificate it yields for bounded integer combinations.

use crate::elem::{FieldElem, FieldFamily};
use crate::error::{Error, Result};
use crate::matrix::{EMat, Mat, QMat};
use crate::multipoly::MultiPoly;
use crate::poly::UniPoly;
use crate::scalar::Rational;
use crate::wordball::{word_ball_capped, GeneratorSet, DEFAULT_ELEMENT_CAP};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// One layer of the unipotent filtration: the positions of the k-th
/// superdiagonal (0-indexed), with the top corner split off as the residual
/// layer.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerMap {
    /// Superdiagonal index: `j − i` for every position.
    pub k: usize,
    pub positions: Vec<(usize, usize)>,
    /// True for the final top-corner layer.
    pub residual: bool,
}

/// A ℚ-linearly independent basis for the values an entry position can
/// take.
#[derive(Debug, Clone)]
pub struct EntrySpan {
    pub position: (usize, usize),
    pub basis: Vec<FieldElem>,
}

/// Certified composition-rank bounds.
#[derive(Debug, Clone)]
pub struct RankBounds {
    pub lower: usize,
    pub upper: usize,
    /// Per layer: (layer, lower, upper).
    pub per_layer: Vec<(LayerMap, usize, usize)>,
    /// The word-length cap the lower bounds were computed at.
    pub saturation_length: usize,
}

/// Finite-box certificate: integer tuples whose row images under the span's
/// linear system stay within the bound form a box `|z_j| ≤ box_bounds[j]`.
#[derive(Debug, Clone)]
pub struct FinitenessCertificate {
    pub box_bounds: Vec<Rational>,
    /// Evaluation point (one rational per substituted variable) at which
    /// the independence determinant is nonzero.
    pub eval_point: Vec<Rational>,
    pub det_value: Rational,
}

/// Coordinate vectors of the given elements over a common ℚ-basis.
/// Rationals are one-dimensional; rational functions are compared after
/// clearing the common denominator; number-field elements use their
/// coordinate vectors; multivariate polynomials use their monomial support.
fn q_coords(elems: &[FieldElem]) -> Result<Vec<Vec<Rational>>> {
    if elems.is_empty() {
        return Ok(vec![]);
    }
    let exemplar = elems
        .iter()
        .find(|e| e.family() != FieldFamily::Rational)
        .cloned()
        .unwrap_or_else(|| elems[0].clone());
    let elems = elems
        .iter()
        .map(|e| e.promoted_like(&exemplar))
        .collect::<Result<Vec<_>>>()?;
    match &exemplar {
        FieldElem::Rational(_) => Ok(elems
            .iter()
            .map(|e| vec![e.as_rational().expect("promoted to rational").clone()])
            .collect()),
        FieldElem::RatFunc(_) => {
            let fs: Vec<_> = elems
                .iter()
                .map(|e| e.as_ratfunc().expect("promoted to rational function"))
                .collect();
            let common_den = fs.iter().fold(UniPoly::one(), |acc, f| {
                let g = acc.gcd(f.denominator());
                (acc * f.denominator().clone()) / g
            });
            let cleared: Vec<UniPoly> = fs
                .iter()
                .map(|f| {
                    let scale = common_den
                        .exact_div(f.denominator())
                        .expect("common denominator is a multiple");
                    f.numerator().clone() * scale
                })
                .collect();
            let width = cleared
                .iter()
                .map(|p| p.coeffs().len())
                .max()
                .unwrap_or(0);
            Ok(cleared
                .iter()
                .map(|p| {
                    let mut row = p.coeffs().to_vec();
                    row.resize(width, Rational::zero());
                    row
                })
                .collect())
        }
        FieldElem::AlgElem(_) => Ok(elems
            .iter()
            .map(|e| e.as_algelem().expect("promoted to algebraic").coords().to_vec())
            .collect()),
        FieldElem::MultiPoly(_) => {
            let ps: Vec<_> = elems
                .iter()
                .map(|e| e.as_multipoly().expect("promoted to polynomial"))
                .collect();
            let support: Vec<Vec<u32>> = ps
                .iter()
                .flat_map(|p| p.terms().map(|(k, _)| k.clone()))
                .sorted()
                .dedup()
                .collect();
            Ok(ps
                .iter()
                .map(|p| {
                    let coeffs: BTreeMap<&Vec<u32>, &Rational> = p.terms().collect();
                    support
                        .iter()
                        .map(|key| {
                            coeffs.get(key).map(|&c| c.clone()).unwrap_or_else(Rational::zero)
                        })
                        .collect()
                })
                .collect())
        }
    }
}

/// Rank over ℚ of the span of the given field elements (zero elements and
/// repetitions contribute nothing).
pub fn q_rank(elems: &[FieldElem]) -> Result<usize> {
    Ok(QMat::row_rank(&q_coords(elems)?))
}

/// Whether `x` lies in the ℚ-span of `basis`.
pub fn in_q_span(basis: &[FieldElem], x: &FieldElem) -> Result<bool> {
    let base_rank = q_rank(basis)?;
    let mut extended = basis.to_vec();
    extended.push(x.clone());
    Ok(q_rank(&extended)? == base_rank)
}

/// The layer structure of the n×n uni-upper-triangular group: full
/// superdiagonals for k = 1..n−2 and the top corner as the residual layer.
/// For n = 2 the single (0,1) position is the residual layer.
pub fn layer_decompose(n: usize) -> Result<Vec<LayerMap>> {
    if n < 2 {
        return Err(Error::Validation(format!(
            "layer decomposition needs dimension ≥ 2, got {n}"
        )));
    }
    let superdiag = |k: usize| -> Vec<(usize, usize)> {
        (0..n - k).map(|i| (i, i + k)).collect()
    };
    let mut layers: Vec<LayerMap> = (1..=n.saturating_sub(2))
        .map(|k| LayerMap {
            k,
            positions: superdiag(k),
            residual: false,
        })
        .collect();
    layers.push(LayerMap {
        k: n - 1,
        positions: superdiag(n - 1),
        residual: true,
    });
    Ok(layers)
}

fn require_unipotent_gens(s: &GeneratorSet) -> Result<()> {
    if s.gens().iter().any(|g| !g.is_uni_upper_triangular()) {
        return Err(Error::NotUnipotentForm);
    }
    Ok(())
}

/// Stacked ℚ-coordinates of entry tuples: slot-wise coordinates are
/// concatenated so tuple rank is an ordinary row rank.
fn tuple_rank(tuples: &[Vec<FieldElem>]) -> Result<usize> {
    if tuples.is_empty() {
        return Ok(0);
    }
    let width = tuples[0].len();
    let mut blocks: Vec<Vec<Vec<Rational>>> = Vec::with_capacity(width);
    for slot in 0..width {
        let column: Vec<FieldElem> = tuples.iter().map(|t| t[slot].clone()).collect();
        blocks.push(q_coords(&column)?);
    }
    let stacked: Vec<Vec<Rational>> = (0..tuples.len())
        .map(|i| blocks.iter().flat_map(|b| b[i].iter().cloned()).collect())
        .collect();
    Ok(QMat::row_rank(&stacked))
}

/// Certified lower bound for a layer's rank: enumerate the word ball to
/// length `cap_len`, keep the elements lying in the layer's subgroup (zero
/// on all lower superdiagonals), and take the ℚ-rank of their
/// superdiagonal-entry tuples. Monotone nondecreasing in `cap_len`.
pub fn entry_span_lower(
    s: &GeneratorSet,
    layer: &LayerMap,
    cap_len: usize,
) -> Result<(usize, Vec<Vec<FieldElem>>)> {
    require_unipotent_gens(s)?;
    let ball = word_ball_capped(s, cap_len, DEFAULT_ELEMENT_CAP)?;
    let mut spanning: Vec<Vec<FieldElem>> = Vec::new();
    let mut rank = 0usize;
    for e in ball.iter_discovery() {
        let in_subgroup = (1..layer.k).all(|d| {
            (0..e.mat.n() - d).all(|i| e.mat.get(i, i + d).is_zero_elem())
        });
        if !in_subgroup {
            continue;
        }
        let tuple: Vec<FieldElem> = layer
            .positions
            .iter()
            .map(|&(i, j)| e.mat.get(i, j).clone())
            .collect();
        let mut tentative = spanning.clone();
        tentative.push(tuple);
        let r = tuple_rank(&tentative)?;
        if r > rank {
            rank = r;
            spanning = tentative;
        }
    }
    Ok((rank, spanning))
}

/// Upper bound spans, inductively over superdiagonals: the span at (i, j)
/// is generated by the generators' (i, j) entries together with all
/// products of span elements at (i, l) and (l, j) — everything matrix
/// multiplication can ever place at (i, j). Every entry of every word in
/// the group lies in the returned span.
pub fn entry_span_upper(s: &GeneratorSet) -> Result<BTreeMap<(usize, usize), EntrySpan>> {
    require_unipotent_gens(s)?;
    let n = s.n();
    let mut spans: BTreeMap<(usize, usize), EntrySpan> = BTreeMap::new();
    for d in 1..n {
        for i in 0..n - d {
            let j = i + d;
            let mut candidates: Vec<FieldElem> = s
                .gens()
                .iter()
                .map(|g| g.get(i, j).clone())
                .collect();
            for l in i + 1..j {
                let left = spans.get(&(i, l)).map(|e| e.basis.clone()).unwrap_or_default();
                let right = spans.get(&(l, j)).map(|e| e.basis.clone()).unwrap_or_default();
                for a in &left {
                    for b in &right {
                        candidates.push(a.clone() * b.clone());
                    }
                }
            }
            let mut basis: Vec<FieldElem> = Vec::new();
            for c in candidates {
                if c.is_zero_elem() {
                    continue;
                }
                if !in_q_span(&basis, &c)? {
                    basis.push(c);
                }
            }
            spans.insert((i, j), EntrySpan {
                position: (i, j),
                basis,
            });
        }
    }
    Ok(spans)
}

/// Certified (lower, upper) bounds for the composition rank: the maximum
/// over layers of the tuple-span rank reached in the word ball (lower) and
/// of the sum of per-position span ranks (upper).
pub fn composition_rank_bounds(s: &GeneratorSet, cap_len: usize) -> Result<RankBounds> {
    require_unipotent_gens(s)?;
    if s.is_empty() {
        return Ok(RankBounds {
            lower: 0,
            upper: 0,
            per_layer: vec![],
            saturation_length: cap_len,
        });
    }
    let layers = layer_decompose(s.n())?;
    let upper_spans = entry_span_upper(s)?;
    let mut per_layer = Vec::with_capacity(layers.len());
    let mut lower = 0usize;
    let mut upper = 0usize;
    for layer in layers {
        let (layer_lower, _) = entry_span_lower(s, &layer, cap_len)?;
        let layer_upper: usize = layer
            .positions
            .iter()
            .map(|pos| upper_spans.get(pos).map_or(0, |e| e.basis.len()))
            .sum();
        lower = lower.max(layer_lower);
        upper = upper.max(layer_upper);
        per_layer.push((layer, layer_lower, layer_upper));
    }
    Ok(RankBounds {
        lower,
        upper,
        per_layer,
        saturation_length: cap_len,
    })
}

/// Checks that every superdiagonal entry of `g` lies in the corresponding
/// upper-bound span — the membership statement the span closure certifies
/// for every element of the group.
pub fn structure_check(
    g: &EMat,
    spans: &BTreeMap<(usize, usize), EntrySpan>,
) -> Result<bool> {
    if !g.is_uni_upper_triangular() {
        return Err(Error::NotUnipotentForm);
    }
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            let entry = g.get(i, j);
            if entry.is_zero_elem() {
                continue;
            }
            let empty = vec![];
            let basis = spans.get(&(i, j)).map(|e| e.basis.as_slice()).unwrap_or(&empty);
            if !in_q_span(basis, entry)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The generalized Vandermonde determinant: row i substitutes a fresh
/// disjoint variable block for the inputs' variables (row-major block
/// numbering), and the n×n determinant `det(p_j(t⃗_i))` is returned as an
/// exact polynomial in `n·arity` variables. It vanishes identically iff the
/// inputs are ℚ-linearly dependent.
pub fn independence_determinant(polys: &[MultiPoly], arity: usize) -> Result<MultiPoly> {
    let n = polys.len();
    if n == 0 {
        return Err(Error::Validation("empty polynomial family".into()));
    }
    if let Some(p) = polys.iter().find(|p| p.arity() > arity) {
        return Err(Error::Validation(format!(
            "polynomial {p} uses more than the declared {arity} variable(s)"
        )));
    }
    let rows: Vec<Vec<MultiPoly>> = (0..n)
        .map(|i| polys.iter().map(|p| p.shift_vars(i * arity)).collect())
        .collect();
    Ok(Mat::from_rows(rows)?.det())
}

fn unipoly_to_multipoly(p: &UniPoly) -> MultiPoly {
    MultiPoly::from_terms(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| (vec![k as u32], c.clone())),
    )
}

/// The span as a polynomial family: rationals become constants, rational
/// functions are cleared by their common denominator (finiteness of
/// bounded integer combinations is unaffected by the fixed nonzero
/// rescaling), polynomials pass through.
fn span_to_polys(span: &[FieldElem]) -> Result<(Vec<MultiPoly>, usize)> {
    let families: Vec<FieldFamily> = span.iter().map(|e| e.family()).collect();
    if families.iter().any(|f| *f == FieldFamily::Algebraic) {
        return Err(Error::Unsupported(
            "boundedness witness over number-field elements".into(),
        ));
    }
    if families.iter().all(|f| *f == FieldFamily::Rational) {
        let polys = span
            .iter()
            .map(|e| MultiPoly::constant(e.as_rational().unwrap().clone()))
            .collect();
        return Ok((polys, 0));
    }
    if families
        .iter()
        .any(|f| *f == FieldFamily::RationalFunction)
    {
        let exemplar = span
            .iter()
            .find(|e| e.family() == FieldFamily::RationalFunction)
            .unwrap()
            .clone();
        let fs = span
            .iter()
            .map(|e| Ok(e.promoted_like(&exemplar)?.as_ratfunc().unwrap().clone()))
            .collect::<Result<Vec<_>>>()?;
        let common_den = fs.iter().fold(UniPoly::one(), |acc, f| {
            let g = acc.gcd(f.denominator());
            (acc * f.denominator().clone()) / g
        });
        let polys = fs
            .iter()
            .map(|f| {
                let scale = common_den
                    .exact_div(f.denominator())
                    .expect("common denominator is a multiple");
                unipoly_to_multipoly(&(f.numerator().clone() * scale))
            })
            .collect();
        return Ok((polys, 1));
    }
    // multivariate polynomials (rationals embed as constants)
    let exemplar = span
        .iter()
        .find(|e| e.family() == FieldFamily::Multivariate)
        .unwrap()
        .clone();
    let polys: Vec<MultiPoly> = span
        .iter()
        .map(|e| Ok(e.promoted_like(&exemplar)?.as_multipoly().unwrap().clone()))
        .collect::<Result<Vec<_>>>()?;
    let arity = polys.iter().map(|p| p.arity()).max().unwrap_or(0);
    Ok((polys, arity))
}

/// Finite-box certificate for a ℚ-independent span: finds a rational
/// evaluation point where the independence determinant is nonzero (a grid
/// of `maxdeg + 1` values per variable must contain one, exactly), inverts
/// the resulting linear system, and bounds each integer coefficient by
/// `bound · Σ_i |M⁻¹_ji|`. Dependent spans are rejected.
pub fn boundedness_witness(
    span: &[FieldElem],
    bound: &Rational,
) -> Result<FinitenessCertificate> {
    if span.is_empty() {
        return Ok(FinitenessCertificate {
            box_bounds: vec![],
            eval_point: vec![],
            det_value: Rational::one(),
        });
    }
    let (polys, arity) = span_to_polys(span)?;
    let det = independence_determinant(&polys, arity)?;
    if det.is_zero() {
        return Err(Error::DegenerateSpan(format!(
            "span of {} elements has rank {}",
            span.len(),
            q_rank(span)?
        )));
    }
    let n = polys.len();
    let total_vars = n * arity;
    let maxdeg = (0..total_vars)
        .map(|i| det.max_degree_of(i))
        .max()
        .unwrap_or(0);
    let values: Vec<Rational> = (0..=maxdeg as i64)
        .map(|k| Rational::from_integer(k.into()))
        .collect();
    let eval_point: Vec<Rational> = if total_vars == 0 {
        vec![]
    } else {
        (0..total_vars)
            .map(|_| values.iter().cloned())
            .multi_cartesian_product()
            .find(|pt| !det.eval(pt).expect("point has full arity").is_zero())
            .expect("a nonzero polynomial is nonzero somewhere on the grid")
    };
    let det_value = if total_vars == 0 {
        det.is_constant().expect("no variables left")
    } else {
        det.eval(&eval_point).expect("point has full arity")
    };
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            polys
                .iter()
                .map(|p| {
                    let shifted = p.shift_vars(i * arity);
                    if total_vars == 0 {
                        shifted.is_constant().expect("no variables left")
                    } else {
                        shifted.eval(&eval_point).expect("point has full arity")
                    }
                })
                .collect()
        })
        .collect();
    let m = QMat::from_rows(rows)?;
    let inv = m.inverse().expect("nonzero determinant at the chosen point");
    let box_bounds = (0..n)
        .map(|j| {
            let row_norm: Rational = (0..n).map(|i| inv.get(j, i).abs()).sum();
            bound * row_norm
        })
        .collect();
    Ok(FinitenessCertificate {
        box_bounds,
        eval_point,
        det_value,
    })
}
