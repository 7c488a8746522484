//! Lattice classes over a discretely valued field and the induced tree.
//!
//! A vertex is a homothety class of rank-n lattices, represented by any
//! invertible basis matrix (columns span the lattice). Two bases represent
//! the same vertex iff their transition matrix is a scalar times a unit of
//! the valuation ring, which the Smith valuations detect exactly. For n = 2
//! the classes form a tree of valence `|residue field| + 1`, with graph
//! distance `s₂ − s₁` in the invariant-factor valuations of the transition
//! matrix; for general n the spread `s_n − s₁` still vanishes exactly on
//! vertex stabilizers and serves as the displacement measure.

use crate::elem::FieldElem;
use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::matrix::{EMat, Mat};
use crate::scalar::{rational_string, Integer, Rational};
use crate::valuation::Valuation;
use itertools::Itertools;
use num_integer::Integer as _;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

#[derive(Debug, Clone)]
pub struct Vertex {
    pub basis: EMat,
    pub valuation: Valuation,
}

/// Per-element displacement bookkeeping for the diagonal action on a
/// product of trees, with an optional symmetric-space proxy term.
#[derive(Debug, Clone, PartialEq)]
pub struct DisplacementReport {
    /// One tree displacement per configured valuation, all ≥ 0.
    pub tree_displacements: Vec<i64>,
    /// `δ(g) = Σ g_ij²` (possibly at an evaluation point), when enabled.
    pub sym_proxy: Option<Rational>,
    /// Sum of the tree displacements plus the sym term.
    pub total: Rational,
}

impl DisplacementReport {
    pub fn new(tree_displacements: Vec<i64>, sym_proxy: Option<Rational>) -> Self {
        let mut total: Rational = tree_displacements
            .iter()
            .map(|&d| Rational::from_integer(Integer::from(d)))
            .sum();
        if let Some(s) = &sym_proxy {
            total += s.clone();
        }
        DisplacementReport {
            tree_displacements,
            sym_proxy,
            total,
        }
    }
}

impl Serialize for DisplacementReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DisplacementReport", 3)?;
        s.serialize_field("tree_displacements", &self.tree_displacements)?;
        s.serialize_field(
            "sym_proxy",
            &self.sym_proxy.as_ref().map(rational_string),
        )?;
        s.serialize_field("total", &rational_string(&self.total))?;
        s.end()
    }
}

/// The base vertex: the standard lattice, identity basis.
pub fn base_vertex(n: usize, v: &Valuation) -> Vertex {
    let basis = Mat::identity(n)
        .promoted_like(&v.uniformizer())
        .expect("identity embeds anywhere");
    Vertex {
        basis,
        valuation: v.clone(),
    }
}

/// The action of `g ∈ SL(n)` on lattice classes: base change of the basis.
pub fn act(g: &EMat, x: &Vertex) -> Result<Vertex> {
    if g.n() != x.basis.n() {
        return Err(Error::Validation(format!(
            "dimension mismatch: {}×{0} matrix on a {}-lattice",
            g.n(),
            x.basis.n()
        )));
    }
    g.require_special_linear()?;
    Ok(Vertex {
        basis: g * &x.basis,
        valuation: x.valuation.clone(),
    })
}

/// Minimum valuation over all k×k minors of `c`, for k = 1..n. Zero minors
/// valuate to +∞ and are skipped; an invertible matrix has a nonzero minor
/// at every size.
fn minor_minima(c: &EMat, v: &Valuation) -> Result<Vec<i64>> {
    let n = c.n();
    let mut minima = Vec::with_capacity(n);
    for k in 1..=n {
        let mut min_val: Option<i64> = None;
        for rows in (0..n).combinations(k) {
            for cols in (0..n).combinations(k) {
                let minor = c.submatrix(&rows, &cols).det();
                if minor.is_zero_elem() {
                    continue;
                }
                match v.valuate(&minor)? {
                    ExtInt::Finite(val) => {
                        min_val = Some(min_val.map_or(val, |m| m.min(val)));
                    }
                    ExtInt::Infinity => unreachable!("nonzero minor valuates finitely"),
                }
            }
        }
        let Some(m) = min_val else {
            return Err(Error::SingularMatrix);
        };
        minima.push(m);
    }
    Ok(minima)
}

/// Invariant-factor valuations `v₁ ≤ … ≤ v_n` of an invertible matrix:
/// the partial sums `v₁+…+v_k` equal the minimal valuation over all k×k
/// minors, and the full sum is the valuation of the determinant.
pub fn smith_valuations(c: &EMat, v: &Valuation) -> Result<Vec<i64>> {
    let minima = minor_minima(c, v)?;
    let mut out = Vec::with_capacity(minima.len());
    let mut prev = 0i64;
    for m in minima {
        out.push(m - prev);
        prev = m;
    }
    debug_assert!(out.windows(2).all(|w| w[0] <= w[1]));
    Ok(out)
}

fn check_compatible(x: &Vertex, y: &Vertex) -> Result<()> {
    if x.basis.n() != y.basis.n() {
        return Err(Error::Validation("vertices of different rank".into()));
    }
    if x.valuation != y.valuation {
        return Err(Error::Validation(
            "vertices over different valuations".into(),
        ));
    }
    Ok(())
}

/// The transition matrix `x.basis⁻¹ · y.basis`.
fn transition(x: &Vertex, y: &Vertex) -> Result<EMat> {
    check_compatible(x, y)?;
    Ok(&x.basis.inverse()? * &y.basis)
}

/// Whether two representatives name the same homothety class: the
/// transition matrix must be a scalar times a valuation-ring unit, i.e.
/// all its Smith valuations coincide.
pub fn same_vertex(x: &Vertex, y: &Vertex) -> Result<bool> {
    let s = smith_valuations(&transition(x, y)?, &x.valuation)?;
    Ok(s.windows(2).all(|w| w[0] == w[1]))
}

/// Exact tree distance between two lattice classes, `s₂ − s₁` of the
/// transition matrix. Rank two only.
pub fn distance(x: &Vertex, y: &Vertex) -> Result<i64> {
    if x.basis.n() != 2 {
        return Err(Error::UnsupportedDimension {
            required: 2,
            got: x.basis.n(),
        });
    }
    let s = smith_valuations(&transition(x, y)?, &x.valuation)?;
    Ok(s[1] - s[0])
}

/// Displacement of `g` at the vertex `x`: the invariant-factor spread
/// `s_n − s₁` of `x.basis⁻¹·g·x.basis`. For n = 2 this is the tree distance
/// between `x` and `g.x`; for general n it is zero exactly on stabilizers.
pub fn displacement(g: &EMat, x: &Vertex) -> Result<i64> {
    g.require_special_linear()?;
    let conj = &(&x.basis.inverse()? * g) * &x.basis;
    let s = smith_valuations(&conj, &x.valuation)?;
    Ok(s[s.len() - 1] - s[0])
}

/// The neighbors of a rank-two lattice class over a p-adic valuation:
/// exactly `p + 1` classes at distance one, one per point of the
/// projective line over the residue field.
pub fn neighbors(x: &Vertex) -> Result<Vec<Vertex>> {
    if x.basis.n() != 2 {
        return Err(Error::UnsupportedDimension {
            required: 2,
            got: x.basis.n(),
        });
    }
    let Some(p) = x.valuation.residue_field_size() else {
        return Err(Error::InfiniteResidueField(x.valuation.to_string()));
    };
    let p_small = p
        .to_u64()
        .filter(|&p| p <= 1_000_000)
        .ok_or_else(|| {
            Error::Validation(format!("residue field of size {p} too large to enumerate"))
        })?;
    let pe = FieldElem::Rational(Rational::from_integer(p.clone()));
    let mut out = Vec::with_capacity(p_small as usize + 1);
    for j in 0..p_small {
        let step = Mat::from_rows(vec![
            vec![pe.clone(), FieldElem::from_int(j as i64)],
            vec![FieldElem::from_int(0), FieldElem::from_int(1)],
        ])
        .expect("square by construction");
        out.push(Vertex {
            basis: &x.basis * &step,
            valuation: x.valuation.clone(),
        });
    }
    let step = Mat::from_rows(vec![
        vec![FieldElem::from_int(1), FieldElem::from_int(0)],
        vec![FieldElem::from_int(0), pe],
    ])
    .expect("square by construction");
    out.push(Vertex {
        basis: &x.basis * &step,
        valuation: x.valuation.clone(),
    });
    Ok(out)
}

/// Canonical dedup key for rank-two p-adic lattice classes, independent of
/// the representative: column Hermite form over the local ring at `p`,
/// scaled so the minimal entry valuation is zero. The breadth-first oracle
/// uses this for hashing; its agreement with [`same_vertex`] is itself
/// under test.
pub fn padic_lattice_key(x: &Vertex) -> Result<String> {
    if x.basis.n() != 2 {
        return Err(Error::UnsupportedDimension {
            required: 2,
            got: x.basis.n(),
        });
    }
    let Valuation::PAdic { p } = &x.valuation else {
        return Err(Error::InfiniteResidueField(x.valuation.to_string()));
    };
    let ent = |i: usize, j: usize| -> Result<Rational> {
        match x.basis.get(i, j) {
            FieldElem::Rational(r) => Ok(r.clone()),
            other => Err(Error::IncompatibleValuation {
                valuation: x.valuation.to_string(),
                family: other.family().to_string(),
            }),
        }
    };
    let vp = |r: &Rational| -> i64 {
        crate::scalar::int_multiplicity(r.numer(), p)
            - crate::scalar::int_multiplicity(r.denom(), p)
    };
    let ppow = |k: i64| -> Rational {
        crate::scalar::rat_pow(&Rational::from_integer(p.clone()), k)
    };
    // Column operations over the local ring: make the bottom row (0, p^b).
    let (mut c1, mut c2) = (
        [ent(0, 0)?, ent(1, 0)?],
        [ent(0, 1)?, ent(1, 1)?],
    );
    // choose as pivot the bottom entry of minimal valuation
    let swap = match (c1[1].is_zero(), c2[1].is_zero()) {
        (true, true) => unreachable!("invertible basis has a nonzero bottom row"),
        (true, false) => false,
        (false, true) => true,
        (false, false) => vp(&c1[1]) < vp(&c2[1]),
    };
    if swap {
        std::mem::swap(&mut c1, &mut c2);
    }
    if !c1[1].is_zero() {
        // eliminate: c1 -= (c1[1]/c2[1]) · c2, a local-ring multiple
        let f = &c1[1] / &c2[1];
        c1 = [&c1[0] - &(&f * &c2[0]), Rational::zero()];
    }
    // upper triangular now: [[x, y], [0, z]]; scale each column by its
    // unit part so the triangle entries become powers of p
    let a = vp(&c1[0]);
    let b = vp(&c2[1]);
    let u2 = &c2[1] / ppow(b);
    let y = &c2[0] / &u2;
    // y is defined modulo p^a · O_(p): reduce to the unique representative
    // m·p^e with 0 ≤ m < p^(a−e)
    let y_star = if y.is_zero() || vp(&y) >= a {
        Rational::zero()
    } else {
        let e = vp(&y);
        let unit = &y / ppow(e); // num/den both coprime to p
        let modulus = ppow(a - e);
        let modulus = modulus.numer().clone(); // a − e > 0, integer power
        let num = unit.numer().mod_floor(&modulus);
        let den = unit.denom().clone();
        let inv = mod_inverse(&den, &modulus);
        let m = (num * inv).mod_floor(&modulus);
        Rational::from_integer(m) * ppow(e)
    };
    // homothety normalization: shift so the minimal valuation is zero
    let vals = [
        Some(a),
        Some(b),
        (!y_star.is_zero()).then(|| vp(&y_star)),
    ];
    let shift = vals.iter().flatten().min().copied().unwrap();
    let scale = ppow(-shift);
    Ok(format!(
        "[{}, {}; 0, {}]",
        rational_string(&(ppow(a) * scale.clone())),
        rational_string(&(y_star * scale.clone())),
        rational_string(&(ppow(b) * scale))
    ))
}

/// Modular inverse of `a` modulo `m` for `gcd(a, m) = 1`.
fn mod_inverse(a: &Integer, m: &Integer) -> Integer {
    let g = a.extended_gcd(m);
    debug_assert!(g.gcd.is_one(), "inverse requires coprimality");
    g.x.mod_floor(m)
}

/// Symmetric-space displacement proxy `δ(g) = Σ g_ij²` as an exact
/// rational. Rational-function entries need an evaluation point `t0` (a
/// rational that is not a pole); the proxy is monotone bookkeeping only and
/// is never converted to a hyperbolic distance.
pub fn sym_displacement(g: &EMat, t0: Option<&Rational>) -> Result<Rational> {
    let mut acc = Rational::zero();
    for e in g.entries() {
        let val = match e {
            FieldElem::Rational(r) => r.clone(),
            FieldElem::RatFunc(f) => match t0 {
                Some(pt) => f.eval(pt)?,
                None => return Err(Error::NeedsEvaluationPoint),
            },
            other => {
                return Err(Error::Unsupported(format!(
                    "symmetric-space proxy over {} entries",
                    other.family()
                )))
            }
        };
        acc += &val * &val;
    }
    Ok(acc)
}
