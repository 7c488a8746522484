//! Scenario-driven diagnostics: displacement profiles over products of
//! trees (with the optional symmetric-space proxy), stabilizer censuses,
//! and ultrametric cover certificates.
//!
//! The profile enumerates a word ball and, for every radius `R` and
//! threshold `C`, counts the elements whose displacement is at most `C` at
//! **every** configured base vertex (and whose proxy value is at most the
//! configured proxy bound, when enabled). Counting is componentwise — the
//! intersection over factors, not a sum — so a single factor certifying
//! properness is visible in the table. Counts that keep growing with `R`
//! at a fixed threshold witness metric improperness; counts that stop
//! changing are reported as empirically "stable", never as a proof.

use rayon::prelude::*;
use serde::ser::Serializer;
use serde::Serialize;

use crate::bttree::{base_vertex, displacement, sym_displacement, DisplacementReport, Vertex};
use crate::elem::FieldElem;
use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::matrix::EMat;
use crate::scalar::{rational_string, Integer, Rational};
use crate::scenario::GroupScenario;
use crate::valuation::Valuation;
use crate::wordball::{word_ball_capped, Ball, BallElement};
use num_traits::{pow, One, Zero};

fn ser_rat<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(r))
}

/// One profile table entry: at radius `R` and threshold `C`, `count`
/// elements of the word ball stay within `C` at every base vertex;
/// `min_disp`/`max_disp` are the extremes of the *total* displacement over
/// the whole radius-`R` ball (threshold-independent).
#[derive(Debug, Clone, Serialize)]
pub struct ProfileRow {
    #[serde(rename = "R")]
    pub r: usize,
    #[serde(rename = "C", serialize_with = "ser_rat")]
    pub c: Rational,
    pub count: usize,
    #[serde(serialize_with = "ser_rat")]
    pub min_disp: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub max_disp: Rational,
}

/// A word ball together with one displacement report per element, indexed
/// in discovery order (`reports[i]` belongs to the i-th element of
/// [`Ball::iter_discovery`]).
pub struct BallAnalysis {
    pub ball: Ball,
    pub reports: Vec<DisplacementReport>,
}

fn element_report(
    g: &EMat,
    bases: &[Vertex],
    sym_t0: Option<&Rational>,
    sym_enabled: bool,
) -> Result<DisplacementReport> {
    let tree = bases
        .iter()
        .map(|x| displacement(g, x))
        .collect::<Result<Vec<i64>>>()?;
    let sym = if sym_enabled {
        Some(sym_displacement(g, sym_t0)?)
    } else {
        None
    };
    Ok(DisplacementReport::new(tree, sym))
}

/// Enumerates the word ball of the given radius and computes every
/// element's displacement report at the scenario's base vertices.
pub fn analyze_ball(sc: &GroupScenario, radius: usize) -> Result<BallAnalysis> {
    let ball = word_ball_capped(&sc.generators, radius, sc.element_cap)?;
    let bases: Vec<Vertex> = sc
        .valuations
        .iter()
        .map(|v| base_vertex(sc.n, v))
        .collect();
    let t0 = sc.sym.as_ref().map(|s| s.t0.clone());
    let elements: Vec<&BallElement> = ball.iter_discovery().collect();
    let reports = elements
        .par_iter()
        .map(|e| element_report(&e.mat, &bases, t0.as_ref(), sc.sym.is_some()))
        .collect::<Result<Vec<_>>>()?;
    Ok(BallAnalysis { ball, reports })
}

fn within(rep: &DisplacementReport, c: &Rational, sym_bound: Option<&Rational>) -> bool {
    rep.tree_displacements
        .iter()
        .all(|&d| Rational::from_integer(Integer::from(d)) <= *c)
        && match (sym_bound, &rep.sym_proxy) {
            (Some(bound), Some(s)) => s <= bound,
            _ => true,
        }
}

/// The profile table over the scenario's radius range and threshold list.
///
/// The ball is enumerated once at `r_max`; smaller radii are word-length
/// filters of it, so the table is consistent across rows by construction.
pub fn displacement_profile(sc: &GroupScenario) -> Result<Vec<ProfileRow>> {
    let analysis = analyze_ball(sc, sc.r_max)?;
    let elements: Vec<&BallElement> = analysis.ball.iter_discovery().collect();
    let sym_bound = sc.sym.as_ref().map(|s| s.bound.clone());
    let mut rows = Vec::new();
    for r in sc.r_min..=sc.r_max {
        let in_ball = || {
            elements
                .iter()
                .zip(&analysis.reports)
                .filter(move |(e, _)| e.len <= r)
        };
        let mut min_disp: Option<Rational> = None;
        let mut max_disp: Option<Rational> = None;
        for (_, rep) in in_ball() {
            if min_disp.as_ref().is_none_or(|m| rep.total < *m) {
                min_disp = Some(rep.total.clone());
            }
            if max_disp.as_ref().is_none_or(|m| rep.total > *m) {
                max_disp = Some(rep.total.clone());
            }
        }
        let min_disp = min_disp.expect("ball contains the identity");
        let max_disp = max_disp.expect("ball contains the identity");
        for c in &sc.thresholds {
            let count = in_ball()
                .filter(|(_, rep)| within(rep, c, sym_bound.as_ref()))
                .count();
            rows.push(ProfileRow {
                r,
                c: c.clone(),
                count,
                min_disp: min_disp.clone(),
                max_disp: max_disp.clone(),
            });
        }
    }
    Ok(rows)
}

/// Renders profile rows as CSV with the fixed column set
/// `R,C,count,min_disp,max_disp`.
pub fn profile_csv(rows: &[ProfileRow]) -> String {
    let mut out = String::from("R,C,count,min_disp,max_disp\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.r,
            rational_string(&row.c),
            row.count,
            rational_string(&row.min_disp),
            rational_string(&row.max_disp),
        ));
    }
    out
}

/// Per-threshold stabilization flag: `stable` iff the count is constant
/// over the top three radii of the table (false when fewer than three
/// radii were profiled). An empirical signal only.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdStability {
    #[serde(rename = "C", serialize_with = "ser_rat")]
    pub c: Rational,
    pub stable: bool,
}

pub fn stability_flags(rows: &[ProfileRow]) -> Vec<ThresholdStability> {
    let mut radii: Vec<usize> = rows.iter().map(|r| r.r).collect();
    radii.sort_unstable();
    radii.dedup();
    let top: Vec<usize> = radii.iter().rev().take(3).copied().collect();
    let mut out: Vec<ThresholdStability> = Vec::new();
    for row in rows {
        if out.iter().any(|s| s.c == row.c) {
            continue;
        }
        let counts: Vec<usize> = top
            .iter()
            .filter_map(|&r| {
                rows.iter()
                    .find(|x| x.r == r && x.c == row.c)
                    .map(|x| x.count)
            })
            .collect();
        let stable = counts.len() == 3 && counts.iter().all(|&k| k == counts[0]);
        out.push(ThresholdStability {
            c: row.c.clone(),
            stable,
        });
    }
    out
}

/// All word-ball elements (radius `R`) with zero displacement at every
/// configured base vertex, in discovery order. Every returned element
/// satisfies the integral-characteristic certificate for the scenario's
/// valuations — fixing the standard lattice leaves no denominators.
pub fn stabilizer_census(sc: &GroupScenario, radius: usize) -> Result<Vec<BallElement>> {
    let analysis = analyze_ball(sc, radius)?;
    let mut out = Vec::new();
    for (e, rep) in analysis.ball.iter_discovery().zip(&analysis.reports) {
        if rep.tree_displacements.iter().all(|&d| d == 0) {
            debug_assert!(
                crate::alperin_shalen::isotropy_certificate(&e.mat, &sc.valuations)?,
                "stabilizer without integral characteristic polynomial"
            );
            out.push(e.clone());
        }
    }
    Ok(out)
}

/// Exact ultrametric distance `2^(−ν(x−y))` (zero when `x = y`). Rational
/// inputs are promoted into the valuation's field first.
pub fn ultrametric_distance(v: &Valuation, x: &FieldElem, y: &FieldElem) -> Result<Rational> {
    let diff = (x.clone() - y.clone()).promoted_like(&v.uniformizer())?;
    Ok(match v.valuate(&diff)? {
        ExtInt::Infinity => Rational::zero(),
        ExtInt::Finite(k) if k >= 0 => {
            Rational::new(Integer::one(), pow(Integer::from(2), k as usize))
        }
        ExtInt::Finite(k) => Rational::from_integer(pow(Integer::from(2), (-k) as usize)),
    })
}

/// The verified clauses of a cover certificate; all three are checked by
/// brute force against the realized partition, not assumed.
#[derive(Debug, Clone, Serialize)]
pub struct CoverCertificate {
    /// Every part has diameter ≤ d.
    pub diameter_bounded: bool,
    /// Distinct parts are > d apart.
    pub parts_separated: bool,
    /// Every metric d-ball around an input point meets exactly one part.
    pub balls_meet_one_part: bool,
}

impl CoverCertificate {
    pub fn holds(&self) -> bool {
        self.diameter_bounded && self.parts_separated && self.balls_meet_one_part
    }
}

/// A partition of the input points into closed `d`-balls, as index lists
/// into the input slice, parts ordered by first occurrence.
#[derive(Debug, Clone)]
pub struct Cover {
    pub parts: Vec<Vec<usize>>,
    pub certificate: CoverCertificate,
}

/// Partitions `points` into closed `d`-balls of the ultrametric
/// `2^(−ν(x−y))` and certifies the partition: parts have diameter ≤ d,
/// distinct parts are > d apart, and every d-ball meets exactly one part —
/// the scale-`d` witness that the metric has asymptotic dimension zero.
pub fn ultrametric_cover(points: &[FieldElem], v: &Valuation, d: &Rational) -> Result<Cover> {
    if *d <= Rational::zero() {
        return Err(Error::Validation("cover scale d must be positive".into()));
    }
    let m = points.len();
    let mut dist = vec![vec![Rational::zero(); m]; m];
    for i in 0..m {
        for j in (i + 1)..m {
            let dij = ultrametric_distance(v, &points[i], &points[j])?;
            dist[i][j] = dij.clone();
            dist[j][i] = dij;
        }
    }

    // In an ultrametric, "within d of the part's first point" is an
    // equivalence, so greedy assignment by representative is exact.
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut part_of = vec![usize::MAX; m];
    for i in 0..m {
        match parts.iter().position(|p| dist[i][p[0]] <= *d) {
            Some(k) => {
                parts[k].push(i);
                part_of[i] = k;
            }
            None => {
                part_of[i] = parts.len();
                parts.push(vec![i]);
            }
        }
    }

    let diameter_bounded = parts
        .iter()
        .all(|p| p.iter().all(|&i| p.iter().all(|&j| dist[i][j] <= *d)));
    let parts_separated = (0..m)
        .all(|i| (0..m).all(|j| part_of[i] == part_of[j] || dist[i][j] > *d));
    let balls_meet_one_part =
        (0..m).all(|i| (0..m).all(|j| dist[i][j] > *d || part_of[j] == part_of[i]));

    Ok(Cover {
        parts,
        certificate: CoverCertificate {
            diameter_bounded,
            parts_separated,
            balls_meet_one_part,
        },
    })
}
