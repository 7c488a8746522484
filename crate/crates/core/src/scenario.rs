//! JSON scenario files: a declarative description of a finitely generated
//! matrix group, the valuations it acts through, and the knobs for the
//! diagnostic runs (radii, thresholds, caps, search depths).
//!
//! A scenario document looks like
//!
//! ```json
//! {
//!   "name": "sl2-z-half",
//!   "field": "rational",
//!   "n": 2,
//!   "generators": [
//!     { "label": "a", "rows": [["1", "1/2"], ["0", "1"]] },
//!     { "label": "s", "rows": [["0", "-1"], ["1", "0"]] }
//!   ],
//!   "ring": { "kind": "z-inv-s", "s": 2 },
//!   "valuations": [{ "kind": "p-adic", "p": 2 }],
//!   "sym_proxy": { "enabled": true, "t0": "3/2", "bound": "40" },
//!   "thresholds": ["0", "2", "4"],
//!   "radius": { "min": 0, "max": 8 },
//!   "element_cap": 1000000
//! }
//! ```
//!
//! Matrix entries, thresholds, points, and bounds are written as exact
//! literals in the scenario's field family (`"rational"`,
//! `"rational-function"`, `"algebraic"` with a `modulus`, or
//! `"multivariate"`). Generators are validated to be n×n of determinant
//! one and symmetrized on load.

use serde::Deserialize;

use crate::algext::NumberField;
use crate::alperin_shalen::RingFamily;
use crate::elem::{FieldElem, FieldFamily};
use crate::error::{Error, Result};
use crate::literal::{parse_elem, parse_rational, parse_unipoly, FieldCtx};
use crate::matrix::{EMat, Mat};
use crate::scalar::{rat, Rational};
use crate::valuation::Valuation;
use crate::wordball::{GeneratorSet, DEFAULT_ELEMENT_CAP};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioDoc {
    name: String,
    field: FieldFamily,
    #[serde(default)]
    modulus: Option<String>,
    n: usize,
    generators: Vec<GeneratorDoc>,
    #[serde(default)]
    ring: Option<RingDoc>,
    #[serde(default)]
    valuations: Vec<ValuationDoc>,
    #[serde(default)]
    sym_proxy: Option<SymProxyDoc>,
    #[serde(default)]
    thresholds: Vec<String>,
    #[serde(default)]
    radius: Option<RadiusDoc>,
    #[serde(default)]
    element_cap: Option<usize>,
    #[serde(default)]
    rank: Option<SearchDoc>,
    #[serde(default)]
    trace: Option<SearchDoc>,
    #[serde(default)]
    cover: Option<CoverDoc>,
    #[serde(default)]
    elements: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorDoc {
    label: String,
    rows: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum RingDoc {
    ZInvS { s: u64 },
    Laurent,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum ValuationDoc {
    PAdic { p: u64 },
    OrderAtZero,
    OrderAtInfinity,
    OrderAtIrreducible { q: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SymProxyDoc {
    enabled: bool,
    #[serde(default)]
    t0: Option<String>,
    bound: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RadiusDoc {
    min: usize,
    max: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SearchDoc {
    max_word_len: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoverDoc {
    points: Vec<String>,
    valuation: ValuationDoc,
    d: String,
}

/// Symmetric-space proxy configuration: evaluate `δ(g) = Σ g_ij²` at `t0`
/// (for rational-function entries) and compare against `bound`.
#[derive(Debug, Clone)]
pub struct SymProxy {
    pub t0: Rational,
    pub bound: Rational,
}

impl SymProxy {
    /// Report label for the proxy column, e.g. `sym-proxy@3/2`.
    pub fn label(&self) -> String {
        format!("sym-proxy@{}", crate::scalar::rational_string(&self.t0))
    }
}

/// Input to [`crate::probe::ultrametric_cover`]: points in the valuation's
/// field, and the scale `d`.
#[derive(Debug, Clone)]
pub struct CoverSpec {
    pub points: Vec<FieldElem>,
    pub valuation: Valuation,
    pub d: Rational,
}

/// A validated scenario: generators parsed, symmetrized, and checked to be
/// special linear; valuations checked against the field family; every
/// numeric literal parsed exactly.
#[derive(Debug, Clone)]
pub struct GroupScenario {
    pub name: String,
    pub field: FieldFamily,
    pub n: usize,
    pub generators: GeneratorSet,
    pub ring: Option<RingFamily>,
    pub valuations: Vec<Valuation>,
    pub sym: Option<SymProxy>,
    pub thresholds: Vec<Rational>,
    pub r_min: usize,
    pub r_max: usize,
    pub element_cap: usize,
    pub rank_max_word_len: Option<usize>,
    pub trace_max_word_len: Option<usize>,
    pub cover: Option<CoverSpec>,
    pub elements: Vec<FieldElem>,
}

fn parse_valuation(doc: &ValuationDoc) -> Result<Valuation> {
    match doc {
        ValuationDoc::PAdic { p } => Valuation::p_adic(*p),
        ValuationDoc::OrderAtZero => Ok(Valuation::OrderAtZero),
        ValuationDoc::OrderAtInfinity => Ok(Valuation::OrderAtInfinity),
        ValuationDoc::OrderAtIrreducible { q } => {
            Valuation::order_at_irreducible(parse_unipoly(q)?)
        }
    }
}

impl GroupScenario {
    pub fn from_json(text: &str) -> Result<GroupScenario> {
        let doc: ScenarioDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("scenario: {e}")))?;
        GroupScenario::from_doc(doc)
    }

    fn from_doc(doc: ScenarioDoc) -> Result<GroupScenario> {
        if doc.n == 0 {
            return Err(Error::Validation("matrix dimension n must be ≥ 1".into()));
        }
        let ctx = match doc.field {
            FieldFamily::Rational => FieldCtx::rational(),
            FieldFamily::RationalFunction => FieldCtx::rational_function(),
            FieldFamily::Algebraic => {
                let modulus = doc.modulus.as_deref().ok_or_else(|| {
                    Error::Validation("algebraic scenarios must declare a modulus".into())
                })?;
                FieldCtx::algebraic(NumberField::new(parse_unipoly(modulus)?)?)
            }
            FieldFamily::Multivariate => FieldCtx::multivariate(),
        };

        let mut labeled: Vec<(String, EMat)> = Vec::new();
        for gen in &doc.generators {
            if gen.rows.len() != doc.n || gen.rows.iter().any(|r| r.len() != doc.n) {
                return Err(Error::Validation(format!(
                    "generator {} is not {n}x{n}",
                    gen.label,
                    n = doc.n
                )));
            }
            let rows = gen
                .rows
                .iter()
                .map(|r| r.iter().map(|s| parse_elem(s, &ctx)).collect())
                .collect::<Result<Vec<Vec<FieldElem>>>>()?;
            labeled.push((gen.label.clone(), Mat::from_rows(rows)?));
        }
        let generators = GeneratorSet::new(labeled)?;

        let valuations = doc
            .valuations
            .iter()
            .map(parse_valuation)
            .collect::<Result<Vec<_>>>()?;
        for v in &valuations {
            if v.family() != doc.field {
                return Err(Error::Validation(format!(
                    "valuation {v} applies to {} entries, but the scenario field is {}",
                    v.family(),
                    doc.field
                )));
            }
        }

        let sym = match doc.sym_proxy {
            Some(SymProxyDoc { enabled: false, .. }) | None => None,
            Some(SymProxyDoc { t0, bound, .. }) => Some(SymProxy {
                t0: match t0 {
                    Some(s) => parse_rational(&s)?,
                    None => rat(3, 2),
                },
                bound: parse_rational(&bound)?,
            }),
        };

        let thresholds = doc
            .thresholds
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;

        let (r_min, r_max) = match doc.radius {
            Some(RadiusDoc { min, max }) => {
                if min > max {
                    return Err(Error::Validation(format!(
                        "radius range {min}..{max} is empty"
                    )));
                }
                (min, max)
            }
            None => (0, 6),
        };

        let ring = match doc.ring {
            Some(RingDoc::ZInvS { s }) => Some(RingFamily::z_inv_s(s)?),
            Some(RingDoc::Laurent) => Some(RingFamily::laurent_z()),
            None => None,
        };

        let cover = match doc.cover {
            Some(c) => {
                let valuation = parse_valuation(&c.valuation)?;
                let pctx = match valuation.family() {
                    FieldFamily::Rational => FieldCtx::rational(),
                    FieldFamily::RationalFunction => FieldCtx::rational_function(),
                    other => {
                        return Err(Error::Validation(format!(
                            "cover points over {other} entries are not supported"
                        )))
                    }
                };
                let points = c
                    .points
                    .iter()
                    .map(|s| parse_elem(s, &pctx))
                    .collect::<Result<Vec<_>>>()?;
                Some(CoverSpec {
                    points,
                    valuation,
                    d: parse_rational(&c.d)?,
                })
            }
            None => None,
        };

        let elements = doc
            .elements
            .iter()
            .map(|s| parse_elem(s, &ctx))
            .collect::<Result<Vec<_>>>()?;

        Ok(GroupScenario {
            name: doc.name,
            field: doc.field,
            n: doc.n,
            generators,
            ring,
            valuations,
            sym,
            thresholds,
            r_min,
            r_max,
            element_cap: doc.element_cap.unwrap_or(DEFAULT_ELEMENT_CAP),
            rank_max_word_len: doc.rank.map(|s| s.max_word_len),
            trace_max_word_len: doc.trace.map(|s| s.max_word_len),
            cover,
            elements,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SL2_Z_HALF: &str = r#"{
        "name": "sl2-z-half",
        "field": "rational",
        "n": 2,
        "generators": [
            { "label": "a", "rows": [["1", "1/2"], ["0", "1"]] },
            { "label": "s", "rows": [["0", "-1"], ["1", "0"]] }
        ],
        "ring": { "kind": "z-inv-s", "s": 2 },
        "valuations": [{ "kind": "p-adic", "p": 2 }],
        "sym_proxy": { "enabled": true, "bound": "40" },
        "thresholds": ["0", "2", "4"],
        "radius": { "min": 0, "max": 5 }
    }"#;

    #[test]
    fn parses_a_full_scenario() {
        let sc = GroupScenario::from_json(SL2_Z_HALF).unwrap();
        assert_eq!(sc.name, "sl2-z-half");
        assert_eq!(sc.n, 2);
        // a, a⁻¹, s, s⁻¹ — s has order four, so its inverse is distinct.
        assert_eq!(sc.generators.len(), 4);
        assert_eq!(sc.valuations, vec![Valuation::p_adic(2).unwrap()]);
        let sym = sc.sym.as_ref().unwrap();
        assert_eq!(sym.t0, rat(3, 2));
        assert_eq!(sym.bound, rat(40, 1));
        assert_eq!(sym.label(), "sym-proxy@3/2");
        assert_eq!(sc.thresholds, vec![rat(0, 1), rat(2, 1), rat(4, 1)]);
        assert_eq!((sc.r_min, sc.r_max), (0, 5));
        assert_eq!(sc.element_cap, DEFAULT_ELEMENT_CAP);
        assert_eq!(sc.ring, Some(RingFamily::z_inv_s(2).unwrap()));
    }

    #[test]
    fn laurent_scenario_with_two_valuations() {
        let sc = GroupScenario::from_json(
            r#"{
                "name": "laurent",
                "field": "rational-function",
                "n": 2,
                "generators": [
                    { "label": "a", "rows": [["t", "0"], ["0", "(1)/(t)"]] },
                    { "label": "b", "rows": [["1", "1"], ["0", "1"]] }
                ],
                "ring": { "kind": "laurent" },
                "valuations": [{ "kind": "order-at-zero" }, { "kind": "order-at-infinity" }],
                "thresholds": ["0"],
                "radius": { "min": 1, "max": 4 }
            }"#,
        )
        .unwrap();
        assert_eq!(sc.generators.len(), 4);
        assert_eq!(
            sc.valuations,
            vec![Valuation::OrderAtZero, Valuation::OrderAtInfinity]
        );
        assert_eq!(sc.ring, Some(RingFamily::laurent_z()));
        assert!(sc.sym.is_none());
    }

    #[test]
    fn rejects_malformed_documents() {
        // Not JSON.
        assert!(matches!(
            GroupScenario::from_json("{"),
            Err(Error::Parse(_))
        ));
        // Unknown field.
        assert!(matches!(
            GroupScenario::from_json(
                r#"{"name": "x", "field": "rational", "n": 1, "generators": [], "zap": 3}"#
            ),
            Err(Error::Parse(_))
        ));
        // Generator shape mismatch.
        assert!(matches!(
            GroupScenario::from_json(
                r#"{"name": "x", "field": "rational", "n": 2,
                    "generators": [{ "label": "a", "rows": [["1"]] }]}"#
            ),
            Err(Error::Validation(_))
        ));
        // Determinant two.
        assert!(matches!(
            GroupScenario::from_json(
                r#"{"name": "x", "field": "rational", "n": 2,
                    "generators": [{ "label": "a", "rows": [["2", "0"], ["0", "1"]] }]}"#
            ),
            Err(Error::NotSpecialLinear(_))
        ));
        // Valuation family mismatch.
        assert!(matches!(
            GroupScenario::from_json(
                r#"{"name": "x", "field": "rational", "n": 2,
                    "generators": [{ "label": "a", "rows": [["1", "1"], ["0", "1"]] }],
                    "valuations": [{ "kind": "order-at-zero" }]}"#
            ),
            Err(Error::Validation(_))
        ));
        // Composite p.
        assert!(matches!(
            GroupScenario::from_json(
                r#"{"name": "x", "field": "rational", "n": 2,
                    "generators": [{ "label": "a", "rows": [["1", "1"], ["0", "1"]] }],
                    "valuations": [{ "kind": "p-adic", "p": 6 }]}"#
            ),
            Err(Error::NotPrime(_))
        ));
        // Empty radius range.
        assert!(matches!(
            GroupScenario::from_json(
                r#"{"name": "x", "field": "rational", "n": 2,
                    "generators": [{ "label": "a", "rows": [["1", "1"], ["0", "1"]] }],
                    "radius": { "min": 3, "max": 1 }}"#
            ),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn cover_and_search_sections() {
        let sc = GroupScenario::from_json(
            r#"{
                "name": "x",
                "field": "rational",
                "n": 2,
                "generators": [{ "label": "a", "rows": [["1", "1"], ["0", "1"]] }],
                "rank": { "max_word_len": 5 },
                "trace": { "max_word_len": 7 },
                "cover": {
                    "points": ["0", "1", "2", "3"],
                    "valuation": { "kind": "p-adic", "p": 2 },
                    "d": "1/2"
                },
                "elements": ["5/2", "7"]
            }"#,
        )
        .unwrap();
        assert_eq!(sc.rank_max_word_len, Some(5));
        assert_eq!(sc.trace_max_word_len, Some(7));
        let cover = sc.cover.as_ref().unwrap();
        assert_eq!(cover.points.len(), 4);
        assert_eq!(cover.d, rat(1, 2));
        assert_eq!(sc.elements.len(), 2);
        // Defaults when no radius/cap are given.
        assert_eq!((sc.r_min, sc.r_max), (0, 6));
    }
}
