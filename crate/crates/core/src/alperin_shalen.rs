//! Valuation synthesis for structured coefficient rings, the integrality
//! filter, and the integral-characteristic certificate for stabilizers.
//!
//! When every matrix entry of a group lies in `ℤ[1/s]` or in `ℤ[t, 1/t]`,
//! the denominators are controlled by finitely many discrete valuations:
//! one p-adic valuation per prime dividing `s`, or the orders at `t = 0`
//! and `t = ∞`.  An element of the ring that is integral for all of them
//! is forced down into `ℤ`:
//!
//! * `x ∈ ℤ[1/s]` with `ν_p(x) ≥ 0` for every `p | s` has no denominator
//!   left, and
//! * a Laurent polynomial with no negative and no positive `t`-powers is a
//!   constant integer.
//!
//! Consequently a group element that fixes a vertex in every tree (or
//! building) attached to the synthesized valuations preserves the standard
//! lattice in each one, so all coefficients of its characteristic
//! polynomial pass the filter.  [`isotropy_certificate`] checks that
//! necessary condition directly; it is not sufficient (an element can have
//! an integral characteristic polynomial and still translate).

use crate::elem::FieldElem;
use crate::error::{Error, Result};
use crate::matrix::EMat;
use crate::valuation::Valuation;

/// A coefficient ring with a known fraction-field embedding: either
/// `ℤ[1/s] ⊂ ℚ` or the integer Laurent polynomials `ℤ[t, 1/t] ⊂ ℚ(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingFamily {
    /// `ℤ[1/s]`.  Constructed through [`RingFamily::z_inv_s`], which
    /// replaces `s` by the product of its distinct prime divisors; the two
    /// rings coincide, and the canonical form keeps one valuation per prime.
    ZInvS { s: u64, primes: Vec<u64> },
    /// `ℤ[t, 1/t]`.
    LaurentZ,
}

impl RingFamily {
    /// The ring `ℤ[1/s]` for a positive integer `s` (not necessarily
    /// squarefree; `s = 1` gives plain `ℤ`).
    pub fn z_inv_s(s: u64) -> Result<RingFamily> {
        if s == 0 {
            return Err(Error::Validation(
                "ℤ[1/s] requires a positive integer s".into(),
            ));
        }
        let primes = distinct_prime_divisors(s);
        let s = primes.iter().product();
        Ok(RingFamily::ZInvS { s, primes })
    }

    /// The ring `ℤ[t, 1/t]`.
    pub fn laurent_z() -> RingFamily {
        RingFamily::LaurentZ
    }
}

impl std::fmt::Display for RingFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RingFamily::ZInvS { s, .. } => write!(f, "Z[1/{s}]"),
            RingFamily::LaurentZ => write!(f, "Z[t, 1/t]"),
        }
    }
}

fn distinct_prime_divisors(mut s: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= s {
        if s % d == 0 {
            primes.push(d);
            while s % d == 0 {
                s /= d;
            }
        }
        d += 1;
    }
    if s > 1 {
        primes.push(s);
    }
    primes
}

/// The finitely many discrete valuations that control denominators in the
/// ring family: `ℤ[1/s]` gets one p-adic valuation per prime divisor of
/// `s` (none for `s = 1`), and `ℤ[t, 1/t]` gets the orders at zero and at
/// infinity.
pub fn synthesize_valuations(ring: &RingFamily) -> Vec<Valuation> {
    match ring {
        RingFamily::ZInvS { primes, .. } => primes
            .iter()
            .map(|&p| Valuation::p_adic(p).expect("prime divisors are prime"))
            .collect(),
        RingFamily::LaurentZ => vec![Valuation::OrderAtZero, Valuation::OrderAtInfinity],
    }
}

/// True iff `x` is integral for every valuation in `vs`.
///
/// A rational `x` is promoted into each valuation's field first, so plain
/// integers can be tested against the Laurent valuations; an `x` outside a
/// valuation's field family is an error.
pub fn integrality_filter(x: &FieldElem, vs: &[Valuation]) -> Result<bool> {
    for v in vs {
        let xv = x.promoted_like(&v.uniformizer())?;
        if !v.is_integral(&xv)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff every coefficient of the characteristic polynomial of `g`
/// passes [`integrality_filter`] for `vs`.
///
/// This is necessary for `g` to fix a vertex in each of the buildings
/// attached to `vs` under the diagonal action: fixing the base vertex for
/// `v` means `g` preserves the standard lattice there, which puts the
/// characteristic coefficients inside the valuation ring of `v`.  It is
/// not sufficient — see the module docs.
pub fn isotropy_certificate(g: &EMat, vs: &[Valuation]) -> Result<bool> {
    g.require_special_linear()?;
    for c in g.char_poly().coeffs() {
        if !integrality_filter(c, vs)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bttree::{base_vertex, displacement};
    use crate::literal::parse_ratfunc;
    use crate::matrix::Mat;
    use crate::poly::UniPoly;
    use crate::ratfunc::RatFunc;
    use crate::scalar::rat;
    use crate::wordball::{word_ball, GeneratorSet};

    fn re(s: &str) -> FieldElem {
        FieldElem::RatFunc(parse_ratfunc(s).unwrap())
    }

    fn qe(n: i64, d: i64) -> FieldElem {
        FieldElem::Rational(rat(n, d))
    }

    fn qmat(rows: &[&[(i64, i64)]]) -> EMat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(n, d)| qe(n, d)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn tmat(rows: &[&[&str]]) -> EMat {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| re(s)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn synthesis_per_family() {
        let vs = synthesize_valuations(&RingFamily::z_inv_s(6).unwrap());
        assert_eq!(
            vs,
            vec![Valuation::p_adic(2).unwrap(), Valuation::p_adic(3).unwrap()]
        );

        assert!(synthesize_valuations(&RingFamily::z_inv_s(1).unwrap()).is_empty());

        assert_eq!(
            synthesize_valuations(&RingFamily::laurent_z()),
            vec![Valuation::OrderAtZero, Valuation::OrderAtInfinity]
        );
    }

    #[test]
    fn z_inv_s_is_canonicalized_to_its_radical() {
        let r = RingFamily::z_inv_s(12).unwrap();
        assert_eq!(
            r,
            RingFamily::ZInvS {
                s: 6,
                primes: vec![2, 3]
            }
        );
        assert_eq!(r, RingFamily::z_inv_s(6).unwrap());
        assert_eq!(
            RingFamily::z_inv_s(720).unwrap(),
            RingFamily::ZInvS {
                s: 30,
                primes: vec![2, 3, 5]
            }
        );
        assert!(RingFamily::z_inv_s(0).is_err());
    }

    #[test]
    fn filter_on_rationals() {
        let vs = synthesize_valuations(&RingFamily::z_inv_s(2).unwrap());
        assert!(!integrality_filter(&qe(5, 2), &vs).unwrap());
        assert!(integrality_filter(&qe(7, 1), &vs).unwrap());
        // ν₂(3/1) = 0 even though 3 has a ν₃-pole elsewhere; only the
        // synthesized valuations are consulted.
        assert!(integrality_filter(&qe(3, 1), &vs).unwrap());

        let vs6 = synthesize_valuations(&RingFamily::z_inv_s(6).unwrap());
        assert!(!integrality_filter(&qe(1, 3), &vs6).unwrap());
        assert!(!integrality_filter(&qe(5, 4), &vs6).unwrap());
        assert!(integrality_filter(&qe(-11, 1), &vs6).unwrap());

        // Empty valuation list: nothing to fail.
        assert!(integrality_filter(&qe(5, 2), &[]).unwrap());
    }

    #[test]
    fn filter_on_laurent_polynomials() {
        let vs = synthesize_valuations(&RingFamily::laurent_z());
        // t + 3 + 1/t has a pole at t = 0.
        assert!(!integrality_filter(&re("(t^2 + 3*t + 1)/(t)"), &vs).unwrap());
        // t + 3 has a pole at infinity.
        assert!(!integrality_filter(&re("t + 3"), &vs).unwrap());
        assert!(!integrality_filter(&re("(1)/(t)"), &vs).unwrap());
        // Constants pass, whether written in ℚ(t) or promoted from ℚ.
        assert!(integrality_filter(&re("4"), &vs).unwrap());
        assert!(integrality_filter(&qe(7, 1), &vs).unwrap());
        assert!(integrality_filter(&FieldElem::from_int(0), &vs).unwrap());
    }

    #[test]
    fn filter_true_means_constant_integer_small_sweep() {
        // Exhaustively over c₋₁/t + c₀ + c₁t with cᵢ ∈ [−2, 2]:
        // the filter accepts exactly the five constant integers.
        let vs = synthesize_valuations(&RingFamily::laurent_z());
        let mut accepted = 0;
        for cm in -2..=2i64 {
            for c0 in -2..=2i64 {
                for c1 in -2..=2i64 {
                    let num = UniPoly::new(vec![rat(cm, 1), rat(c0, 1), rat(c1, 1)]);
                    let den = UniPoly::monomial(rat(1, 1), 1);
                    let x = FieldElem::RatFunc(RatFunc::new(num, den).unwrap());
                    let ok = integrality_filter(&x, &vs).unwrap();
                    assert_eq!(ok, cm == 0 && c1 == 0, "c = ({cm}, {c0}, {c1})");
                    if ok {
                        accepted += 1;
                    }
                }
            }
        }
        assert_eq!(accepted, 5);
    }

    #[test]
    fn certificate_oracles() {
        let laurent = synthesize_valuations(&RingFamily::laurent_z());
        // Unipotent: char poly (λ − 1)².
        let e12 = qmat(&[&[(1, 1), (1, 1)], &[(0, 1), (1, 1)]]);
        assert!(isotropy_certificate(&e12, &laurent).unwrap());
        // diag(t, 1/t): the trace t + 1/t has a pole at zero.
        let a = tmat(&[&["t", "0"], &["0", "(1)/(t)"]]);
        assert!(!isotropy_certificate(&a, &laurent).unwrap());
        // E₁₂(t) is unipotent, so the coefficients are constants even
        // though an entry has a pole at infinity.
        let b = tmat(&[&["1", "t"], &["0", "1"]]);
        assert!(isotropy_certificate(&b, &laurent).unwrap());

        let v2 = synthesize_valuations(&RingFamily::z_inv_s(2).unwrap());
        // Necessary but not sufficient: integral characteristic
        // polynomial, yet the element translates the ν₂-base vertex.
        let half = qmat(&[&[(1, 1), (1, 2)], &[(0, 1), (1, 1)]]);
        assert!(isotropy_certificate(&half, &v2).unwrap());
        let base = base_vertex(2, &Valuation::p_adic(2).unwrap());
        assert_eq!(displacement(&half, &base).unwrap(), 2);

        // diag(2, 1/2) fails: trace 5/2 has ν₂ = −1.
        let d = qmat(&[&[(2, 1), (0, 1)], &[(0, 1), (1, 2)]]);
        assert!(!isotropy_certificate(&d, &v2).unwrap());
    }

    #[test]
    fn certificate_requires_determinant_one() {
        let vs = synthesize_valuations(&RingFamily::z_inv_s(2).unwrap());
        let g = qmat(&[&[(2, 1), (0, 1)], &[(0, 1), (1, 1)]]);
        assert!(matches!(
            isotropy_certificate(&g, &vs),
            Err(Error::NotSpecialLinear(_))
        ));
    }

    #[test]
    fn base_stabilizers_pass_the_certificate() {
        // Every word that fixes all base vertices must carry an integral
        // characteristic polynomial; words that fail the certificate must
        // move some base vertex.
        let cases: Vec<(RingFamily, GeneratorSet)> = vec![
            (
                RingFamily::z_inv_s(2).unwrap(),
                GeneratorSet::new(vec![
                    ("a".into(), qmat(&[&[(1, 1), (1, 2)], &[(0, 1), (1, 1)]])),
                    ("s".into(), qmat(&[&[(0, 1), (-1, 1)], &[(1, 1), (0, 1)]])),
                ])
                .unwrap(),
            ),
            (
                RingFamily::laurent_z(),
                GeneratorSet::new(vec![
                    ("a".into(), tmat(&[&["t", "0"], &["0", "(1)/(t)"]])),
                    ("b".into(), qmat(&[&[(1, 1), (1, 1)], &[(0, 1), (1, 1)]])),
                ])
                .unwrap(),
            ),
        ];
        for (ring, gens) in cases {
            let vs = synthesize_valuations(&ring);
            let bases: Vec<_> = vs.iter().map(|v| base_vertex(2, v)).collect();
            let ball = word_ball(&gens, 4).unwrap();
            let mut fixed = 0;
            for el in ball.iter() {
                let fixes_all = bases
                    .iter()
                    .all(|x| displacement(&el.mat, x).unwrap() == 0);
                if fixes_all {
                    fixed += 1;
                    assert!(
                        isotropy_certificate(&el.mat, &vs).unwrap(),
                        "stabilizing word {:?} must be certified",
                        el.word
                    );
                }
            }
            assert!(fixed > 1, "expected nontrivial stabilizing words ({ring})");
        }
    }
}
