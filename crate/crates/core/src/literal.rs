//! Parser for element literals, the inverse of the canonical `Display`
//! forms.
//!
//! Grammar (whitespace ignored everywhere):
//!   rational     := ['-'] digits ['/' digits]
//!   polynomial   := ['-'] term (('+' | '-') term)*
//!   term         := factor ('*' factor)*
//!   factor       := rational | variable ['^' digits]
//!   variable     := 't' for univariate contexts; 't', 't1', 't2', ... for
//!                   multivariate contexts
//!   ratfunc      := '(' polynomial ')' '/' '(' polynomial ')' | polynomial
//!
//! Parsing is directed by a [`FieldCtx`]: the same literal "1/2" is a
//! rational in a rational context and a constant rational function in a
//! rational-function context.

use crate::algext::NumberField;
use crate::elem::{FieldElem, FieldFamily};
use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::poly::{Poly, UniPoly};
use crate::ratfunc::RatFunc;
use crate::scalar::{Integer, Rational};
use num_traits::{One, Zero};
use std::sync::Arc;

/// The target field for parsing: a family plus, for algebraic elements,
/// the ambient number field.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    pub family: FieldFamily,
    pub number_field: Option<Arc<NumberField>>,
}

impl FieldCtx {
    pub fn rational() -> Self {
        FieldCtx {
            family: FieldFamily::Rational,
            number_field: None,
        }
    }

    pub fn rational_function() -> Self {
        FieldCtx {
            family: FieldFamily::RationalFunction,
            number_field: None,
        }
    }

    pub fn algebraic(field: Arc<NumberField>) -> Self {
        FieldCtx {
            family: FieldFamily::Algebraic,
            number_field: Some(field),
        }
    }

    pub fn multivariate() -> Self {
        FieldCtx {
            family: FieldFamily::Multivariate,
            number_field: None,
        }
    }
}

pub fn parse_elem(input: &str, ctx: &FieldCtx) -> Result<FieldElem> {
    match ctx.family {
        FieldFamily::Rational => Ok(FieldElem::Rational(parse_rational(input)?)),
        FieldFamily::RationalFunction => Ok(FieldElem::RatFunc(parse_ratfunc(input)?)),
        FieldFamily::Algebraic => {
            let field = ctx.number_field.as_ref().ok_or_else(|| {
                Error::Validation("algebraic context needs a modulus".into())
            })?;
            let p = parse_unipoly(input)?;
            Ok(FieldElem::AlgElem(field.from_poly(&p)))
        }
        FieldFamily::Multivariate => Ok(FieldElem::MultiPoly(parse_multipoly(input)?)),
    }
}

pub fn parse_rational(input: &str) -> Result<Rational> {
    let mut s = Scanner::new(input);
    let r = s.rational()?;
    s.finish()?;
    Ok(r)
}

pub fn parse_unipoly(input: &str) -> Result<UniPoly> {
    let mut s = Scanner::new(input);
    let p = s.polynomial(VarMode::Univariate)?;
    s.finish()?;
    Ok(univariate(&p))
}

pub fn parse_ratfunc(input: &str) -> Result<RatFunc> {
    let mut s = Scanner::new(input);
    s.skip_ws();
    if s.peek() == Some('(') {
        s.expect('(')?;
        let num = s.polynomial(VarMode::Univariate)?;
        s.expect(')')?;
        s.expect('/')?;
        s.expect('(')?;
        let den = s.polynomial(VarMode::Univariate)?;
        s.expect(')')?;
        s.finish()?;
        RatFunc::new(univariate(&num), univariate(&den))
    } else {
        let p = s.polynomial(VarMode::Univariate)?;
        s.finish()?;
        Ok(RatFunc::from_poly(univariate(&p)))
    }
}

pub fn parse_multipoly(input: &str) -> Result<MultiPoly> {
    let mut s = Scanner::new(input);
    let p = s.polynomial(VarMode::Multivariate)?;
    s.finish()?;
    Ok(p)
}

/// Internally every polynomial parse builds a `MultiPoly`; univariate
/// contexts restrict the variables to `t` and convert down.
fn univariate(p: &MultiPoly) -> UniPoly {
    debug_assert!(p.arity() <= 1);
    let deg = p.max_degree_of(0) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (key, c) in p.terms() {
        let e = key.first().copied().unwrap_or(0) as usize;
        coeffs[e] = c.clone();
    }
    Poly::new(coeffs)
}

#[derive(Clone, Copy, PartialEq)]
enum VarMode {
    Univariate,
    Multivariate,
}

struct Scanner<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    src: &'a str,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            chars: src.chars().peekable(),
            src,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in {:?}", self.src))
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.next()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(self.err(&format!("expected '{want}', found '{c}'"))),
            None => Err(self.err(&format!("expected '{want}', found end of input"))),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(&format!("unexpected trailing '{c}'"))),
        }
    }

    fn digits(&mut self) -> Result<Integer> {
        self.skip_ws();
        let mut ds = String::new();
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            ds.push(self.chars.next().unwrap());
        }
        if ds.is_empty() {
            return Err(self.err("expected digits"));
        }
        Ok(ds.parse::<Integer>().expect("digit string"))
    }

    fn uint(&mut self) -> Result<u32> {
        let n = self.digits()?;
        u32::try_from(&n).map_err(|_| self.err("exponent too large"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let neg = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        let num = self.digits()?;
        let den = if self.peek() == Some('/') {
            self.bump();
            let d = self.digits()?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            d
        } else {
            Integer::one()
        };
        let r = Rational::new(num, den);
        Ok(if neg { -r } else { r })
    }

    /// `t` (univariate, or alias for `t1`) or `t<index>`; returns the
    /// 0-based variable index.
    fn variable(&mut self, mode: VarMode) -> Result<usize> {
        match self.bump() {
            Some('t') => {}
            Some(c) => return Err(self.err(&format!("unknown variable '{c}'"))),
            None => return Err(self.err("expected a variable")),
        }
        // An index must follow immediately (no whitespace skip).
        let mut ds = String::new();
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            ds.push(self.chars.next().unwrap());
        }
        if ds.is_empty() {
            return Ok(0);
        }
        if mode == VarMode::Univariate {
            return Err(self.err("indexed variables are not allowed here"));
        }
        let idx: usize = ds
            .parse()
            .map_err(|_| self.err("variable index too large"))?;
        if idx == 0 {
            return Err(self.err("variable indices start at t1"));
        }
        Ok(idx - 1)
    }

    /// factor ('*' factor)* — accumulates a coefficient and exponent map.
    fn term(&mut self, mode: VarMode) -> Result<MultiPoly> {
        let mut coeff = Rational::one();
        let mut exps: Vec<u32> = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coeff *= self.rational()?;
                }
                Some('t') => {
                    let idx = self.variable(mode)?;
                    let e = if self.peek() == Some('^') {
                        self.bump();
                        self.uint()?
                    } else {
                        1
                    };
                    if exps.len() <= idx {
                        exps.resize(idx + 1, 0);
                    }
                    exps[idx] += e;
                }
                _ => return Err(self.err("expected a coefficient or variable")),
            }
            if self.peek() == Some('*') {
                self.bump();
                continue;
            }
            break;
        }
        Ok(MultiPoly::from_terms([(exps, coeff)]))
    }

    /// ['-'] term (('+' | '-') term)*
    fn polynomial(&mut self, mode: VarMode) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero();
        let mut negate = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            let t = self.term(mode)?;
            acc = if negate { acc - t } else { acc + t };
            match self.peek() {
                Some('+') => {
                    self.bump();
                    negate = false;
                }
                Some('-') => {
                    self.bump();
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int, rational_string};

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 6 / 4 ").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("0").unwrap(), rat_int(0));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("t").is_err());
        assert!(parse_rational("1/2/3").is_err());
    }

    #[test]
    fn polynomials() {
        let p = parse_unipoly("2*t^3 - t + 5").unwrap();
        assert_eq!(p.to_string(), "2*t^3 - t + 5");
        assert_eq!(parse_unipoly("-t^2").unwrap().to_string(), "-t^2");
        assert_eq!(parse_unipoly("1/2*t").unwrap().to_string(), "1/2*t");
        assert_eq!(parse_unipoly("0").unwrap().to_string(), "0");
        assert_eq!(parse_unipoly("t + t").unwrap().to_string(), "2*t");
        assert!(parse_unipoly("t1 + t2").is_err());
        assert!(parse_unipoly("x").is_err());
    }

    #[test]
    fn rational_functions() {
        let f = parse_ratfunc("(t^2 + 1)/(t^5)").unwrap();
        assert_eq!(f.to_string(), "(t^2 + 1)/(t^5)");
        assert_eq!(parse_ratfunc("1/2").unwrap().to_string(), "1/2");
        assert_eq!(parse_ratfunc("t + 1/2").unwrap().to_string(), "t + 1/2");
        // non-canonical input still reduces
        assert_eq!(
            parse_ratfunc("(2*t + 2)/(2*t^2 + 2*t)").unwrap().to_string(),
            "(1)/(t)"
        );
        assert!(parse_ratfunc("t/2").is_err());
        assert!(parse_ratfunc("(1)/(0)").is_err());
    }

    #[test]
    fn multivariate() {
        let p = parse_multipoly("t1^2 - 2*t1*t2 + 1/2").unwrap();
        assert_eq!(p.to_string(), "t1^2 - 2*t1*t2 + 1/2");
        // bare t is t1
        assert_eq!(parse_multipoly("t").unwrap(), MultiPoly::var(0));
        assert_eq!(parse_multipoly("t*t").unwrap().to_string(), "t1^2");
        assert!(parse_multipoly("t0").is_err());
    }

    #[test]
    fn context_directed_parsing() {
        let e = parse_elem("1/2", &FieldCtx::rational()).unwrap();
        assert_eq!(e.family(), FieldFamily::Rational);
        let e = parse_elem("1/2", &FieldCtx::rational_function()).unwrap();
        assert_eq!(e.family(), FieldFamily::RationalFunction);
        assert!(parse_elem("t", &FieldCtx::rational()).is_err());
    }

    #[test]
    fn algebraic_context_reduces() {
        let k = NumberField::new(Poly::new(vec![
            rat_int(-2),
            rat_int(0),
            rat_int(1),
        ]))
        .unwrap();
        let ctx = FieldCtx::algebraic(k);
        let e = parse_elem("t^2 + t", &ctx).unwrap(); // reduces to t + 2
        assert_eq!(e.to_string(), "t + 2");
    }

    proptest::proptest! {
        #[test]
        fn rational_roundtrip(n in -1000i64..1000, d in 1i64..1000) {
            let r = rat(n, d);
            let printed = rational_string(&r);
            proptest::prop_assert_eq!(parse_rational(&printed).unwrap(), r);
        }

        #[test]
        fn unipoly_roundtrip(coeffs in proptest::collection::vec((-9i64..10, 1i64..5), 0..6)) {
            let p = Poly::new(coeffs.iter().map(|&(n, d)| rat(n, d)).collect());
            let printed = p.to_string();
            proptest::prop_assert_eq!(parse_unipoly(&printed).unwrap(), p);
        }

        #[test]
        fn ratfunc_roundtrip(
            num in proptest::collection::vec(-9i64..10, 0..5),
            den in proptest::collection::vec(-9i64..10, 1..5),
        ) {
            let n = Poly::new(num.iter().map(|&c| rat_int(c)).collect());
            let d = Poly::new(den.iter().map(|&c| rat_int(c)).collect());
            proptest::prop_assume!(!d.is_zero());
            let f = RatFunc::new(n, d).unwrap();
            let printed = f.to_string();
            proptest::prop_assert_eq!(parse_ratfunc(&printed).unwrap(), f);
        }

        #[test]
        fn multipoly_roundtrip(
            terms in proptest::collection::vec(
                (proptest::collection::vec(0u32..4, 0..3), -9i64..10),
                0..5,
            )
        ) {
            let p = MultiPoly::from_terms(
                terms.into_iter().map(|(k, c)| (k, rat_int(c))),
            );
            let printed = p.to_string();
            proptest::prop_assert_eq!(parse_multipoly(&printed).unwrap(), p);
        }
    }
}
