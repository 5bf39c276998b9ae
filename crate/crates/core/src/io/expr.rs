//! Text syntax for phase-space polynomials and metric candidates.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (['*'|'/'] power)*        juxtaposition multiplies
//! power  := atom ['^' ['-'] int]
//! atom   := int | 'i' | 'x' | 'p' | 'hbar' | 'ħ' | '(' expr ')'
//! ```
//!
//! Division and negative powers are allowed only for single terms free of
//! `x`. A metric candidate is `poly:EXPR`, `expquad:[EXPR*]exp(EXPR)` or a
//! bare `EXPR`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::metric::MetricCandidate;
use crate::phase::PhasePoly;
use crate::scalar::GaussianRational;
use crate::star::ExpQuadForm;

type G = GaussianRational;
type P = PhasePoly<G>;

const MAX_POWER: u32 = 64;
const MAX_DIGITS: usize = 200;
const MAX_DEPTH: usize = 64;
const MAX_DEGREE: u64 = 512;

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
}

fn parse_error(column: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line: 1, column, msg: msg.into() }
}

/// Tokens tagged with their 1-based column; `base` counts characters
/// consumed before `s` (a `poly:` prefix, say).
fn tokenize(s: &str, base: usize) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let (pos, ch) = (base + k + 1, chars[k]);
        k += 1;
        let tok = match ch {
            c if c.is_whitespace() => continue,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::Open,
            ')' => Tok::Close,
            'ħ' => Tok::Ident("hbar".into()),
            c if c.is_ascii_digit() => {
                let mut end = k;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                let digits: String = chars[k - 1..end].iter().collect();
                if digits.len() > MAX_DIGITS {
                    return Err(parse_error(pos, "integer too long"));
                }
                k = end;
                Tok::Int(digits.parse().expect("ascii digits"))
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = k;
                while end < chars.len() && chars[end].is_ascii_alphabetic() {
                    end += 1;
                }
                let word: String = chars[k - 1..end].iter().collect();
                k = end;
                Tok::Ident(word)
            }
            c => return Err(parse_error(pos, format!("unexpected `{c}`"))),
        };
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    depth: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn err(&self, what: &str) -> Error {
        match self.toks.get(self.at) {
            Some((pos, t)) => parse_error(*pos, format!("{what} (found {t:?})")),
            None => parse_error(self.end, format!("{what} at end of input")),
        }
    }

    fn expr(&mut self) -> Result<P> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err("nesting too deep"));
        }
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<P> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    let d = self.power()?;
                    let inv = d.monomial_inverse().ok_or_else(|| self.err("can only divide by a nonzero x-free monomial"))?;
                    acc = &acc * &inv;
                }
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::Open) => acc = &acc * &self.power()?,
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<P> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        let n = match self.peek() {
            Some(Tok::Int(n)) => u32::try_from(n.clone()).ok().filter(|n| *n <= MAX_POWER),
            _ => return Err(self.err("expected an integer exponent")),
        }
        .ok_or_else(|| self.err("exponent too large"))?;
        self.at += 1;
        let deg = base.terms().map(|(m, _)| m.x as u64 + m.p.unsigned_abs() as u64 + m.hbar.unsigned_abs() as u64).max().unwrap_or(0);
        if deg * n as u64 > MAX_DEGREE {
            return Err(self.err("power too large"));
        }
        if neg {
            let inv = base.monomial_inverse().ok_or_else(|| self.err("negative power of a non-monomial or of x"))?;
            Ok(inv.pow(n))
        } else {
            Ok(base.pow(n))
        }
    }

    fn atom(&mut self) -> Result<P> {
        let tok = self.peek().cloned().ok_or_else(|| self.err("expected a factor"))?;
        self.at += 1;
        match tok {
            Tok::Int(n) => Ok(P::constant(G::from_bigint(n))),
            Tok::Ident(w) => match w.as_str() {
                "i" => Ok(P::constant(G::i())),
                "x" => Ok(P::x()),
                "p" => Ok(P::p()),
                "hbar" => Ok(P::hbar()),
                _ => {
                    self.at -= 1;
                    Err(self.err("unknown symbol"))
                }
            },
            Tok::Open => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.err("expected `)`"));
                }
                self.at += 1;
                Ok(e)
            }
            _ => {
                self.at -= 1;
                Err(self.err("expected a factor"))
            }
        }
    }
}

/// Parse a polynomial expression in `x`, `p`, `ħ` with Gaussian-rational
/// coefficients.
pub fn parse_poly(s: &str) -> Result<P> {
    parse_poly_at(s, 0)
}

fn parse_poly_at(s: &str, base: usize) -> Result<P> {
    let end = base + s.chars().count() + 1;
    let mut parser = Parser { toks: tokenize(s, base)?, at: 0, depth: 0, end };
    if parser.toks.is_empty() {
        return Err(parse_error(end, "empty expression"));
    }
    let e = parser.expr()?;
    if parser.at != parser.toks.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(e)
}

/// `[P*]exp(Q)`.
pub fn parse_expquad(s: &str) -> Result<ExpQuadForm<G>> {
    parse_expquad_at(s, 0)
}

fn parse_expquad_at(s: &str, base: usize) -> Result<ExpQuadForm<G>> {
    let col = |byte: usize| base + s[..byte].chars().count();
    let start = s.rfind("exp(").ok_or_else(|| parse_error(base + 1, "expected `exp(`"))?;
    let body = s[start + 4..].trim_end();
    let inner = body
        .strip_suffix(')')
        .ok_or_else(|| parse_error(col(s.len()) + 1, "`exp(...)` must close the expression"))?;
    let head = s[..start].trim_end();
    let head = head.strip_suffix('*').unwrap_or(head);
    let prefactor = if head.trim().is_empty() { P::one() } else { parse_poly_at(head, base)? };
    ExpQuadForm::new(prefactor, parse_poly_at(inner, col(start + 4))?)
}

/// `poly:EXPR`, `expquad:...` or a bare polynomial.
pub fn parse_candidate(s: &str) -> Result<MetricCandidate<G>> {
    if let Some(rest) = s.strip_prefix("expquad:") {
        return Ok(MetricCandidate::ExpQuad(parse_expquad_at(rest, 8)?));
    }
    match s.strip_prefix("poly:") {
        Some(body) => Ok(MetricCandidate::Poly(parse_poly_at(body, 5)?)),
        None => Ok(MetricCandidate::Poly(parse_poly(s)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_terms() {
        let a = parse_poly("3 i hbar^2 x / (4 p^4) - x^4/(4 hbar p)").unwrap();
        let expected = &P::mono(G::complex((0, 1), (3, 4)), 1, -4, 2) + &P::mono(G::ratio(-1, 4), 4, -1, -1);
        assert_eq!(a, expected);
        assert_eq!(parse_poly("-2p").unwrap(), P::mono(G::from_int(-2), 0, 1, 0));
        assert_eq!(parse_poly("(x+p)^2").unwrap(), &(&P::x().pow(2) + &P::p().pow(2)) + &(&P::x() * &P::p()).scale(&G::from_int(2)));
        assert_eq!(parse_poly("p^-2 ħ").unwrap(), P::mono(G::one(), 0, -2, 1));
        assert_eq!(parse_poly("1/2 + i/3").unwrap(), P::constant(G::complex((1, 2), (1, 3))));
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["", "x^-1", "1/x", "1/(p+1)", "y", "(x", "x)", "x^99", "((x+p)^60)^60", "2 ^", "1/0", "p^-1/0"] {
            assert!(parse_poly(bad).is_err(), "{bad}");
        }
        let deep = "(".repeat(100) + "x" + &")".repeat(100);
        assert!(parse_poly(&deep).is_err());
    }

    #[test]
    fn errors_report_columns() {
        let col = |s: &str| match parse_candidate(s) {
            Err(Error::Parse { line: 1, column, .. }) => column,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(col("x + y"), 5);
        assert_eq!(col("poly:x + y"), 10);
        assert_eq!(col("ħ ? x"), 3);
        assert_eq!(col("expquad:exp(-2q)"), 15);
        assert_eq!(col("x +"), 4);
    }

    proptest::proptest! {
        #[test]
        fn never_panics(s in "[0-9xpih+*/^() -]{0,40}") {
            let _ = parse_candidate(&s);
            let _ = parse_candidate(&format!("expquad:{s}"));
        }

        #[test]
        fn integer_sums(a in -1000i64..1000, b in 1i64..1000) {
            let e = format!("{a}/{b} x + ({a}) p");
            let expected = &P::x().scale_gaussian(&G::ratio(a, b)) + &P::p().scale_gaussian(&G::from_int(a));
            proptest::prop_assert_eq!(parse_poly(&e).unwrap(), expected);
        }
    }

    #[test]
    fn candidates() {
        let MetricCandidate::ExpQuad(e) = parse_candidate("expquad:exp(-2p)").unwrap() else { panic!() };
        assert_eq!(e, ExpQuadForm::exp(P::mono(G::from_int(-2), 0, 1, 0)).unwrap());
        let MetricCandidate::ExpQuad(e) = parse_candidate("expquad:(1+x)*exp(p^2/hbar)").unwrap() else { panic!() };
        assert_eq!(e.prefactor(), &(&P::one() + &P::x()));
        assert!(parse_candidate("expquad:exp(x^3)").is_err());
        assert!(matches!(parse_candidate("poly:1 + x p").unwrap(), MetricCandidate::Poly(_)));
        assert!(matches!(parse_candidate("x").unwrap(), MetricCandidate::Poly(_)));
    }
}
