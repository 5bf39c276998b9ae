use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::phase::{CouplingSeries, Monomial, PhasePoly};
use crate::scalar::GaussianRational;

type P = PhasePoly<GaussianRational>;

fn factor(name: &str, k: i64) -> Option<String> {
    match k {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{{{k}}}")),
    }
}

/// Split `x^a p^b ħ^c` into numerator and denominator factor lists.
fn split(m: &Monomial) -> (Vec<String>, Vec<String>) {
    let mut num = Vec::new();
    let mut den = Vec::new();
    for (name, k) in [("\\hbar", m.hbar as i64), ("x", m.x as i64), ("p", m.p as i64)] {
        if k > 0 {
            num.extend(factor(name, k));
        } else {
            den.extend(factor(name, -k));
        }
    }
    (num, den)
}

fn frac(num: Vec<String>, den: Vec<String>) -> String {
    let n = if num.is_empty() { "1".to_string() } else { num.join(" ") };
    if den.is_empty() {
        n
    } else {
        format!("\\frac{{{n}}}{{{}}}", den.join(" "))
    }
}

/// One term with its leading sign (`+` or `-`).
fn term(c: &GaussianRational, m: &Monomial) -> (bool, String) {
    let (mut num, mut den) = split(m);
    let real_only = c.im.is_zero();
    let imag_only = c.re.is_zero();
    let (negative, scalar): (bool, Option<BigRational>) = if real_only {
        (c.re.is_negative(), Some(c.re.abs()))
    } else if imag_only {
        num.insert(0, "i".into());
        (c.im.is_negative(), Some(c.im.abs()))
    } else {
        num.insert(0, format!("\\left({}\\right)", c));
        (false, None)
    };
    if let Some(r) = scalar {
        if !r.denom().is_one() {
            den.insert(0, r.denom().to_string());
        }
        if !r.numer().is_one() || (num.is_empty() && den.is_empty()) {
            num.insert(0, r.numer().to_string());
        }
    }
    (negative, frac(num, den))
}

/// Terms in canonical monomial order.
pub fn latex_poly(a: &P) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in a.terms().enumerate() {
        let (neg, body) = term(c, m);
        match (k, neg) {
            (0, true) => out.push_str(&format!("-{body}")),
            (0, false) => out.push_str(&body),
            (_, true) => out.push_str(&format!(" - {body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
        }
    }
    out
}

pub fn latex_series(s: &CouplingSeries<GaussianRational>) -> String {
    let g = s.coupling();
    let mut parts = Vec::new();
    for (n, c) in s.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let body = latex_poly(c);
        parts.push(match n {
            0 => body,
            1 => format!("{g}\\left({body}\\right)"),
            _ => format!("{g}^{{{n}}}\\left({body}\\right)"),
        });
    }
    if parts.is_empty() {
        return "0".into();
    }
    format!("{} + O({g}^{{{}}})", parts.join(" + "), s.order() + 1)
}
