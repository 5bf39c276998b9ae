use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::GaussianRational;

/// Exponent vector with trailing zeros trimmed, so `[1]` and `[1, 0]` are the
/// same monomial. With trimming, `Vec`'s lexicographic order equals the lex
/// order on zero-padded vectors (variable 0 most significant).
pub type Exponents = Vec<u32>;

fn trim(mut e: Exponents) -> Exponents {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn exp_add(a: &[u32], b: &[u32]) -> Exponents {
    let n = a.len().max(b.len());
    let v = (0..n)
        .map(|k| a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0))
        .collect();
    trim(v)
}

/// `b - a` when `a` divides `b`.
fn exp_sub(b: &[u32], a: &[u32]) -> Option<Exponents> {
    if a.len() > b.len() {
        return None;
    }
    let mut out = b.to_vec();
    for (k, &ak) in a.iter().enumerate() {
        out[k] = out[k].checked_sub(ak)?;
    }
    Some(trim(out))
}

fn exp_of(e: &[u32], var: usize) -> u32 {
    e.get(var).copied().unwrap_or(0)
}

fn exp_with(e: &[u32], var: usize, value: u32) -> Exponents {
    let mut out = e.to_vec();
    if out.len() <= var {
        out.resize(var + 1, 0);
    }
    out[var] = value;
    trim(out)
}

/// Sparse multivariate polynomial over the Gaussian rationals.
///
/// Variables are anonymous indices; callers supply names when printing.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Exponents, GaussianRational>,
}

type UPoly = BTreeMap<u32, MPoly>;

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(Vec::new(), c)
    }

    pub fn var(index: usize) -> Self {
        Self::monomial(exp_with(&[], index, 1), GaussianRational::one())
    }

    pub fn monomial(exp: Exponents, c: GaussianRational) -> Self {
        let mut p = Self::zero();
        p.add_term(trim(exp), c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, GaussianRational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(trim(e), c);
        }
        p
    }

    fn add_term(&mut self, exp: Exponents, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_value(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(&Exponents, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| exp_of(e, var)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn conj(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, v)| (e.clone(), v.conj())).collect() }
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = exp_of(e, var);
            if k > 0 {
                out.add_term(exp_with(e, var, k - 1), c * &GaussianRational::from_int(k as i64));
            }
        }
        out
    }

    pub fn eval(&self, point: &[GaussianRational]) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &ek) in e.iter().enumerate() {
                if ek == 0 {
                    continue;
                }
                let x = point.get(k).cloned().unwrap_or_default();
                t = &t * &x.pow(ek);
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[num_complex::Complex64]) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let (re, im) = c.to_f64_pair();
            let mut t = num_complex::Complex64::new(re, im);
            for (k, &ek) in e.iter().enumerate() {
                t *= point.get(k).copied().unwrap_or_default().powu(ek);
            }
            acc += t;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (lde, ldc) = d.leading()?;
        let (lde, ldc_inv) = (lde.clone(), ldc.inv()?);
        let mut r = self.clone();
        let mut q = MPoly::zero();
        while let Some((re, rc)) = r.leading() {
            let te = exp_sub(re, &lde)?;
            let tc = rc * &ldc_inv;
            let t = MPoly::monomial(te, tc);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    fn split_var(&self, var: usize) -> UPoly {
        let mut out: UPoly = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = exp_of(e, var);
            out.entry(k).or_default().add_term(exp_with(e, var, 0), c.clone());
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    fn join_var(u: &UPoly, var: usize) -> MPoly {
        let mut out = MPoly::zero();
        for (&k, c) in u {
            for (e, v) in &c.terms {
                out.add_term(exp_with(e, var, k), v.clone());
            }
        }
        out
    }

    fn min_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|e| e.iter().position(|&k| k > 0))
            .min()
    }

    /// Split into `(unit, associate)` with `self = unit · associate`.
    ///
    /// Real polynomials become primitive integer polynomials with a positive
    /// leading coefficient; others become monic.
    pub fn canonical_unit(&self) -> (GaussianRational, MPoly) {
        let Some((_, lc)) = self.leading() else {
            return (GaussianRational::one(), MPoly::zero());
        };
        let unit = if self.is_real() {
            let mut num_gcd = num_bigint::BigInt::zero();
            let mut den_lcm = num_bigint::BigInt::one();
            for c in self.terms.values() {
                num_gcd = num_gcd.gcd(c.re.numer());
                den_lcm = den_lcm.lcm(c.re.denom());
            }
            let mut u = BigRational::new(num_gcd, den_lcm);
            if lc.re.is_negative() {
                u = -u;
            }
            GaussianRational::from_real(u)
        } else {
            lc.clone()
        };
        let inv = unit.inv().expect("nonzero unit");
        (unit, self.scale(&inv))
    }

    pub fn normalized(&self) -> MPoly {
        self.canonical_unit().1
    }

    /// Greatest common divisor, in canonical form (see [`MPoly::canonical_unit`]).
    pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_zero() {
            return b.normalized();
        }
        if b.is_zero() {
            return a.normalized();
        }
        if a.is_constant() || b.is_constant() {
            return MPoly::one();
        }
        if a == b {
            return a.normalized();
        }
        let v = match (a.min_var(), b.min_var()) {
            (Some(x), Some(y)) => x.min(y),
            _ => return MPoly::one(),
        };
        let (au, bu) = (a.split_var(v), b.split_var(v));
        if au.len() == 1 && au.contains_key(&0) {
            return MPoly::gcd(a, &content(&bu));
        }
        if bu.len() == 1 && bu.contains_key(&0) {
            return MPoly::gcd(&content(&au), b);
        }
        let (ca, cb) = (content(&au), content(&bu));
        let c = MPoly::gcd(&ca, &cb);
        let mut f = primitive(&au, &ca);
        let mut g = primitive(&bu, &cb);
        if udeg(&f) < udeg(&g) {
            std::mem::swap(&mut f, &mut g);
        }
        let prim = loop {
            if g.is_empty() {
                break f;
            }
            if udeg(&g) == 0 {
                break BTreeMap::from([(0, MPoly::one())]);
            }
            let r = prem(&f, &g);
            f = g;
            g = if r.is_empty() { r } else { primitive(&r, &content(&r)) };
        };
        (&c * &MPoly::join_var(&prim, v)).normalized()
    }

    pub fn lcm(a: &MPoly, b: &MPoly) -> MPoly {
        if a.is_zero() || b.is_zero() {
            return MPoly::zero();
        }
        let g = MPoly::gcd(a, b);
        let q = a.div_exact(&g).expect("gcd divides");
        (&q * b).normalized()
    }

    /// Render with the given variable names (`v0, v1, ...` past the end).
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    let name = names.get(v).map(|s| s.to_string()).unwrap_or(format!("v{v}"));
                    if k == 1 { name } else { format!("{name}^{k}") }
                })
                .collect();
            let (neg, body) = coeff_text(c, mono.is_empty());
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut parts = Vec::new();
            if !body.is_empty() {
                parts.push(body);
            }
            parts.extend(mono);
            out.push_str(&parts.join("*"));
        }
        out
    }
}

/// Sign and magnitude text of a coefficient; empty magnitude for ±1 on a non-constant monomial.
pub(crate) fn coeff_text(c: &GaussianRational, is_constant: bool) -> (bool, String) {
    use super::format_rational;
    if c.is_real() {
        let neg = c.re.is_negative();
        let a = c.re.abs();
        if a.is_one() && !is_constant {
            return (neg, String::new());
        }
        return (neg, format_rational(&a));
    }
    if c.re.is_zero() {
        let neg = c.im.is_negative();
        let a = c.im.abs();
        if a.is_one() {
            return (neg, "i".into());
        }
        return (neg, format!("{}i", format_rational(&a)));
    }
    (false, format!("({c})"))
}

fn udeg(u: &UPoly) -> u32 {
    u.keys().next_back().copied().unwrap_or(0)
}

fn content(u: &UPoly) -> MPoly {
    let mut g = MPoly::zero();
    for c in u.values() {
        g = MPoly::gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(u: &UPoly, cont: &MPoly) -> UPoly {
    u.iter()
        .map(|(&k, c)| (k, c.div_exact(cont).expect("content divides coefficient")))
        .collect()
}

/// Pseudo-remainder of `a` by `b` in `R[v]`.
fn prem(a: &UPoly, b: &UPoly) -> UPoly {
    let db = udeg(b);
    let lcb = b[&db].clone();
    let mut r = a.clone();
    while !r.is_empty() && udeg(&r) >= db {
        let dr = udeg(&r);
        let lcr = r[&dr].clone();
        let mut next: UPoly = r.iter().map(|(&k, c)| (k, c * &lcb)).collect();
        for (&k, c) in b {
            let e = next.entry(k + dr - db).or_default();
            *e = &*e - &(&lcr * c);
        }
        next.retain(|_, c| !c.is_zero());
        r = next;
    }
    r
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                out.add_term(exp_add(ea, eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&["q1", "q2"]))
    }
}
