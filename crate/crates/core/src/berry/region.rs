//! Where an oscillator `ħωa†a + ħαaa + ħβa†a†` sits relative to the singular
//! curves `4q₁ + q₂² = 0`.

use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, MPoly};

use super::locus_polynomial;

#[derive(Clone, PartialEq, Debug)]
pub struct LocusReport {
    pub q1: GaussianRational,
    pub q2: GaussianRational,
    /// `4q₁ + q₂²` at the image point.
    pub value: GaussianRational,
    /// Sign of `value`: the region label.
    pub region: i8,
    /// Euclidean distance in the `(α, β)` plane to the curve `αβ = ω²/4`.
    pub distance: f64,
}

/// `q₁ = (ω+α+β)/(ω−α−β)`, `q₂ = 2(α−β)/(ω−α−β)`.
pub fn oscillator_to_q(
    omega: &GaussianRational,
    alpha: &GaussianRational,
    beta: &GaussianRational,
) -> Result<(GaussianRational, GaussianRational)> {
    if !(omega.is_real() && alpha.is_real() && beta.is_real()) {
        return Err(Error::InvalidInput("oscillator parameters must be real".into()));
    }
    let a = &(omega - alpha) - beta;
    let inv = a.inv().ok_or_else(|| Error::DegenerateParams("ω = α + β leaves no p² term".into()))?;
    let q1 = &(&(omega + alpha) + beta) * &inv;
    let q2 = &(&(alpha - beta) * &GaussianRational::from_int(2)) * &inv;
    Ok((q1, q2))
}

pub fn classify_oscillator(
    omega: &GaussianRational,
    alpha: &GaussianRational,
    beta: &GaussianRational,
) -> Result<LocusReport> {
    let (q1, q2) = oscillator_to_q(omega, alpha, beta)?;
    let value = locus_value(&locus_polynomial(), &q1, &q2);
    let region = match value.re.cmp(&num_rational::BigRational::from_integer(0.into())) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    };
    let f = |z: &GaussianRational| z.to_f64_pair().0;
    let distance = distance_to_locus(f(omega), f(alpha), f(beta));
    Ok(LocusReport { q1, q2, value, region, distance })
}

fn locus_value(locus: &MPoly, q1: &GaussianRational, q2: &GaussianRational) -> GaussianRational {
    locus.eval(&[q1.clone(), q2.clone()])
}

/// Distance from the origin `α = β = 0` to the curve: `|ω|/√2`.
pub fn origin_radius(omega: f64) -> f64 {
    omega.abs() / std::f64::consts::SQRT_2
}

/// Distance from `(α, β)` to `αβ = ω²/4`.
///
/// Each branch is parametrised as `±k(eᵘ, e⁻ᵘ)`, `k = |ω|/2`; the squared
/// distance is scanned on a grid in `u` and refined by golden-section search.
pub fn distance_to_locus(omega: f64, alpha: f64, beta: f64) -> f64 {
    let k = omega.abs() / 2.0;
    if k == 0.0 {
        return alpha.abs().min(beta.abs());
    }
    let mut best = f64::INFINITY;
    for sign in [1.0, -1.0] {
        let d2 = |u: f64| {
            let (a, b) = (sign * k * u.exp(), sign * k * (-u).exp());
            (a - alpha).powi(2) + (b - beta).powi(2)
        };
        let span = 2.0 + (alpha.abs() + beta.abs() + 1.0).ln().abs() + (1.0 / k).ln().abs() + k.ln().abs();
        let n = 4000;
        let h = 2.0 * span / n as f64;
        let (mut ib, mut vb) = (0, f64::INFINITY);
        for i in 0..=n {
            let v = d2(-span + i as f64 * h);
            if v < vb {
                (ib, vb) = (i, v);
            }
        }
        let (mut lo, mut hi) = (-span + (ib as f64 - 1.0) * h, -span + (ib as f64 + 1.0) * h);
        let g = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..200 {
            let m1 = hi - g * (hi - lo);
            let m2 = lo + g * (hi - lo);
            if d2(m1) < d2(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        best = best.min(d2((lo + hi) / 2.0).min(vb));
    }
    best.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as G;

    #[test]
    fn harmonic_point_is_regular() {
        let r = classify_oscillator(&G::one(), &G::zero(), &G::zero()).unwrap();
        assert_eq!((r.q1.clone(), r.q2.clone()), (G::one(), G::zero()));
        assert_eq!(r.value, G::from_int(4));
        assert_eq!(r.region, 1);
        assert!((r.distance - origin_radius(1.0)).abs() < 1e-9);
    }

    #[test]
    fn locus_points_map_to_zero() {
        // ω² = 4αβ
        for (w, a, b) in [(2, -1, -1), (4, 1, 4), (-6, 3, 3), (4, -2, -2)] {
            let r = classify_oscillator(&G::from_int(w), &G::from_int(a), &G::from_int(b)).unwrap();
            assert_eq!(r.value, G::zero(), "{w} {a} {b}");
            assert_eq!(r.region, 0);
            assert!(r.distance < 1e-9);
        }
        let r = classify_oscillator(&G::one(), &G::from_int(1), &G::from_int(2)).unwrap();
        assert_eq!(r.region, -1);
    }

    #[test]
    fn value_matches_oscillator_form() {
        // 4q₁ + q₂² = 4(ω² − 4αβ)/(ω − α − β)²
        let (w, a, b) = (G::from_int(5), G::ratio(1, 3), G::ratio(-2, 7));
        let r = classify_oscillator(&w, &a, &b).unwrap();
        let den = &(&w - &a) - &b;
        let num = &(&w * &w) - &(&(&a * &b) * &G::from_int(4));
        let expected = (&num * &G::from_int(4)).checked_div(&(&den * &den)).unwrap();
        assert_eq!(r.value, expected);
    }

    #[test]
    fn degenerate_and_complex_rejected() {
        assert!(matches!(oscillator_to_q(&G::from_int(3), &G::one(), &G::from_int(2)), Err(Error::DegenerateParams(_))));
        assert!(oscillator_to_q(&G::i(), &G::one(), &G::zero()).is_err());
    }

    #[test]
    fn distance_agrees_with_dense_sampling() {
        for (w, a, b) in [(1.0, 0.3, -0.2), (2.0, 3.0, 0.1), (0.5, -1.0, -1.5), (0.0, 0.4, -0.7)] {
            let k2: f64 = w * w / 4.0;
            let mut brute = f64::INFINITY;
            for i in 1..200_000 {
                let al = -20.0 + i as f64 * 40.0 / 200_000.0;
                let be = k2 / al;
                brute = brute.min(((al - a).powi(2) + (be - b).powi(2)).sqrt());
                if k2 == 0.0 {
                    brute = brute.min(a.abs()).min(b.abs());
                }
            }
            let d = distance_to_locus(w, a, b);
            assert!(d <= brute + 1e-9 && brute - d < 1e-3, "{w} {a} {b}: {d} vs {brute}");
        }
    }
}
