//! Curvature, plaquette transport and the exceptional-point holonomy.

use num_complex::Complex64;

use super::CMatrix;
use crate::error::Result;
use crate::scalar::GaussianRational;

/// Step used for central-difference partials.
pub const DIFF_STEP: f64 = 1e-5;

/// `F₁₂ = ∂A₁/∂q₂ − ∂A₂/∂q₁ + [A₁, A₂]`.
pub fn curvature_matrix(a1: &CMatrix, a2: &CMatrix, da1_dq2: &CMatrix, da2_dq1: &CMatrix) -> CMatrix {
    &(da1_dq2 - da2_dq1) + &a1.commutator(a2)
}

/// Central difference of a matrix field along `q_dir` (0 or 1).
pub fn partial<F>(field: &F, q: [f64; 2], dir: usize, step: f64) -> Result<CMatrix>
where
    F: Fn([f64; 2]) -> Result<CMatrix>,
{
    let mut qp = q;
    let mut qm = q;
    qp[dir] += step;
    qm[dir] -= step;
    Ok((&field(qp)? - &field(qm)?).scale(Complex64::new(0.5 / step, 0.0)))
}

/// A connection field: `q ↦ [A₁(q), A₂(q)]`.
pub trait ConnectionField: Fn([f64; 2]) -> Result<[CMatrix; 2]> {}
impl<T: Fn([f64; 2]) -> Result<[CMatrix; 2]>> ConnectionField for T {}

fn component<'a>(field: &'a impl ConnectionField, k: usize) -> impl Fn([f64; 2]) -> Result<CMatrix> + 'a {
    move |q| Ok(field(q)?[k].clone())
}

/// Curvature of a field at `q`, partials by central differences.
pub fn curvature_of_field(field: &impl ConnectionField, q: [f64; 2]) -> Result<CMatrix> {
    let [a1, a2] = field(q)?;
    let da1 = partial(&component(field, 0), q, 1, DIFF_STEP)?;
    let da2 = partial(&component(field, 1), q, 0, DIFF_STEP)?;
    Ok(curvature_matrix(&a1, &a2, &da1, &da2))
}

/// Transport around the plaquette `q → q+dq ĵ → q+dq(î+ĵ) → q+dq î → q`
/// (`i = 0`, `j = 1`) as the product of the four second-order factors, all
/// expanded about `q`. Equals `1 + F₁₂ dq² + O(dq³)`.
pub fn plaquette_transport(field: &impl ConnectionField, q: [f64; 2], dq: f64) -> Result<CMatrix> {
    let [ai, aj] = field(q)?;
    let d = |k: usize, dir: usize| partial(&component(field, k), q, dir, DIFF_STEP);
    let (di_ai, dj_ai, di_aj, dj_aj) = (d(0, 0)?, d(0, 1)?, d(1, 0)?, d(1, 1)?);
    let one = CMatrix::identity(ai.dim());
    let e = Complex64::new(dq, 0.0);
    let e2 = Complex64::new(dq * dq, 0.0);
    let h = Complex64::new(0.5, 0.0);
    let ai2 = &ai * &ai;
    let aj2 = &aj * &aj;
    let m1 = &(&one + &aj.scale(e)) + &(&dj_aj + &aj2).scale(h * e2);
    let m2 = &(&(&one + &ai.scale(e)) + &dj_ai.scale(e2)) + &(&di_ai + &ai2).scale(h * e2);
    let m3 = &(&(&one - &aj.scale(e)) - &di_aj.scale(e2)) + &(&aj2 - &dj_aj).scale(h * e2);
    let m4 = &(&one - &ai.scale(e)) + &(&ai2 - &di_ai).scale(h * e2);
    Ok(&(&(&m4 * &m3) * &m2) * &m1)
}

/// `‖T − 1 − F dq²‖` for the plaquette transport `T`.
pub fn plaquette_defect(field: &impl ConnectionField, q: [f64; 2], dq: f64) -> Result<f64> {
    let t = plaquette_transport(field, q, dq)?;
    let f = curvature_of_field(field, q)?;
    let expected = &CMatrix::identity(t.dim()) + &f.scale(Complex64::new(dq * dq, 0.0));
    Ok((&t - &expected).max_norm())
}

/// Path-ordered transport `dS = A·dq S` around the same plaquette with the
/// field evaluated along the edges (RK4, `steps` per edge).
pub fn path_ordered_plaquette(field: &impl ConnectionField, q: [f64; 2], dq: f64, steps: usize) -> Result<CMatrix> {
    let corners = [q, [q[0], q[1] + dq], [q[0] + dq, q[1] + dq], [q[0] + dq, q[1]], q];
    let n = field(q)?[0].dim();
    let mut s = CMatrix::identity(n);
    for w in corners.windows(2) {
        let (a, b) = (w[0], w[1]);
        let h = 1.0 / steps as f64;
        let dir = [b[0] - a[0], b[1] - a[1]];
        let gen = |t: f64| -> Result<CMatrix> {
            let p = [a[0] + t * dir[0], a[1] + t * dir[1]];
            let [a1, a2] = field(p)?;
            Ok(&a1.scale(Complex64::new(dir[0], 0.0)) + &a2.scale(Complex64::new(dir[1], 0.0)))
        };
        for k in 0..steps {
            let t = k as f64 * h;
            let hc = Complex64::new(h, 0.0);
            let k1 = &gen(t)? * &s;
            let k2 = &gen(t + h / 2.0)? * &(&s + &k1.scale(hc * 0.5));
            let k3 = &gen(t + h / 2.0)? * &(&s + &k2.scale(hc * 0.5));
            let k4 = &gen(t + h)? * &(&s + &k3.scale(hc));
            let incr = &(&(&k1 + &k2.scale(Complex64::new(2.0, 0.0))) + &k3.scale(Complex64::new(2.0, 0.0))) + &k4;
            s = &s + &incr.scale(hc / 6.0);
        }
    }
    Ok(s)
}

/// `A + S ∂Λ Λ⁻¹ S⁻¹`, the connection of the eigenbasis `SΛ`; `None` if
/// `S` or `Λ` is singular.
pub fn gauge_transform(a: &CMatrix, s: &CMatrix, dlam: &CMatrix, lam: &CMatrix) -> Option<CMatrix> {
    let shift = &(&(s * dlam) * &lam.inverse()?) * &s.inverse()?;
    Some(a + &shift)
}

/// Lowest-order azimuthal connection around the exceptional point `(0, 1)`.
pub fn a_phi_limit() -> CMatrix {
    CMatrix::from_2x2(Complex64::new(0.0, 0.5), Complex64::new(-0.5, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
}

/// `A_φ = i r e^{iφ} A₁(q)` on the circle `q = (r cos φ, 1 + r sin φ)`.
pub fn a_phi(r: f64, phi: f64) -> Result<CMatrix> {
    let q = [r * phi.cos(), 1.0 + r * phi.sin()];
    let [a1, _] = super::gauge_fixed_connection(q)?;
    Ok(a1.scale(Complex64::new(0.0, r) * Complex64::from_polar(1.0, phi)))
}

/// `F = exp(2π A_φ)`.
pub fn holonomy_exceptional() -> CMatrix {
    a_phi_limit().scale(Complex64::new(2.0 * std::f64::consts::PI, 0.0)).exp()
}

/// `(1 + 2π A_φ / N)^N`.
pub fn holonomy_product(n: u64) -> CMatrix {
    let step = &CMatrix::identity(2) + &a_phi_limit().scale(Complex64::new(2.0 * std::f64::consts::PI / n as f64, 0.0));
    step.pow(n)
}

/// Element `a + bσ` of the extension by a formal square root `σ = √(2w)`.
#[derive(Clone, PartialEq, Debug)]
pub struct SigmaLinear {
    pub a: GaussianRational,
    pub b: GaussianRational,
}

/// The exact monodromy `[[−1, −2i], [0, 1]]`.
pub fn monodromy_exact() -> [[GaussianRational; 2]; 2] {
    let g = GaussianRational::from_int;
    [[g(-1), &g(-2) * &GaussianRational::i()], [g(0), g(1)]]
}

/// Leading-order eigenvectors `u± = (−i ± iσ, 1)` near the exceptional point.
pub fn eigenvector_leading(sign: i64) -> [SigmaLinear; 2] {
    let i = GaussianRational::i();
    [
        SigmaLinear { a: -i.clone(), b: &GaussianRational::from_int(sign) * &i },
        SigmaLinear { a: GaussianRational::one(), b: GaussianRational::zero() },
    ]
}

pub fn apply_exact(m: &[[GaussianRational; 2]; 2], u: &[SigmaLinear; 2]) -> [SigmaLinear; 2] {
    let row = |r: &[GaussianRational; 2]| SigmaLinear {
        a: &(&r[0] * &u[0].a) + &(&r[1] * &u[1].a),
        b: &(&r[0] * &u[0].b) + &(&r[1] * &u[1].b),
    };
    [row(&m[0]), row(&m[1])]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::berry::{eigenvector_matrix, eigenvector_matrix_partial, gauge_fixed_connection};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn model_field(q: [f64; 2]) -> Result<[CMatrix; 2]> {
        gauge_fixed_connection(q)
    }

    /// A smooth, non-flat field for order checks.
    fn curved_field(q: [f64; 2]) -> Result<[CMatrix; 2]> {
        let a1 = CMatrix::from_2x2(c(q[1].sin(), 0.2), c(0.3 * q[0], q[1] * q[1]), c(0.1, -q[0]), c(0.0, 0.5 * q[1]));
        let a2 = CMatrix::from_2x2(c(q[0] * q[1], 0.0), c(-0.4, q[0].cos()), c(q[1], 0.3), c(0.2 * q[0] * q[0], 0.1));
        Ok([a1, a2])
    }

    #[test]
    fn flat_away_from_exceptional_points() {
        let f = curvature_of_field(&model_field, [0.5, 1.0 / 3.0]).unwrap();
        assert!(f.max_norm() <= 1e-8, "{}", f.max_norm());
    }

    #[test]
    fn trivial_curvatures() {
        let m = CMatrix::from_2x2(c(1.0, 0.0), c(2.0, 1.0), c(0.0, 0.0), c(-1.0, 0.0));
        let z = CMatrix::zeros(2);
        assert_eq!(curvature_matrix(&m, &m, &z, &z).max_norm(), 0.0);
        let sym = |q: [f64; 2]| -> Result<[CMatrix; 2]> {
            Ok([m.scale(c(q[1], 0.0)), m.scale(c(q[0], 0.0))])
        };
        assert!(curvature_of_field(&sym, [0.3, 0.8]).unwrap().max_norm() < 1e-9);
    }

    #[test]
    fn plaquette_examples() {
        let m1 = CMatrix::from_2x2(c(0.0, 1.0), c(1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0));
        let m2 = CMatrix::from_2x2(c(1.0, 0.0), c(0.0, 0.0), c(0.5, 0.0), c(0.0, -1.0));
        let konst = |_q: [f64; 2]| -> Result<[CMatrix; 2]> { Ok([m1.clone(), m2.clone()]) };
        let dq = 1e-3;
        let t = plaquette_transport(&konst, [0.0, 0.0], dq).unwrap();
        let expected = &CMatrix::identity(2) + &m1.commutator(&m2).scale(c(dq * dq, 0.0));
        assert!((&t - &expected).max_norm() < 1e-7);

        let lin = |q: [f64; 2]| -> Result<[CMatrix; 2]> { Ok([m1.scale(c(q[1], 0.0)), CMatrix::zeros(2)]) };
        let f = curvature_of_field(&lin, [0.2, 0.4]).unwrap();
        assert!((&f - &m1).max_norm() < 1e-8);
    }

    #[test]
    fn plaquette_is_second_order_accurate() {
        for field in [curved_field as fn([f64; 2]) -> Result<[CMatrix; 2]>, model_field] {
            let q = [0.4, 0.3];
            let d1 = plaquette_defect(&field, q, 0.02).unwrap();
            let d2 = plaquette_defect(&field, q, 0.01).unwrap();
            assert!(d1 / d2 >= 7.0, "ratio {}", d1 / d2);
        }
    }

    #[test]
    fn stated_factors_agree_with_path_ordering() {
        let q = [0.4, 0.3];
        for dq in [0.02, 0.01] {
            let t = plaquette_transport(&curved_field, q, dq).unwrap();
            let exact = path_ordered_plaquette(&curved_field, q, dq, 50).unwrap();
            let f = curvature_of_field(&curved_field, q).unwrap();
            let target = &CMatrix::identity(2) + &f.scale(c(dq * dq, 0.0));
            assert!((&exact - &target).max_norm() < 10.0 * dq.powi(3));
            assert!((&t - &exact).max_norm() < 10.0 * dq.powi(3));
        }
    }

    #[test]
    fn monodromy() {
        let f = holonomy_exceptional();
        let expected = CMatrix::from_2x2(c(-1.0, 0.0), c(0.0, -2.0), c(0.0, 0.0), c(1.0, 0.0));
        assert!((&f - &expected).max_norm() < 1e-12);
        assert!((&holonomy_product(100_000) - &expected).max_norm() < 1e-4);
        for r in [1e-3, 1e-5] {
            assert!((&a_phi(r, 0.7).unwrap() - &a_phi_limit()).max_norm() < 10.0 * r);
        }
    }

    #[test]
    fn eigenvectors_swap() {
        let f = monodromy_exact();
        assert_eq!(apply_exact(&f, &eigenvector_leading(1)), eigenvector_leading(-1));
        assert_eq!(apply_exact(&f, &eigenvector_leading(-1)), eigenvector_leading(1));
    }

    #[test]
    fn curvature_is_gauge_invariant() {
        // Λ = diag(λ₁, λ₂) with analytic partials
        let lam = |q: [f64; 2]| {
            CMatrix::from_2x2(c(1.5 + (q[0] * q[1]).sin(), 0.3 * q[0]), c(0.0, 0.0), c(0.0, 0.0), c((0.5 * q[1]).exp(), q[0] * q[0]))
        };
        let dlam = |q: [f64; 2], dir: usize| {
            let (d1, d2) = if dir == 0 {
                (c(q[1] * (q[0] * q[1]).cos(), 0.3), c(0.0, 2.0 * q[0]))
            } else {
                (c(q[0] * (q[0] * q[1]).cos(), 0.0), c(0.5 * (0.5 * q[1]).exp(), 0.0))
            };
            CMatrix::from_2x2(d1, c(0.0, 0.0), c(0.0, 0.0), d2)
        };
        let pure = |q: [f64; 2]| -> Result<[CMatrix; 2]> {
            let sinv = eigenvector_matrix(q).inverse().unwrap();
            Ok([&eigenvector_matrix_partial(q, 0) * &sinv, &eigenvector_matrix_partial(q, 1) * &sinv])
        };
        let transformed = |q: [f64; 2]| -> Result<[CMatrix; 2]> {
            let [a1, a2] = pure(q)?;
            let s = eigenvector_matrix(q);
            let l = lam(q);
            Ok([
                gauge_transform(&a1, &s, &dlam(q, 0), &l).unwrap(),
                gauge_transform(&a2, &s, &dlam(q, 1), &l).unwrap(),
            ])
        };
        let q = [0.45, 0.25];
        // the rule agrees with differentiating the new eigenbasis directly
        let t = |p: [f64; 2]| Ok(&eigenvector_matrix(p) * &lam(p));
        let tinv = t(q).unwrap().inverse().unwrap();
        for dir in 0..2 {
            let direct = &partial(&t, q, dir, DIFF_STEP).unwrap() * &tinv;
            assert!((&direct - &transformed(q).unwrap()[dir]).max_norm() < 1e-8);
        }
        let f = curvature_of_field(&pure, q).unwrap();
        let f2 = curvature_of_field(&transformed, q).unwrap();
        assert!((&f - &f2).max_norm() < 1e-8, "{}", (&f - &f2).max_norm());
        assert!(f.max_norm() < 1e-8);
    }
}
