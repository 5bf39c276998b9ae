//! Berry connection of `H = p² + q₁x² + iq₂px` at the level of star brackets.

use crate::error::{Error, Result};
use crate::phase::{Monomial, PhasePoly};
use crate::scalar::{solve_linear, GaussianRational, MPoly, RatFunc, Scalar};
use crate::star::star_commutator;

type P = PhasePoly<RatFunc>;

/// `(x, p)` exponents of the quadratic basis `p², xp, x²`.
const BASIS: [(u32, i32); 3] = [(0, 2), (1, 1), (2, 0)];

/// `p² + q₁x² + iq₂px` with `q₁`, `q₂` the field variables 0 and 1.
pub fn moyal_hamiltonian() -> P {
    P::from_terms([
        (Monomial::new(0, 2, 0), RatFunc::one()),
        (Monomial::new(2, 0, 0), RatFunc::var(0)),
        (Monomial::new(1, 1, 0), RatFunc::var(1).mul_gaussian(&GaussianRational::i())),
    ])
}

/// `∂H/∂q₁ = x²`, `∂H/∂q₂ = ixp`.
pub fn moyal_hamiltonian_partials() -> [P; 2] {
    let h = moyal_hamiltonian();
    [0, 1].map(|v| h.map_coeffs(|c| c.partial(v)))
}

/// `Aᵢ = ħ⁻¹(rᵢp² + sᵢxp + tᵢx²)` for `i = 1, 2`; the stored coefficients
/// exclude the `ħ⁻¹`.
#[derive(Clone, PartialEq, Debug)]
pub struct MoyalConnection {
    pub r: [RatFunc; 2],
    pub s: [RatFunc; 2],
    pub t: [RatFunc; 2],
}

impl MoyalConnection {
    pub fn zero() -> Self {
        let z = || [RatFunc::zero(), RatFunc::zero()];
        Self { r: z(), s: z(), t: z() }
    }

    /// The closed form with `D = 4q₁ + q₂²`:
    /// `A₁ = (ixp − q₂x²/2)/(ħD)`, `A₂ = (q₁x² + iq₂xp/2)/(ħD)`.
    pub fn closed_form() -> Self {
        let d = locus_polynomial();
        let f = |num: MPoly| RatFunc::new(num, d.clone()).expect("nonzero locus");
        let half = GaussianRational::ratio(1, 2);
        let i = GaussianRational::i();
        Self {
            r: [RatFunc::zero(), RatFunc::zero()],
            s: [f(MPoly::constant(i.clone())), f(MPoly::var(1).scale(&(&i * &half)))],
            t: [f(MPoly::var(1).scale(&-half)), f(MPoly::var(0))],
        }
    }

    /// The phase-space function `Aᵢ` (`i` is 0 or 1).
    pub fn component(&self, i: usize) -> P {
        let c = [&self.r[i], &self.s[i], &self.t[i]];
        P::from_terms(BASIS.iter().zip(c).map(|(&(x, p), c)| (Monomial::new(x, p, -1), c.clone())))
    }

    /// Inverse of [`component`](Self::component); every term must be
    /// `ħ⁻¹` times a quadratic monomial.
    pub fn from_components(a: [&P; 2]) -> Result<Self> {
        let mut out = Self::zero();
        for (i, ai) in a.iter().enumerate() {
            for (m, c) in ai.terms() {
                let k = BASIS
                    .iter()
                    .position(|&(x, p)| Monomial::new(x, p, -1) == *m)
                    .ok_or_else(|| Error::InvalidInput(format!("connection term {m:?} outside the quadratic ansatz")))?;
                let slot = match k {
                    0 => &mut out.r[i],
                    1 => &mut out.s[i],
                    _ => &mut out.t[i],
                };
                *slot = c.clone();
            }
        }
        Ok(out)
    }

    fn coefficients(&self) -> impl Iterator<Item = &RatFunc> {
        self.r.iter().chain(&self.s).chain(&self.t)
    }
}

/// `[[Aᵢ, H]⋆, H]⋆`.
fn double_bracket(a: &P, h: &P) -> P {
    star_commutator(&star_commutator(a, h), h)
}

/// `[∂ᵢH, H]⋆ − [[Aᵢ, H]⋆, H]⋆` for both directions.
pub fn moyal_residual(conn: &MoyalConnection) -> [P; 2] {
    let h = moyal_hamiltonian();
    let dh = moyal_hamiltonian_partials();
    [0, 1].map(|i| &star_commutator(&dh[i], &h) - &double_bracket(&conn.component(i), &h))
}

/// Solve the double-bracket equation within the quadratic ansatz, fixing
/// the gauge by `rᵢ = 0`.
///
/// Without the gauge condition the system is rank deficient: adding any
/// multiple of `H/ħ` to `Aᵢ` leaves it unchanged.
pub fn moyal_connection_solve() -> Result<MoyalConnection> {
    let h = moyal_hamiltonian();
    let dh = moyal_hamiltonian_partials();
    let images: Vec<P> = BASIS[1..].iter().map(|&(x, p)| double_bracket(&P::term(Monomial::new(x, p, -1), RatFunc::one()), &h)).collect();
    let mut out = MoyalConnection::zero();
    for i in 0..2 {
        let target = star_commutator(&dh[i], &h);
        let mut monos: Vec<Monomial> = target.terms().map(|(m, _)| *m).collect();
        for img in &images {
            monos.extend(img.terms().map(|(m, _)| *m));
        }
        monos.sort();
        monos.dedup();
        let rows = monos.iter().map(|m| images.iter().map(|img| img.coeff(*m)).collect()).collect();
        let rhs = monos.iter().map(|m| target.coeff(*m)).collect();
        let x = solve_linear(rows, rhs, images.len())?;
        out.s[i] = x[0].clone();
        out.t[i] = x[1].clone();
    }
    if moyal_residual(&out).iter().any(|r| !r.is_zero()) {
        return Err(Error::NoExactSolution);
    }
    Ok(out)
}

/// `F₁₂ = ∂A₁/∂q₂ − ∂A₂/∂q₁ + [A₁, A₂]⋆`.
pub fn moyal_curvature(conn: &MoyalConnection) -> P {
    let a1 = conn.component(0);
    let a2 = conn.component(1);
    let d1 = a1.map_coeffs(|c| c.partial(1));
    let d2 = a2.map_coeffs(|c| c.partial(0));
    &(&d1 - &d2) + &star_commutator(&a1, &a2)
}

/// `4q₁ + q₂²`.
pub fn locus_polynomial() -> MPoly {
    &MPoly::var(0).scale(&GaussianRational::from_int(4)) + &MPoly::var(1).pow(2)
}

/// Least common multiple of the coefficient denominators, in canonical form.
pub fn singular_locus(conn: &MoyalConnection) -> MPoly {
    conn.coefficients().fold(MPoly::one(), |acc, c| MPoly::lcm(&acc, c.denom())).normalized()
}
