//! The two-level model `H = [[1, z], [z, −1]]`, `z = q₁ + i q₂`.

use num_complex::Complex64;

use super::CMatrix;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn z(q: [f64; 2]) -> Complex64 {
    Complex64::new(q[0], q[1])
}

pub fn hamiltonian(q: [f64; 2]) -> CMatrix {
    let z = z(q);
    CMatrix::from_2x2(ONE, z, z, -ONE)
}

/// `∂H/∂q₁` and `∂H/∂q₂`.
pub fn hamiltonian_partials() -> [CMatrix; 2] {
    [CMatrix::from_2x2(ZERO, ONE, ONE, ZERO), CMatrix::from_2x2(ZERO, I, I, ZERO)]
}

/// The general solution of the double-commutator equation,
/// parametrised by `w₁` and the diagonal shifts `y₁`, `y₂`.
pub fn general_connection(q: [f64; 2], w1: Complex64, y: [Complex64; 2]) -> Result<[CMatrix; 2]> {
    let z = z(q);
    let d = ONE + z * z;
    if z.norm() == 0.0 || d.norm() == 0.0 {
        return Err(Error::PoleAtPoint);
    }
    let a00 = 2.0 * w1 / z - ONE / (z * d);
    let a01 = w1 - ONE / d;
    let a1 = CMatrix::from_2x2(a00 + y[0], a01, w1, y[0]);
    let a2 = CMatrix::from_2x2(I * a00 + y[1], I * a01, I * w1, y[1]);
    Ok([a1, a2])
}

/// The gauge `w₁ = 1/2`, `y = 0`, where the origin is regular:
/// `A₁ = −iA₂ = [[z/(1+z²), 1/2 − 1/(1+z²)], [1/2, 0]]`.
pub fn gauge_fixed_connection(q: [f64; 2]) -> Result<[CMatrix; 2]> {
    let z = z(q);
    let d = ONE + z * z;
    if d.norm() == 0.0 {
        return Err(Error::PoleAtPoint);
    }
    let half = Complex64::new(0.5, 0.0);
    let a1 = CMatrix::from_2x2(z / d, half - ONE / d, half, ZERO);
    let a2 = a1.scale(I);
    Ok([a1, a2])
}

/// `max_i ‖[∂ᵢH, H] − [[Aᵢ, H], H]‖`.
pub fn verify_connection_matrix(h: &CMatrix, dh: &[CMatrix], a: &[CMatrix]) -> Result<f64> {
    if dh.len() != a.len() {
        return Err(Error::SizeMismatch(dh.len(), a.len()));
    }
    let mut worst: f64 = 0.0;
    for (d, ai) in dh.iter().zip(a) {
        if d.dim() != h.dim() || ai.dim() != h.dim() {
            return Err(Error::SizeMismatch(h.dim(), ai.dim()));
        }
        let lhs = d.commutator(h);
        let rhs = ai.commutator(h).commutator(h);
        worst = worst.max((&lhs - &rhs).max_norm());
    }
    Ok(worst)
}

/// Solve `[[X, H], H] = [∂ᵢH, H]` for each direction with the gauge
/// `X₁₁ = 0`, `X₁₀ = wᵢ`, `w = (1/2, i/2)`.
///
/// The kernel of `X ↦ [[X,H],H]` is spanned by `1` and `H` when `H` has
/// distinct eigenvalues and `z ≠ 0`; the two gauge rows fix it. Where that
/// fails the system loses rank and `RankDeficient` is returned: at the
/// exceptional points `q = (0, ±1)`, and at the origin, where `H` is
/// diagonal and the gauge cannot pin the `H` direction.
pub fn solve_connection_2x2(q: [f64; 2]) -> Result<[CMatrix; 2]> {
    let h = hamiltonian(q);
    let dh = hamiltonian_partials();
    let w = [Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.5)];
    let mut out = Vec::with_capacity(2);
    for i in 0..2 {
        let mut rows = vec![[ZERO; 5]; 6];
        for k in 0..4 {
            let mut e = CMatrix::zeros(2);
            e[(k / 2, k % 2)] = ONE;
            let img = e.commutator(&h).commutator(&h);
            for r in 0..4 {
                rows[r][k] = img[(r / 2, r % 2)];
            }
        }
        let rhs = dh[i].commutator(&h);
        for r in 0..4 {
            rows[r][4] = rhs[(r / 2, r % 2)];
        }
        rows[4][3] = ONE;
        rows[5][2] = ONE;
        rows[5][4] = w[i];
        let x = solve_overdetermined(rows)?;
        out.push(CMatrix::from_2x2(x[0], x[1], x[2], x[3]));
    }
    let a = [out[0].clone(), out[1].clone()];
    let res = verify_connection_matrix(&h, &dh, &a)?;
    if res > 1e-8 {
        return Err(Error::Inconsistent(res));
    }
    Ok(a)
}

/// Gaussian elimination with partial pivoting on an `m × (n+1)` augmented
/// system, `n = 4`; rank decided relative to the largest coefficient.
fn solve_overdetermined(mut rows: Vec<[Complex64; 5]>) -> Result<[Complex64; 4]> {
    const N: usize = 4;
    let scale = rows.iter().flat_map(|r| r[..N].iter()).map(|z| z.norm()).fold(0.0, f64::max);
    let tol = 1e-12 * scale.max(1.0);
    let mut pivots = Vec::new();
    let mut r0 = 0;
    for col in 0..N {
        let Some(p) = (r0..rows.len()).max_by(|&a, &b| rows[a][col].norm().total_cmp(&rows[b][col].norm())) else {
            break;
        };
        if rows[p][col].norm() <= tol {
            continue;
        }
        rows.swap(p, r0);
        let d = rows[r0][col];
        for r in 0..rows.len() {
            if r != r0 {
                let f = rows[r][col] / d;
                if f.norm() != 0.0 {
                    for c in col..=N {
                        let v = rows[r0][c];
                        rows[r][c] -= f * v;
                    }
                }
            }
        }
        pivots.push((r0, col));
        r0 += 1;
    }
    if pivots.len() < N {
        return Err(Error::RankDeficient { rank: pivots.len(), needed: N });
    }
    let mut x = [ZERO; N];
    for &(r, c) in &pivots {
        x[c] = rows[r][N] / rows[r][c];
    }
    let leftover = rows[r0..].iter().map(|r| r[N].norm()).fold(0.0, f64::max);
    if leftover > 1e-8 * scale.max(1.0) {
        return Err(Error::Inconsistent(leftover));
    }
    Ok(x)
}

/// Eigenvector matrix `S = [u₊ u₋]` with `u± = (z, ±λ − 1)`, `λ = √(1+z²)`
/// on the principal branch.
pub fn eigenvector_matrix(q: [f64; 2]) -> CMatrix {
    let z = z(q);
    let lam = (ONE + z * z).sqrt();
    CMatrix::from_2x2(z, z, lam - ONE, -lam - ONE)
}

/// `∂S/∂q_dir`; `S` is holomorphic in `z`, so `∂₂S = i ∂₁S`.
pub fn eigenvector_matrix_partial(q: [f64; 2], dir: usize) -> CMatrix {
    let z = z(q);
    let lam = (ONE + z * z).sqrt();
    let d = CMatrix::from_2x2(ONE, ONE, z / lam, -z / lam);
    if dir == 0 { d } else { d.scale(I) }
}
