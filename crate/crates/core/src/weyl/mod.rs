//! Finite-N Weyl algebra: clock and shift matrices, the operator/function
//! correspondence on the discrete torus, and its star product.
//!
//! With `g = diag(ωᵏ)`, `h eₖ = eₖ₊₁` and `ω = e^{iφ}`, `φ = 2π/N`, one has
//! `gh = ω hg` and `(gⁿhᵐ)(g^{n'}h^{m'}) = ω^{−mn'} g^{n+n'}h^{m+m'}`. The
//! phase `ω^{−mn'}` is what `e^{iφ ∂β← ∂α→}` produces on Fourier modes.

mod oracle;

use num_complex::Complex64;

use crate::berry::CMatrix;
use crate::error::{Error, Result};

pub use oracle::{isomorphism_oracle, random_op, OracleReport};

/// Operators on `ℂᴺ`.
pub type WeylOp = CMatrix;

/// Fourier coefficients `a_{n,m}` of `A(α, β) = Σ a_{n,m} e^{inα} e^{imβ}`,
/// `n, m ∈ {0, …, N−1}`.
#[derive(Clone, PartialEq, Debug)]
pub struct TorusFunction {
    n: usize,
    fourier: Vec<Complex64>,
}

impl TorusFunction {
    pub fn zeros(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self { n, fourier: vec![Complex64::new(0.0, 0.0); n * n] })
    }

    /// A single basis mode `e^{inα} e^{imβ}`; indices are taken mod `N`.
    pub fn mode(dim: usize, n: i64, m: i64) -> Result<Self> {
        let mut f = Self::zeros(dim)?;
        let (i, j) = (wrap(n, dim), wrap(m, dim));
        f[(i, j)] = Complex64::new(1.0, 0.0);
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn max_abs_diff(&self, o: &Self) -> Result<f64> {
        if self.n != o.n {
            return Err(Error::SizeMismatch(self.n, o.n));
        }
        Ok(self.fourier.iter().zip(&o.fourier).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// Value of the function at `(α, β)`.
    pub fn eval(&self, alpha: f64, beta: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.n {
            for j in 0..self.n {
                acc += self[(i, j)] * Complex64::from_polar(1.0, i as f64 * alpha + j as f64 * beta);
            }
        }
        acc
    }
}

impl std::ops::Index<(usize, usize)> for TorusFunction {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.fourier[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for TorusFunction {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.fourier[i * self.n + j]
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("N must be at least 2, got {n}")));
    }
    Ok(())
}

fn wrap(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}

/// `ωᵏ`, `ω = e^{2πi/N}`, with the exponent reduced first.
fn omega(k: i64, n: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * wrap(k, n) as f64 / n as f64)
}

/// Clock `g` and shift `h`.
pub fn clock_shift(n: usize) -> Result<(WeylOp, WeylOp)> {
    check_dim(n)?;
    let mut g = CMatrix::zeros(n);
    let mut h = CMatrix::zeros(n);
    for k in 0..n {
        g[(k, k)] = omega(k as i64, n);
        h[((k + 1) % n, k)] = Complex64::new(1.0, 0.0);
    }
    Ok((g, h))
}

/// `a_{n,m} = tr((gⁿhᵐ)† A)/N`.
///
/// `gⁿhᵐ` has entries `ω^{n(k+m)}` at `(k+m, k)`, so the trace is a single
/// sum along a wrapped diagonal.
pub fn op_to_fun(a: &WeylOp) -> Result<TorusFunction> {
    let dim = a.dim();
    let mut f = TorusFunction::zeros(dim)?;
    for n in 0..dim {
        for m in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..dim {
                let row = (k + m) % dim;
                acc += omega(-((n * row) as i64), dim) * a[(row, k)];
            }
            f[(n, m)] = acc / dim as f64;
        }
    }
    Ok(f)
}

/// `Σ a_{n,m} gⁿhᵐ`.
pub fn fun_to_op(f: &TorusFunction) -> WeylOp {
    let dim = f.n;
    let mut a = CMatrix::zeros(dim);
    for n in 0..dim {
        for m in 0..dim {
            let c = f[(n, m)];
            if c.norm_sqr() == 0.0 {
                continue;
            }
            for k in 0..dim {
                let row = (k + m) % dim;
                a[(row, k)] += c * omega((n * row) as i64, dim);
            }
        }
    }
    a
}

/// Bilinear extension of `e_{n,m} ⋆ e_{n',m'} = ω^{−mn'} e_{n+n',m+m'}`.
pub fn discrete_star(f: &TorusFunction, g: &TorusFunction) -> Result<TorusFunction> {
    if f.n != g.n {
        return Err(Error::SizeMismatch(f.n, g.n));
    }
    let dim = f.n;
    let mut out = TorusFunction::zeros(dim)?;
    for n in 0..dim {
        for m in 0..dim {
            let a = f[(n, m)];
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for n2 in 0..dim {
                for m2 in 0..dim {
                    let b = g[(n2, m2)];
                    if b.norm_sqr() != 0.0 {
                        out[((n + n2) % dim, (m + m2) % dim)] += a * b * omega(-((m * n2) as i64), dim);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `A† = e^{iφ∂α∂β} A*`: the mode `(n, m)` goes to `(−n, −m)` with
/// coefficient `conj(a_{n,m}) ω^{−nm}`.
pub fn discrete_dagger(f: &TorusFunction) -> TorusFunction {
    let dim = f.n;
    let mut out = TorusFunction { n: dim, fourier: vec![Complex64::new(0.0, 0.0); dim * dim] };
    for n in 0..dim {
        for m in 0..dim {
            out[(wrap(-(n as i64), dim), wrap(-(m as i64), dim))] = f[(n, m)].conj() * omega(-((n * m) as i64), dim);
        }
    }
    out
}

/// `A* = e^{−iφ∂α∂β} A`, i.e. `A = A†`, up to `tol` per coefficient.
pub fn discrete_is_hermitian(f: &TorusFunction, tol: f64) -> bool {
    discrete_dagger(f).max_abs_diff(f).map(|d| d <= tol).unwrap_or(false)
}
