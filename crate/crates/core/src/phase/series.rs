use super::PhasePoly;
use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Scalar};

/// Power series `Σ_{n=0}^{K} coupling^n · coeffs[n]` truncated at order `K`.
#[derive(Clone, PartialEq, Debug)]
pub struct CouplingSeries<C> {
    coupling: String,
    coeffs: Vec<PhasePoly<C>>,
}

impl<C: Scalar> CouplingSeries<C> {
    /// `coeffs` must be non-empty; its length fixes the order.
    pub fn new(coupling: impl Into<String>, coeffs: Vec<PhasePoly<C>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("series needs at least the order-0 coefficient".into()));
        }
        Ok(Self { coupling: coupling.into(), coeffs })
    }

    /// `a` at order 0, padded with zeros up to `order`.
    pub fn constant(coupling: impl Into<String>, a: PhasePoly<C>, order: usize) -> Self {
        let mut coeffs = vec![PhasePoly::zero(); order + 1];
        coeffs[0] = a;
        Self { coupling: coupling.into(), coeffs }
    }

    pub fn one(coupling: impl Into<String>, order: usize) -> Self {
        Self::constant(coupling, PhasePoly::one(), order)
    }

    pub fn zero(coupling: impl Into<String>, order: usize) -> Self {
        Self::constant(coupling, PhasePoly::zero(), order)
    }

    /// `a0 + coupling · a1`, truncated at `order`.
    pub fn linear(coupling: impl Into<String>, a0: PhasePoly<C>, a1: PhasePoly<C>, order: usize) -> Self {
        let mut s = Self::constant(coupling, a0, order);
        if order >= 1 {
            s.coeffs[1] = a1;
        }
        s
    }

    pub fn coupling(&self) -> &str {
        &self.coupling
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[PhasePoly<C>] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &PhasePoly<C> {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let k = order.min(self.order());
        Self { coupling: self.coupling.clone(), coeffs: self.coeffs[..=k].to_vec() }
    }

    pub fn check_coupling(&self, other: &Self) -> Result<()> {
        if self.coupling != other.coupling {
            return Err(Error::CouplingMismatch(self.coupling.clone(), other.coupling.clone()));
        }
        Ok(())
    }

    pub fn map(&self, f: impl Fn(&PhasePoly<C>) -> PhasePoly<C>) -> Self {
        Self { coupling: self.coupling.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_coupling(other)?;
        let k = self.order().min(other.order());
        let coeffs = (0..=k).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect();
        Ok(Self { coupling: self.coupling.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_coupling(other)?;
        let k = self.order().min(other.order());
        let coeffs = (0..=k).map(|n| &self.coeffs[n] - &other.coeffs[n]).collect();
        Ok(Self { coupling: self.coupling.clone(), coeffs })
    }

    pub fn scale_gaussian(&self, z: &GaussianRational) -> Self {
        self.map(|c| c.scale_gaussian(z))
    }

    /// Cauchy product with an arbitrary coefficient product, truncated at the
    /// smaller order.
    pub fn cauchy(
        &self,
        other: &Self,
        prod: impl Fn(&PhasePoly<C>, &PhasePoly<C>) -> PhasePoly<C>,
    ) -> Result<Self> {
        self.check_coupling(other)?;
        let k = self.order().min(other.order());
        let mut coeffs = vec![PhasePoly::zero(); k + 1];
        for i in 0..=k {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(k - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &prod(&self.coeffs[i], &other.coeffs[j]);
            }
        }
        Ok(Self { coupling: self.coupling.clone(), coeffs })
    }

    /// Pointwise exponential of a series with zero constant term.
    pub fn exp_pointwise(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let k = self.order();
        let mut acc = Self::one(self.coupling.clone(), k);
        let mut power = Self::one(self.coupling.clone(), k);
        for n in 1..=k {
            power = series_mul(&power, self)?.scale_gaussian(&GaussianRational::ratio(1, n as i64));
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }
}

/// Pointwise Cauchy product truncated at `min(order_a, order_b)`.
pub fn series_mul<C: Scalar>(a: &CouplingSeries<C>, b: &CouplingSeries<C>) -> Result<CouplingSeries<C>> {
    a.cauchy(b, |x, y| x * y)
}
