use super::PhasePoly;
use crate::error::{Error, Result};
use crate::scalar::{GaussianRational, Scalar};

/// Oscillator parameters ω, α, β of `ħω a†a + ħα aa + ħβ a†a†`.
#[derive(Clone, PartialEq, Debug)]
pub struct Provenance<C> {
    pub omega: C,
    pub alpha: C,
    pub beta: C,
}

/// Real coefficients of `H = a p² + b x² + i c px`.
#[derive(Clone, PartialEq, Debug)]
pub struct ModelParams<C> {
    pub a: C,
    pub b: C,
    pub c: C,
    pub provenance: Option<Provenance<C>>,
}

impl<C: Scalar> ModelParams<C> {
    pub fn new(a: C, b: C, c: C) -> Result<Self> {
        if !(a.is_real() && b.is_real() && c.is_real()) {
            return Err(Error::InvalidInput("model parameters a, b, c must be real".into()));
        }
        Ok(Self { a, b, c, provenance: None })
    }

    /// `a = (ω−α−β)/2`, `b = (ω+α+β)/2`, `c = α−β`.
    pub fn from_oscillator(omega: C, alpha: C, beta: C) -> Result<Self> {
        let half = C::from_gaussian(GaussianRational::ratio(1, 2));
        let a = (omega.clone() - alpha.clone() - beta.clone()) * half.clone();
        let b = (omega.clone() + alpha.clone() + beta.clone()) * half;
        let c = alpha.clone() - beta.clone();
        let mut p = Self::new(a, b, c)?;
        p.provenance = Some(Provenance { omega, alpha, beta });
        Ok(p)
    }

    pub fn provenance_consistent(&self) -> bool {
        let Some(pr) = &self.provenance else { return true };
        let two = C::from_int(2);
        self.a.clone() * two.clone() == pr.omega.clone() - pr.alpha.clone() - pr.beta.clone()
            && self.b.clone() * two == pr.omega.clone() + pr.alpha.clone() + pr.beta.clone()
            && self.c == pr.alpha.clone() - pr.beta.clone()
    }

    /// `a p² + b x² + i c px`.
    pub fn hamiltonian(&self) -> PhasePoly<C> {
        let p2 = PhasePoly::<C>::p().pow(2).scale(&self.a);
        let x2 = PhasePoly::<C>::x().pow(2).scale(&self.b);
        let px = (&PhasePoly::<C>::x() * &PhasePoly::<C>::p())
            .scale(&self.c)
            .scale_gaussian(&GaussianRational::i());
        &(&p2 + &x2) + &px
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as G;

    #[test]
    fn oscillator_relations_hold() {
        let p = ModelParams::from_oscillator(G::from_int(3), G::ratio(1, 2), G::ratio(1, 4)).unwrap();
        assert_eq!(p.a, G::ratio(9, 8));
        assert_eq!(p.b, G::ratio(15, 8));
        assert_eq!(p.c, G::ratio(1, 4));
        assert!(p.provenance_consistent());
    }

    #[test]
    fn complex_params_rejected() {
        assert!(ModelParams::new(G::i(), G::one(), G::one()).is_err());
    }
}
