//! JSON forms of the exact types.
//!
//! Rationals are strings `"num/den"` (denominator omitted when 1), Gaussian
//! rationals `{"re": .., "im": ..}`, phase polynomials lists of
//! `{"x", "p", "hbar", "coeff"}` in canonical order.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::metric::HamiltonianSpec;
use crate::phase::{CouplingSeries, Monomial, PhasePoly};
use crate::scalar::{format_rational, parse_rational, GaussianRational};
use crate::star::ExpQuadForm;

type G = GaussianRational;
type P = PhasePoly<G>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GaussianJson {
    re: String,
    im: String,
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GaussianJson { re: format_rational(&self.re), im: format_rational(&self.im) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = GaussianJson::deserialize(d)?;
        let re = parse_rational(&j.re).map_err(D::Error::custom)?;
        let im = parse_rational(&j.im).map_err(D::Error::custom)?;
        Ok(GaussianRational::new(re, im))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermJson {
    x: u32,
    p: i32,
    hbar: i32,
    coeff: GaussianRational,
}

impl Serialize for PhasePoly<GaussianRational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms().map(|(m, c)| TermJson { x: m.x, p: m.p, hbar: m.hbar, coeff: c.clone() }))
    }
}

/// Repeated monomials are summed.
impl<'de> Deserialize<'de> for PhasePoly<GaussianRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<TermJson>::deserialize(d)?;
        Ok(P::from_terms(terms.into_iter().map(|t| (Monomial::new(t.x, t.p, t.hbar), t.coeff))))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesJson {
    coupling: String,
    order: usize,
    coeffs: Vec<P>,
}

impl Serialize for CouplingSeries<GaussianRational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesJson { coupling: self.coupling().to_string(), order: self.order(), coeffs: self.coeffs().to_vec() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CouplingSeries<GaussianRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        if j.coeffs.len() != j.order + 1 {
            return Err(D::Error::custom(format!(
                "series of order {} needs {} coefficients, got {}",
                j.order,
                j.order + 1,
                j.coeffs.len()
            )));
        }
        CouplingSeries::new(j.coupling, j.coeffs).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpQuadJson {
    prefactor: P,
    exponent: P,
}

impl Serialize for ExpQuadForm<GaussianRational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ExpQuadJson { prefactor: self.prefactor().clone(), exponent: self.exponent().clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExpQuadForm<GaussianRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = ExpQuadJson::deserialize(d)?;
        ExpQuadForm::new(j.prefactor, j.exponent).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CouplingJson {
    name: String,
    #[serde(rename = "V")]
    v: P,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HamiltonianJson {
    terms: P,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coupling: Option<CouplingJson>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    hbar_one: bool,
}

impl Serialize for HamiltonianSpec<GaussianRational> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        HamiltonianJson {
            terms: self.h0.clone(),
            coupling: self.coupling.as_ref().map(|c| CouplingJson { name: c.name.clone(), v: c.v.clone() }),
            hbar_one: self.hbar_one,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HamiltonianSpec<GaussianRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = HamiltonianJson::deserialize(d)?;
        let mut spec = match j.coupling {
            Some(c) => {
                if c.name.is_empty() {
                    return Err(D::Error::custom("coupling name must not be empty"));
                }
                HamiltonianSpec::with_coupling(j.terms, c.name, c.v)
            }
            None => HamiltonianSpec::new(j.terms),
        };
        spec.hbar_one = j.hbar_one;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_round_trip() {
        let z = G::complex((-3, 4), (7, 1));
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"re":"-3/4","im":"7"}"#);
        assert_eq!(serde_json::from_str::<G>(&s).unwrap(), z);
        assert!(serde_json::from_str::<G>(r#"{"re":"1/0","im":"0"}"#).is_err());
        assert!(serde_json::from_str::<G>(r#"{"re":"1","im":"0","x":1}"#).is_err());
    }

    #[test]
    fn poly_and_series_round_trip() {
        let a = &P::mono(G::ratio(3, 4), 1, -4, 2) + &P::mono(G::i(), 0, 0, 0);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<P>(&s).unwrap(), a);
        let series = CouplingSeries::linear("g", P::one(), a, 2);
        let s = serde_json::to_string(&series).unwrap();
        assert_eq!(serde_json::from_str::<CouplingSeries<G>>(&s).unwrap(), series);
        assert!(serde_json::from_str::<CouplingSeries<G>>(r#"{"coupling":"g","order":2,"coeffs":[[]]}"#).is_err());
    }

    #[test]
    fn hamiltonian_and_expquad() {
        let h = HamiltonianSpec::with_coupling(P::p().pow(2), "g", P::mono(G::i(), 3, 0, 0));
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(serde_json::from_str::<HamiltonianSpec<G>>(&s).unwrap(), h);
        let e = ExpQuadForm::exp(P::mono(G::from_int(-2), 0, 1, 0)).unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(serde_json::from_str::<ExpQuadForm<G>>(&s).unwrap(), e);
        let cubic = r#"{"prefactor":[],"exponent":[{"x":3,"p":0,"hbar":0,"coeff":{"re":"1","im":"0"}}]}"#;
        assert!(serde_json::from_str::<ExpQuadForm<G>>(cubic).is_err());
    }
}
