use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::HamiltonianSpec;
use crate::phase::{ModelParams, Monomial};
use crate::scalar::GaussianRational;

type G = GaussianRational;

/// A model as stored on disk.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub hamiltonian: HamiltonianSpec<G>,
    /// Named parameters, e.g. `a, b, c` or `omega, alpha, beta` for the
    /// quadratic model; checked against the Hamiltonian.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, G>,
    #[serde(default)]
    pub options: ModelOptions,
}

#[derive(Clone, PartialEq, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub observables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauge: Option<String>,
    /// Default metric candidate, in the `--theta` syntax.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<String>,
}

const OBSERVABLES: [&str; 3] = ["p", "x", "N"];

impl ModelFile {
    pub fn validate(&self) -> Result<()> {
        if let Some(o) = self.options.observables.iter().find(|o| !OBSERVABLES.contains(&o.as_str())) {
            return Err(Error::InvalidInput(format!("unknown observable `{o}` (expected p, x or N)")));
        }
        if let Some((k, _)) = self.parameters.iter().find(|(_, v)| !v.is_real()) {
            return Err(Error::InvalidInput(format!("parameter `{k}` must be real")));
        }
        if !self.parameters.is_empty() {
            let declared = self.declared_params()?;
            let actual = self.quadratic_params()?;
            if (&declared.a, &declared.b, &declared.c) != (&actual.a, &actual.b, &actual.c) {
                return Err(Error::InvalidInput("parameters disagree with the Hamiltonian terms".into()));
            }
        }
        Ok(())
    }

    fn param(&self, k: &str) -> Result<G> {
        self.parameters.get(k).cloned().ok_or_else(|| Error::InvalidInput(format!("missing parameter `{k}`")))
    }

    fn declared_params(&self) -> Result<ModelParams<G>> {
        let keys: Vec<&str> = self.parameters.keys().map(String::as_str).collect();
        match keys.as_slice() {
            ["a", "b", "c"] => ModelParams::new(self.param("a")?, self.param("b")?, self.param("c")?),
            ["alpha", "beta", "omega"] => {
                ModelParams::from_oscillator(self.param("omega")?, self.param("alpha")?, self.param("beta")?)
            }
            _ => Err(Error::InvalidInput(format!("unrecognised parameter set {keys:?}"))),
        }
    }

    /// `(a, b, c)` of `a p² + b x² + i c px`, read off the terms; carries the
    /// oscillator triple when the file declares one.
    pub fn quadratic_params(&self) -> Result<ModelParams<G>> {
        let h = self.hamiltonian.uncoupled()?;
        let allowed = [Monomial::new(0, 2, 0), Monomial::new(2, 0, 0), Monomial::new(1, 1, 0)];
        if let Some((m, _)) = h.terms().find(|(m, _)| !allowed.contains(m)) {
            return Err(Error::InvalidInput(format!("term {m:?} is not part of the quadratic model")));
        }
        let c = &h.coeff_of(1, 1, 0) * &G::i().conj();
        let mut params = ModelParams::new(h.coeff_of(0, 2, 0), h.coeff_of(2, 0, 0), c)?;
        if self.parameters.contains_key("omega") {
            params.provenance = self.declared_params()?.provenance;
        }
        Ok(params)
    }

    pub fn order(&self, flag: Option<usize>) -> Result<usize> {
        flag.or(self.options.order)
            .ok_or_else(|| Error::InvalidInput("no order given (use --order or options.order)".into()))
    }
}

/// Convenience for building a model in code.
pub fn model(name: &str, hamiltonian: HamiltonianSpec<G>) -> ModelFile {
    ModelFile { name: name.into(), hamiltonian, parameters: BTreeMap::new(), options: ModelOptions::default() }
}
