//! JSON formats, the model file, the expression syntax and LaTeX output.

mod expr;
mod json;
mod latex;
mod model;

use serde::de::DeserializeOwned;

use crate::error::{Error, Result};

pub use expr::{parse_candidate, parse_expquad, parse_poly};
pub use latex::{latex_poly, latex_series};
pub use model::{model, ModelFile, ModelOptions};

/// Deserialize JSON, keeping the position of the first error.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), msg: e.to_string() })
}

/// Parse and validate a model file.
pub fn parse_model(text: &str) -> Result<ModelFile> {
    let m: ModelFile = parse_json(text)?;
    m.validate()?;
    Ok(m)
}
