use moyal_core::berry::CMatrix;
use moyal_core::io::latex_poly;
use moyal_core::metric::PdeOperator;
use moyal_core::{GaussianRational, RatFunc};
use serde::Serialize;
use serde_json::{json, Value};

pub fn value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("exact types serialize")
}

/// Rows of `[re, im]` pairs.
pub fn matrix(m: &CMatrix) -> Value {
    let n = m.dim();
    Value::Array(
        (0..n)
            .map(|i| Value::Array((0..n).map(|j| json!([m[(i, j)].re, m[(i, j)].im])).collect()))
            .collect(),
    )
}

pub fn pde(op: &PdeOperator<GaussianRational>) -> Value {
    Value::Array(op.entries().map(|(&(i, j), c)| json!({"dx": i, "dp": j, "coeff": value(c)})).collect())
}

pub fn pde_latex(op: &PdeOperator<GaussianRational>) -> String {
    let d = |v: &str, k: u32| match k {
        0 => String::new(),
        1 => format!("\\partial_{v}"),
        _ => format!("\\partial_{v}^{{{k}}}"),
    };
    let parts: Vec<String> =
        op.entries().map(|(&(i, j), c)| format!("\\left({}\\right){}{}\\Theta", latex_poly(c), d("x", i), d("p", j))).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        format!("{} = 0", parts.join(" + "))
    }
}

pub fn ratfunc(f: &RatFunc) -> String {
    f.display_with(&["q1", "q2"])
}
