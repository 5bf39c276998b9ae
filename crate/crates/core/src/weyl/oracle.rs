use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{discrete_star, op_to_fun, TorusFunction, WeylOp};
use crate::berry::CMatrix;
use crate::error::Result;

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct OracleReport {
    pub n: usize,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
}

/// Dense matrix with entries uniform in the unit square.
pub fn random_op(n: usize, rng: &mut impl Rng) -> WeylOp {
    let mut a = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    a
}

/// Compare `fun(A)⋆fun(B)` against `fun(A·B)` for random pairs.
///
/// Trial `k` draws from stream `k` of a ChaCha generator seeded with `seed`,
/// so the outcome does not depend on how trials are scheduled.
pub fn isomorphism_oracle(n: usize, trials: usize, seed: u64, tolerance: f64) -> Result<OracleReport> {
    TorusFunction::zeros(n)?;
    let devs: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let a = random_op(n, &mut rng);
            let b = random_op(n, &mut rng);
            let lhs = discrete_star(&op_to_fun(&a)?, &op_to_fun(&b)?)?;
            lhs.max_abs_diff(&op_to_fun(&(&a * &b))?)
        })
        .collect::<Result<_>>()?;
    let passed = devs.iter().filter(|d| **d <= tolerance).count();
    Ok(OracleReport {
        n,
        trials,
        passed,
        failed: trials - passed,
        max_deviation: devs.iter().copied().fold(0.0, f64::max),
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass_and_are_reproducible() {
        let r = isomorphism_oracle(3, 20, 42, 1e-10).unwrap();
        assert_eq!((r.passed, r.failed), (20, 0));
        assert_eq!(isomorphism_oracle(3, 20, 42, 1e-10).unwrap(), r);
        assert!(isomorphism_oracle(1, 5, 0, 1e-10).is_err());
    }
}
