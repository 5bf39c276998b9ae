use super::Scalar;
use crate::error::{Error, Result};

/// Solve `rows · x = rhs` exactly by Gauss–Jordan elimination over `C`.
///
/// The system may be overdetermined; every row must have `n` entries.
/// Returns `RankDeficient` if the columns are dependent and `NoExactSolution`
/// if a leftover row is inconsistent.
pub fn solve_linear<C: Scalar>(mut rows: Vec<Vec<C>>, mut rhs: Vec<C>, n: usize) -> Result<Vec<C>> {
    if rows.len() != rhs.len() {
        return Err(Error::SizeMismatch(rows.len(), rhs.len()));
    }
    if let Some(r) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::SizeMismatch(n, r.len()));
    }
    let mut pivots = Vec::with_capacity(n);
    let mut r0 = 0;
    for col in 0..n {
        let Some(p) = (r0..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(p, r0);
        rhs.swap(p, r0);
        let inv = rows[r0][col].inverse().expect("nonzero pivot");
        for c in col..n {
            rows[r0][c] = rows[r0][c].clone() * inv.clone();
        }
        rhs[r0] = rhs[r0].clone() * inv;
        for r in 0..rows.len() {
            if r == r0 || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for c in col..n {
                let v = rows[r0][c].clone() * f.clone();
                rows[r][c] = rows[r][c].clone() - v;
            }
            let v = rhs[r0].clone() * f;
            rhs[r] = rhs[r].clone() - v;
        }
        pivots.push(col);
        r0 += 1;
    }
    if pivots.len() < n {
        return Err(Error::RankDeficient { rank: pivots.len(), needed: n });
    }
    if rhs[r0..].iter().any(|v| !v.is_zero()) {
        return Err(Error::NoExactSolution);
    }
    rhs.truncate(n);
    Ok(rhs)
}
