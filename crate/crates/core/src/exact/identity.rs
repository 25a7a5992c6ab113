//! Deterministic identity testing for elements of ℚ(beta, lambda, u)[y].
//!
//! Two modes. `Canonical` compares reduced forms coefficient by coefficient.
//! `Sampling` evaluates both sides on a product grid with `bound + 1` points
//! per variable; a polynomial of degree at most `bound` in each variable that
//! vanishes on such a grid is zero, so the answer is exact whenever the
//! supplied bounds are honest.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mpoly::NVARS;
use super::param::ParamScalar;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdentityMode {
    Canonical,
    Sampling,
}

/// Per-variable degree bounds for the numerator of `lhs - rhs` once its
/// denominators are cleared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DegreeBounds {
    pub y: u32,
    pub beta: u32,
    pub lambda: u32,
    pub u: u32,
}

impl DegreeBounds {
    pub fn uniform(d: u32) -> Self {
        DegreeBounds {
            y: d,
            beta: d,
            lambda: d,
            u: d,
        }
    }

    fn as_array(&self) -> [u32; 4] {
        [self.y, self.beta, self.lambda, self.u]
    }
}

const MAX_ATTEMPTS: usize = 8;

pub fn identity_check(
    lhs: &UniPoly,
    rhs: &UniPoly,
    bounds: DegreeBounds,
    mode: IdentityMode,
) -> Result<bool> {
    match mode {
        IdentityMode::Canonical => Ok(lhs == rhs),
        IdentityMode::Sampling => sampled_equal(lhs, rhs, bounds),
    }
}

/// Same as [`identity_check`] for y-free values.
pub fn scalar_identity_check(
    lhs: &ParamScalar,
    rhs: &ParamScalar,
    bounds: DegreeBounds,
    mode: IdentityMode,
) -> Result<bool> {
    let bounds = DegreeBounds { y: 0, ..bounds };
    identity_check(
        &UniPoly::constant(lhs.clone()),
        &UniPoly::constant(rhs.clone()),
        bounds,
        mode,
    )
}

fn sampled_equal(lhs: &UniPoly, rhs: &UniPoly, bounds: DegreeBounds) -> Result<bool> {
    let dims = bounds.as_array();
    let total: usize = dims.iter().map(|&d| d as usize + 1).product();
    for attempt in 0..MAX_ATTEMPTS {
        let axes: Vec<Vec<BigRational>> = dims
            .iter()
            .enumerate()
            .map(|(var, &d)| grid_axis(var, d, attempt))
            .collect();
        let outcome: Result<bool> = (0..total)
            .into_par_iter()
            .map(|flat| {
                let (y, point) = grid_point(&axes, &dims, flat);
                let l = lhs.eval_at(&y, &point)?;
                let r = rhs.eval_at(&y, &point)?;
                Ok(l == r)
            })
            .try_reduce(|| true, |a, b| Ok(a && b));
        match outcome {
            Ok(v) => return Ok(v),
            Err(Error::DivisionByZero) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegenerateSampling)
}

/// Axis values for one variable. Each attempt moves to a fresh window of
/// non-integer rationals with distinct denominators per variable, so the
/// integer and half-integer points where the parameter families have poles
/// are avoided.
fn grid_axis(var: usize, degree: u32, attempt: usize) -> Vec<BigRational> {
    const DENOMS: [i64; 4] = [7, 11, 13, 17];
    let den = DENOMS[var];
    let start = 3 + 41 * attempt as i64 + 5 * var as i64;
    (0..=degree as i64)
        .map(|t| BigRational::new((start + t * den + 1).into(), den.into()))
        .collect()
}

fn grid_point(
    axes: &[Vec<BigRational>],
    dims: &[u32; 4],
    mut flat: usize,
) -> (BigRational, [BigRational; NVARS]) {
    let mut idx = [0usize; 4];
    for (k, &d) in dims.iter().enumerate() {
        let n = d as usize + 1;
        idx[k] = flat % n;
        flat /= n;
    }
    (
        axes[0][idx[0]].clone(),
        [
            axes[1][idx[1]].clone(),
            axes[2][idx[2]].clone(),
            axes[3][idx[3]].clone(),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::param::{half_beta, p};

    fn y() -> UniPoly {
        UniPoly::var()
    }

    #[test]
    fn reflexive_and_shift() {
        let r2 = &(&y() * &y()) - &y().scale(&p(2));
        for mode in [IdentityMode::Canonical, IdentityMode::Sampling] {
            assert!(identity_check(&r2, &r2, DegreeBounds::uniform(2), mode).unwrap());
            let y1 = &y() + &UniPoly::one();
            assert!(!identity_check(&y(), &y1, DegreeBounds::uniform(1), mode).unwrap());
        }
    }

    #[test]
    fn sampling_sees_rational_identities() {
        // 1/(beta-2) + 1/(beta+2) = 2 beta / (beta^2 - 4)
        let b = ParamScalar::beta();
        let lhs = &(&p(1) / &(&b - &p(2))) + &(&p(1) / &(&b + &p(2)));
        let rhs = &(&b * &p(2)) / &(&(&b * &b) - &p(4));
        let bounds = DegreeBounds {
            beta: 3,
            ..Default::default()
        };
        assert!(scalar_identity_check(&lhs, &rhs, bounds, IdentityMode::Sampling).unwrap());
        let wrong = &rhs + &half_beta();
        assert!(!scalar_identity_check(&lhs, &wrong, bounds, IdentityMode::Sampling).unwrap());
    }

    #[test]
    fn grid_axes_are_distinct() {
        let a = grid_axis(1, 5, 0);
        let mut s = a.clone();
        s.sort();
        s.dedup();
        assert_eq!(s.len(), a.len());
    }
}
