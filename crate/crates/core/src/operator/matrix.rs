//! Exact matrix representations of the `d`/`delta` algebra, used as an
//! independent oracle for normal-form arithmetic.
//!
//! A square-zero matrix is built as `U V` with `V U = 0`: the rows of `V`
//! are random combinations of a basis of the left null space of `U`. Since
//! every normal-form relation follows from `d^2 = delta^2 = 0`, any such
//! pair of matrices is a representation of the algebra.

use std::sync::{Arc, Mutex};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::form::FormOperator;
use crate::error::{Error, Result};
use crate::exact::mpoly::NVARS;
use crate::exact::UniPoly;
use crate::report::{CheckResult, Report};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    n: usize,
    data: Vec<BigRational>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }
}

/// A representation `d -> d_mat`, `delta -> delta_mat` together with the
/// parameter values used to evaluate coefficients.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    pub dimension: usize,
    pub d_mat: Matrix,
    pub delta_mat: Matrix,
    pub param_point: [BigRational; NVARS],
    x_mat: Matrix,
    z_mat: Matrix,
    powers: Arc<Mutex<[Vec<Matrix>; 2]>>,
}

impl MatrixRep {
    pub fn new(d_mat: Matrix, delta_mat: Matrix, param_point: [BigRational; NVARS]) -> Self {
        let x_mat = delta_mat.mul(&d_mat);
        let z_mat = d_mat.mul(&delta_mat);
        MatrixRep {
            dimension: d_mat.dim(),
            d_mat,
            delta_mat,
            param_point,
            x_mat,
            z_mat,
            powers: Arc::default(),
        }
    }

    /// Random square-zero pair at a random parameter point.
    pub fn random(dimension: usize, rng: &mut ChaCha8Rng) -> Self {
        let d_mat = random_square_zero(dimension, rng);
        let delta_mat = random_square_zero(dimension, rng);
        let point = random_point(rng);
        Self::new(d_mat, delta_mat, point)
    }

    pub fn with_point(&self, point: [BigRational; NVARS]) -> Self {
        MatrixRep {
            param_point: point,
            ..self.clone()
        }
    }

    /// `x^k` (`which = 0`) or `z^k` (`which = 1`) for `k < len`.
    fn powers(&self, which: usize, len: usize) -> Vec<Matrix> {
        let mut cache = self.powers.lock().expect("power cache");
        let base = if which == 0 { &self.x_mat } else { &self.z_mat };
        let pows = &mut cache[which];
        if pows.is_empty() {
            pows.push(Matrix::identity(self.dimension));
        }
        while pows.len() < len {
            let next = pows.last().expect("nonempty").mul(base);
            pows.push(next);
        }
        pows[..len].to_vec()
    }

    fn poly_at(&self, poly: &UniPoly, which: usize) -> Result<Matrix> {
        let n = self.dimension;
        let pows = self.powers(which, poly.coeffs().len());
        let mut acc = Matrix::zeros(n);
        for (c, pw) in poly.coeffs().iter().zip(&pows) {
            let c = c.eval(&self.param_point)?;
            if c.is_zero() {
                continue;
            }
            for (a, b) in acc.data.iter_mut().zip(&pw.data) {
                if !b.is_zero() {
                    *a += &c * b;
                }
            }
        }
        Ok(acc)
    }

    /// Image of a normal form; fails if the point hits a denominator zero.
    pub fn map(&self, a: &FormOperator) -> Result<Matrix> {
        let n = self.dimension;
        let s = Matrix::identity(n).scale(&a.scalar_part().eval(&self.param_point)?);
        let px = self.poly_at(a.x_part(), 0)?;
        let qz = self.poly_at(a.z_part(), 1)?;
        let cd = self.poly_at(a.delta_part(), 0)?.mul(&self.delta_mat);
        let ed = self.poly_at(a.d_part(), 1)?.mul(&self.d_mat);
        Ok(s.add(&px).add(&qz).add(&cd).add(&ed))
    }
}

fn small_int(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::from_integer(BigInt::from(rng.gen_range(-4i64..=4)))
}

pub fn random_point(rng: &mut ChaCha8Rng) -> [BigRational; NVARS] {
    std::array::from_fn(|_| {
        let num = rng.gen_range(-60i64..=60);
        let den = rng.gen_range(1i64..=9);
        BigRational::new(num.into(), den.into())
    })
}

/// Random `n x n` matrix `U V` with `V U = 0`, of rank between 1 and `n/2`.
pub fn random_square_zero(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let r = rng.gen_range(1..=(n / 2).max(1));
    loop {
        // U is n x r, stored by columns.
        let u: Vec<Vec<BigRational>> = (0..r)
            .map(|_| (0..n).map(|_| small_int(rng)).collect())
            .collect();
        let null = left_null_basis(&u, n);
        if null.is_empty() {
            continue;
        }
        // Rows of V: random combinations of left null vectors.
        let v: Vec<Vec<BigRational>> = (0..r)
            .map(|_| {
                let mut row = vec![BigRational::zero(); n];
                for b in &null {
                    let c = small_int(rng);
                    for (x, y) in row.iter_mut().zip(b) {
                        *x += &c * y;
                    }
                }
                row
            })
            .collect();
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for k in 0..r {
                    acc += &u[k][i] * &v[k][j];
                }
                m.data[i * n + j] = acc;
            }
        }
        if !m.is_zero() {
            return m;
        }
    }
}

/// Basis of `{w : w^T U = 0}` where `U` is given by its columns.
fn left_null_basis(cols: &[Vec<BigRational>], n: usize) -> Vec<Vec<BigRational>> {
    // Rows of U^T are the columns of U; solve U^T w = 0 by row reduction.
    let mut a: Vec<Vec<BigRational>> = cols.to_vec();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == rows {
            break;
        }
        let Some(piv) = (row..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, piv);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot_row = a[row].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut w = vec![BigRational::zero(); n];
            w[free] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                w[pc] = -a[i][free].clone();
            }
            w
        })
        .collect()
}

/// Builds a representation for a trial, resampling the parameter point
/// until every operator can be evaluated.
pub fn trial_rep(
    dimension: usize,
    seed: u64,
    trial: u64,
    ops: &[&FormOperator],
) -> Result<(MatrixRep, Vec<Matrix>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(trial));
    let mut rep = MatrixRep::random(dimension, &mut rng);
    for _ in 0..64 {
        match ops.iter().map(|a| rep.map(a)).collect::<Result<Vec<_>>>() {
            Ok(images) => return Ok((rep, images)),
            Err(Error::DivisionByZero) => rep = rep.with_point(random_point(&mut rng)),
            Err(e) => return Err(e),
        }
    }
    Err(Error::DegenerateSampling)
}

/// Compares `rep(a)` with `rep(b)` over `trials` random representations.
/// A trial passes when matrix equality agrees with normal-form equality.
pub fn matrix_oracle_check(
    a: &FormOperator,
    b: &FormOperator,
    trials: usize,
    dimension: usize,
    seed: u64,
) -> Report {
    let nf_equal = a == b;
    let checks = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let start = Instant::now();
            let (passed, detail) = match trial_rep(dimension, seed, t, &[a, b]) {
                Ok((_, im)) => {
                    let eq = im[0] == im[1];
                    (eq == nf_equal, format!("matrices equal: {eq}"))
                }
                Err(e) => (false, e.to_string()),
            };
            CheckResult::new("matrix oracle", r"\rho(A)=\rho(B)\iff A=B", passed)
                .at(t as i64)
                .with_detail(detail)
                .timed(start)
        })
        .collect();
    Report {
        suite: "oracle".into(),
        checks,
    }
}

/// `rep(a b) = rep(a) rep(b)` over random representations.
pub fn homomorphism_check(
    a: &FormOperator,
    b: &FormOperator,
    trials: usize,
    dimension: usize,
    seed: u64,
) -> Report {
    let ab = a * b;
    let checks = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let start = Instant::now();
            let passed = match trial_rep(dimension, seed, t, &[a, b, &ab]) {
                Ok((_, im)) => im[0].mul(&im[1]) == im[2],
                Err(_) => false,
            };
            CheckResult::new("representation is multiplicative", r"\rho(AB)=\rho(A)\rho(B)", passed)
                .at(t as i64)
                .timed(start)
        })
        .collect();
    Report {
        suite: "oracle".into(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_zero_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let m = random_square_zero(8, &mut rng);
            assert!(!m.is_zero());
            assert!(m.mul(&m).is_zero());
        }
    }

    #[test]
    fn oracle_examples() {
        let xz = &FormOperator::x() * &FormOperator::z();
        assert!(matrix_oracle_check(&xz, &FormOperator::zero(), 5, 8, 1).passed());
        let a = &FormOperator::delta() * &FormOperator::z().pow(3);
        let b = &FormOperator::x().pow(3) * &FormOperator::delta();
        assert!(matrix_oracle_check(&a, &b, 5, 8, 2).passed());
        // x and z differ, and every random representation sees it
        let r = matrix_oracle_check(&FormOperator::x(), &FormOperator::z(), 5, 8, 3);
        assert!(r.passed());
    }

    #[test]
    fn map_respects_products_of_generators() {
        let a = &FormOperator::delta() + &FormOperator::d();
        let b = &FormOperator::x() + &FormOperator::scalar(crate::exact::ParamScalar::beta());
        assert!(homomorphism_check(&a, &b, 5, 6, 11).passed());
    }
}
