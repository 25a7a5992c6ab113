//! Dense univariate polynomials with [`ParamScalar`] coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use super::mpoly::{Var, NVARS};
use super::param::ParamScalar;
use crate::error::Result;

/// `coeffs[k]` multiplies `y^k`; the leading coefficient is nonzero and the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<ParamScalar>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ParamScalar::one())
    }

    pub fn constant(c: ParamScalar) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::from_coeffs(vec![ParamScalar::zero(), ParamScalar::one()])
    }

    /// `y - c`.
    pub fn linear_root(c: ParamScalar) -> Self {
        Self::from_coeffs(vec![-c, ParamScalar::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<ParamScalar>) -> Self {
        while coeffs.last().map(ParamScalar::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[ParamScalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ParamScalar> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ParamScalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> ParamScalar {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> ParamScalar {
        self.coeff(0)
    }

    /// Same polynomial with its constant term removed.
    pub fn without_constant(&self) -> Self {
        let mut c = self.coeffs.clone();
        if let Some(first) = c.first_mut() {
            *first = ParamScalar::zero();
        }
        Self::from_coeffs(c)
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|k| k * c).collect())
    }

    /// Multiplication by `y^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![ParamScalar::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: c }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Horner evaluation at a field element.
    pub fn eval(&self, y: &ParamScalar) -> ParamScalar {
        let mut acc = ParamScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * y) + c;
        }
        acc
    }

    /// `self(inner(y))`.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Exact value at `y` and a parameter point.
    pub fn eval_at(&self, y: &BigRational, point: &[BigRational; NVARS]) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * y + c.eval(point)?;
        }
        Ok(acc)
    }

    pub fn try_map(&self, f: impl Fn(&ParamScalar) -> Result<ParamScalar>) -> Result<Self> {
        Ok(Self::from_coeffs(
            self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?,
        ))
    }

    pub fn substitute(&self, v: Var, value: &ParamScalar) -> Result<Self> {
        self.try_map(|c| c.substitute(v, value))
    }

    pub fn to_text_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let coef = c.to_text();
            parts.push(match (k, c.is_one()) {
                (0, _) => format!("({coef})"),
                (_, true) => mono,
                _ => format!("({coef})*{mono}"),
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text_in("y"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{}]", self.to_text_in("y"))
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &'a UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::from_coeffs(
            (0..n)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &'a UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &'a UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![ParamScalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::param::p;

    #[test]
    fn zero_is_empty_and_degree_none() {
        let z = UniPoly::from_coeffs(vec![ParamScalar::zero(), ParamScalar::zero()]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(UniPoly::var().degree(), Some(1));
    }

    #[test]
    fn compose_with_quadratic() {
        // (y + 1)∘(y^2 + y) = y^2 + y + 1
        let f = UniPoly::from_coeffs(vec![p(1), p(1)]);
        let g = UniPoly::from_coeffs(vec![p(0), p(1), p(1)]);
        assert_eq!(f.compose(&g), UniPoly::from_coeffs(vec![p(1), p(1), p(1)]));
    }

    #[test]
    fn eval_is_horner() {
        let f = UniPoly::from_coeffs(vec![ParamScalar::beta(), p(0), p(3)]);
        assert_eq!(f.eval(&p(2)), &ParamScalar::beta() + &p(12));
    }
}
