//! Elements of the rational function field ℚ(beta, lambda, u).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::mpoly::{MPoly, Var, NVARS};
use crate::error::{Error, Result};

/// A reduced fraction of polynomials. The denominator is monic in graded-lex
/// order and coprime to the numerator, so `==` is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParamScalar {
    num: MPoly,
    den: MPoly,
}

impl ParamScalar {
    pub fn zero() -> Self {
        ParamScalar {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_poly(MPoly::from_i64(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_poly(MPoly::constant(q))
    }

    pub fn from_poly(p: MPoly) -> Self {
        ParamScalar {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MPoly::var(v))
    }

    pub fn beta() -> Self {
        Self::var(Var::Beta)
    }

    pub fn lambda() -> Self {
        Self::var(Var::Lambda)
    }

    pub fn u() -> Self {
        Self::var(Var::U)
    }

    /// `num / den` brought to canonical form.
    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.constant_value() {
            let inv = c.recip();
            return ParamScalar {
                num: num.scale(&inv),
                den: MPoly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize_lc(num, den)
    }

    fn normalize_lc(num: MPoly, den: MPoly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            ParamScalar { num, den }
        } else {
            let inv = lc.recip();
            ParamScalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Integer value, when this is a constant integer.
    pub fn as_integer(&self) -> Option<i64> {
        let q = self.as_rational()?;
        if q.is_integer() {
            i64::try_from(q.to_integer()).ok()
        } else {
            None
        }
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_lc(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// Divides by a product of degree-one polynomials, cancelling each
    /// factor by exact division instead of a full gcd.
    pub fn div_linear_factors(&self, factors: &[MPoly]) -> Result<Self> {
        if factors.iter().any(MPoly::is_zero) {
            return Err(Error::DivisionByZero);
        }
        if factors.iter().any(|f| f.total_degree() > 1) {
            let prod = factors.iter().fold(MPoly::one(), |acc, f| &acc * f);
            return self.try_div(&ParamScalar::from_poly(prod));
        }
        let (mut num, mut den) = (self.num.clone(), self.den.clone());
        for f in factors {
            match num.div_exact(f) {
                Some(q) if f.total_degree() == 1 => num = q,
                _ => den = &den * f,
            }
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self::normalize_lc(num, den))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamScalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        ParamScalar {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[BigRational; NVARS]) -> Result<BigRational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Replaces the variable `v` by `value`; fails when the denominator
    /// vanishes identically after substitution.
    pub fn substitute(&self, v: Var, value: &ParamScalar) -> Result<Self> {
        if !self.contains(v) {
            return Ok(self.clone());
        }
        // Homogenize against the value's denominator to stay polynomial.
        let top = self.num.degree_in(v).max(self.den.degree_in(v));
        let sub = |p: &MPoly| -> MPoly {
            let coeffs = p.to_univariate(v);
            let mut acc = MPoly::zero();
            for (k, c) in coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = &(c * &value.num.pow(k as u32)) * &value.den.pow(top - k as u32);
                acc = &acc + &term;
            }
            acc
        };
        let num = sub(&self.num);
        let den = sub(&self.den);
        Self::new(num, den)
    }

    /// Shorthand for substituting a rational value.
    pub fn substitute_value(&self, v: Var, value: &BigRational) -> Result<Self> {
        self.substitute(v, &Self::from_rational(value.clone()))
    }

    /// Canonical text: `num` or `(num)/(den)`.
    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            self.num.to_text()
        } else {
            format!("({})/({})", self.num.to_text(), self.den.to_text())
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        super::parse::parse_param(s)
    }
}

/// `param_simplify`: canonical gcd-reduced form of `num/den`.
pub fn param_simplify(num: MPoly, den: MPoly) -> Result<ParamScalar> {
    ParamScalar::new(num, den)
}

impl Default for ParamScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamScalar({})", self.to_text())
    }
}

impl From<i64> for ParamScalar {
    fn from(n: i64) -> Self {
        Self::from_i64(n)
    }
}

impl From<BigRational> for ParamScalar {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &'a ParamScalar) -> ParamScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ParamScalar::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return ParamScalar::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.den.is_one() {
            let num = &self.num + &(&rhs.num * &self.den);
            return ParamScalar {
                num,
                den: self.den.clone(),
            };
        }
        if self.den.is_one() {
            let num = &(&self.num * &rhs.den) + &rhs.num;
            return ParamScalar {
                num,
                den: rhs.den.clone(),
            };
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            if num.is_zero() {
                return ParamScalar::zero();
            }
            return ParamScalar::normalize_lc(num, &self.den * &rhs.den);
        }
        let a_co = self.den.div_exact(&g).expect("gcd divides");
        let b_co = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b_co) + &(&rhs.num * &a_co);
        if num.is_zero() {
            return ParamScalar::zero();
        }
        let den = &a_co * &rhs.den;
        // Any common factor of num and den divides g.
        let h = gcd(&num, &g);
        if h.is_one() {
            ParamScalar::normalize_lc(num, den)
        } else {
            ParamScalar::normalize_lc(
                num.div_exact(&h).expect("gcd divides"),
                den.div_exact(&h).expect("gcd divides"),
            )
        }
    }
}

impl<'a> Sub<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &'a ParamScalar) -> ParamScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &'a ParamScalar) -> ParamScalar {
        if self.is_zero() || rhs.is_zero() {
            return ParamScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ParamScalar::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel; the result is then already reduced.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let divide = |p: &MPoly, g: &MPoly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = &divide(&self.num, &g1) * &divide(&rhs.num, &g2);
        let den = &divide(&self.den, &g2) * &divide(&rhs.den, &g1);
        ParamScalar::normalize_lc(num, den)
    }
}

impl<'a> Div<&'a ParamScalar> for &'a ParamScalar {
    type Output = ParamScalar;
    /// Panics on division by zero; use [`ParamScalar::try_div`] to recover.
    fn div(self, rhs: &'a ParamScalar) -> ParamScalar {
        self.try_div(rhs).expect("division by zero ParamScalar")
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: ParamScalar) -> ParamScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a ParamScalar> for ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: &'a ParamScalar) -> ParamScalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<ParamScalar> for &'a ParamScalar {
            type Output = ParamScalar;
            fn $m(self, rhs: ParamScalar) -> ParamScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        -&self
    }
}

impl std::iter::Sum for ParamScalar {
    fn sum<I: Iterator<Item = ParamScalar>>(iter: I) -> Self {
        iter.fold(ParamScalar::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for ParamScalar {
    fn product<I: Iterator<Item = ParamScalar>>(iter: I) -> Self {
        iter.fold(ParamScalar::one(), |a, b| &a * &b)
    }
}

/// Convenience for writing formulas: `p(n)` is the integer constant `n`.
pub fn p(n: i64) -> ParamScalar {
    ParamScalar::from_i64(n)
}

/// `beta / 2`, used throughout.
pub fn half_beta() -> ParamScalar {
    ParamScalar::beta().scale(&BigRational::new(1.into(), 2.into()))
}

impl serde::Serialize for ParamScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> serde::Deserialize<'de> for ParamScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ParamScalar::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) fn rational_point(b: i64, l: i64, u: i64) -> [BigRational; NVARS] {
    [b, l, u].map(super::rational::int)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn b() -> ParamScalar {
        ParamScalar::beta()
    }
    fn l() -> ParamScalar {
        ParamScalar::lambda()
    }
    fn u() -> ParamScalar {
        ParamScalar::u()
    }

    #[test]
    fn simplify_examples() {
        let num = (&b() * &b() - &l() * &l()).numer().clone();
        let den = (&b() - &l()).numer().clone();
        assert_eq!(param_simplify(num, den).unwrap(), &b() + &l());

        let bl = (&b() - &l()).numer().clone();
        assert!(param_simplify(bl.clone(), bl).unwrap().is_one());

        let half = param_simplify(MPoly::var(Var::U), MPoly::var(Var::U).scale(&int(2))).unwrap();
        assert_eq!(half, ParamScalar::from_ratio(1, 2));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            param_simplify(MPoly::one(), MPoly::zero()).unwrap_err(),
            Error::DivisionByZero
        );
        assert!(ParamScalar::zero().recip().is_err());
    }

    #[test]
    fn fractions_add_to_canonical_form() {
        let x = &ParamScalar::one() / &(&b() - &l());
        let y = &ParamScalar::one() / &(&b() + &l());
        let sum = &x + &y;
        let expected = &(&b() * &p(2)) / &(&b() * &b() - &l() * &l());
        assert_eq!(sum, expected);
        assert!(sum.denom().leading_coeff().is_one());
        assert!((&sum - &expected).is_zero());
    }

    #[test]
    fn substitution_of_rational_function() {
        // (beta - lambda)/(u + 1) with lambda -> beta/2 - 1
        let f = &(&b() - &l()) / &(&u() + &p(1));
        let lam = &half_beta() - &p(1);
        let g = f.substitute(Var::Lambda, &lam).unwrap();
        assert_eq!(g, &(&half_beta() + &p(1)) / &(&u() + &p(1)));
    }

    #[test]
    fn substitution_hitting_denominator_fails() {
        let f = &p(1) / &(&l() - &b());
        assert!(f.substitute(Var::Lambda, &b()).is_err());
    }

    #[test]
    fn eval_matches_arithmetic() {
        let f = &(&b() * &l() + &u()) / &(&l() - &p(3));
        let pt = rational_point(2, 5, 7);
        assert_eq!(f.eval(&pt).unwrap(), BigRational::new(17.into(), 2.into()));
        assert!(f.eval(&rational_point(2, 3, 7)).is_err());
    }
}
