//! Normal forms in the algebra generated by `d` and `delta` with
//! `d^2 = delta^2 = 0`.
//!
//! Every element is uniquely `s + P(x) + Q(z) + c(x) delta + e(z) d` with
//! `x = delta d`, `z = d delta` and `P(0) = Q(0) = 0`. The relations used
//! by the product are `x z = z x = 0`, `delta x = 0`, `d z = 0`,
//! `delta z^k = x^k delta` and `d x^k = z^k d`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{half_beta, p, ParamScalar, UniPoly, Var};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FormOperator {
    scalar: ParamScalar,
    x_part: UniPoly,
    z_part: UniPoly,
    delta_part: UniPoly,
    d_part: UniPoly,
}

impl FormOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(ParamScalar::one())
    }

    pub fn scalar(c: ParamScalar) -> Self {
        FormOperator {
            scalar: c,
            ..Self::default()
        }
    }

    /// `x = delta d`.
    pub fn x() -> Self {
        Self::from_parts(
            ParamScalar::zero(),
            UniPoly::var(),
            UniPoly::zero(),
            UniPoly::zero(),
            UniPoly::zero(),
        )
    }

    /// `z = d delta`.
    pub fn z() -> Self {
        Self::from_parts(
            ParamScalar::zero(),
            UniPoly::zero(),
            UniPoly::var(),
            UniPoly::zero(),
            UniPoly::zero(),
        )
    }

    pub fn delta() -> Self {
        Self::from_parts(
            ParamScalar::zero(),
            UniPoly::zero(),
            UniPoly::zero(),
            UniPoly::one(),
            UniPoly::zero(),
        )
    }

    pub fn d() -> Self {
        Self::from_parts(
            ParamScalar::zero(),
            UniPoly::zero(),
            UniPoly::zero(),
            UniPoly::zero(),
            UniPoly::one(),
        )
    }

    /// `P(x)` for an arbitrary polynomial `P`; its constant term becomes the
    /// scalar.
    pub fn poly_x(poly: UniPoly) -> Self {
        Self::from_parts(ParamScalar::zero(), poly, UniPoly::zero(), UniPoly::zero(), UniPoly::zero())
    }

    /// `Q(z)`; the constant term becomes the scalar.
    pub fn poly_z(poly: UniPoly) -> Self {
        Self::from_parts(ParamScalar::zero(), UniPoly::zero(), poly, UniPoly::zero(), UniPoly::zero())
    }

    /// `c(x) delta`.
    pub fn delta_with(c: UniPoly) -> Self {
        Self::from_parts(ParamScalar::zero(), UniPoly::zero(), UniPoly::zero(), c, UniPoly::zero())
    }

    /// `e(z) d`.
    pub fn d_with(e: UniPoly) -> Self {
        Self::from_parts(ParamScalar::zero(), UniPoly::zero(), UniPoly::zero(), UniPoly::zero(), e)
    }

    /// Normalizes by moving the constant terms of `x_part` and `z_part`
    /// into the scalar.
    pub fn from_parts(
        scalar: ParamScalar,
        x_part: UniPoly,
        z_part: UniPoly,
        delta_part: UniPoly,
        d_part: UniPoly,
    ) -> Self {
        let scalar = &(&scalar + &x_part.constant_term()) + &z_part.constant_term();
        FormOperator {
            scalar,
            x_part: x_part.without_constant(),
            z_part: z_part.without_constant(),
            delta_part,
            d_part,
        }
    }

    pub fn scalar_part(&self) -> &ParamScalar {
        &self.scalar
    }

    pub fn x_part(&self) -> &UniPoly {
        &self.x_part
    }

    pub fn z_part(&self) -> &UniPoly {
        &self.z_part
    }

    pub fn delta_part(&self) -> &UniPoly {
        &self.delta_part
    }

    pub fn d_part(&self) -> &UniPoly {
        &self.d_part
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
            && self.x_part.is_zero()
            && self.z_part.is_zero()
            && self.delta_part.is_zero()
            && self.d_part.is_zero()
    }

    /// Degree preserving (no `delta` or `d` component).
    pub fn is_degree_preserving(&self) -> bool {
        self.delta_part.is_zero() && self.d_part.is_zero()
    }

    /// Only a `c(x) delta` component.
    pub fn is_pure_delta(&self) -> bool {
        self.scalar.is_zero() && self.x_part.is_zero() && self.z_part.is_zero() && self.d_part.is_zero()
    }

    /// Scalar plus `x` part, as one polynomial in `x`.
    pub fn x_sector(&self) -> UniPoly {
        &self.x_part + &UniPoly::constant(self.scalar.clone())
    }

    /// Scalar plus `z` part, as one polynomial in `z`.
    pub fn z_sector(&self) -> UniPoly {
        &self.z_part + &UniPoly::constant(self.scalar.clone())
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        FormOperator {
            scalar: &self.scalar * c,
            x_part: self.x_part.scale(c),
            z_part: self.z_part.scale(c),
            delta_part: self.delta_part.scale(c),
            d_part: self.d_part.scale(c),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(), |acc, _| &acc * self)
    }

    pub fn try_map(&self, f: impl Fn(&ParamScalar) -> Result<ParamScalar>) -> Result<Self> {
        Ok(Self::from_parts(
            f(&self.scalar)?,
            self.x_part.try_map(&f)?,
            self.z_part.try_map(&f)?,
            self.delta_part.try_map(&f)?,
            self.d_part.try_map(&f)?,
        ))
    }

    pub fn substitute(&self, v: Var, value: &ParamScalar) -> Result<Self> {
        self.try_map(|c| c.substitute(v, value))
    }

    /// Every coefficient, in a fixed order.
    pub fn coefficients(&self) -> impl Iterator<Item = &ParamScalar> {
        std::iter::once(&self.scalar)
            .chain(self.x_part.coeffs())
            .chain(self.z_part.coeffs())
            .chain(self.delta_part.coeffs())
            .chain(self.d_part.coeffs())
    }

    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        if !self.scalar.is_zero() {
            parts.push(format!("({})", self.scalar.to_text()));
        }
        let poly_terms = |poly: &UniPoly, var: &str, suffix: &str, parts: &mut Vec<String>| {
            for (k, c) in poly.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mono = match k {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{k}"),
                };
                let body = [mono, suffix.to_string()]
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .collect::<Vec<_>>()
                    .join("*");
                parts.push(format!("({})*{}", c.to_text(), body));
            }
        };
        poly_terms(&self.x_part, "x", "", &mut parts);
        poly_terms(&self.z_part, "z", "", &mut parts);
        poly_terms(&self.delta_part, "x", "delta", &mut parts);
        poly_terms(&self.d_part, "z", "d", &mut parts);
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

pub fn op_add(a: &FormOperator, b: &FormOperator) -> FormOperator {
    a + b
}

pub fn op_mul(a: &FormOperator, b: &FormOperator) -> FormOperator {
    a * b
}

impl fmt::Display for FormOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for FormOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormOperator[{}]", self.to_text())
    }
}

impl<'a> Add<&'a FormOperator> for &'a FormOperator {
    type Output = FormOperator;
    fn add(self, rhs: &'a FormOperator) -> FormOperator {
        FormOperator {
            scalar: &self.scalar + &rhs.scalar,
            x_part: &self.x_part + &rhs.x_part,
            z_part: &self.z_part + &rhs.z_part,
            delta_part: &self.delta_part + &rhs.delta_part,
            d_part: &self.d_part + &rhs.d_part,
        }
    }
}

impl<'a> Sub<&'a FormOperator> for &'a FormOperator {
    type Output = FormOperator;
    fn sub(self, rhs: &'a FormOperator) -> FormOperator {
        self + &(-rhs)
    }
}

impl Neg for &FormOperator {
    type Output = FormOperator;
    fn neg(self) -> FormOperator {
        FormOperator {
            scalar: -&self.scalar,
            x_part: -&self.x_part,
            z_part: -&self.z_part,
            delta_part: -&self.delta_part,
            d_part: -&self.d_part,
        }
    }
}

impl<'a> Mul<&'a FormOperator> for &'a FormOperator {
    type Output = FormOperator;
    fn mul(self, b: &'a FormOperator) -> FormOperator {
        let a = self;
        let a0 = UniPoly::constant(a.scalar.clone());
        let b0 = UniPoly::constant(b.scalar.clone());
        let ax = &a0 + &a.x_part;
        let az = &a0 + &a.z_part;
        let bx = &b0 + &b.x_part;
        let bz = &b0 + &b.z_part;
        let scalar = &a.scalar * &b.scalar;
        let s0 = UniPoly::constant(scalar.clone());

        // c_A(x) delta e_B(z) d = c_A(x) e_B(x) x
        let x_part = &(&(&ax * &bx) - &s0) + &(&a.delta_part * &b.d_part).shift(1);
        // e_A(z) d c_B(x) delta = e_A(z) c_B(z) z
        let z_part = &(&(&az * &bz) - &s0) + &(&a.d_part * &b.delta_part).shift(1);
        // (a0 + P_A)(x) c_B(x) delta + c_A(x) delta (b0 + Q_B)(z)
        let delta_part = &(&ax * &b.delta_part) + &(&a.delta_part * &bz);
        // (a0 + Q_A)(z) e_B(z) d + e_A(z) d (b0 + P_B)(x)
        let d_part = &(&az * &b.d_part) + &(&a.d_part * &bx);
        FormOperator::from_parts(ParamScalar::zero(), x_part, z_part, delta_part, d_part)
            .with_scalar_added(scalar)
    }
}

impl FormOperator {
    fn with_scalar_added(mut self, s: ParamScalar) -> Self {
        self.scalar = &self.scalar + &s;
        self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for FormOperator {
            type Output = FormOperator;
            fn $m(self, rhs: FormOperator) -> FormOperator {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for FormOperator {
    type Output = FormOperator;
    fn neg(self) -> FormOperator {
        -&self
    }
}

impl std::iter::Sum for FormOperator {
    fn sum<I: Iterator<Item = FormOperator>>(iter: I) -> Self {
        iter.fold(FormOperator::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for FormOperator {
    fn product<I: Iterator<Item = FormOperator>>(iter: I) -> Self {
        iter.fold(FormOperator::identity(), |a, b| &a * &b)
    }
}

/// Operator arguments at which the polynomial families are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OperatorSlot {
    /// `x/u + (beta/2)(beta/2+1)`
    YMinus,
    /// `x/u + (beta/2)(beta/2-1)`
    YPlus,
    /// `z/u + (beta/2)(beta/2+1)`
    YOne,
}

impl OperatorSlot {
    pub fn offset(self) -> ParamScalar {
        let h = half_beta();
        match self {
            OperatorSlot::YMinus | OperatorSlot::YOne => &h * &(&h + &p(1)),
            OperatorSlot::YPlus => &h * &(&h - &p(1)),
        }
    }

    /// The slot as a linear polynomial in its variable (`x` or `z`).
    pub fn as_linear(self) -> UniPoly {
        let inv_u = ParamScalar::u().recip().expect("u is a formal symbol");
        UniPoly::from_coeffs(vec![self.offset(), inv_u])
    }

    pub fn operator(self) -> FormOperator {
        eval_at_slot(&UniPoly::var(), self)
    }
}

/// Substitutes the slot operator for `y` and returns the normal form.
pub fn eval_at_slot(poly: &UniPoly, slot: OperatorSlot) -> FormOperator {
    let composed = poly.compose(&slot.as_linear());
    match slot {
        OperatorSlot::YMinus | OperatorSlot::YPlus => FormOperator::poly_x(composed),
        OperatorSlot::YOne => FormOperator::poly_z(composed),
    }
}

/// Both sides of `delta p(y1) = p(y-) delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushWitness {
    pub left: FormOperator,
    pub right: FormOperator,
}

/// Normal forms of `delta p(y1)` and `p(y-) delta`; errors if they differ.
pub fn push_delta(poly: &UniPoly) -> Result<PushWitness> {
    let left = &FormOperator::delta() * &eval_at_slot(poly, OperatorSlot::YOne);
    let right = &eval_at_slot(poly, OperatorSlot::YMinus) * &FormOperator::delta();
    if left != right {
        return Err(Error::AlgebraMismatch(format!(
            "delta p(y1) = {left} but p(y-) delta = {right}"
        )));
    }
    Ok(PushWitness { left, right })
}

/// Normal forms of `d p(y-) delta` and `d delta p(y1)`; errors if they
/// differ.
pub fn push_d_delta(poly: &UniPoly) -> Result<PushWitness> {
    let left = &(&FormOperator::d() * &eval_at_slot(poly, OperatorSlot::YMinus)) * &FormOperator::delta();
    let right = &FormOperator::z() * &eval_at_slot(poly, OperatorSlot::YOne);
    if left != right {
        return Err(Error::AlgebraMismatch(format!(
            "d p(y-) delta = {left} but d delta p(y1) = {right}"
        )));
    }
    Ok(PushWitness { left, right })
}

#[derive(Serialize, Deserialize)]
struct FormOperatorJson {
    scalar: Vec<String>,
    #[serde(rename = "xPart")]
    x_part: Vec<String>,
    #[serde(rename = "zPart")]
    z_part: Vec<String>,
    #[serde(rename = "deltaPart")]
    delta_part: Vec<String>,
    #[serde(rename = "dPart")]
    d_part: Vec<String>,
}

fn texts(poly: &UniPoly) -> Vec<String> {
    poly.coeffs().iter().map(ParamScalar::to_text).collect()
}

fn parse_poly(v: &[String]) -> Result<UniPoly> {
    Ok(UniPoly::from_coeffs(
        v.iter().map(|s| ParamScalar::parse(s)).collect::<Result<_>>()?,
    ))
}

impl Serialize for FormOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormOperatorJson {
            scalar: vec![self.scalar.to_text()],
            x_part: texts(&self.x_part),
            z_part: texts(&self.z_part),
            delta_part: texts(&self.delta_part),
            d_part: texts(&self.d_part),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FormOperator {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = FormOperatorJson::deserialize(de)?;
        let scalar = match j.scalar.as_slice() {
            [] => ParamScalar::zero(),
            [one] => ParamScalar::parse(one).map_err(D::Error::custom)?,
            _ => return Err(D::Error::custom("scalar must hold one entry")),
        };
        let part = |v: &[String]| parse_poly(v).map_err(D::Error::custom);
        Ok(FormOperator::from_parts(
            scalar,
            part(&j.x_part)?,
            part(&j.z_part)?,
            part(&j.delta_part)?,
            part(&j.d_part)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{build_s, PolyTag};

    #[test]
    fn basic_relations() {
        let (x, z, dl, d) = (FormOperator::x(), FormOperator::z(), FormOperator::delta(), FormOperator::d());
        assert!((&x * &z).is_zero());
        assert!((&z * &x).is_zero());
        assert!((&dl * &x).is_zero());
        assert!((&d * &z).is_zero());
        assert!((&dl * &dl).is_zero());
        assert!((&d * &d).is_zero());
        assert_eq!(&dl * &d, x);
        assert_eq!(&d * &dl, z);
        assert_eq!(&dl * &z.pow(2), &x.pow(2) * &dl);
        assert_eq!(&d * &x.pow(3), &z.pow(3) * &d);
    }

    #[test]
    fn addition_examples() {
        let x = FormOperator::x();
        assert_eq!(&x + &FormOperator::zero(), x);
        let xz = &x + &FormOperator::z();
        assert_eq!(xz.x_part(), &UniPoly::var());
        assert_eq!(xz.z_part(), &UniPoly::var());
        assert!((&FormOperator::delta() + &(-FormOperator::delta())).is_zero());
    }

    #[test]
    fn slot_examples() {
        assert_eq!(eval_at_slot(&UniPoly::one(), OperatorSlot::YPlus), FormOperator::identity());
        let y1 = eval_at_slot(&UniPoly::var(), OperatorSlot::YOne);
        let h = half_beta();
        let expected = &FormOperator::z().scale(&ParamScalar::u().recip().unwrap())
            + &FormOperator::scalar(&h * &(&h + &p(1)));
        assert_eq!(y1, expected);
        for m in 1..5 {
            let s1 = eval_at_slot(&build_s(PolyTag::SOne, m), OperatorSlot::YOne);
            assert!(s1.scalar_part().is_zero());
            assert!(s1.x_part().is_zero() && s1.is_degree_preserving());
        }
    }

    #[test]
    fn z_annihilates_s_plus_up_to_constant() {
        use crate::special::rising;
        for k in 0..5 {
            let s = eval_at_slot(&build_s(PolyTag::SPlus, k), OperatorSlot::YPlus);
            let c = &rising(&ParamScalar::lambda(), k) * &rising(&half_beta(), k);
            assert_eq!(&FormOperator::z() * &s, FormOperator::z().scale(&c));
        }
    }

    #[test]
    fn push_rules() {
        assert!(push_delta(&UniPoly::var()).is_ok());
        assert!(push_delta(&build_s(PolyTag::SOne, 3)).is_ok());
        assert!(push_d_delta(&build_s(PolyTag::SMinus, 5)).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let a = &(&FormOperator::x().scale(&ParamScalar::parse("(beta^2-4)/(2*lambda)").unwrap())
            + &FormOperator::delta_with(UniPoly::from_coeffs(vec![p(0), ParamScalar::u()])))
            + &FormOperator::scalar(half_beta());
        let j = serde_json::to_string(&a).unwrap();
        assert!(j.contains("\"xPart\""));
        let back: FormOperator = serde_json::from_str(&j).unwrap();
        assert_eq!(back, a);
        assert_eq!(serde_json::to_string(&back).unwrap(), j);
    }
}
