//! The polynomial families `R_k(y; alpha)`, `R1_k(y)`, `s-_m`, `s+_m`, `s1_m`
//! and their recurrences.
//!
//! All families live in ℚ(beta, lambda)[y]. Expansion coefficients and the
//! built polynomials are cached process-wide since the operator layer asks
//! for the same indices over and over.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{half_beta, p, ParamScalar, UniPoly};
use crate::report::{CheckResult, Report, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolyTag {
    R,
    R1,
    SMinus,
    SPlus,
    SOne,
}

impl PolyTag {
    pub fn name(self) -> &'static str {
        match self {
            PolyTag::R => "R",
            PolyTag::R1 => "R1",
            PolyTag::SMinus => "sMinus",
            PolyTag::SPlus => "sPlus",
            PolyTag::SOne => "sOne",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [
            PolyTag::R,
            PolyTag::R1,
            PolyTag::SMinus,
            PolyTag::SPlus,
            PolyTag::SOne,
        ]
        .into_iter()
        .find(|t| t.name() == s)
    }
}

/// A member of one of the families. `shift` is the `alpha` of `R_k(y; alpha)`
/// and is ignored by the other tags.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyFamilyId {
    pub tag: PolyTag,
    pub index: usize,
    pub shift: ParamScalar,
}

impl PolyFamilyId {
    pub fn new(tag: PolyTag, index: usize) -> Self {
        PolyFamilyId {
            tag,
            index,
            shift: ParamScalar::zero(),
        }
    }

    pub fn build(&self) -> UniPoly {
        match self.tag {
            PolyTag::R => build_r(self.index, &self.shift),
            PolyTag::R1 => build_r1(self.index),
            t => build_s(t, self.index),
        }
    }
}

/// Rising factorial `(a)_m` for any integer `m`; negative `m` means
/// `1 / ((a-1)(a-2)...(a+m))`.
pub fn pochhammer(a: &ParamScalar, m: i64) -> Result<ParamScalar> {
    if m >= 0 {
        return Ok((0..m).map(|i| a + &p(i)).product());
    }
    let den: ParamScalar = (1..=-m).map(|i| a - &p(i)).product();
    den.recip().map_err(|_| Error::PochhammerPole {
        base: a.to_text(),
        index: m,
    })
}

/// `(a)_m` for `m >= 0`, where failure is impossible.
pub fn rising(a: &ParamScalar, m: usize) -> ParamScalar {
    (0..m as i64).map(|i| a + &p(i)).product()
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn binom_scalar(n: usize, k: usize) -> ParamScalar {
    ParamScalar::from_rational(BigRational::from_integer(binomial(n, k)))
}

/// The point `(beta/2)(beta/2+1)` where every `R1_k` vanishes.
pub fn y_critical() -> ParamScalar {
    let h = half_beta();
    &h * &(&h + &p(1))
}

/// `R_k(y; alpha) = prod_{l=1..k} [y - (alpha-l)(alpha-l+1)]`.
pub fn build_r(k: usize, alpha: &ParamScalar) -> UniPoly {
    (1..=k as i64).fold(UniPoly::one(), |acc, l| {
        let root = &(alpha - &p(l)) * &(alpha - &p(l - 1));
        &acc * &UniPoly::linear_root(root)
    })
}

fn build_r_int(k: usize, alpha: i64) -> UniPoly {
    build_r(k, &p(alpha))
}

pub(crate) type Cache<K, V> = OnceLock<Mutex<HashMap<K, V>>>;

pub(crate) fn cached<K, V>(cache: &'static Cache<K, V>, key: K, make: impl FnOnce() -> V) -> V
where
    K: std::hash::Hash + Eq,
    V: Clone,
{
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().expect("cache lock").get(&key) {
        return v.clone();
    }
    let v = make();
    map.lock().expect("cache lock").entry(key).or_insert(v).clone()
}

/// `R1_k(y) = sum_{j=1..k} (beta/2-k+j+1)_{2(k-j)} [y - (beta/2)(beta/2+1)] R_{j-1}(y; k)`,
/// with `R1_0 = 0`.
pub fn build_r1(k: usize) -> UniPoly {
    static CACHE: Cache<usize, UniPoly> = OnceLock::new();
    cached(&CACHE, k, || {
        let lin = UniPoly::linear_root(y_critical());
        let h = half_beta();
        let mut acc = UniPoly::zero();
        for j in 1..=k {
            let c = rising(&(&h - &p(k as i64 - j as i64 - 1)), 2 * (k - j));
            let term = &lin * &build_r_int(j - 1, k as i64);
            acc = &acc + &term.scale(&c);
        }
        acc
    })
}

/// `C-_k(m) = binom(m,k) (beta/2-lambda-m)_{m-k} (-beta/2-m-1)_{m-k}`.
pub fn coeff_c_minus(k: usize, m: usize) -> ParamScalar {
    static CACHE: Cache<(usize, usize), ParamScalar> = OnceLock::new();
    cached(&CACHE, (k, m), || c_coefficient(k, m, -1))
}

/// `C+_k(m) = binom(m,k) (beta/2-lambda-m)_{m-k} (-beta/2-m+1)_{m-k}`.
pub fn coeff_c_plus(k: usize, m: usize) -> ParamScalar {
    static CACHE: Cache<(usize, usize), ParamScalar> = OnceLock::new();
    cached(&CACHE, (k, m), || c_coefficient(k, m, 1))
}

fn c_coefficient(k: usize, m: usize, offset: i64) -> ParamScalar {
    if k > m {
        return ParamScalar::zero();
    }
    let h = half_beta();
    let mm = p(m as i64);
    let a = &(&h - &ParamScalar::lambda()) - &mm;
    let b = &(&(-&h) - &mm) + &p(offset);
    &(&binom_scalar(m, k) * &rising(&a, m - k)) * &rising(&b, m - k)
}

/// `D1_k(m) = binom(m,k) (lambda-beta/2+k+1)_{m-k} (beta/2+k+1)_{m-k-1}
/// [k(lambda+beta+2m) + (beta/2)(lambda-beta-2m)]`. At `k = m` the second
/// Pochhammer has index -1.
pub fn coeff_d1(k: usize, m: usize) -> ParamScalar {
    static CACHE: Cache<(usize, usize), ParamScalar> = OnceLock::new();
    cached(&CACHE, (k, m), || {
        if k > m {
            return ParamScalar::zero();
        }
        let h = half_beta();
        let b = ParamScalar::beta();
        let l = ParamScalar::lambda();
        let (kk, mm) = (p(k as i64), p(m as i64));
        let first = rising(&(&(&l - &h) + &(&kk + &p(1))), m - k);
        let second = pochhammer(&(&h + &(&kk + &p(1))), m as i64 - k as i64 - 1)
            .expect("beta is formal, so the Pochhammer has no pole");
        let bracket = &(&kk * &(&(&l + &b) + &(&mm * &p(2))))
            + &(&h * &(&(&l - &b) - &(&mm * &p(2))));
        [binom_scalar(m, k), first, second, bracket].into_iter().product()
    })
}

/// `s-_m`, `s+_m` or `s1_m` from its defining expansion.
pub fn build_s(tag: PolyTag, m: usize) -> UniPoly {
    static CACHE: Cache<(PolyTag, usize), UniPoly> = OnceLock::new();
    cached(&CACHE, (tag, m), || match tag {
        PolyTag::SMinus => expand(m, coeff_c_minus, |k| build_r_int(k, 0)),
        PolyTag::SPlus => expand(m, coeff_c_plus, |k| build_r_int(k, 0)),
        PolyTag::SOne => expand(m, coeff_d1, build_r1),
        PolyTag::R => build_r_int(m, 0),
        PolyTag::R1 => build_r1(m),
    })
}

fn expand(
    m: usize,
    coeff: impl Fn(usize, usize) -> ParamScalar,
    basis: impl Fn(usize) -> UniPoly,
) -> UniPoly {
    (0..=m).fold(UniPoly::zero(), |acc, k| {
        &acc + &basis(k).scale(&coeff(k, m))
    })
}

fn s_minus_or_zero(m: i64) -> UniPoly {
    if m < 0 {
        UniPoly::zero()
    } else {
        build_s(PolyTag::SMinus, m as usize)
    }
}

fn s_plus_or_zero(m: i64) -> UniPoly {
    if m < 0 {
        UniPoly::zero()
    } else {
        build_s(PolyTag::SPlus, m as usize)
    }
}

fn y_plus(c: ParamScalar) -> UniPoly {
    &UniPoly::var() + &UniPoly::constant(c)
}

fn run_indexed(
    suite: &str,
    identity: &str,
    anchor: &str,
    range: std::ops::RangeInclusive<usize>,
    check: impl Fn(usize) -> bool + Sync,
) -> Report {
    let checks: Vec<CheckResult> = range
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|m| {
            let start = Instant::now();
            CheckResult::new(identity, anchor, check(m))
                .at(m as i64)
                .timed(start)
        })
        .collect();
    Report {
        suite: suite.to_string(),
        checks,
    }
}

/// Three-term recurrence of `s-_m`. The mutation replaces `2m` by `2m+1`.
pub fn verify_prop_sminus_recurrence(m_max: usize, variant: Variant) -> Report {
    run_indexed(
        "poly-recurrences",
        "sMinus three-term recurrence",
        r"s^{(-)}_m=\big[y+2m(\lambda+m)+\tfrac{\beta}{2}(\lambda-\tfrac{\beta}{2}-1)\big]s^{(-)}_{m-1}-(m-1)(\lambda+m)(\lambda-\tfrac{\beta}{2}+m-1)(\tfrac{\beta}{2}+m)s^{(-)}_{m-2}",
        1..=m_max,
        |m| {
            let mi = m as i64;
            let (h, l) = (half_beta(), ParamScalar::lambda());
            let two_m = if variant.is_mutated() { p(2 * mi + 1) } else { p(2 * mi) };
            let c1 = &(&two_m * &(&l + &p(mi))) + &(&h * &(&(&l - &h) - &p(1)));
            let c2: ParamScalar = [
                p(mi - 1),
                &l + &p(mi),
                &(&l - &h) + &p(mi - 1),
                &h + &p(mi),
            ]
            .into_iter()
            .product();
            let rhs = &(&y_plus(c1) * &s_minus_or_zero(mi - 1)) - &s_minus_or_zero(mi - 2).scale(&c2);
            rhs == build_s(PolyTag::SMinus, m)
        },
    )
}

/// Three-term recurrence of `s+_m`. The mutation flips the sign of the
/// second term.
pub fn verify_prop_splus_recurrence(m_max: usize, variant: Variant) -> Report {
    run_indexed(
        "poly-recurrences",
        "sPlus three-term recurrence",
        r"s^{(+)}_m=\big[y+2(m-1)(\lambda+m-1)+\tfrac{\beta}{2}(\lambda-\tfrac{\beta}{2}+1)\big]s^{(+)}_{m-1}-(m-1)(\lambda+m-2)(\lambda-\tfrac{\beta}{2}+m-1)(\tfrac{\beta}{2}+m-2)s^{(+)}_{m-2}",
        1..=m_max,
        |m| {
            let mi = m as i64;
            let (h, l) = (half_beta(), ParamScalar::lambda());
            let c1 = &(&p(2 * (mi - 1)) * &(&l + &p(mi - 1))) + &(&h * &(&(&l - &h) + &p(1)));
            let c2: ParamScalar = [
                p(mi - 1),
                &l + &p(mi - 2),
                &(&l - &h) + &p(mi - 1),
                &h + &p(mi - 2),
            ]
            .into_iter()
            .product();
            let first = &y_plus(c1) * &s_plus_or_zero(mi - 1);
            let second = s_plus_or_zero(mi - 2).scale(&c2);
            let rhs = if variant.is_mutated() {
                &first + &second
            } else {
                &first - &second
            };
            rhs == build_s(PolyTag::SPlus, m)
        },
    )
}

/// `R_m(y;0) = R1_m(y) + (beta/2-m+1)_{2m}`. The mutation shifts the
/// Pochhammer base down by one.
pub fn verify_prop_r_relation(m_max: usize, variant: Variant) -> Report {
    run_indexed(
        "poly-recurrences",
        "R versus R1",
        r"R_m(y;0)=R^{(1)}_m(y)+(\tfrac{\beta}{2}-m+1)_{2m}",
        0..=m_max,
        |m| {
            let shift = if variant.is_mutated() { 0 } else { 1 };
            let base = &half_beta() - &p(m as i64 - shift);
            let rhs = &build_r1(m) + &UniPoly::constant(rising(&base, 2 * m));
            rhs == build_r_int(m, 0)
        },
    )
}

/// `R1_{m+1} = [y - m(m+1)] R1_m + (beta/2-m+1)_{2m} [y - (beta/2)(beta/2+1)]`.
/// The mutation drops the inhomogeneous term.
pub fn verify_prop_r1_recurrence(m_max: usize, variant: Variant) -> Report {
    run_indexed(
        "poly-recurrences",
        "R1 recurrence",
        r"R^{(1)}_{m+1}(y)=\big[y-m(m+1)\big]R^{(1)}_m(y)+(\tfrac{\beta}{2}-m+1)_{2m}\big[y-\tfrac{\beta}{2}(\tfrac{\beta}{2}+1)\big]",
        0..=m_max.saturating_sub(1),
        |m| {
            let mi = m as i64;
            let hom = &UniPoly::linear_root(p(mi * (mi + 1))) * &build_r1(m);
            let inhom = UniPoly::linear_root(y_critical())
                .scale(&rising(&(&half_beta() - &p(mi - 1)), 2 * m));
            let rhs = if variant.is_mutated() { hom } else { &hom + &inhom };
            rhs == build_r1(m + 1)
        },
    )
}

/// The four-term decomposition of `s1_m` in the `s-` basis, for `m >= 2`.
/// The mutation drops the constant term.
pub fn verify_prop_s1_decomposition(m_max: usize, variant: Variant) -> Report {
    run_indexed(
        "poly-recurrences",
        "s1 decomposition",
        r"s^{(1)}_m=(\lambda-\beta+2m)s^{(-)}_m-2m(\lambda+2m)(\lambda-\tfrac{\beta}{2}+m)s^{(-)}_{m-1}+m(m-1)(\lambda+\beta+2m)(\lambda-\tfrac{\beta}{2}+m-1)_2s^{(-)}_{m-2}-(\lambda)_m(\lambda-\beta)(\tfrac{\beta}{2})_m",
        2..=m_max,
        |m| s1_decomposition_rhs(m, !variant.is_mutated()) == build_s(PolyTag::SOne, m),
    )
}

/// Right-hand side of the `s1` decomposition, optionally without its
/// constant term.
pub fn s1_decomposition_rhs(m: usize, with_constant: bool) -> UniPoly {
    let mi = m as i64;
    let (h, l, b) = (half_beta(), ParamScalar::lambda(), ParamScalar::beta());
    let c0 = &(&l - &b) + &p(2 * mi);
    let c1: ParamScalar = [p(2 * mi), &l + &p(2 * mi), &(&l - &h) + &p(mi)]
        .into_iter()
        .product();
    let c2: ParamScalar = [
        p(mi * (mi - 1)),
        &(&l + &b) + &p(2 * mi),
        rising(&(&(&l - &h) + &p(mi - 1)), 2),
    ]
    .into_iter()
    .product();
    let mut rhs = &(&build_s(PolyTag::SMinus, m).scale(&c0)
        - &s_minus_or_zero(mi - 1).scale(&c1))
        + &s_minus_or_zero(mi - 2).scale(&c2);
    if with_constant {
        let c3: ParamScalar = [rising(&l, m), &l - &b, rising(&h, m)].into_iter().product();
        rhs = &rhs - &UniPoly::constant(c3);
    }
    rhs
}

/// All polynomial-recurrence identities up to `m_max` in one report.
pub fn verify_poly_recurrences(m_max: usize, variant: Variant) -> Report {
    let mut r = Report::new("poly-recurrences");
    r.extend(verify_prop_sminus_recurrence(m_max, variant));
    r.extend(verify_prop_splus_recurrence(m_max, variant));
    r.extend(verify_prop_r_relation(m_max, variant));
    r.extend(verify_prop_r1_recurrence(m_max, variant));
    r.extend(verify_prop_s1_decomposition(m_max, variant));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    #[test]
    fn pochhammer_examples() {
        assert!(pochhammer(&ParamScalar::beta(), 0).unwrap().is_one());
        assert_eq!(pochhammer(&p(3), 2).unwrap(), p(12));
        let m = 4;
        let a = &half_beta() + &p(m + 1);
        assert_eq!(
            pochhammer(&a, -1).unwrap(),
            &p(1) / &(&half_beta() + &p(m))
        );
        assert!(matches!(
            pochhammer(&p(2), -3),
            Err(Error::PochhammerPole { index: -3, .. })
        ));
    }

    #[test]
    fn r_examples() {
        assert_eq!(build_r(0, &ParamScalar::lambda()), UniPoly::one());
        assert_eq!(build_r(1, &p(0)), UniPoly::var());
        for m in 0..5usize {
            let v = build_r(m, &p(0)).eval(&y_critical());
            assert_eq!(v, rising(&(&half_beta() - &p(m as i64 - 1)), 2 * m));
        }
    }

    #[test]
    fn r1_examples() {
        assert!(build_r1(0).is_zero());
        assert_eq!(build_r1(1), UniPoly::linear_root(y_critical()));
        for m in 0..6 {
            assert!(build_r1(m).eval(&y_critical()).is_zero());
        }
    }

    #[test]
    fn s_examples() {
        assert_eq!(build_s(PolyTag::SMinus, 0), UniPoly::one());
        assert!(build_s(PolyTag::SOne, 0).is_zero());
        let h = half_beta();
        let c0 = &(&(&h - &ParamScalar::lambda()) - &p(1)) * &(-&h);
        assert_eq!(build_s(PolyTag::SPlus, 1), y_plus(c0));
    }

    #[test]
    fn d1_top_coefficient_is_polynomial() {
        for m in 0..6 {
            let d = coeff_d1(m, m);
            let expected = &(&ParamScalar::lambda() - &ParamScalar::beta()) + &p(2 * m as i64);
            assert_eq!(d, expected);
        }
    }

    #[test]
    fn sminus_m1_expansion() {
        let h = half_beta();
        let l = ParamScalar::lambda();
        let c = &(&p(2) * &(&l + &p(1))) + &(&h * &(&(&l - &h) - &p(1)));
        assert_eq!(build_s(PolyTag::SMinus, 1), y_plus(c));
    }

    #[test]
    fn recurrences_pass_and_mutations_fail() {
        assert!(verify_prop_sminus_recurrence(6, Variant::Faithful).passed());
        assert_eq!(
            verify_prop_sminus_recurrence(6, Variant::Mutated).first_failure_index(),
            Some(1)
        );
        assert!(verify_prop_splus_recurrence(6, Variant::Faithful).passed());
        assert!(!verify_prop_splus_recurrence(6, Variant::Mutated).passed());
        assert!(verify_prop_r_relation(8, Variant::Faithful).passed());
        assert!(!verify_prop_r_relation(8, Variant::Mutated).passed());
        assert!(verify_prop_r1_recurrence(8, Variant::Faithful).passed());
        assert!(!verify_prop_r1_recurrence(8, Variant::Mutated).passed());
        assert!(verify_prop_s1_decomposition(8, Variant::Faithful).passed());
        assert!(!verify_prop_s1_decomposition(8, Variant::Mutated).passed());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(frac(1, 2), BigRational::new(1.into(), 2.into()));
    }
}
