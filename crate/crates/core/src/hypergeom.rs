//! Terminating generalized hypergeometric series, dual Hahn polynomials and
//! the hypergeometric descriptions of the `s` families.
//!
//! Upper parameters may depend on the abstract variable `y` (they are
//! [`UniPoly`]s, usually of degree at most one), so a series such as
//! `3F2(-m, -y, 1+y; b1, b2; 1)` is computed as an honest polynomial in `y`.
//! Lower parameters and the argument are `y`-free.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{half_beta, p, ParamScalar, UniPoly};
use crate::report::{CheckResult, Report, Variant};
use crate::special::{build_r, build_s, coeff_c_plus, coeff_d1, pochhammer, rising, PolyTag};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergeomSpec {
    pub upper: Vec<UniPoly>,
    pub lower: Vec<ParamScalar>,
    pub argument: ParamScalar,
    /// Last summation index when no upper parameter forces termination.
    pub term_cap: Option<usize>,
}

impl HypergeomSpec {
    pub fn new(upper: Vec<ParamScalar>, lower: Vec<ParamScalar>, argument: ParamScalar) -> Self {
        HypergeomSpec {
            upper: upper.into_iter().map(UniPoly::constant).collect(),
            lower,
            argument,
            term_cap: None,
        }
    }

    /// Series with `y`-dependent upper parameters and argument 1.
    pub fn at_one(upper: Vec<UniPoly>, lower: Vec<ParamScalar>) -> Self {
        HypergeomSpec {
            upper,
            lower,
            argument: ParamScalar::one(),
            term_cap: None,
        }
    }

    /// The index `L` at which the series stops: the smallest `L` with some
    /// upper parameter equal to `-L`, else the cap.
    pub fn termination(&self) -> Result<usize> {
        let forced = self
            .upper
            .iter()
            .filter(|a| a.degree().unwrap_or(0) == 0)
            .filter_map(|a| a.constant_term().as_integer())
            .filter(|&v| v <= 0)
            .map(|v| (-v) as usize)
            .min();
        match (forced, self.term_cap) {
            (Some(l), Some(c)) => Ok(l.min(c)),
            (Some(l), None) => Ok(l),
            (None, Some(c)) => Ok(c),
            (None, None) => Err(Error::NonTerminating),
        }
    }
}

/// Sum of the series as a polynomial in `y`.
///
/// An upper parameter `b + n` paired with a symbolic lower parameter `b`
/// (`n` a nonnegative integer) is cancelled up front through
/// `(b+n)_k / (b)_k = (b+k)_n / (b)_n`, which keeps intermediate rational
/// functions small.
pub fn pfq_terminating_poly(spec: &HypergeomSpec) -> Result<UniPoly> {
    let last = spec.termination()?;
    let mut upper = spec.upper.clone();
    let mut lower = Vec::new();
    let mut pairs: Vec<(ParamScalar, usize)> = Vec::new();
    for b in &spec.lower {
        let partner = (b.as_rational().is_none())
            .then(|| {
                upper.iter().position(|a| {
                    a.degree().unwrap_or(0) == 0
                        && (&a.constant_term() - b).as_integer().is_some_and(|n| (0..=64).contains(&n))
                })
            })
            .flatten();
        match partner {
            Some(i) => {
                let a = upper.remove(i).constant_term();
                let n = (&a - b).as_integer().expect("checked above") as usize;
                pairs.push((b.clone(), n));
            }
            None => lower.push(b.clone()),
        }
    }
    let pair_norm: ParamScalar = pairs
        .iter()
        .map(|(b, n)| rising(b, *n))
        .product::<ParamScalar>()
        .recip()
        .map_err(|_| Error::HypergeometricPole { param: "cancelled pair".into() })?;
    let extra = |k: i64| -> ParamScalar {
        let top: ParamScalar = pairs.iter().map(|(b, n)| rising(&(b + &p(k)), *n)).product();
        &top * &pair_norm
    };
    let mut numer = UniPoly::one();
    let mut scalar = ParamScalar::one();
    let mut acc = UniPoly::one();
    for l in 0..last {
        let li = l as i64;
        for a in &upper {
            numer = &numer * &(a + &UniPoly::constant(p(li)));
        }
        if numer.is_zero() {
            break;
        }
        let mut den = p(li + 1);
        for b in &lower {
            let f = b + &p(li);
            if f.is_zero() {
                return Err(Error::HypergeometricPole { param: b.to_text() });
            }
            den = &den * &f;
        }
        scalar = &(&scalar * &spec.argument) / &den;
        acc = &acc + &numer.scale(&(&scalar * &extra(li + 1)));
    }
    Ok(acc)
}

/// Sum of a `y`-free series.
pub fn pfq_terminating(spec: &HypergeomSpec) -> Result<ParamScalar> {
    if spec.upper.iter().any(|a| a.degree().unwrap_or(0) > 0) {
        return Err(Error::InvalidSpec(
            "upper parameters depend on y; use pfq_terminating_poly".into(),
        ));
    }
    Ok(pfq_terminating_poly(spec)?.constant_term())
}

/// How the `N` of a dual Hahn polynomial is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DualHahnRange {
    /// `N` must be a positive integer and `m <= N - 1`.
    Classical,
    /// `N` is any parameter-field element.
    Formal,
}

/// Dual Hahn polynomial `R_m(w; a, b, N)` as a polynomial in the lattice
/// variable `w = n(n+a+b+1)`. Uses
/// `(-n)_l (n+a+b+1)_l = prod_{i<l} [i(i+a+b+1) - w]`.
pub fn dual_hahn(
    m: usize,
    a: &ParamScalar,
    b: &ParamScalar,
    n_param: &ParamScalar,
    range: DualHahnRange,
) -> Result<UniPoly> {
    if range == DualHahnRange::Classical {
        match n_param.as_integer() {
            Some(n) if n >= 1 && (m as i64) < n => {}
            _ => {
                return Err(Error::InvalidSpec(format!(
                    "dual Hahn degree {m} needs a positive integer N > {m}, got {}",
                    n_param.to_text()
                )))
            }
        }
    }
    let c = &(a + b) + &p(1);
    let lower = [a + &p(1), &p(1) - n_param];
    let mut acc = UniPoly::one();
    let mut lattice = UniPoly::one();
    let mut scalar = ParamScalar::one();
    for l in 0..m {
        let li = l as i64;
        let root = &p(li) * &(&c + &p(li));
        lattice = &lattice * &(&UniPoly::constant(root) - &UniPoly::var());
        let mut den = p(li + 1);
        for b in &lower {
            let f = b + &p(li);
            if f.is_zero() {
                return Err(Error::HypergeometricPole { param: b.to_text() });
            }
            den = &den * &f;
        }
        scalar = &(&scalar * &p(li - m as i64)) / &den;
        acc = &acc + &lattice.scale(&scalar);
    }
    Ok(acc)
}

/// `y(y+1)`.
pub fn y_times_y_plus_one() -> UniPoly {
    &UniPoly::var() * &(&UniPoly::var() + &UniPoly::one())
}

fn neg_y() -> UniPoly {
    -UniPoly::var()
}

fn y_plus(k: i64) -> UniPoly {
    &UniPoly::var() + &UniPoly::constant(p(k))
}

fn konst(k: i64) -> UniPoly {
    UniPoly::constant(p(k))
}

/// `3F2(-m, -y, 1+y; b1, b2; 1)` as a polynomial in `y`.
pub fn three_f_two_y(m: i64, b1: ParamScalar, b2: ParamScalar) -> UniPoly {
    let spec = HypergeomSpec::at_one(vec![konst(-m), neg_y(), y_plus(1)], vec![b1, b2]);
    pfq_terminating_poly(&spec).expect("formal lower parameters have no poles")
}

/// `2F1(-m, alpha; gamma; 1)`.
pub fn two_f_one(m: i64, alpha: &ParamScalar, gamma: &ParamScalar) -> Result<ParamScalar> {
    pfq_terminating(&HypergeomSpec::new(
        vec![p(-m), alpha.clone()],
        vec![gamma.clone()],
        ParamScalar::one(),
    ))
}

fn lambda_shift(k: i64) -> ParamScalar {
    &(&ParamScalar::lambda() - &half_beta()) + &p(k)
}

fn run_indexed(
    suite: &str,
    identity: &str,
    anchor: &str,
    range: std::ops::RangeInclusive<usize>,
    check: impl Fn(usize) -> bool + Sync,
) -> Report {
    let checks = range
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|m| {
            let start = Instant::now();
            CheckResult::new(identity, anchor, check(m)).at(m as i64).timed(start)
        })
        .collect();
    Report {
        suite: suite.into(),
        checks,
    }
}

/// `R_k(y(y+1); alpha) = (-1)^k (-y-alpha)_k (y+1-alpha)_k`. `alpha` is
/// carried by the formal symbol lambda, which is algebraically independent
/// of `y`. The mutation drops the sign `(-1)^k`.
pub fn verify_pochhammer_product(k_max: usize, variant: Variant) -> Report {
    run_indexed(
        "hahn",
        "R at y(y+1) as Pochhammer product",
        r"R_k(y(y+1);\alpha)=(-1)^k(-y-\alpha)_k(y+1-\alpha)_k",
        1..=k_max,
        |k| {
            let alpha = ParamScalar::lambda();
            let lhs = build_r(k, &alpha).compose(&y_times_y_plus_one());
            let mut rhs = UniPoly::one();
            for i in 0..k as i64 {
                let a = &neg_y() + &UniPoly::constant(&p(i) - &alpha);
                let b = &UniPoly::var() + &UniPoly::constant(&p(i + 1) - &alpha);
                rhs = &(&rhs * &a) * &b;
            }
            let flip = k % 2 == 1 && !variant.is_mutated();
            let rhs = if flip { -rhs } else { rhs };
            lhs == rhs
        },
    )
}

/// Lower parameter pairs for the `s-` and `s+` representations.
fn hahn_lowers(tag: PolyTag, variant: Variant) -> (ParamScalar, ParamScalar) {
    let h = half_beta();
    let first = match (tag, variant.is_mutated()) {
        (PolyTag::SMinus, false) | (PolyTag::SPlus, true) => &h + &p(2),
        _ => h,
    };
    (first, lambda_shift(1))
}

/// The `3F2` and dual Hahn descriptions of `s-_m(y(y+1))` and
/// `s+_m(y(y+1))`. The mutation swaps the first lower parameter between the
/// two families.
pub fn verify_s_hahn_representation(m_max: usize, variant: Variant) -> Report {
    let mut report = Report::new("hahn");
    for tag in [PolyTag::SMinus, PolyTag::SPlus] {
        let (sign, a, b) = match tag {
            PolyTag::SMinus => ("-", &half_beta() + &p(1), &p(-1) - &half_beta()),
            _ => ("+", &half_beta() - &p(1), &p(1) - &half_beta()),
        };
        let name = format!("s{sign} as 3F2 and as dual Hahn");
        let anchor = format!(
            r"s^{{({sign})}}_m(y(y+1))=(b_1)_m(\lambda-\tfrac{{\beta}}{{2}}+1)_m\,{{}}_3F_2(-m,-y,1+y;b_1,\lambda-\tfrac{{\beta}}{{2}}+1;1)=(b_1)_m(\lambda-\tfrac{{\beta}}{{2}}+1)_m R_m(y(y+1);b_1-1,-b_1,\tfrac{{\beta}}{{2}}-\lambda)"
        );
        let r = run_indexed("hahn", &name, &anchor, 0..=m_max, |m| {
            let (b1, b2) = hahn_lowers(tag, variant);
            let pref = &rising(&b1, m) * &rising(&b2, m);
            let lhs = build_s(tag, m).compose(&y_times_y_plus_one());
            let via_pfq = three_f_two_y(m as i64, b1, b2).scale(&pref);
            let n_param = &half_beta() - &ParamScalar::lambda();
            let via_hahn = match dual_hahn(m, &a, &b, &n_param, DualHahnRange::Formal) {
                Ok(h) => h.compose(&y_times_y_plus_one()).scale(&pref),
                Err(_) => return false,
            };
            lhs == via_pfq && (variant.is_mutated() || lhs == via_hahn)
        });
        report.extend(r);
    }
    report
}

/// `2F1(-m, 1-beta/2; lambda-beta/2+1; 1)`, the constant piece shared by
/// all `s1` descriptions.
fn s1_two_f_one(m: usize) -> ParamScalar {
    two_f_one(m as i64, &(&p(1) - &half_beta()), &lambda_shift(1)).expect("formal lower parameter")
}

/// Four-term combination of `3F2`s and a `2F1` for `s1_m(y(y+1))`.
pub fn s1_via_hyper_decomposition(m: usize) -> UniPoly {
    let (l, b, h) = (ParamScalar::lambda(), ParamScalar::beta(), half_beta());
    let mi = m as i64;
    let b1 = &h + &p(2);
    let b2 = lambda_shift(1);
    let coeffs = [
        (0, &(&(&l - &b) + &p(2 * mi)) * &rising(&b1, m)),
        (
            1,
            -&(&(&p(2 * mi) * &(&l + &p(2 * mi))) * &pochhammer(&b1, mi - 1).expect("formal")),
        ),
        (
            2,
            &(&p(mi * (mi - 1)) * &(&(&l + &b) + &p(2 * mi)))
                * &pochhammer(&b1, mi - 2).expect("formal"),
        ),
    ];
    let mut acc = UniPoly::zero();
    for (shift, c) in coeffs {
        if c.is_zero() {
            continue;
        }
        acc = &acc + &three_f_two_y(mi - shift, b1.clone(), b2.clone()).scale(&c);
    }
    let tail = &(&(&l - &b) * &rising(&h, m)) * &s1_two_f_one(m);
    acc = &acc - &UniPoly::constant(tail);
    acc.scale(&rising(&b2, m))
}

/// `gamma = beta(lambda-beta-2m) / (2(lambda+beta+2m))`.
pub fn s1_gamma(m: usize) -> ParamScalar {
    let (l, b) = (ParamScalar::lambda(), ParamScalar::beta());
    let two_m = p(2 * m as i64);
    &(&b * &(&(&l - &b) - &two_m)) / &(&p(2) * &(&(&l + &b) + &two_m))
}

/// The `4F3` description of `s1_m(y(y+1))`; `gamma_shift` is added to
/// `gamma` for the negative control.
pub fn s1_via_four_f_three(m: usize, gamma_shift: i64) -> UniPoly {
    let (l, b, h) = (ParamScalar::lambda(), ParamScalar::beta(), half_beta());
    let mi = m as i64;
    let gamma = &s1_gamma(m) + &p(gamma_shift);
    let spec = HypergeomSpec::at_one(
        vec![
            UniPoly::constant(&gamma + &p(1)),
            konst(-mi),
            neg_y(),
            y_plus(1),
        ],
        vec![gamma, &h + &p(1), lambda_shift(1)],
    );
    let f43 = pfq_terminating_poly(&spec).expect("formal lower parameters");
    let inner = &f43.scale(&(&(&l - &b) - &p(2 * mi)))
        - &UniPoly::constant(&(&l - &b) * &s1_two_f_one(m));
    inner.scale(&(&rising(&lambda_shift(1), m) * &rising(&h, m)))
}

/// The description of `s1_m(y(y+1))` by two `3F2`s with `y`-dependent
/// coefficients.
pub fn s1_via_two_three_f_two(m: usize) -> UniPoly {
    let (l, b, h) = (ParamScalar::lambda(), ParamScalar::beta(), half_beta());
    let mi = m as i64;
    let lbm = &(&l - &b) - &p(2 * mi);
    let first = three_f_two_y(mi, &h + &p(1), lambda_shift(1));
    let second = pfq_terminating_poly(&HypergeomSpec::at_one(
        vec![konst(1 - mi), &konst(1) - &UniPoly::var(), y_plus(2)],
        vec![&h + &p(2), lambda_shift(2)],
    ))
    .expect("formal lower parameters");
    let coef_den: ParamScalar = [b.clone(), &h + &p(1), lambda_shift(1), lbm.clone()]
        .into_iter()
        .product();
    let coef = &(&p(2 * mi) * &(&(&l + &b) + &p(2 * mi))) / &coef_den;
    let second = &y_times_y_plus_one() * &second.scale(&coef);
    let pref = &rising(&lambda_shift(1), m) * &rising(&h, m);
    let main = (&first + &second).scale(&(&pref * &lbm));
    &main - &UniPoly::constant(&(&pref * &(&l - &b)) * &s1_two_f_one(m))
}

/// All three hypergeometric descriptions of `s1_m(y(y+1))`, each compared
/// with the direct construction after multiplying by `lambda+beta+2m`, the
/// denominator of `gamma`. The mutation replaces `gamma` by `gamma+1`.
pub fn verify_s1_hypergeometric(m_max: usize, variant: Variant) -> Report {
    let cleared = |m: usize, v: UniPoly| {
        let d = &(&ParamScalar::lambda() + &ParamScalar::beta()) + &p(2 * m as i64);
        v.scale(&d)
    };
    let direct = |m: usize| build_s(PolyTag::SOne, m).compose(&y_times_y_plus_one());
    let mut report = Report::new("s1-hypergeom");
    report.extend(run_indexed(
        "s1-hypergeom",
        "s1 as 3F2/2F1 combination",
        r"s^{(1)}_m(y(y+1))=(\lambda-\tfrac{\beta}{2}+1)_m\big[\sum_{i=0}^{2}c_i\,{}_3F_2(-m+i,-y,1+y;\tfrac{\beta}{2}+2,\lambda-\tfrac{\beta}{2}+1;1)-(\lambda-\beta)(\tfrac{\beta}{2})_m\,{}_2F_1(-m,1-\tfrac{\beta}{2};\lambda-\tfrac{\beta}{2}+1;1)\big]",
        1..=m_max,
        |m| cleared(m, direct(m)) == cleared(m, s1_via_hyper_decomposition(m)),
    ));
    let shift = if variant.is_mutated() { 1 } else { 0 };
    report.extend(run_indexed(
        "s1-hypergeom",
        "s1 as 4F3",
        r"s^{(1)}_m(y(y+1))=(\lambda-\tfrac{\beta}{2}+1)_m(\tfrac{\beta}{2})_m\big[(\lambda-\beta-2m)\,{}_4F_3(1+\gamma,-m,-y,1+y;\gamma,\tfrac{\beta}{2}+1,\lambda-\tfrac{\beta}{2}+1;1)-(\lambda-\beta)\,{}_2F_1(-m,1-\tfrac{\beta}{2};\lambda-\tfrac{\beta}{2}+1;1)\big],\ \gamma=\tfrac{\beta(\lambda-\beta-2m)}{2(\lambda+\beta+2m)}",
        1..=m_max,
        |m| cleared(m, direct(m)) == cleared(m, s1_via_four_f_three(m, shift)),
    ));
    report.extend(run_indexed(
        "s1-hypergeom",
        "s1 as two 3F2 with y-dependent coefficients",
        r"s^{(1)}_m(y(y+1))=P_m(\lambda-\beta-2m)\big[{}_3F_2(-m,-y,1+y;\tfrac{\beta}{2}+1,\lambda-\tfrac{\beta}{2}+1;1)+\tfrac{2my(y+1)(\lambda+\beta+2m)}{\beta(\tfrac{\beta}{2}+1)(\lambda-\tfrac{\beta}{2}+1)(\lambda-\beta-2m)}{}_3F_2(1-m,1-y,2+y;\tfrac{\beta}{2}+2,\lambda-\tfrac{\beta}{2}+2;1)\big]-P_m(\lambda-\beta)\,{}_2F_1,\ P_m=(\lambda-\tfrac{\beta}{2}+1)_m(\tfrac{\beta}{2})_m",
        1..=m_max,
        |m| cleared(m, direct(m)) == cleared(m, s1_via_two_three_f_two(m)),
    ));
    report
}

/// Chu-Vandermonde `2F1(-m, alpha; gamma; 1) = (gamma-alpha)_m / (gamma)_m`
/// for the given parameters. The mutation uses `(gamma+alpha)_m`.
pub fn chu_vandermonde_holds(
    m: usize,
    alpha: &ParamScalar,
    gamma: &ParamScalar,
    variant: Variant,
) -> Result<bool> {
    let lhs = two_f_one(m as i64, alpha, gamma)?;
    let top = if variant.is_mutated() {
        gamma + alpha
    } else {
        gamma - alpha
    };
    let rhs = &rising(&top, m) / &rising(gamma, m);
    Ok(lhs == rhs)
}

/// The two coefficient sums, the Chu-Vandermonde step and the auxiliary
/// `lambda` identity. The mutation affects the Chu-Vandermonde check.
pub fn verify_lemma_a1(m_max: usize, variant: Variant) -> Report {
    let mut report = Report::new("lemma-a1");
    let (l, b, h) = (ParamScalar::lambda(), ParamScalar::beta(), half_beta());
    report.extend(run_indexed(
        "lemma-a1",
        "Chu-Vandermonde",
        r"{}_2F_1(-m,\alpha;\gamma;1)=\tfrac{(\gamma-\alpha)_m}{(\gamma)_m}",
        0..=m_max,
        |m| {
            let generic = chu_vandermonde_holds(m, &b, &l, variant).unwrap_or(false);
            let used = chu_vandermonde_holds(m, &(&p(1) - &h), &lambda_shift(1), variant)
                .unwrap_or(false);
            generic && used
        },
    ));
    report.extend(run_indexed(
        "lemma-a1",
        "C+ weighted sum",
        r"\sum_{k=0}^{m}C^{(+)}_k(m)(\tfrac{\beta}{2}-k)_{2k}=(\lambda)_m(\tfrac{\beta}{2})_m",
        0..=m_max,
        |m| {
            let lhs: ParamScalar = (0..=m)
                .map(|k| &coeff_c_plus(k, m) * &rising(&(&h - &p(k as i64)), 2 * k))
                .sum();
            lhs == &rising(&l, m) * &rising(&h, m)
        },
    ));
    report.extend(run_indexed(
        "lemma-a1",
        "D1 weighted sum",
        r"\sum_{k=0}^{m}D^{(1)}_k(m)(\tfrac{\beta}{2}-k+1)_{2k}=(\lambda)_m(\tfrac{\beta}{2})_m(\lambda-\beta)",
        0..=m_max,
        |m| {
            let lhs: ParamScalar = (0..=m)
                .map(|k| &coeff_d1(k, m) * &rising(&(&h - &p(k as i64 - 1)), 2 * k))
                .sum();
            lhs == &(&rising(&l, m) * &rising(&h, m)) * &(&l - &b)
        },
    ));
    report.extend(run_indexed(
        "lemma-a1",
        "auxiliary lambda identity",
        r"m(\lambda+\beta+2m)(\lambda+1)_{m-1}+(\lambda-\beta-2m)(\lambda+1)_m=(\lambda)_m(\lambda-\beta)",
        0..=m_max,
        |m| {
            let mi = m as i64;
            let l1 = &l + &p(1);
            let first = if m == 0 {
                ParamScalar::zero()
            } else {
                &(&p(mi) * &(&(&l + &b) + &p(2 * mi))) * &rising(&l1, m - 1)
            };
            let second = &(&(&l - &b) - &p(2 * mi)) * &rising(&l1, m);
            &first + &second == &rising(&l, m) * &(&l - &b)
        },
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_upper_truncates_immediately() {
        let spec = HypergeomSpec::new(
            vec![p(0), ParamScalar::beta(), ParamScalar::lambda()],
            vec![ParamScalar::u(), &ParamScalar::u() + &p(1)],
            ParamScalar::one(),
        );
        assert!(pfq_terminating(&spec).unwrap().is_one());
    }

    #[test]
    fn two_term_three_f_two() {
        let b1 = &half_beta() + &p(2);
        let b2 = lambda_shift(1);
        let got = three_f_two_y(1, b1.clone(), b2.clone());
        // (-1)_1 (-y)_1 (1+y)_1 = +y(y+1)
        let expected = &UniPoly::one()
            + &y_times_y_plus_one().scale(&(&p(1) / &(&b1 * &b2)));
        assert_eq!(got, expected);
    }

    #[test]
    fn pole_and_non_termination() {
        let spec = HypergeomSpec::new(vec![p(-3)], vec![p(-1)], ParamScalar::one());
        assert!(matches!(pfq_terminating(&spec), Err(Error::HypergeometricPole { .. })));
        let spec = HypergeomSpec::new(vec![ParamScalar::beta()], vec![], ParamScalar::one());
        assert_eq!(pfq_terminating(&spec), Err(Error::NonTerminating));
        // A lower parameter -2 is fine when the series stops at l = 2.
        let spec = HypergeomSpec::new(vec![p(-2)], vec![p(-2)], ParamScalar::one());
        assert!(pfq_terminating(&spec).is_ok());
    }

    #[test]
    fn dual_hahn_low_degrees() {
        let (a, b, n) = (ParamScalar::beta(), ParamScalar::lambda(), ParamScalar::u());
        assert_eq!(dual_hahn(0, &a, &b, &n, DualHahnRange::Formal).unwrap(), UniPoly::one());
        let d1 = dual_hahn(1, &a, &b, &n, DualHahnRange::Formal).unwrap();
        let expected = &UniPoly::one()
            - &UniPoly::var().scale(&(&p(1) / &(&(&a + &p(1)) * &(&n - &p(1)))));
        assert_eq!(d1, expected);
        assert!(dual_hahn(3, &a, &b, &p(3), DualHahnRange::Classical).is_err());
        assert!(dual_hahn(2, &a, &b, &p(3), DualHahnRange::Classical).is_ok());
        assert!(dual_hahn(3, &a, &b, &p(3), DualHahnRange::Formal).is_err());
    }

    #[test]
    fn suites_pass_small() {
        assert!(verify_pochhammer_product(5, Variant::Faithful).passed());
        assert!(!verify_pochhammer_product(5, Variant::Mutated).passed());
        assert!(verify_s_hahn_representation(4, Variant::Faithful).passed());
        assert!(!verify_s_hahn_representation(4, Variant::Mutated).passed());
        assert!(verify_s1_hypergeometric(3, Variant::Faithful).passed());
        assert!(!verify_s1_hypergeometric(3, Variant::Mutated).passed());
        assert!(verify_lemma_a1(5, Variant::Faithful).passed());
        assert!(!verify_lemma_a1(5, Variant::Mutated).passed());
    }
}
