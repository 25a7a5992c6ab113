//! Branson-Gover operators on Einstein manifolds: definition, normalization,
//! recurrence, second-order factorizations, exceptional cases, the critical
//! operator with its Q-curvature and gauge companion, and the residue link
//! to the solution operators.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bvp::{solution_operator, Sign};
use crate::error::{Error, Result};
use crate::exact::{half_beta, p, ParamScalar, Var};
use crate::operator::{eval_at_slot, FormOperator, OperatorSlot};
use crate::report::{CheckResult, Report, Variant};
use crate::special::{build_r, build_r1, rising};

/// Order `2N` on `p`-forms in dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BGSpec {
    #[serde(rename = "N")]
    pub big_n: usize,
    pub n: i64,
    pub p: i64,
}

impl BGSpec {
    pub fn new(big_n: usize, n: i64, p_deg: i64) -> Result<Self> {
        if big_n < 1 {
            return Err(Error::InvalidSpec(format!("N must be positive, got {big_n}")));
        }
        if n < 3 {
            return Err(Error::InvalidSpec(format!("dimension must be at least 3, got {n}")));
        }
        if !(0..=n).contains(&p_deg) {
            return Err(Error::InvalidSpec(format!("form degree {p_deg} outside [0, {n}]")));
        }
        Ok(BGSpec { big_n, n, p: p_deg })
    }

    pub fn beta(&self) -> i64 {
        self.n - 2 * self.p
    }

    pub fn beta_scalar(&self) -> ParamScalar {
        p(self.beta())
    }

    pub fn even_dimension(&self) -> bool {
        self.n % 2 == 0
    }

    /// `(beta/2 - N + 1)_{2N-1}` vanishes.
    pub fn is_exceptional(&self) -> bool {
        normalizer_at(self.big_n, &self.beta_scalar()).is_zero()
    }
}

fn hb_plus(k: i64) -> ParamScalar {
    &half_beta() + &p(k)
}

fn at_beta(op: FormOperator, b: Option<&ParamScalar>) -> FormOperator {
    match b {
        None => op,
        Some(b) => op.substitute(Var::Beta, b).expect("polynomial in beta"),
    }
}

/// `L_{2N}` with `beta` formal.
pub fn bg_operator_formal(big_n: usize) -> FormOperator {
    let ni = big_n as i64;
    let r = eval_at_slot(&build_r(big_n, &ParamScalar::zero()), OperatorSlot::YPlus).scale(&hb_plus(ni));
    let r1 = eval_at_slot(&build_r1(big_n), OperatorSlot::YOne).scale(&hb_plus(-ni));
    (&r + &r1).scale(&ParamScalar::u().pow(big_n as u32))
}

pub fn bg_operator(spec: &BGSpec) -> FormOperator {
    at_beta(bg_operator_formal(spec.big_n), Some(&spec.beta_scalar()))
}

/// `(beta/2 - N + 1)_{2N-1}` at formal `beta`.
pub fn bg_normalizer(big_n: usize) -> ParamScalar {
    rising(&hb_plus(1 - big_n as i64), 2 * big_n - 1)
}

fn normalizer_at(big_n: usize, b: &ParamScalar) -> ParamScalar {
    bg_normalizer(big_n).substitute(Var::Beta, b).expect("polynomial in beta")
}

pub fn bg_normalized_formal(big_n: usize) -> FormOperator {
    bg_operator_formal(big_n).scale(&bg_normalizer(big_n))
}

pub fn bg_normalized(spec: &BGSpec) -> FormOperator {
    at_beta(bg_normalized_formal(spec.big_n), Some(&spec.beta_scalar()))
}

/// `u^N [(beta/2-N+1)_{2N} R_N(y+;0) + (beta/2-N)_{2N} R1_N(y1)]`.
pub fn bg_normalized_alternative(big_n: usize) -> FormOperator {
    let ni = big_n as i64;
    let r = eval_at_slot(&build_r(big_n, &ParamScalar::zero()), OperatorSlot::YPlus)
        .scale(&rising(&hb_plus(1 - ni), 2 * big_n));
    let r1 = eval_at_slot(&build_r1(big_n), OperatorSlot::YOne).scale(&rising(&hb_plus(-ni), 2 * big_n));
    (&r + &r1).scale(&ParamScalar::u().pow(big_n as u32))
}

/// `a x + b z + c u`.
fn second_order(a: ParamScalar, b: ParamScalar, c: ParamScalar) -> FormOperator {
    [
        FormOperator::x().scale(&a),
        FormOperator::z().scale(&b),
        FormOperator::scalar(&c * &ParamScalar::u()),
    ]
    .into_iter()
    .sum()
}

/// Recurrence multiplier taking the normalized operator from `N-1` to `N`.
/// The mutation swaps the `x` and `z` coefficients.
pub fn bg_recurrence_factor(big_n: usize, variant: Variant) -> FormOperator {
    let ni = big_n as i64;
    let cx = &hb_plus(ni) * &hb_plus(1 - ni);
    let cz = &hb_plus(ni - 1) * &hb_plus(-ni);
    let cu = [hb_plus(-ni), hb_plus(1 - ni), hb_plus(ni - 1), hb_plus(ni)].into_iter().product();
    if variant.is_mutated() {
        second_order(cz, cx, cu)
    } else {
        second_order(cx, cz, cu)
    }
}

/// Factor `l` of the normalized product, `1 <= l <= N`.
pub fn bg_factor(big_n: usize, l: usize) -> FormOperator {
    let (ni, li) = (big_n as i64, l as i64);
    second_order(
        &hb_plus(ni - li + 1) * &hb_plus(li - ni),
        &hb_plus(ni - li) * &hb_plus(li - ni - 1),
        [hb_plus(li - ni - 1), hb_plus(li - ni), hb_plus(ni - li), hb_plus(ni - li + 1)]
            .into_iter()
            .product(),
    )
}

pub fn bg_factors_formal(big_n: usize) -> Vec<FormOperator> {
    (1..=big_n).map(|l| bg_factor(big_n, l)).collect()
}

/// Second-order factors of the normalized operator at `spec.beta()`;
/// exceptional parameters are sent to [`bg_exceptional`].
pub fn bg_factorization(spec: &BGSpec) -> Result<Vec<FormOperator>> {
    if spec.is_exceptional() {
        return Err(Error::ExceptionalParameter(format!(
            "(beta/2-N+1)_(2N-1) vanishes at beta = {}, N = {}; use bg_exceptional",
            spec.beta(),
            spec.big_n
        )));
    }
    let b = spec.beta_scalar();
    Ok(bg_factors_formal(spec.big_n)
        .into_iter()
        .map(|f| at_beta(f, Some(&b)))
        .collect())
}

/// Factors with rational coefficients `(beta+2k)/(beta+2k-2)`,
/// `(beta-2k)/(beta-2k+2)` and `(beta/2-k)(beta/2+k)`.
pub fn bg_unnormalized_factors(big_n: usize) -> Vec<FormOperator> {
    let b = ParamScalar::beta();
    (1..=big_n as i64)
        .map(|k| {
            let ratio = |s: i64, t: i64| (&b + &p(s)).try_div(&(&b + &p(t))).expect("formal beta");
            second_order(ratio(2 * k, 2 * k - 2), ratio(-2 * k, 2 - 2 * k), &hb_plus(-k) * &hb_plus(k))
        })
        .collect()
}

/// Exceptional factorization: `prefactor * product(factors)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalFactorization {
    pub l: usize,
    pub prefactor: FormOperator,
    pub factors: Vec<FormOperator>,
}

impl ExceptionalFactorization {
    pub fn expand(&self) -> FormOperator {
        self.factors.iter().fold(self.prefactor.clone(), |acc, f| &acc * f)
    }
}

/// Factorization at `beta = 2l`, `0 <= l < N`, in even dimension with
/// `p <= n/2`.
pub fn bg_exceptional(spec: &BGSpec) -> Result<ExceptionalFactorization> {
    exceptional_with(spec, Variant::Faithful)
}

fn exceptional_with(spec: &BGSpec, variant: Variant) -> Result<ExceptionalFactorization> {
    let b = spec.beta();
    if !spec.even_dimension() || 2 * spec.p > spec.n || b % 2 != 0 || b / 2 >= spec.big_n as i64 {
        return Err(Error::NotExceptional(format!(
            "need even n, p <= n/2 and beta = 2l with l < N; got n = {}, p = {}, N = {}",
            spec.n, spec.p, spec.big_n
        )));
    }
    let l = b / 2;
    let ni = spec.big_n as i64;
    let sign = if variant.is_mutated() { -1 } else { 1 };
    let (x, z) = (FormOperator::x(), FormOperator::z());
    let u = || FormOperator::scalar(ParamScalar::u());
    if l == 0 {
        let prefactor = (&x - &z).scale(&p(sign * ni));
        let factors = (2..=ni)
            .map(|k| &(&x + &z) - &u().scale(&p(k * (k - 1))))
            .collect();
        return Ok(ExceptionalFactorization {
            l: 0,
            prefactor,
            factors,
        });
    }
    let q = ParamScalar::from_ratio;
    let left = &x.scale(&q(2 * l + 1, 2)) + &z.scale(&q(2 * l - 1, 2));
    let right = &(&z - &x) + &u().scale(&p(2 * l));
    let prefactor = (&left * &right).scale(&q(-2 * l * sign, 2 * l - 1));
    let factors = (1..=ni)
        .filter(|&k| k != l && k != l + 1)
        .map(|k| second_order(q(l + k, l + k - 1), q(l - k, l - k + 1), p((l - k) * (l + k))))
        .collect();
    Ok(ExceptionalFactorization {
        l: l as usize,
        prefactor,
        factors,
    })
}

/// Critical operator with its Q-curvature and gauge companion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalOperators {
    pub l_crit: FormOperator,
    pub q: FormOperator,
    pub g: FormOperator,
}

fn critical_product(b: i64, var: &FormOperator) -> FormOperator {
    let h = b / 2;
    (1..h)
        .map(|l| var + &FormOperator::scalar(&p((h - l) * (h + l - 1)) * &ParamScalar::u()))
        .product::<FormOperator>()
        .scale(&p(b))
}

/// `L = beta x prod_l [x + (beta/2-l)(beta/2+l-1) u]`; `Q` is the same
/// product in `z`; `G = delta Q`.
pub fn critical_operators(n: i64, p_deg: i64) -> Result<CriticalOperators> {
    if n % 2 != 0 {
        return Err(Error::InvalidSpec(format!("critical operators need even n, got {n}")));
    }
    let b = n - 2 * p_deg;
    if b <= 0 {
        return Err(Error::InvalidSpec(format!("critical operators need n - 2p > 0, got {b}")));
    }
    let l_crit = &FormOperator::x() * &critical_product(b, &FormOperator::x());
    let q = critical_product(b, &FormOperator::z());
    let g = &FormOperator::delta() * &q;
    Ok(CriticalOperators { l_crit, q, g })
}

/// Residue at `lambda = at` of every coefficient; fails when some pole
/// there has order above one.
pub fn residue_at(op: &FormOperator, at: &ParamScalar) -> Result<FormOperator> {
    let linear = &ParamScalar::lambda() - at;
    op.try_map(|c| {
        (c * &linear).substitute(Var::Lambda, at).map_err(|_| {
            Error::UnexpectedPoleStructure(format!("pole of order above one at lambda = {at}"))
        })
    })
}

/// First nonzero `k` with `a = k b`, if any.
pub fn proportionality(a: &FormOperator, b: &FormOperator) -> Option<ParamScalar> {
    let (ca, cb) = a
        .coefficients()
        .zip(b.coefficients())
        .find(|(_, cb)| !cb.is_zero())?;
    let k = ca.try_div(cb).ok()?;
    (!k.is_zero() && *a == b.scale(&k)).then_some(k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueLink {
    #[serde(rename = "N")]
    pub big_n: usize,
    pub scalar: ParamScalar,
    pub residue: FormOperator,
    #[serde(rename = "bgOperator")]
    pub bg_operator: FormOperator,
}

/// Residue of the plus solution operator of order `2N` at
/// `lambda = beta/2 - N`, and its ratio to `L_{2N}`.
pub fn residue_link(big_n: usize) -> Result<ResidueLink> {
    if big_n < 1 {
        return Err(Error::InvalidSpec("N must be positive".into()));
    }
    let at = &half_beta() - &p(big_n as i64);
    let residue = residue_at(&solution_operator(Sign::Plus, big_n), &at)?;
    let bg = bg_operator_formal(big_n);
    let scalar = proportionality(&residue, &bg).ok_or_else(|| {
        Error::UnexpectedPoleStructure(format!("residue at order {} is not a nonzero multiple of L", 2 * big_n))
    })?;
    Ok(ResidueLink {
        big_n,
        scalar,
        residue,
        bg_operator: bg,
    })
}

/// Closed form of the residue ratio,
/// `(-1)^{N-1} / (4^N (N-1)! N! (beta/2 + N))`.
pub fn residue_scalar_formula(big_n: usize) -> ParamScalar {
    let fact = |k: usize| rising(&p(1), k);
    let den = [
        ParamScalar::from_i64(4).pow(big_n as u32),
        fact(big_n - 1),
        fact(big_n),
        hb_plus(big_n as i64),
    ]
    .into_iter()
    .product::<ParamScalar>();
    let sign = if big_n % 2 == 1 { p(1) } else { p(-1) };
    &sign * &den.recip().expect("formal")
}

fn check(identity: &str, anchor: &str, index: usize, f: impl FnOnce() -> bool) -> CheckResult {
    let start = Instant::now();
    CheckResult::new(identity, anchor, f()).at(index as i64).timed(start)
}

fn u_degree(op: &FormOperator) -> u32 {
    op.coefficients()
        .map(|c| c.numer().degree_in(Var::U) - c.denom().degree_in(Var::U))
        .max()
        .unwrap_or(0)
}

/// Recurrence of the normalized operators, the alternative normalized
/// form, and structural invariants of `L_{2N}`.
pub fn verify_bg_recurrence(n_max: usize, variant: Variant) -> Report {
    let checks = (1..=n_max)
        .into_par_iter()
        .flat_map_iter(|big_n| {
            let ni = big_n as i64;
            let l = bg_operator_formal(big_n);
            let lbar = bg_normalized_formal(big_n);
            vec![
                check(
                    "normalized recurrence",
                    r"\bar L_{2N}=\big[(\tfrac\beta2+N)(\tfrac\beta2-N+1)\delta d+(\tfrac\beta2+N-1)(\tfrac\beta2-N)d\delta+(\tfrac\beta2-N)_2(\tfrac\beta2+N-1)_2u\big]\bar L_{2N-2}",
                    big_n,
                    || {
                        let prev = if big_n == 1 { FormOperator::identity() } else { bg_normalized_formal(big_n - 1) };
                        lbar == &bg_recurrence_factor(big_n, variant) * &prev
                    },
                ),
                check(
                    "alternative normalized form",
                    r"\bar L_{2N}=u^N\big[(\tfrac\beta2-N+1)_{2N}R_N(y^+;0)+(\tfrac\beta2-N)_{2N}R^{(1)}_N(y^1)\big]",
                    big_n,
                    || lbar == bg_normalized_alternative(big_n),
                ),
                check(
                    "degree preserving",
                    r"L_{2N}\in\mathbb{Q}(\beta,u)[\delta d]+\mathbb{Q}(\beta,u)[d\delta]",
                    big_n,
                    || l.is_degree_preserving(),
                ),
                check(
                    "leading part",
                    r"L_{2N}=(\tfrac\beta2+N)(\delta d)^N+(\tfrac\beta2-N)(d\delta)^N+\mathrm{LOT}",
                    big_n,
                    || {
                        l.x_part().degree() == Some(big_n)
                            && l.z_part().degree() == Some(big_n)
                            && l.x_part().leading_coeff() == hb_plus(ni)
                            && l.z_part().leading_coeff() == hb_plus(-ni)
                    },
                ),
                check(
                    "flat specialization",
                    r"L_{2N}\big|_{u=0}=(\tfrac\beta2+N)(\delta d)^N+(\tfrac\beta2-N)(d\delta)^N",
                    big_n,
                    || {
                        let flat = &FormOperator::x().pow(big_n as u32).scale(&hb_plus(ni))
                            + &FormOperator::z().pow(big_n as u32).scale(&hb_plus(-ni));
                        l.substitute(Var::U, &ParamScalar::zero()).ok() == Some(flat)
                    },
                ),
                check(
                    "u-degree and constant term",
                    r"\deg_u L_{2N}\le N,\quad L_{2N}\big|_{\delta d=d\delta=0}=(\tfrac\beta2+N)(\tfrac\beta2-N)_{2N}u^N",
                    big_n,
                    || {
                        let constant = [hb_plus(ni), rising(&hb_plus(-ni), 2 * big_n), ParamScalar::u().pow(big_n as u32)]
                            .into_iter()
                            .product::<ParamScalar>();
                        u_degree(&l) <= big_n as u32 && *l.scalar_part() == constant
                    },
                ),
            ]
        })
        .collect();
    Report {
        suite: "bg-recurrence".into(),
        checks,
    }
}

/// Product of the second-order factors, their commutativity, and the
/// rational-coefficient product form. The mutation swaps the `x` and `z`
/// coefficients of the first factor.
pub fn verify_bg_factorization(n_max: usize, variant: Variant) -> Report {
    let checks = (1..=n_max)
        .into_par_iter()
        .flat_map_iter(|big_n| {
            let mut factors = bg_factors_formal(big_n);
            if variant.is_mutated() {
                let f = &factors[0];
                factors[0] = FormOperator::from_parts(
                    f.scalar_part().clone(),
                    f.z_part().clone(),
                    f.x_part().clone(),
                    f.delta_part().clone(),
                    f.d_part().clone(),
                );
            }
            let product: FormOperator = factors.iter().cloned().product();
            let mut out = vec![
                check(
                    "normalized operator factorizes",
                    r"\bar L_{2N}=\prod_{l=1}^N\big[(\tfrac\beta2+N-l+1)(\tfrac\beta2-N+l)\delta d+(\tfrac\beta2+N-l)(\tfrac\beta2-N+l-1)d\delta+\dots u\big]",
                    big_n,
                    || product == bg_normalized_formal(big_n),
                ),
                check(
                    "rational-coefficient product",
                    r"\tfrac{\beta}{2}\prod_{k=1}^N\big[\tfrac{\beta+2k}{\beta+2k-2}\delta d+\tfrac{\beta-2k}{\beta-2k+2}d\delta+(\tfrac\beta2-k)(\tfrac\beta2+k)u\big]=L_{2N}",
                    big_n,
                    || {
                        let prod: FormOperator = bg_unnormalized_factors(big_n).into_iter().product();
                        prod.scale(&half_beta()) == bg_operator_formal(big_n)
                    },
                ),
            ];
            if big_n <= 4 {
                out.push(check(
                    "factors commute",
                    r"F_lF_k=F_kF_l",
                    big_n,
                    || {
                        factors.iter().enumerate().all(|(i, a)| {
                            factors[i + 1..].iter().all(|b| &(a * b) == &(b * a))
                        })
                    },
                ));
            }
            out
        })
        .collect();
    Report {
        suite: "bg-factorization".into(),
        checks,
    }
}

/// Every exceptional `(l, N)` with `l < N <= n_max`, realized with
/// `n = 2l + 4`, `p = 2`. The mutation flips the sign of the prefactor.
pub fn verify_bg_exceptional(n_max: usize, variant: Variant) -> Report {
    let pairs: Vec<(usize, usize)> = (1..=n_max).flat_map(|n| (0..n).map(move |l| (l, n))).collect();
    let checks = pairs
        .into_par_iter()
        .map(|(l, big_n)| {
            let start = Instant::now();
            let spec = BGSpec::new(big_n, 2 * l as i64 + 4, 2).expect("valid spec");
            let ok = exceptional_with(&spec, variant)
                .map(|f| f.expand() == bg_operator(&spec))
                .unwrap_or(false)
                && matches!(bg_factorization(&spec), Err(Error::ExceptionalParameter(_)));
            let anchor = if l == 0 {
                r"L_{2N}=N[\delta d-d\delta]\prod_{k=2}^N[\delta d+d\delta-k(k-1)u]"
            } else {
                r"L_{2N}=-\tfrac{2l}{2l-1}\tilde P\prod_{k\ne l,l+1}\big[\tfrac{l+k}{l+k-1}\delta d+\tfrac{l-k}{l-k+1}d\delta+(l-k)(l+k)u\big]"
            };
            CheckResult::new("exceptional factorization", anchor, ok)
                .at(big_n as i64)
                .with_detail(format!("l = {l}"))
                .timed(start)
        })
        .collect();
    Report {
        suite: "bg-exceptional".into(),
        checks,
    }
}

/// Critical operator checks at `beta in betas`, realized with `p = 1`.
/// The mutation builds `Q` in `delta d` instead of `d delta`.
pub fn verify_critical(betas: &[i64], variant: Variant) -> Report {
    let checks = betas
        .par_iter()
        .flat_map_iter(|&b| {
            let n = b + 2;
            let mut ops = critical_operators(n, 1).expect("valid critical parameters");
            if variant.is_mutated() {
                ops.q = critical_product(b, &FormOperator::x());
                ops.g = &FormOperator::delta() * &ops.q;
            }
            let idx = b as usize;
            let h = (b / 2 - 1) as u32;
            let d = FormOperator::d();
            vec![
                check(
                    "critical product formula",
                    r"L_{n-2p}=(n-2p)\,\delta d\prod_{l=1}^{\beta/2-1}\big[\delta d+(\tfrac\beta2-l)(\tfrac\beta2+l-1)u\big]",
                    idx,
                    || ops.l_crit == bg_operator(&BGSpec::new((b / 2) as usize, n, 1).expect("valid")),
                ),
                check(
                    "double factorization",
                    r"L_{n-2p}=G\circ d=\delta\circ Q\circ d",
                    idx,
                    || ops.l_crit == &ops.g * &d && ops.l_crit == &(&FormOperator::delta() * &ops.q) * &d,
                ),
                check(
                    "flat Q and G",
                    r"Q\big|_{u=0}=(n-2p)(d\delta)^{\beta/2-1},\ G\big|_{u=0}=(n-2p)\delta(d\delta)^{\beta/2-1}",
                    idx,
                    || {
                        let zero = ParamScalar::zero();
                        let qf = FormOperator::z().pow(h).scale(&p(b));
                        let gf = (&FormOperator::delta() * &FormOperator::z().pow(h)).scale(&p(b));
                        ops.q.substitute(Var::U, &zero).ok() == Some(qf)
                            && ops.g.substitute(Var::U, &zero).ok() == Some(gf)
                    },
                ),
            ]
        })
        .collect();
    Report {
        suite: "critical".into(),
        checks,
    }
}

/// Factorization of `L_{2N}` at a concrete `(n, p)` for every `N <= n_max`:
/// the exceptional form where the normalizer vanishes, the generic product
/// elsewhere. The mutation swaps `x` and `z` in the first generic factor
/// and flips the exceptional prefactor.
pub fn verify_bg_at(n: i64, p_deg: i64, n_max: usize, variant: Variant) -> Result<Report> {
    let specs = (1..=n_max)
        .map(|big_n| BGSpec::new(big_n, n, p_deg))
        .collect::<Result<Vec<_>>>()?;
    let checks = specs
        .into_par_iter()
        .map(|spec| {
            let start = Instant::now();
            let target = bg_normalized(&spec);
            let (identity, ok) = if spec.is_exceptional() {
                let ok = exceptional_with(&spec, variant)
                    .map(|f| f.expand() == bg_operator(&spec))
                    .unwrap_or(false);
                ("exceptional factorization at (n, p)", ok)
            } else {
                let mut factors = bg_factorization(&spec).unwrap_or_default();
                if variant.is_mutated() && !factors.is_empty() {
                    let f = &factors[0];
                    factors[0] = FormOperator::from_parts(
                        f.scalar_part().clone(),
                        f.z_part().clone(),
                        f.x_part().clone(),
                        f.delta_part().clone(),
                        f.d_part().clone(),
                    );
                }
                let product: FormOperator = factors.into_iter().product();
                ("normalized operator factorizes at (n, p)", product == target)
            };
            CheckResult::new(identity, r"ar L_{2N}ig|_{eta=n-2p}", ok)
                .at(spec.big_n as i64)
                .with_detail(format!("n = {n}, p = {p_deg}"))
                .timed(start)
        })
        .collect();
    Ok(Report {
        suite: "bg-factorization".into(),
        checks,
    })
}

/// Residue of the plus solution operator at the resonance against
/// `L_{2N}`, for `N <= n_max`. The mutation takes the residue at
/// `beta/2 - N + 1/2`, where there is no pole.
pub fn verify_residue(n_max: usize, variant: Variant) -> Report {
    let checks = (1..=n_max)
        .into_par_iter()
        .map(|big_n| {
            let start = Instant::now();
            let result = if variant.is_mutated() {
                let at = &(&half_beta() - &p(big_n as i64)) + &ParamScalar::from_ratio(1, 2);
                residue_at(&solution_operator(Sign::Plus, big_n), &at).and_then(|r| {
                    proportionality(&r, &bg_operator_formal(big_n))
                        .ok_or_else(|| Error::UnexpectedPoleStructure("residue is not a nonzero multiple".into()))
                })
            } else {
                residue_link(big_n).map(|r| r.scalar)
            };
            let (ok, detail) = match result {
                Ok(k) => (k == residue_scalar_formula(big_n), format!("scalar = {k}")),
                Err(e) => (false, e.to_string()),
            };
            CheckResult::new(
                "residue is a multiple of L",
                r"\mathrm{Res}_{\lambda=\frac\beta2-N}T^{(+)}_N(\lambda)=c_N\,L_{2N}",
                ok,
            )
            .at(big_n as i64)
            .with_detail(detail)
            .timed(start)
        })
        .collect();
    Report {
        suite: "residue".into(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_expansion() {
        let h = half_beta();
        let want = second_order(hb_plus(1), hb_plus(-1), [hb_plus(1), h.clone(), hb_plus(-1)].into_iter().product());
        assert_eq!(bg_operator_formal(1), want);
        assert_eq!(bg_normalized_formal(1), want.scale(&h));
        assert_eq!(bg_factors_formal(1)[0], bg_normalized_formal(1));
    }

    #[test]
    fn exceptional_normalizer() {
        let spec = BGSpec::new(2, 4, 1).unwrap();
        assert!(spec.is_exceptional());
        assert!(bg_normalized(&spec).is_zero());
        assert!(!BGSpec::new(2, 7, 1).unwrap().is_exceptional());
    }

    #[test]
    fn suites_pass_small() {
        for r in [
            verify_bg_recurrence(3, Variant::Faithful),
            verify_bg_factorization(3, Variant::Faithful),
            verify_bg_exceptional(3, Variant::Faithful),
            verify_critical(&[2, 4, 6], Variant::Faithful),
        ] {
            assert!(r.passed(), "{}", r.to_human());
        }
    }

    #[test]
    fn mutations_fail() {
        assert!(!verify_bg_recurrence(2, Variant::Mutated).passed());
        assert!(!verify_bg_factorization(2, Variant::Mutated).passed());
        assert!(!verify_bg_exceptional(2, Variant::Mutated).passed());
        assert!(!verify_critical(&[4], Variant::Mutated).passed());
        assert!(!verify_residue(1, Variant::Mutated).passed());
    }

    #[test]
    fn exceptional_examples() {
        let spec = BGSpec::new(2, 4, 2).unwrap();
        let x = FormOperator::x();
        let z = FormOperator::z();
        let want = (&(&x - &z) * &(&(&x + &z) - &FormOperator::scalar(&p(2) * &ParamScalar::u()))).scale(&p(2));
        assert_eq!(bg_operator(&spec), want);
        assert_eq!(bg_exceptional(&spec).unwrap().expand(), want);
        assert!(matches!(bg_exceptional(&BGSpec::new(2, 7, 1).unwrap()), Err(Error::NotExceptional(_))));
    }

    #[test]
    fn critical_examples() {
        let c = critical_operators(4, 1).unwrap();
        assert_eq!(c.l_crit, FormOperator::x().scale(&p(2)));
        assert_eq!(c.g, FormOperator::delta().scale(&p(2)));
        let c = critical_operators(6, 1).unwrap();
        let want = (&FormOperator::x() * &(&FormOperator::x() + &FormOperator::scalar(&p(2) * &ParamScalar::u()))).scale(&p(4));
        assert_eq!(c.l_crit, want);
        assert!(critical_operators(4, 2).is_err());
    }

    #[test]
    fn residues() {
        for n in 1..=4 {
            let r = residue_link(n).unwrap();
            eprintln!("N={n}: {}", r.scalar);
        }
        let off = residue_at(&solution_operator(Sign::Plus, 2), &p(5)).unwrap();
        assert!(off.is_zero());
    }
}
