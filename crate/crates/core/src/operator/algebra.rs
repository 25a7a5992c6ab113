//! Soundness checks of normal-form arithmetic: associativity on random
//! triples, the matrix homomorphism, grading and slot evaluation.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::form::{eval_at_slot, FormOperator, OperatorSlot};
use super::matrix::{random_point, trial_rep, MatrixRep};
use crate::error::Error;
use crate::exact::{p, ParamScalar, UniPoly};
use crate::report::{CheckResult, Report, Variant};

fn random_scalar(rng: &mut ChaCha8Rng) -> ParamScalar {
    let terms = [
        ParamScalar::one(),
        ParamScalar::beta(),
        ParamScalar::lambda(),
        ParamScalar::u(),
    ];
    let num: ParamScalar = terms
        .iter()
        .map(|t| t * &p(rng.gen_range(-3..=3)))
        .sum();
    if rng.gen_ratio(1, 5) {
        let den = &ParamScalar::beta() + &p(rng.gen_range(1..=5));
        num.try_div(&den).expect("nonzero denominator")
    } else {
        num
    }
}

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> UniPoly {
    if rng.gen_ratio(1, 4) {
        return UniPoly::zero();
    }
    let deg = rng.gen_range(0..=max_degree);
    UniPoly::from_coeffs((0..=deg).map(|_| random_scalar(rng)).collect())
}

/// Random normal form whose component polynomials have degree at most
/// `max_degree`.
pub fn random_operator(rng: &mut ChaCha8Rng, max_degree: usize) -> FormOperator {
    FormOperator::from_parts(
        random_scalar(rng),
        random_poly(rng, max_degree),
        random_poly(rng, max_degree),
        random_poly(rng, max_degree),
        random_poly(rng, max_degree),
    )
}

fn trial_rng(seed: u64, salt: u64, t: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.rotate_left(32) ^ t.wrapping_mul(0x2545_F491_4F6C_DD1D))
}

/// `(a b) c = a (b c)` on random triples. The mutation computes the left
/// side as `(b a) c`.
pub fn verify_associativity(triples: usize, max_degree: usize, seed: u64, variant: Variant) -> Report {
    let checks = (0..triples as u64)
        .into_par_iter()
        .map(|t| {
            let start = Instant::now();
            let mut rng = trial_rng(seed, 1, t);
            let a = random_operator(&mut rng, max_degree);
            let b = random_operator(&mut rng, max_degree);
            let c = random_operator(&mut rng, max_degree);
            let ab = if variant.is_mutated() { &b * &a } else { &a * &b };
            let passed = &ab * &c == &a * &(&b * &c);
            CheckResult::new("associativity", r"(AB)C=A(BC)", passed)
                .at(t as i64)
                .timed(start)
        })
        .collect();
    Report {
        suite: "oracle".into(),
        checks,
    }
}

/// `rep(a b) = rep(a) rep(b)` for random pairs, over `reps` random
/// square-zero representations each taken at `points` parameter points.
/// The mutation maps `b a` instead of `a b`.
pub fn verify_homomorphism(
    reps: usize,
    points: usize,
    dimension: usize,
    seed: u64,
    variant: Variant,
) -> Report {
    let bases: Vec<_> = (0..reps as u64)
        .map(|r| trial_rep(dimension, seed, r, &[]).map(|(rep, _)| rep))
        .collect();
    let cases: Vec<(u64, u64)> = (0..reps as u64)
        .flat_map(|r| (0..points as u64).map(move |q| (r, q)))
        .collect();
    let checks = cases
        .into_par_iter()
        .map(|(r, q)| {
            let start = Instant::now();
            let mut rng = trial_rng(seed, 2, r * 1000 + q);
            let a = random_operator(&mut rng, 4);
            let b = random_operator(&mut rng, 4);
            let prod = if variant.is_mutated() { &b * &a } else { &a * &b };
            let passed = bases[r as usize]
                .clone()
                .and_then(|rep| at_regular_point(&rep, &mut rng, &a, &b, &prod));
            let (passed, detail) = match passed {
                Ok(ok) => (ok, None),
                Err(e) => (false, Some(e.to_string())),
            };
            let c = CheckResult::new("representation is multiplicative", r"\rho(AB)=\rho(A)\rho(B)", passed)
                .at((r * points as u64 + q) as i64);
            match detail {
                Some(d) => c.with_detail(d),
                None => c,
            }
            .timed(start)
        })
        .collect();
    Report {
        suite: "oracle".into(),
        checks,
    }
}

fn at_regular_point(
    rep: &MatrixRep,
    rng: &mut ChaCha8Rng,
    a: &FormOperator,
    b: &FormOperator,
    prod: &FormOperator,
) -> crate::Result<bool> {
    for _ in 0..64 {
        let r = rep.with_point(random_point(rng));
        match (r.map(a), r.map(b), r.map(prod)) {
            (Ok(ma), Ok(mb), Ok(mp)) => return Ok(ma.mul(&mb) == mp),
            (Err(Error::DivisionByZero), _, _)
            | (_, Err(Error::DivisionByZero), _)
            | (_, _, Err(Error::DivisionByZero)) => continue,
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return Err(e),
        }
    }
    Err(Error::DegenerateSampling)
}

/// `eval(p q) = eval(p) eval(q)` at every slot. The mutation evaluates `q`
/// at the next slot.
pub fn verify_slot_homomorphism(trials: usize, seed: u64, variant: Variant) -> Report {
    let slots = [OperatorSlot::YMinus, OperatorSlot::YPlus, OperatorSlot::YOne];
    let checks = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let start = Instant::now();
            let mut rng = trial_rng(seed, 3, t);
            let (pp, qq) = (random_poly(&mut rng, 4), random_poly(&mut rng, 4));
            let pp = &pp + &UniPoly::var();
            let qq = &qq + &UniPoly::var();
            let i = (t % 3) as usize;
            let q_slot = if variant.is_mutated() { slots[(i + 1) % 3] } else { slots[i] };
            let lhs = eval_at_slot(&(&pp * &qq), slots[i]);
            let rhs = &eval_at_slot(&pp, slots[i]) * &eval_at_slot(&qq, q_slot);
            CheckResult::new("slot evaluation is multiplicative", r"p(y)q(y)\mapsto p(Y)q(Y)", lhs == rhs)
                .at(t as i64)
                .timed(start)
        })
        .collect();
    Report {
        suite: "oracle".into(),
        checks,
    }
}

/// Products of two lowering (or two raising) parts vanish, and degree
/// preserving parts multiply to degree preserving parts.
pub fn verify_grading(trials: usize, seed: u64, variant: Variant) -> Report {
    let checks = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let start = Instant::now();
            let mut rng = trial_rng(seed, 4, t);
            let c1 = &random_poly(&mut rng, 4) + &UniPoly::one();
            let c2 = &random_poly(&mut rng, 4) + &UniPoly::one();
            let lower = |c: &UniPoly| FormOperator::delta_with(c.clone());
            let raise = |c: &UniPoly| FormOperator::d_with(c.clone());
            let second = if variant.is_mutated() { raise(&c2) } else { lower(&c2) };
            let lowering_twice = (&lower(&c1) * &second).is_zero();
            let raising_twice = (&raise(&c1) * &raise(&c2)).is_zero();
            let pres = |c: &UniPoly| {
                &FormOperator::poly_x(c.clone()) + &FormOperator::poly_z(c.clone())
            };
            let preserving = (&pres(&c1) * &pres(&c2)).is_degree_preserving();
            CheckResult::new(
                "grading",
                r"\delta c\,\delta c'=0,\ d e\,d e'=0",
                lowering_twice && raising_twice && preserving,
            )
            .at(t as i64)
            .timed(start)
        })
        .collect();
    Report {
        suite: "oracle".into(),
        checks,
    }
}

/// Associativity on `triples` random triples of degree at most 4, the
/// homomorphism over `reps` representations at `points` parameter points
/// each, slot evaluation and grading.
pub fn verify_operator_algebra(
    triples: usize,
    reps: usize,
    points: usize,
    dimension: usize,
    seed: u64,
    variant: Variant,
) -> Report {
    let mut report = verify_associativity(triples, 4, seed, variant);
    report.extend(verify_homomorphism(reps, points, dimension, seed, variant));
    report.extend(verify_slot_homomorphism(30, seed, variant));
    report.extend(verify_grading(30, seed, variant));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        assert!(verify_operator_algebra(20, 2, 2, 6, 5, Variant::Faithful).passed());
    }

    #[test]
    fn every_part_detects_its_mutation() {
        assert!(!verify_associativity(20, 4, 5, Variant::Mutated).passed());
        assert!(!verify_homomorphism(2, 3, 6, 5, Variant::Mutated).passed());
        assert!(!verify_slot_homomorphism(6, 5, Variant::Mutated).passed());
        assert!(!verify_grading(4, 5, Variant::Mutated).passed());
    }
}
