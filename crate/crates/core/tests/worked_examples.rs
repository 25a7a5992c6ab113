//! Small worked values, checked through the public API.

use bgforms::bg::{
    bg_exceptional, bg_factorization, bg_normalized, bg_normalized_alternative, bg_operator, bg_operator_formal,
    critical_operators, residue_at, residue_link, residue_scalar_formula, BGSpec,
};
use bgforms::bvp::{
    einstein_coefficients, flat_solution_operator, solution_operator, solve_einstein_recurrence, Sign,
};
use bgforms::exact::{frac, half_beta, p, ParamScalar, UniPoly, Var};
use bgforms::hypergeom::{dual_hahn, pfq_terminating, two_f_one, three_f_two_y, DualHahnRange, HypergeomSpec};
use bgforms::operator::{eval_at_slot, matrix_oracle_check, push_d_delta, push_delta, FormOperator, OperatorSlot};
use bgforms::special::{build_r, build_r1, build_s, pochhammer, PolyTag};
use bgforms::Error;

fn s(text: &str) -> ParamScalar {
    ParamScalar::parse(text).unwrap()
}

fn y() -> UniPoly {
    UniPoly::var()
}

fn c(v: ParamScalar) -> UniPoly {
    UniPoly::constant(v)
}

#[test]
fn rationals_normalize() {
    assert_eq!(frac(2, 4), frac(1, 2));
    assert_eq!(frac(3, -6), frac(-1, 2));
    assert_eq!(frac(0, 7).to_string(), "0");
}

#[test]
fn parameter_field_cancels() {
    assert_eq!(s("(beta^2-lambda^2)/(beta-lambda)"), s("beta+lambda"));
    assert!(s("(beta-lambda)/(beta-lambda)").is_one());
    assert_eq!(s("u/(2*u)"), ParamScalar::from_ratio(1, 2));
    assert!(matches!(ParamScalar::one().try_div(&ParamScalar::zero()), Err(Error::DivisionByZero)));
}

#[test]
fn pochhammer_values() {
    let a = s("beta/2+3");
    assert!(pochhammer(&a, 0).unwrap().is_one());
    assert_eq!(pochhammer(&p(3), 2).unwrap(), p(12));
    assert_eq!(pochhammer(&a, -1).unwrap(), s("1/(beta/2+2)"));
    assert!(pochhammer(&p(1), -1).is_err());
}

#[test]
fn r_polynomials() {
    assert_eq!(build_r(0, &ParamScalar::beta()), UniPoly::one());
    assert_eq!(build_r(1, &ParamScalar::zero()), y());
    let yc = &half_beta() * &(&half_beta() + &p(1));
    for m in 1..=5 {
        let expected = pochhammer(&(&half_beta() - &p(m as i64 - 1)), 2 * m as i64).unwrap();
        assert_eq!(build_r(m, &ParamScalar::zero()).eval(&yc), expected, "m = {m}");
        assert!(build_r1(m).eval(&yc).is_zero(), "m = {m}");
    }
    assert!(build_r1(0).is_zero());
    assert_eq!(build_r1(1), &y() - &c(yc));
}

#[test]
fn r_relation_at_three() {
    let lhs = build_r(3, &ParamScalar::zero());
    let rhs = &build_r1(3) + &c(pochhammer(&(&half_beta() - &p(2)), 6).unwrap());
    assert_eq!(lhs, rhs);
}

#[test]
fn s_polynomials_low_order() {
    assert_eq!(build_s(PolyTag::SMinus, 0), UniPoly::one());
    assert!(build_s(PolyTag::SOne, 0).is_zero());
    let expected = &y() + &c(&s("beta/2-lambda-1") * &s("-beta/2"));
    assert_eq!(build_s(PolyTag::SPlus, 1), expected);
    let expected = &y() + &c(s("2*(lambda+1)+(beta/2)*(lambda-beta/2-1)"));
    assert_eq!(build_s(PolyTag::SMinus, 1), expected);
}

#[test]
fn hypergeometric_values() {
    let x = s("lambda");
    let spec = HypergeomSpec::new(vec![p(0), x.clone(), s("u")], vec![s("beta"), s("beta+1")], ParamScalar::one());
    assert!(pfq_terminating(&spec).unwrap().is_one());

    let (alpha, gamma) = (s("lambda+1/3"), s("beta+2"));
    for m in 0..=5 {
        let expected = &pochhammer(&(&gamma - &alpha), m).unwrap() / &pochhammer(&gamma, m).unwrap();
        assert_eq!(two_f_one(m, &alpha, &gamma).unwrap(), expected);
    }

    let (b1, b2) = (s("beta/2+2"), s("lambda-beta/2+1"));
    let yy = &y() * &(&y() + &UniPoly::one());
    // Single nonzero term: (-1)(-y)(1+y) / (b1 b2) = +y(y+1) / (b1 b2).
    let expected = &UniPoly::one() + &yy.scale(&(&b1 * &b2).recip().unwrap());
    assert_eq!(three_f_two_y(1, b1, b2), expected);

    let lower_pole = HypergeomSpec::new(vec![p(-3), s("lambda")], vec![p(-1)], ParamScalar::one());
    assert!(matches!(pfq_terminating(&lower_pole), Err(Error::HypergeometricPole { .. })));
}

#[test]
fn dual_hahn_low_degree() {
    let (a, b, n) = (s("beta"), s("lambda"), p(7));
    assert_eq!(dual_hahn(0, &a, &b, &n, DualHahnRange::Classical).unwrap(), UniPoly::one());
    let expected = &UniPoly::one() - &y().scale(&(&(&a + &p(1)) * &(&n - &p(1))).recip().unwrap());
    assert_eq!(dual_hahn(1, &a, &b, &n, DualHahnRange::Classical).unwrap(), expected);
    assert!(dual_hahn(7, &a, &b, &n, DualHahnRange::Classical).is_err());
    assert!(matches!(
        dual_hahn(7, &a, &b, &n, DualHahnRange::Formal),
        Err(Error::HypergeometricPole { .. })
    ));
    assert!(dual_hahn(7, &a, &b, &s("u+3"), DualHahnRange::Formal).is_ok());
}

#[test]
fn normal_form_products() {
    let (x, z, delta, d) = (FormOperator::x(), FormOperator::z(), FormOperator::delta(), FormOperator::d());
    assert!((&x * &z).is_zero());
    assert!((&delta + &(-&delta)).is_zero());
    assert_eq!(&delta * &z.pow(2), &x.pow(2) * &delta);
    assert_eq!(&d * &delta, z);
    assert_eq!(&delta * &d, x);
    let sum = &x + &z;
    assert_eq!(sum.x_part(), &y());
    assert_eq!(sum.z_part(), &y());

    for k in 0..=4 {
        let lhs = &z * &eval_at_slot(&build_s(PolyTag::SPlus, k), OperatorSlot::YPlus);
        let scalar = &pochhammer(&s("lambda"), k as i64).unwrap() * &pochhammer(&half_beta(), k as i64).unwrap();
        assert_eq!(lhs, z.scale(&scalar), "k = {k}");
    }
}

#[test]
fn slot_evaluation() {
    for slot in [OperatorSlot::YMinus, OperatorSlot::YPlus, OperatorSlot::YOne] {
        assert_eq!(eval_at_slot(&UniPoly::one(), slot), FormOperator::identity());
    }
    let expected = &FormOperator::z().scale(&s("1/u")) + &FormOperator::scalar(s("(beta/2)*(beta/2+1)"));
    assert_eq!(eval_at_slot(&y(), OperatorSlot::YOne), expected);
    for m in 1..=5 {
        let op = eval_at_slot(&build_s(PolyTag::SOne, m), OperatorSlot::YOne);
        assert!(op.scalar_part().is_zero() && op.x_part().is_zero(), "m = {m}");
    }
}

#[test]
fn push_through_delta() {
    let w = push_delta(&y()).unwrap();
    let c0 = FormOperator::scalar(s("(beta/2)*(beta/2+1)"));
    let y_one = &FormOperator::z().scale(&s("1/u")) + &c0;
    let y_minus = &FormOperator::x().scale(&s("1/u")) + &c0;
    assert_eq!(w.left, &FormOperator::delta() * &y_one);
    assert_eq!(w.right, &y_minus * &FormOperator::delta());
    assert!(push_delta(&build_s(PolyTag::SOne, 3)).is_ok());
    assert!(push_d_delta(&build_s(PolyTag::SMinus, 5)).is_ok());
}

#[test]
fn matrix_oracle_examples() {
    let (x, z, delta) = (FormOperator::x(), FormOperator::z(), FormOperator::delta());
    let zero = &x * &z;
    assert!(matrix_oracle_check(&zero, &(&z * &x), 4, 6, 1).passed());
    assert!(matrix_oracle_check(&(&delta * &z.pow(3)), &(&x.pow(3) * &delta), 4, 6, 2).passed());
    assert!(matrix_oracle_check(&x, &z, 4, 6, 3).passed());
}

#[test]
fn recurrence_coefficients() {
    assert_eq!(einstein_coefficients(2).a, s("-2*(beta-2*lambda-2)"));
    assert_eq!(einstein_coefficients(4).c, s("-2*lambda*beta"));
    assert_eq!(einstein_coefficients(2).big_a, s("-2*(beta-lambda)"));
}

#[test]
fn einstein_expansion_low_order() {
    let table = solve_einstein_recurrence(3);
    let second = table.get(2).unwrap();
    let t1 = FormOperator::delta().scale(&s("1/(lambda-beta)"));
    assert_eq!(second.omega_minus, t1);
    assert_eq!(solution_operator(Sign::Minus, 1), t1);
    assert_eq!(second.omega_plus, solution_operator(Sign::Plus, 1));
    for m in 1..=3 {
        let entry = table.get(2 * m).unwrap();
        assert!(entry.omega_minus.is_pure_delta(), "m = {m}");
    }
}

#[test]
fn flat_minus_first_order() {
    let op = flat_solution_operator(Sign::Minus, 1, 7, 2);
    assert_eq!(op, FormOperator::delta().scale(&s("1/(lambda-3)")));
}

#[test]
fn bg_first_order() {
    let expected = &(&FormOperator::x().scale(&s("beta/2+1")) + &FormOperator::z().scale(&s("beta/2-1")))
        + &FormOperator::scalar(s("u*(beta/2+1)*(beta/2)*(beta/2-1)"));
    assert_eq!(bg_operator_formal(1), expected);
    for big_n in 1..=4u32 {
        let flat = bg_operator_formal(big_n as usize).substitute(Var::U, &ParamScalar::zero()).unwrap();
        let n = p(big_n as i64);
        let expected = &FormOperator::x().pow(big_n).scale(&(&half_beta() + &n))
            + &FormOperator::z().pow(big_n).scale(&(&half_beta() - &n));
        assert_eq!(flat, expected, "N = {big_n}");
        let op = bg_operator_formal(big_n as usize);
        assert!(op.is_degree_preserving());
    }
}

#[test]
fn bg_normalization() {
    let spec = BGSpec::new(1, 7, 2).unwrap();
    assert_eq!(bg_normalized(&spec), bg_operator(&spec).scale(&p(3).scale(&frac(1, 2))));
    for big_n in 1..=4 {
        let formal = bg_operator_formal(big_n).scale(&bgforms::bg::bg_normalizer(big_n));
        assert_eq!(bg_normalized_alternative(big_n), formal, "N = {big_n}");
    }
    assert!(BGSpec::new(2, 4, 1).unwrap().is_exceptional());
    assert!(!BGSpec::new(2, 9, 1).unwrap().is_exceptional());
}

#[test]
fn bg_generic_factorization() {
    let spec = BGSpec::new(3, 11, 2).unwrap();
    let factors = bg_factorization(&spec).unwrap();
    assert_eq!(factors.len(), 3);
    let product = factors.iter().fold(FormOperator::identity(), |acc, f| &acc * f);
    assert_eq!(product, bg_normalized(&spec));
    let four = bg_factorization(&BGSpec::new(4, 13, 2).unwrap()).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(&four[i] * &four[j], &four[j] * &four[i]);
        }
    }
    let one = bg_factorization(&BGSpec::new(1, 9, 2).unwrap()).unwrap();
    assert_eq!(one, vec![bg_normalized(&BGSpec::new(1, 9, 2).unwrap())]);
}

#[test]
fn bg_exceptional_cases() {
    let b0 = BGSpec::new(2, 4, 2).unwrap();
    let expected = (&(&FormOperator::x() - &FormOperator::z())
        * &(&(&FormOperator::x() + &FormOperator::z()) - &FormOperator::scalar(s("2*u"))))
        .scale(&p(2));
    assert_eq!(bg_operator(&b0), expected);
    assert_eq!(bg_exceptional(&b0).unwrap().expand(), expected);
    for (big_n, n) in [(2, 4), (3, 4), (3, 6)] {
        let spec = BGSpec::new(big_n, n, 1).unwrap();
        assert_eq!(bg_exceptional(&spec).unwrap().expand(), bg_operator(&spec), "N = {big_n}, n = {n}");
    }
}

#[test]
fn critical_examples() {
    let two = critical_operators(4, 1).unwrap();
    assert_eq!(two.l_crit, FormOperator::x().scale(&p(2)));
    assert_eq!(two.g, FormOperator::delta().scale(&p(2)));
    assert_eq!(two.l_crit, &two.g * &FormOperator::d());
    let four = critical_operators(6, 1).unwrap();
    let expected = (&FormOperator::x() * &(&FormOperator::x() + &FormOperator::scalar(s("2*u")))).scale(&p(4));
    assert_eq!(four.l_crit, expected);
    assert_eq!(four.l_crit, &(&FormOperator::delta() * &four.q) * &FormOperator::d());
    assert!(critical_operators(5, 1).is_err());
}

#[test]
fn residues() {
    let expected = [s("1/(2*(beta+2))"), s("-1/(16*(beta+4))"), s("1/(384*(beta+6))")];
    for (i, k) in expected.iter().enumerate() {
        let link = residue_link(i + 1).unwrap();
        assert_eq!(&link.scalar, k);
        assert_eq!(residue_scalar_formula(i + 1), *k);
        assert_eq!(link.residue, bg_operator_formal(i + 1).scale(k));
    }
    let regular = residue_at(&solution_operator(Sign::Plus, 2), &s("beta/2-7/2")).unwrap();
    assert!(regular.is_zero());
    assert!(matches!(residue_link(0), Err(Error::InvalidSpec(_))));
}
