//! Algebraic laws on randomly generated inputs.

use bgforms::bg::{bg_operator, BGSpec};
use bgforms::exact::{frac, p, ParamScalar, UniPoly, Var};
use bgforms::operator::{eval_at_slot, random_operator, FormOperator, OperatorSlot};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scalar() -> impl Strategy<Value = ParamScalar> {
    (prop::array::uniform4(-4i64..=4), prop::option::of((1i64..=5, 0usize..3))).prop_map(|(c, den)| {
        let basis = [ParamScalar::one(), ParamScalar::beta(), ParamScalar::lambda(), ParamScalar::u()];
        let num: ParamScalar = basis.iter().zip(c).map(|(b, k)| b * &p(k)).sum();
        match den {
            Some((k, v)) => {
                let den = &ParamScalar::var([Var::Beta, Var::Lambda, Var::U][v]) + &p(k);
                num.try_div(&den).unwrap()
            }
            None => num,
        }
    })
}

fn poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(scalar(), 0..4).prop_map(UniPoly::from_coeffs)
}

fn operator() -> impl Strategy<Value = FormOperator> {
    (any::<u64>(), 0usize..3).prop_map(|(seed, deg)| random_operator(&mut ChaCha8Rng::seed_from_u64(seed), deg))
}

fn point() -> impl Strategy<Value = [BigRational; 3]> {
    prop::array::uniform3((-40i64..40, 1i64..7)).prop_map(|a| a.map(|(n, d)| frac(n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn evaluation_is_a_ring_map(a in scalar(), b in scalar(), pt in point()) {
        if let (Ok(x), Ok(y)) = (a.eval(&pt), b.eval(&pt)) {
            prop_assert_eq!((&a * &b).eval(&pt).unwrap(), &x * &y);
            prop_assert_eq!((&a + &b).eval(&pt).unwrap(), &x + &y);
        }
    }

    #[test]
    fn text_round_trip(a in scalar()) {
        prop_assert_eq!(ParamScalar::parse(&a.to_text()).unwrap(), a);
    }

    #[test]
    fn json_round_trip(op in operator()) {
        let text = serde_json::to_string(&op).unwrap();
        let back: FormOperator = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, op);
    }

    #[test]
    fn operator_ring_laws(a in operator(), b in operator(), c in operator()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &FormOperator::identity(), a.clone());
        prop_assert_eq!(&FormOperator::identity() * &a, a);
    }

    #[test]
    fn d_and_delta_square_to_zero(a in operator()) {
        let (d, delta) = (FormOperator::d(), FormOperator::delta());
        prop_assert!((&(&d * &a) * &d).x_part().is_zero());
        prop_assert!((&(&delta * &a) * &delta).z_part().is_zero());
        prop_assert!((&(&d * &d) * &a).is_zero());
        prop_assert!((&a * &(&delta * &delta)).is_zero());
    }

    #[test]
    fn slot_evaluation_is_a_ring_map(f in poly(), g in poly(), which in 0usize..3) {
        let slot = [OperatorSlot::YMinus, OperatorSlot::YPlus, OperatorSlot::YOne][which];
        prop_assert_eq!(eval_at_slot(&(&f * &g), slot), &eval_at_slot(&f, slot) * &eval_at_slot(&g, slot));
        prop_assert_eq!(eval_at_slot(&(&f + &g), slot), &eval_at_slot(&f, slot) + &eval_at_slot(&g, slot));
    }

    #[test]
    fn bg_operator_preserves_degree(big_n in 1usize..5, n in 3i64..12, p_frac in 0.0f64..1.0) {
        let p_deg = (p_frac * n as f64).floor() as i64;
        let op = bg_operator(&BGSpec::new(big_n, n, p_deg).unwrap());
        prop_assert!(op.is_degree_preserving());
        prop_assert!(op.delta_part().is_zero() && op.d_part().is_zero());
    }
}
