//! Normal forms in the algebra generated by d and delta with d^2 = delta^2 = 0,
//! slot evaluation and the random matrix oracle.

use bgforms::exact::UniPoly;
use bgforms::operator::{
    eval_at_slot, matrix_oracle_check, push_delta, verify_operator_algebra, FormOperator, OperatorSlot,
};
use bgforms::report::Variant;
use bgforms::special::{build_s, PolyTag};

fn main() -> bgforms::Result<()> {
    let (x, z, delta, d) = (FormOperator::x(), FormOperator::z(), FormOperator::delta(), FormOperator::d());
    println!("x z = {}", &x * &z);
    println!("delta z^2 = {}", &delta * &z.pow(2));
    println!("d delta d = {}", &(&d * &delta) * &d);

    let y = UniPoly::var();
    println!("y at yOne = {}", eval_at_slot(&y, OperatorSlot::YOne));
    println!("s+_2 at yPlus = {}", eval_at_slot(&build_s(PolyTag::SPlus, 2), OperatorSlot::YPlus));

    let w = push_delta(&build_s(PolyTag::SOne, 3))?;
    println!("delta s1_3(yOne) = s1_3(yMinus) delta: {}", w.left == w.right);

    let a = &delta * &z.pow(3);
    let b = &x.pow(3) * &delta;
    println!("matrix oracle on delta z^3 vs x^3 delta: {}", matrix_oracle_check(&a, &b, 5, 8, 42).passed());

    let json = serde_json::to_string(&(&a + &FormOperator::identity())).expect("serializes");
    println!("JSON: {json}");
    let back: FormOperator = serde_json::from_str(&json).expect("parses");
    println!("round trip: {}", back == &a + &FormOperator::identity());

    let r = verify_operator_algebra(50, 4, 3, 8, 42, Variant::Faithful);
    println!("{}", r.to_human().lines().next().unwrap_or_default());
    Ok(())
}
