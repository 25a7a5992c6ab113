//! Flat-space solution operators and their agreement with the Einstein
//! operators at u = 0.

use bgforms::bvp::{einstein_flat_limit, flat_pole_locus, flat_solution_operator, verify_flat_bvp, Sign};
use bgforms::report::Variant;

fn main() -> bgforms::Result<()> {
    for j in 1..=3 {
        println!("flat T+_{j} (n = 6, p = 1) = {}", flat_solution_operator(Sign::Plus, j, 6, 1));
        println!("flat T-_{j} (n = 6, p = 1) = {}", flat_solution_operator(Sign::Minus, j, 6, 1));
    }
    let limit = einstein_flat_limit(Sign::Plus, 2, None)?;
    println!("Einstein T+_2 at u = 0: {limit}");

    let (poles, simple) = flat_pole_locus(Sign::Plus, 3);
    let poles: Vec<String> = poles.iter().map(|q| q.to_text()).collect();
    println!("flat T+_3 poles: {poles:?} (simple: {simple})");

    let r = verify_flat_bvp(6, Variant::Faithful);
    println!("{}", r.to_human().lines().next().unwrap_or_default());
    Ok(())
}
