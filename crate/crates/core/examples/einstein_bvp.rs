//! Solving the Einstein recurrence and comparing with the closed-form
//! solution operators.

use bgforms::bvp::{
    lambda_pole_locus, low_order_display, solution_operator, solve_einstein_recurrence, solve_einstein_recurrence_at,
    verify_einstein_bvp, Sign,
};
use bgforms::exact::{half_beta, p, ParamScalar};
use bgforms::report::Variant;

fn main() -> bgforms::Result<()> {
    let table = solve_einstein_recurrence(3);
    for e in &table.entries {
        println!("omega+_{} = {}", e.index, e.omega_plus);
        println!("omega-_{} = {}", e.index, e.omega_minus);
    }
    println!("order 4 matches the explicit display: {}", low_order_display(4, Sign::Plus).as_ref() == Some(&table.get(4).unwrap().omega_plus));
    println!("T+_2 equals omega+_4: {}", solution_operator(Sign::Plus, 2) == table.get(4).unwrap().omega_plus);

    let (poles, simple) = lambda_pole_locus(&solution_operator(Sign::Plus, 3), 6);
    let poles: Vec<String> = poles.iter().map(|q| q.to_text()).collect();
    println!("poles of T+_3 in lambda: {poles:?} (all simple: {simple})");

    let resonant = &half_beta() - &p(2);
    println!("lambda = beta/2 - 2: {:?}", solve_einstein_recurrence_at(3, &resonant).err());
    let t = solve_einstein_recurrence_at(2, &ParamScalar::from_ratio(1, 3))?;
    println!("at lambda = 1/3: omega-_2 = {}", t.get(2).unwrap().omega_minus);

    let r = verify_einstein_bvp(4, Variant::Faithful);
    println!("{}", r.to_human().lines().next().unwrap_or_default());
    Ok(())
}
