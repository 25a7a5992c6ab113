//! The critical operator with its Q-curvature and gauge companion, and the
//! double factorization L = G d = delta Q d.

use bgforms::bg::{critical_operators, verify_critical};
use bgforms::operator::FormOperator;
use bgforms::report::Variant;

fn main() -> bgforms::Result<()> {
    let ops = critical_operators(8, 1)?;
    println!("L = {}", ops.l_crit);
    println!("Q = {}", ops.q);
    println!("G = {}", ops.g);
    let d = FormOperator::d();
    println!("L = G d: {}", ops.l_crit == &ops.g * &d);
    println!("L = delta Q d: {}", ops.l_crit == &(&FormOperator::delta() * &ops.q) * &d);
    println!("odd n: {:?}", critical_operators(7, 1).err());

    let r = verify_critical(&[2, 4, 6, 8], Variant::Faithful);
    println!("{}", r.to_human().lines().next().unwrap_or_default());
    Ok(())
}
