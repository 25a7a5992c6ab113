//! The polynomial families s-, s+, s1, R and R1 and their recurrences.

use bgforms::report::Variant;
use bgforms::special::{build_r1, build_s, pochhammer, verify_poly_recurrences, PolyTag};
use bgforms::exact::{p, ParamScalar};

fn main() -> bgforms::Result<()> {
    for tag in [PolyTag::SMinus, PolyTag::SPlus, PolyTag::SOne] {
        for m in 0..=2 {
            println!("{}_{m}(y) = {}", tag.name(), build_s(tag, m).to_text_in("y"));
        }
    }
    println!("R1_2(y) = {}", build_r1(2).to_text_in("y"));

    // Pochhammer symbols accept negative indices.
    let a = ParamScalar::lambda();
    println!("(lambda)_3 = {}", pochhammer(&a, 3)?);
    println!("(lambda)_-2 = {}", pochhammer(&a, -2)?);
    println!("(-2)_3 = {}", pochhammer(&p(-2), 3)?);

    let report = verify_poly_recurrences(10, Variant::Faithful);
    println!("{}", report.to_human().lines().next().unwrap_or_default());
    let mutated = verify_poly_recurrences(4, Variant::Mutated);
    println!("with mutations: passed = {}", mutated.passed());
    Ok(())
}
