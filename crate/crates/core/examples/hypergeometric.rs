//! Terminating hypergeometric series, dual Hahn polynomials and the
//! hypergeometric representations of the s polynomials.

use bgforms::exact::{p, ParamScalar};
use bgforms::hypergeom::{
    chu_vandermonde_holds, dual_hahn, pfq_terminating, s1_via_four_f_three, three_f_two_y, verify_lemma_a1,
    verify_s1_hypergeometric, verify_s_hahn_representation, y_times_y_plus_one, DualHahnRange, HypergeomSpec,
};
use bgforms::report::Variant;
use bgforms::special::{build_s, PolyTag};

fn main() -> bgforms::Result<()> {
    // 2F1(-3, lambda; beta; 1)
    let spec = HypergeomSpec::new(vec![p(-3), ParamScalar::lambda()], vec![ParamScalar::beta()], ParamScalar::one());
    println!("2F1(-3, lambda; beta; 1) = {}", pfq_terminating(&spec)?);
    println!(
        "Chu-Vandermonde at m = 3: {}",
        chu_vandermonde_holds(3, &ParamScalar::lambda(), &ParamScalar::beta(), Variant::Faithful)?
    );

    println!("3F2(-2, -y, 1+y; beta, lambda; 1) = {}", three_f_two_y(2, ParamScalar::beta(), ParamScalar::lambda()).to_text_in("y"));

    let hahn = dual_hahn(2, &p(1), &p(2), &p(5), DualHahnRange::Classical)?;
    println!("dual Hahn R_2(w; 1, 2, 5) = {}", hahn.to_text_in("w"));
    println!("degree 6 with N = 5: {:?}", dual_hahn(6, &p(1), &p(2), &p(5), DualHahnRange::Classical).err());

    let via_4f3 = s1_via_four_f_three(3, 0);
    let direct = build_s(PolyTag::SOne, 3).compose(&y_times_y_plus_one());
    println!("s1_3(y(y+1)) from its 4F3 form matches the defining sum: {}", via_4f3 == direct);

    for r in [
        verify_s_hahn_representation(6, Variant::Faithful),
        verify_s1_hypergeometric(6, Variant::Faithful),
        verify_lemma_a1(6, Variant::Faithful),
    ] {
        println!("{}", r.to_human().lines().next().unwrap_or_default());
    }
    Ok(())
}
