//! Branson-Gover operators: expansion, recurrence, factorization and the
//! exceptional factorizations.

use bgforms::bg::{
    bg_exceptional, bg_factorization, bg_normalized, bg_operator, bg_operator_formal, verify_bg_exceptional,
    verify_bg_factorization, verify_bg_recurrence, BGSpec,
};
use bgforms::operator::FormOperator;
use bgforms::report::Variant;

fn main() -> bgforms::Result<()> {
    println!("L_2 = {}", bg_operator_formal(1));
    println!("L_4 = {}", bg_operator_formal(2));

    let spec = BGSpec::new(3, 9, 2)?;
    let factors = bg_factorization(&spec)?;
    let product: FormOperator = factors.iter().cloned().product();
    println!("n = 9, p = 2, N = 3: {} factors, product matches: {}", factors.len(), product == bg_normalized(&spec));

    let exc = BGSpec::new(3, 6, 2)?;
    println!("n = 6, p = 2, N = 3 generic path: {:?}", bg_factorization(&exc).err());
    let f = bg_exceptional(&exc)?;
    println!("exceptional l = {}, prefactor = {}", f.l, f.prefactor);
    println!("expansion matches L_6: {}", f.expand() == bg_operator(&exc));

    println!("bad spec: {:?}", BGSpec::new(2, 7, 12).err());

    for r in [
        verify_bg_recurrence(6, Variant::Faithful),
        verify_bg_factorization(6, Variant::Faithful),
        verify_bg_exceptional(6, Variant::Faithful),
    ] {
        println!("{}", r.to_human().lines().next().unwrap_or_default());
    }
    Ok(())
}
