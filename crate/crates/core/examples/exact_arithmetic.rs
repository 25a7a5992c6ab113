//! Rational functions in beta, lambda and u: canonical forms, parsing,
//! substitution and identity checking.

use bgforms::exact::{
    frac, identity_check, p, scalar_identity_check, DegreeBounds, IdentityMode, ParamScalar, UniPoly, Var,
};

fn main() -> bgforms::Result<()> {
    let b = ParamScalar::beta();
    let l = ParamScalar::lambda();

    // (beta^2 - 4) / (2 beta + 4) reduces to (beta - 2) / 2
    let q = (&(&b.pow(2) - &p(4))).try_div(&(&(&b * &p(2)) + &p(4)))?;
    println!("(beta^2-4)/(2beta+4) = {q}");

    let parsed = ParamScalar::parse("(beta^2-4)/(2*lambda)")?;
    println!("parsed: {parsed}");
    println!("at lambda = 1/2: {}", parsed.substitute_value(Var::Lambda, &frac(1, 2))?);

    // Division by zero is an error, not a panic.
    println!("1/0 -> {:?}", ParamScalar::one().try_div(&ParamScalar::zero()));

    // Polynomials in y over the parameter field.
    let y = UniPoly::var();
    let lhs = &(&y + &UniPoly::constant(l.clone())) * &(&y - &UniPoly::constant(l.clone()));
    let rhs = &(&y * &y) - &UniPoly::constant(l.pow(2));
    let bounds = DegreeBounds::uniform(4);
    println!("(y+l)(y-l) = y^2-l^2 canonically: {}", identity_check(&lhs, &rhs, bounds, IdentityMode::Canonical)?);
    println!("... and by sampling: {}", identity_check(&lhs, &rhs, bounds, IdentityMode::Sampling)?);
    println!(
        "beta/2 + beta/2 = beta: {}",
        scalar_identity_check(&(&b.scale(&frac(1, 2)) + &b.scale(&frac(1, 2))), &b, bounds, IdentityMode::Canonical)?
    );
    Ok(())
}
