//! Branson-Gover operators as residues of the plus solution operators.

use bgforms::bg::{residue_link, residue_scalar_formula, verify_residue};
use bgforms::report::Variant;

fn main() -> bgforms::Result<()> {
    for n in 1..=4 {
        let link = residue_link(n)?;
        println!(
            "N = {n}: residue = ({}) L_{}, closed form agrees: {}",
            link.scalar,
            2 * n,
            link.scalar == residue_scalar_formula(n)
        );
    }
    println!("N = 0: {:?}", residue_link(0).err());
    let r = verify_residue(4, Variant::Faithful);
    println!("{}", r.to_human().lines().next().unwrap_or_default());
    Ok(())
}
