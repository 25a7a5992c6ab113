//! Standalone LaTeX output for operators and scalars.

use bgforms::bg::bg_operator_formal;
use bgforms::bvp::{solution_operator, Sign};
use bgforms::latex::{operator_display, standalone_document};

fn main() {
    let mut body = operator_display("L_{4}", &bg_operator_formal(2));
    body.push_str(&operator_display("T^{(-)}_{2}", &solution_operator(Sign::Minus, 2)));
    print!("{}", standalone_document("Operators", &body));
}
