//! Running suites programmatically, with and without their designated
//! mutations, and emitting JSON reports.

use bgforms::bg::verify_bg_recurrence;
use bgforms::report::{ReportSet, Variant};
use bgforms::special::verify_poly_recurrences;

fn main() {
    let set = ReportSet {
        reports: vec![verify_poly_recurrences(6, Variant::Faithful), verify_bg_recurrence(4, Variant::Faithful)],
    };
    for r in &set.reports {
        println!("{}", r.to_human().lines().next().unwrap_or_default());
    }
    println!("all passed: {}", set.passed());

    let mutated = verify_bg_recurrence(4, Variant::Mutated);
    println!("mutated suite passed: {} (first failure at index {:?})", mutated.passed(), mutated.first_failure_index());

    let json = set.to_json();
    println!("JSON report: {} bytes, starts with {:?}", json.len(), &json[..json.len().min(40)]);
}
