//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! and fails when the identities break or the time budget is exceeded.

use std::io::Write;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use bgforms::bg::{
    verify_bg_exceptional, verify_bg_factorization, verify_bg_recurrence, verify_critical, verify_residue,
};
use bgforms::bvp::{verify_einstein_bvp, verify_flat_bvp};
use bgforms::hypergeom::{
    verify_lemma_a1, verify_pochhammer_product, verify_s1_hypergeometric, verify_s_hahn_representation,
};
use bgforms::operator::{
    verify_associativity, verify_grading, verify_homomorphism, verify_operator_algebra, verify_slot_homomorphism,
};
use bgforms::report::{Report, Variant};
use bgforms::special::{verify_poly_recurrences, verify_prop_s1_decomposition};

const F: Variant = Variant::Faithful;
const M: Variant = Variant::Mutated;
const SEED: u64 = 42;

// Bypasses the harness output capture.
fn announce(line: String) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}").and_then(|_| out.flush());
}

// Serializes the timed criteria.
static SERIAL: Mutex<()> = Mutex::new(());

fn criterion(number: u32, name: &str, limit_secs: u64, run: impl FnOnce() -> Vec<Report>) {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let reports = run();
    let elapsed = start.elapsed();
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failures().map(move |c| format!("{}: {} at {:?}", r.suite, c.identity, c.index)))
        .collect();
    let in_time = elapsed <= Duration::from_secs(limit_secs);
    let ok = failed.is_empty() && checks > 0 && in_time;
    announce(format!(
        "criterion {number} [{}] {name}: {checks} checks, {} failed, {:.2} s (limit {limit_secs} s)",
        if ok { "PASS" } else { "FAIL" },
        failed.len(),
        elapsed.as_secs_f64(),
    ));
    assert!(checks > 0, "criterion {number} ran no checks");
    assert!(failed.is_empty(), "criterion {number} failures: {failed:#?}");
    assert!(in_time, "criterion {number} took {elapsed:?}, limit {limit_secs} s");
}

#[test]
fn criterion_1_polynomial_recurrences() {
    criterion(1, "polynomial recurrences, m <= 12", 30, || vec![verify_poly_recurrences(12, F)]);
}

#[test]
fn criterion_2_s1_decomposition() {
    criterion(2, "s1 decomposition, 2 <= m <= 12", 30, || {
        let r = verify_prop_s1_decomposition(12, F);
        assert!(r.checks.iter().filter_map(|c| c.index).any(|i| i == 12));
        vec![r]
    });
}

#[test]
fn criterion_3_hypergeometric_layer() {
    criterion(3, "hypergeometric representations, m <= 10", 60, || {
        vec![
            verify_lemma_a1(10, F),
            verify_pochhammer_product(10, F),
            verify_s_hahn_representation(10, F),
            verify_s1_hypergeometric(10, F),
        ]
    });
}

#[test]
fn criterion_4_operator_algebra() {
    criterion(4, "500 associativity triples, 20 reps of dim 8 at 10 points", 60, || {
        let assoc = verify_associativity(500, 4, SEED, F);
        let hom = verify_homomorphism(20, 10, 8, SEED, F);
        assert_eq!(assoc.checks.len(), 500);
        assert_eq!(hom.checks.len(), 200);
        vec![assoc, hom, verify_slot_homomorphism(30, SEED, F), verify_grading(30, SEED, F)]
    });
}

#[test]
fn criterion_5_flat_bvp() {
    criterion(5, "flat recurrence and flat limit, j <= 8", 30, || vec![verify_flat_bvp(8, F)]);
}

#[test]
fn criterion_6_einstein_bvp() {
    criterion(6, "low order displays and T_m = omega_2m, m <= 6", 120, || vec![verify_einstein_bvp(6, F)]);
}

#[test]
fn criterion_7_branson_gover() {
    criterion(7, "recurrence, factorizations N <= 6, critical beta in 2..8", 120, || {
        vec![
            verify_bg_recurrence(6, F),
            verify_bg_factorization(6, F),
            verify_bg_exceptional(6, F),
            verify_critical(&[2, 4, 6, 8], F),
        ]
    });
}

#[test]
fn criterion_8_residue_link() {
    criterion(8, "simple pole with residue c_N L_2N, N <= 4", 60, || vec![verify_residue(4, F)]);
}

#[test]
fn criterion_9_negative_controls() {
    let _guard = SERIAL.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let mutated: Vec<(&str, Report)> = vec![
        ("poly-recurrences", verify_poly_recurrences(4, M)),
        ("s1-decomposition", verify_prop_s1_decomposition(4, M)),
        ("lemma-a1", verify_lemma_a1(4, M)),
        ("pochhammer", verify_pochhammer_product(4, M)),
        ("hahn", verify_s_hahn_representation(4, M)),
        ("s1-hypergeom", verify_s1_hypergeometric(4, M)),
        ("oracle", verify_operator_algebra(10, 2, 2, 6, SEED, M)),
        ("associativity", verify_associativity(20, 4, SEED, M)),
        ("homomorphism", verify_homomorphism(2, 3, 6, SEED, M)),
        ("slot evaluation", verify_slot_homomorphism(6, SEED, M)),
        ("grading", verify_grading(4, SEED, M)),
        ("flat-bvp", verify_flat_bvp(3, M)),
        ("einstein-bvp", verify_einstein_bvp(3, M)),
        ("bg-recurrence", verify_bg_recurrence(3, M)),
        ("bg-factorization", verify_bg_factorization(3, M)),
        ("bg-exceptional", verify_bg_exceptional(3, M)),
        ("critical", verify_critical(&[2, 4, 6, 8], M)),
        ("residue", verify_residue(3, M)),
    ];
    let undetected: Vec<&str> = mutated
        .iter()
        .filter(|(_, r)| r.checks.is_empty() || r.passed())
        .map(|(name, _)| *name)
        .collect();
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(120);
    announce(format!(
        "criterion 9 [{}] negative controls: {} mutated suites, {} undetected, {:.2} s (limit 120 s)",
        if undetected.is_empty() && in_time { "PASS" } else { "FAIL" },
        mutated.len(),
        undetected.len(),
        elapsed.as_secs_f64(),
    ));
    assert!(undetected.is_empty(), "mutations not detected: {undetected:?}");
    assert!(in_time, "negative controls took {elapsed:?}");
}
