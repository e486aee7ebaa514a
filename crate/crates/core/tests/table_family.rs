use std::path::PathBuf;

use hopfg::hopf_core::table::TableFamily;
use hopfg::hopf_core::{check_axioms_window, HopfGFamily};
use hopfg::integrals::{is_unimodular, GIntegral};
use hopfg::scalar::CycNumber;
use hopfg::suites::{integrals_suite, mtrace_suite};
use hopfg::integrals::Side;
use hopfg::Error;
use serde_json::Value;

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    std::fs::read_to_string(path).unwrap()
}

fn load(name: &str) -> TableFamily {
    TableFamily::from_json_str(&fixture(name)).unwrap()
}

#[test]
fn group_algebra_passes_axioms() {
    let fam = load("z2_group_algebra.json");
    let report = check_axioms_window(&fam, &fam.grades()).unwrap();
    assert!(report.all_passed(), "{:?}", report.failures());
    assert!(is_unimodular(&fam).unwrap());
}

#[test]
fn group_algebra_integral_is_delta_at_unit() {
    let fam = load("z2_group_algebra.json");
    let integral = GIntegral::new(&fam).unwrap();
    let mu = integral.right(&fam.unit_grade()).unwrap();
    assert_eq!(*mu, vec![CycNumber::one(1), CycNumber::zero(1)]);
}

#[test]
fn corrupted_multiplication_is_reported_with_witness() {
    let fam = load("z2_corrupted.json");
    let report = check_axioms_window(&fam, &fam.grades()).unwrap();
    let failures = report.failures();
    assert!(!failures.is_empty());
    assert!(failures.iter().all(|e| e.witness.is_some()));
    assert!(failures.iter().any(|e| e.name == "counit_multiplicative"), "{failures:?}");
}

#[test]
fn missing_antipode_is_a_schema_error() {
    let err = TableFamily::from_json_str(&fixture("z2_missing_antipode.json")).err().unwrap();
    assert!(matches!(err, Error::Schema(ref m) if m.contains("antipode")), "{err}");
}

#[test]
fn non_grouplike_pivot_is_rejected() {
    let mut v: Value = serde_json::from_str(&fixture("z2_group_algebra.json")).unwrap();
    v["pivot"]["1"] = serde_json::json!([1, 1]);
    let fam = TableFamily::from_json(&v);
    let failed = match fam {
        Err(_) => true,
        Ok(fam) => !check_axioms_window(&fam, &fam.grades()).unwrap().all_passed(),
    };
    assert!(failed);
}

#[test]
fn graded_quotient_family() {
    let fam = load("z4_quotient.json");
    let grades = fam.grades();
    assert_eq!(grades.iter().map(ToString::to_string).collect::<Vec<_>>(), ["+", "-"]);
    let report = check_axioms_window(&fam, &grades).unwrap();
    assert!(report.all_passed(), "{:?}", report.failures());

    let integral = GIntegral::new(&fam).unwrap();
    let (report, forms) = integrals_suite(&integral, &grades).unwrap();
    assert!(report.all_passed(), "{:?}", report.failures());
    for f in &forms {
        assert!(!f.form[0].is_zero() && f.form[1].is_zero(), "{} -> {:?}", f.grade, f.form);
    }
    assert!(forms[0].form[0].is_one());

    let minus = fam.grade_by_name("-").unwrap();
    let pairs = [(minus.clone(), minus.clone()), (minus.clone(), fam.unit_grade())];
    let report = mtrace_suite(&integral, &[minus], &pairs, &[1, 2, 3], &[Side::Right, Side::Left]).unwrap();
    assert!(report.all_passed(), "{:?}", report.failures());
}
