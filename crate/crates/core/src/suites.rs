//! Named groups of checks and the versioned JSON report they produce.

use serde::Serialize;

use crate::error::Result;
use crate::hopf_core::{check_axioms_window, CheckEntry, CheckReport, Elem, HopfGFamily, NamedValue};
use crate::integrals::{
    check_comodulus, check_left_integral, check_left_via_comodulus, check_right_integral, check_symmetrised_relations,
    check_unibalanced, integral_space_dimension, symmetric_nondegenerate_report, GIntegral, Side,
};
use crate::modcat::{check_decomposition, check_duality, regular_module};
use crate::mtrace::{
    check_cyclicity, check_decomposition_integral, check_nondegenerate, check_reduction_lemma,
    check_right_left_traces_agree, check_roundtrip, check_trivial_factor, FormFamily,
};
use crate::scalar::CycNumber;

pub const REPORT_VERSION: u32 = 1;

/// A linear form on one grade piece, as exposed in reports.
#[derive(Debug, Clone, Serialize)]
pub struct FormRecord {
    pub grade: String,
    pub form: Vec<CycNumber>,
    pub normalization: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

/// The JSON document written by the command-line tool.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub report_version: u32,
    pub instance: serde_json::Value,
    pub suite: String,
    pub seeds: Vec<u64>,
    pub summary: Summary,
    pub checks: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub integrals: Vec<FormRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<NamedValue>,
}

impl Report {
    pub fn new(instance: serde_json::Value, suite: &str, seeds: &[u64], checks: CheckReport) -> Self {
        let failed = checks.entries.iter().filter(|e| !e.passed).count();
        Report {
            report_version: REPORT_VERSION,
            instance,
            suite: suite.to_string(),
            seeds: seeds.to_vec(),
            summary: Summary {
                passed: checks.entries.len() - failed,
                failed,
            },
            checks: checks.entries,
            integrals: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.checks {
            match (&e.passed, &e.witness) {
                (true, _) => out.push_str(&format!("PASS {}\n", e.name)),
                (false, Some(w)) => out.push_str(&format!("FAIL {}: {w}\n", e.name)),
                (false, None) => out.push_str(&format!("FAIL {}\n", e.name)),
            }
        }
        for v in &self.values {
            out.push_str(&format!("{} = {}\n", v.name, v.decimal));
        }
        out.push_str(&format!(
            "{} passed, {} failed\n",
            self.summary.passed, self.summary.failed
        ));
        out
    }
}

pub fn axioms_suite<F: HopfGFamily + ?Sized>(fam: &F, window: &[F::Grade]) -> Result<CheckReport> {
    check_axioms_window(fam, window)
}

/// Integral relations on every window pair, plus the per-grade structure
/// (solution-space dimension, comodulus, unibalancedness, symmetry and non-degeneracy).
pub fn integrals_suite<F: HopfGFamily + ?Sized>(
    integral: &GIntegral<'_, F>,
    window: &[F::Grade],
) -> Result<(CheckReport, Vec<FormRecord>)> {
    let fam = integral.family();
    let inside = |g: &F::Grade| window.contains(g);
    let mut report = CheckReport::new();
    let mut forms = Vec::new();
    for a in window {
        let dim = integral_space_dimension(fam, a)?;
        report.push(
            format!("integral_space_dimension[{a}]"),
            dim == 1,
            (dim != 1).then(|| format!("dimension {dim}")),
        );
        forms.push(FormRecord {
            grade: a.to_string(),
            form: integral.right(a)?.to_vec(),
            normalization: integral.normalization_label().to_string(),
        });
        report.extend(check_left_via_comodulus(integral, a)?);
        report.extend(check_unibalanced(integral, a)?);
        let (sym, det) = symmetric_nondegenerate_report(fam, &integral.symmetrised_right(a)?, a)?;
        report.extend(sym);
        if let Some(e) = report.entries.last_mut() {
            e.values.push(NamedValue::new("det", &det));
        }
        for b in window {
            if !inside(&fam.compose(a, b)) {
                continue;
            }
            report.extend(check_right_integral(integral, a, b)?);
            report.extend(check_left_integral(integral, a, b)?);
            report.extend(check_symmetrised_relations(integral, a, b)?);
            report.extend(check_comodulus(integral, a, b)?);
        }
    }
    Ok((report, forms))
}

/// Decomposition maps, reduction identities on seeded endomorphisms (both sides),
/// the trace/integral roundtrip, cyclicity, non-degeneracy and duality.
pub fn mtrace_suite<F: HopfGFamily + ?Sized>(
    integral: &GIntegral<'_, F>,
    grades: &[F::Grade],
    pairs: &[(F::Grade, F::Grade)],
    seeds: &[u64],
    sides: &[Side],
) -> Result<CheckReport> {
    let fam = integral.family();
    let right = |g: &F::Grade| integral.symmetrised_right(g);
    let left = |g: &F::Grade| integral.symmetrised_left(g);
    let mut report = CheckReport::new();
    for a in grades {
        let mu = integral.symmetrised_right(a)?;
        report.extend(check_duality(fam, &regular_module(fam, a)?)?);
        for side in sides {
            report.extend(check_roundtrip(integral, a, *side)?);
        }
        report.extend(check_nondegenerate(fam, &mu, a)?);
        for &s in seeds.iter().take(3) {
            report.extend(check_cyclicity(fam, &mu, a, s)?);
        }
        report.extend(check_right_left_traces_agree(integral, a, &seeds[..seeds.len().min(3)])?);
    }
    for (a, b) in pairs {
        report.extend(check_decomposition(fam, a, b)?);
        report.extend(check_decomposition_integral(integral, a, b)?);
        for side in sides {
            let forms: &FormFamily<'_, F::Grade> = match side {
                Side::Right => &right,
                Side::Left => &left,
            };
            report.extend(check_reduction_lemma(fam, forms, a, b, seeds, *side)?);
        }
    }
    if let Some(a) = grades.first() {
        let one = fam.unit_grade();
        let mu = integral.symmetrised_right(a)?;
        if let Some(&s) = seeds.first() {
            report.extend(check_trivial_factor(fam, &mu, a, &one, s)?);
        }
    }
    Ok(report)
}

/// Runs the reduction identity with a form family that is not an integral and
/// records whether some seed exposes the failure, as it must.
pub fn negative_control<F: HopfGFamily + ?Sized>(
    fam: &F,
    name: &str,
    forms: &FormFamily<'_, F::Grade>,
    a: &F::Grade,
    b: &F::Grade,
    seeds: &[u64],
    side: Side,
) -> Result<CheckReport> {
    let inner = check_reduction_lemma(fam, forms, a, b, seeds, side)?;
    let caught = inner.entries.iter().find(|e| !e.passed);
    let mut report = CheckReport::new();
    report.push(
        format!("negative_control_{name}[{a},{b}]"),
        caught.is_some(),
        match caught {
            Some(_) => None,
            None => Some("identity held on every seed".to_string()),
        },
    );
    if let (Some(entry), Some(c)) = (report.entries.last_mut(), caught) {
        entry.witness = Some(format!("detected at {}", c.name));
        entry.values.extend(c.values.iter().cloned());
    }
    Ok(report)
}

/// Helper for callers holding a plain element as a form.
pub fn form_record(grade: impl ToString, form: Elem, normalization: &str) -> FormRecord {
    FormRecord {
        grade: grade.to_string(),
        form,
        normalization: normalization.to_string(),
    }
}
