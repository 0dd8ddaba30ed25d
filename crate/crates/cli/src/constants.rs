//! The `constants` command: every bound constant next to its recomputation.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use ropelength::bounds::{
    constants, essential_bound, link_component_bound, minimize_bound_terms, nonsplit_link_bound, quadbd_bound,
    LinkPattern,
};
use ropelength::OrderType;

use crate::SCHEMA_VERSION;

/// Agreement required between a closed form and an independent recomputation.
pub const CLOSED_FORM_TOL: f64 = 1e-9;
/// Agreement required between a minimizer output and its closed form.
pub const MINIMIZER_TOL: f64 = 1e-6;
/// Agreement required with a published decimal.
pub const QUOTED_TOL: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantRow {
    pub name: String,
    pub closed_form: String,
    /// Closed form evaluated in double precision, when one exists.
    pub exact: Option<f64>,
    /// Value obtained by an independent route (minimizer or bound evaluation).
    pub recomputed: f64,
    pub tolerance: f64,
    pub quoted: Option<f64>,
    pub argmin: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub schema_version: u32,
    pub rows: Vec<ConstantRow>,
    pub passed: bool,
}

fn row(name: &str, closed_form: &str, exact: Option<f64>, recomputed: f64, tolerance: f64, quoted: Option<f64>) -> ConstantRow {
    let reference = exact.unwrap_or(recomputed);
    let matches = exact.is_none_or(|e| (e - recomputed).abs() <= tolerance);
    let quoted_ok = quoted.is_none_or(|q| (reference - q).abs() <= QUOTED_TOL);
    ConstantRow {
        name: name.to_string(),
        closed_form: closed_form.to_string(),
        exact,
        recomputed,
        tolerance,
        quoted,
        argmin: None,
        passed: matches && quoted_ok,
    }
}

pub fn cmd_constants() -> ConstantsReport {
    let recs = minimize_bound_terms();
    let by = |label: &str| recs.iter().find(|r| r.label == label).expect("known label");
    let sqrt3 = 3f64.sqrt();
    let mut rows = Vec::new();

    let mut min_f = row("min f", "pi/2", Some(PI / 2.0), by("f").min_value, MINIMIZER_TOL, None);
    min_f.argmin = Some(by("f").argmin);
    rows.push(min_f);
    let mut min_fg = row("min f+g", "7pi/6 + sqrt(3)", Some(constants::min_f_plus_g()), by("f+g").min_value, MINIMIZER_TOL, None);
    min_fg.argmin = Some(by("f+g").argmin);
    rows.push(min_fg);
    let mut min_gr = row("min g+r", "pi + 2", Some(constants::min_g_plus_r()), by("g+r").min_value, MINIMIZER_TOL, None);
    min_gr.argmin = Some(by("g+r").argmin);
    rows.push(min_gr);

    let middle = by("2f+g+r");
    let mut min_middle = row(
        "min 2f+g+r",
        "numerical",
        None,
        middle.min_value,
        MINIMIZER_TOL,
        Some(constants::MIDDLE_TERM_QUOTED),
    );
    min_middle.argmin = Some(middle.argmin);
    min_middle.passed &= middle.min_value > constants::MIDDLE_TERM_QUOTED
        && (middle.argmin - constants::MIDDLE_ARGMIN_QUOTED).abs() <= QUOTED_TOL;
    rows.push(min_middle);

    let simple = essential_bound(OrderType::Simple, 2.0, 2.0, 2.0).expect("valid").lower_bound;
    let mut simple_row = row(
        "simple theorem",
        "10pi/3 + 2sqrt(3) + 2",
        Some(constants::simple()),
        simple,
        CLOSED_FORM_TOL,
        Some(constants::SIMPLE_QUOTED),
    );
    simple_row.passed &= constants::simple() > constants::SIMPLE_QUOTED;
    rows.push(simple_row);

    let flipped = essential_bound(OrderType::Flipped, 2.0, 1.0, 2.0).expect("valid").lower_bound;
    rows.push(row(
        "flipped theorem",
        "10pi/3 + 2sqrt(3)",
        Some(constants::flipped()),
        flipped,
        CLOSED_FORM_TOL,
        Some(13.936),
    ));

    let alternating = essential_bound(OrderType::Alternating, 1.0, middle.argmin, 1.0).expect("valid").lower_bound;
    let mut alt_row = row(
        "alternating theorem",
        "2pi + min(2f+g+r)",
        Some(2.0 * PI + middle.min_value),
        alternating,
        CLOSED_FORM_TOL,
        Some(constants::ALTERNATING_QUOTED),
    );
    alt_row.passed &= alternating > constants::ALTERNATING_QUOTED
        && constants::flipped() < alternating
        && alternating < constants::simple();
    rows.push(alt_row);

    for (ty, form, exact) in [
        (OrderType::Simple, "pi", PI),
        (OrderType::Flipped, "2pi", 2.0 * PI),
        (OrderType::Alternating, "3pi", 3.0 * PI),
    ] {
        rows.push(row(&format!("reversed trisecants, {ty}"), form, Some(exact), quadbd_bound(ty), CLOSED_FORM_TOL, None));
    }

    for (pattern, form, exact) in [
        ("AAAB", "7pi/3 + 2sqrt(3)", 7.0 * PI / 3.0 + 2.0 * sqrt3),
        ("AABA", "8pi/3 + 1 + sqrt(3)", 8.0 * PI / 3.0 + 1.0 + sqrt3),
        ("ABBA", "2pi + 2", 2.0 * PI + 2.0),
        ("ABCA", "2pi + 2", 2.0 * PI + 2.0),
    ] {
        let p: LinkPattern = pattern.parse().expect("valid pattern");
        let value = link_component_bound(&p).unwrap_or(f64::NAN);
        rows.push(row(&format!("link {pattern}"), form, Some(exact), value, CLOSED_FORM_TOL, None));
    }
    rows.push(row(
        "nonsplit link, 2 components",
        "4pi",
        Some(4.0 * PI),
        nonsplit_link_bound(2).expect("k >= 1"),
        CLOSED_FORM_TOL,
        None,
    ));

    let passed = rows.iter().all(|r| r.passed);
    ConstantsReport {
        schema_version: SCHEMA_VERSION,
        rows,
        passed,
    }
}
