//! Plain-text rendering of command reports.

use std::fmt::Write;

use crate::analyze::{AnalysisReport, CertificateKind};
use crate::constants::ConstantsReport;
use crate::oracle_check::OracleCheckReport;

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn render_analysis(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "knot: {} ({} vertices, length {:.6})", r.knot.source, r.knot.n, r.knot.length);
    let t = &r.thickness;
    let dcsd = t.dcsd.map_or("none".to_string(), |d| format!("{d:.6}"));
    let _ = writeln!(w, "min_rad:    {:.6} (vertex {})", t.min_rad, t.min_rad_vertex);
    let _ = writeln!(w, "dcsd:       {dcsd}");
    let _ = writeln!(w, "thickness:  {:.6} (limited by {})", t.thickness, t.limited_by);
    let _ = writeln!(w, "ropelength: {:.6}", t.ropelength);

    let _ = writeln!(w, "\nquadrisecants (unit-thickness copy): {}", r.quadrisecants.len());
    for (i, q) in r.quadrisecants.iter().enumerate() {
        let _ = writeln!(
            w,
            "  #{i:<3} {:<11} r={:.6} s={:.6} t={:.6}  at s = {:.6}, {:.6}, {:.6}, {:.6}",
            q.order_type.to_string(),
            q.r,
            q.s,
            q.t,
            q.positions[0].s,
            q.positions[1].s,
            q.positions[2].s,
            q.positions[3].s
        );
    }

    if !r.certificates.is_empty() {
        let _ = writeln!(w, "\ncertificates:");
        for c in &r.certificates {
            let kind = match c.kind {
                CertificateKind::Unconditional => "unconditional",
                CertificateKind::Essential => "essential",
            };
            let form = c.closed_form.as_deref().unwrap_or("-");
            let status = if c.valid {
                String::new()
            } else {
                format!("  [not a valid certificate: {}]", c.violations.join("; "))
            };
            let _ = writeln!(w, "  #{:<3} {kind:<13} {form} = {:.6}{status}", c.quadrisecant, c.bound);
            if c.kind == CertificateKind::Essential {
                let terms: Vec<String> = c.terms.iter().map(|(n, v)| format!("{n} = {v:.6}")).collect();
                let _ = writeln!(w, "        {}", terms.join(", "));
            }
        }
    }

    if !r.arc_checks.is_empty() {
        let _ = writeln!(w, "\narc inequalities:");
        for a in &r.arc_checks {
            let _ = writeln!(
                w,
                "  #{:<3} tier 1 {}  tier 2 {}",
                a.quadrisecant,
                verdict(a.tier1_passed),
                verdict(a.tier2_passed)
            );
            for c in a.report.checks.iter().filter(|c| !c.passed) {
                let _ = writeln!(w, "        failed: {} (margin {:.6})", c.name, c.margin);
            }
        }
    }

    let d = &r.diagnostics;
    let _ = writeln!(
        w,
        "\ndiagnostics: {} quadruples examined, {} degenerate, {} merged duplicates, {} vertex collisions",
        d.quadruples_examined, d.degenerate_quadruples, d.dedup_merges, d.vertex_collisions
    );
    for warning in &d.warnings {
        let _ = writeln!(w, "warning: {warning}");
    }
    for note in &d.notes {
        let _ = writeln!(w, "note: {note}");
    }

    let s = &r.summary;
    let _ = writeln!(w, "\nsummary:");
    let _ = writeln!(w, "  ropelength {:.6}", s.ropelength);
    match &s.best_unconditional {
        Some(b) => {
            let _ = writeln!(w, "  best unconditional bound {:.6} ({} quadrisecant #{})", b.bound, b.order_type, b.quadrisecant);
        }
        None => {
            let _ = writeln!(w, "  best unconditional bound: none");
        }
    }
    if r.options.assume_essential {
        match &s.best_conditional {
            Some(b) => {
                let _ = writeln!(
                    w,
                    "  best bound assuming essential {:.6} ({} quadrisecant #{})",
                    b.bound, b.order_type, b.quadrisecant
                );
            }
            None => {
                let _ = writeln!(w, "  best bound assuming essential: none");
            }
        }
    }
    if let Some(e) = &s.expectation {
        let _ = writeln!(
            w,
            "  nontrivial knot expected: ropelength {:.6} {} {}  {}",
            e.ropelength,
            if e.met { ">=" } else { "<" },
            e.threshold,
            verdict(e.met)
        );
    }
    if let Some(vertices) = &r.normalization.vertices {
        let _ = writeln!(w, "\n# unit-thickness vertices (scale factor {:.6})", r.normalization.scale_factor);
        for v in vertices {
            let _ = writeln!(w, "{:?} {:?} {:?}", v[0], v[1], v[2]);
        }
    }
    out
}

pub fn render_constants(r: &ConstantsReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "{:<34} {:<24} {:>12} {:>12} {:>10}  result", "constant", "closed form", "exact", "recomputed", "quoted");
    for row in &r.rows {
        let exact = row.exact.map_or("-".to_string(), |v| format!("{v:.6}"));
        let quoted = row.quoted.map_or("-".to_string(), |v| format!("{v}"));
        let argmin = row.argmin.map_or(String::new(), |a| format!("  argmin {a:.6}"));
        let _ = writeln!(
            w,
            "{:<34} {:<24} {:>12} {:>12.6} {:>10}  {}{argmin}",
            row.name,
            row.closed_form,
            exact,
            row.recomputed,
            quoted,
            verdict(row.passed)
        );
    }
    let _ = writeln!(w, "overall: {}", verdict(r.passed));
    out
}

pub fn render_oracle_check(r: &OracleCheckReport) -> String {
    let mut out = String::new();
    let w = &mut out;
    let g = &r.m_grid;
    let _ = writeln!(
        w,
        "seed {}; circle nodes {}; sampler resolution {}",
        r.seed, r.config.circle_discretization, r.config.sampler_resolution
    );
    let _ = writeln!(
        w,
        "m vs oracle: {} points, max |error| {:.3e} at (r, s, theta) = ({:.4}, {:.4}, {:.4})  {}",
        g.points,
        g.max_abs_error,
        g.worst.0,
        g.worst.1,
        g.worst.2,
        verdict(g.passed)
    );
    let _ = writeln!(w, "branch continuity: max gap {:.3e}  {}", r.branch_continuity, verdict(r.branch_continuity <= 1e-10));
    for s in &r.two_ball {
        let _ = writeln!(
            w,
            "long arc (r, s, t) = ({}, {}, {}): bound {:.6}, oracle {:.6}, error {:.3e}  {}",
            s.r,
            s.s,
            s.t,
            s.analytic,
            s.oracle,
            s.error,
            verdict(s.passed)
        );
    }
    let c = &r.cross_validation;
    let _ = writeln!(
        w,
        "transversals: {} quadruples, solver {} lines, sampler {}, matched {}, missed {}, spurious {}, endpoint-ambiguous {}, degenerate {}, max residual {:.3e}  {}",
        c.quadruples,
        c.solver_lines,
        c.oracle_lines,
        c.matched,
        c.missed,
        c.spurious,
        c.endpoint_ambiguous,
        c.degenerate,
        c.max_solver_residual,
        verdict(c.passed)
    );
    let _ = writeln!(w, "overall: {}", verdict(r.passed));
    out
}
