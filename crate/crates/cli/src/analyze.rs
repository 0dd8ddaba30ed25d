//! The `analyze` command.

use serde::{Deserialize, Serialize};

use ropelength::bounds::{
    alternating_constant, constants, essential_bound, quadbd_bound, verify_arc_inequalities, ArcInequalityReport,
    Tier, MARGIN_SLACK, UNIT_THICKNESS_TOL,
};
use ropelength::quadrisecant::{
    find_quadrisecants, ScanDiagnostics, DEDUP_ANGLE, DEDUP_DISTANCE, DEFAULT_TOL, HIT_TOL,
};
use ropelength::thickness::{normalize_to_unit_thickness, thickness_and_ropelength};
use ropelength::{ArcPosition, OrderType, PolyKnot};

use crate::error::{CliError, Result};
use crate::SCHEMA_VERSION;

/// Ropelength below which a knot cannot be nontrivial.
pub const NONTRIVIAL_THRESHOLD: f64 = 15.66;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeOptions {
    pub tol: f64,
    pub assume_essential: bool,
    pub expect_nontrivial: bool,
    pub normalize: bool,
    pub seed: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            assume_essential: false,
            expect_nontrivial: false,
            normalize: false,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl ToolInfo {
    pub fn current() -> Self {
        Self {
            name: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub quadrisecant_tol: f64,
    pub hit_tol: f64,
    pub dedup_angle: f64,
    pub dedup_distance: f64,
    pub unit_thickness_tol: f64,
    pub margin_slack: f64,
    pub nontrivial_threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnotSummary {
    pub source: String,
    pub n: usize,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThicknessSection {
    pub min_rad: f64,
    /// Absent when the curve has no doubly-critical pair.
    pub dcsd: Option<f64>,
    pub thickness: f64,
    pub ropelength: f64,
    pub limited_by: String,
    pub min_rad_vertex: usize,
    pub dcsd_witness: Option<(ArcPosition, ArcPosition)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationSection {
    /// Factor applied to the input to reach unit thickness.
    pub scale_factor: f64,
    pub unit_thickness_length: f64,
    pub vertices: Option<Vec<[f64; 3]>>,
}

/// A quadrisecant of the unit-thickness copy of the knot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadrisecantEntry {
    pub points: [[f64; 3]; 4],
    pub positions: [ArcPosition; 4],
    pub order_type: OrderType,
    pub r: f64,
    pub s: f64,
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Unconditional,
    Essential,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub quadrisecant: usize,
    #[serde(rename = "type")]
    pub kind: CertificateKind,
    pub order_type: OrderType,
    pub assumptions: Vec<String>,
    pub bound: f64,
    pub closed_form: Option<String>,
    pub terms: Vec<(String, f64)>,
    pub valid: bool,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcCheckEntry {
    pub quadrisecant: usize,
    pub tier1_passed: bool,
    pub tier2_passed: bool,
    pub report: ArcInequalityReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub quadruples_examined: u64,
    pub degenerate_quadruples: u64,
    pub dedup_merges: u64,
    pub vertex_collisions: u64,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

impl Diagnostics {
    fn from_scan(d: &ScanDiagnostics, warnings: Vec<String>) -> Self {
        Self {
            quadruples_examined: d.quadruples_examined,
            degenerate_quadruples: d.degenerate_quadruples,
            dedup_merges: d.dedup_merges,
            vertex_collisions: d.vertex_collisions,
            warnings,
            notes: vec![
                "thickness is the polygonal surrogate min(2 min_rad, dcsd); unit-thickness checks inherit its approximation"
                    .to_string(),
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestBound {
    pub bound: f64,
    pub quadrisecant: usize,
    pub order_type: OrderType,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    pub threshold: f64,
    pub ropelength: f64,
    pub met: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub ropelength: f64,
    pub quadrisecant_counts: Vec<(OrderType, usize)>,
    pub best_unconditional: Option<BestBound>,
    pub best_conditional: Option<BestBound>,
    pub expectation: Option<Expectation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub seed: u64,
    pub options: AnalyzeOptions,
    pub tolerances: Tolerances,
    pub knot: KnotSummary,
    pub thickness: ThicknessSection,
    pub normalization: NormalizationSection,
    pub quadrisecants: Vec<QuadrisecantEntry>,
    pub certificates: Vec<Certificate>,
    pub arc_checks: Vec<ArcCheckEntry>,
    pub diagnostics: Diagnostics,
    pub summary: Summary,
}

impl AnalysisReport {
    /// Error to raise after printing, when an expectation flag failed.
    pub fn expectation_error(&self) -> Option<CliError> {
        let e = self.summary.expectation.as_ref()?;
        (!e.met).then(|| {
            CliError::Expectation(format!(
                "ropelength {:.6} is below {} although the knot was declared nontrivial",
                e.ropelength, e.threshold
            ))
        })
    }
}

fn essential_closed_form(ty: OrderType) -> &'static str {
    match ty {
        OrderType::Simple => "(g(r)+f(r)) + (g(s)+s) + (g(t)+f(t))",
        OrderType::Flipped => "(g(r)+f(r)) + 2f(s) + (g(t)+f(t))",
        OrderType::Alternating => "2f(r) + (2f(s)+g(s)+s) + 2f(t)",
    }
}

fn quadbd_closed_form(ty: OrderType) -> &'static str {
    match ty {
        OrderType::Simple => "pi",
        OrderType::Flipped => "2pi",
        OrderType::Alternating => "3pi",
    }
}

fn best(certs: &[Certificate], kind: CertificateKind) -> Option<BestBound> {
    certs
        .iter()
        .filter(|c| c.kind == kind && c.valid)
        .max_by(|a, b| a.bound.total_cmp(&b.bound).then(b.quadrisecant.cmp(&a.quadrisecant)))
        .map(|c| BestBound {
            bound: c.bound,
            quadrisecant: c.quadrisecant,
            order_type: c.order_type,
        })
}

/// Runs the full analysis on a knot.
pub fn cmd_analyze(knot: &PolyKnot, source: &str, warnings: Vec<String>, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let report = thickness_and_ropelength(knot)?;
    let unit = normalize_to_unit_thickness(knot)?;
    let scan = find_quadrisecants(&unit, opts.tol);

    let quadrisecants: Vec<QuadrisecantEntry> = scan
        .quadrisecants
        .iter()
        .map(|q| QuadrisecantEntry {
            points: q.points.map(|p| [p.x, p.y, p.z]),
            positions: q.positions,
            order_type: q.order_type,
            r: q.r,
            s: q.s,
            t: q.t,
        })
        .collect();

    let mut certificates = Vec::new();
    let mut arc_checks = Vec::new();
    for (idx, q) in scan.quadrisecants.iter().enumerate() {
        let ty = q.order_type;
        certificates.push(Certificate {
            quadrisecant: idx,
            kind: CertificateKind::Unconditional,
            order_type: ty,
            assumptions: vec![format!("{ty} quadrisecant")],
            bound: quadbd_bound(ty),
            closed_form: Some(quadbd_closed_form(ty).to_string()),
            terms: vec![("reversed trisecants".to_string(), quadbd_bound(ty))],
            valid: true,
            violations: Vec::new(),
        });
        if opts.assume_essential {
            let cert = essential_bound(ty, q.r, q.s, q.t)?;
            certificates.push(Certificate {
                quadrisecant: idx,
                kind: CertificateKind::Essential,
                order_type: ty,
                assumptions: vec![format!("{ty} quadrisecant"), "quadrisecant is essential".to_string()],
                bound: cert.lower_bound,
                closed_form: Some(essential_closed_form(ty).to_string()),
                terms: cert.term_breakdown.clone(),
                valid: cert.is_valid(),
                violations: cert.violations.clone(),
            });
        }
        let arc = verify_arc_inequalities(&unit, q)?;
        arc_checks.push(ArcCheckEntry {
            quadrisecant: idx,
            tier1_passed: arc.tier_passed(Tier::Unconditional),
            tier2_passed: arc.tier_passed(Tier::Conditional),
            report: arc,
        });
    }

    let expectation = opts.expect_nontrivial.then(|| Expectation {
        threshold: NONTRIVIAL_THRESHOLD,
        ropelength: report.ropelength,
        met: report.ropelength >= NONTRIVIAL_THRESHOLD,
    });
    let summary = Summary {
        ropelength: report.ropelength,
        quadrisecant_counts: OrderType::ALL.iter().map(|&ty| (ty, scan.count(ty))).collect(),
        best_unconditional: best(&certificates, CertificateKind::Unconditional),
        best_conditional: best(&certificates, CertificateKind::Essential),
        expectation,
    };

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        tool: ToolInfo::current(),
        seed: opts.seed,
        options: opts.clone(),
        tolerances: Tolerances {
            quadrisecant_tol: opts.tol,
            hit_tol: HIT_TOL,
            dedup_angle: DEDUP_ANGLE,
            dedup_distance: DEDUP_DISTANCE,
            unit_thickness_tol: UNIT_THICKNESS_TOL,
            margin_slack: MARGIN_SLACK,
            nontrivial_threshold: NONTRIVIAL_THRESHOLD,
        },
        knot: KnotSummary {
            source: source.to_string(),
            n: knot.len(),
            length: report.length,
        },
        thickness: ThicknessSection {
            min_rad: report.min_rad,
            dcsd: report.dcsd.is_finite().then_some(report.dcsd),
            thickness: report.thickness,
            ropelength: report.ropelength,
            limited_by: if report.limited_by_curvature() { "curvature" } else { "self-distance" }.to_string(),
            min_rad_vertex: report.witness_vertex,
            dcsd_witness: report.witness_pair,
        },
        normalization: NormalizationSection {
            scale_factor: 1.0 / report.thickness,
            unit_thickness_length: unit.total_length(),
            vertices: opts.normalize.then(|| unit.vertices().iter().map(|p| [p.x, p.y, p.z]).collect()),
        },
        quadrisecants,
        certificates,
        arc_checks,
        diagnostics: Diagnostics::from_scan(&scan.diagnostics, warnings),
        summary,
    })
}

/// Closed form of the bound every essential quadrisecant of the given type certifies.
pub fn type_constant(ty: OrderType) -> f64 {
    match ty {
        OrderType::Simple => constants::simple(),
        OrderType::Flipped => constants::flipped(),
        OrderType::Alternating => alternating_constant(),
    }
}
