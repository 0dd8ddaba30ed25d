//! Quadrisecant search over edge quadruples and order-type classification.

mod order;
mod transversal;

pub use order::{classify_order, classify_trisecant, OrderType, TrisecantClass};
pub use transversal::{transversals_of_four_segments, TransversalLine, Transversals, DEGENERACY_TOL, HIT_TOL};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{ArcPosition, Point3, PolyKnot, Segment};
use transversal::{Frame, LocalHit, PreparedSegment};

/// Default merge tolerance for intersections near a shared vertex.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Two lines are the same if their angle is below this (radians)...
pub const DEDUP_ANGLE: f64 = 1e-6;
/// ...and their mutual distance is below this times the bounding-box diagonal.
pub const DEDUP_DISTANCE: f64 = 1e-6;

/// Four points of the knot in order along a common line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quadrisecant {
    pub line: TransversalLine,
    pub points: [Point3; 4],
    pub positions: [ArcPosition; 4],
    pub line_params: [f64; 4],
    pub order_type: OrderType,
    /// `|a - b|`
    pub r: f64,
    /// `|b - c|`, the midsegment length
    pub s: f64,
    /// `|c - d|`
    pub t: f64,
}

impl Quadrisecant {
    fn arclengths(&self) -> [f64; 4] {
        self.positions.map(|p| p.s)
    }

    /// Largest distance from one of the four points to the line.
    pub fn collinearity_residual(&self) -> f64 {
        self.points.iter().map(|p| self.line.distance_to_point(p)).fold(0.0, f64::max)
    }

    /// The same quadrisecant read along the oppositely oriented line (`dcba`).
    pub fn reversed(&self) -> Quadrisecant {
        let mut points = self.points;
        let mut positions = self.positions;
        points.reverse();
        positions.reverse();
        let line_params = [3, 2, 1, 0].map(|i| -self.line_params[i]);
        Quadrisecant {
            line: self.line.reversed(),
            points,
            positions,
            line_params,
            order_type: self.order_type,
            r: self.t,
            s: self.s,
            t: self.r,
        }
    }
}

/// The segment between the second and third points along the line.
pub fn midsegment(q: &Quadrisecant) -> Segment {
    Segment {
        start: q.points[1],
        end: q.points[2],
    }
}

/// Counters describing what the scan skipped or merged.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanDiagnostics {
    pub quadruples_examined: u64,
    pub degenerate_quadruples: u64,
    pub dedup_merges: u64,
    /// Hits that collapsed onto a shared vertex and so lost a component.
    pub vertex_collisions: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadrisecantScan {
    pub quadrisecants: Vec<Quadrisecant>,
    pub diagnostics: ScanDiagnostics,
}

impl QuadrisecantScan {
    pub fn count(&self, ty: OrderType) -> usize {
        self.quadrisecants.iter().filter(|q| q.order_type == ty).count()
    }
}

#[derive(Default)]
struct Partial {
    hits: Vec<([usize; 4], LocalHit)>,
    examined: u64,
    degenerate: u64,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.hits.extend(other.hits);
        self.examined += other.examined;
        self.degenerate += other.degenerate;
        self
    }
}

/// Scans every quadruple of pairwise non-adjacent edges for common transversals.
///
/// `tol` is measured relative to the bounding-box diagonal: contacts within
/// `tol` of a vertex are attributed to the edge starting there.
pub fn find_quadrisecants(knot: &PolyKnot, tol: f64) -> QuadrisecantScan {
    let n = knot.len();
    let frame = Frame::fit(knot.vertices().iter());
    let prepared: Vec<PreparedSegment> = knot
        .edges()
        .map(|e| PreparedSegment::new(frame.to_local(&e.start), frame.to_local(&e.end)))
        .collect();
    let adjacent = |a: usize, b: usize| knot.edges_adjacent(a, b);

    let partial = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = Partial::default();
            for j in i + 2..n {
                if adjacent(i, j) {
                    continue;
                }
                for k in j + 2..n {
                    if adjacent(i, k) {
                        continue;
                    }
                    for l in k + 2..n {
                        if adjacent(i, l) {
                            continue;
                        }
                        acc.examined += 1;
                        let quad = [&prepared[i], &prepared[j], &prepared[k], &prepared[l]];
                        match transversal::solve_prepared(quad) {
                            None => acc.degenerate += 1,
                            Some(hits) => acc.hits.extend(hits.into_iter().map(|h| ([i, j, k, l], h))),
                        }
                    }
                }
            }
            acc
        })
        .reduce(Partial::default, Partial::merge);

    let mut diagnostics = ScanDiagnostics {
        quadruples_examined: partial.examined,
        degenerate_quadruples: partial.degenerate,
        ..Default::default()
    };

    let mut candidates: Vec<Quadrisecant> = Vec::new();
    for (edges, hit) in &partial.hits {
        match build(knot, &frame, edges, hit, tol) {
            Some(q) => candidates.push(q),
            None => diagnostics.vertex_collisions += 1,
        }
    }
    candidates.sort_by(|a, b| sort_key(a).partial_cmp(&sort_key(b)).expect("finite keys"));

    let dedup_distance = DEDUP_DISTANCE * frame.scale;
    let mut kept: Vec<Quadrisecant> = Vec::new();
    for q in candidates {
        let duplicate = kept.iter().any(|k| {
            k.line.angle_to(&q.line) < DEDUP_ANGLE
                && k.line.distance_to_point(&q.line.point) < dedup_distance
                && q.line.distance_to_point(&k.line.point) < dedup_distance
        });
        if duplicate {
            diagnostics.dedup_merges += 1;
        } else {
            kept.push(q);
        }
    }

    QuadrisecantScan {
        quadrisecants: kept,
        diagnostics,
    }
}

fn sort_key(q: &Quadrisecant) -> (usize, f64, f64, f64, f64) {
    let first_edge = q.positions.iter().map(|p| p.edge_index).min().unwrap_or(0);
    (first_edge, q.line_params[0], q.line_params[1], q.line_params[2], q.line_params[3])
}

/// Converts a local hit into a quadrisecant record, or `None` when two
/// contacts merge into one intersection component.
fn build(knot: &PolyKnot, frame: &Frame, edges: &[usize; 4], hit: &LocalHit, tol: f64) -> Option<Quadrisecant> {
    let n = knot.len();
    let line = TransversalLine::through(frame.to_world(&hit.point), hit.direction);
    let (line, flipped) = line.canonical();
    let sign = if flipped { -1.0 } else { 1.0 };

    let mut contacts: Vec<(f64, ArcPosition)> = (0..4)
        .map(|k| {
            let edge = edges[k];
            let local_len = knot.edge_length(edge) / frame.scale;
            let slack = tol / local_len;
            let u = hit.segment_params[k];
            let (edge, u) = if u >= 1.0 - slack {
                ((edge + 1) % n, 0.0)
            } else if u <= slack {
                (edge, 0.0)
            } else {
                (edge, u)
            };
            let pos = knot.position(edge, u).expect("contact lies on the knot");
            (sign * hit.line_params[k] * frame.scale, pos)
        })
        .collect();
    contacts.sort_by(|a, b| a.0.total_cmp(&b.0));

    for a in 0..4 {
        for b in a + 1..4 {
            if knot.edges_adjacent(contacts[a].1.edge_index, contacts[b].1.edge_index) {
                return None;
            }
        }
    }
    let min_gap = tol * frame.scale;
    if contacts.windows(2).any(|w| w[1].0 - w[0].0 <= min_gap) {
        return None;
    }

    let positions = [0, 1, 2, 3].map(|k| contacts[k].1);
    let points = positions.map(|p| knot.point_at(&p));
    // Re-anchor parameters on the canonical line so they are comparable
    // across records that describe the same line.
    let line_params = points.map(|p| line.param_of(&p));
    let order_type = classify_order(
        positions[0].s,
        positions[1].s,
        positions[2].s,
        positions[3].s,
        knot.total_length(),
    )
    .ok()?;
    Some(Quadrisecant {
        line,
        points,
        positions,
        line_params,
        order_type,
        r: (points[0] - points[1]).norm(),
        s: (points[1] - points[2]).norm(),
        t: (points[2] - points[3]).norm(),
    })
}

/// Arclength coordinates of a quadrisecant's points, in line order.
pub fn arclength_coords(q: &Quadrisecant) -> [f64; 4] {
    q.arclengths()
}

/// Checks the record invariants, returning a description of the first violation.
pub fn check_quadrisecant(knot: &PolyKnot, q: &Quadrisecant, tol: f64) -> std::result::Result<(), String> {
    let scale = knot.bbox_diagonal();
    if q.collinearity_residual() > HIT_TOL * scale {
        return Err(format!("points not collinear (residual {})", q.collinearity_residual()));
    }
    if !q.line_params.windows(2).all(|w| w[0] < w[1]) {
        return Err("line parameters not increasing".into());
    }
    for a in 0..4 {
        for b in a + 1..4 {
            if knot.edges_adjacent(q.positions[a].edge_index, q.positions[b].edge_index) {
                return Err(format!("points {a} and {b} on the same or adjacent edges"));
            }
        }
    }
    if !(q.r > tol && q.s > tol && q.t > tol) {
        return Err("zero segment length".into());
    }
    let recomputed: Result<OrderType> = {
        let s = q.arclengths();
        classify_order(s[0], s[1], s[2], s[3], knot.total_length())
    };
    if recomputed.ok() != Some(q.order_type) {
        return Err("order type mismatch".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn convex_polygon_has_none() {
        let scan = find_quadrisecants(&fixtures::convex_20gon(), DEFAULT_TOL);
        assert!(scan.quadrisecants.is_empty());
        assert!(scan.diagnostics.quadruples_examined > 0);
    }

    #[test]
    fn trefoil_has_alternating() {
        let knot = fixtures::trefoil(64);
        let scan = find_quadrisecants(&knot, DEFAULT_TOL);
        assert!(scan.count(OrderType::Alternating) >= 1, "{:?}", scan.diagnostics);
        let total = scan.count(OrderType::Simple) + scan.count(OrderType::Flipped) + scan.count(OrderType::Alternating);
        assert_eq!(total, scan.quadrisecants.len());
        for q in &scan.quadrisecants {
            check_quadrisecant(&knot, q, 1e-12).unwrap();
            assert!(q.collinearity_residual() < 1e-7);
        }
    }

    #[test]
    fn dented_unknot_has_simple_quadrisecants() {
        let knot = fixtures::dented_unknot(96);
        let scan = find_quadrisecants(&knot, DEFAULT_TOL);
        assert!(scan.count(OrderType::Simple) >= 1);
        // the dent produces a family of nearly horizontal lines through the
        // two flanks and the two outer arcs
        for q in &scan.quadrisecants {
            assert_eq!(q.order_type, OrderType::Simple);
            check_quadrisecant(&knot, q, 1e-12).unwrap();
        }
    }

    #[test]
    fn midsegment_examples() {
        let knot = fixtures::trefoil(64);
        let scan = find_quadrisecants(&knot, DEFAULT_TOL);
        let q = &scan.quadrisecants[0];
        let mid = midsegment(q);
        assert_eq!(mid.length(), q.s);
        let rev = midsegment(&q.reversed());
        assert_eq!((rev.start, rev.end), (mid.end, mid.start));
        assert_eq!(q.reversed().order_type, q.order_type);
    }

    #[test]
    fn midsegment_on_axis_points() {
        let line = TransversalLine::through(Point3::origin(), crate::geometry::Vec3::x());
        let points = [0.0, 1.0, 2.0, 3.0].map(|x| Point3::new(x, 0.0, 0.0));
        let pos = ArcPosition { edge_index: 0, t: 0.0, s: 0.0 };
        let q = Quadrisecant {
            line,
            points,
            positions: [pos; 4],
            line_params: [0.0, 1.0, 2.0, 3.0],
            order_type: OrderType::Simple,
            r: 1.0,
            s: 1.0,
            t: 1.0,
        };
        let m = midsegment(&q);
        assert_eq!((m.start, m.end), (Point3::new(1.0, 0.0, 0.0), Point3::new(2.0, 0.0, 0.0)));
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let knot = fixtures::figure_eight(32);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| find_quadrisecants(&knot, DEFAULT_TOL))
        };
        assert_eq!(run(1), run(4));
    }
}
