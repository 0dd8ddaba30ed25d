//! Polygonal thickness and ropelength.
//!
//! Thickness uses the diameter convention and the standard polygonal
//! surrogate `min(2 * min_rad, dcsd)`:
//!
//! * `min_rad` is the smallest vertex radius `min(|e_in|, |e_out|) / (2 tan(theta / 2))`
//!   over turning angles `theta`;
//! * `dcsd` is the smallest distance between two points of the curve that is
//!   critical for the distance function at both ends. Criticality at an edge
//!   interior means `p - q` is orthogonal to the edge; at a vertex it means
//!   `p - q` lies in the closed normal cone swept by the normal planes of the
//!   two incident edges. Pairs on a common edge are never considered.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{segment_proximity, ArcPosition, Point3, PolyKnot, Vec3};

/// Output of [`thickness_and_ropelength`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThicknessReport {
    pub min_rad: f64,
    pub dcsd: f64,
    pub thickness: f64,
    pub length: f64,
    pub ropelength: f64,
    pub witness_vertex: usize,
    /// `None` only when the curve has no doubly-critical pair.
    pub witness_pair: Option<(ArcPosition, ArcPosition)>,
}

impl ThicknessReport {
    /// Which term of `min(2 min_rad, dcsd)` is binding.
    pub fn limited_by_curvature(&self) -> bool {
        2.0 * self.min_rad <= self.dcsd
    }
}

/// Smallest vertex radius and the vertex achieving it.
pub fn min_rad(knot: &PolyKnot) -> (f64, usize) {
    let mut best = (f64::INFINITY, 0);
    for i in 0..knot.len() {
        let r = vertex_radius(knot, i);
        if r < best.0 {
            best = (r, i);
        }
    }
    best
}

/// `min(|a|, |b|) / (2 tan(theta/2))` with `tan(theta/2) = |a x b| / (|a||b| + a.b)`.
fn vertex_radius(knot: &PolyKnot, i: usize) -> f64 {
    let n = knot.len();
    let incoming = knot.vertex(i) - knot.vertex(i + n - 1);
    let outgoing = knot.vertex(i + 1) - knot.vertex(i);
    let (la, lb) = (incoming.norm(), outgoing.norm());
    let cross = incoming.cross(&outgoing).norm();
    if cross == 0.0 {
        return f64::INFINITY;
    }
    la.min(lb) * (la * lb + incoming.dot(&outgoing)) / (2.0 * cross)
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Candidate {
    distance: f64,
    // (kind, first index, second index) for a deterministic tie-break
    key: (u8, usize, usize),
    p: (usize, f64),
    q: (usize, f64),
}

impl Candidate {
    fn cmp_key(&self, other: &Self) -> Ordering {
        self.distance.total_cmp(&other.distance).then(self.key.cmp(&other.key))
    }
}

fn pick(a: Option<Candidate>, b: Option<Candidate>) -> Option<Candidate> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if x.cmp_key(&y) == Ordering::Greater { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Closed normal cone test at vertex `k` for the direction `w` leaving it.
fn vertex_critical(knot: &PolyKnot, k: usize, w: &Vec3) -> bool {
    let n = knot.len();
    let v = knot.vertex(k);
    let incoming = v - knot.vertex(k + n - 1);
    let outgoing = knot.vertex(k + 1) - v;
    let a = w.dot(&incoming);
    let b = w.dot(&outgoing);
    a * b <= 1e-12 * w.norm_squared() * incoming.norm() * outgoing.norm()
}

/// Checks that non-adjacent edges stay apart.
pub fn check_embedded(knot: &PolyKnot) -> Result<()> {
    let n = knot.len();
    let tol = 1e-9 * knot.bbox_diagonal();
    let hit = (0..n).into_par_iter().find_map_first(|i| {
        (i + 2..n)
            .filter(|&j| !knot.edges_adjacent(i, j))
            .find(|&j| segment_proximity(&knot.edge(i), &knot.edge(j)).distance <= tol)
            .map(|j| (i, j))
    });
    match hit {
        Some((i, j)) => Err(Error::NotEmbedded(i, j)),
        None => Ok(()),
    }
}

/// Doubly-critical self distance and a witness pair.
pub fn dcsd(knot: &PolyKnot) -> Result<(f64, Option<(ArcPosition, ArcPosition)>)> {
    check_embedded(knot)?;
    let n = knot.len();
    let best = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut best = None;
            best = pick(best, edge_edge_candidates(knot, i));
            best = pick(best, vertex_edge_candidates(knot, i));
            best = pick(best, vertex_vertex_candidates(knot, i));
            best
        })
        .reduce(|| None, pick);

    match best {
        None => Ok((f64::INFINITY, None)),
        Some(c) => {
            let p = knot.position(c.p.0, c.p.1)?;
            let q = knot.position(c.q.0, c.q.1)?;
            Ok((c.distance, Some((p, q))))
        }
    }
}

/// Interior-interior pairs between edge `i` and later non-adjacent edges.
fn edge_edge_candidates(knot: &PolyKnot, i: usize) -> Option<Candidate> {
    let n = knot.len();
    let e1 = knot.edge(i);
    let d1 = e1.vector();
    let mut best = None;
    for j in i + 2..n {
        if knot.edges_adjacent(i, j) {
            continue;
        }
        let e2 = knot.edge(j);
        let d2 = e2.vector();
        let r = e1.start - e2.start;
        let a = d1.norm_squared();
        let e = d2.norm_squared();
        let b = d1.dot(&d2);
        let c = d1.dot(&r);
        let f = d2.dot(&r);
        let denom = a * e - b * b;
        let cand = if denom > 1e-14 * a * e {
            let s = (b * f - c * e) / denom;
            let t = (a * f - b * c) / denom;
            if s > 0.0 && s < 1.0 && t > 0.0 && t < 1.0 {
                let distance = (e1.point_at(s) - e2.point_at(t)).norm();
                Some((s, t, distance))
            } else {
                None
            }
        } else {
            // Parallel edges: a whole overlap interval is critical. Project
            // the second edge onto the first and take the overlap midpoint.
            let t0 = (e2.start - e1.start).dot(&d1) / a;
            let t1 = (e2.end - e1.start).dot(&d1) / a;
            let lo = t0.min(t1).max(0.0);
            let hi = t0.max(t1).min(1.0);
            if hi > lo {
                let s = 0.5 * (lo + hi);
                let p = e1.point_at(s);
                let t = e2.closest_param(&p);
                if t > 0.0 && t < 1.0 {
                    Some((s, t, (p - e2.point_at(t)).norm()))
                } else {
                    None
                }
            } else {
                None
            }
        };
        if let Some((s, t, distance)) = cand {
            best = pick(
                best,
                Some(Candidate {
                    distance,
                    key: (0, i, j),
                    p: (i, s),
                    q: (j, t),
                }),
            );
        }
    }
    best
}

/// Vertex `k` against the interiors of every edge not incident to it.
fn vertex_edge_candidates(knot: &PolyKnot, k: usize) -> Option<Candidate> {
    let n = knot.len();
    let v = knot.vertex(k);
    let mut best = None;
    for j in 0..n {
        if j == k || j == (k + n - 1) % n {
            continue;
        }
        let e = knot.edge(j);
        let d = e.vector();
        let t = (v - e.start).dot(&d) / d.norm_squared();
        if !(t > 0.0 && t < 1.0) {
            continue;
        }
        let foot = e.point_at(t);
        let w = foot - v;
        if !vertex_critical(knot, k, &w) {
            continue;
        }
        best = pick(
            best,
            Some(Candidate {
                distance: w.norm(),
                key: (1, k, j),
                p: (k, 0.0),
                q: (j, t),
            }),
        );
    }
    best
}

/// Vertex `k` against later vertices not sharing an edge with it.
fn vertex_vertex_candidates(knot: &PolyKnot, k: usize) -> Option<Candidate> {
    let n = knot.len();
    let v = knot.vertex(k);
    let mut best = None;
    for l in k + 2..n {
        if (l + 1) % n == k {
            continue;
        }
        let u = knot.vertex(l);
        let w = u - v;
        if vertex_critical(knot, k, &w) && vertex_critical(knot, l, &(-w)) {
            best = pick(
                best,
                Some(Candidate {
                    distance: w.norm(),
                    key: (2, k, l),
                    p: (k, 0.0),
                    q: (l, 0.0),
                }),
            );
        }
    }
    best
}

pub fn thickness_and_ropelength(knot: &PolyKnot) -> Result<ThicknessReport> {
    let (min_rad, witness_vertex) = min_rad(knot);
    let (dcsd, witness_pair) = dcsd(knot)?;
    let thickness = (2.0 * min_rad).min(dcsd);
    if !(thickness > 0.0 && thickness.is_finite()) {
        return Err(Error::ZeroThickness);
    }
    let length = knot.total_length();
    Ok(ThicknessReport {
        min_rad,
        dcsd,
        thickness,
        length,
        ropelength: length / thickness,
        witness_vertex,
        witness_pair,
    })
}

/// Rescales about the origin so the thickness becomes 1.
pub fn normalize_to_unit_thickness(knot: &PolyKnot) -> Result<PolyKnot> {
    let report = thickness_and_ropelength(knot)?;
    knot.scaled(1.0 / report.thickness)
}

/// Distance realised by a witness pair; used to cross-check reports.
pub fn witness_distance(knot: &PolyKnot, pair: &(ArcPosition, ArcPosition)) -> f64 {
    let p: Point3 = knot.point_at(&pair.0);
    (p - knot.point_at(&pair.1)).norm()
}
