//! Brute-force search for lines meeting four segments.
//!
//! Lines are parametrized by a point on each of the first two segments. A
//! line through `P1(u)` and `P2(v)` is coplanar with the support line of a
//! third segment exactly when their reciprocal Plücker product vanishes,
//! which is a bilinear function of `(u, v)`. Common zeros of the two
//! bilinear functions for the third and fourth segments are bracketed on a
//! grid, refined by Newton's method and then checked against the closed
//! segments.

use crate::geometry::{Segment, Vec3};
use crate::quadrisecant::TransversalLine;

use super::OracleConfig;

/// Maximum distance from a reported line to each of the four segments.
pub const SAMPLER_TOL: f64 = 1e-9;
/// Slack on the first two segment parameters.
const PARAM_SLACK: f64 = 1e-9;
const DEDUP_ANGLE: f64 = 1e-6;
const DEDUP_DISTANCE: f64 = 1e-6;

/// `c0 + cu u + cv v + cuv u v`
#[derive(Debug, Clone, Copy)]
struct Bilinear {
    c0: f64,
    cu: f64,
    cv: f64,
    cuv: f64,
}

impl Bilinear {
    fn at(&self, u: f64, v: f64) -> f64 {
        self.c0 + self.cu * u + self.cv * v + self.cuv * u * v
    }

    fn grad(&self, u: f64, v: f64) -> (f64, f64) {
        (self.cu + self.cuv * v, self.cv + self.cuv * u)
    }
}

/// Reciprocal product of the line `P1(u) P2(v)` with the support line of `seg`.
fn side_function(s1: &Segment, s2: &Segment, seg: &Segment) -> Bilinear {
    let p0 = s1.start.coords;
    let e1 = s1.vector();
    let q0 = s2.start.coords;
    let e2 = s2.vector();
    let dk: Vec3 = seg.vector();
    let mk: Vec3 = seg.start.coords.cross(&dk);
    // direction (q0 + v e2) - (p0 + u e1), moment (p0 + u e1) x (q0 + v e2)
    Bilinear {
        c0: (q0 - p0).dot(&mk) + p0.cross(&q0).dot(&dk),
        cu: -e1.dot(&mk) + e1.cross(&q0).dot(&dk),
        cv: e2.dot(&mk) + p0.cross(&e2).dot(&dk),
        cuv: e1.cross(&e2).dot(&dk),
    }
}

fn sign_change(values: [f64; 4]) -> bool {
    let pos = values.iter().any(|&x| x >= 0.0);
    let neg = values.iter().any(|&x| x <= 0.0);
    pos && neg
}

fn newton(g3: &Bilinear, g4: &Bilinear, mut u: f64, mut v: f64) -> Option<(f64, f64)> {
    for _ in 0..60 {
        let (f3, f4) = (g3.at(u, v), g4.at(u, v));
        let (a, b) = g3.grad(u, v);
        let (c, d) = g4.grad(u, v);
        let det = a * d - b * c;
        if det.abs() < 1e-300 {
            return None;
        }
        let du = (f3 * d - f4 * b) / det;
        let dv = (a * f4 - c * f3) / det;
        u -= du;
        v -= dv;
        if !(u.is_finite() && v.is_finite()) || u.abs() > 10.0 || v.abs() > 10.0 {
            return None;
        }
        if du.abs().max(dv.abs()) < 1e-15 {
            break;
        }
    }
    Some((u, v))
}

/// Approximate transversals of four segments found by grid sampling.
pub fn sampled_transversals(segments: &[Segment; 4], cfg: &OracleConfig) -> Vec<TransversalLine> {
    let [s1, s2, s3, s4] = segments;
    let g3 = side_function(s1, s2, s3);
    let g4 = side_function(s1, s2, s4);
    let n = cfg.sampler_resolution;
    let h = 1.0 / n as f64;

    let corner = |g: &Bilinear| -> Vec<f64> {
        let mut out = Vec::with_capacity((n + 1) * (n + 1));
        for i in 0..=n {
            for j in 0..=n {
                out.push(g.at(i as f64 * h, j as f64 * h));
            }
        }
        out
    };
    let v3 = corner(&g3);
    let v4 = corner(&g4);
    let idx = |i: usize, j: usize| i * (n + 1) + j;
    let cell = |vals: &[f64], i: usize, j: usize| {
        [vals[idx(i, j)], vals[idx(i + 1, j)], vals[idx(i, j + 1)], vals[idx(i + 1, j + 1)]]
    };

    let mut found: Vec<TransversalLine> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !(sign_change(cell(&v3, i, j)) && sign_change(cell(&v4, i, j))) {
                continue;
            }
            let Some((u, v)) = newton(&g3, &g4, (i as f64 + 0.5) * h, (j as f64 + 0.5) * h) else {
                continue;
            };
            if !(-PARAM_SLACK..=1.0 + PARAM_SLACK).contains(&u) || !(-PARAM_SLACK..=1.0 + PARAM_SLACK).contains(&v) {
                continue;
            }
            let p = s1.point_at(u.clamp(0.0, 1.0));
            let q = s2.point_at(v.clamp(0.0, 1.0));
            let dir = q - p;
            if dir.norm() < 1e-12 {
                continue;
            }
            let line = TransversalLine::through(p, dir);
            if segments.iter().any(|s| line.distance_to_segment(s) >= SAMPLER_TOL) {
                continue;
            }
            let duplicate = found.iter().any(|l| {
                l.angle_to(&line) < DEDUP_ANGLE && l.distance_to_point(&line.point) < DEDUP_DISTANCE
            });
            if !duplicate {
                found.push(line);
            }
        }
    }
    found
}
