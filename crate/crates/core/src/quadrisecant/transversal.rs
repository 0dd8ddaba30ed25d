//! Lines meeting four segments.
//!
//! A line with Plücker coordinates `(d, m)` meets (or is parallel to) the
//! line `(d', m')` iff the side product `d . m' + d' . m` vanishes. Four such
//! linear conditions leave a pencil `alpha F + beta G` of candidate
//! coordinates; a pencil member is a real line iff it lies on the Klein
//! quadric `d . m = 0`, which is a homogeneous quadratic in `(alpha, beta)`.
//! Each real root is then clipped against the four closed segments.

use serde::{Deserialize, Serialize};

use crate::geometry::{bbox_diagonal, Point3, Segment, Vec3};

/// Rank and quadric-coefficient threshold below which a quadruple is degenerate.
pub const DEGENERACY_TOL: f64 = 1e-12;
/// Maximum distance (normalized units) between a transversal and each segment.
pub const HIT_TOL: f64 = 1e-7;
/// Slack on segment parameters before clamping to `[0, 1]`.
const PARAM_SLACK: f64 = 1e-9;

/// An oriented line, stored with its Plücker coordinates `(direction, point x direction)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransversalLine {
    pub point: Point3,
    pub direction: Vec3,
    pub plucker: [f64; 6],
}

impl TransversalLine {
    /// Builds the line through `point` with direction `direction` (any nonzero length).
    pub fn through(point: Point3, direction: Vec3) -> Self {
        let direction = direction.normalize();
        let moment = point.coords.cross(&direction);
        Self {
            point,
            direction,
            plucker: [direction.x, direction.y, direction.z, moment.x, moment.y, moment.z],
        }
    }

    pub fn moment(&self) -> Vec3 {
        Vec3::new(self.plucker[3], self.plucker[4], self.plucker[5])
    }

    /// Signed coordinate of the projection of `p` along the line.
    pub fn param_of(&self, p: &Point3) -> f64 {
        (p - self.point).dot(&self.direction)
    }

    pub fn at(&self, lambda: f64) -> Point3 {
        self.point + self.direction * lambda
    }

    pub fn distance_to_point(&self, p: &Point3) -> f64 {
        let w = p - self.point;
        (w - self.direction * w.dot(&self.direction)).norm()
    }

    /// Distance from the line to the closed segment, with the minimizing segment parameter.
    pub fn segment_proximity(&self, seg: &Segment) -> (f64, f64) {
        let d = self.direction;
        let a = seg.start - self.point;
        let w = seg.vector();
        let a_perp = a - d * a.dot(&d);
        let w_perp = w - d * w.dot(&d);
        let ww = w_perp.norm_squared();
        let t = if ww > 0.0 { (-a_perp.dot(&w_perp) / ww).clamp(0.0, 1.0) } else { 0.0 };
        ((a_perp + w_perp * t).norm(), t)
    }

    pub fn distance_to_segment(&self, seg: &Segment) -> f64 {
        self.segment_proximity(seg).0
    }

    /// Unoriented angle between two lines.
    pub fn angle_to(&self, other: &TransversalLine) -> f64 {
        let c = self.direction.dot(&other.direction).abs();
        self.direction.cross(&other.direction).norm().atan2(c)
    }

    pub fn reversed(&self) -> Self {
        Self::through(self.point, -self.direction)
    }

    /// Reorients so the first clearly nonzero direction component is positive.
    pub(crate) fn canonical(&self) -> (Self, bool) {
        let d = self.direction;
        let lead = [d.x, d.y, d.z].into_iter().find(|c| c.abs() > 1e-9).unwrap_or(d.x);
        if lead < 0.0 {
            (self.reversed(), true)
        } else {
            (*self, false)
        }
    }
}

/// Result of [`transversals_of_four_segments`].
#[derive(Debug, Clone, PartialEq)]
pub enum Transversals {
    Lines(Vec<TransversalLine>),
    /// The candidate family is not finite (e.g. coplanar support lines or a
    /// common regulus) or is numerically indistinguishable from that case.
    Degenerate,
}

impl Transversals {
    pub fn lines(&self) -> &[TransversalLine] {
        match self {
            Transversals::Lines(lines) => lines,
            Transversals::Degenerate => &[],
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Transversals::Degenerate)
    }
}

/// Translation and uniform scale taking a point set to a unit-diagonal box.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Frame {
    pub center: Point3,
    pub scale: f64,
}

impl Frame {
    pub fn fit<'a>(points: impl Iterator<Item = &'a Point3> + Clone) -> Self {
        let n = points.clone().count().max(1) as f64;
        let sum = points.clone().fold(Vec3::zeros(), |acc, p| acc + p.coords);
        let diag = bbox_diagonal(points);
        Self {
            center: Point3::from(sum / n),
            scale: if diag > 0.0 { diag } else { 1.0 },
        }
    }

    pub fn to_local(&self, p: &Point3) -> Vec3 {
        (p - self.center) / self.scale
    }

    pub fn to_world(&self, v: &Vec3) -> Point3 {
        self.center + v * self.scale
    }
}

/// A support line prepared for the Plücker solve, in normalized coordinates.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PreparedSegment {
    start: Vec3,
    unit: Vec3,
    length: f64,
    row: [f64; 6],
}

impl PreparedSegment {
    pub fn new(start: Vec3, end: Vec3) -> Self {
        let v = end - start;
        let length = v.norm();
        let unit = v / length;
        let m = start.cross(&unit);
        // side(L, this) = L.d . m + L.m . unit
        let raw = [m.x, m.y, m.z, unit.x, unit.y, unit.z];
        let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        Self {
            start,
            unit,
            length,
            row: raw.map(|x| x / norm),
        }
    }
}

/// A transversal in normalized coordinates with its four contacts.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LocalHit {
    pub point: Vec3,
    pub direction: Vec3,
    /// Contact parameter on each input segment, in `[0, 1]`.
    pub segment_params: [f64; 4],
    /// Contact coordinate along the line, in normalized units.
    pub line_params: [f64; 4],
}

/// Basis of the null space of a 4x6 system, or `None` when its rank is below 4.
fn null_space(rows: [[f64; 6]; 4]) -> Option<[[f64; 6]; 2]> {
    let mut a = rows;
    let mut perm = [0usize, 1, 2, 3, 4, 5];
    for k in 0..4 {
        let (mut pi, mut pj, mut best) = (k, k, 0.0);
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                if x.abs() > best {
                    (pi, pj, best) = (i, j, x.abs());
                }
            }
        }
        if best < DEGENERACY_TOL {
            return None;
        }
        a.swap(k, pi);
        if pj != k {
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            perm.swap(k, pj);
        }
        let pivot = a[k];
        for row in a.iter_mut().skip(k + 1) {
            let factor = row[k] / pivot[k];
            if factor != 0.0 {
                for j in k..6 {
                    row[j] -= factor * pivot[j];
                }
            }
        }
    }

    let mut basis = [[0.0; 6]; 2];
    for (slot, free) in [4usize, 5].into_iter().enumerate() {
        let mut x = [0.0; 6];
        x[free] = 1.0;
        for k in (0..4).rev() {
            let acc: f64 = (k + 1..6).map(|j| a[k][j] * x[j]).sum();
            x[k] = -acc / a[k][k];
        }
        for j in 0..6 {
            basis[slot][perm[j]] = x[j];
        }
    }
    Some(basis)
}

fn dot6(a: &[f64; 6], b: &[f64; 6]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Symmetric bilinear form of the Klein quadric: `(d1 . m2 + d2 . m1) / 2`.
fn klein(a: &[f64; 6], b: &[f64; 6]) -> f64 {
    0.5 * (a[0] * b[3] + a[1] * b[4] + a[2] * b[5] + b[0] * a[3] + b[1] * a[4] + b[2] * a[5])
}

/// Solves the transversal problem for four prepared segments.
///
/// Returns `None` for degenerate quadruples.
pub(crate) fn solve_prepared(segs: [&PreparedSegment; 4]) -> Option<Vec<LocalHit>> {
    let [mut f, mut g] = null_space([segs[0].row, segs[1].row, segs[2].row, segs[3].row])?;

    let nf = dot6(&f, &f).sqrt();
    f = f.map(|x| x / nf);
    let proj = dot6(&g, &f);
    for j in 0..6 {
        g[j] -= proj * f[j];
    }
    let ng = dot6(&g, &g).sqrt();
    g = g.map(|x| x / ng);

    let a = klein(&f, &f);
    let b = klein(&f, &g);
    let c = klein(&g, &g);
    if a.abs().max(b.abs()).max(c.abs()) < DEGENERACY_TOL {
        return None;
    }
    let disc = b * b - a * c;
    if disc < -DEGENERACY_TOL {
        return Some(Vec::new());
    }

    // Roots of a x^2 + 2 b x y + c y^2 = 0 as homogeneous (x, y) pairs, in
    // the numerically stable form.
    let sq = disc.max(0.0).sqrt();
    let tangent = disc.abs() <= DEGENERACY_TOL;
    let q = -(b + b.signum() * sq);
    let candidates: Vec<(f64, f64)> = if tangent {
        if a.abs() >= c.abs() {
            vec![(-b, a)]
        } else {
            vec![(c, -b)]
        }
    } else {
        vec![(q, a), (c, q)]
    };
    let mut roots: Vec<(f64, f64)> = Vec::with_capacity(2);
    for (x, y) in candidates {
        let n = x.hypot(y);
        if n == 0.0 {
            continue;
        }
        let (x, y) = (x / n, y / n);
        if roots.iter().all(|(u, v)| (u * y - v * x).abs() > 1e-15) {
            roots.push((x, y));
        }
    }

    let mut hits = Vec::with_capacity(2);
    for (x, y) in roots {
        let line: [f64; 6] = std::array::from_fn(|j| x * f[j] + y * g[j]);
        if let Some(hit) = realize(&line, segs) {
            hits.push(hit);
        }
    }
    Some(hits)
}

/// Converts Plücker coordinates to a line and clips it against the segments.
fn realize(line: &[f64; 6], segs: [&PreparedSegment; 4]) -> Option<LocalHit> {
    let d = Vec3::new(line[0], line[1], line[2]);
    let m = Vec3::new(line[3], line[4], line[5]);
    let dn = d.norm();
    if dn < 1e-9 * (dn + m.norm()) {
        // line at infinity
        return None;
    }
    let direction = d / dn;
    let mut moment = m / dn;
    moment -= direction * direction.dot(&moment);
    let point = direction.cross(&moment);

    let mut segment_params = [0.0; 4];
    let mut line_params = [0.0; 4];
    for (k, seg) in segs.iter().enumerate() {
        let w0 = point - seg.start;
        let b = direction.dot(&seg.unit);
        let denom = 1.0 - b * b;
        if denom < 1e-14 {
            return None;
        }
        let vw = seg.unit.dot(&w0);
        let lambda = (b * vw - direction.dot(&w0)) / denom;
        let t = vw + lambda * b;
        let gap = (w0 + direction * lambda - seg.unit * t).norm();
        let u = t / seg.length;
        if gap > HIT_TOL || !(-PARAM_SLACK..=1.0 + PARAM_SLACK).contains(&u) {
            return None;
        }
        segment_params[k] = u.clamp(0.0, 1.0);
        line_params[k] = lambda;
    }
    Some(LocalHit {
        point,
        direction,
        segment_params,
        line_params,
    })
}

/// All lines meeting four closed segments.
///
/// Generic quadruples have 0, 1 or 2 such lines. Coordinates are normalized
/// to the segments' bounding box before solving.
pub fn transversals_of_four_segments(segments: &[Segment; 4]) -> Transversals {
    let frame = Frame::fit(segments.iter().flat_map(|s| [&s.start, &s.end]));
    let prepared =
        segments.map(|s| PreparedSegment::new(frame.to_local(&s.start), frame.to_local(&s.end)));
    match solve_prepared([&prepared[0], &prepared[1], &prepared[2], &prepared[3]]) {
        None => Transversals::Degenerate,
        Some(hits) => Transversals::Lines(
            hits.into_iter()
                .map(|h| TransversalLine::through(frame.to_world(&h.point), h.direction))
                .collect(),
        ),
    }
}
