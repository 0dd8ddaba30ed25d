//! Points, segments and closed polygonal curves with arclength bookkeeping.
//!
//! Predicates use a single absolute tolerance [`GEOM_TOL`], meant to be
//! applied to coordinates normalized so the bounding-box diagonal is O(1).

use nalgebra::{Matrix3, Rotation3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point3 = nalgebra::Point3<f64>;
pub type Vec3 = nalgebra::Vector3<f64>;

/// Absolute tolerance for geometric predicates on normalized coordinates.
pub const GEOM_TOL: f64 = 1e-9;

/// Radius of the circle through three points; `+inf` when they are collinear.
pub fn circumradius(a: &Point3, b: &Point3, c: &Point3) -> Result<f64> {
    let ab = b - a;
    let ac = c - a;
    let bc = c - b;
    let (lab, lac, lbc) = (ab.norm(), ac.norm(), bc.norm());
    if lab == 0.0 || lac == 0.0 || lbc == 0.0 {
        return Err(Error::DegenerateTriple);
    }
    // R = abc / (2 |ab x ac|)
    let twice_area = ab.cross(&ac).norm();
    let scale = lab.max(lac).max(lbc);
    if twice_area <= f64::EPSILON * scale * scale {
        return Ok(f64::INFINITY);
    }
    Ok(lab * lac * lbc / (2.0 * twice_area))
}

/// Angle between `a - p` and `b - p`, in `[0, pi]`.
pub fn angle_at(a: &Point3, p: &Point3, b: &Point3) -> Result<f64> {
    let u = a - p;
    let v = b - p;
    if u.norm() == 0.0 {
        return Err(Error::DegenerateAngle("a"));
    }
    if v.norm() == 0.0 {
        return Err(Error::DegenerateAngle("b"));
    }
    Ok(vector_angle(&u, &v))
}

/// Unsigned angle between two nonzero vectors, computed with atan2 so it
/// stays accurate near 0 and pi.
pub(crate) fn vector_angle(u: &Vec3, v: &Vec3) -> f64 {
    u.cross(v).norm().atan2(u.dot(v))
}

/// A straight segment with distinct endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub start: Point3,
    pub end: Point3,
}

impl Segment {
    pub fn new(start: Point3, end: Point3) -> Result<Self> {
        if start == end {
            return Err(Error::DegenerateSegment);
        }
        Ok(Self { start, end })
    }

    pub fn vector(&self) -> Vec3 {
        self.end - self.start
    }

    pub fn length(&self) -> f64 {
        self.vector().norm()
    }

    pub fn point_at(&self, t: f64) -> Point3 {
        self.start + self.vector() * t
    }

    pub fn midpoint(&self) -> Point3 {
        nalgebra::center(&self.start, &self.end)
    }

    /// Parameter of the point on the closed segment nearest to `p`.
    pub fn closest_param(&self, p: &Point3) -> f64 {
        let v = self.vector();
        ((p - self.start).dot(&v) / v.norm_squared()).clamp(0.0, 1.0)
    }

    pub fn distance_to_point(&self, p: &Point3) -> f64 {
        (self.point_at(self.closest_param(p)) - p).norm()
    }
}

/// Nearest points between two closed segments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentProximity {
    pub distance: f64,
    pub s: f64,
    pub t: f64,
}

/// Closed-form nearest points between two segments (clamped line-line solve).
pub fn segment_proximity(p: &Segment, q: &Segment) -> SegmentProximity {
    let d1 = p.vector();
    let d2 = q.vector();
    let r = p.start - q.start;
    let a = d1.norm_squared();
    let e = d2.norm_squared();
    let f = d2.dot(&r);
    let c = d1.dot(&r);
    let b = d1.dot(&d2);
    let denom = a * e - b * b;

    let mut s = if denom > 1e-14 * a * e {
        ((b * f - c * e) / denom).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let mut t = (b * s + f) / e;
    if t < 0.0 {
        t = 0.0;
        s = (-c / a).clamp(0.0, 1.0);
    } else if t > 1.0 {
        t = 1.0;
        s = ((b - c) / a).clamp(0.0, 1.0);
    }
    let distance = (p.point_at(s) - q.point_at(t)).norm();
    SegmentProximity { distance, s, t }
}

/// A location on a polygonal knot.
///
/// `(edge_index, t)` locates the point geometrically; `s` is the arclength
/// coordinate and is what orderings use. A point at a vertex is always
/// stored as `t = 0` on the edge that starts there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcPosition {
    pub edge_index: usize,
    pub t: f64,
    pub s: f64,
}

/// Closed polygonal space curve; edge `i` runs from vertex `i` to `i + 1 mod n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyKnot {
    vertices: Vec<Point3>,
    cum_length: Vec<f64>,
    total_length: f64,
}

impl PolyKnot {
    pub fn new(vertices: Vec<Point3>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        for (i, v) in vertices.iter().enumerate() {
            if !(v.x.is_finite() && v.y.is_finite() && v.z.is_finite()) {
                return Err(Error::NonFinite(i));
            }
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if vertices[i] == vertices[j] {
                return Err(Error::DuplicateVertex(i, j));
            }
        }
        for i in 0..n {
            let incoming = vertices[i] - vertices[(i + n - 1) % n];
            let outgoing = vertices[(i + 1) % n] - vertices[i];
            let cross = incoming.cross(&outgoing).norm();
            if cross <= 1e-14 * incoming.norm() * outgoing.norm() && incoming.dot(&outgoing) < 0.0 {
                return Err(Error::AntiParallel(i));
            }
        }

        let mut cum_length = Vec::with_capacity(n);
        let mut acc = 0.0;
        for i in 0..n {
            cum_length.push(acc);
            acc += (vertices[(i + 1) % n] - vertices[i]).norm();
        }
        Ok(Self {
            vertices,
            cum_length,
            total_length: acc,
        })
    }

    pub fn from_coords(coords: &[[f64; 3]]) -> Result<Self> {
        Self::new(coords.iter().map(|c| Point3::new(c[0], c[1], c[2])).collect())
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Point3 {
        self.vertices[i % self.len()]
    }

    pub fn cum_length(&self) -> &[f64] {
        &self.cum_length
    }

    pub fn total_length(&self) -> f64 {
        self.total_length
    }

    pub fn edge(&self, i: usize) -> Segment {
        let n = self.len();
        Segment {
            start: self.vertices[i % n],
            end: self.vertices[(i + 1) % n],
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn edge_length(&self, i: usize) -> f64 {
        self.edge(i).length()
    }

    /// Whether edges `i` and `j` share a vertex (or are the same edge).
    pub fn edges_adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.len();
        let d = (i + n - j % n) % n;
        d == 0 || d == 1 || d == n - 1
    }

    /// Builds the position at parameter `t` of edge `edge_index`.
    pub fn position(&self, edge_index: usize, t: f64) -> Result<ArcPosition> {
        let n = self.len();
        if edge_index >= n {
            return Err(Error::InvalidPosition(format!(
                "edge index {edge_index} out of range 0..{n}"
            )));
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidPosition(format!("edge parameter {t} outside [0, 1]")));
        }
        let (edge_index, t) = if t == 1.0 { ((edge_index + 1) % n, 0.0) } else { (edge_index, t) };
        let mut s = self.cum_length[edge_index] + t * self.edge_length(edge_index);
        if s >= self.total_length {
            s -= self.total_length;
        }
        Ok(ArcPosition { edge_index, t, s })
    }

    /// Position at arclength coordinate `s` (taken modulo the total length).
    pub fn position_at_arclength(&self, s: f64) -> ArcPosition {
        let s = s.rem_euclid(self.total_length);
        let edge_index = match self.cum_length.partition_point(|&c| c <= s) {
            0 => 0,
            k => k - 1,
        };
        let len = self.edge_length(edge_index);
        let t = ((s - self.cum_length[edge_index]) / len).clamp(0.0, 1.0);
        if t >= 1.0 {
            return ArcPosition {
                edge_index: (edge_index + 1) % self.len(),
                t: 0.0,
                s: self.cum_length[(edge_index + 1) % self.len()],
            };
        }
        ArcPosition { edge_index, t, s }
    }

    pub fn point_at(&self, pos: &ArcPosition) -> Point3 {
        self.edge(pos.edge_index).point_at(pos.t)
    }

    /// Checks that `pos` refers to this knot and its two encodings agree.
    pub fn validate_position(&self, pos: &ArcPosition) -> Result<()> {
        if pos.edge_index >= self.len() || !(0.0..=1.0).contains(&pos.t) {
            return Err(Error::InvalidPosition(format!("{pos:?}")));
        }
        if !(0.0..self.total_length).contains(&pos.s) {
            return Err(Error::InvalidPosition(format!("arclength {} out of range", pos.s)));
        }
        let expected = self.cum_length[pos.edge_index] + pos.t * self.edge_length(pos.edge_index);
        let gap = (expected - pos.s).abs().min((expected - pos.s - self.total_length).abs());
        if gap > 1e-9 * self.total_length {
            return Err(Error::InvalidPosition(format!(
                "arclength {} inconsistent with edge {} t {}",
                pos.s, pos.edge_index, pos.t
            )));
        }
        Ok(())
    }

    /// Same curve traversed in the opposite direction.
    pub fn reversed(&self) -> PolyKnot {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        PolyKnot::new(vertices).expect("reversal preserves validity")
    }

    pub fn centroid(&self) -> Point3 {
        let sum = self.vertices.iter().fold(Vec3::zeros(), |acc, p| acc + p.coords);
        Point3::from(sum / self.len() as f64)
    }

    pub fn bbox_diagonal(&self) -> f64 {
        bbox_diagonal(self.vertices.iter())
    }
}

pub(crate) fn bbox_diagonal<'a>(points: impl Iterator<Item = &'a Point3>) -> f64 {
    let mut lo = Vec3::repeat(f64::INFINITY);
    let mut hi = Vec3::repeat(f64::NEG_INFINITY);
    for p in points {
        lo = lo.inf(&p.coords);
        hi = hi.sup(&p.coords);
    }
    (hi - lo).norm()
}

/// Length of the oriented arc from `u` to `v`, in `[0, total_length)`.
pub fn arc_length(knot: &PolyKnot, u: &ArcPosition, v: &ArcPosition) -> Result<f64> {
    knot.validate_position(u)?;
    knot.validate_position(v)?;
    Ok(oriented_gap(u.s, v.s, knot.total_length()))
}

/// `(to - from) mod total`, in `[0, total)`.
pub(crate) fn oriented_gap(from: f64, to: f64, total: f64) -> f64 {
    let d = (to - from).rem_euclid(total);
    if d >= total {
        0.0
    } else {
        d
    }
}

/// `x -> scale * rotation * x + translation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Similarity {
    pub rotation: Rotation3<f64>,
    pub scale: f64,
    pub translation: Vec3,
}

impl Similarity {
    pub fn new(rotation: Rotation3<f64>, scale: f64, translation: Vec3) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidScale(scale));
        }
        let m: &Matrix3<f64> = rotation.matrix();
        let orth = (m.transpose() * m - Matrix3::identity()).abs().max();
        if orth > 1e-9 || (m.determinant() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidRotation);
        }
        Ok(Self {
            rotation,
            scale,
            translation,
        })
    }

    pub fn identity() -> Self {
        Self {
            rotation: Rotation3::identity(),
            scale: 1.0,
            translation: Vec3::zeros(),
        }
    }

    pub fn apply(&self, p: &Point3) -> Point3 {
        Point3::from(self.rotation * p.coords * self.scale + self.translation)
    }
}

pub fn similarity_transform(
    knot: &PolyKnot,
    rotation: Rotation3<f64>,
    scale: f64,
    translation: Vec3,
) -> Result<PolyKnot> {
    let sim = Similarity::new(rotation, scale, translation)?;
    Ok(knot.transformed(&sim))
}

impl PolyKnot {
    pub fn transformed(&self, sim: &Similarity) -> PolyKnot {
        PolyKnot::new(self.vertices.iter().map(|p| sim.apply(p)).collect())
            .expect("similarities preserve validity")
    }

    pub fn scaled(&self, factor: f64) -> Result<PolyKnot> {
        similarity_transform(self, Rotation3::identity(), factor, Vec3::zeros())
    }
}
