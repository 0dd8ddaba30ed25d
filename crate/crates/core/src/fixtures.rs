//! Bundled sample curves.

use std::f64::consts::{PI, TAU};

use crate::geometry::{Point3, PolyKnot};

fn sample(n: usize, curve: impl Fn(f64) -> Point3) -> PolyKnot {
    PolyKnot::new((0..n).map(|k| curve(TAU * k as f64 / n as f64)).collect())
        .expect("fixture curves are valid polygons")
}

pub fn unit_square() -> PolyKnot {
    PolyKnot::from_coords(&[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0]])
        .expect("valid square")
}

/// Regular planar n-gon inscribed in the unit circle.
pub fn regular_polygon(n: usize) -> PolyKnot {
    sample(n, |u| Point3::new(u.cos(), u.sin(), 0.0))
}

/// Regular planar n-gon with the given side length.
pub fn regular_polygon_with_side(n: usize, side: f64) -> PolyKnot {
    let radius = side / (2.0 * (PI / n as f64).sin());
    sample(n, |u| Point3::new(radius * u.cos(), radius * u.sin(), 0.0))
}

/// The convex planar 20-gon fixture.
pub fn convex_20gon() -> PolyKnot {
    regular_polygon(20)
}

/// `(2 + cos 3u)(cos 2u, sin 2u, 0) + (0, 0, sin 3u)`.
pub fn trefoil(n: usize) -> PolyKnot {
    sample(n, |u| {
        let r = 2.0 + (3.0 * u).cos();
        Point3::new(r * (2.0 * u).cos(), r * (2.0 * u).sin(), (3.0 * u).sin())
    })
}

/// `((2 + cos 2u) cos 3u, (2 + cos 2u) sin 3u, sin 4u)`.
pub fn figure_eight(n: usize) -> PolyKnot {
    sample(n, |u| {
        let r = 2.0 + (2.0 * u).cos();
        Point3::new(r * (3.0 * u).cos(), r * (3.0 * u).sin(), (4.0 * u).sin())
    })
}

/// An unknotted bean-shaped curve with a dent, whose x-axis is a simple
/// quadrisecant. The height `z = 0.3 x y` vanishes on the x-axis and keeps
/// the curve out of any single plane.
pub fn dented_unknot(n: usize) -> PolyKnot {
    sample(n, |u| {
        let x = 2.0 * u.cos();
        let dent = (-((u - PI / 2.0) / 0.5).powi(2)).exp();
        let y = u.sin() - 1.6 * dent + 0.05;
        Point3::new(x, y, 0.3 * x * y)
    })
}

/// Named fixtures exposed to the command line.
pub fn by_name(name: &str) -> Option<PolyKnot> {
    match name {
        "trefoil" => Some(trefoil(64)),
        "figure-eight" => Some(figure_eight(32)),
        "convex-20gon" => Some(convex_20gon()),
        "square" => Some(unit_square()),
        "dented-unknot" => Some(dented_unknot(96)),
        _ => None,
    }
}

pub const NAMES: [&str; 5] = ["trefoil", "figure-eight", "convex-20gon", "square", "dented-unknot"];
