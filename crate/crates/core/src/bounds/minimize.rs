//! Bracketed golden-section minimization of the one-variable bound terms.

use serde::{Deserialize, Serialize};

use super::functions::{f_unchecked, g_unchecked};

/// Search interval shared by all bound terms.
pub const BRACKET: (f64, f64) = (1.0, 4.0);
/// Step of the companion grid scan.
pub const GRID_STEP: f64 = 1e-4;
/// Target width of the final golden-section bracket.
pub const ARG_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimizationRecord {
    pub label: String,
    pub argmin: f64,
    pub min_value: f64,
    /// Interval that was searched.
    pub bracket: (f64, f64),
    /// Width of the final golden-section bracket.
    pub tolerance: f64,
    pub grid_argmin: f64,
    pub grid_min: f64,
    /// Number of local minima among the grid samples, endpoints included.
    pub grid_local_minima: usize,
}

/// Golden-section search on `[lo, hi]`; returns `(argmin, min, final width)`.
pub fn golden_section(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    let (x, v) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    (x, v, hi - lo)
}

/// Grid scan followed by golden-section refinement around the best grid
/// point. Bracket endpoints are evaluated explicitly, which catches minima
/// on the boundary of the domain.
pub fn minimize_bracketed(label: &str, f: impl Fn(f64) -> f64, bracket: (f64, f64)) -> MinimizationRecord {
    let (lo, hi) = bracket;
    let steps = ((hi - lo) / GRID_STEP).round() as usize;
    let samples: Vec<(f64, f64)> = (0..=steps)
        .map(|k| {
            let x = if k == steps { hi } else { lo + k as f64 * GRID_STEP };
            (x, f(x))
        })
        .collect();
    let (gi, &(grid_argmin, grid_min)) = samples
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .expect("non-empty grid");
    let interior = samples.windows(3).filter(|w| w[1].1 < w[0].1 && w[1].1 <= w[2].1).count();
    let grid_local_minima = interior
        + usize::from(samples[0].1 <= samples[1].1)
        + usize::from(samples[steps].1 < samples[steps - 1].1);

    let local_lo = samples[gi.saturating_sub(1)].0;
    let local_hi = samples[(gi + 1).min(steps)].0;
    let (mut argmin, mut min_value, tolerance) = golden_section(&f, local_lo, local_hi, ARG_TOL);
    for x in [local_lo, local_hi, grid_argmin] {
        let v = f(x);
        if v <= min_value {
            argmin = x;
            min_value = v;
        }
    }

    MinimizationRecord {
        label: label.to_string(),
        argmin,
        min_value,
        bracket,
        tolerance,
        grid_argmin,
        grid_min,
        grid_local_minima,
    }
}

/// The four one-variable minimizations behind the knot bounds:
/// `f`, `f + g`, `g + r` and `2f + g + r` over `r` in `[1, 4]`.
pub fn minimize_bound_terms() -> Vec<MinimizationRecord> {
    vec![
        minimize_bracketed("f", f_unchecked, BRACKET),
        minimize_bracketed("f+g", |r| f_unchecked(r) + g_unchecked(r), BRACKET),
        minimize_bracketed("g+r", |r| g_unchecked(r) + r, BRACKET),
        minimize_bracketed("2f+g+r", |r| 2.0 * f_unchecked(r) + g_unchecked(r) + r, BRACKET),
    ]
}

/// Minimum of `2f(r) + g(r) + r`, the middle term of the alternating bound.
pub fn alternating_middle_minimum() -> MinimizationRecord {
    minimize_bracketed("2f+g+r", |r| 2.0 * f_unchecked(r) + g_unchecked(r) + r, BRACKET)
}
