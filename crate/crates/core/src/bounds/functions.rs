//! Minimum-length functions for arcs of a unit-thickness knot.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};

/// Length of the shortest path from a point at distance `r >= 1` from a
/// unit ball's center to the antipodal ray: tangent segment plus arc.
pub fn f(r: f64) -> Result<f64> {
    if !(r >= 1.0 && r.is_finite()) {
        return Err(Error::Domain {
            function: "f",
            value: r,
            domain: "r >= 1",
        });
    }
    Ok(f_unchecked(r))
}

#[inline]
pub(crate) fn f_unchecked(r: f64) -> f64 {
    // arcsin(1/r) = atan2(1, sqrt(r^2 - 1)), which stays accurate near r = 1
    let w = ((r - 1.0) * (r + 1.0)).sqrt();
    w + 1f64.atan2(w)
}

/// Minimum length of an essential arc whose endpoints are `r` apart.
pub fn g(r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::Domain {
            function: "g",
            value: r,
            domain: "r >= 0",
        });
    }
    Ok(g_unchecked(r))
}

#[inline]
pub(crate) fn g_unchecked(r: f64) -> f64 {
    if r <= 2.0 {
        TAU - 2.0 * (r / 2.0).asin()
    } else {
        PI
    }
}

/// Angle above which the shortest path wraps around the ball.
pub fn m_threshold(r: f64, s: f64) -> Result<f64> {
    check_ge_one("m", r)?;
    check_ge_one("m", s)?;
    Ok((1.0 / r).acos() + (1.0 / s).acos())
}

/// Chord branch of [`m`].
pub fn m_chord(r: f64, s: f64, theta: f64) -> f64 {
    (r * r + s * s - 2.0 * r * s * theta.cos()).max(0.0).sqrt()
}

/// Wrap branch of [`m`].
pub fn m_wrap(r: f64, s: f64, theta: f64) -> f64 {
    f_unchecked(r) + f_unchecked(s) + (theta - PI)
}

/// Minimum length of a path between points at distances `r`, `s` from the
/// center of a unit ball, seen from the center at angle `theta`, that
/// avoids the open ball.
pub fn m(r: f64, s: f64, theta: f64) -> Result<f64> {
    let threshold = m_threshold(r, s)?;
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::Domain {
            function: "m",
            value: theta,
            domain: "0 <= theta <= pi",
        });
    }
    Ok(if theta <= threshold {
        m_chord(r, s, theta)
    } else {
        m_wrap(r, s, theta)
    })
}

fn check_ge_one(function: &'static str, x: f64) -> Result<()> {
    if x >= 1.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            value: x,
            domain: ">= 1",
        })
    }
}

/// Lower bound `g(d)` on the length of an essential arc with endpoint gap `d`.
pub fn essential_arc_min_length(d: f64) -> Result<f64> {
    g(d)
}

/// Lower bound `f(r) + s + f(t)` on the long arc `da` of a quadrisecant
/// whose far arc avoids the balls around `b` and `c`.
pub fn long_arc_bound(r: f64, s: f64, t: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::Domain {
            function: "long_arc_bound",
            value: s,
            domain: "s >= 0",
        });
    }
    Ok(f(r)? + s + f(t)?)
}
