//! Ropelength lower bounds from quadrisecants.
//!
//! All bounds are stated for a knot rescaled to unit thickness, where
//! ropelength equals length.

mod functions;
mod minimize;
mod verify;

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrisecant::OrderType;

pub use functions::{essential_arc_min_length, f, g, long_arc_bound, m, m_chord, m_threshold, m_wrap};
pub(crate) use functions::{f_unchecked, g_unchecked};
pub use minimize::{
    alternating_middle_minimum, golden_section, minimize_bound_terms, minimize_bracketed, MinimizationRecord, ARG_TOL,
    BRACKET, GRID_STEP,
};
pub use verify::{verify_arc_inequalities, ArcInequalityReport, InequalityCheck, Tier, MARGIN_SLACK, UNIT_THICKNESS_TOL};

/// Closed forms of the bounds, evaluated in double precision.
pub mod constants {
    use std::f64::consts::PI;

    /// Minimum of `f + g`, at `r = 2`.
    pub fn min_f_plus_g() -> f64 {
        7.0 * PI / 6.0 + 3f64.sqrt()
    }

    /// Minimum of `g + r`, at `r = 2`.
    pub fn min_g_plus_r() -> f64 {
        PI + 2.0
    }

    /// Essential simple quadrisecant.
    pub fn simple() -> f64 {
        10.0 * PI / 3.0 + 2.0 * 3f64.sqrt() + 2.0
    }

    /// Essential flipped quadrisecant; the weakest of the three.
    pub fn flipped() -> f64 {
        10.0 * PI / 3.0 + 2.0 * 3f64.sqrt()
    }

    pub fn link_aaab() -> f64 {
        7.0 * PI / 3.0 + 2.0 * 3f64.sqrt()
    }

    pub fn link_aaba() -> f64 {
        8.0 * PI / 3.0 + 1.0 + 3f64.sqrt()
    }

    pub fn link_abba() -> f64 {
        2.0 * PI + 2.0
    }

    /// Published decimal check values.
    pub const SIMPLE_QUOTED: f64 = 15.936;
    pub const ALTERNATING_QUOTED: f64 = 15.66;
    pub const MIDDLE_TERM_QUOTED: f64 = 9.3774;
    pub const MIDDLE_ARGMIN_QUOTED: f64 = 1.00305;
}

/// Essential alternating quadrisecant: `2 pi + min(2f + g + r)`.
pub fn alternating_constant() -> f64 {
    TAU + alternating_middle_minimum().min_value
}

/// Unconditional bound from the number of reversed trisecants.
pub fn quadbd_bound(ty: OrderType) -> f64 {
    match ty {
        OrderType::Simple => PI,
        OrderType::Flipped => TAU,
        OrderType::Alternating => 3.0 * PI,
    }
}

/// A lower bound with its additive breakdown.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub order_type: OrderType,
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub essential_assumed: bool,
    pub lower_bound: f64,
    pub term_breakdown: Vec<(String, f64)>,
    pub preconditions_met: bool,
    pub violations: Vec<String>,
}

impl BoundCertificate {
    /// Whether the bound may be relied on (all preconditions hold).
    pub fn is_valid(&self) -> bool {
        self.essential_assumed && self.preconditions_met
    }
}

/// `f` extended by its boundary value below 1, used only for certificates
/// whose preconditions already failed.
fn f_clamped(r: f64) -> f64 {
    f_unchecked(r.max(1.0))
}

fn terms(ty: OrderType, r: f64, s: f64, t: f64) -> [(&'static str, f64); 3] {
    match ty {
        OrderType::Simple => [
            ("g(r)+f(r)", g_unchecked(r) + f_clamped(r)),
            ("g(s)+s", g_unchecked(s) + s),
            ("g(t)+f(t)", g_unchecked(t) + f_clamped(t)),
        ],
        OrderType::Flipped => [
            ("g(r)+f(r)", g_unchecked(r) + f_clamped(r)),
            ("2f(s)", 2.0 * f_clamped(s)),
            ("g(t)+f(t)", g_unchecked(t) + f_clamped(t)),
        ],
        OrderType::Alternating => [
            ("2f(r)", 2.0 * f_clamped(r)),
            ("2f(s)+g(s)+s", 2.0 * f_clamped(s) + g_unchecked(s) + s),
            ("2f(t)", 2.0 * f_clamped(t)),
        ],
    }
}

/// Value of [`essential_bound`] without building a certificate.
pub fn essential_bound_value(ty: OrderType, r: f64, s: f64, t: f64) -> f64 {
    terms(ty, r, s, t).iter().map(|(_, v)| v).sum()
}

/// Ropelength lower bound for a knot with an essential quadrisecant of the
/// given type and segment lengths `r, s, t`.
///
/// Every bound requires `r, s, t >= 1`. When that fails the formula value is
/// still reported (with `f` held at `f(1)` below 1) but the certificate is
/// marked invalid.
pub fn essential_bound(ty: OrderType, r: f64, s: f64, t: f64) -> Result<BoundCertificate> {
    for (name, v) in [("r", r), ("s", s), ("t", t)] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::Domain {
                function: "essential_bound",
                value: v,
                domain: match name {
                    "r" => "r >= 0",
                    "s" => "s >= 0",
                    _ => "t >= 0",
                },
            });
        }
    }
    let violations: Vec<String> = [("r", r), ("s", s), ("t", t)]
        .iter()
        .filter(|(_, v)| *v < 1.0)
        .map(|(name, v)| format!("{name} = {v} < 1"))
        .collect();
    let term_breakdown: Vec<(String, f64)> =
        terms(ty, r, s, t).iter().map(|(label, v)| (label.to_string(), *v)).collect();
    let lower_bound = term_breakdown.iter().map(|(_, v)| v).sum();
    Ok(BoundCertificate {
        order_type: ty,
        r,
        s,
        t,
        essential_assumed: true,
        lower_bound,
        term_breakdown,
        preconditions_met: violations.is_empty(),
        violations,
    })
}

/// Component labels of a link quadrisecant, in line order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkPattern {
    pub labels: [char; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LinkPatternClass {
    Aaab,
    Aaba,
    Abba,
    Abca,
    Unhandled,
}

impl LinkPattern {
    pub fn new(labels: [char; 4]) -> Self {
        Self { labels }
    }

    /// Relabels by first occurrence, e.g. `XYYX -> ABBA`.
    fn canonical(labels: [char; 4]) -> String {
        let mut seen: Vec<char> = Vec::new();
        labels
            .iter()
            .map(|c| {
                let idx = seen.iter().position(|x| x == c).unwrap_or_else(|| {
                    seen.push(*c);
                    seen.len() - 1
                });
                (b'A' + idx as u8) as char
            })
            .collect()
    }

    /// Class up to relabeling and line reversal, with the bounded component's original label.
    pub fn classify(&self) -> (LinkPatternClass, Option<char>) {
        let mut reversed = self.labels;
        reversed.reverse();
        for (labels, canon) in [(self.labels, Self::canonical(self.labels)), (reversed, Self::canonical(reversed))] {
            let class = match canon.as_str() {
                "AAAB" => LinkPatternClass::Aaab,
                "AABA" => LinkPatternClass::Aaba,
                "ABBA" => LinkPatternClass::Abba,
                "ABCA" => LinkPatternClass::Abca,
                _ => continue,
            };
            return (class, Some(labels[0]));
        }
        (LinkPatternClass::Unhandled, None)
    }
}

impl std::fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.labels.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

impl std::str::FromStr for LinkPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.trim().chars().collect();
        match chars.as_slice() {
            [a, b, c, d] if chars.iter().all(|c| c.is_alphanumeric()) => Ok(Self::new([*a, *b, *c, *d])),
            _ => Err(Error::InvalidPattern(s.to_string())),
        }
    }
}

/// Length bound on the component `A` met by an essential link quadrisecant.
pub fn link_component_bound(pattern: &LinkPattern) -> Result<f64> {
    match pattern.classify().0 {
        LinkPatternClass::Aaab => Ok(constants::link_aaab()),
        LinkPatternClass::Aaba => Ok(constants::link_aaba()),
        LinkPatternClass::Abba | LinkPatternClass::Abca => Ok(constants::link_abba()),
        LinkPatternClass::Unhandled => Err(Error::NoBoundKnown(pattern.to_string())),
    }
}

/// Ropelength bound `2 pi k` for a nonsplit link with `k` components.
pub fn nonsplit_link_bound(k: i64) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain {
            function: "nonsplit_link_bound",
            value: k as f64,
            domain: "k >= 1",
        });
    }
    Ok(TAU * k as f64)
}
