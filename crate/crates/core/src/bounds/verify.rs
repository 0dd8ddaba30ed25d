//! Arclength inequalities along a quadrisecant of a unit-thickness knot.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::functions::{f_unchecked, g_unchecked};
use super::{alternating_constant, constants, essential_bound_value, quadbd_bound};
use crate::error::{Error, Result};
use crate::geometry::oriented_gap;
use crate::quadrisecant::{OrderType, Quadrisecant};
use crate::thickness::thickness_and_ropelength;

/// Allowed deviation of the measured thickness from 1.
pub const UNIT_THICKNESS_TOL: f64 = 1e-6;
/// Slack below which a negative margin still counts as a pass.
pub const MARGIN_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tier {
    /// Follows from the order type alone.
    Unconditional,
    /// Requires the quadrisecant to be essential.
    Conditional,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub tier: Tier,
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs - rhs`
    pub margin: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArcInequalityReport {
    pub order_type: OrderType,
    /// The knot was read backwards to bring the points into the standard cyclic order.
    pub orientation_reversed: bool,
    pub total_length: f64,
    /// The four arcs between consecutive points, named by their endpoints.
    pub arcs: Vec<(String, f64)>,
    pub checks: Vec<InequalityCheck>,
}

impl ArcInequalityReport {
    pub fn tier_passed(&self, tier: Tier) -> bool {
        self.checks.iter().filter(|c| c.tier == tier).all(|c| c.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn arc(&self, name: &str) -> Option<f64> {
        self.arcs.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }
}

fn check(tier: Tier, name: impl Into<String>, lhs: f64, rhs: f64) -> InequalityCheck {
    let margin = lhs - rhs;
    InequalityCheck {
        tier,
        name: name.into(),
        lhs,
        rhs,
        margin,
        passed: margin >= -MARGIN_SLACK,
    }
}

/// Letters of the standard cyclic order for each type.
fn cyclic_pattern(ty: OrderType) -> [usize; 4] {
    match ty {
        OrderType::Simple => [0, 1, 2, 3],
        OrderType::Flipped => [0, 1, 3, 2],
        OrderType::Alternating => [0, 2, 1, 3],
    }
}

const LETTERS: [char; 4] = ['a', 'b', 'c', 'd'];

/// Checks the arc decompositions that underlie the quadrisecant bounds on a
/// knot normalized to unit thickness.
///
/// Tier 1 holds for every quadrisecant of the given order type. Tier 2
/// additionally assumes the quadrisecant is essential.
pub fn verify_arc_inequalities(knot: &crate::geometry::PolyKnot, q: &Quadrisecant) -> Result<ArcInequalityReport> {
    let report = thickness_and_ropelength(knot)?;
    if (report.thickness - 1.0).abs() > UNIT_THICKNESS_TOL {
        return Err(Error::NotUnitThickness(report.thickness));
    }
    let total = knot.total_length();
    let ty = q.order_type;
    let pattern = cyclic_pattern(ty);

    let forward = q.positions.map(|p| p.s);
    let backward = forward.map(|s| (total - s).rem_euclid(total));
    let follows = |coords: &[f64; 4]| {
        // the point reached first when leaving `a` forward
        let next = (1..4)
            .min_by(|&x, &y| oriented_gap(coords[0], coords[x], total).total_cmp(&oriented_gap(coords[0], coords[y], total)))
            .expect("three candidates");
        next == pattern[1]
    };
    let (coords, orientation_reversed) = if follows(&forward) {
        (forward, false)
    } else {
        (backward, true)
    };

    let arcs: Vec<(String, f64)> = (0..4)
        .map(|k| {
            let (x, y) = (pattern[k], pattern[(k + 1) % 4]);
            (
                format!("{}{}", LETTERS[x], LETTERS[y]),
                oriented_gap(coords[x], coords[y], total),
            )
        })
        .collect();
    let arc = |name: &str| arcs.iter().find(|(n, _)| n == name).map(|(_, v)| *v).expect("arc exists");

    let (r, s, t) = (q.r, q.s, q.t);
    let fc = |x: f64| f_unchecked(x.max(1.0));
    let mut checks = Vec::new();

    use Tier::*;
    match ty {
        OrderType::Simple => {
            checks.push(check(Unconditional, "len(da) >= pi", arc("da"), PI));
        }
        OrderType::Flipped => {
            checks.push(check(Unconditional, "len(ca) >= pi", arc("ca"), PI));
            checks.push(check(Unconditional, "len(bd) >= pi", arc("bd"), PI));
        }
        OrderType::Alternating => {
            checks.push(check(Unconditional, "len(ac) >= pi", arc("ac"), PI));
            checks.push(check(Unconditional, "len(bd) >= pi", arc("bd"), PI));
            checks.push(check(Unconditional, "len(da) >= pi", arc("da"), PI));
        }
    }
    checks.push(check(Unconditional, "length >= reversed-trisecant bound", total, quadbd_bound(ty)));

    checks.push(check(Conditional, "r >= 1", r, 1.0));
    checks.push(check(Conditional, "s >= 1", s, 1.0));
    checks.push(check(Conditional, "t >= 1", t, 1.0));
    match ty {
        OrderType::Simple => {
            checks.push(check(Conditional, "len(ab) >= g(r)", arc("ab"), g_unchecked(r)));
            checks.push(check(Conditional, "len(bc) >= g(s)", arc("bc"), g_unchecked(s)));
            checks.push(check(Conditional, "len(cd) >= g(t)", arc("cd"), g_unchecked(t)));
            checks.push(check(Conditional, "len(da) >= f(r)+s+f(t)", arc("da"), fc(r) + s + fc(t)));
        }
        OrderType::Flipped => {
            checks.push(check(Conditional, "len(ab) >= g(r)", arc("ab"), g_unchecked(r)));
            checks.push(check(Conditional, "len(dc) >= g(t)", arc("dc"), g_unchecked(t)));
            checks.push(check(Conditional, "len(bd) >= f(s)+f(t)", arc("bd"), fc(s) + fc(t)));
            checks.push(check(Conditional, "len(ca) >= f(r)+f(s)", arc("ca"), fc(r) + fc(s)));
        }
        OrderType::Alternating => {
            checks.push(check(Conditional, "len(ac) >= f(r)+f(s)", arc("ac"), fc(r) + fc(s)));
            checks.push(check(Conditional, "len(cb) >= g(s)", arc("cb"), g_unchecked(s)));
            checks.push(check(Conditional, "len(bd) >= f(s)+f(t)", arc("bd"), fc(s) + fc(t)));
            checks.push(check(Conditional, "len(da) >= f(r)+s+f(t)", arc("da"), fc(r) + s + fc(t)));
        }
    }
    checks.push(check(
        Conditional,
        "length >= essential bound at (r,s,t)",
        total,
        essential_bound_value(ty, r, s, t),
    ));
    let type_constant = match ty {
        OrderType::Simple => constants::simple(),
        OrderType::Flipped => constants::flipped(),
        OrderType::Alternating => alternating_constant(),
    };
    checks.push(check(Conditional, "length >= essential constant", total, type_constant));

    Ok(ArcInequalityReport {
        order_type: ty,
        orientation_reversed,
        total_length: total,
        arcs,
        checks,
    })
}
