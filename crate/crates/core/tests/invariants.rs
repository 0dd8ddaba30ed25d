use std::f64::consts::PI;

use nalgebra::Rotation3;
use proptest::prelude::*;

use ropelength::bounds::{
    alternating_constant, constants, essential_bound, essential_bound_value, link_component_bound, quadbd_bound,
    verify_arc_inequalities, LinkPattern, Tier,
};
use ropelength::fixtures::{dented_unknot, regular_polygon, trefoil};
use ropelength::quadrisecant::{check_quadrisecant, DEFAULT_TOL};
use ropelength::thickness::normalize_to_unit_thickness;
use ropelength::{find_quadrisecants, thickness_and_ropelength, OrderType, Point3, PolyKnot, Vec3};

fn rotation() -> impl Strategy<Value = Rotation3<f64>> {
    (-PI..PI, -PI..PI, -PI..PI).prop_map(|(x, y, z)| Rotation3::new(Vec3::new(x, y, z) / 2.0))
}

fn log_scale() -> impl Strategy<Value = f64> {
    (-3.0f64..3.0).prop_map(|e| 10f64.powf(e))
}

fn translation() -> impl Strategy<Value = Vec3> {
    (-50.0..50.0f64, -50.0..50.0f64, -50.0..50.0f64).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn jittered_polygon() -> impl Strategy<Value = PolyKnot> {
    (6usize..24, prop::collection::vec((-0.05f64..0.05, -0.05f64..0.05, -0.2f64..0.2), 24)).prop_map(|(n, jitter)| {
        let pts: Vec<Point3> = regular_polygon(n)
            .vertices()
            .iter()
            .zip(&jitter)
            .map(|(p, (dx, dy, dz))| Point3::new(p.x + dx, p.y + dy, *dz))
            .collect();
        PolyKnot::new(pts).unwrap()
    })
}

fn type_constant(ty: OrderType) -> f64 {
    match ty {
        OrderType::Simple => constants::simple(),
        OrderType::Flipped => constants::flipped(),
        OrderType::Alternating => alternating_constant(),
    }
}

/// Types and thickness-relative (r, s, t) of every quadrisecant, in a canonical order.
fn sorted_signature(knot: &PolyKnot) -> Vec<(OrderType, [i64; 3])> {
    let scan = find_quadrisecants(knot, DEFAULT_TOL);
    let tau = thickness_and_ropelength(knot).unwrap().thickness;
    let mut sig: Vec<(OrderType, [i64; 3])> = scan
        .quadrisecants
        .iter()
        .map(|q| {
            let [r, s, t] = [q.r, q.s, q.t].map(|x| (x / tau * 1e5).round() as i64);
            // reading the line backwards swaps r and t
            (q.order_type, [r.min(t), s, r.max(t)])
        })
        .collect();
    sig.sort_by_key(|(ty, rst)| (*ty as u8, *rst));
    sig
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ropelength_is_similarity_invariant(knot in jittered_polygon(), rot in rotation(), k in log_scale(), tr in translation()) {
        let before = thickness_and_ropelength(&knot).unwrap();
        let moved = ropelength::geometry::similarity_transform(&knot, rot, k, tr).unwrap();
        let after = thickness_and_ropelength(&moved).unwrap();
        prop_assert!((after.ropelength - before.ropelength).abs() <= 1e-9 * before.ropelength);
        prop_assert!((after.thickness - k * before.thickness).abs() <= 1e-9 * k * before.thickness);
    }

    #[test]
    fn thickness_is_the_smaller_term(knot in jittered_polygon()) {
        let r = thickness_and_ropelength(&knot).unwrap();
        prop_assert!(r.thickness <= 2.0 * r.min_rad + 1e-15);
        prop_assert!(r.thickness <= r.dcsd + 1e-15);
        prop_assert!(r.thickness == 2.0 * r.min_rad || r.thickness == r.dcsd);
        prop_assert!(r.ropelength >= PI - 1e-12);
    }

    #[test]
    fn normalization_reaches_unit_thickness(knot in jittered_polygon()) {
        let unit = normalize_to_unit_thickness(&knot).unwrap();
        let r = thickness_and_ropelength(&unit).unwrap();
        prop_assert!((r.thickness - 1.0).abs() < 1e-12);
        prop_assert!((r.ropelength - thickness_and_ropelength(&knot).unwrap().ropelength).abs() < 1e-9);
    }

    #[test]
    fn essential_bound_dominates_type_constant(r in 1.0..6.0f64, s in 1.0..6.0f64, t in 1.0..6.0f64) {
        for ty in OrderType::ALL {
            let cert = essential_bound(ty, r, s, t).unwrap();
            prop_assert!(cert.is_valid());
            prop_assert!(cert.lower_bound >= type_constant(ty) - 1e-9);
            prop_assert!(cert.lower_bound > quadbd_bound(ty));
            prop_assert_eq!(cert.lower_bound, essential_bound_value(ty, r, s, t));
            let sum: f64 = cert.term_breakdown.iter().map(|(_, v)| v).sum();
            prop_assert!((sum - cert.lower_bound).abs() <= 1e-12 * cert.lower_bound);
        }
    }

    #[test]
    fn link_patterns_are_relabeling_and_reversal_invariant(labels in proptest::array::uniform4(0u8..3), perm in 0usize..6) {
        let alphabets = [['A', 'B', 'C'], ['A', 'C', 'B'], ['B', 'A', 'C'], ['B', 'C', 'A'], ['C', 'A', 'B'], ['C', 'B', 'A']];
        let base = LinkPattern::new(labels.map(|l| ['A', 'B', 'C'][l as usize]));
        let relabeled = LinkPattern::new(labels.map(|l| alphabets[perm][l as usize]));
        let mut rev = labels;
        rev.reverse();
        let reversed = LinkPattern::new(rev.map(|l| ['A', 'B', 'C'][l as usize]));
        let b = link_component_bound(&base).ok();
        prop_assert_eq!(link_component_bound(&relabeled).ok(), b);
        prop_assert_eq!(link_component_bound(&reversed).ok(), b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn quadrisecants_are_similarity_invariant(rot in rotation(), k in log_scale(), tr in translation()) {
        let knot = trefoil(40);
        let moved = ropelength::geometry::similarity_transform(&knot, rot, k, tr).unwrap();
        prop_assert_eq!(sorted_signature(&knot), sorted_signature(&moved));
    }
}

#[test]
fn quadrisecant_types_survive_reversal() {
    let knot = trefoil(40);
    let forward = sorted_signature(&knot);
    assert!(!forward.is_empty());
    let backward = sorted_signature(&knot.reversed());
    let count = |sig: &[(OrderType, [i64; 3])], ty| sig.iter().filter(|(t, _)| *t == ty).count();
    for ty in OrderType::ALL {
        assert_eq!(count(&forward, ty), count(&backward, ty));
    }
}

#[test]
fn trefoil_pipeline() {
    let knot = trefoil(64);
    let report = thickness_and_ropelength(&knot).unwrap();
    let unit = normalize_to_unit_thickness(&knot).unwrap();
    let scan = find_quadrisecants(&unit, DEFAULT_TOL);
    assert!(scan.count(OrderType::Alternating) >= 1);
    for q in &scan.quadrisecants {
        check_quadrisecant(&unit, q, 1e-6).unwrap();
        let arcs = verify_arc_inequalities(&unit, q).unwrap();
        assert!(arcs.tier_passed(Tier::Unconditional), "{arcs:?}");
        assert!(report.ropelength >= quadbd_bound(q.order_type));
        if arcs.tier_passed(Tier::Conditional) {
            assert!(report.ropelength >= essential_bound_value(q.order_type, q.r, q.s, q.t) - 1e-9);
        }
    }
}

#[test]
fn dented_unknot_has_simple_quadrisecants_satisfying_unconditional_tier() {
    let unit = normalize_to_unit_thickness(&dented_unknot(96)).unwrap();
    let scan = find_quadrisecants(&unit, DEFAULT_TOL);
    let simple: Vec<_> = scan.quadrisecants.iter().filter(|q| q.order_type == OrderType::Simple).collect();
    assert!(!simple.is_empty());
    for q in simple {
        let arcs = verify_arc_inequalities(&unit, q).unwrap();
        assert!(arcs.tier_passed(Tier::Unconditional));
        assert!(arcs.arc("da").unwrap() >= PI);
    }
}

#[test]
fn arc_check_requires_unit_thickness() {
    let knot = trefoil(64);
    let scan = find_quadrisecants(&knot, DEFAULT_TOL);
    let q = scan.quadrisecants.first().expect("trefoil has quadrisecants");
    assert!(verify_arc_inequalities(&knot, q).is_err());
}
