//! Brute-force reference implementations used to validate the analytic code.

mod paths;
mod sampler;

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{long_arc_bound, m, m_chord, m_threshold, m_wrap};
use crate::error::{Error, Result};
use crate::geometry::{Point3, Segment, Vec3};
use crate::quadrisecant::{transversals_of_four_segments, TransversalLine, Transversals};

pub use paths::{shortest_path_avoiding_ball_oracle, two_ball_path_oracle};
pub use sampler::{sampled_transversals, SAMPLER_TOL};

pub const DEFAULT_CIRCLE_DISCRETIZATION: usize = 4096;
pub const DEFAULT_SAMPLER_RESOLUTION: usize = 512;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleConfig {
    /// Nodes on each obstacle circle.
    pub circle_discretization: usize,
    /// Grid steps per segment parameter.
    pub sampler_resolution: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            circle_discretization: DEFAULT_CIRCLE_DISCRETIZATION,
            sampler_resolution: DEFAULT_SAMPLER_RESOLUTION,
            seed: DEFAULT_SEED,
        }
    }
}

impl OracleConfig {
    pub fn new(circle_discretization: usize, sampler_resolution: usize, seed: u64) -> Result<Self> {
        if circle_discretization < 16 {
            return Err(Error::InvalidConfig(format!(
                "circle_discretization must be at least 16, got {circle_discretization}"
            )));
        }
        if sampler_resolution < 8 {
            return Err(Error::InvalidConfig(format!(
                "sampler_resolution must be at least 8, got {sampler_resolution}"
            )));
        }
        Ok(Self {
            circle_discretization,
            sampler_resolution,
            seed,
        })
    }
}

/// Tolerance for `|m - oracle|` on the standard grid.
pub const M_ORACLE_TOL: f64 = 2e-3;
/// Tolerance for the long-arc bound against the two-ball oracle.
pub const TWO_BALL_TOL: f64 = 3e-3;
/// Tolerance for the two branches of `m` at the switch angle.
pub const BRANCH_CONTINUITY_TOL: f64 = 1e-10;

/// Comparison of `m` with the single-ball oracle on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MGridReport {
    /// Subdivisions of `r, s` in `[1, 3]` and of `theta` in `[0, pi]`.
    pub subdivisions: usize,
    pub points: usize,
    pub max_abs_error: f64,
    /// Smallest `oracle - m`; negative values mean the oracle undercut `m`.
    pub min_signed_error: f64,
    pub worst: (f64, f64, f64),
    pub passed: bool,
}

/// Grid values `{1, 1 + 2/k, ..., 3}` and `{0, pi/k, ..., pi}`.
pub fn m_grid(subdivisions: usize) -> Vec<(f64, f64, f64)> {
    let k = subdivisions.max(1);
    let radii: Vec<f64> = (0..=k).map(|i| 1.0 + 2.0 * i as f64 / k as f64).collect();
    let angles: Vec<f64> = (0..=k).map(|i| PI * i as f64 / k as f64).collect();
    let mut out = Vec::new();
    for &r in &radii {
        for &s in &radii {
            for &theta in &angles {
                out.push((r, s, theta));
            }
        }
    }
    out
}

pub fn check_m_against_oracle(subdivisions: usize, cfg: &OracleConfig) -> MGridReport {
    let grid = m_grid(subdivisions);
    let errors: Vec<((f64, f64, f64), f64)> = grid
        .par_iter()
        .map(|&(r, s, theta)| {
            let analytic = m(r, s, theta).expect("grid inside the domain");
            ((r, s, theta), shortest_path_avoiding_ball_oracle(r, s, theta, cfg) - analytic)
        })
        .collect();
    let mut max_abs_error = 0.0;
    let mut worst = grid[0];
    let mut min_signed_error = f64::INFINITY;
    for (p, e) in &errors {
        if e.abs() > max_abs_error {
            max_abs_error = e.abs();
            worst = *p;
        }
        min_signed_error = min_signed_error.min(*e);
    }
    MGridReport {
        subdivisions,
        points: grid.len(),
        max_abs_error,
        min_signed_error,
        worst,
        passed: max_abs_error <= M_ORACLE_TOL,
    }
}

/// Largest gap between the two branches of `m` at the switch angle over
/// `samples` random `(r, s)` in `[1, 5]^2` whose switch angle is at most `pi`.
pub fn branch_continuity(samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut taken = 0;
    while taken < samples {
        let r = rng.gen_range(1.0..5.0);
        let s = rng.gen_range(1.0..5.0);
        let th = m_threshold(r, s).expect("r, s >= 1");
        if th > PI {
            continue;
        }
        worst = worst.max((m_chord(r, s, th) - m_wrap(r, s, th)).abs());
        taken += 1;
    }
    worst
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoBallSpot {
    pub r: f64,
    pub s: f64,
    pub t: f64,
    pub analytic: f64,
    pub oracle: f64,
    pub error: f64,
    pub passed: bool,
}

/// Spots where the long-arc bound is compared with the two-ball oracle.
pub const TWO_BALL_SPOTS: [(f64, f64, f64); 4] = [(1.0, 1.0, 1.0), (2.0, 2.0, 2.0), (1.5, 3.0, 1.2), (3.0, 1.5, 2.5)];

pub fn check_two_ball_spots(cfg: &OracleConfig) -> Vec<TwoBallSpot> {
    TWO_BALL_SPOTS
        .iter()
        .map(|&(r, s, t)| {
            let analytic = long_arc_bound(r, s, t).expect("spots inside the domain");
            let oracle = two_ball_path_oracle(r, s, t, cfg);
            let error = oracle - analytic;
            TwoBallSpot {
                r,
                s,
                t,
                analytic,
                oracle,
                error,
                passed: error.abs() <= TWO_BALL_TOL,
            }
        })
        .collect()
}

/// A random test quadruple and whether it was built around a known transversal.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomQuadruple {
    pub segments: [Segment; 4],
    pub planted: Option<TransversalLine>,
}

fn random_unit(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v / n;
        }
    }
}

fn random_point(rng: &mut ChaCha8Rng) -> Point3 {
    Point3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Seeded quadruples: even indices are planted around a random line, odd
/// ones are four random segments in the cube `[-1, 1]^3`.
pub fn random_quadruples(count: usize, seed: u64) -> Vec<RandomQuadruple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            if k % 2 == 0 {
                let line = TransversalLine::through(random_point(&mut rng), random_unit(&mut rng));
                let mut params: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.5..1.5)).collect();
                params.sort_by(f64::total_cmp);
                let segments = std::array::from_fn(|i| {
                    let center = line.at(params[i] + 0.05 * i as f64);
                    let dir = random_unit(&mut rng);
                    let before = rng.gen_range(0.1..0.6);
                    let after = rng.gen_range(0.1..0.6);
                    Segment {
                        start: center - dir * before,
                        end: center + dir * after,
                    }
                });
                RandomQuadruple {
                    segments,
                    planted: Some(line),
                }
            } else {
                let segments = std::array::from_fn(|_| {
                    let start = random_point(&mut rng);
                    let end = start + random_unit(&mut rng) * rng.gen_range(0.3..1.5);
                    Segment { start, end }
                });
                RandomQuadruple {
                    segments,
                    planted: None,
                }
            }
        })
        .collect()
}

/// Lines are equal if their angle is below this and each passes within this of the other's anchor.
pub const MATCH_TOL: f64 = 1e-6;

fn same_line(a: &TransversalLine, b: &TransversalLine) -> bool {
    a.angle_to(b) < MATCH_TOL && a.distance_to_point(&b.point) < MATCH_TOL && b.distance_to_point(&a.point) < MATCH_TOL
}

/// Whether a line meets one of the segments within `margin` of an endpoint,
/// where a closed-segment membership test is ill-conditioned.
fn touches_endpoint(line: &TransversalLine, segments: &[Segment; 4], margin: f64) -> bool {
    segments.iter().any(|s| {
        let (_, t) = line.segment_proximity(s);
        let slack = margin / s.length();
        t <= slack || t >= 1.0 - slack
    })
}

/// Agreement between the algebraic solver and the sampler.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CrossValidationReport {
    pub quadruples: usize,
    pub seed: u64,
    pub solver_lines: usize,
    pub oracle_lines: usize,
    pub matched: usize,
    /// Oracle lines the solver did not report.
    pub missed: usize,
    /// Solver lines the oracle did not confirm.
    pub spurious: usize,
    /// Unmatched lines touching a segment endpoint, excluded from `missed`/`spurious`.
    pub endpoint_ambiguous: usize,
    pub degenerate: usize,
    /// Planted lines the solver failed to recover.
    pub planted_missed: usize,
    /// Largest distance from a solver line to its four segments.
    pub max_solver_residual: f64,
    pub passed: bool,
}

pub fn cross_validate_transversals(count: usize, cfg: &OracleConfig) -> CrossValidationReport {
    let quads = random_quadruples(count, cfg.seed);
    let per_quad: Vec<CrossValidationReport> = quads
        .par_iter()
        .map(|q| {
            let mut rep = CrossValidationReport {
                quadruples: 1,
                ..Default::default()
            };
            let solver = match transversals_of_four_segments(&q.segments) {
                Transversals::Degenerate => {
                    rep.degenerate = 1;
                    return rep;
                }
                Transversals::Lines(lines) => lines,
            };
            let oracle = sampled_transversals(&q.segments, cfg);
            rep.solver_lines = solver.len();
            rep.oracle_lines = oracle.len();
            for l in &solver {
                let residual = q.segments.iter().map(|s| l.distance_to_segment(s)).fold(0.0, f64::max);
                rep.max_solver_residual = rep.max_solver_residual.max(residual);
            }
            let ambiguous = |l: &TransversalLine| touches_endpoint(l, &q.segments, 1e-6);
            for o in &oracle {
                if solver.iter().any(|l| same_line(l, o)) {
                    rep.matched += 1;
                } else if ambiguous(o) {
                    rep.endpoint_ambiguous += 1;
                } else {
                    rep.missed += 1;
                }
            }
            for l in &solver {
                if !oracle.iter().any(|o| same_line(l, o)) {
                    if ambiguous(l) {
                        rep.endpoint_ambiguous += 1;
                    } else {
                        rep.spurious += 1;
                    }
                }
            }
            if let Some(p) = &q.planted {
                if !solver.iter().any(|l| same_line(l, p)) {
                    rep.planted_missed = 1;
                }
            }
            rep
        })
        .collect();

    let mut total = per_quad.into_iter().fold(CrossValidationReport::default(), |mut acc, r| {
        acc.quadruples += r.quadruples;
        acc.solver_lines += r.solver_lines;
        acc.oracle_lines += r.oracle_lines;
        acc.matched += r.matched;
        acc.missed += r.missed;
        acc.spurious += r.spurious;
        acc.endpoint_ambiguous += r.endpoint_ambiguous;
        acc.degenerate += r.degenerate;
        acc.planted_missed += r.planted_missed;
        acc.max_solver_residual = acc.max_solver_residual.max(r.max_solver_residual);
        acc
    });
    total.seed = cfg.seed;
    total.passed = total.missed == 0 && total.spurious == 0 && total.planted_missed == 0;
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::f;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn config_validation() {
        assert!(OracleConfig::new(15, 512, 0).is_err());
        assert!(OracleConfig::new(16, 7, 0).is_err());
        assert!(OracleConfig::new(16, 8, 0).is_ok());
    }

    #[test]
    fn single_ball_examples() {
        let c = cfg();
        assert!((shortest_path_avoiding_ball_oracle(1.0, 1.0, PI, &c) - PI).abs() < 2e-3);
        assert!((shortest_path_avoiding_ball_oracle(2.0, 2.0, PI / 2.0, &c) - 8f64.sqrt()).abs() < 2e-3);
        assert_eq!(shortest_path_avoiding_ball_oracle(1.5, 1.5, 0.0, &c), 0.0);
    }

    #[test]
    fn oracle_never_undercuts_m() {
        let rep = check_m_against_oracle(4, &cfg());
        assert!(rep.min_signed_error >= -1e-9, "{rep:?}");
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn refinement_shrinks_error() {
        let coarse = OracleConfig::new(256, 8, 0).unwrap();
        let fine = OracleConfig::new(512, 8, 0).unwrap();
        let mut ratios = Vec::new();
        for (r, s, theta) in [(1.5, 2.0, PI), (3.0, 3.0, 3.0), (1.25, 2.75, 2.5)] {
            let exact = m(r, s, theta).unwrap();
            let e1 = shortest_path_avoiding_ball_oracle(r, s, theta, &coarse) - exact;
            let e2 = shortest_path_avoiding_ball_oracle(r, s, theta, &fine) - exact;
            assert!(e2 >= -1e-12 && e1 >= e2);
            if e2 > 1e-12 {
                ratios.push(e1 / e2);
            }
        }
        assert!(!ratios.is_empty());
        assert!(ratios.iter().all(|&q| q >= 2.0), "{ratios:?}");
    }

    #[test]
    fn two_ball_examples() {
        let c = cfg();
        let v = two_ball_path_oracle(1.0, 1.0, 1.0, &c);
        assert!((v - (PI + 1.0)).abs() < 3e-3, "{v}");
        let v = two_ball_path_oracle(2.0, 2.0, 2.0, &c);
        let expected = 2.0 * f(2.0).unwrap() + 2.0;
        assert!((v - expected).abs() < 3e-3, "{v} vs {expected}");
    }

    #[test]
    fn continuity_sampled() {
        assert!(branch_continuity(200, 7) <= BRANCH_CONTINUITY_TOL);
    }

    #[test]
    fn sampler_recovers_x_axis() {
        let seg = |a: [f64; 3], b: [f64; 3]| Segment::new(Point3::from(a), Point3::from(b)).unwrap();
        let segs = [
            seg([0.0, -1.0, -1.0], [0.0, 1.0, 1.0]),
            seg([1.0, -1.0, 1.0], [1.0, 1.0, -1.0]),
            seg([2.0, -1.0, -1.0], [2.0, 1.0, 1.0]),
            seg([3.0, -1.0, 1.0], [3.0, 1.0, -1.0]),
        ];
        let lines = sampled_transversals(&segs, &cfg());
        assert_eq!(lines.len(), 1);
        assert!(lines[0].direction.cross(&Vec3::x()).norm() < 1e-9);
        assert!(lines[0].distance_to_point(&Point3::origin()) < 1e-9);
    }

    #[test]
    fn sampler_finds_nothing_for_far_corners() {
        let corners = [[0.0, 0.0, 0.0], [10.0, 0.0, 0.0], [0.0, 10.0, 0.0], [0.0, 0.0, 10.0]];
        let dirs = [[0.0, 0.1, 0.0], [0.0, 0.0, 0.1], [0.1, 0.0, 0.0], [0.07, 0.07, 0.0]];
        let segs: [Segment; 4] = std::array::from_fn(|i| {
            let c = Point3::from(corners[i]);
            Segment::new(c, c + Vec3::from(dirs[i])).unwrap()
        });
        assert!(sampled_transversals(&segs, &cfg()).is_empty());
    }

    #[test]
    fn sampler_output_meets_all_segments() {
        for q in random_quadruples(20, 3) {
            for l in sampled_transversals(&q.segments, &cfg()) {
                for s in &q.segments {
                    assert!(l.distance_to_segment(s) < SAMPLER_TOL);
                }
            }
        }
    }

    #[test]
    fn small_cross_validation() {
        let rep = cross_validate_transversals(40, &OracleConfig { seed: 11, ..cfg() });
        assert!(rep.passed, "{rep:?}");
        assert!(rep.matched > 0);
    }
}
