//! Planar shortest paths around unit disks via visibility graphs.

use std::f64::consts::TAU;

use nalgebra::Vector2;
use petgraph::algo::dijkstra;
use petgraph::graph::{NodeIndex, UnGraph};

use super::OracleConfig;

type P2 = Vector2<f64>;

/// Chords closer than this to a center count as entering the open disk.
const VISIBILITY_SLACK: f64 = 1e-12;
/// Points within this of a circle are treated as lying on it.
const ON_CIRCLE: f64 = 1e-12;

#[derive(Clone, Copy)]
struct Disk {
    center: P2,
}

impl Disk {
    fn contains_open(&self, p: &P2) -> bool {
        (p - self.center).norm() < 1.0 - ON_CIRCLE
    }
}

fn closest_approach(p: &P2, q: &P2, c: &P2) -> f64 {
    let d = q - p;
    let len2 = d.norm_squared();
    let t = if len2 > 0.0 { ((c - p).dot(&d) / len2).clamp(0.0, 1.0) } else { 0.0 };
    (p + d * t - c).norm()
}

fn visible(p: &P2, q: &P2, disks: &[Disk]) -> bool {
    disks
        .iter()
        .all(|disk| closest_approach(p, q, &disk.center) >= 1.0 - VISIBILITY_SLACK)
}

/// Ring of nodes on one circle, sorted by angle, with the indices of any
/// endpoints that were inserted onto it.
struct Ring {
    angles: Vec<f64>,
    nodes: Vec<NodeIndex>,
    points: Vec<P2>,
    alive: Vec<bool>,
}

fn build_ring(
    graph: &mut UnGraph<P2, f64>,
    disk: Disk,
    others: &[Disk],
    n: usize,
    inserted: &[(P2, NodeIndex)],
) -> Ring {
    let mut entries: Vec<(f64, Option<NodeIndex>)> = (0..n).map(|k| (TAU * k as f64 / n as f64, None)).collect();
    for (p, idx) in inserted {
        let rel = p - disk.center;
        if (rel.norm() - 1.0).abs() <= ON_CIRCLE {
            entries.push((rel.y.atan2(rel.x).rem_euclid(TAU), Some(*idx)));
        }
    }
    entries.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut ring = Ring {
        angles: Vec::with_capacity(entries.len()),
        nodes: Vec::with_capacity(entries.len()),
        points: Vec::with_capacity(entries.len()),
        alive: Vec::with_capacity(entries.len()),
    };
    for (angle, existing) in entries {
        let point = disk.center + P2::new(angle.cos(), angle.sin());
        let node = existing.unwrap_or_else(|| graph.add_node(point));
        let point = existing.map(|i| graph[i]).unwrap_or(point);
        ring.alive.push(!others.iter().any(|o| o.contains_open(&point)));
        ring.angles.push(angle);
        ring.nodes.push(node);
        ring.points.push(point);
    }
    let m = ring.nodes.len();
    for k in 0..m {
        let next = (k + 1) % m;
        if ring.alive[k] && ring.alive[next] {
            let mut arc = ring.angles[next] - ring.angles[k];
            if arc < 0.0 {
                arc += TAU;
            }
            if ring.nodes[k] != ring.nodes[next] {
                graph.add_edge(ring.nodes[k], ring.nodes[next], arc);
            }
        }
    }
    ring
}

/// Shortest path length between `start` and `goal` avoiding the open unit
/// disks, through a visibility graph on the discretized circles.
fn shortest_path(start: P2, goal: P2, centers: &[P2], n: usize) -> f64 {
    if (start - goal).norm() == 0.0 {
        return 0.0;
    }
    let disks: Vec<Disk> = centers.iter().map(|&center| Disk { center }).collect();
    let mut graph: UnGraph<P2, f64> = UnGraph::new_undirected();
    let a = graph.add_node(start);
    let b = graph.add_node(goal);
    let endpoints = [(start, a), (goal, b)];

    let rings: Vec<Ring> = disks
        .iter()
        .enumerate()
        .map(|(i, disk)| {
            let others: Vec<Disk> = disks.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, d)| *d).collect();
            build_ring(&mut graph, *disk, &others, n, &endpoints)
        })
        .collect();

    if visible(&start, &goal, &disks) {
        graph.add_edge(a, b, (goal - start).norm());
    }
    for (p, idx) in endpoints {
        for ring in &rings {
            for k in 0..ring.nodes.len() {
                if ring.alive[k] && ring.nodes[k] != idx && visible(&p, &ring.points[k], &disks) {
                    graph.add_edge(idx, ring.nodes[k], (ring.points[k] - p).norm());
                }
            }
        }
    }

    // Chords joining two different circles; only nearly tangent ones can
    // lie on a shortest path, so the rest are skipped before the
    // visibility test.
    let tangency = 2.0 * TAU / n as f64;
    for (i, ri) in rings.iter().enumerate() {
        for (j, rj) in rings.iter().enumerate().skip(i + 1) {
            for ki in 0..ri.nodes.len() {
                if !ri.alive[ki] {
                    continue;
                }
                let p = ri.points[ki];
                let np = p - disks[i].center;
                for kj in 0..rj.nodes.len() {
                    if !rj.alive[kj] {
                        continue;
                    }
                    let q = rj.points[kj];
                    let d = q - p;
                    let len = d.norm();
                    if len == 0.0 {
                        continue;
                    }
                    let nq = q - disks[j].center;
                    if (np.dot(&d) / len).abs() > tangency || (nq.dot(&d) / len).abs() > tangency {
                        continue;
                    }
                    if visible(&p, &q, &disks) {
                        graph.add_edge(ri.nodes[ki], rj.nodes[kj], len);
                    }
                }
            }
        }
    }

    let dist = dijkstra(&graph, a, Some(b), |e| *e.weight());
    dist.get(&b).copied().unwrap_or(f64::INFINITY)
}

/// Shortest path between points at distances `r`, `s` from the center of a
/// unit ball, at angle `theta`, avoiding the open ball. The problem is
/// solved in the plane through the two points and the center.
pub fn shortest_path_avoiding_ball_oracle(r: f64, s: f64, theta: f64, cfg: &OracleConfig) -> f64 {
    let a = P2::new(r, 0.0);
    let b = P2::new(s * theta.cos(), s * theta.sin());
    shortest_path(a, b, &[P2::zeros()], cfg.circle_discretization)
}

/// Shortest path from `d` to `a` avoiding unit balls at `b` and `c`, where
/// `a, b, c, d` lie on a line in that order with `|a-b| = r`,
/// `|b-c| = s_sep`, `|c-d| = t`.
pub fn two_ball_path_oracle(r: f64, s_sep: f64, t: f64, cfg: &OracleConfig) -> f64 {
    let a = P2::new(-r, 0.0);
    let d = P2::new(s_sep + t, 0.0);
    let centers = [P2::zeros(), P2::new(s_sep, 0.0)];
    shortest_path(d, a, &centers, cfg.circle_discretization)
}
