//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use yao_connectivity::claims::clear_of_rays;
use yao_connectivity::{Cones, Point, PointSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cross(ax: f64, ay: f64, bx: f64, by: f64) -> f64 {
    ax * by - ay * bx
}

/// Cone of `v` at `u` by angle intervals: `v - u` lies on or left of ray
/// `i` and strictly right of ray `i + 1`.
pub fn oracle_cone(u: &Point, v: &Point, k: usize) -> usize {
    let (dx, dy) = (v.x - u.x, v.y - u.y);
    if k == 2 {
        return if dy > 0.0 || (dy == 0.0 && dx > 0.0) {
            0
        } else {
            1
        };
    }
    let ray = |i: usize| {
        let t = TAU * i as f64 / k as f64;
        (t.cos(), t.sin())
    };
    (0..k)
        .find(|&i| {
            let (ax, ay) = ray(i);
            let (bx, by) = ray(i + 1);
            cross(ax, ay, dx, dy) >= 0.0 && cross(bx, by, dx, dy) < 0.0
        })
        .expect("every direction lies in some cone")
}

/// Table of [`oracle_cone`] over every ordered pair.
pub fn cone_table(s: &PointSet, k: usize) -> Vec<Vec<usize>> {
    let n = s.len();
    (0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    if u == v {
                        usize::MAX
                    } else {
                        oracle_cone(&s[u], &s[v], k)
                    }
                })
                .collect()
        })
        .collect()
}

fn length(a: &Point, b: &Point) -> f64 {
    ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt()
}

/// Per node and cone, the nearest neighbour within `d` by a plain scan,
/// ties to the smaller index.
pub fn brute_yao_with(
    s: &PointSet,
    cones: &[Vec<usize>],
    k: usize,
    d: f64,
) -> BTreeSet<(usize, usize)> {
    let n = s.len();
    let mut arcs = BTreeSet::new();
    for u in 0..n {
        let mut best: Vec<Option<(f64, usize)>> = vec![None; k];
        for v in 0..n {
            if u == v {
                continue;
            }
            let len = length(&s[u], &s[v]);
            if len > d {
                continue;
            }
            let slot = &mut best[cones[u][v]];
            let key = s[u].dist2(&s[v]);
            if slot.is_none_or(|(b, _)| key < b) {
                *slot = Some((key, v));
            }
        }
        arcs.extend(best.into_iter().flatten().map(|(_, v)| (u, v)));
    }
    arcs
}

pub fn brute_yao(s: &PointSet, k: usize, d: f64) -> BTreeSet<(usize, usize)> {
    brute_yao_with(s, &cone_table(s, k), k, d)
}

pub fn connected(n: usize, arcs: &BTreeSet<(usize, usize)>) -> bool {
    if n <= 1 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in arcs {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

/// Least pairwise distance `<= cap` at which the brute-force Yao graph is
/// connected, trying every candidate in increasing order.
pub fn linear_scan_radius(s: &PointSet, k: usize, cap: f64) -> Option<f64> {
    if s.len() <= 1 {
        return Some(0.0);
    }
    let table = cone_table(s, k);
    let mut cands: Vec<f64> = (0..s.len())
        .flat_map(|i| (i + 1..s.len()).map(move |j| (i, j)))
        .map(|(i, j)| length(&s[i], &s[j]))
        .filter(|&l| l <= cap)
        .collect();
    cands.sort_by(f64::total_cmp);
    cands.dedup();
    cands
        .into_iter()
        .find(|&d| connected(s.len(), &brute_yao_with(s, &table, k, d)))
}

/// True if no pair direction sits within `guard` radians of a cone ray.
pub fn clear_of_boundaries(s: &PointSet, cones: Cones, guard: f64) -> bool {
    (0..s.len()).all(|u| {
        (0..s.len())
            .filter(|&v| v != u)
            .all(|v| clear_of_rays(s[u].angle_to(&s[v]), cones, guard))
    })
}

/// `n` distinct uniform points in `[0, side]²`.
pub fn uniform_set(rng: &mut impl Rng, n: usize, side: f64) -> PointSet {
    let mut s = PointSet::new();
    while s.len() < n {
        let p = Point::new(rng.random_range(0.0..side), rng.random_range(0.0..side));
        let _ = s.push(p);
    }
    s
}
