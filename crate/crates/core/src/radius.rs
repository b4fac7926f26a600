//! Exact connectivity radius of `Y_k[G^d]`.
//!
//! The disk graph and its Yao subgraph only change when `d` crosses a
//! pairwise distance, so the candidates are exactly those distances. Within a
//! cone the selected neighbor is the nearest one in range, which makes the Yao
//! arc set grow monotonically with `d`; connectivity is therefore a monotone
//! predicate over the sorted candidates and a binary search finds the least
//! connected one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Cones, PointSet};
use crate::graphs::{is_connected, yao_of_disk, Edge};

/// Search ceiling used when the caller has no better bound.
pub const DEFAULT_CAP: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value", rename_all = "kebab-case")]
pub enum Radius {
    Finite(f64),
    UnboundedAboveCap,
}

impl Radius {
    pub fn finite(self) -> Option<f64> {
        match self {
            Radius::Finite(r) => Some(r),
            Radius::UnboundedAboveCap => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusResult {
    pub radius: Radius,
    pub cap: f64,
    /// Edges of `Y_k[G^radius]`; empty when no candidate qualifies.
    pub witness_edges: Vec<Edge>,
    /// Number of connectivity evaluations performed.
    pub candidates_examined: usize,
}

/// True iff `Y_k[G^d]` is connected.
pub fn yao_connected_at(s: &PointSet, cones: Cones, d: f64) -> Result<bool> {
    Ok(is_connected(&yao_of_disk(s, d, cones)?))
}

/// Candidate radii: sorted distinct pairwise distances no larger than `cap`.
pub fn candidate_radii(s: &PointSet, cap: f64) -> Vec<f64> {
    let mut c = s.pairwise_distances();
    c.retain(|&d| d <= cap);
    c
}

/// Smallest pairwise distance `d <= cap` with `Y_k[G^d]` connected.
///
/// Sets with fewer than two points are connected at any radius and report 0.
pub fn connectivity_radius(s: &PointSet, cones: Cones, cap: f64) -> Result<RadiusResult> {
    if cap.is_nan() || cap <= 0.0 {
        return Err(Error::InvalidCap(cap));
    }
    if s.len() <= 1 {
        return Ok(RadiusResult {
            radius: Radius::Finite(0.0),
            cap,
            witness_edges: Vec::new(),
            candidates_examined: 0,
        });
    }
    let candidates = candidate_radii(s, cap);
    let mut examined = 0usize;
    let mut connected = |d: f64| -> Result<bool> {
        examined += 1;
        yao_connected_at(s, cones, d)
    };

    let unbounded = match candidates.last() {
        None => true,
        Some(&top) => !connected(top)?,
    };
    if unbounded {
        return Ok(RadiusResult {
            radius: Radius::UnboundedAboveCap,
            cap,
            witness_edges: Vec::new(),
            candidates_examined: examined,
        });
    }

    // invariant: predicate false below `lo`, true at `hi`
    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if connected(candidates[mid])? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let radius = candidates[hi];
    let witness_edges = yao_of_disk(s, radius, cones)?.edges().to_vec();
    Ok(RadiusResult {
        radius: Radius::Finite(radius),
        cap,
        witness_edges,
        candidates_examined: examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn set(coords: &[(f64, f64)]) -> PointSet {
        PointSet::from_points(coords.iter().map(|&c| Point::from(c))).unwrap()
    }

    #[test]
    fn two_points_connect_at_their_distance() {
        let s = set(&[(0.0, 0.0), (1.0, 0.0)]);
        let r = connectivity_radius(&s, Cones::FOUR, 10.0).unwrap();
        assert_eq!(r.radius, Radius::Finite(1.0));
        assert_eq!(r.witness_edges.len(), 1);
    }

    #[test]
    fn collinear_four_points_with_three_cones() {
        let s = set(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]);
        let r = connectivity_radius(&s, Cones::THREE, 10.0).unwrap();
        assert_eq!(r.radius, Radius::Finite(1.0));
        assert_eq!(r.witness_edges.len(), 3);
    }

    #[test]
    fn cap_below_every_distance_is_unbounded() {
        let s = set(&[(0.0, 0.0), (1.0, 0.0)]);
        let r = connectivity_radius(&s, Cones::FOUR, 0.5).unwrap();
        assert_eq!(r.radius, Radius::UnboundedAboveCap);
        assert!(r.witness_edges.is_empty());
    }

    #[test]
    fn invalid_cap() {
        let s = set(&[(0.0, 0.0)]);
        assert_eq!(
            connectivity_radius(&s, Cones::FOUR, 0.0),
            Err(Error::InvalidCap(0.0))
        );
        assert!(connectivity_radius(&s, Cones::FOUR, -3.0).is_err());
    }

    #[test]
    fn tiny_sets_report_zero() {
        let one = set(&[(4.0, 4.0)]);
        let r = connectivity_radius(&one, Cones::THREE, 1.0).unwrap();
        assert_eq!(r.radius, Radius::Finite(0.0));
        let none = PointSet::new();
        let r = connectivity_radius(&none, Cones::THREE, 1.0).unwrap();
        assert_eq!(r.radius.finite(), Some(0.0));
    }

    #[test]
    fn far_pair_needs_the_larger_candidate() {
        // two clusters 3 apart; every Yao graph below 3 is disconnected
        let s = set(&[(0.0, 0.0), (0.5, 0.0), (3.5, 0.0), (4.0, 0.0)]);
        let r = connectivity_radius(&s, Cones::FOUR, DEFAULT_CAP).unwrap();
        assert_eq!(r.radius, Radius::Finite(3.0));
        assert!(r.candidates_examined >= 2);
    }
}
