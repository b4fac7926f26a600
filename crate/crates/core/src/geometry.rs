//! Planar points, the distances used by the connectivity arguments, and the
//! half-open cone partition around a point.
//!
//! Cones are numbered from 1. Around an apex `p` the rays `r_1, .., r_k` leave
//! `p` at polar angles `2π(i-1)/k`, so `r_1` points along `+x`. Cone `C_i(p)`
//! contains `r_i` and excludes `r_{i+1}`.

use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Squared Euclidean distance.
    pub fn dist2(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    /// Polar angle of `other - self` in `[0, 2π)`.
    pub fn angle_to(&self, other: &Point) -> f64 {
        normalize_angle((other.y - self.y).atan2(other.x - self.x))
    }

    pub fn offset(&self, dx: f64, dy: f64) -> Point {
        Point::new(self.x + dx, self.y + dy)
    }

    /// Exact counterclockwise quarter turn about the origin.
    pub fn quarter_turn(&self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn rotated(&self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

/// Maps any finite angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // tiny negative angles round up to exactly TAU; they still lie below r_1
    if t >= TAU {
        TAU.next_down()
    } else {
        t
    }
}

/// Euclidean distance `|ab|`.
pub fn euclid(a: &Point, b: &Point) -> f64 {
    a.dist2(b).sqrt()
}

/// Chebyshev distance: the side of the axis-parallel square with corner `a`
/// whose boundary passes through `b`.
pub fn l_inf(a: &Point, b: &Point) -> f64 {
    (a.x - b.x).abs().max((a.y - b.y).abs())
}

/// Number of equal angular cones around every apex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Cones(usize);

impl Cones {
    pub const TWO: Cones = Cones(2);
    pub const THREE: Cones = Cones(3);
    pub const FOUR: Cones = Cones(4);

    pub fn new(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidConeCount(k));
        }
        Ok(Cones(k))
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn width(self) -> f64 {
        TAU / self.0 as f64
    }

    /// Polar angle of ray `r_i`, 1-based.
    pub fn ray_angle(self, i: usize) -> f64 {
        TAU * (i - 1) as f64 / self.0 as f64
    }

    /// Unit vector along ray `r_i`, 1-based. `r_{k+1}` is `r_1`.
    pub fn ray(self, i: usize) -> Point {
        let j = (i - 1) % self.0 + 1;
        let (s, c) = self.ray_angle(j).sin_cos();
        Point::new(c, s)
    }
}

impl TryFrom<usize> for Cones {
    type Error = Error;

    fn try_from(k: usize) -> Result<Self> {
        Cones::new(k)
    }
}

impl From<Cones> for usize {
    fn from(c: Cones) -> usize {
        c.0
    }
}

impl fmt::Display for Cones {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConeIndex {
    k: usize,
    i: usize,
}

impl ConeIndex {
    pub fn new(cones: Cones, i: usize) -> Option<Self> {
        (1..=cones.get())
            .contains(&i)
            .then_some(ConeIndex { k: cones.get(), i })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// 1-based cone number.
    pub fn index(&self) -> usize {
        self.i
    }

    /// Cone obtained by turning a full cone width counterclockwise.
    pub fn next(&self) -> ConeIndex {
        ConeIndex {
            k: self.k,
            i: self.i % self.k + 1,
        }
    }
}

/// Cone of `apex` that contains `q`.
pub fn cone_of(apex: &Point, q: &Point, cones: Cones) -> Result<ConeIndex> {
    if apex == q {
        return Err(Error::CoincidentPoints);
    }
    Ok(cone_of_angle(apex.angle_to(q), cones))
}

pub(crate) fn cone_of_angle(theta: f64, cones: Cones) -> ConeIndex {
    let k = cones.get();
    let mut i = ((theta / cones.width()) as usize).min(k - 1);
    // half-open test directly on the angle, correcting any division rounding
    while i > 0 && theta < cones.ray_angle(i + 1) {
        i -= 1;
    }
    while i + 1 < k && theta >= cones.ray_angle(i + 2) {
        i += 1;
    }
    ConeIndex { k, i: i + 1 }
}

/// Rhombus distance: side of the rhombus with corner `a`, sides parallel to
/// the two rays bounding the cone of `a` that contains `b`, and `b` on its
/// boundary.
///
/// Writing `b - a = u·r_i + v·r_{i+1}` (both coefficients non-negative inside
/// the cone) the side is `max(u, v)`. Symmetry and the `√3/2` sandwich with
/// the Euclidean distance hold for `k = 3` only; other `k` are accepted but
/// carry no such guarantee.
pub fn d_rhombus(a: &Point, b: &Point, cones: Cones) -> f64 {
    if a == b {
        return 0.0;
    }
    let cone = cone_of_angle(a.angle_to(b), cones);
    let e = cones.ray(cone.index());
    let f = cones.ray(cone.index() + 1);
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let det = e.x * f.y - e.y * f.x;
    if det.abs() < 1e-12 {
        // k = 2: the bounding rays are opposite, the cone is a half plane
        // and the "rhombus" degenerates; fall back to the Euclidean length.
        return (dx * dx + dy * dy).sqrt();
    }
    let u = (dx * f.y - dy * f.x) / det;
    let v = (e.x * dy - e.y * dx) / det;
    u.max(v)
}

/// Rigid motion: rotation about the origin followed by a translation.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Transform {
    pub rotation: f64,
    pub translation: (f64, f64),
}

impl Transform {
    pub const IDENTITY: Transform = Transform {
        rotation: 0.0,
        translation: (0.0, 0.0),
    };

    pub fn rotation(angle: f64) -> Self {
        Transform {
            rotation: angle,
            translation: (0.0, 0.0),
        }
    }

    pub fn translation(dx: f64, dy: f64) -> Self {
        Transform {
            rotation: 0.0,
            translation: (dx, dy),
        }
    }

    pub fn apply(&self, p: &Point) -> Point {
        let r = if self.rotation == 0.0 {
            *p
        } else {
            p.rotated(self.rotation)
        };
        r.offset(self.translation.0, self.translation.1)
    }
}

/// Ordered set of distinct labeled points. Index `j` always refers to the
/// `j`-th inserted point.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PointSet {
    points: Vec<Point>,
    labels: Vec<Option<String>>,
}

impl PointSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_points(points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut set = PointSet::new();
        for p in points {
            set.push(p)?;
        }
        Ok(set)
    }

    pub fn from_labeled(points: impl IntoIterator<Item = (Point, Option<String>)>) -> Result<Self> {
        let mut set = PointSet::new();
        for (p, label) in points {
            set.push_labeled(p, label)?;
        }
        Ok(set)
    }

    pub fn push(&mut self, p: Point) -> Result<usize> {
        self.push_labeled(p, None)
    }

    pub fn push_labeled(&mut self, p: Point, label: Option<String>) -> Result<usize> {
        let index = self.points.len();
        if !p.is_finite() {
            return Err(Error::NonFinite { index });
        }
        if let Some(first) = self.points.iter().position(|q| *q == p) {
            return Err(Error::DuplicatePoint {
                first,
                second: index,
            });
        }
        self.points.push(p);
        self.labels.push(label);
        Ok(index)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels.get(i).and_then(|l| l.as_deref())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.as_deref() == Some(label))
    }

    pub fn point_labeled(&self, label: &str) -> Option<Point> {
        self.index_of(label).map(|i| self.points[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.points.iter()
    }

    /// Sorted distinct pairwise distances.
    pub fn pairwise_distances(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.len() * self.len().saturating_sub(1) / 2);
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                out.push(euclid(p, q));
            }
        }
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }
}

impl std::ops::Index<usize> for PointSet {
    type Output = Point;

    fn index(&self, i: usize) -> &Point {
        &self.points[i]
    }
}

/// Applies a rigid motion to every point, keeping labels and order.
pub fn apply_transform(s: &PointSet, t: &Transform) -> PointSet {
    PointSet {
        points: s.points.iter().map(|p| t.apply(p)).collect(),
        labels: s.labels.clone(),
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn euclid_examples() {
        assert_eq!(euclid(&p(0.0, 0.0), &p(3.0, 4.0)), 5.0);
        assert_eq!(euclid(&p(1.0, 1.0), &p(1.0, 1.0)), 0.0);
        assert!((euclid(&p(0.0, 0.0), &p(1.0, 1.0)) - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn l_inf_examples() {
        assert_eq!(l_inf(&p(0.0, 0.0), &p(3.0, 4.0)), 4.0);
        assert_eq!(l_inf(&p(0.0, 0.0), &p(1.0, 1.0)), 1.0);
        assert_eq!(l_inf(&p(2.0, 5.0), &p(2.0, 5.0)), 0.0);
    }

    #[test]
    fn cone_boundaries_follow_half_open_rule() {
        let o = Point::ORIGIN;
        assert_eq!(cone_of(&o, &p(1.0, 0.0), Cones::FOUR).unwrap().index(), 1);
        assert_eq!(cone_of(&o, &p(0.0, 1.0), Cones::FOUR).unwrap().index(), 2);
        assert_eq!(cone_of(&o, &p(-1.0, 0.0), Cones::FOUR).unwrap().index(), 3);
        assert_eq!(cone_of(&o, &p(0.0, -1.0), Cones::FOUR).unwrap().index(), 4);
        assert_eq!(
            cone_of(&o, &p(1.0, -1e-300), Cones::FOUR).unwrap().index(),
            4
        );
    }

    #[test]
    fn cone_of_slightly_below_left_axis() {
        let cone = cone_of(&Point::ORIGIN, &p(-1.0, -0.01), Cones::THREE).unwrap();
        assert_eq!(cone.index(), 2);
        assert_eq!(cone.k(), 3);
    }

    #[test]
    fn cone_of_apex_is_an_error() {
        let a = p(2.0, 3.0);
        assert_eq!(cone_of(&a, &a, Cones::THREE), Err(Error::CoincidentPoints));
    }

    #[test]
    fn cone_count_below_two_rejected() {
        assert_eq!(Cones::new(1), Err(Error::InvalidConeCount(1)));
        assert_eq!(Cones::new(0), Err(Error::InvalidConeCount(0)));
        assert!(Cones::new(2).is_ok());
    }

    #[test]
    fn cone_index_next_wraps() {
        let c = ConeIndex::new(Cones::THREE, 3).unwrap();
        assert_eq!(c.next().index(), 1);
        assert!(ConeIndex::new(Cones::THREE, 0).is_none());
        assert!(ConeIndex::new(Cones::THREE, 4).is_none());
    }

    #[test]
    fn normalize_angle_stays_below_tau() {
        assert_eq!(normalize_angle(-1e-300), TAU.next_down());
        assert_eq!(normalize_angle(0.0), 0.0);
        assert!((normalize_angle(-FRAC_PI_2) - 1.5 * PI).abs() < 1e-15);
        assert!(normalize_angle(-1e-17) < TAU);
    }

    #[test]
    fn d_rhombus_examples() {
        let o = Point::ORIGIN;
        assert_eq!(d_rhombus(&o, &o, Cones::THREE), 0.0);
        assert!((d_rhombus(&o, &p(1.0, 0.0), Cones::THREE) - 1.0).abs() < 1e-15);

        // far side midpoint: the equality case of the lower sandwich bound
        let b = p(0.75, 3f64.sqrt() / 4.0);
        assert!((d_rhombus(&o, &b, Cones::THREE) - 1.0).abs() < 1e-12);
        assert!((euclid(&o, &b) - 3f64.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn d_rhombus_on_upper_ray_of_cone() {
        // r_2 for k = 3 belongs to C_2 and is a rhombus side of length |ab|
        let b = Cones::THREE.ray(2);
        assert!((d_rhombus(&Point::ORIGIN, &b, Cones::THREE) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn d_rhombus_for_four_cones_is_l_inf_rotated() {
        // with k = 4 the rhombus is the axis square
        let a = p(0.3, -0.2);
        let b = p(1.1, 0.4);
        assert!((d_rhombus(&a, &b, Cones::FOUR) - l_inf(&a, &b)).abs() < 1e-12);
    }

    #[test]
    fn rotation_examples() {
        let s = PointSet::from_points([p(1.0, 0.0)]).unwrap();
        let r = apply_transform(&s, &Transform::rotation(FRAC_PI_2));
        assert!((r[0].x).abs() < 1e-15 && (r[0].y - 1.0).abs() < 1e-15);

        let id = apply_transform(&s, &Transform::IDENTITY);
        assert_eq!(id, s);

        let s = PointSet::from_points([p(1.0, 0.0), p(2.0, 0.0)]).unwrap();
        let r = apply_transform(&s, &Transform::rotation(FRAC_PI_2));
        assert!((euclid(&r[0], &r[1]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn point_set_rejects_duplicates_and_non_finite() {
        let mut s = PointSet::new();
        s.push(p(0.0, 0.0)).unwrap();
        assert_eq!(
            s.push(p(0.0, 0.0)),
            Err(Error::DuplicatePoint {
                first: 0,
                second: 1
            })
        );
        assert_eq!(s.push(p(f64::NAN, 0.0)), Err(Error::NonFinite { index: 1 }));
        assert_eq!(
            s.push(p(0.0, f64::INFINITY)),
            Err(Error::NonFinite { index: 1 })
        );
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn labels_are_looked_up_by_name() {
        let s = PointSet::from_labeled([
            (p(0.0, 0.0), Some("p".to_string())),
            (p(0.0, 1.0), Some("q".to_string())),
            (p(5.0, 1.0), None),
        ])
        .unwrap();
        assert_eq!(s.index_of("q"), Some(1));
        assert_eq!(s.point_labeled("p"), Some(Point::ORIGIN));
        assert_eq!(s.label(2), None);
        assert_eq!(s.index_of("z"), None);
    }

    #[test]
    fn pairwise_distances_sorted_and_distinct() {
        let s = PointSet::from_points([p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0)]).unwrap();
        assert_eq!(s.pairwise_distances(), vec![1.0, 2.0]);
        let s = PointSet::from_points([p(0.0, 0.0), p(1.0, 1.0)]).unwrap();
        assert_eq!(s.pairwise_distances(), vec![SQRT_2]);
    }
}
