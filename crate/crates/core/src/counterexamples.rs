//! Point sets with a connected unit disk graph on which `Y_k[G^d]` falls
//! apart, and an end-to-end checker for them.
//!
//! Three families are built:
//!
//! * `y4-lb`: a unit segment `pq` (tilted slightly left so that `q ∈ C_2(p)`)
//!   with a chain `a_1, a_2, ..` leaving `p` to the left and its point
//!   reflection `b_i = q - a_i` through the midpoint of `pq`. Since
//!   `|pa_1| = |qb_1| = 1 - ε < |pq|`, neither end of `pq` selects it in four
//!   cones and the only bridge of `G^d` is lost for `1 <= d < √2`.
//! * `y3-lb`: the hexagon `p x a_1 b_1 y q` cut from an isosceles trapezoid of
//!   unit height, turned a quarter counterclockwise, with chains continuing
//!   from `a_1` and `b_1`. `x` shadows `q` in `C_1(p)` and `y` shadows `p` in
//!   `C_3(q)`.
//! * `y2-lb`: the `y4-lb` set with chains long enough that `|a_r q| > d`.
//!
//! Every generator validates its parameter ranges, builds the set, then
//! checks each strict inequality the construction depends on with a margin
//! of [`STRICT_MARGIN`].

use std::f64::consts::{FRAC_PI_4, SQRT_2};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::geometry::{euclid, Cones, Point, PointSet};
use crate::graphs::{
    components, disk_graph, is_connected, is_path_graph, yao_undirected, YaoParams,
};

pub const DEFAULT_ALPHA: f64 = 1e-4;
pub const DEFAULT_CHAIN: usize = 3;
/// Every strict inequality must hold by at least this much.
pub const STRICT_MARGIN: f64 = 1e-6;
const MAX_CHAIN: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "y4-lb")]
    Y4Lower,
    #[serde(rename = "y3-lb")]
    Y3Lower,
    #[serde(rename = "y2-lb")]
    Y2Lower,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Y4Lower, Family::Y3Lower, Family::Y2Lower];

    pub fn name(self) -> &'static str {
        match self {
            Family::Y4Lower => "y4-lb",
            Family::Y3Lower => "y3-lb",
            Family::Y2Lower => "y2-lb",
        }
    }

    /// Cone count the family is built to defeat.
    pub fn cones(self) -> Cones {
        match self {
            Family::Y4Lower => Cones::FOUR,
            Family::Y3Lower => Cones::THREE,
            Family::Y2Lower => Cones::TWO,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = ">")]
    Greater,
}

/// A named strict inequality `lhs < rhs` or `lhs > rhs` evaluated on a set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: f64,
    pub relation: Relation,
    pub rhs: f64,
}

impl InequalityCheck {
    fn new(name: impl Into<String>, lhs: f64, relation: Relation, rhs: f64) -> Self {
        InequalityCheck {
            name: name.into(),
            lhs,
            relation,
            rhs,
        }
    }

    pub fn margin(&self) -> f64 {
        match self.relation {
            Relation::Less => self.rhs - self.lhs,
            Relation::Greater => self.lhs - self.rhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.margin() > STRICT_MARGIN
    }
}

impl fmt::Display for InequalityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.relation {
            Relation::Less => '<',
            Relation::Greater => '>',
        };
        write!(
            f,
            "{} ({:.9} {} {:.9}, margin {:.3e})",
            self.name,
            self.lhs,
            op,
            self.rhs,
            self.margin()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructionError {
    #[error("{family}: constraint {constraint} violated: {detail}")]
    Range {
        family: Family,
        constraint: String,
        detail: String,
    },

    #[error("{family}: r = {r} is too small for d = {d}; the minimal admissible r is {min_r}")]
    ChainTooShort {
        family: Family,
        d: f64,
        r: usize,
        min_r: usize,
    },

    #[error("{family}: no chain of at most {MAX_CHAIN} points reaches beyond d = {d}")]
    ChainUnbounded { family: Family, d: f64 },

    #[error("{family}: construction inequality fails: {check}")]
    Inequality {
        family: Family,
        check: InequalityCheck,
    },

    #[error("expected {expected} parameters, got {got}")]
    WrongFamily { expected: Family, got: Family },
}

/// Upper end of the admissible `ε` interval for `y4-lb`: `1 - √(d² - 1)`.
pub fn y4_eps_upper(d: f64) -> f64 {
    1.0 - (d * d - 1.0).sqrt()
}

/// Largest `d` (exclusive) admitted for `y3-lb`: `5 - (2/3)√35`.
pub fn y3_d_upper() -> f64 {
    5.0 - 2.0 / 3.0 * 35f64.sqrt()
}

/// Admissible open `ε` interval for `y3-lb`: `(d - 1, 2 - (2/3)√(9d - 1))`.
pub fn y3_eps_range(d: f64) -> (f64, f64) {
    (d - 1.0, 2.0 - 2.0 / 3.0 * (9.0 * d - 1.0).sqrt())
}

/// Upper end of the `ε` interval on which `|xy| > d` actually holds for the
/// `y3-lb` hexagon, `2 - (2/3)√(9d² - 1)`. It is below the end of
/// [`y3_eps_range`] for every `d > 1`.
pub fn y3_eps_upper_exact(d: f64) -> f64 {
    2.0 - 2.0 / 3.0 * (9.0 * d * d - 1.0).sqrt()
}

/// `(family, d, ε, α, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub family: Family,
    pub d: f64,
    pub eps: f64,
    pub alpha: f64,
    pub r: usize,
}

impl ConstructionParams {
    /// Midpoint `ε`, `α = 1e-4`, and `r = 3` (`y2-lb`: the least chain that
    /// works for `d`).
    pub fn defaults(family: Family, d: f64) -> Result<Self, ConstructionError> {
        validate_d(family, d)?;
        let (lo, hi) = eps_interval(family, d);
        let eps = 0.5 * (lo + hi);
        let r = match family {
            Family::Y2Lower => minimal_y2_chain(d, eps, DEFAULT_ALPHA)?,
            _ => DEFAULT_CHAIN,
        };
        Ok(ConstructionParams {
            family,
            d,
            eps,
            alpha: DEFAULT_ALPHA,
            r,
        })
    }

    /// Checks the declared parameter ranges (not the geometric inequalities).
    pub fn validate(&self) -> Result<(), ConstructionError> {
        let family = self.family;
        let range = |constraint: &str, detail: String| ConstructionError::Range {
            family,
            constraint: constraint.to_string(),
            detail,
        };
        validate_d(family, self.d)?;
        let (lo, hi) = eps_interval(family, self.d);
        if !(self.eps > lo && self.eps < hi) {
            let constraint = match family {
                Family::Y4Lower => "0 < eps < 1 - sqrt(d^2 - 1)",
                Family::Y3Lower => "d - 1 < eps < 2 - (2/3)sqrt(9d - 1)",
                Family::Y2Lower => "0 < eps < 1",
            };
            return Err(range(
                constraint,
                format!("eps = {} is outside ({lo}, {hi})", self.eps),
            ));
        }
        if !(self.alpha > 0.0 && self.alpha < FRAC_PI_4) {
            return Err(range("0 < alpha < pi/4", format!("alpha = {}", self.alpha)));
        }
        if self.r < 1 {
            return Err(range("r >= 1", format!("r = {}", self.r)));
        }
        if family == Family::Y2Lower {
            let min_r = minimal_y2_chain(self.d, self.eps, self.alpha)?;
            if self.r < min_r {
                return Err(ConstructionError::ChainTooShort {
                    family,
                    d: self.d,
                    r: self.r,
                    min_r,
                });
            }
        }
        Ok(())
    }
}

fn validate_d(family: Family, d: f64) -> Result<(), ConstructionError> {
    let range = |constraint: &str, detail: String| ConstructionError::Range {
        family,
        constraint: constraint.to_string(),
        detail,
    };
    if !d.is_finite() || d < 1.0 {
        let constraint = match family {
            Family::Y4Lower => "1 <= d < sqrt(2)",
            Family::Y3Lower => "1 <= d < 5 - (2/3)sqrt(35)",
            Family::Y2Lower => "d >= 1",
        };
        return Err(range(constraint, format!("d = {d} is below 1")));
    }
    match family {
        Family::Y4Lower if d >= SQRT_2 => Err(range(
            "1 <= d < sqrt(2)",
            format!("d = {d} reaches sqrt(2)"),
        )),
        Family::Y3Lower if d >= y3_d_upper() => Err(range(
            "1 <= d < 5 - (2/3)sqrt(35)",
            format!("d = {d} exceeds 5 - (2/3)sqrt(35) = {:.6}", y3_d_upper()),
        )),
        _ => Ok(()),
    }
}

fn eps_interval(family: Family, d: f64) -> (f64, f64) {
    match family {
        Family::Y4Lower => (0.0, y4_eps_upper(d)),
        Family::Y3Lower => y3_eps_range(d),
        Family::Y2Lower => (0.0, 1.0),
    }
}

/// Moves `to` toward `from` by a few ulps until `|from to| <= 1` holds in
/// floating point, so intended unit links survive the exact disk test.
fn unit_link(from: Point, to: Point) -> Point {
    let (dx, dy) = (to.x - from.x, to.y - from.y);
    let mut f = 1.0;
    let mut t = to;
    while from.dist2(&t) > 1.0 {
        f *= 1.0 - 4.0 * f64::EPSILON;
        t = from.offset(dx * f, dy * f);
    }
    t
}

fn labeled(name: impl Into<String>, p: Point) -> (Point, Option<String>) {
    (p, Some(name.into()))
}

/// `p, q` and the chain `a_1..a_r` for the four- and two-cone families.
struct Chain {
    q: Point,
    a: Vec<Point>,
    b: Vec<Point>,
}

impl Chain {
    fn new(eps: f64, alpha: f64) -> Self {
        let beta = alpha / 2.0;
        let q = unit_link(Point::ORIGIN, Point::new(-beta.sin(), beta.cos()));
        let a1 = Point::new(-(1.0 - eps) * alpha.cos(), (1.0 - eps) * alpha.sin());
        Chain {
            q,
            a: vec![a1],
            b: vec![Point::new(q.x - a1.x, q.y - a1.y)],
        }
    }

    fn extend(&mut self, alpha: f64) {
        let last_a = *self.a.last().expect("chain starts non-empty");
        let last_b = *self.b.last().expect("chain starts non-empty");
        let a = unit_link(last_a, last_a.offset(-alpha.cos(), alpha.sin()));
        let b = unit_link(last_b, Point::new(self.q.x - a.x, self.q.y - a.y));
        self.a.push(a);
        self.b.push(b);
    }

    fn with_len(eps: f64, alpha: f64, r: usize) -> Self {
        let mut chain = Chain::new(eps, alpha);
        while chain.a.len() < r {
            chain.extend(alpha);
        }
        chain
    }

    fn into_point_set(self) -> Result<PointSet> {
        let mut pts = vec![labeled("p", Point::ORIGIN), labeled("q", self.q)];
        pts.extend(
            self.a
                .iter()
                .enumerate()
                .map(|(i, &a)| labeled(format!("a{}", i + 1), a)),
        );
        pts.extend(
            self.b
                .iter()
                .enumerate()
                .map(|(i, &b)| labeled(format!("b{}", i + 1), b)),
        );
        PointSet::from_labeled(pts)
    }
}

/// Least `r` with `|a_r q| > d` and `|b_r p| > d` (with margin).
pub fn minimal_y2_chain(d: f64, eps: f64, alpha: f64) -> Result<usize, ConstructionError> {
    let mut chain = Chain::new(eps, alpha);
    loop {
        let r = chain.a.len();
        let ar = chain.a[r - 1];
        let br = chain.b[r - 1];
        if euclid(&ar, &chain.q) - d > STRICT_MARGIN
            && euclid(&br, &Point::ORIGIN) - d > STRICT_MARGIN
        {
            return Ok(r);
        }
        if r >= MAX_CHAIN {
            return Err(ConstructionError::ChainUnbounded {
                family: Family::Y2Lower,
                d,
            });
        }
        chain.extend(alpha);
    }
}

/// Builds the family's point set without any range or inequality checks.
/// Labels: `p, q, a1..ar, b1..br`, plus `x, y` for `y3-lb`.
pub fn build_points(params: &ConstructionParams) -> Result<PointSet> {
    let r = params.r.max(1);
    match params.family {
        Family::Y4Lower | Family::Y2Lower => {
            Chain::with_len(params.eps, params.alpha, r).into_point_set()
        }
        Family::Y3Lower => build_hexagon(params.eps, params.alpha, r),
    }
}

fn build_hexagon(eps: f64, alpha: f64, r: usize) -> Result<PointSet> {
    // trapezoid with p at the origin, bases horizontal, a_1 b_1 below p q;
    // the whole set is then turned a quarter counterclockwise
    let p = Point::ORIGIN;
    let q = Point::new(1.0, 0.0);
    let a1 = Point::new(-eps / 2.0, -1.0);
    let b1 = Point::new(1.0 + eps / 2.0, -1.0);
    let x = Point::new(eps / 6.0, -1.0 / 3.0);
    let y = Point::new(1.0 - eps / 3.0, -2.0 / 3.0);

    let [p, q, a1, b1, x, y] = [p, q, a1, b1, x, y].map(|pt| pt.quarter_turn());

    let mut a = vec![a1];
    let mut b = vec![b1];
    let mid = 0.5 * (p.y + q.y);
    for _ in 1..r {
        let last_a = *a.last().unwrap();
        let next_a = unit_link(last_a, last_a.offset(alpha.cos(), -alpha.sin()));
        let last_b = *b.last().unwrap();
        let next_b = unit_link(last_b, Point::new(next_a.x, 2.0 * mid - next_a.y));
        a.push(next_a);
        b.push(next_b);
    }

    let mut pts = vec![
        labeled("p", p),
        labeled("q", q),
        labeled("x", x),
        labeled("y", y),
    ];
    pts.extend(
        a.iter()
            .enumerate()
            .map(|(i, &pt)| labeled(format!("a{}", i + 1), pt)),
    );
    pts.extend(
        b.iter()
            .enumerate()
            .map(|(i, &pt)| labeled(format!("b{}", i + 1), pt)),
    );
    PointSet::from_labeled(pts)
}

fn labeled_point(s: &PointSet, label: &str, missing: &mut Vec<String>) -> Option<Point> {
    let p = s.point_labeled(label);
    if p.is_none() && !missing.iter().any(|m| m == label) {
        missing.push(label.to_string());
    }
    p
}

fn chain_end(s: &PointSet, prefix: char) -> Option<String> {
    (1..)
        .map(|i| format!("{prefix}{i}"))
        .take_while(|l| s.index_of(l).is_some())
        .last()
}

/// Evaluates the inequalities the family's argument depends on. Labels that
/// are absent are returned in the second list.
pub fn family_inequalities(
    s: &PointSet,
    family: Family,
    d: f64,
) -> (Vec<InequalityCheck>, Vec<String>) {
    use Relation::{Greater, Less};
    let mut missing = Vec::new();
    let mut checks = Vec::new();
    let p = labeled_point(s, "p", &mut missing);
    let q = labeled_point(s, "q", &mut missing);
    let a1 = labeled_point(s, "a1", &mut missing);
    let b1 = labeled_point(s, "b1", &mut missing);
    let (Some(p), Some(q), Some(a1), Some(b1)) = (p, q, a1, b1) else {
        return (checks, missing);
    };
    let pq = euclid(&p, &q);
    match family {
        Family::Y4Lower | Family::Y2Lower => {
            checks.push(InequalityCheck::new(
                "|pa1| < |pq|",
                euclid(&p, &a1),
                Less,
                pq,
            ));
            checks.push(InequalityCheck::new(
                "|qb1| < |qp|",
                euclid(&q, &b1),
                Less,
                pq,
            ));
            if family == Family::Y4Lower {
                checks.push(InequalityCheck::new(
                    "|a1q| > d",
                    euclid(&a1, &q),
                    Greater,
                    d,
                ));
            }
            let ar = chain_end(s, 'a').and_then(|l| s.point_labeled(&l));
            let br = chain_end(s, 'b').and_then(|l| s.point_labeled(&l));
            if let (Some(ar), Some(br)) = (ar, br) {
                checks.push(InequalityCheck::new(
                    "|a_r q| > d",
                    euclid(&ar, &q),
                    Greater,
                    d,
                ));
                checks.push(InequalityCheck::new(
                    "|b_r p| > d",
                    euclid(&br, &p),
                    Greater,
                    d,
                ));
            }
        }
        Family::Y3Lower => {
            let x = labeled_point(s, "x", &mut missing);
            let y = labeled_point(s, "y", &mut missing);
            let (Some(x), Some(y)) = (x, y) else {
                return (checks, missing);
            };
            checks.push(InequalityCheck::new(
                "|px| < |pq|",
                euclid(&p, &x),
                Less,
                pq,
            ));
            checks.push(InequalityCheck::new(
                "|qy| < |qp|",
                euclid(&q, &y),
                Less,
                pq,
            ));
            checks.push(InequalityCheck::new("|xy| > d", euclid(&x, &y), Greater, d));
            checks.push(InequalityCheck::new(
                "|a1b1| > d",
                euclid(&a1, &b1),
                Greater,
                d,
            ));
            checks.push(InequalityCheck::new("|xq| > d", euclid(&x, &q), Greater, d));
            checks.push(InequalityCheck::new(
                "|a1y| > d",
                euclid(&a1, &y),
                Greater,
                d,
            ));
        }
    }
    (checks, missing)
}

fn generate(params: &ConstructionParams, expected: Family) -> Result<PointSet> {
    if params.family != expected {
        return Err(ConstructionError::WrongFamily {
            expected,
            got: params.family,
        }
        .into());
    }
    params.validate()?;
    let s = build_points(params)?;
    let (checks, _) = family_inequalities(&s, expected, params.d);
    if let Some(check) = checks.into_iter().find(|c| !c.holds()) {
        return Err(ConstructionError::Inequality {
            family: expected,
            check,
        }
        .into());
    }
    Ok(s)
}

/// Four-cone lower-bound set: `G^1 = G^d` is a path and `Y_4[G^d]` drops `pq`.
pub fn gen_y4_lower(params: &ConstructionParams) -> Result<PointSet> {
    generate(params, Family::Y4Lower)
}

/// Three-cone lower-bound set built from the quarter-turned hexagon.
pub fn gen_y3_lower(params: &ConstructionParams) -> Result<PointSet> {
    generate(params, Family::Y3Lower)
}

/// Two-cone set whose chains are long enough to keep `a_r q` and `b_r p` out
/// of `G^d`; the point count grows linearly with `d`.
pub fn gen_y2_lower(params: &ConstructionParams) -> Result<PointSet> {
    generate(params, Family::Y2Lower)
}

/// Dispatches on `params.family`.
pub fn generate_family(params: &ConstructionParams) -> Result<PointSet> {
    generate(params, params.family)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: Family,
    pub k: usize,
    pub d: f64,
    pub g1_connected: bool,
    pub g1_is_path: bool,
    pub gd_is_path: bool,
    pub yk_disconnected: bool,
    pub component_count: usize,
    /// Whether `{p, q}` survives in `Y_k[G^d]`.
    pub pq_in_yao: bool,
    pub inequalities: Vec<InequalityCheck>,
    pub violated_inequalities: Vec<InequalityCheck>,
    pub missing_labels: Vec<String>,
}

impl VerificationReport {
    /// `G^1` is a connected path, `Y_k[G^d]` is disconnected, every named
    /// inequality holds, and for `y4-lb` `G^d` is a path as well. The other
    /// two families only claim the path structure for `G^1`: longer radii
    /// add chords (`y2-lb`) or the trapezoid legs `pa_1`, `qb_1` (`y3-lb`).
    pub fn passed(&self) -> bool {
        self.g1_connected
            && self.g1_is_path
            && self.yk_disconnected
            && self.violated_inequalities.is_empty()
            && self.missing_labels.is_empty()
            && (self.family != Family::Y4Lower || self.gd_is_path)
    }
}

/// Infers the family from the labels (`x`/`y` present means `y3-lb`, else
/// `y2-lb` for two cones and `y4-lb` otherwise) and checks the whole chain
/// of claims at `(k, d)`.
pub fn verify_counterexample(s: &PointSet, cones: Cones, d: f64) -> Result<VerificationReport> {
    let family = if s.index_of("x").is_some() && s.index_of("y").is_some() {
        Family::Y3Lower
    } else if cones == Cones::TWO {
        Family::Y2Lower
    } else {
        Family::Y4Lower
    };
    let g1 = disk_graph(s, 1.0)?;
    let gd = disk_graph(s, d)?;
    let yk = yao_undirected(&gd, YaoParams::new(cones))?;
    let comps = components(&yk);
    let pq_in_yao = match (s.index_of("p"), s.index_of("q")) {
        (Some(p), Some(q)) => yk.has_edge(p, q),
        _ => false,
    };
    let (inequalities, missing_labels) = family_inequalities(s, family, d);
    let violated_inequalities = inequalities
        .iter()
        .filter(|c| !c.holds())
        .cloned()
        .collect();
    Ok(VerificationReport {
        family,
        k: cones.get(),
        d,
        g1_connected: is_connected(&g1),
        g1_is_path: is_path_graph(&g1),
        gd_is_path: is_path_graph(&gd),
        yk_disconnected: comps.len() > 1,
        component_count: comps.len(),
        pq_in_yao,
        inequalities,
        violated_inequalities,
        missing_labels,
    })
}
