//! Claim-by-claim verification suites behind `yao verify`.
//!
//! Each suite returns one [`ClaimOutcome`] per checked claim; failing claims
//! carry the offending point set so it can be written out and replayed.

use std::f64::consts::{FRAC_PI_3, SQRT_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::counterexamples::{
    build_points, generate_family, verify_counterexample, y3_eps_range, y4_eps_upper,
    ConstructionParams, Family, DEFAULT_ALPHA,
};
use crate::error::Result;
use crate::geometry::{cone_of, d_rhombus, euclid, l_inf, normalize_angle, Cones, Point, PointSet};
use crate::study::{bound_study, StudyConfig};

/// `|d_R(a,b) - d_R(b,a)|` ceiling.
pub const SYMMETRY_TOL: f64 = 1e-9;
/// Slack on the Euclidean sandwich inequalities.
pub const SANDWICH_TOL: f64 = 1e-12;
/// Slack on the proven connectivity radii.
pub const BOUND_TOL: f64 = 1e-9;
/// Samples closer than this (radians) to a cone ray or bisector are redrawn.
pub const BOUNDARY_GUARD: f64 = 1e-9;

pub const DEFAULT_SAMPLES: usize = 100_000;
pub const DEFAULT_TRIALS: usize = 500;
pub const DEFAULT_N: usize = 40;

pub const Y4_LOWER_RADII: [f64; 5] = [1.0, 1.1, 1.2, 1.3, 1.4];
pub const Y3_LOWER_RADII: [f64; 4] = [1.0, 1.02, 1.04, 1.05];
pub const Y2_RADII: [f64; 4] = [1.0, 2.0, 5.0, 10.0];
const EPS_FRACTIONS: [f64; 3] = [0.25, 0.5, 0.75];

pub fn y3_upper_radius() -> f64 {
    2.0 / 3f64.sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimOutcome {
    pub claim: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub instance: Option<PointSet>,
}

impl ClaimOutcome {
    fn pass(claim: String, detail: String) -> Self {
        ClaimOutcome {
            claim,
            passed: true,
            detail,
            instance: None,
        }
    }

    fn fail(claim: String, detail: String, instance: Option<PointSet>) -> Self {
        ClaimOutcome {
            claim,
            passed: false,
            detail,
            instance,
        }
    }
}

/// Generates the set, checks it is a counterexample at `(k, d)` and that it
/// reconnects at `reconnect` when given.
pub fn check_construction(params: &ConstructionParams, reconnect: Option<f64>) -> ClaimOutcome {
    let claim = format!(
        "{} d={} eps={:.6} alpha={:e} r={}",
        params.family, params.d, params.eps, params.alpha, params.r
    );
    let cones = params.family.cones();
    let s = match generate_family(params) {
        Ok(s) => s,
        Err(e) => {
            let raw = build_points(params).ok();
            let extra = raw
                .as_ref()
                .and_then(|s| verify_counterexample(s, cones, params.d).ok())
                .map(|r| {
                    format!(
                        "; as built, Y_{} has {} component(s)",
                        r.k, r.component_count
                    )
                })
                .unwrap_or_default();
            return ClaimOutcome::fail(claim, format!("{e}{extra}"), raw);
        }
    };
    let report = match verify_counterexample(&s, cones, params.d) {
        Ok(r) => r,
        Err(e) => return ClaimOutcome::fail(claim, e.to_string(), Some(s)),
    };
    if !report.passed() || report.pq_in_yao {
        let detail = format!(
            "G^1 connected={} G^1 path={} G^d path={} components={} pq kept={} violated=[{}]",
            report.g1_connected,
            report.g1_is_path,
            report.gd_is_path,
            report.component_count,
            report.pq_in_yao,
            report
                .violated_inequalities
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        );
        return ClaimOutcome::fail(claim, detail, Some(s));
    }
    if let Some(big) = reconnect {
        match verify_counterexample(&s, cones, big) {
            Ok(r) if !r.yk_disconnected => {}
            Ok(r) => {
                return ClaimOutcome::fail(
                    claim,
                    format!("still {} components at d={big}", r.component_count),
                    Some(s),
                )
            }
            Err(e) => return ClaimOutcome::fail(claim, e.to_string(), Some(s)),
        }
    }
    ClaimOutcome::pass(
        claim,
        format!(
            "{} points, Y_{} has {} components, pq dropped",
            s.len(),
            cones,
            report.component_count
        ),
    )
}

/// Four-cone lower bound over a grid of radii, `ε` positions and tilts; each
/// set must also reconnect at `√2`.
pub fn y4_lower_grid() -> Vec<ClaimOutcome> {
    let mut out = Vec::new();
    for d in Y4_LOWER_RADII {
        for frac in EPS_FRACTIONS {
            for alpha in [1e-3, 1e-4] {
                let params = ConstructionParams {
                    family: Family::Y4Lower,
                    d,
                    eps: frac * y4_eps_upper(d),
                    alpha,
                    r: 3,
                };
                out.push(check_construction(&params, Some(SQRT_2)));
            }
        }
    }
    out
}

/// Three-cone lower bound over the stated `(d, ε)` ranges; each set must
/// also reconnect at `2/√3`.
pub fn y3_lower_grid() -> Vec<ClaimOutcome> {
    let mut out = Vec::new();
    for d in Y3_LOWER_RADII {
        let (lo, hi) = y3_eps_range(d);
        for frac in EPS_FRACTIONS {
            let params = ConstructionParams {
                family: Family::Y3Lower,
                d,
                eps: lo + frac * (hi - lo),
                alpha: DEFAULT_ALPHA,
                r: 3,
            };
            out.push(check_construction(&params, Some(y3_upper_radius())));
        }
    }
    out
}

/// Least chain length from the closed form with `α → 0`:
/// `(r - ε)² + 1 > d²`.
pub fn y2_chain_estimate(d: f64, eps: f64) -> usize {
    ((d * d - 1.0).max(0.0).sqrt() + eps).floor() as usize + 1
}

/// Two-cone sets for growing `d`, including the linear growth of the chain.
pub fn y2_family() -> Vec<ClaimOutcome> {
    let mut out = Vec::new();
    for d in Y2_RADII {
        let params = match ConstructionParams::defaults(Family::Y2Lower, d) {
            Ok(p) => p,
            Err(e) => {
                out.push(ClaimOutcome::fail(
                    format!("y2-lb d={d}"),
                    e.to_string(),
                    None,
                ));
                continue;
            }
        };
        out.push(check_construction(&params, None));
        let estimate = y2_chain_estimate(d, params.eps);
        let claim = format!(
            "y2-lb d={d} chain length r={} vs estimate {estimate}",
            params.r
        );
        if params.r.abs_diff(estimate) <= 1 {
            out.push(ClaimOutcome::pass(
                claim,
                format!("{} points", 2 * params.r + 2),
            ));
        } else {
            out.push(ClaimOutcome::fail(
                claim,
                "chain length off estimate".into(),
                None,
            ));
        }
    }
    out
}

/// Connectivity radius of `trials` random instances stays below `bound`.
pub fn upper_bound_trials(
    cones: Cones,
    bound: f64,
    trials: usize,
    n: usize,
    seed: u64,
) -> Result<ClaimOutcome> {
    let summary = bound_study(&StudyConfig::new(cones, trials, n, seed))?;
    let claim =
        format!("Y_{cones} connectivity radius <= {bound:.9} over {trials} instances (n={n})");
    let max = summary.max.unwrap_or(f64::NAN);
    if let Some(bad) = summary.exceeding(bound + BOUND_TOL).next() {
        let detail = format!(
            "trial {} ({} seed {}) has radius {:?}",
            bad.trial, bad.instance.model, bad.instance.seed, bad.radius
        );
        return Ok(ClaimOutcome::fail(claim, detail, bad.points().ok()));
    }
    Ok(ClaimOutcome::pass(
        claim,
        format!(
            "max observed {max:.9}, mean {:.9}",
            summary.mean.unwrap_or(f64::NAN)
        ),
    ))
}

fn uniform_point(rng: &mut impl Rng, half: f64) -> Point {
    Point::new(rng.random_range(-half..half), rng.random_range(-half..half))
}

/// Two distinct points uniform in `[-10, 10]²`.
pub fn sample_pair(rng: &mut impl Rng) -> (Point, Point) {
    loop {
        let a = uniform_point(rng, 10.0);
        let b = uniform_point(rng, 10.0);
        if a != b {
            return (a, b);
        }
    }
}

/// Angular distance from `theta` to the nearest multiple of `step`.
fn gap_to_grid(theta: f64, step: f64) -> f64 {
    let r = theta.rem_euclid(step);
    r.min(step - r)
}

/// A triple `(a, b, c)` with `b, c` in the same half of one three-cone
/// sector of `a` (lower half without the bisector, or upper half with it)
/// and `|ac| <= |ab|`. Samples within [`BOUNDARY_GUARD`] of a ray or bisector
/// are redrawn.
pub fn sample_half_cone_triple(rng: &mut impl Rng) -> (Point, Point, Point) {
    loop {
        let a = uniform_point(rng, 10.0);
        let cone = rng.random_range(0..3) as f64;
        let half = rng.random_range(0..2) as f64;
        let start = cone * 2.0 * FRAC_PI_3 + half * FRAC_PI_3;
        let rb = rng.random_range(0.01..10.0);
        let rc = rng.random_range(0.0..=1.0) * rb;
        let tb = start + rng.random_range(0.0..FRAC_PI_3);
        let tc = start + rng.random_range(0.0..FRAC_PI_3);
        let b = a.offset(rb * tb.cos(), rb * tb.sin());
        let c = a.offset(rc * tc.cos(), rc * tc.sin());
        if c == a || b == a || a.dist2(&c) > a.dist2(&b) {
            continue;
        }
        // re-derive the halves from the rounded coordinates
        let (ab, ac) = (a.angle_to(&b), a.angle_to(&c));
        if gap_to_grid(ab, FRAC_PI_3) < BOUNDARY_GUARD
            || gap_to_grid(ac, FRAC_PI_3) < BOUNDARY_GUARD
        {
            continue;
        }
        if (ab / FRAC_PI_3).floor() != (ac / FRAC_PI_3).floor() {
            continue;
        }
        return (a, b, c);
    }
}

fn suite_rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Chebyshev/Euclidean sandwich on `samples` random pairs.
pub fn chebyshev_suite(samples: usize, seed: u64) -> ClaimOutcome {
    let mut rng = suite_rng(seed, 1);
    let mut bad = None;
    for _ in 0..samples {
        let (a, b) = sample_pair(&mut rng);
        let (inf, e) = (l_inf(&a, &b), euclid(&a, &b));
        if !(inf <= e && e <= SQRT_2 * inf + SANDWICH_TOL) {
            bad = Some((a, b, format!("d_inf={inf} |ab|={e}")));
            break;
        }
    }
    pair_outcome("d_inf <= |ab| <= sqrt(2) d_inf", samples, bad)
}

/// Three-cone rhombus distance: symmetry, then the Euclidean sandwich.
pub fn rhombus_suites(samples: usize, seed: u64) -> Vec<ClaimOutcome> {
    let k3 = Cones::THREE;
    let mut rng = suite_rng(seed, 2);
    let mut worst = 0.0f64;
    let mut bad = None;
    for _ in 0..samples {
        let (a, b) = sample_pair(&mut rng);
        let gap = (d_rhombus(&a, &b, k3) - d_rhombus(&b, &a, k3)).abs();
        worst = worst.max(gap);
        if gap > SYMMETRY_TOL && bad.is_none() {
            bad = Some((a, b, format!("|d_R(a,b) - d_R(b,a)| = {gap:e}")));
        }
    }
    let mut symmetry = pair_outcome("d_R(a,b) = d_R(b,a)", samples, bad);
    if symmetry.passed {
        symmetry.detail = format!("{} (worst gap {worst:.3e})", symmetry.detail);
    }

    let mut rng = suite_rng(seed, 3);
    let mut bad = None;
    let half_sqrt3 = 3f64.sqrt() / 2.0;
    for _ in 0..samples {
        let (a, b) = sample_pair(&mut rng);
        let (dr, e) = (d_rhombus(&a, &b, k3), euclid(&a, &b));
        if !(half_sqrt3 * dr - SANDWICH_TOL <= e && e <= dr + SANDWICH_TOL) {
            bad = Some((a, b, format!("d_R={dr} |ab|={e}")));
            break;
        }
    }
    vec![
        symmetry,
        pair_outcome("(sqrt(3)/2) d_R <= |ab| <= d_R", samples, bad),
    ]
}

/// Rhombus distance contracts on half-cone triples.
pub fn half_cone_suite(samples: usize, seed: u64) -> ClaimOutcome {
    let k3 = Cones::THREE;
    let mut rng = suite_rng(seed, 4);
    let mut violations = 0usize;
    let mut first = None;
    for _ in 0..samples {
        let (a, b, c) = sample_half_cone_triple(&mut rng);
        let (bc, ab) = (d_rhombus(&b, &c, k3), d_rhombus(&a, &b, k3));
        if bc >= ab || bc.is_nan() || ab.is_nan() {
            violations += 1;
            first.get_or_insert((a, b, c, format!("d_R(b,c)={bc} d_R(a,b)={ab}")));
        }
    }
    let claim = format!("half-cone triples: d_R(b,c) < d_R(a,b) ({samples} samples)");
    match first {
        None => ClaimOutcome::pass(claim, "0 violations".into()),
        Some((a, b, c, msg)) => ClaimOutcome::fail(
            claim,
            format!("{violations} violations, first: {msg}"),
            PointSet::from_points([a, b, c]).ok(),
        ),
    }
}

/// All metric suites in one list.
pub fn metric_suites(samples: usize, seed: u64) -> Vec<ClaimOutcome> {
    let mut out = vec![chebyshev_suite(samples, seed)];
    out.extend(rhombus_suites(samples, seed));
    out.push(half_cone_suite(samples, seed));
    out
}

fn pair_outcome(name: &str, samples: usize, bad: Option<(Point, Point, String)>) -> ClaimOutcome {
    let claim = format!("{name} ({samples} samples)");
    match bad {
        None => ClaimOutcome::pass(claim, "0 violations".into()),
        Some((a, b, msg)) => ClaimOutcome::fail(
            claim,
            format!("{msg} at a={a} b={b}"),
            PointSet::from_points([a, b]).ok(),
        ),
    }
}

/// True if `theta` is at least `guard` away from every ray of `cones`.
pub fn clear_of_rays(theta: f64, cones: Cones, guard: f64) -> bool {
    gap_to_grid(normalize_angle(theta), cones.width()) >= guard
}

/// Rotating `q` about `apex` by one cone width moves it to the next cone.
pub fn rotation_advances_cone(apex: &Point, q: &Point, cones: Cones) -> Option<bool> {
    let theta = apex.angle_to(q);
    let r = euclid(apex, q);
    let turned = normalize_angle(theta + TAU / cones.get() as f64);
    if !clear_of_rays(theta, cones, BOUNDARY_GUARD) || !clear_of_rays(turned, cones, BOUNDARY_GUARD)
    {
        return None;
    }
    let q2 = apex.offset(r * turned.cos(), r * turned.sin());
    let before = cone_of(apex, q, cones).ok()?;
    let after = cone_of(apex, &q2, cones).ok()?;
    Some(after == before.next())
}
