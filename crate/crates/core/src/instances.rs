//! Seeded random point sets whose unit disk graph is connected.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};
use crate::graphs::{disk_graph, is_connected};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// Each new point falls uniformly in the unit disk around a uniformly
    /// chosen earlier point.
    IncrementalDisk,
    /// Row-major fill of a `⌈√n⌉ × ⌈√n⌉` grid of spacing 0.9 with uniform
    /// jitter in `[-0.05, 0.05]²`.
    PerturbedGrid,
}

impl Model {
    pub const ALL: [Model; 2] = [Model::IncrementalDisk, Model::PerturbedGrid];

    pub fn name(self) -> &'static str {
        match self {
            Model::IncrementalDisk => "incremental-disk",
            Model::PerturbedGrid => "perturbed-grid",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown model {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstanceConfig {
    pub n: usize,
    pub seed: u64,
    pub model: Model,
    /// Uniform coordinate scale in `(0, 1]` applied after generation.
    pub scale: f64,
}

impl InstanceConfig {
    pub fn new(n: usize, seed: u64, model: Model) -> Self {
        InstanceConfig {
            n,
            seed,
            model,
            scale: 1.0,
        }
    }
}

pub const GRID_SPACING: f64 = 0.9;
pub const GRID_JITTER: f64 = 0.05;

/// Deterministic in `cfg`; the result always has a connected `G^1`.
pub fn random_connected_instance(cfg: &InstanceConfig) -> Result<PointSet> {
    if cfg.n == 0 {
        return Err(Error::InvalidConfig("n must be at least 1".into()));
    }
    if !(cfg.scale > 0.0 && cfg.scale <= 1.0) {
        return Err(Error::InvalidConfig(format!(
            "scale must lie in (0, 1], got {}",
            cfg.scale
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    loop {
        let raw = match cfg.model {
            Model::IncrementalDisk => incremental_disk(cfg.n, &mut rng),
            Model::PerturbedGrid => perturbed_grid(cfg.n, &mut rng),
        };
        let scaled = raw
            .into_iter()
            .map(|p| Point::new(p.x * cfg.scale, p.y * cfg.scale));
        // a coincident pair or a rounding-induced gap is astronomically
        // unlikely; redraw from the same stream if it happens
        let Ok(set) = PointSet::from_points(scaled) else {
            continue;
        };
        if is_connected(&disk_graph(&set, 1.0)?) {
            return Ok(set);
        }
    }
}

fn incremental_disk(n: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let mut pts = vec![Point::ORIGIN];
    while pts.len() < n {
        let parent = pts[rng.random_range(0..pts.len())];
        let r = rng.random::<f64>().sqrt();
        let theta = rng.random::<f64>() * TAU;
        let candidate = parent.offset(r * theta.cos(), r * theta.sin());
        if parent.dist2(&candidate) <= 1.0 && !pts.contains(&candidate) {
            pts.push(candidate);
        }
    }
    pts
}

fn perturbed_grid(n: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    let side = (n as f64).sqrt().ceil() as usize;
    (0..n)
        .map(|idx| {
            let (row, col) = (idx / side, idx % side);
            let jx = rng.random_range(-GRID_JITTER..=GRID_JITTER);
            let jy = rng.random_range(-GRID_JITTER..=GRID_JITTER);
            Point::new(
                col as f64 * GRID_SPACING + jx,
                row as f64 * GRID_SPACING + jy,
            )
        })
        .collect()
}
