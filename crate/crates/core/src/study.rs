//! Empirical connectivity radii over many random instances.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Cones, PointSet};
use crate::instances::{random_connected_instance, InstanceConfig, Model};
use crate::radius::{connectivity_radius, Radius, DEFAULT_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelChoice {
    /// Incremental-disk on even trials, perturbed-grid on odd ones.
    Alternate,
    Fixed(Model),
}

impl ModelChoice {
    pub fn for_trial(self, trial: usize) -> Model {
        match self {
            ModelChoice::Alternate => Model::ALL[trial % 2],
            ModelChoice::Fixed(m) => m,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub cones: Cones,
    pub trials: usize,
    pub n: usize,
    pub seed: u64,
    pub cap: f64,
    pub models: ModelChoice,
    pub bin_width: f64,
}

impl StudyConfig {
    pub fn new(cones: Cones, trials: usize, n: usize, seed: u64) -> Self {
        StudyConfig {
            cones,
            trials,
            n,
            seed,
            cap: DEFAULT_CAP,
            models: ModelChoice::Alternate,
            bin_width: 0.01,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub instance: InstanceConfig,
    pub radius: Radius,
}

impl TrialOutcome {
    /// Regenerates the point set this trial ran on.
    pub fn points(&self) -> Result<PointSet> {
        random_connected_instance(&self.instance)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudySummary {
    pub config: StudyConfig,
    /// One entry per trial, in trial order.
    pub outcomes: Vec<TrialOutcome>,
    pub max: Option<f64>,
    pub mean: Option<f64>,
    pub unbounded: usize,
    /// Non-empty bins of the finite radii.
    pub histogram: Vec<HistogramBin>,
}

impl StudySummary {
    /// Trials whose radius exceeds `bound` (or is unbounded under the cap).
    pub fn exceeding(&self, bound: f64) -> impl Iterator<Item = &TrialOutcome> {
        self.outcomes
            .iter()
            .filter(move |o| o.radius.finite().is_none_or(|r| r > bound))
    }
}

/// Seed for trial `trial`: splitmix64 of the master seed offset by the index.
pub fn trial_seed(master: u64, trial: usize) -> u64 {
    let mut z = master.wrapping_add((trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Runs [`connectivity_radius`] on `trials` independent random instances.
/// Trials run in parallel; the summary depends only on the configuration.
pub fn bound_study(cfg: &StudyConfig) -> Result<StudySummary> {
    if cfg.trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    if cfg.n < 2 {
        return Err(Error::InvalidConfig("n must be at least 2".into()));
    }
    if cfg.bin_width.is_nan() || cfg.bin_width <= 0.0 {
        return Err(Error::InvalidConfig("bin width must be positive".into()));
    }
    let outcomes = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let instance = InstanceConfig::new(
                cfg.n,
                trial_seed(cfg.seed, trial),
                cfg.models.for_trial(trial),
            );
            let points = random_connected_instance(&instance)?;
            let radius = connectivity_radius(&points, cfg.cones, cfg.cap)?.radius;
            Ok(TrialOutcome {
                trial,
                instance,
                radius,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let finite: Vec<f64> = outcomes.iter().filter_map(|o| o.radius.finite()).collect();
    let max = finite.iter().copied().reduce(f64::max);
    let mean = (!finite.is_empty()).then(|| finite.iter().sum::<f64>() / finite.len() as f64);

    let mut counts = std::collections::BTreeMap::<i64, usize>::new();
    for r in &finite {
        *counts
            .entry((r / cfg.bin_width).floor() as i64)
            .or_default() += 1;
    }
    let histogram = counts
        .into_iter()
        .map(|(bin, count)| HistogramBin {
            lower: bin as f64 * cfg.bin_width,
            upper: (bin + 1) as f64 * cfg.bin_width,
            count,
        })
        .collect();

    Ok(StudySummary {
        config: *cfg,
        unbounded: outcomes.len() - finite.len(),
        outcomes,
        max,
        mean,
        histogram,
    })
}
