//! Versioned JSON formats for point sets and edge lists.
//!
//! Coordinates are written with the shortest decimal that parses back to the
//! same `f64` (never more than 17 significant digits), so a save/load cycle
//! is bit-exact.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geometry::{euclid, Point, PointSet};
use crate::graphs::GeomGraph;

pub const FORMAT_VERSION: &str = "1";
/// Largest accepted gap between a stored edge length and the recomputed one.
pub const LENGTH_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSetFile {
    pub version: String,
    pub points: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub metadata: BTreeMap<String, Value>,
}

impl PointSetFile {
    pub fn from_point_set(s: &PointSet) -> Self {
        let labels = s.labels().iter().any(Option::is_some).then(|| {
            s.labels()
                .iter()
                .map(|l| l.clone().unwrap_or_default())
                .collect()
        });
        PointSetFile {
            version: FORMAT_VERSION.to_string(),
            points: s.iter().map(|p| [p.x, p.y]).collect(),
            labels,
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_metadata(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metadata.insert(key.to_string(), value.into());
        self
    }

    pub fn to_point_set(&self) -> Result<PointSet> {
        check_version(&self.version)?;
        let labels: Vec<Option<String>> = match &self.labels {
            None => vec![None; self.points.len()],
            Some(l) if l.len() == self.points.len() => l
                .iter()
                .map(|s| (!s.is_empty()).then(|| s.clone()))
                .collect(),
            Some(l) => {
                return Err(Error::LabelCount {
                    labels: l.len(),
                    points: self.points.len(),
                })
            }
        };
        PointSet::from_labeled(
            self.points
                .iter()
                .map(|&[x, y]| Point::new(x, y))
                .zip(labels),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("point set file is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeListFile {
    pub version: String,
    pub directed: bool,
    pub n: usize,
    /// `[source, target, length]` triples.
    pub edges: Vec<(usize, usize, f64)>,
}

impl EdgeListFile {
    pub fn from_graph(g: &GeomGraph<'_>) -> Self {
        EdgeListFile {
            version: FORMAT_VERSION.to_string(),
            directed: g.is_directed(),
            n: g.node_count(),
            edges: g
                .edges()
                .iter()
                .map(|e| (e.source, e.target, e.length))
                .collect(),
        }
    }

    /// Checks indices and cached lengths against the point set the edges
    /// refer to.
    pub fn validate_against(&self, s: &PointSet) -> Result<()> {
        check_version(&self.version)?;
        if self.n != s.len() {
            return Err(Error::Format(format!(
                "edge list is over {} nodes but the point set has {}",
                self.n,
                s.len()
            )));
        }
        for (i, &(a, b, len)) in self.edges.iter().enumerate() {
            if a >= self.n || b >= self.n || a == b {
                return Err(Error::Format(format!(
                    "edge {i} ({a}, {b}) has a bad endpoint"
                )));
            }
            let actual = euclid(&s[a], &s[b]);
            if (actual - len).abs() > LENGTH_TOLERANCE {
                return Err(Error::Format(format!(
                    "edge {i} ({a}, {b}) stores length {len} but the points are {actual} apart"
                )));
            }
        }
        Ok(())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(a, b, _)| (a, b))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("edge list file is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

fn check_version(v: &str) -> Result<()> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(Error::Format(format!("unsupported format version {v:?}")))
    }
}
