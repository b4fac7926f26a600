//! Yao subgraphs of disk graphs: cone geometry, graph construction, exact
//! connectivity radii, adversarial point sets and their verification.

pub mod claims;
pub mod counterexamples;
pub mod error;
pub mod geometry;
pub mod graphs;
pub mod instances;
pub mod io;
pub mod plot;
pub mod radius;
pub mod study;

pub use counterexamples::{
    generate_family, verify_counterexample, ConstructionError, ConstructionParams, Family,
    VerificationReport,
};
pub use error::{Error, Result};
pub use geometry::{
    cone_of, d_rhombus, euclid, l_inf, ConeIndex, Cones, Point, PointSet, Transform,
};
pub use graphs::{
    components, disk_graph, is_connected, is_path_graph, yao_directed, yao_of_disk, yao_undirected,
    GeomGraph, YaoParams,
};
pub use radius::{connectivity_radius, Radius, RadiusResult, DEFAULT_CAP};
