//! Graph-invariant laboratory around the Wiener index and its behavior under
//! vertex deletion: good-vertex analysis, cactus families with a prescribed
//! number of good vertices, and an exhaustive census of connected unicyclic
//! graphs.

pub mod canon;
pub mod census;
pub mod construct;
pub mod dot;
pub mod good;
pub mod graph;
pub mod graph6;
pub mod metrics;
pub mod random;
pub mod trees;
pub mod unicyclic;

pub use canon::{canonical_form, canonical_form_colored, same_orbit, CanonicalForm};
pub use census::{
    automorphism_check, census_csv, census_summary, find_g12, run_census, CensusConfig,
    CensusOutcome, CensusRow,
};
pub use construct::{construct, ConstructError, ConstructionParams, ConstructionReport, Variant};
pub use good::{analyze, delta_profile, good_vertices, AnalysisReport, DeletionDelta};
pub use graph::{Graph, GraphError, VertexId};
pub use graph6::{decode_graph6, encode_graph6, Graph6Error};
pub use metrics::{transmission, wiener_index, Wiener};
pub use trees::enumerate_trees;
pub use unicyclic::enumerate_unicyclic;
