//! Quasi-pseudometrics from quasi-uniform bases.

mod chain;
mod laws;
mod premetric;
mod verify;

pub use chain::{Chain, ChainStrategy, ClosedForm};
pub use laws::{distance_laws, LAW_NAMES};
pub use premetric::{
    generates_topology, AxiomRecord, ContinuityRecord, DistVariant, Premetric, PremetricDoc, DIST_SWEEP_MAX,
};
pub use verify::{BaseRotundness, CheckResult, CheckStatus, MetricBundle, CHECK_DEPTH_MAX, CHECK_NAMES};
