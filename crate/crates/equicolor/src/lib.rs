//! Constructive equitable colouring of forests, outerplanar graphs, and
//! planar graphs, with exhaustive oracles, verifiers, and generators for the
//! extremal families showing the hypotheses are sharp.
//!
//! An equitable s-colouring is a proper colouring whose class sizes all lie
//! in {⌊n/s⌋, ⌈n/s⌉}. The central hypothesis throughout is a lower bound on
//! α_v — the largest independent set through each vertex v: every pipeline
//! either produces a verified colouring or reports exactly which hypothesis
//! failed.
//!
//! Modules:
//! - [`graph`]: representation, outerplane embeddings, weak dual, capped
//!   3-colouring.
//! - [`oracle`]: exact α_v, exhaustive searches, triangulation enumeration.
//! - [`forest`]: equitable s-colouring of forests (s ≥ 3).
//! - [`partition`]: degree-controlled saturation, reducible configurations,
//!   half-degree forest equipartition.
//! - [`outerplanar`]: the s ≥ 6 pipeline for outerplanar graphs.
//! - [`planar`]: the s ≥ 40 pipeline for planar graphs.
//! - [`construct`]: extremal-family generators and random fixtures.
//! - [`report`]: run reports and assertion telemetry.
//! - [`batch`]: corpus helpers (parallel with the `parallel` feature,
//!   sequential always available).

pub mod batch;
pub mod coloring;
pub mod construct;
pub mod error;
pub mod forest;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod outerplanar;
pub mod partition;
pub mod planar;
pub mod report;
mod util;

pub use coloring::Coloring;
pub use error::{Error, Result};
pub use graph::{Graph, ValidationReport};
