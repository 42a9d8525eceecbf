//! Reweighted spectral partitioning, end to end: compute the maximum
//! reweighted spectral gap of a graph together with its dual embedding
//! certificates, convert among the certificate families, reduce dimension,
//! round to sparse vertex cuts and balanced vertex separators, and check the
//! whole chain against brute-force oracles at desk scale.

pub mod certificates;
pub mod covering;
pub mod dimred;
pub mod eigen;
pub mod error;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod oracles;
pub mod reweighting;
pub mod rng;
pub mod rotation;
pub mod rounding;
pub mod spread;
pub mod transforms;

pub use certificates::{BallCertificate, Certificate, EmbeddingCertificate, SpreadEmbeddingCertificate};
pub use error::{Error, Result};
pub use geometry::{BallKind, BallSystem};
pub use graph::{Graph, Separator, VertexCut};
pub use reweighting::Reweighting;
pub use rotation::RotationSystem;
