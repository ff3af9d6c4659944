//! Topology matrices of weighted directed graphs.
//!
//! A [`NetworkSystem`] is an ordered node list, an ordered edge list and a
//! weight per edge. From it the crate builds the adjacency, degree,
//! Laplacian, incidence and weight matrices, machine-checks the identities
//! that relate them, performs Kron reduction of the Laplacian and analyses
//! power dissipation in resistive networks.

pub mod builders;
pub mod checks;
pub mod electrical;
pub mod generate;
pub mod graph;
pub mod io;
pub mod kron;
pub mod linalg;
pub mod oracle;
pub mod scalar;

pub use builders::TopologyMatrices;
pub use graph::{Edge, NetworkSystem, NodeLabel, Partition, Tier};
pub use linalg::{Matrix, Vector};
pub use scalar::{Backend, Rational, Scalar};
