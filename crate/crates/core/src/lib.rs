//! Continuous-time quantum walks on neighborhood coronas `G ⋆ H`.
//!
//! Graph construction, exact quadratic-integer arithmetic, dense symmetric
//! spectral decompositions, closed-form corona spectra and state-transfer
//! analysis. Needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod corona;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod spectral;
pub mod transfer;

pub use arith::{Eigenvalue, QuadInt};
pub use corona::{CoronaEigenPair, CoronaSpec};
pub use error::{Error, Result};
pub use graph::{Graph, GraphSpec, VertexLabel};
pub use linalg::{CMatrix, Matrix};
pub use spectral::{SpectralDecomposition, Tolerances};
