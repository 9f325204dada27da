//! Exact Cartan, Coxeter and Auslander-Reiten computations for path
//! coalgebras of acyclic quivers and incidence coalgebras of intervally
//! finite posets.

pub mod artranslate;
pub mod cartan;
pub mod coxeter;
pub mod error;
pub mod lazymatrix;
pub mod linalg;
pub mod presentation;
pub mod rep;
pub mod resolutions;
pub mod vertex;

pub use error::{Error, Result};
pub use vertex::{DimensionVector, IndexWindow, SparseVector, VertexId};
