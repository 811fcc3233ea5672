//! Graph-symmetry toolkit for finite homogeneity analysis.
//!
//! The crate builds finite truncations of the column graph families
//! (complete multipartite columns, their doubled and bridged variants,
//! matched clique pairs), decides per-k homogeneity of a finite graph by
//! automorphism-orbit computation, classifies inputs against those
//! families, and constructs the unary/binary expansions that make the
//! non-homogeneous cases homogeneous.
//!
//! Modules:
//! - [`graph`]: bitset graphs, construction algebra, DOT export.
//! - [`graph6`]: byte-exact interchange format.
//! - [`symmetry`]: permutation groups, canonical labeling, orbits.
//! - [`families`]: generators for the named graph families.
//! - [`homogeneity`]: k-homogeneity spectra with failure witnesses.
//! - [`classifier`]: structure recognition and parameter recovery.
//! - [`homogenize`]: homogenizing expansions and their verification.

pub mod budget;
pub mod classifier;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod homogeneity;
pub mod homogenize;
pub mod symmetry;

pub use budget::Budget;
pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, VertexSet};
