//! Exact computations on representations of bound quiver algebras.
//!
//! Hom and Ext¹ spaces, Euler and Tits forms, King stability, cones of
//! effective weights, orthogonal exceptional pairs, and the construction that
//! transports Zwara's Kronecker module through an exceptional pair into a
//! tame hereditary or tame concealed algebra. All arithmetic is over exact
//! rationals.

pub mod catalog;
pub mod dimvec;
pub mod error;
pub mod exceptional;
pub mod forms;
pub mod genericrep;
pub mod homology;
pub mod linalg;
pub mod pipeline;
pub mod quiver;
pub mod rep;
pub mod stability;

pub use dimvec::{DimVector, Weight};
pub use error::{Error, Result};
pub use linalg::{QMatrix, Q};
pub use quiver::{BoundQuiverAlgebra, Path, Quiver, Relation};
pub use rep::{validate_representation, RawRepresentation, Representation, ValidationReport};

/// Version tag written into every JSON document.
pub const SCHEMA_VERSION: u32 = 1;
