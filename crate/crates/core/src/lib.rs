//! Exact mixed volumes of pairs of polyhedra and the singularity invariants
//! expressed through them.

pub mod error;
pub mod explain;
pub mod invariants;
pub mod lattice;
pub mod linalg;
pub mod mixed;
pub mod polyhedron;
pub mod problem;
pub mod rational;
pub mod resultant;

pub use error::{MixvolError, Result};
pub use explain::{Explained, Term};
pub use mixed::PolyhedronPair;
pub use polyhedron::Polyhedron;
pub use rational::Rational;
