//! Certificates that blow-ups of weighted projective spaces at a general point
//! are not Mori dream spaces.
//!
//! The pipeline starts from a relation `a·e + b·f = c·g` of width below one,
//! builds the toric fan of `P(a,b,c,d_1,…)`, checks the lattice-point
//! criteria on the associated triangles and tetrahedra, and records the
//! negative curve data in a self-checking [`certifier::Certificate`].

pub mod certifier;
pub mod error;
pub mod families;
pub mod fans;
pub mod gk;
pub mod intersect;
pub mod lattice;
pub mod relations;
pub mod semigroup;
mod serde_big;
pub mod snf;

pub use error::{Error, Result};
pub use lattice::{Int, LatticeVector, Rational, RationalPoint};
pub use relations::{find_relation, Relation, WeightsTriple};
