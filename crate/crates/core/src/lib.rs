//! Exact Kauffman-bracket skein computations for the quaternionic manifold
//! `S^3/Q_8`: recoupling theory, handle-slide relations, reduction of the
//! genus-2 handlebody basis to five generators, and the root-of-unity
//! numerics used to separate those generators.

pub mod error;
pub mod exactalg;
pub mod fault;
pub mod gauss;
pub mod handlebody;
pub mod invariants;
pub mod recoupling;
pub mod reduction;
pub mod relations;
pub mod tloracle;

pub use error::{Result, SkeinError};
pub use exactalg::{LaurentPoly, RationalFn};
pub use handlebody::{BasisTriple, SkeinVector};
