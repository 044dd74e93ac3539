//! Exact exterior algebra `∧V` and linear subspaces of a fixed `∧^k V`.

mod multivector;
mod serial;
mod subspace;

pub use multivector::{binomial, blades, symplectic_form, Blade, MultiVector, MAX_DIM};
pub use serial::{MultiVectorRecord, TermRecord};
pub use subspace::{graph_extract, LinearMap, Subspace};
