//! Cohomology of finite groups with lattice coefficients, two-term complexes
//! of lattices, flasque and coflasque resolutions, crossed modules and
//! patching diagnostics.

pub mod cohomology;
pub mod complexes;
pub mod crossed;
pub mod error;
pub mod fixtures;
pub mod groups;
pub mod io;
pub mod lattice;
pub mod patching;

pub use error::{Error, Result};
