//! Integer matrices, Smith normal form, finitely generated abelian groups and
//! G-lattices.

pub mod abelian;
pub mod fgmodule;
pub mod glattice;
pub mod linalg;
pub mod matrix;
pub mod snf;
pub mod sparse;

pub use abelian::{check_exactness, AbGroup, AbHom, ExactnessCheck, Subquotient};
pub use fgmodule::{fg_iso_check, FgMap, FgModule, TorsionFreeQuotient};
pub use glattice::{induce, make_permutation_lattice, map_decompose, GLattice, LatticeMap, MapDecomposition};
pub use matrix::IntMatrix;
pub use snf::{invariant_factors, smith_normal_form, smith_normal_form_with, SnfOptions, SnfResult};
pub use sparse::{SparseMatrix, SparseRow};
