//! Exact invariant exterior calculus on nilmanifolds with left-invariant
//! complex structures: structure equations, differentials, transversality
//! certificates, special-structure verifiers, invariant cohomology, and
//! first-order deformation obstructions.

pub mod scalar;
pub mod multiindex;
pub mod form;
pub mod linalg;
pub mod verdict;
pub mod structure;
pub mod parse;
pub mod cohomology;
pub mod transversality;
pub mod special;
pub mod deformation;
pub mod catalog;

pub use form::{FormError, InvariantForm, Simplicity};
pub use linalg::Matrix;
pub use multiindex::MultiIndex;
pub use scalar::{sigma, Scalar};
pub use structure::StructureEquations;
pub use verdict::{Outcome, Verdict, Witness};
