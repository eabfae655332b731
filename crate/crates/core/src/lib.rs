//! Decide whether a linear hyperplane arrangement is strongly or virtually
//! inscribable with respect to a bilinear form, compute the space and cone of
//! inscribed zonotopes, construct and verify inscribed (possibly virtual)
//! zonotopes, and generate a catalog of reflection-type arrangements.
//!
//! All verdicts are exact over the rationals or a real quadratic extension;
//! float mode is supported for numeric experiments and is advisory.

pub mod arrangement;
pub mod catalog;
pub mod error;
pub mod exactalg;
pub mod format;
pub mod inscribe;
pub mod zonotope;

pub use error::{Error, Result};
pub use exactalg::{FieldSpec, Matrix, Scalar};

/// Default cap on tope enumeration.
pub const DEFAULT_REGION_CAP: usize = 100_000;
