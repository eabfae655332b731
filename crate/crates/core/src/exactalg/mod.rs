//! Ordered-field scalar arithmetic, exact dense linear algebra, Pfaffians,
//! and a strict-feasibility simplex. Everything here is pure and immutable
//! after construction.

pub mod kernel;
pub mod matrix;
pub mod pfaffian;
pub mod scalar;
pub mod simplex;

pub use kernel::{kernel_basis, rank, rank_of_vectors, KernelTracker};
pub use matrix::Matrix;
pub use pfaffian::pfaffian;
pub use scalar::{FieldSpec, Scalar};
pub use simplex::{strict_feasibility_lp, strict_interior_point, StrictLp};
