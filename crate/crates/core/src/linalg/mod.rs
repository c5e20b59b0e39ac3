//! Exact scalars, dense matrices, graded maps and homogeneous linear systems.

mod graded;
mod matrix;
mod scalar;
mod solve;

pub use graded::{compose_graded, kernel, Dims, GradedMap, GradedModule};
pub use matrix::Matrix;
pub use scalar::{Field, Scalar, MAX_PRIME};
pub use solve::{solve_linear, LinearSystem, SolutionSpace};
