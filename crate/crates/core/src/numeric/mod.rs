//! Numerical kernels: polynomial roots, log-determinants, linear solves.

mod linalg;
mod roots;

pub use linalg::{log_abs_det, solve_exactish, Mat};
pub use roots::{poly_roots, rationalize};
