//! Graded bases on affine varieties in Noether position, exact compliance
//! checks between them, and Vandermonde-based transfinite diameter estimates.

pub mod bases;
pub mod error;
pub mod numeric;
pub mod polyring;
pub mod variety;
pub mod vdm;

pub use error::{Error, Result};
pub use num_complex::Complex64;
