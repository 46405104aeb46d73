//! Exact integer and GF(2) matrix arithmetic.

mod det;
mod f2;
mod matrix;
mod snf;

pub use det::{det, is_unimodular};
pub use f2::{f2_is_onto, f2_solve, F2Matrix};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, solve_with, unimodular_inverse, z_image_membership, SmithDecomposition};
