//! Exact scalars, rational functions and dense linear algebra.

mod expr;
mod field;
mod gaussian;
mod gcd;
mod laurent;
pub(crate) mod matrix;
pub(crate) mod numeric;
mod ratfunc;

pub use expr::parse_ratfunc;
pub use field::Field;
pub use gaussian::GaussianRational;
pub use laurent::{LaurentPoly, VarNames};
pub use matrix::Matrix;
pub use num_complex::Complex64;
pub use numeric::{det_numeric, eigen_split, numeric_rank, NumericMatrix, SpectralSplit};
pub use ratfunc::RatFunc;

/// Dense matrix over Gaussian rationals.
pub type ExactMatrix = Matrix<GaussianRational>;
