//! Cochain complexes of a fixed shape and their torsion functions.

mod complex;
pub mod random;
mod spectral;
mod torsion;

pub use complex::{
    betti, dim_db, is_acyclic, is_admissible, BettiString, CochainComplex, Shape, NUMERIC_D2_RTOL,
};
pub use spectral::{admissible_radii, spectral_split_report, spectral_split_storsion, SplitReport};
pub use torsion::{laplacians, milnor_torsion, on_sigma, s_torsion};
