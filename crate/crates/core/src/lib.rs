//! Exact combinatorial torsion invariants.
//!
//! The crate is organised in layers:
//!
//! * [`algebra`]: exact scalars (Gaussian rationals, multivariate Laurent
//!   polynomials, rational functions), dense matrices over any of them, and
//!   floating complex matrices used as numeric oracles.
//! * [`variety`]: cochain complexes of a fixed shape, Milnor torsion, the
//!   Laplacian torsion `Sτ` and its spectral splitting.
//! * [`twisted`]: group-ring complexes, Fox calculus, evaluation at
//!   representations, Milnor–Turaev torsion, Alexander polynomials and the
//!   phase invariant.
//! * [`dynamics`]: mapping tori, twisted Lefschetz zeta functions and
//!   closed-orbit counting series.
//! * [`io`]: JSON file formats and the worked-example corpus.
//! * [`checks`]: the invariant suites run by `torsionlab check`.

pub mod algebra;
pub mod checks;
pub mod dynamics;
pub mod error;
pub mod io;
pub mod twisted;
pub mod variety;

pub use error::{Error, Result};
