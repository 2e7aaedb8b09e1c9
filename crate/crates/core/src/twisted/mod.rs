//! Twisted cochain complexes over group rings, their evaluation at
//! representations, and the Milnor–Turaev torsion function.
//!
//! Group elements act through the inverse of the representation: an entry
//! `Σ n_w w` of a differential becomes `Σ n_w ρ(w)^{-1}`.

mod complex;
mod phase;
mod rep;
mod torsion;
mod word;

pub use complex::{presentation_complex, GroupRingComplex, GroupRingMatrix, Presentation};
pub use phase::{arg_change, arg_invariant, distance_mod_pi, reduce_mod_pi};
pub use rep::{
    evaluate, evaluate_numeric, evaluate_rank1, is_acyclic_rep, EvaluatedComplex, NumericRep,
    Rank1Rep, Representation, RELATOR_TOL,
};
pub use torsion::{
    alexander_from_torsion, det_a, det_a_at, milnor_turaev, normalize_up_to_units, EulerShift,
    OrientationSign, TorsionValue,
};
pub use word::{fox_derivative, GroupRingElt, Word};
