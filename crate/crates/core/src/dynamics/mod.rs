//! Mapping tori and twisted Lefschetz zeta functions, closed-orbit series,
//! truncated dynamical torsion and its zeta-product factors.

mod mapping_torus;
mod orbits;

pub use mapping_torus::{
    lefschetz_zeta, lefschetz_zeta_symbolic, mapping_torus_complex, point_complex, torus_action,
    torus_chain_map, wang_acyclic, ChainMapData, CohomologyAction, CAT_MAP,
};
pub use orbits::{
    aggregate_lefschetz, dynamical_torsion_truncated, lefschetz_numbers, llet_factor, log_zeta_r,
    p_series_truncated, suspension_orbits, zeta_r, ClosedOrbit, DynamicalTorsion, OrbitSeries,
    SUSPENSION_GENERATOR,
};
