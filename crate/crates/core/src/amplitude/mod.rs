//! Amplitudes: evaluators, contents, the axiom checker and c_tau-rank.

mod axioms;
mod ctau;
mod eval;
mod shift;
mod spec;

pub use axioms::{
    check_axioms, eq_tol, hilbert_invariance_check, integral_representation_check, le_tol, AxiomReport,
};
pub use ctau::c_tau_rank;
pub use eval::{
    eval_barcode, eval_grid, eval_hilbert, lp_integral, magnitude, p_norm, support_length, tropical_sigma10,
};
pub use shift::{displacement_range, shift_amplitude};
pub use spec::{AmplitudeSpec, Content, Norm};
