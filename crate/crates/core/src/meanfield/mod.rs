//! Effective single-spin problem: free-spin gap and susceptibilities, model
//! specifications and the self-consistent mean-field solver.

mod solver;
mod spin;

pub use solver::{
    dressed_fields, mean_field_energy, solve_mean_field, solve_mean_field_numeric, stationarity_residual,
    MeanFieldState, ModelKind, ModelSpec,
};
pub use spin::{free_spin_gap, free_spin_susceptibility, SpinFields, SpinGap, SpinSusceptibility};
