//! Concrete material models: spin models at their mean-field state and the
//! two-dimensional electron gas in a magnetic field.

mod polaritons;
mod qhe;
mod spin_model;

pub use polaritons::{dicke_polaritons, lmg_longitudinal_polaritons};
pub use qhe::{
    bare_current_response, conductivity, current_response, current_response_explicit, landau_polaritons, Conductivity,
    CurrentResponse, QheModel, QheSpec,
};
pub use spin_model::{heisenberg_effective_response, spin_model_bare_susceptibility, SpinModel};
