//! Exact linear response of many-body systems collectively coupled to a
//! cavity mode, in the thermodynamic limit.
//!
//! The cavity enters only through an induced, frequency-dependent
//! interaction; dressed photon and matter responses follow from the bare
//! matter susceptibility of an effective mean-field Hamiltonian.

pub mod bosonization;
pub mod error;
pub mod meanfield;
pub mod models;
pub mod response;
pub mod spectra;
pub mod validate;

pub use error::{Error, Result, Singular};
pub use num_complex::Complex64 as C64;
