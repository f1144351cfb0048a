//! Frequencies, interaction channels and the dressing of bare responses by
//! the cavity-induced interaction.

mod channel;
mod dressing;
mod frequency;

pub use channel::{free_photon_propagator, induced_interaction, symmetrized_free_propagator, InteractionChannel};
pub use dressing::{
    anomalous_from_normal, cleared_pole_condition, dress, dress_matter_multichannel, dress_matter_single_channel,
    dress_photon, dressing_determinant, photon_propagators_eom, verify_pi_eom_equivalence, BareSusceptibility,
    CoupledChannel, DressedResponse, Equivalence, Susceptibility,
};
pub use frequency::{ComplexFrequency, Eval, Operator};
