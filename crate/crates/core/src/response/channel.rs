use serde::{Deserialize, Serialize};

use super::frequency::{ComplexFrequency, Eval};
use crate::error::{check_finite, Error, Result};
use crate::C64;

/// One collective coupling between a cavity mode and a matter operator.
///
/// `static_shift` is a frequency-independent piece added to the induced
/// interaction; direct spin-spin couplings are channels with `lambda = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InteractionChannel {
    pub lambda: f64,
    pub cavity_freq: f64,
    pub zeta: f64,
    pub static_shift: f64,
}

impl InteractionChannel {
    pub fn new(lambda: f64, cavity_freq: f64, zeta: f64) -> Result<Self> {
        let ch = Self { lambda, cavity_freq, zeta, static_shift: 0.0 };
        ch.validate()?;
        Ok(ch)
    }

    /// A purely static interaction of strength `shift`.
    pub fn static_only(shift: f64) -> Result<Self> {
        let ch = Self { lambda: 0.0, cavity_freq: 1.0, zeta: 0.0, static_shift: shift };
        ch.validate()?;
        Ok(ch)
    }

    pub fn with_static_shift(mut self, shift: f64) -> Self {
        self.static_shift = shift;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_finite("lambda", self.lambda)?;
        check_finite("cavity_freq", self.cavity_freq)?;
        check_finite("zeta", self.zeta)?;
        check_finite("static_shift", self.static_shift)?;
        if self.lambda < 0.0 {
            return Err(Error::InvalidParameter(format!("lambda must be >= 0, got {}", self.lambda)));
        }
        if self.cavity_freq <= 0.0 {
            return Err(Error::InvalidParameter(format!("cavity_freq must be > 0, got {}", self.cavity_freq)));
        }
        Ok(())
    }

    /// True when the channel carries a cavity pole.
    pub fn is_dynamic(&self) -> bool {
        self.lambda != 0.0
    }

    /// Zero-frequency value of the induced interaction.
    pub fn static_interaction(&self) -> f64 {
        2.0 * self.lambda * self.lambda * (self.zeta - 1.0) / self.cavity_freq + self.static_shift
    }
}

/// Cavity-mediated interaction seen by the matter operator of `ch`.
pub fn induced_interaction(ch: &InteractionChannel, w: ComplexFrequency) -> Eval<C64> {
    if !ch.is_dynamic() {
        return Ok(C64::new(ch.static_shift, 0.0));
    }
    let z = w.value();
    let om = ch.cavity_freq;
    let om2 = om * om;
    let num = 2.0 * ch.lambda * ch.lambda * (om2 * (ch.zeta - 1.0) - ch.zeta * z * z);
    let den = om * (om2 - z * z);
    w.guard(num / den).map(|v| v + ch.static_shift)
}

/// Bare photon propagator `1/(omega+ - Omega)`.
pub fn free_photon_propagator(cavity_freq: f64, w: ComplexFrequency) -> Eval<C64> {
    w.guard(1.0 / (w.value() - cavity_freq))
}

/// Propagator of the photon quadrature `a + a^dagger`.
pub fn symmetrized_free_propagator(cavity_freq: f64, w: ComplexFrequency) -> Eval<C64> {
    let z = w.value();
    w.guard(1.0 / (z - cavity_freq) - 1.0 / (z + cavity_freq))
}
