use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::response::{ComplexFrequency, Eval};
use crate::C64;

/// Fields of `H = (omega_x sigma_x + omega_z sigma_z) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinFields {
    pub omega_x: f64,
    pub omega_z: f64,
}

impl SpinFields {
    pub fn new(omega_x: f64, omega_z: f64) -> Self {
        Self { omega_x, omega_z }
    }

    pub fn magnitude(&self) -> f64 {
        self.omega_x.hypot(self.omega_z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinGap {
    pub epsilon: f64,
    pub ground_energy: f64,
    /// Set when both fields vanish and the two levels coincide.
    pub degenerate: bool,
}

pub fn free_spin_gap(fields: SpinFields) -> SpinGap {
    let epsilon = fields.magnitude();
    SpinGap { epsilon, ground_energy: -0.5 * epsilon, degenerate: epsilon == 0.0 }
}

/// Retarded Pauli-matrix susceptibilities of a single spin in its ground
/// state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinSusceptibility {
    pub xx: C64,
    pub xz: C64,
    pub zx: C64,
    pub zz: C64,
}

impl SpinSusceptibility {
    pub(crate) fn eval(fields: SpinFields, w: ComplexFrequency) -> Eval<Self> {
        let eps = fields.magnitude();
        let z = w.value();
        let common = w.guard(2.0 / (eps * (z * z - eps * eps)))?;
        let (wx, wz) = (fields.omega_x, fields.omega_z);
        let xz = common * (wx * wz);
        Ok(Self { xx: -common * (wz * wz), xz, zx: xz, zz: -common * (wx * wx) })
    }
}

/// Bare susceptibility matrix `{xx, xz, zx, zz}` of a free spin.
pub fn free_spin_susceptibility(fields: SpinFields, w: ComplexFrequency) -> Result<SpinSusceptibility> {
    if free_spin_gap(fields).degenerate {
        return Err(Error::DegenerateSpin);
    }
    Ok(SpinSusceptibility::eval(fields, w)?)
}
