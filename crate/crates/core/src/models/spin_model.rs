use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::meanfield::{
    dressed_fields, solve_mean_field, MeanFieldState, ModelKind, ModelSpec, SpinFields, SpinSusceptibility,
};
use crate::response::{
    cleared_pole_condition, dress, BareSusceptibility, ComplexFrequency, CoupledChannel, DressedResponse, Eval,
    Operator,
};
use crate::spectra::find_poles;
use crate::C64;

/// A spin model at its mean-field ground state, ready to be dressed.
#[derive(Debug, Clone)]
pub struct SpinModel {
    pub spec: ModelSpec,
    pub state: MeanFieldState,
    pub fields: SpinFields,
    labels: Vec<Operator>,
    channels: Vec<CoupledChannel>,
}

/// Solve the mean field of `spec` and wrap the resulting free-spin
/// susceptibility.
pub fn spin_model_bare_susceptibility(spec: &ModelSpec) -> Result<SpinModel> {
    let state = solve_mean_field(spec)?;
    let fields = dressed_fields(spec, &state);
    if fields.magnitude() == 0.0 {
        return Err(Error::DegenerateSpin);
    }
    Ok(SpinModel { spec: *spec, state, fields, labels: spec.labels(), channels: spec.coupled_channels() })
}

/// Heisenberg magnet in a cavity: the lattice exchange only shifts the
/// energy, the response is that of the Dicke model.
pub fn heisenberg_effective_response(spec: &ModelSpec) -> Result<SpinModel> {
    if spec.kind != ModelKind::Heisenberg {
        return Err(Error::InvalidParameter(format!("expected heisenberg, got {}", spec.kind.as_str())));
    }
    spin_model_bare_susceptibility(spec)
}

impl SpinModel {
    pub fn new(spec: &ModelSpec) -> Result<Self> {
        spin_model_bare_susceptibility(spec)
    }

    pub fn channels(&self) -> &[CoupledChannel] {
        &self.channels
    }

    /// Dressed photon propagators and matter susceptibility.
    pub fn response(&self, w: ComplexFrequency) -> Eval<DressedResponse> {
        dress(self, &self.channels, Some(0), w)
    }

    pub fn pole_condition(&self, omega: f64) -> f64 {
        cleared_pole_condition(self, &self.channels, Some(0), omega)
    }

    /// Collective-mode frequencies in `[lo, hi]` at zero broadening.
    pub fn poles(&self, lo: f64, hi: f64) -> Vec<f64> {
        find_poles(|x| self.pole_condition(x), lo, hi, Some(2))
    }
}

impl BareSusceptibility for SpinModel {
    fn labels(&self) -> &[Operator] {
        &self.labels
    }

    fn eval(&self, w: ComplexFrequency) -> Eval<DMatrix<C64>> {
        let s = SpinSusceptibility::eval(self.fields, w)?;
        let pick = |r: Operator, c: Operator| match (r, c) {
            (Operator::X, Operator::X) => s.xx,
            (Operator::X, Operator::Z) => s.xz,
            (Operator::Z, Operator::X) => s.zx,
            (Operator::Z, Operator::Z) => s.zz,
            _ => C64::new(0.0, 0.0),
        };
        let n = self.labels.len();
        Ok(DMatrix::from_fn(n, n, |i, j| pick(self.labels[i], self.labels[j])))
    }

    fn pole_clearing(&self, omega: f64) -> f64 {
        let eps = self.fields.magnitude();
        omega * omega - eps * eps
    }
}
