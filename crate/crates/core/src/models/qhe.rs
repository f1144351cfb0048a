use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{check_finite, Error, Result};
use crate::response::{
    cleared_pole_condition, dress, symmetrized_free_propagator, BareSusceptibility, ComplexFrequency, CoupledChannel,
    DressedResponse, Eval, InteractionChannel, Operator,
};
use crate::spectra::find_poles;
use crate::C64;

/// Two-dimensional electron gas in a perpendicular magnetic field, coupled
/// to one cavity mode polarised along x. Frequencies share one unit;
/// current responses are in units of `N e^2 / m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QheSpec {
    pub cavity_freq: f64,
    pub plasma_freq: f64,
    pub cyclotron_freq: f64,
    /// Landau-level filling; converts Hall conductivity to units of e^2/h.
    pub filling: f64,
}

impl QheSpec {
    pub fn validate(&self) -> Result<()> {
        for (n, v) in [
            ("cavity_freq", self.cavity_freq),
            ("plasma_freq", self.plasma_freq),
            ("cyclotron_freq", self.cyclotron_freq),
            ("filling", self.filling),
        ] {
            check_finite(n, v)?;
            if v < 0.0 {
                return Err(Error::InvalidParameter(format!("{n} must be >= 0, got {v}")));
            }
        }
        if self.cavity_freq == 0.0 {
            return Err(Error::InvalidParameter("cavity_freq must be > 0".into()));
        }
        Ok(())
    }

    /// Cavity frequency renormalised by the diamagnetic term.
    pub fn dressed_cavity_freq(&self) -> f64 {
        self.cavity_freq.hypot(self.plasma_freq)
    }
}

/// Current-current response tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurrentResponse {
    pub xx: C64,
    pub xy: C64,
    pub yx: C64,
    pub yy: C64,
}

/// Cyclotron response of the electron gas without the cavity.
pub fn bare_current_response(cyclotron_freq: f64, w: ComplexFrequency) -> Eval<CurrentResponse> {
    let z = w.value();
    let wc = cyclotron_freq;
    let plus = w.guard(1.0 / (z + wc))?;
    let minus = w.guard(1.0 / (z - wc))?;
    let xx = -wc * 0.5 * (plus - minus);
    let xy = C64::new(0.0, wc) * 0.5 * (plus + minus);
    Ok(CurrentResponse { xx, xy, yx: -xy, yy: xx })
}

/// Dressed current response from the bare response and the induced
/// interaction.
pub fn current_response(spec: &QheSpec, w: ComplexFrequency) -> Eval<CurrentResponse> {
    let g0 = bare_current_response(spec.cyclotron_freq, w)?;
    let wt = spec.dressed_cavity_freq();
    let wp2 = spec.plasma_freq * spec.plasma_freq;
    let ds = symmetrized_free_propagator(wt, w)?;
    let v = wp2 * ds;
    let photon = wp2 / (wt * wt) * (wt / 2.0) * ds;
    let pref = 1.0 + photon;
    let den = 1.0 - v * g0.xx / (2.0 * wt);
    let xy = w.guard(pref * g0.xy / den)?;
    let yx = w.guard(pref * g0.yx / den)?;
    let xx = w.guard(pref * pref * g0.xx / den + photon)?;
    let yy = w.guard((g0.yy + v / (2.0 * wt) * (g0.xy * g0.yx - g0.xx * g0.yy)) / den)?;
    Ok(CurrentResponse { xx, xy, yx, yy })
}

/// Rational closed forms of the dressed current response.
pub fn current_response_explicit(spec: &QheSpec, w: ComplexFrequency) -> Eval<CurrentResponse> {
    let z = w.value();
    let z2 = z * z;
    let (om, wp, wc) = (spec.cavity_freq, spec.plasma_freq, spec.cyclotron_freq);
    let wt2 = om * om + wp * wp;
    let q = (z2 - wt2) * (z2 - wc * wc) - wp * wp * wc * wc;
    let xy = w.guard(C64::new(0.0, wc) * z * (z2 - om * om) / q)?;
    let s = wc * wc + wp * wp;
    let xx = if s > 0.0 { w.guard(s * (z2 - om * om * wc * wc / s) / q)? } else { C64::new(0.0, 0.0) };
    let yy = w.guard(wc * wc * (z2 - om * om) / q)?;
    Ok(CurrentResponse { xx, xy, yx: -xy, yy })
}

/// Lower and upper Landau polariton.
pub fn landau_polaritons(spec: &QheSpec) -> (f64, f64) {
    let wt2 = spec.cavity_freq.powi(2) + spec.plasma_freq.powi(2);
    let wc2 = spec.cyclotron_freq.powi(2);
    let root = ((wt2 - wc2).powi(2) + 4.0 * wc2 * spec.plasma_freq.powi(2)).sqrt();
    ((0.5 * (wt2 + wc2 - root)).max(0.0).sqrt(), (0.5 * (wt2 + wc2 + root)).sqrt())
}

/// Conductivity tensor in reduced units: longitudinal entries relative to
/// the Drude value, Hall entries relative to `e^2 nu / h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conductivity {
    pub xx: C64,
    pub xy: C64,
    pub yx: C64,
    pub yy: C64,
}

impl Conductivity {
    /// Hall conductivity in units of `e^2 / h`.
    pub fn hall_quantum_units(&self, filling: f64) -> C64 {
        self.xy * filling
    }
}

/// Conductivity from the dressed current response; the broadening of `w`
/// also plays the role of the transport scattering rate.
pub fn conductivity(spec: &QheSpec, w: ComplexFrequency) -> Eval<Conductivity> {
    let g = current_response(spec, w)?;
    let z = w.value();
    let long = C64::new(0.0, w.delta()) / z;
    let hall = C64::new(0.0, spec.cyclotron_freq) / z;
    Ok(Conductivity {
        xx: w.guard(long * (1.0 + g.xx))?,
        xy: w.guard(hall * g.xy)?,
        yx: w.guard(hall * g.yx)?,
        yy: w.guard(long * (1.0 + g.yy))?,
    })
}

/// The electron gas as a bare susceptibility of the two current
/// components, coupled to the diamagnetically shifted cavity.
#[derive(Debug, Clone)]
pub struct QheModel {
    pub spec: QheSpec,
    channels: Vec<CoupledChannel>,
}

impl QheModel {
    pub fn new(spec: &QheSpec) -> Result<Self> {
        spec.validate()?;
        let channel = InteractionChannel {
            lambda: spec.plasma_freq,
            cavity_freq: spec.dressed_cavity_freq(),
            zeta: 0.0,
            static_shift: 0.0,
        };
        Ok(Self { spec: *spec, channels: vec![CoupledChannel { channel, operator: Operator::X }] })
    }

    pub fn channels(&self) -> &[CoupledChannel] {
        &self.channels
    }

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

const QHE_LABELS: [Operator; 2] = [Operator::X, Operator::Y];

impl BareSusceptibility for QheModel {
    fn labels(&self) -> &[Operator] {
        &QHE_LABELS
    }

    fn eval(&self, w: ComplexFrequency) -> Eval<DMatrix<C64>> {
        let g = bare_current_response(self.spec.cyclotron_freq, w)?;
        let s = -0.5 / self.spec.dressed_cavity_freq();
        Ok(DMatrix::from_row_slice(2, 2, &[g.xx * s, g.xy * s, g.yx * s, g.yy * s]))
    }

    fn pole_clearing(&self, omega: f64) -> f64 {
        omega * omega - self.spec.cyclotron_freq.powi(2)
    }
}
