use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::meanfield::{ModelKind, ModelSpec};
use crate::models::QheSpec;
use crate::response::{ComplexFrequency, InteractionChannel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelName {
    Dicke,
    LmgLongitudinal,
    LmgTransverse,
    Heisenberg,
    Qhe,
}

impl ModelName {
    pub fn spin_kind(self) -> Option<ModelKind> {
        match self {
            ModelName::Dicke => Some(ModelKind::Dicke),
            ModelName::LmgLongitudinal => Some(ModelKind::LmgLongitudinal),
            ModelName::LmgTransverse => Some(ModelKind::LmgTransverse),
            ModelName::Heisenberg => Some(ModelKind::Heisenberg),
            ModelName::Qhe => None,
        }
    }
}

/// Parameter scanned along the first grid axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum AxisKind {
    #[default]
    None,
    /// `lambda` for spin models, `plasma_freq` for the electron gas.
    Coupling,
    J,
    CavityFreq,
    CyclotronFreq,
    PlasmaFreq,
}

impl AxisKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AxisKind::None => "none",
            AxisKind::Coupling => "coupling",
            AxisKind::J => "j",
            AxisKind::CavityFreq => "cavity_freq",
            AxisKind::CyclotronFreq => "cyclotron_freq",
            AxisKind::PlasmaFreq => "plasma_freq",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    ImPhoton,
    ImChiZz,
    Conductivity,
    Poles,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Structured,
}

fn one() -> f64 {
    1.0
}

fn default_broadening() -> f64 {
    ComplexFrequency::DEFAULT_BROADENING
}

fn default_observables() -> Vec<Observable> {
    vec![Observable::ImPhoton]
}

/// A sweep description, read from a flat TOML file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelName,
    #[serde(default)]
    pub omega_x: f64,
    #[serde(default = "one")]
    pub omega_z: f64,
    #[serde(default)]
    pub j: f64,
    #[serde(default)]
    pub coordination: u32,
    #[serde(default)]
    pub lambda: f64,
    #[serde(default = "one")]
    pub cavity_freq: f64,
    #[serde(default)]
    pub zeta: f64,
    #[serde(default)]
    pub plasma_freq: f64,
    #[serde(default)]
    pub cyclotron_freq: f64,
    #[serde(default = "one")]
    pub filling: f64,
    #[serde(default)]
    pub axis: AxisKind,
    #[serde(default)]
    pub axis_min: Option<f64>,
    #[serde(default)]
    pub axis_max: Option<f64>,
    #[serde(default)]
    pub axis_points: Option<usize>,
    pub omega_min: f64,
    pub omega_max: f64,
    pub omega_points: usize,
    #[serde(default = "default_broadening")]
    pub broadening: f64,
    #[serde(default = "default_observables")]
    pub observables: Vec<Observable>,
    #[serde(default)]
    pub output: Option<String>,
    #[serde(default)]
    pub format: Option<OutputFormat>,
}

/// A single point of the sweep, ready to be built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PointSpec {
    Spin(ModelSpec),
    Qhe(QheSpec),
}

fn grid(name: &str, min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite()) {
        return Err(Error::Config(format!("{name} range must be finite")));
    }
    if points == 1 && min == max {
        return Ok(vec![min]);
    }
    if points < 2 {
        return Err(Error::Config(format!("{name}_points must be >= 2, got {points}")));
    }
    if min >= max {
        return Err(Error::Config(format!("{name}_min must be below {name}_max")));
    }
    let step = (max - min) / (points - 1) as f64;
    Ok((0..points).map(|i| if i == points - 1 { max } else { min + step * i as f64 }).collect())
}

impl RunConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn output_format(&self) -> OutputFormat {
        self.format.unwrap_or_default()
    }

    pub fn axis_values(&self) -> Result<Vec<f64>> {
        if self.axis == AxisKind::None {
            return Ok(vec![0.0]);
        }
        match (self.axis_min, self.axis_max, self.axis_points) {
            (Some(a), Some(b), Some(n)) => grid("axis", a, b, n),
            _ => Err(Error::Config("axis sweep needs axis_min, axis_max and axis_points".into())),
        }
    }

    pub fn omega_values(&self) -> Result<Vec<f64>> {
        grid("omega", self.omega_min, self.omega_max, self.omega_points)
    }

    /// Model parameters at one axis value.
    pub fn point(&self, axis_value: f64) -> Result<PointSpec> {
        let mut c = self.clone();
        match (self.axis, self.model) {
            (AxisKind::None, _) => {}
            (AxisKind::Coupling, ModelName::Qhe) => c.plasma_freq = axis_value,
            (AxisKind::Coupling, _) => c.lambda = axis_value,
            (AxisKind::J, ModelName::Qhe) => return Err(Error::Config("axis j needs a spin model".into())),
            (AxisKind::J, _) => c.j = axis_value,
            (AxisKind::CavityFreq, _) => c.cavity_freq = axis_value,
            (AxisKind::CyclotronFreq, ModelName::Qhe) => c.cyclotron_freq = axis_value,
            (AxisKind::PlasmaFreq, ModelName::Qhe) => c.plasma_freq = axis_value,
            (a, _) => return Err(Error::Config(format!("axis {} needs model qhe", a.as_str()))),
        }
        match c.model.spin_kind() {
            Some(kind) => {
                let spec = ModelSpec {
                    kind,
                    omega_x: c.omega_x,
                    omega_z: c.omega_z,
                    j: c.j,
                    coordination: c.coordination,
                    channel: InteractionChannel {
                        lambda: c.lambda,
                        cavity_freq: c.cavity_freq,
                        zeta: c.zeta,
                        static_shift: 0.0,
                    },
                };
                spec.validate().map_err(|e| Error::Config(e.to_string()))?;
                Ok(PointSpec::Spin(spec))
            }
            None => {
                let spec = QheSpec {
                    cavity_freq: c.cavity_freq,
                    plasma_freq: c.plasma_freq,
                    cyclotron_freq: c.cyclotron_freq,
                    filling: c.filling,
                };
                spec.validate().map_err(|e| Error::Config(e.to_string()))?;
                Ok(PointSpec::Qhe(spec))
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.broadening.is_finite() && self.broadening > 0.0) {
            return Err(Error::Config(format!("broadening must be > 0, got {}", self.broadening)));
        }
        if self.observables.is_empty() {
            return Err(Error::Config("observables must not be empty".into()));
        }
        for o in &self.observables {
            match o {
                Observable::ImChiZz if self.model != ModelName::LmgTransverse => {
                    return Err(Error::Config("im_chi_zz needs model lmg_transverse".into()));
                }
                Observable::Conductivity if self.model != ModelName::Qhe => {
                    return Err(Error::Config("conductivity needs model qhe".into()));
                }
                _ => {}
            }
        }
        self.omega_values()?;
        let axis = self.axis_values()?;
        self.point(axis[0])?;
        self.point(axis[axis.len() - 1])?;
        Ok(())
    }
}
