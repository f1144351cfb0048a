use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{Observable, PointSpec, RunConfig};
use crate::error::{Error, Result};
use crate::models::{conductivity, QheModel, SpinModel};
use crate::response::{ComplexFrequency, DressedResponse, Eval, Operator};
use crate::C64;

/// A model instantiated at one axis value.
#[derive(Debug, Clone)]
pub enum PointModel {
    Spin(SpinModel),
    Qhe(QheModel),
}

impl PointModel {
    pub fn build(spec: &PointSpec) -> Result<Self> {
        Ok(match spec {
            PointSpec::Spin(s) => PointModel::Spin(SpinModel::new(s)?),
            PointSpec::Qhe(s) => PointModel::Qhe(QheModel::new(s)?),
        })
    }

    pub fn response(&self, w: ComplexFrequency) -> Eval<DressedResponse> {
        match self {
            PointModel::Spin(m) => m.response(w),
            PointModel::Qhe(m) => m.response(w),
        }
    }

    pub fn pole_condition(&self, omega: f64) -> f64 {
        match self {
            PointModel::Spin(m) => m.pole_condition(omega),
            PointModel::Qhe(m) => m.pole_condition(omega),
        }
    }

    /// Collective-mode frequencies in `[lo, hi]` at zero broadening.
    pub fn poles(&self, lo: f64, hi: f64) -> Vec<f64> {
        match self {
            PointModel::Spin(m) => m.poles(lo, hi),
            PointModel::Qhe(m) => m.poles(lo, hi),
        }
    }
}

/// Values of one observable over the grid, row-major in (axis, omega).
/// Missing entries mark points where evaluation failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservableGrid {
    pub name: String,
    pub re: Vec<Option<f64>>,
    pub im: Vec<Option<f64>>,
}

impl ObservableGrid {
    pub fn value(&self, k: usize) -> Option<C64> {
        Some(C64::new(self.re[k]?, self.im[k]?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointFailure {
    pub axis_index: usize,
    pub omega_index: Option<usize>,
    pub observable: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub version: String,
    pub config: RunConfig,
    pub failures: Vec<PointFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub axis_name: String,
    pub axis: Vec<f64>,
    pub omega: Vec<f64>,
    pub observables: Vec<ObservableGrid>,
    /// Pole lists per axis point; `None` where the model could not be built.
    pub poles: Option<Vec<Option<Vec<f64>>>>,
    pub metadata: Metadata,
}

impl SpectrumTable {
    pub fn observable(&self, name: &str) -> Option<&ObservableGrid> {
        self.observables.iter().find(|o| o.name == name)
    }
}

fn output_names(cfg: &RunConfig) -> Vec<&'static str> {
    let mut names = Vec::new();
    for o in &cfg.observables {
        match o {
            Observable::ImPhoton => names.push("im_photon"),
            Observable::ImChiZz => names.push("im_chi_zz"),
            Observable::Conductivity => names.extend(["sigma_xx", "sigma_xy", "sigma_yx", "sigma_yy"]),
            Observable::Poles => {}
        }
    }
    names
}

struct PointResult {
    values: Vec<Vec<Option<C64>>>,
    poles: Option<Vec<f64>>,
    failures: Vec<PointFailure>,
}

fn evaluate(model: &PointModel, name: &str, w: ComplexFrequency) -> std::result::Result<C64, String> {
    let singular = |e: crate::Singular| e.to_string();
    match name {
        "im_photon" => model.response(w).map_err(singular)?.photon.ok_or_else(|| "no photon channel".into()),
        "im_chi_zz" => model
            .response(w)
            .map_err(singular)?
            .matter
            .get(Operator::Z, Operator::Z)
            .ok_or_else(|| "model has no z response".into()),
        s => {
            let PointModel::Qhe(m) = model else {
                return Err("conductivity needs the electron gas".into());
            };
            let c = conductivity(&m.spec, w).map_err(singular)?;
            Ok(match s {
                "sigma_xx" => c.xx,
                "sigma_xy" => c.xy,
                "sigma_yx" => c.yx,
                _ => c.yy,
            })
        }
    }
}

fn run_point(cfg: &RunConfig, names: &[&str], omega: &[f64], axis_index: usize, axis_value: f64) -> PointResult {
    let want_poles = cfg.observables.contains(&Observable::Poles);
    let model = cfg.point(axis_value).and_then(|s| PointModel::build(&s));
    let model = match model {
        Ok(m) => m,
        Err(e) => {
            let mut failures =
                vec![PointFailure { axis_index, omega_index: None, observable: "model".into(), reason: e.to_string() }];
            if want_poles {
                failures.push(PointFailure {
                    axis_index,
                    omega_index: None,
                    observable: "poles".into(),
                    reason: e.to_string(),
                });
            }
            return PointResult {
                values: names.iter().map(|_| vec![None; omega.len()]).collect(),
                poles: None,
                failures,
            };
        }
    };
    let mut failures = Vec::new();
    let mut values = Vec::with_capacity(names.len());
    for &name in names {
        let mut row = Vec::with_capacity(omega.len());
        for (j, &x) in omega.iter().enumerate() {
            let w = ComplexFrequency::new(x, cfg.broadening).expect("validated broadening");
            match evaluate(&model, name, w) {
                Ok(v) => row.push(Some(v)),
                Err(reason) => {
                    failures.push(PointFailure { axis_index, omega_index: Some(j), observable: name.into(), reason });
                    row.push(None);
                }
            }
        }
        values.push(row);
    }
    let poles = want_poles.then(|| model.poles(cfg.omega_min, cfg.omega_max));
    PointResult { values, poles, failures }
}

/// Evaluate every requested observable over the configured grid, in
/// parallel over axis points.
pub fn run_sweep(cfg: &RunConfig) -> Result<SpectrumTable> {
    run_sweep_with_threads(cfg, None)
}

/// As [`run_sweep`], on a dedicated pool of `threads` workers when given.
pub fn run_sweep_with_threads(cfg: &RunConfig, threads: Option<usize>) -> Result<SpectrumTable> {
    cfg.validate()?;
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("cannot start {n} threads: {e}")))?;
            pool.install(|| sweep_inner(cfg))
        }
        None => sweep_inner(cfg),
    }
}

fn sweep_inner(cfg: &RunConfig) -> Result<SpectrumTable> {
    let axis = cfg.axis_values()?;
    let omega = cfg.omega_values()?;
    let names = output_names(cfg);
    let results: Vec<PointResult> =
        axis.par_iter().enumerate().map(|(i, &a)| run_point(cfg, &names, &omega, i, a)).collect();

    let mut observables: Vec<ObservableGrid> = names
        .iter()
        .map(|n| ObservableGrid {
            name: (*n).to_string(),
            re: Vec::with_capacity(axis.len() * omega.len()),
            im: Vec::with_capacity(axis.len() * omega.len()),
        })
        .collect();
    let mut failures = Vec::new();
    let mut poles = cfg.observables.contains(&Observable::Poles).then(Vec::new);
    for r in results {
        for (grid, row) in observables.iter_mut().zip(&r.values) {
            grid.re.extend(row.iter().map(|v| v.map(|z| z.re)));
            grid.im.extend(row.iter().map(|v| v.map(|z| z.im)));
        }
        if let Some(p) = poles.as_mut() {
            p.push(r.poles);
        }
        failures.extend(r.failures);
    }
    Ok(SpectrumTable {
        axis_name: cfg.axis.as_str().to_string(),
        axis,
        omega,
        observables,
        poles,
        metadata: Metadata { version: env!("CARGO_PKG_VERSION").to_string(), config: cfg.clone(), failures },
    })
}
