use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::spin::{free_spin_gap, SpinFields};
use crate::error::{check_finite, Error, Result};
use crate::response::{CoupledChannel, InteractionChannel, Operator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Dicke,
    LmgLongitudinal,
    LmgTransverse,
    Heisenberg,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Dicke => "dicke",
            ModelKind::LmgLongitudinal => "lmg_longitudinal",
            ModelKind::LmgTransverse => "lmg_transverse",
            ModelKind::Heisenberg => "heisenberg",
        }
    }
}

/// A spin model coupled to one cavity mode.
///
/// `j` is the direct spin-spin coupling (along x for the longitudinal
/// model, along z for the transverse one, the lattice exchange for
/// Heisenberg); `coordination` is only used by Heisenberg.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub omega_x: f64,
    pub omega_z: f64,
    pub j: f64,
    pub coordination: u32,
    pub channel: InteractionChannel,
}

impl ModelSpec {
    pub fn dicke(omega_z: f64, lambda: f64, cavity_freq: f64, zeta: f64) -> Self {
        let channel = InteractionChannel { lambda, cavity_freq, zeta, static_shift: 0.0 };
        Self { kind: ModelKind::Dicke, omega_x: 0.0, omega_z, j: 0.0, coordination: 0, channel }
    }

    pub fn lmg_longitudinal(omega_z: f64, j: f64, lambda: f64, cavity_freq: f64) -> Self {
        let channel = InteractionChannel { lambda, cavity_freq, zeta: 0.0, static_shift: 0.0 };
        Self { kind: ModelKind::LmgLongitudinal, omega_x: 0.0, omega_z, j, coordination: 0, channel }
    }

    pub fn lmg_transverse(omega_x: f64, omega_z: f64, j: f64, lambda: f64, cavity_freq: f64) -> Self {
        let channel = InteractionChannel { lambda, cavity_freq, zeta: 0.0, static_shift: 0.0 };
        Self { kind: ModelKind::LmgTransverse, omega_x, omega_z, j, coordination: 0, channel }
    }

    pub fn heisenberg(omega_z: f64, j: f64, coordination: u32, lambda: f64, cavity_freq: f64, zeta: f64) -> Self {
        let channel = InteractionChannel { lambda, cavity_freq, zeta, static_shift: 0.0 };
        Self { kind: ModelKind::Heisenberg, omega_x: 0.0, omega_z, j, coordination, channel }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.channel.lambda = lambda;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_finite("omega_x", self.omega_x)?;
        check_finite("omega_z", self.omega_z)?;
        check_finite("j", self.j)?;
        self.channel.validate()?;
        if self.j < 0.0 {
            return Err(Error::InvalidParameter(format!("j must be >= 0, got {}", self.j)));
        }
        if self.kind != ModelKind::LmgTransverse && self.omega_x != 0.0 {
            return Err(Error::InvalidParameter(format!(
                "{} has no transverse field; omega_x must be 0",
                self.kind.as_str()
            )));
        }
        Ok(())
    }

    pub fn bare_fields(&self) -> SpinFields {
        SpinFields::new(self.omega_x, self.omega_z)
    }

    /// Operators that carry a susceptibility for this model.
    pub fn labels(&self) -> Vec<Operator> {
        match self.kind {
            ModelKind::LmgTransverse => vec![Operator::X, Operator::Z],
            _ => vec![Operator::X],
        }
    }

    /// Interaction channels; the cavity channel always comes first.
    pub fn coupled_channels(&self) -> Vec<CoupledChannel> {
        let mut cavity = self.channel;
        if self.kind == ModelKind::LmgLongitudinal {
            cavity.static_shift -= 2.0 * self.j;
        }
        let mut out = vec![CoupledChannel { channel: cavity, operator: Operator::X }];
        if self.kind == ModelKind::LmgTransverse {
            let direct = InteractionChannel {
                lambda: 0.0,
                cavity_freq: self.channel.cavity_freq,
                zeta: 0.0,
                static_shift: -2.0 * self.j,
            };
            out.push(CoupledChannel { channel: direct, operator: Operator::Z });
        }
        out
    }

    /// Zero-frequency interaction summed per axis, `(v_x, v_z)`.
    fn axis_interactions(&self) -> (f64, f64) {
        let mut v = (0.0, 0.0);
        for c in self.coupled_channels() {
            match c.operator {
                Operator::X => v.0 += c.channel.static_interaction(),
                Operator::Z => v.1 += c.channel.static_interaction(),
                Operator::Y => {}
            }
        }
        v
    }

    fn energy_offset(&self) -> f64 {
        match self.kind {
            ModelKind::Heisenberg => -self.j * f64::from(self.coordination),
            _ => 0.0,
        }
    }
}

/// Self-consistent single-spin state. `m_x`, `m_z` are Pauli expectation
/// values on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanFieldState {
    pub m_x: f64,
    pub m_z: f64,
    pub gap: f64,
    pub energy_per_site: f64,
    /// Several distinct minima share the lowest energy; the returned one is
    /// the state connected to smaller coupling.
    pub coexistence: bool,
}

pub fn mean_field_energy(spec: &ModelSpec, m_x: f64, m_z: f64) -> f64 {
    let (vx, vz) = spec.axis_interactions();
    0.5 * (spec.omega_x * m_x + spec.omega_z * m_z) + 0.5 * (vx * m_x * m_x + vz * m_z * m_z) + spec.energy_offset()
}

/// Fields felt by one spin once the other spins are replaced by their mean.
pub fn dressed_fields(spec: &ModelSpec, state: &MeanFieldState) -> SpinFields {
    let (vx, vz) = spec.axis_interactions();
    SpinFields::new(spec.omega_x + 2.0 * vx * state.m_x, spec.omega_z + 2.0 * vz * state.m_z)
}

/// Distance of `m` from the direction opposite to its own dressed field.
pub fn stationarity_residual(spec: &ModelSpec, state: &MeanFieldState) -> f64 {
    let f = dressed_fields(spec, state);
    let eps = f.magnitude();
    if eps > 1e-14 {
        (state.m_x + f.omega_x / eps).hypot(state.m_z + f.omega_z / eps)
    } else {
        // zero dressed field: every direction is stationary
        0.0
    }
}

fn finish(spec: &ModelSpec, m_x: f64, m_z: f64, coexistence: bool) -> MeanFieldState {
    let mut s = MeanFieldState { m_x, m_z, gap: 0.0, energy_per_site: 0.0, coexistence };
    s.gap = free_spin_gap(dressed_fields(spec, &s)).epsilon;
    s.energy_per_site = mean_field_energy(spec, m_x, m_z);
    s
}

/// Mean-field ground state. Models with a single x channel and no
/// transverse field use the closed form; the transverse model is minimised
/// numerically.
pub fn solve_mean_field(spec: &ModelSpec) -> Result<MeanFieldState> {
    spec.validate()?;
    match spec.kind {
        ModelKind::LmgTransverse => solve_mean_field_numeric(spec),
        _ => Ok(closed_form(spec)),
    }
}

fn closed_form(spec: &ModelSpec) -> MeanFieldState {
    let (vx, _) = spec.axis_interactions();
    let j_eff = -0.5 * vx;
    let wz = spec.omega_z;
    let m_x = if j_eff > 0.0 && wz.abs() < 4.0 * j_eff {
        let mu = wz / (4.0 * j_eff);
        (1.0 - mu * mu).sqrt()
    } else {
        0.0
    };
    let m_z = if wz > 0.0 {
        -(1.0 - m_x * m_x).sqrt()
    } else if wz < 0.0 {
        (1.0 - m_x * m_x).sqrt()
    } else if m_x > 0.0 {
        0.0
    } else {
        -1.0
    };
    let flat = wz == 0.0 && j_eff == 0.0;
    finish(spec, m_x, m_z, flat)
}

struct Landscape {
    wx: f64,
    wz: f64,
    vx: f64,
    vz: f64,
}

impl Landscape {
    fn energy(&self, t: f64) -> f64 {
        let (s, c) = t.sin_cos();
        0.5 * (self.wx * s + self.wz * c) + 0.5 * (self.vx * s * s + self.vz * c * c)
    }

    fn slope(&self, t: f64) -> f64 {
        let (s, c) = t.sin_cos();
        0.5 * (self.wx * c - self.wz * s) + (self.vx - self.vz) * s * c
    }
}

const SEEDS: usize = 64;
const GOLDEN_TOL: f64 = 1e-12;
const TIE_TOL: f64 = 1e-12;
const SAME_STATE_TOL: f64 = 1e-7;
const AXIS_SNAP: f64 = 1e-15;

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a < GOLDEN_TOL {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Golden section resolves a minimum only to about the square root of
/// machine precision; bisect the slope to reach a stationary point.
fn polish(land: &Landscape, t: f64, lo_lim: f64, hi_lim: f64) -> f64 {
    if land.slope(t) == 0.0 {
        return t;
    }
    let mut h = 1e-9;
    let (mut lo, mut hi);
    loop {
        lo = (t - h).max(lo_lim);
        hi = (t + h).min(hi_lim);
        if land.slope(lo) <= 0.0 && land.slope(hi) >= 0.0 {
            break;
        }
        if lo == lo_lim && hi == hi_lim {
            return t;
        }
        h *= 4.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if land.slope(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (el, eh) = (land.energy(lo), land.energy(hi));
    if el <= eh {
        lo
    } else {
        hi
    }
}

fn canonical(spec: &ModelSpec, t: f64) -> (f64, f64) {
    let (mut mx, mut mz) = t.sin_cos();
    // states on an axis come back exactly on it, free of sin/cos round-off
    if mx.abs() < AXIS_SNAP {
        (mx, mz) = (0.0, mz.signum());
    } else if mz.abs() < AXIS_SNAP {
        (mx, mz) = (mx.signum(), 0.0);
    }
    if spec.omega_x == 0.0 {
        mx = mx.abs();
    }
    if spec.omega_z == 0.0 {
        mz = mz.abs();
    }
    (mx, mz)
}

fn numeric_candidates(spec: &ModelSpec) -> Vec<(f64, f64, f64)> {
    let (vx, vz) = spec.axis_interactions();
    let land = Landscape { wx: spec.omega_x, wz: spec.omega_z, vx, vz };
    let step = 2.0 * PI / SEEDS as f64;
    let e: Vec<f64> = (0..SEEDS).map(|i| land.energy(i as f64 * step)).collect();
    let mut out: Vec<(f64, f64, f64)> = Vec::new();
    for i in 0..SEEDS {
        let prev = e[(i + SEEDS - 1) % SEEDS];
        let next = e[(i + 1) % SEEDS];
        if e[i] > prev || e[i] > next {
            continue;
        }
        let (a, b) = ((i as f64 - 1.0) * step, (i as f64 + 1.0) * step);
        let t = golden_section(|t| land.energy(t), a, b);
        let t = polish(&land, t, a, b);
        let (mx, mz) = canonical(spec, t);
        let en = mean_field_energy(spec, mx, mz);
        if !out.iter().any(|&(x, z, _)| (x - mx).hypot(z - mz) < SAME_STATE_TOL) {
            out.push((mx, mz, en));
        }
    }
    out
}

/// Multistart minimisation over the unit circle, usable for every model.
pub fn solve_mean_field_numeric(spec: &ModelSpec) -> Result<MeanFieldState> {
    spec.validate()?;
    select(spec, true)
}

fn select(spec: &ModelSpec, resolve_ties: bool) -> Result<MeanFieldState> {
    let cands = numeric_candidates(spec);
    let e_min = cands.iter().map(|c| c.2).fold(f64::INFINITY, f64::min);
    if !e_min.is_finite() {
        return Err(Error::MeanField("no local minimum found".into()));
    }
    let tied: Vec<_> = cands.iter().filter(|c| c.2 <= e_min + TIE_TOL).collect();
    if tied.len() == 1 {
        let (mx, mz, _) = *tied[0];
        return Ok(finish(spec, mx, mz, false));
    }
    let lambda = spec.channel.lambda;
    if resolve_ties && lambda > 0.0 {
        let reference = select(&spec.with_lambda(lambda * (1.0 - 1e-6)), false)?;
        if mean_field_energy(spec, reference.m_x, reference.m_z) <= e_min + TIE_TOL {
            return Ok(finish(spec, reference.m_x, reference.m_z, true));
        }
        let nearest = tied
            .iter()
            .min_by(|a, b| {
                let da = (a.0 - reference.m_x).hypot(a.1 - reference.m_z);
                let db = (b.0 - reference.m_x).hypot(b.1 - reference.m_z);
                da.total_cmp(&db)
            })
            .expect("at least two tied candidates");
        return Ok(finish(spec, nearest.0, nearest.1, true));
    }
    // no smaller-coupling side: prefer the state with least x order
    let first = tied.iter().min_by(|a, b| a.0.abs().total_cmp(&b.0.abs())).expect("at least two tied candidates");
    Ok(finish(spec, first.0, first.1, true))
}
