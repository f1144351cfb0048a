use nalgebra::DMatrix;

use super::channel::{free_photon_propagator, induced_interaction, InteractionChannel};
use super::frequency::{ComplexFrequency, Eval, Operator};
use crate::error::Singular;
use crate::C64;

/// Bare (cavity-free) susceptibility of the effective matter Hamiltonian.
pub trait BareSusceptibility: Send + Sync {
    /// Operators indexing the rows and columns of [`eval`](Self::eval).
    fn labels(&self) -> &[Operator];

    fn eval(&self, w: ComplexFrequency) -> Eval<DMatrix<C64>>;

    /// Real polynomial vanishing at the bare poles. Multiplying the dressing
    /// determinant by it leaves a function without poles on the real axis.
    fn pole_clearing(&self, omega: f64) -> f64;

    fn index_of(&self, op: Operator) -> Option<usize> {
        self.labels().iter().position(|&l| l == op)
    }
}

/// A labelled susceptibility matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Susceptibility {
    pub labels: Vec<Operator>,
    pub matrix: DMatrix<C64>,
}

impl Susceptibility {
    pub fn get(&self, r: Operator, s: Operator) -> Option<C64> {
        let i = self.labels.iter().position(|&l| l == r)?;
        let j = self.labels.iter().position(|&l| l == s)?;
        Some(self.matrix[(i, j)])
    }
}

/// A channel together with the matter operator it couples to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledChannel {
    pub channel: InteractionChannel,
    pub operator: Operator,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DressedResponse {
    /// Normal photon propagator, when a photon channel was designated.
    pub photon: Option<C64>,
    pub photon_anomalous: Option<C64>,
    pub matter: Susceptibility,
}

/// Photon propagator from the dressed susceptibility of the coupled operator.
pub fn dress_photon(ch: &InteractionChannel, chi_xx: C64, w: ComplexFrequency) -> Eval<C64> {
    let d0 = free_photon_propagator(ch.cavity_freq, w)?;
    w.guard(d0 - ch.lambda * ch.lambda * d0 * chi_xx * d0)
}

/// Anomalous propagator implied by the normal one through the photon
/// equation of motion.
pub fn anomalous_from_normal(cavity_freq: f64, d: C64, w: ComplexFrequency) -> Eval<C64> {
    let z = w.value();
    w.guard((1.0 - (z - cavity_freq) * d) / (z + cavity_freq))
}

/// Dress every element of `chi` by a single interaction `v` acting on row
/// and column `x`.
pub fn dress_matter_single_channel(chi: &DMatrix<C64>, x: usize, v: C64, w: ComplexFrequency) -> Eval<DMatrix<C64>> {
    let denom = 1.0 + v * chi[(x, x)];
    let n = chi.nrows();
    let mut out = chi.clone();
    for r in 0..n {
        for s in 0..n {
            out[(r, s)] = w.guard(chi[(r, s)] - chi[(r, x)] * (v * chi[(x, s)] / denom))?;
        }
    }
    Ok(out)
}

/// Dress `chi` by several channels, given as (row index, interaction) pairs.
///
/// Uses `chi - chi[:,c] (I + V chi[c,c])^-1 V chi[c,:]`, which stays finite
/// when some interactions vanish.
pub fn dress_matter_multichannel(
    chi: &DMatrix<C64>,
    couplings: &[(usize, C64)],
    w: ComplexFrequency,
) -> Eval<DMatrix<C64>> {
    let n = chi.nrows();
    let m = couplings.len();
    if m == 0 {
        return Ok(chi.clone());
    }
    let cols = DMatrix::from_fn(n, m, |r, k| chi[(r, couplings[k].0)]);
    let v_rows = DMatrix::from_fn(m, n, |k, s| couplings[k].1 * chi[(couplings[k].0, s)]);
    let a = DMatrix::from_fn(m, m, |k, l| {
        let id = if k == l { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
        id + couplings[k].1 * chi[(couplings[k].0, couplings[l].0)]
    });
    let solved = a.lu().solve(&v_rows).ok_or(Singular { omega: w.omega() })?;
    let out = chi - cols * solved;
    if out.iter().all(|z| z.is_finite()) {
        Ok(out)
    } else {
        Err(Singular { omega: w.omega() })
    }
}

/// `det(I + V chi[c,c])`, whose zeros are the collective modes.
pub fn dressing_determinant(
    bare: &dyn BareSusceptibility,
    channels: &[CoupledChannel],
    w: ComplexFrequency,
) -> Eval<C64> {
    let chi = bare.eval(w)?;
    let m = channels.len();
    let mut a = DMatrix::from_element(m, m, C64::new(0.0, 0.0));
    for (k, ck) in channels.iter().enumerate() {
        let v = induced_interaction(&ck.channel, w)?;
        let i = bare.index_of(ck.operator).ok_or(Singular { omega: w.omega() })?;
        for (l, cl) in channels.iter().enumerate() {
            let j = bare.index_of(cl.operator).ok_or(Singular { omega: w.omega() })?;
            a[(k, l)] = v * chi[(i, j)];
        }
        a[(k, k)] += 1.0;
    }
    w.guard(a.determinant())
}

/// Real function of real `omega` whose zeros are the dressed poles: the
/// dressing determinant with bare and cavity poles multiplied out. The free
/// photon line of `photon_channel` is kept even when it decouples. Returns
/// NaN where an exact bare pole is hit.
pub fn cleared_pole_condition(
    bare: &dyn BareSusceptibility,
    channels: &[CoupledChannel],
    photon_channel: Option<usize>,
    omega: f64,
) -> f64 {
    let w = ComplexFrequency::real(omega);
    let Ok(det) = dressing_determinant(bare, channels, w) else {
        return f64::NAN;
    };
    let mut f = det.re * bare.pole_clearing(omega);
    for (k, c) in channels.iter().enumerate() {
        if !c.channel.is_dynamic() && photon_channel != Some(k) {
            continue;
        }
        let om = c.channel.cavity_freq;
        f *= omega * omega - om * om;
    }
    f
}

/// Full dressing: matter susceptibility by all channels, and the photon
/// propagators of channel `photon_channel` when given.
pub fn dress(
    bare: &dyn BareSusceptibility,
    channels: &[CoupledChannel],
    photon_channel: Option<usize>,
    w: ComplexFrequency,
) -> Eval<DressedResponse> {
    let chi = bare.eval(w)?;
    let mut couplings = Vec::with_capacity(channels.len());
    for c in channels {
        let i = bare.index_of(c.operator).ok_or(Singular { omega: w.omega() })?;
        couplings.push((i, induced_interaction(&c.channel, w)?));
    }
    let dressed = dress_matter_multichannel(&chi, &couplings, w)?;
    let (photon, photon_anomalous) = match photon_channel.map(|k| &channels[k]) {
        Some(c) => {
            let i = couplings[photon_channel.unwrap_or(0)].0;
            let d = dress_photon(&c.channel, dressed[(i, i)], w)?;
            let dp = anomalous_from_normal(c.channel.cavity_freq, d, w)?;
            (Some(d), Some(dp))
        }
        None => (None, None),
    };
    Ok(DressedResponse {
        photon,
        photon_anomalous,
        matter: Susceptibility { labels: bare.labels().to_vec(), matrix: dressed },
    })
}

/// Normal and anomalous photon propagators from the closed photon equations
/// of motion, given the bare susceptibility of the coupled operator.
pub fn photon_propagators_eom(ch: &InteractionChannel, chi_bare_xx: C64, w: ComplexFrequency) -> Eval<(C64, C64)> {
    if !ch.is_dynamic() {
        return Ok((free_photon_propagator(ch.cavity_freq, w)?, C64::new(0.0, 0.0)));
    }
    let z = w.value();
    let om = ch.cavity_freq;
    let l2 = ch.lambda * ch.lambda;
    let zeta = ch.zeta;
    // The static shift acts like an extra instantaneous interaction; fold it
    // into the bare susceptibility first.
    let chi = w.guard(chi_bare_xx / (1.0 + ch.static_shift * chi_bare_xx))?;
    let den = z * z - om * om + 2.0 * l2 * (zeta * (z * z - om * om) + om * om) / om * chi;
    let d = (z + om + l2 * (2.0 * zeta * (z + om) - om) / om * chi) / den;
    let dp = l2 * chi / den;
    Ok((w.guard(d)?, w.guard(dp)?))
}

/// Deviation between the two photon-propagator routes over a grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equivalence {
    pub max_abs: f64,
    /// Largest `|D_pi - D_eom| / max(|D_pi|, 1)`.
    pub max_rel: f64,
    pub evaluated: usize,
    pub skipped: usize,
}

/// Compare the dressing route against the equation-of-motion route for the
/// normal photon propagator. Points where either route hits a pole are
/// counted as skipped.
pub fn verify_pi_eom_equivalence<F>(ch: &InteractionChannel, bare_xx: F, grid: &[ComplexFrequency]) -> Equivalence
where
    F: Fn(ComplexFrequency) -> Eval<C64>,
{
    let mut eq = Equivalence { max_abs: 0.0, max_rel: 0.0, evaluated: 0, skipped: 0 };
    for &w in grid {
        let pi = (|| {
            let chi = bare_xx(w)?;
            let v = induced_interaction(ch, w)?;
            let chi_xx = w.guard(chi / (1.0 + v * chi))?;
            let d = dress_photon(ch, chi_xx, w)?;
            let eom = photon_propagators_eom(ch, chi, w)?.0;
            Ok::<_, Singular>((d, eom))
        })();
        match pi {
            Ok((d, e)) => {
                let abs = (d - e).norm();
                eq.max_abs = eq.max_abs.max(abs);
                eq.max_rel = eq.max_rel.max(abs / d.norm().max(1.0));
                eq.evaluated += 1;
            }
            Err(_) => eq.skipped += 1,
        }
    }
    eq
}
