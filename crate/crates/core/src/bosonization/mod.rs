//! Independent route to the polariton frequencies: Holstein-Primakoff
//! bosonization around displaced mean-field states, reduced to a two-mode
//! quadratic Hamiltonian.

use nalgebra::Matrix4;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::meanfield::{solve_mean_field, ModelSpec};
use crate::response::Operator;

/// Macroscopic displacements per site: photon amplitude `sqrt(alpha/N)`
/// and spin-flip fraction `beta/N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Displacements {
    pub sqrt_alpha: f64,
    pub beta: f64,
}

impl Displacements {
    /// Fraction of the spin length left for fluctuations.
    pub fn k(&self) -> f64 {
        1.0 - self.beta
    }

    /// Pauli expectation values `(m_x, m_z)` implied by the displacement,
    /// for positive fields.
    pub fn magnetization(&self) -> (f64, f64) {
        (-2.0 * (self.beta * (1.0 - self.beta)).sqrt(), 2.0 * self.beta - 1.0)
    }
}

/// `omega_a d^+ d + omega_b (d + d^+)^2 + Omega c^+ c + omega_c (d + d^+)(c + c^+)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticHamiltonian {
    pub omega_a: f64,
    pub omega_b: f64,
    pub omega_c: f64,
    pub cavity_freq: f64,
}

/// Model parameters in the form the expansion needs. Fields enter through
/// their magnitudes; `kappa` multiplies `S_x^2 / N` and `j_t` the
/// ferromagnetic `S_z^2 / N` coupling.
#[derive(Debug, Clone, Copy)]
struct Params {
    wx: f64,
    wz: f64,
    lambda: f64,
    om: f64,
    kappa: f64,
    j_t: f64,
}

impl Params {
    fn from_spec(spec: &ModelSpec) -> Self {
        let ch = spec.channel;
        let mut kappa = ch.zeta * ch.lambda * ch.lambda / ch.cavity_freq;
        let mut j_t = 0.0;
        for c in spec.coupled_channels() {
            match c.operator {
                Operator::X => kappa += 0.5 * c.channel.static_shift,
                Operator::Z => j_t -= 0.5 * c.channel.static_shift,
                Operator::Y => {}
            }
        }
        Self { wx: spec.omega_x.abs(), wz: spec.omega_z.abs(), lambda: ch.lambda, om: ch.cavity_freq, kappa, j_t }
    }

    fn photon_amplitude(&self, beta: f64) -> f64 {
        2.0 * self.lambda * (beta * (1.0 - beta)).sqrt() / self.om
    }

    /// Coefficients of the terms linear in the fluctuations.
    fn residual(&self, a: f64, sb: f64) -> [f64; 2] {
        let b = sb * sb;
        let f1 = self.om * a - 2.0 * self.lambda * sb * (1.0 - b).sqrt();
        let f2 = -self.wz * sb + (0.5 * self.wx + 2.0 * self.lambda * a) * (1.0 - 2.0 * b) / (1.0 - b).sqrt()
            - 4.0 * (self.kappa + self.j_t) * sb * (1.0 - 2.0 * b);
        [f1, f2]
    }

    fn jacobian(&self, a: f64, sb: f64) -> [[f64; 2]; 2] {
        let b = sb * sb;
        let r = (1.0 - b).sqrt();
        let g = (1.0 - 2.0 * b) / r;
        let dg = sb * (2.0 * b - 3.0) / (r * r * r);
        [
            [self.om, -2.0 * self.lambda * (1.0 - 2.0 * b) / r],
            [
                2.0 * self.lambda * g,
                -self.wz + (0.5 * self.wx + 2.0 * self.lambda * a) * dg
                    - 4.0 * (self.kappa + self.j_t) * (1.0 - 6.0 * b),
            ],
        ]
    }
}

const RESIDUAL_TOL: f64 = 1e-12;
const NEWTON_ITERS: usize = 200;
const RESTARTS: usize = 16;

fn newton(p: &Params, mut a: f64, mut sb: f64) -> Option<(f64, f64)> {
    let norm = |r: [f64; 2]| r[0].hypot(r[1]);
    let max_sb = 1.0 - 1e-12;
    let mut r = p.residual(a, sb);
    for _ in 0..NEWTON_ITERS {
        if norm(r) <= RESIDUAL_TOL {
            return Some((a, sb));
        }
        let j = p.jacobian(a, sb);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let da = -(j[1][1] * r[0] - j[0][1] * r[1]) / det;
        let ds = -(-j[1][0] * r[0] + j[0][0] * r[1]) / det;
        let mut t = 1.0;
        loop {
            let na = a + t * da;
            let ns = (sb + t * ds).clamp(0.0, max_sb);
            let nr = p.residual(na, ns);
            if norm(nr) < norm(r) || t < 1e-10 {
                a = na;
                sb = ns;
                r = nr;
                break;
            }
            t *= 0.5;
        }
    }
    (norm(r) <= RESIDUAL_TOL).then_some((a, sb))
}

/// Displacements that remove the terms linear in the fluctuations.
///
/// Without a transverse field the equations are solved in closed form;
/// otherwise by damped Newton seeded from the mean-field state, with
/// deterministic random restarts.
pub fn solve_displacements(spec: &ModelSpec) -> Result<Displacements> {
    spec.validate()?;
    let p = Params::from_spec(spec);
    if p.wx == 0.0 {
        let j_eff = p.lambda * p.lambda / p.om - p.kappa - p.j_t;
        let beta = if j_eff > 0.0 && p.wz < 4.0 * j_eff { 0.5 * (1.0 - p.wz / (4.0 * j_eff)) } else { 0.0 };
        return Ok(Displacements { sqrt_alpha: p.photon_amplitude(beta), beta });
    }
    let mf = solve_mean_field(spec)?;
    let beta0 = 0.5 * (1.0 - mf.m_z.abs());
    let mut seeds = vec![beta0.sqrt()];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    seeds.extend((0..RESTARTS).map(|_| rng.random_range(0.0..1.0f64)));
    for sb in seeds {
        let a = p.photon_amplitude(sb * sb);
        if let Some((a, sb)) = newton(&p, a, sb) {
            return Ok(Displacements { sqrt_alpha: a, beta: sb * sb });
        }
    }
    Err(Error::Bosonization("displacement equations did not converge".into()))
}

/// Quadratic Hamiltonian of the fluctuations around `disp`.
pub fn build_quadratic(spec: &ModelSpec, disp: &Displacements) -> Result<QuadraticHamiltonian> {
    let p = Params::from_spec(spec);
    let b = disp.beta;
    if !(0.0..1.0).contains(&b) {
        return Err(Error::Bosonization(format!("spin-flip fraction {b} outside [0, 1)")));
    }
    let field = (0.5 * p.wx + 2.0 * p.lambda * disp.sqrt_alpha) * (b / (1.0 - b)).sqrt();
    let omega_a = p.wz + field - 4.0 * p.kappa * b + 4.0 * p.j_t * (1.0 - 2.0 * b);
    let omega_b = field * (2.0 - b) / (4.0 * (1.0 - b)) + p.kappa * (1.0 - 5.0 * b) - 4.0 * p.j_t * b;
    let omega_c = p.lambda * (1.0 - 2.0 * b) / (1.0 - b).sqrt();
    Ok(QuadraticHamiltonian { omega_a, omega_b, omega_c, cavity_freq: p.om })
}

const STABILITY_TOL: f64 = 1e-12;

/// Normal-mode frequencies `(lower, upper)` of the two-mode Hamiltonian.
pub fn two_mode_polaritons(q: &QuadraticHamiltonian) -> Result<(f64, f64)> {
    let s = q.omega_a * q.omega_a + 4.0 * q.omega_a * q.omega_b;
    let o2 = q.cavity_freq * q.cavity_freq;
    let root = ((s - o2) * (s - o2) + 16.0 * q.omega_a * q.omega_c * q.omega_c * q.cavity_freq).sqrt();
    let lower2 = 0.5 * (s + o2 - root);
    let upper2 = 0.5 * (s + o2 + root);
    let scale = upper2.abs().max(1.0);
    if !root.is_finite() || lower2 < -STABILITY_TOL * scale {
        return Err(Error::Unstable(format!("lowest squared frequency {lower2}")));
    }
    Ok((lower2.max(0.0).sqrt(), upper2.sqrt()))
}

/// Same frequencies from the eigenvalues of the bosonic dynamical matrix.
pub fn two_mode_polaritons_symplectic(q: &QuadraticHamiltonian) -> Result<(f64, f64)> {
    let (a, b, c, o) = (q.omega_a, q.omega_b, q.omega_c, q.cavity_freq);
    // rows: commutators of (d, c, d^+, c^+) with H
    #[rustfmt::skip]
    let m = Matrix4::new(
        a + 2.0 * b, c, 2.0 * b, c,
        c, o, c, 0.0,
        -2.0 * b, -c, -a - 2.0 * b, -c,
        -c, 0.0, -c, -o,
    );
    let eig = m.complex_eigenvalues();
    let scale = eig.iter().map(|z| z.norm()).fold(1.0, f64::max);
    if eig.iter().any(|z| z.im.abs() > 1e-7 * scale) {
        return Err(Error::Unstable("complex normal-mode frequency".into()));
    }
    let mut re: Vec<f64> = eig.iter().map(|z| z.re).collect();
    re.sort_by(f64::total_cmp);
    // eigenvalues come in pairs +-w
    Ok((0.5 * (re[2] - re[1]).abs(), 0.5 * (re[3] - re[0]).abs()))
}

/// Polaritons of a spin model via bosonization.
pub fn bosonized_polaritons(spec: &ModelSpec) -> Result<(f64, f64)> {
    let d = solve_displacements(spec)?;
    two_mode_polaritons(&build_quadratic(spec, &d)?)
}
