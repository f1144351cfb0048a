//! Built-in consistency checks between independent routes, run by the
//! `validate` subcommand.

use nalgebra::{DMatrix, Matrix2, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bosonization::{
    bosonized_polaritons, two_mode_polaritons, two_mode_polaritons_symplectic, QuadraticHamiltonian,
};
use crate::meanfield::{free_spin_susceptibility, ModelSpec, SpinFields};
use crate::models::{
    conductivity, current_response, current_response_explicit, dicke_polaritons, lmg_longitudinal_polaritons, QheSpec,
};
use crate::response::{
    dress_matter_multichannel, dress_matter_single_channel, induced_interaction, verify_pi_eom_equivalence,
    ComplexFrequency, InteractionChannel,
};
use crate::C64;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub deviation: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.deviation.is_finite() && self.deviation <= self.tolerance
    }
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

fn random_frequency(rng: &mut ChaCha8Rng) -> ComplexFrequency {
    let delta = 10f64.powf(rng.random_range(-3.0..-0.5));
    ComplexFrequency::new(rng.random_range(-3.0..3.0), delta).expect("valid frequency")
}

/// Free-spin susceptibility against a sum over the eigenstates of the
/// 2x2 Hamiltonian.
fn free_spin_spectral(rng: &mut ChaCha8Rng) -> f64 {
    let sx = Matrix2::new(0.0, 1.0, 1.0, 0.0);
    let sz = Matrix2::new(1.0, 0.0, 0.0, -1.0);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let (wx, wz): (f64, f64) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let w = random_frequency(rng);
        let eig = SymmetricEigen::new(0.5 * (wx * sx + wz * sz));
        let (g, e) = if eig.eigenvalues[0] < eig.eigenvalues[1] { (0, 1) } else { (1, 0) };
        let v0 = eig.eigenvectors.column(g);
        let v1 = eig.eigenvectors.column(e);
        let de = eig.eigenvalues[e] - eig.eigenvalues[g];
        let elem = |op: &Matrix2<f64>| (v0.transpose() * op * v1)[(0, 0)];
        let z = w.value();
        let chi = |a: f64, b: f64| -(a * b / (z - de) - a * b / (z + de));
        let s = free_spin_susceptibility(SpinFields::new(wx, wz), w).expect("non-degenerate");
        let (x, zz) = (elem(&sx), elem(&sz));
        for (got, want) in [(s.xx, chi(x, x)), (s.xz, chi(x, zz)), (s.zx, chi(zz, x)), (s.zz, chi(zz, zz))] {
            worst = worst.max(rel(got, want));
        }
    }
    worst
}

fn pi_eom(rng: &mut ChaCha8Rng) -> f64 {
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let zeta = [0.0, 1.0, 0.37][rng.random_range(0..3)];
        let ch = InteractionChannel::new(rng.random_range(0.0..1.5), rng.random_range(0.2..2.0), zeta)
            .expect("valid channel");
        let fields = SpinFields::new(0.0, rng.random_range(0.2..2.0));
        let grid = [random_frequency(rng)];
        let eq = verify_pi_eom_equivalence(
            &ch,
            |w| Ok(free_spin_susceptibility(fields, w).map_err(|_| crate::Singular { omega: w.omega() })?.xx),
            &grid,
        );
        worst = worst.max(eq.max_rel);
    }
    worst
}

fn single_vs_multichannel(rng: &mut ChaCha8Rng) -> f64 {
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let fields = SpinFields::new(rng.random_range(-1.0..1.0), rng.random_range(0.2..2.0));
        let ch = InteractionChannel::new(rng.random_range(0.0..1.0), rng.random_range(0.2..2.0), 0.0)
            .expect("valid channel");
        let w = random_frequency(rng);
        let s = free_spin_susceptibility(fields, w).expect("non-degenerate");
        let chi = DMatrix::from_row_slice(2, 2, &[s.xx, s.xz, s.zx, s.zz]);
        let v = induced_interaction(&ch, w).expect("broadened");
        let a = dress_matter_single_channel(&chi, 0, v, w).expect("broadened");
        let b = dress_matter_multichannel(&chi, &[(0, v)], w).expect("broadened");
        for (x, y) in a.iter().zip(b.iter()) {
            worst = worst.max(rel(*y, *x));
        }
    }
    worst
}

fn random_qhe(rng: &mut ChaCha8Rng) -> QheSpec {
    QheSpec {
        cavity_freq: rng.random_range(0.2..2.0),
        plasma_freq: rng.random_range(0.0..2.0),
        cyclotron_freq: rng.random_range(0.05..2.0),
        filling: 1.0,
    }
}

fn qhe_routes(rng: &mut ChaCha8Rng) -> f64 {
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let spec = random_qhe(rng);
        let w = random_frequency(rng);
        let a = current_response(&spec, w).expect("broadened");
        let b = current_response_explicit(&spec, w).expect("broadened");
        for (x, y) in [(a.xx, b.xx), (a.xy, b.xy), (a.yx, b.yx), (a.yy, b.yy)] {
            worst = worst.max(rel(x, y));
        }
    }
    worst
}

fn two_mode_routes(rng: &mut ChaCha8Rng) -> f64 {
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < 500 {
        let q = QuadraticHamiltonian {
            omega_a: rng.random_range(0.1..2.0),
            omega_b: rng.random_range(-0.2..1.0),
            omega_c: rng.random_range(0.0..1.0),
            cavity_freq: rng.random_range(0.1..2.0),
        };
        let Ok(a) = two_mode_polaritons(&q) else { continue };
        if a.0 < 1e-3 {
            continue;
        }
        let b = two_mode_polaritons_symplectic(&q).unwrap_or((f64::NAN, f64::NAN));
        worst = worst.max((a.0 - b.0).abs()).max((a.1 - b.1).abs());
        if worst.is_nan() {
            return f64::NAN;
        }
        done += 1;
    }
    worst
}

fn bosonization_vs_closed_form() -> f64 {
    let mut worst = 0.0f64;
    for i in 0..=60 {
        let l = 0.02 * i as f64 + 0.011;
        let pairs = [
            (bosonized_polaritons(&ModelSpec::dicke(1.0, l, 1.0, 0.0)), dicke_polaritons(1.0, 1.0, l, 0.0)),
            (bosonized_polaritons(&ModelSpec::dicke(1.0, l, 1.0, 1.0)), dicke_polaritons(1.0, 1.0, l, 1.0)),
            (
                bosonized_polaritons(&ModelSpec::lmg_longitudinal(1.0, 0.1, l, 1.0)),
                lmg_longitudinal_polaritons(1.0, 1.0, l, 0.1),
            ),
        ];
        for (a, b) in pairs {
            match (a, b) {
                (Ok(a), Ok(b)) => worst = worst.max((a.0 - b.0).abs()).max((a.1 - b.1).abs()),
                _ => return f64::NAN,
            }
        }
    }
    worst
}

fn hall_plateau(rng: &mut ChaCha8Rng) -> f64 {
    let mut worst = 0.0f64;
    let w = ComplexFrequency::new(0.0, 1e-6).expect("valid frequency");
    for _ in 0..100 {
        let spec = random_qhe(rng);
        match conductivity(&spec, w) {
            Ok(c) => worst = worst.max((c.xy - 1.0).norm()),
            Err(_) => return f64::NAN,
        }
    }
    worst
}

/// Run every built-in check with a fixed random seed.
pub fn run_builtin_checks() -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    vec![
        Check { name: "free spin vs eigenstate sum", deviation: free_spin_spectral(&mut rng), tolerance: 1e-12 },
        Check {
            name: "photon propagator: dressing vs equations of motion",
            deviation: pi_eom(&mut rng),
            tolerance: 1e-10,
        },
        Check {
            name: "single vs multichannel dressing",
            deviation: single_vs_multichannel(&mut rng),
            tolerance: 1e-14,
        },
        Check {
            name: "electron gas: implicit vs explicit response",
            deviation: qhe_routes(&mut rng),
            tolerance: 1e-10,
        },
        Check {
            name: "two-mode: closed form vs dynamical matrix",
            deviation: two_mode_routes(&mut rng),
            tolerance: 1e-10,
        },
        Check {
            name: "bosonization vs closed-form polaritons",
            deviation: bosonization_vs_closed_form(),
            tolerance: 1e-8,
        },
        Check { name: "dc Hall plateau", deviation: hall_plateau(&mut rng), tolerance: 1e-6 },
    ]
}

#[cfg(test)]
mod tests {
    #[test]
    fn builtin_checks_pass() {
        for c in super::run_builtin_checks() {
            assert!(c.passed(), "{} deviated by {:e}", c.name, c.deviation);
        }
    }
}
