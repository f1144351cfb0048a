mod common;

use cavity_response::meanfield::{dressed_fields, free_spin_susceptibility, solve_mean_field, ModelSpec, SpinFields};
use cavity_response::models::SpinModel;
use cavity_response::response::{
    dress_matter_multichannel, dress_matter_single_channel, dress_photon, free_photon_propagator, induced_interaction,
    photon_propagators_eom, verify_pi_eom_equivalence, ComplexFrequency, InteractionChannel, Operator,
};
use cavity_response::C64;
use common::*;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;

fn spin_xx(wz: f64) -> impl Fn(ComplexFrequency) -> cavity_response::response::Eval<C64> {
    move |w| {
        let z = w.value();
        Ok(-2.0 * wz / (z * z - wz * wz))
    }
}

#[test]
fn induced_interaction_limits() {
    let ch = InteractionChannel::new(0.6, 1.2, 0.0).unwrap();
    let v0 = induced_interaction(&ch, ComplexFrequency::real(0.0)).unwrap();
    assert!((v0.re + 2.0 * 0.36 / 1.2).abs() < 1e-15);
    let far = induced_interaction(&ch, ComplexFrequency::new(1e7, 1e-3).unwrap()).unwrap();
    assert!(far.norm() < 1e-12);

    // the diamagnetic term leaves 2 zeta lambda^2 / Omega at high frequency
    let ch1 = InteractionChannel::new(0.6, 1.2, 1.0).unwrap();
    let far1 = induced_interaction(&ch1, ComplexFrequency::new(1e7, 1e-3).unwrap()).unwrap();
    assert!((far1.re - 2.0 * 0.36 / 1.2).abs() < 1e-10);
}

#[test]
fn eom_hand_example() {
    let ch = InteractionChannel::new(0.25, 1.0, 0.0).unwrap();
    let (d, dp) = photon_propagators_eom(&ch, C64::new(2.0, 0.0), ComplexFrequency::real(0.0)).unwrap();
    assert!((d - C64::new(-7.0 / 6.0, 0.0)).norm() < 1e-14);
    assert!((dp - C64::new(0.0625 * 2.0 / -0.75, 0.0)).norm() < 1e-14);
}

#[test]
fn pi_eom_equivalence_random_parameters() {
    let mut r = rng(11);
    for _ in 0..1000 {
        let zeta = if r.random_bool(0.5) { 1.0 } else { 0.0 };
        let ch = InteractionChannel::new(r.random_range(0.0..1.5), r.random_range(0.2..2.0), zeta).unwrap();
        let wz = r.random_range(0.1..2.0);
        let grid = [ComplexFrequency::new(r.random_range(-3.0..3.0), 1e-3).unwrap()];
        let eq = verify_pi_eom_equivalence(&ch, spin_xx(wz), &grid);
        assert!(eq.max_rel < 1e-10, "{eq:?}");
    }
}

#[test]
fn pi_eom_equivalence_arbitrary_zeta() {
    let ch = InteractionChannel::new(0.8, 1.1, 0.37).unwrap();
    let grid: Vec<ComplexFrequency> =
        (0..300).map(|i| ComplexFrequency::new(-3.0 + 0.02 * i as f64, 1e-3).unwrap()).collect();
    let eq = verify_pi_eom_equivalence(&ch, spin_xx(0.9), &grid);
    assert_eq!(eq.skipped, 0);
    assert!(eq.max_rel < 1e-10, "{eq:?}");
}

#[test]
fn decoupled_channel_is_exact() {
    let ch = InteractionChannel::new(0.0, 1.0, 0.0).unwrap();
    let grid = [ComplexFrequency::new(0.4, 1e-3).unwrap(), ComplexFrequency::new(2.5, 1e-2).unwrap()];
    let eq = verify_pi_eom_equivalence(&ch, spin_xx(1.3), &grid);
    assert_eq!(eq.max_abs, 0.0);
    let w = grid[0];
    let d = dress_photon(&ch, C64::new(3.0, -1.0), w).unwrap();
    assert_eq!(d, free_photon_propagator(1.0, w).unwrap());
}

/// The transverse model's dressed chi_xx written out for two channels,
/// against the general matrix inversion used by the library.
#[test]
fn transverse_symbolic_formula_matches_inversion() {
    let mut r = rng(12);
    let mut checked = 0;
    while checked < 100 {
        let spec = ModelSpec::lmg_transverse(
            r.random_range(-0.5..0.5),
            r.random_range(-0.5..1.5),
            r.random_range(0.0..0.6),
            r.random_range(0.0..1.2),
            r.random_range(0.5..1.5),
        );
        let Ok(model) = SpinModel::new(&spec) else { continue };
        let w = ComplexFrequency::new(r.random_range(-4.0..4.0), random_delta(&mut r)).unwrap();
        let state = solve_mean_field(&spec).unwrap();
        let chi = free_spin_susceptibility(dressed_fields(&spec, &state), w).unwrap();
        let ch = model.channels();
        let vx = induced_interaction(&ch[0].channel, w).unwrap();
        let vz = induced_interaction(&ch[1].channel, w).unwrap();
        let det = chi.xx * chi.zz - chi.xz * chi.zx;
        let formula = (chi.xx + vz * det) / (1.0 + vx * chi.xx + vz * chi.zz + vx * vz * det);
        let general = model.response(w).unwrap().matter.get(Operator::X, Operator::X).unwrap();
        assert!(rel(general, formula) < 1e-12, "{spec:?} {w:?}: {general} vs {formula}");
        checked += 1;
    }
}

#[test]
fn free_spin_matches_eigenstates() {
    let mut r = rng(13);
    for _ in 0..500 {
        let (wx, wz) = (r.random_range(-2.0..2.0), r.random_range(-2.0..2.0));
        let w = ComplexFrequency::new(r.random_range(-4.0..4.0), random_delta(&mut r)).unwrap();
        let chi = free_spin_susceptibility(SpinFields::new(wx, wz), w).unwrap();
        let o = spin_spectral(wx, wz, w.value());
        for (a, b) in [(chi.xx, o[0][0]), (chi.xz, o[0][1]), (chi.zx, o[1][0]), (chi.zz, o[1][1])] {
            assert!(rel(a, b) < 1e-12, "{a} vs {b}");
        }
    }
}

fn random_matrix(r: &mut rand_chacha::ChaCha8Rng, n: usize) -> DMatrix<C64> {
    DMatrix::from_fn(n, n, |_, _| C64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)))
}

#[test]
fn zero_interactions_leave_chi_untouched() {
    let mut r = rng(14);
    let chi = random_matrix(&mut r, 3);
    let w = ComplexFrequency::with_default_broadening(0.3);
    let zero = C64::new(0.0, 0.0);
    assert_eq!(dress_matter_multichannel(&chi, &[(0, zero), (2, zero)], w).unwrap(), chi);
    assert_eq!(dress_matter_single_channel(&chi, 1, zero, w).unwrap(), chi);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn multichannel_reduces_to_single(seed in any::<u64>(), x in 0usize..3, vre in -2.0f64..2.0, vim in -0.5f64..0.5) {
        let mut r = rng(seed);
        let chi = random_matrix(&mut r, 3);
        let v = C64::new(vre, vim);
        let w = ComplexFrequency::with_default_broadening(0.7);
        if let (Ok(a), Ok(b)) = (dress_matter_single_channel(&chi, x, v, w), dress_matter_multichannel(&chi, &[(x, v)], w)) {
            let scale = a.iter().fold(1.0f64, |m, z| m.max(z.norm()));
            let dev = (a - b).iter().fold(0.0f64, |m, z| m.max(z.norm()));
            prop_assert!(dev <= 1e-14 * scale, "dev {}", dev);
        }
    }

    #[test]
    fn sequential_dressing_equals_joint(seed in any::<u64>(), v1 in -1.0f64..1.0, v2 in -1.0f64..1.0) {
        let mut r = rng(seed);
        let chi = random_matrix(&mut r, 2);
        let w = ComplexFrequency::with_default_broadening(0.7);
        let (v1, v2) = (C64::new(v1, 0.0), C64::new(v2, 0.0));
        let joint = dress_matter_multichannel(&chi, &[(0, v1), (1, v2)], w);
        let step = dress_matter_single_channel(&chi, 0, v1, w).and_then(|c| dress_matter_single_channel(&c, 1, v2, w));
        if let (Ok(a), Ok(b)) = (joint, step) {
            let scale = a.iter().fold(1.0f64, |m, z| m.max(z.norm()));
            let dev = (a - b).iter().fold(0.0f64, |m, z| m.max(z.norm()));
            prop_assert!(dev <= 1e-10 * scale, "dev {}", dev);
        }
    }

    #[test]
    fn diagonal_responses_are_hermitian(lambda in 0.0f64..1.2, wz in 0.1f64..2.0, j in 0.0f64..0.5, omega in 0.01f64..3.0, delta in 1e-3f64..0.3) {
        for spec in [ModelSpec::dicke(wz, lambda, 1.0, 0.0), ModelSpec::lmg_transverse(0.0, wz, j, lambda, 1.0)] {
            let model = SpinModel::new(&spec).unwrap();
            let p = model.response(ComplexFrequency::new(omega, delta).unwrap());
            let m = model.response(ComplexFrequency::new(-omega, delta).unwrap());
            if let (Ok(p), Ok(m)) = (p, m) {
                for op in spec.labels() {
                    let (a, b) = (p.matter.get(op, op).unwrap(), m.matter.get(op, op).unwrap());
                    prop_assert!((a - b.conj()).norm() <= 1e-12 * a.norm().max(1.0));
                }
            }
        }
    }

    #[test]
    fn photon_decays_to_free_propagator(lambda in 0.0f64..1.2, wz in 0.1f64..2.0, zeta in 0.0f64..1.0) {
        let model = SpinModel::new(&ModelSpec::dicke(wz, lambda, 1.0, zeta)).unwrap();
        let w = ComplexFrequency::new(1e5, 1e-3).unwrap();
        let resp = model.response(w).unwrap();
        let d = resp.photon.unwrap();
        prop_assert!((d - 1.0 / w.value()).norm() < 1e-8);
        prop_assert!(resp.matter.get(Operator::X, Operator::X).unwrap().norm() < 1e-8);
    }
}
