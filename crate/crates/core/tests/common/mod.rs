//! Reference implementations used by the integration tests. Written
//! independently of the library routes they check.
#![allow(dead_code)]

use cavity_response::C64;
use nalgebra::{DMatrix, Matrix2, Matrix4, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

pub fn random_delta(r: &mut ChaCha8Rng) -> f64 {
    10f64.powf(r.random_range(-3.0..-0.5))
}

/// Pauli susceptibilities `[[xx, xz], [zx, zz]]` of one spin from its
/// eigenstates.
pub fn spin_spectral(wx: f64, wz: f64, z: C64) -> [[C64; 2]; 2] {
    let ops = [Matrix2::new(0.0, 1.0, 1.0, 0.0), Matrix2::new(1.0, 0.0, 0.0, -1.0)];
    let eig = SymmetricEigen::new(0.5 * (wx * ops[0] + wz * ops[1]));
    let (g, e) = if eig.eigenvalues[0] <= eig.eigenvalues[1] { (0, 1) } else { (1, 0) };
    let (v0, v1) = (eig.eigenvectors.column(g), eig.eigenvectors.column(e));
    let gap = eig.eigenvalues[e] - eig.eigenvalues[g];
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for s in 0..2 {
            let a = (v0.transpose() * ops[r] * v1)[(0, 0)];
            let b = (v1.transpose() * ops[s] * v0)[(0, 0)];
            let a2 = (v1.transpose() * ops[r] * v0)[(0, 0)];
            let b2 = (v0.transpose() * ops[s] * v1)[(0, 0)];
            out[r][s] = -(a * b / (z - gap) - a2 * b2 / (z + gap));
        }
    }
    out
}

/// Bare current-current Green function `[[xx, xy], [yx, yy]]` of the
/// electron gas from a truncated Landau-level sum with ladder operators;
/// units N e^2 / m.
pub fn landau_level_response(wc: f64, z: C64, levels: usize) -> [[C64; 2]; 2] {
    let n = levels;
    let mut a = DMatrix::<C64>::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = C64::new((k as f64).sqrt(), 0.0);
    }
    let ad = a.adjoint();
    let s = (wc / 2.0).sqrt();
    let jx = (&a + &ad) * C64::new(s, 0.0);
    let jy = (&ad - &a) * C64::new(0.0, s);
    let ops = [jx, jy];
    let mut out = [[C64::new(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for t in 0..2 {
            let mut acc = C64::new(0.0, 0.0);
            for m in 1..n {
                let em = wc * m as f64;
                acc += ops[r][(0, m)] * ops[t][(m, 0)] / (z - em);
                acc -= ops[r][(m, 0)] * ops[t][(0, m)] / (z + em);
            }
            out[r][t] = acc;
        }
    }
    out
}

/// Dressed current response in rational form.
pub fn qhe_rational(om: f64, wp: f64, wc: f64, z: C64) -> [[C64; 2]; 2] {
    let z2 = z * z;
    let q = (z2 - om * om - wp * wp) * (z2 - wc * wc) - wp * wp * wc * wc;
    let xy = C64::new(0.0, wc) * z * (z2 - om * om) / q;
    let xx = ((wc * wc + wp * wp) * z2 - om * om * wc * wc) / q;
    let yy = wc * wc * (z2 - om * om) / q;
    [[xx, xy], [-xy, yy]]
}

pub fn landau_polaritons(om: f64, wp: f64, wc: f64) -> (f64, f64) {
    let wt2 = om * om + wp * wp;
    let d = ((wt2 - wc * wc).powi(2) + 4.0 * wc * wc * wp * wp).sqrt();
    ((0.5 * (wt2 + wc * wc - d)).max(0.0).sqrt(), (0.5 * (wt2 + wc * wc + d)).sqrt())
}

/// Dicke polaritons (zeta = 0) from the piecewise closed form.
pub fn dicke_closed(wz: f64, om: f64, l: f64) -> (f64, f64) {
    let (a, c) = if 4.0 * l * l < wz * om {
        (wz * wz, 16.0 * l * l * wz * om)
    } else {
        let mu = wz * om / (4.0 * l * l);
        (wz * wz / (mu * mu), 4.0 * wz * wz * om * om)
    };
    let d = ((a - om * om).powi(2) + c).sqrt();
    ((0.5 * (a + om * om - d)).max(0.0).sqrt(), (0.5 * (a + om * om + d)).sqrt())
}

/// Dicke polaritons with the diamagnetic term (zeta = 1).
pub fn dicke_closed_zeta1(wz: f64, om: f64, l: f64) -> (f64, f64) {
    let wzt2 = wz * (wz + 4.0 * l * l / om);
    let lt2 = l * l * (1.0 + 4.0 * l * l / (wz * om)).powf(-0.5);
    let d = ((wzt2 - om * om).powi(2) + 16.0 * lt2 * wzt2.sqrt() * om).sqrt();
    ((0.5 * (wzt2 + om * om - d)).max(0.0).sqrt(), (0.5 * (wzt2 + om * om + d)).sqrt())
}

/// LMG polaritons with order along the coupling.
pub fn lmg_closed(wz: f64, om: f64, l: f64, j: f64) -> (f64, f64) {
    let mu = wz / (4.0 * (l * l / om + j));
    let (a, c) = if mu >= 1.0 {
        (wz * (wz - 4.0 * j), 16.0 * l * l * wz * om)
    } else {
        (wz * wz / (mu * mu) - 4.0 * mu * j * wz, 16.0 * l * l * mu * wz * om)
    };
    let d = ((a - om * om).powi(2) + c).sqrt();
    ((0.5 * (a + om * om - d)).max(0.0).sqrt(), (0.5 * (a + om * om + d)).sqrt())
}

/// Positive normal-mode frequencies of a two-mode quadratic Hamiltonian
/// from the eigenvalues of its bosonic dynamical matrix.
pub fn dynamical_frequencies(a: f64, b: f64, c: f64, o: f64) -> Vec<f64> {
    #[rustfmt::skip]
    let m = Matrix4::new(
        a + 2.0 * b, c, 2.0 * b, c,
        c, o, c, 0.0,
        -2.0 * b, -c, -a - 2.0 * b, -c,
        -c, 0.0, -c, -o,
    );
    let mut f: Vec<f64> = m.complex_eigenvalues().iter().map(|z| z.re).filter(|&x| x > 0.0).collect();
    f.sort_by(f64::total_cmp);
    f
}

/// Pair every expected value with a found one; worst distance, or infinity
/// when the counts differ.
pub fn match_sets(found: &[f64], expected: &[f64]) -> f64 {
    if found.len() != expected.len() {
        return f64::INFINITY;
    }
    let mut f = found.to_vec();
    let mut e = expected.to_vec();
    f.sort_by(f64::total_cmp);
    e.sort_by(f64::total_cmp);
    f.iter().zip(&e).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// Distinct values in `xs` inside `[lo, hi]`, merging those within `tol`.
pub fn distinct_in(xs: &[f64], lo: f64, hi: f64, tol: f64) -> Vec<f64> {
    let mut v: Vec<f64> = xs.iter().copied().filter(|&x| x >= lo && x <= hi).collect();
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| (*a - *b).abs() < tol);
    v
}
