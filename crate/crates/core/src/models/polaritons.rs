use crate::error::{Error, Result};

fn branches(a: f64, b: f64, coupling: f64) -> (f64, f64) {
    // 2 w^2 = a + b -/+ sqrt((a - b)^2 + coupling)
    let root = ((a - b) * (a - b) + coupling).sqrt();
    let lower = (0.5 * (a + b - root)).max(0.0).sqrt();
    let upper = (0.5 * (a + b + root)).sqrt();
    (lower, upper)
}

/// Lower and upper polariton of the Dicke model, for `zeta` 0 or 1.
pub fn dicke_polaritons(omega_z: f64, cavity_freq: f64, lambda: f64, zeta: f64) -> Result<(f64, f64)> {
    let (wz, om, l2) = (omega_z, cavity_freq, lambda * lambda);
    if !(wz > 0.0 && om > 0.0 && lambda >= 0.0) {
        return Err(Error::InvalidParameter("need omega_z > 0, cavity_freq > 0, lambda >= 0".into()));
    }
    if zeta == 1.0 {
        // the quadratic term removes the transition; only the normal branch exists
        let wz_eff = (wz * (wz + 4.0 * l2 / om)).sqrt();
        let l2_eff = l2 / (1.0 + 4.0 * l2 / (wz * om)).sqrt();
        return Ok(branches(wz_eff * wz_eff, om * om, 16.0 * l2_eff * wz_eff * om));
    }
    if zeta != 0.0 {
        return Err(Error::InvalidParameter(format!("closed form needs zeta 0 or 1, got {zeta}")));
    }
    if 4.0 * l2 < wz * om {
        Ok(branches(wz * wz, om * om, 16.0 * l2 * wz * om))
    } else {
        let mu = wz * om / (4.0 * l2);
        let a = wz * wz / (mu * mu);
        Ok(branches(a, om * om, 4.0 * wz * wz * om * om))
    }
}

/// Polaritons of the LMG model with its order parameter along the cavity
/// coupling.
pub fn lmg_longitudinal_polaritons(omega_z: f64, cavity_freq: f64, lambda: f64, j: f64) -> Result<(f64, f64)> {
    let (wz, om, l2) = (omega_z, cavity_freq, lambda * lambda);
    if !(wz > 0.0 && om > 0.0 && lambda >= 0.0 && j >= 0.0) {
        return Err(Error::InvalidParameter("need omega_z > 0, cavity_freq > 0, lambda >= 0, j >= 0".into()));
    }
    let j_eff = l2 / om + j;
    let mu = wz / (4.0 * j_eff);
    if mu > 1.0 {
        let wz_eff2 = wz * (wz - 4.0 * j);
        Ok(branches(wz_eff2, om * om, 16.0 * l2 * wz * om))
    } else {
        let a = wz * wz / (mu * mu) - 4.0 * mu * j * wz;
        Ok(branches(a, om * om, 16.0 * l2 * mu * wz * om))
    }
}
