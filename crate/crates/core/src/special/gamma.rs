use super::{Result, SPoint, SpecialError};
use num_complex::Complex64;
use std::f64::consts::PI;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// `B_{2k} / (2k (2k - 1))` for k = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// Stirling series is used once `|z| >= STIRLING_RADIUS` and `Re z >= 0`;
/// the first omitted term is below 1e-23 there.
const STIRLING_RADIUS: f64 = 15.0;

/// Principal branch of `log Gamma(s)`: analytic off the negative real axis
/// and real for real `s > 0`.
pub fn log_gamma(s: SPoint) -> Result<Complex64> {
    if s.t == 0.0 && s.sigma <= 0.0 && s.sigma.fract() == 0.0 {
        return Err(SpecialError::PoleAtNonpositiveInteger(s.sigma));
    }
    let mut z = s.to_complex();
    // log Gamma(z) = log Gamma(z + 1) - log z, principal log throughout.
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < 0.0 || z.norm() < STIRLING_RADIUS {
        shift += z.ln();
        z += 1.0;
    }
    Ok(stirling(z) - shift)
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut series = Complex64::new(0.0, 0.0);
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series
}

/// Leading-order modulus `sqrt(2 pi) |t|^{sigma - 1/2} e^{-pi |t| / 2}`,
/// assembled in log space. Underflows cleanly to zero.
pub fn gamma_abs_asymptotic(sigma: f64, t: f64) -> Result<f64> {
    ln_gamma_abs_asymptotic(sigma, t).map(f64::exp)
}

/// Natural log of [`gamma_abs_asymptotic`]; stays finite for any height.
pub fn ln_gamma_abs_asymptotic(sigma: f64, t: f64) -> Result<f64> {
    if !(t.abs() >= 1.0) || !sigma.is_finite() || !t.is_finite() {
        return Err(SpecialError::Domain(format!(
            "asymptotic |Gamma| needs |t| >= 1, got t = {t}"
        )));
    }
    Ok(HALF_LN_2PI + (sigma - 0.5) * t.abs().ln() - 0.5 * PI * t.abs())
}
