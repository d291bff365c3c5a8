//! Hurwitz zeta by direct summation and by Euler-Maclaurin continuation.

use super::{blocked_sum, real_pow_neg, EvalResult, Method, OmegaParam, Result, SPoint, SpecialError};
use num_complex::Complex64;

/// Number of Bernoulli correction terms in the Euler-Maclaurin tail.
pub const EM_ORDER: usize = 15;
/// Largest shift `N` tried before giving up.
pub const MAX_SHIFT: u64 = 1_000_000_000;
/// Targets below this are not reachable in double precision.
pub const MIN_TARGET_ABS_ERR: f64 = 1e-13;

/// Even Bernoulli numbers `B_2, B_4, ..., B_30` as (numerator, denominator).
const BERNOULLI_EVEN: [(f64, f64); EM_ORDER] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174_611.0, 330.0),
    (854_513.0, 138.0),
    (-236_364_091.0, 2730.0),
    (8_553_103.0, 6.0),
    (-23_749_461_029.0, 870.0),
    (8_615_841_276_005.0, 14322.0),
];

/// `B_{2j} / (2j)!` for j = 1..=EM_ORDER.
fn em_coefficients() -> [f64; EM_ORDER] {
    let mut out = [0.0; EM_ORDER];
    let mut fact = 1.0;
    for (j, (num, den)) in BERNOULLI_EVEN.iter().enumerate() {
        let k = 2.0 * (j as f64 + 1.0);
        fact *= (k - 1.0) * k;
        out[j] = num / den / fact;
    }
    out
}

/// `sum_{n=0}^{n_terms-1} (n + omega)^{-s}` for `sigma > 1`, with the
/// integral-comparison tail bound `(n_terms + omega - 1)^{1-sigma} / (sigma - 1)`.
pub fn dirichlet_series_direct(s: SPoint, omega: OmegaParam, n_terms: u64) -> Result<EvalResult> {
    if s.sigma <= 1.0 {
        return Err(SpecialError::Domain(format!(
            "direct series needs sigma > 1, got {}",
            s.sigma
        )));
    }
    if n_terms == 0 {
        return Err(SpecialError::Domain("n_terms must be at least 1".into()));
    }
    let a = omega.get();
    let z = s.to_complex();
    let value = blocked_sum(n_terms, |n| real_pow_neg(n as f64 + a, z));
    let tail_base = n_terms as f64 + a - 1.0;
    let abs_err_bound = tail_base.powf(1.0 - s.sigma) / (s.sigma - 1.0);
    Ok(EvalResult { value, abs_err_bound, terms_used: n_terms, method: Method::DirectSeries })
}

/// Bound on the Euler-Maclaurin remainder after `EM_ORDER` corrections at
/// shift `n`:
/// `|B_2M| / (2M)! * |(s)_2M| * (n + a)^{1 - sigma - 2M} / (sigma + 2M - 1)`.
pub fn em_remainder_bound(s: SPoint, omega: f64, n: u64) -> f64 {
    let m2 = 2 * EM_ORDER;
    let (num, den) = BERNOULLI_EVEN[EM_ORDER - 1];
    let ln_fact: f64 = (1..=m2).map(|k| (k as f64).ln()).sum();
    let z = s.to_complex();
    let ln_poch: f64 = (0..m2).map(|k| (z + k as f64).norm().ln()).sum();
    let x = n as f64 + omega;
    let decay = s.sigma + m2 as f64 - 1.0;
    let ln_bound = (num / den).abs().ln() - ln_fact + ln_poch - decay * x.ln() - decay.ln();
    ln_bound.exp()
}

fn em_tail(z: Complex64, x: f64) -> Complex64 {
    let xs = real_pow_neg(x, z);
    let mut tail = xs * x / (z - 1.0) + xs * 0.5;
    // term_j = (s)_{2j-1} x^{-s-2j+1}
    let mut term = z * xs / x;
    let inv_x2 = 1.0 / (x * x);
    for (j, c) in em_coefficients().iter().enumerate() {
        tail += term * *c;
        let k = 2.0 * j as f64;
        term *= (z + (k + 1.0)) * (z + (k + 2.0)) * inv_x2;
    }
    tail
}

fn check_target(target: f64) -> Result<()> {
    if !(target >= MIN_TARGET_ABS_ERR) || !target.is_finite() {
        return Err(SpecialError::InvalidTolerance(target));
    }
    Ok(())
}

/// `zeta(s, omega)` for `sigma >= -1`, `s != 1`, to absolute accuracy `target`.
pub fn hurwitz_zeta(s: SPoint, omega: OmegaParam, target: f64) -> Result<EvalResult> {
    hurwitz_zeta_with_cap(s, omega, target, MAX_SHIFT)
}

pub fn hurwitz_zeta_with_cap(
    s: SPoint,
    omega: OmegaParam,
    target: f64,
    max_shift: u64,
) -> Result<EvalResult> {
    check_target(target)?;
    if s.is_one() {
        return Err(SpecialError::PoleAtOne);
    }
    if s.sigma < -1.0 {
        return Err(SpecialError::Domain(format!(
            "evaluation below sigma = -1 is not supported (sigma = {})",
            s.sigma
        )));
    }
    let a = omega.get();
    let mut n = ((1.1 * (s.t.abs() + s.sigma.abs())).ceil() as u64).max(16);
    let mut bound = em_remainder_bound(s, a, n);
    if n > max_shift {
        return Err(SpecialError::NonConvergence { bound, target, shift: n });
    }
    while bound > target {
        if n >= max_shift {
            return Err(SpecialError::NonConvergence { bound, target, shift: n });
        }
        n = (2 * n).min(max_shift);
        bound = em_remainder_bound(s, a, n);
    }
    let z = s.to_complex();
    let head = blocked_sum(n, |k| real_pow_neg(k as f64 + a, z));
    let value = head + em_tail(z, n as f64 + a);
    Ok(EvalResult { value, abs_err_bound: bound, terms_used: n, method: Method::EulerMaclaurin })
}

/// Riemann zeta as `zeta(s, 1)`.
pub fn riemann_zeta(s: SPoint, target: f64) -> Result<EvalResult> {
    hurwitz_zeta(s, OmegaParam(1.0), target)
}

/// `zeta(s, omega) - omega^{-s}`, evaluated as `zeta(s, omega + 1)` so the
/// singular first term never enters.
pub fn zeta1(s: SPoint, omega: OmegaParam, target: f64) -> Result<EvalResult> {
    let w = omega.get();
    if w > 1.0 {
        return Err(SpecialError::Domain(format!("zeta1 needs omega in (0, 1], got {w}")));
    }
    hurwitz_zeta(s, OmegaParam(w + 1.0), target)
}
