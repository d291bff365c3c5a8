//! Exponential sums `A(x, omega)`, `F(omega, s)` and the Hurwitz
//! functional equation built on them.

use super::{
    blocked_sum, hurwitz_zeta, log_gamma, real_pow_neg, EvalResult, Method, OmegaParam, Result,
    SPoint, SpecialError,
};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Default ceiling on the number of terms in a truncated `F` sum.
pub const DEFAULT_TRUNCATION_CAP: usize = 10_000_000;

/// Partial-summation constant in the `F` tail bound
/// `C_F (1 + |t|) K^{-sigma} * 2 / |1 - e^{2 pi i omega}|`.
///
/// Abel summation against `A(x)` gives the tail bound
/// `G K^{-sigma} (1 + |s| / sigma)`, with `G` the phase-sum bound, and for
/// `sigma >= 1/2` we have `1 + |s| / sigma <= 2 + |t| / sigma <= 2 (1 + |t|)`.
/// Starting the phase sum at `k = 0` instead of `k = 1` moves `A` by one,
/// which `G >= 1` already covers.
pub const PARTIAL_SUMMATION_CONSTANT: f64 = 2.0;

fn frac(x: f64) -> f64 {
    x - x.floor()
}

fn check_non_integral(omega: f64) -> Result<()> {
    if !omega.is_finite() || omega.fract() == 0.0 {
        return Err(SpecialError::Domain(format!(
            "omega = {omega} is integral; the phase sum does not cancel"
        )));
    }
    Ok(())
}

/// `2 / |1 - e^{2 pi i omega}|`, the uniform bound on `|A(x, omega)|`.
pub fn phase_sum_bound(omega: f64) -> f64 {
    1.0 / (PI * frac(omega)).sin().abs()
}

/// `A(x, omega) = sum_{k=1}^{floor x} e^{2 pi i k omega}` in closed form.
pub fn phase_sum(x: f64, omega: f64) -> Result<Complex64> {
    check_non_integral(omega)?;
    if !(x >= 1.0) {
        return Err(SpecialError::Domain(format!("phase sum needs x >= 1, got {x}")));
    }
    let m = x.floor();
    let w = frac(omega);
    // e^{i pi (m+1) w} sin(pi m w) / sin(pi w)
    let ratio = (PI * frac(m * w / 2.0) * 2.0).sin() / (PI * w).sin();
    let phase = 2.0 * PI * frac((m + 1.0) * w / 2.0);
    Ok(Complex64::from_polar(ratio, phase))
}

/// `F_K(omega, s) = sum_{k=1}^{K} k^{-s} e^{2 pi i k omega}` with the
/// partial-summation tail bound. Negative `omega` gives `F(-omega, s)`.
pub fn f_sum_truncated(s: SPoint, omega: f64, k: usize) -> Result<EvalResult> {
    f_sum_truncated_capped(s, omega, k, DEFAULT_TRUNCATION_CAP)
}

pub fn f_sum_truncated_capped(s: SPoint, omega: f64, k: usize, cap: usize) -> Result<EvalResult> {
    check_non_integral(omega)?;
    if k == 0 {
        return Err(SpecialError::Domain("truncation K must be at least 1".into()));
    }
    if k > cap {
        return Err(SpecialError::TruncationTooLarge { requested: k, cap });
    }
    if !(s.sigma >= 0.5) {
        return Err(SpecialError::Domain(format!(
            "F tail bound needs sigma >= 1/2, got {}",
            s.sigma
        )));
    }
    let z = s.to_complex();
    let w = frac(omega);
    let value = blocked_sum(k as u64, |i| {
        let n = (i + 1) as f64;
        let rot = Complex64::from_polar(1.0, 2.0 * PI * frac(n * w));
        real_pow_neg(n, z) * rot
    });
    let abs_err_bound = PARTIAL_SUMMATION_CONSTANT
        * (1.0 + s.t.abs())
        * (k as f64).powf(-s.sigma)
        * phase_sum_bound(omega);
    Ok(EvalResult { value, abs_err_bound, terms_used: k as u64, method: Method::TruncatedFunctionalEq })
}

/// Error budget of the truncated functional-equation right-hand side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBudget {
    /// `F(omega, s)` truncation error times its prefactor modulus.
    pub truncation_f_plus: f64,
    /// `F(-omega, s)` truncation error times its prefactor modulus.
    pub truncation_f_minus: f64,
    /// Rounding allowance for the log-space prefactors and the two sums.
    pub gamma_factor: f64,
    pub total: f64,
}

/// `Gamma(s) (2 pi)^{-s} [e^{-i pi s/2} F(omega, s) + e^{i pi s/2} F(-omega, s)]`
/// with both sums cut at `K`. The prefactors are formed in log space; on
/// their own they overflow near `t = 1400`.
///
/// The right-hand side equals `zeta(1 - s, omega)`.
pub fn functional_eq_rhs(s: SPoint, omega: f64, k: usize) -> Result<(EvalResult, ErrorBudget)> {
    if !(omega > 0.0 && omega < 1.0) {
        return Err(SpecialError::Domain(format!("omega = {omega} not in (0, 1)")));
    }
    if !(s.sigma > 0.0) || !(s.t > 0.0) {
        return Err(SpecialError::Domain(format!("need sigma > 0 and t > 0, got s = {s}")));
    }
    let z = s.to_complex();
    let base = log_gamma(s)? - z * (2.0 * PI).ln();
    let rot = Complex64::new(0.0, 0.5 * PI) * z;
    let (log_minus, log_plus) = (base - rot, base + rot);
    let (pref_plus, pref_minus) = (log_minus.exp(), log_plus.exp());

    let f_plus = f_sum_truncated(s, omega, k)?;
    let f_minus = f_sum_truncated(s, -omega, k)?;
    let term_plus = pref_plus * f_plus.value;
    let term_minus = pref_minus * f_minus.value;

    let truncation_f_plus = pref_plus.norm() * f_plus.abs_err_bound;
    let truncation_f_minus = pref_minus.norm() * f_minus.abs_err_bound;
    let eps = f64::EPSILON;
    let exponent_scale = 1.0 + log_minus.norm().max(log_plus.norm());
    let sum_scale = (k as f64).sqrt() * eps;
    let gamma_factor = (term_plus.norm() + term_minus.norm()) * (64.0 * eps * exponent_scale)
        + (pref_plus.norm() + pref_minus.norm()) * sum_scale * (k as f64).powf(1.0 - s.sigma).max(1.0);
    let total = truncation_f_plus + truncation_f_minus + gamma_factor;

    let result = EvalResult {
        value: term_plus + term_minus,
        abs_err_bound: total,
        terms_used: 2 * k as u64,
        method: Method::TruncatedFunctionalEq,
    };
    Ok((result, ErrorBudget { truncation_f_plus, truncation_f_minus, gamma_factor, total }))
}

/// Both sides of the functional equation at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalEqCheck {
    /// `zeta(1 - s, omega)` by Euler-Maclaurin.
    pub lhs: EvalResult,
    pub rhs: EvalResult,
    pub budget: ErrorBudget,
    pub residual: f64,
}

impl FunctionalEqCheck {
    /// `residual <= budget.total + lhs.abs_err_bound`.
    pub fn within_budget(&self) -> bool {
        self.residual <= self.budget.total + self.lhs.abs_err_bound
    }
}

pub fn functional_eq_check(s: SPoint, omega: f64, k: usize) -> Result<FunctionalEqCheck> {
    let (rhs, budget) = functional_eq_rhs(s, omega, k)?;
    let reflected = s.reflect();
    if reflected.is_one() {
        return Err(SpecialError::PoleAtOne);
    }
    let lhs = hurwitz_zeta(reflected, OmegaParam::new(omega)?, 1e-12)?;
    let residual = (lhs.value - rhs.value).norm();
    Ok(FunctionalEqCheck { lhs, rhs, budget, residual })
}

/// `|zeta(1 - s, omega) - RHS_K(s, omega)|`.
pub fn functional_eq_residual(s: SPoint, omega: f64, k: usize) -> Result<f64> {
    functional_eq_check(s, omega, k).map(|c| c.residual)
}
