//! Special functions on and near the critical strip.
//!
//! Everything here is a pure function of its arguments. Values come back as
//! [`EvalResult`], which carries an absolute error bound next to the number.
//! The bounds cover truncation of the underlying series (Euler-Maclaurin
//! remainder, Dirichlet tail, exponential-sum tail). Floating-point rounding
//! is not part of the bound; in double precision it stays near
//! `1e-16 * |t| * sqrt(N)` for an `N`-term sum at height `t`.

mod expsum;
mod gamma;
mod zeta;

pub use expsum::{
    f_sum_truncated, f_sum_truncated_capped, functional_eq_check, functional_eq_residual,
    functional_eq_rhs, phase_sum, phase_sum_bound, ErrorBudget, FunctionalEqCheck,
    DEFAULT_TRUNCATION_CAP, PARTIAL_SUMMATION_CONSTANT,
};
pub use gamma::{gamma_abs_asymptotic, ln_gamma_abs_asymptotic, log_gamma};
pub use zeta::{
    dirichlet_series_direct, em_remainder_bound, hurwitz_zeta, hurwitz_zeta_with_cap,
    riemann_zeta, zeta1, EM_ORDER, MAX_SHIFT, MIN_TARGET_ABS_ERR,
};

use num_complex::Complex64;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("zeta has a simple pole at s = 1")]
    PoleAtOne,
    #[error("gamma has a pole at the nonpositive integer {0}")]
    PoleAtNonpositiveInteger(f64),
    #[error("remainder bound {bound:.3e} above target {target:.3e} with shift capped at {shift}")]
    NonConvergence { bound: f64, target: f64, shift: u64 },
    #[error("target absolute error {0:e} is outside the reachable range")]
    InvalidTolerance(f64),
    #[error("truncation {requested} exceeds the cap {cap}")]
    TruncationTooLarge { requested: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, SpecialError>;

/// A complex argument `s = sigma + i t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SPoint {
    pub sigma: f64,
    pub t: f64,
}

impl SPoint {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !sigma.is_finite() || !t.is_finite() {
            return Err(SpecialError::Domain(format!(
                "non-finite argument s = {sigma} + {t}i"
            )));
        }
        Ok(SPoint { sigma, t })
    }

    pub fn real(sigma: f64) -> Result<Self> {
        Self::new(sigma, 0.0)
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }

    pub fn conj(self) -> Self {
        SPoint { sigma: self.sigma, t: -self.t }
    }

    /// The reflected point `1 - s`.
    pub fn reflect(self) -> Self {
        SPoint { sigma: 1.0 - self.sigma, t: -self.t }
    }

    pub fn is_one(self) -> bool {
        self.sigma == 1.0 && self.t == 0.0
    }
}

impl From<SPoint> for Complex64 {
    fn from(s: SPoint) -> Self {
        s.to_complex()
    }
}

impl fmt::Display for SPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.sigma, self.t)
    }
}

/// Hurwitz shift parameter, restricted to `(0, 2]` so that the shift
/// `omega -> omega + 1` stays inside the evaluator's domain.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct OmegaParam(f64);

impl OmegaParam {
    pub fn new(omega: f64) -> Result<Self> {
        if omega.is_finite() && omega > 0.0 && omega <= 2.0 {
            Ok(OmegaParam(omega))
        } else {
            Err(SpecialError::Domain(format!("omega = {omega} not in (0, 2]")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    DirectSeries,
    EulerMaclaurin,
    TruncatedFunctionalEq,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::DirectSeries => "DirectSeries",
            Method::EulerMaclaurin => "EulerMaclaurin",
            Method::TruncatedFunctionalEq => "TruncatedFunctionalEq",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub abs_err_bound: f64,
    pub terms_used: u64,
    pub method: Method,
}

/// `(x)^{-s}` for real `x > 0`, the basic Dirichlet term.
#[inline]
pub(crate) fn real_pow_neg(x: f64, s: Complex64) -> Complex64 {
    let l = x.ln();
    let mag = if s.re == 0.5 {
        1.0 / x.sqrt()
    } else if s.re == 0.0 {
        1.0
    } else {
        (-s.re * l).exp()
    };
    let (sn, cs) = (s.im * l).sin_cos();
    Complex64::new(mag * cs, -mag * sn)
}

/// Blocked summation: terms are accumulated in fixed blocks and the block
/// sums are added afterwards. The order is fixed, so results are reproducible.
pub(crate) fn blocked_sum<F>(count: u64, mut term: F) -> Complex64
where
    F: FnMut(u64) -> Complex64,
{
    const BLOCK: u64 = 256;
    let mut total = Complex64::new(0.0, 0.0);
    let mut start = 0;
    while start < count {
        let end = (start + BLOCK).min(count);
        let mut block = Complex64::new(0.0, 0.0);
        for i in start..end {
            block += term(i);
        }
        total += block;
        start = end;
    }
    total
}
