//! Desk-scale experiments: mean values, tail measures, growth scans,
//! exponent estimates and critical-line sections, plus the check suites the
//! CLI runs.
//!
//! Every grid point is an independent task. Tasks run on the ambient rayon
//! pool and their results are collected in input order; all reductions
//! happen afterwards in a fixed order, so outputs do not depend on the
//! number of worker threads.

mod checks;
mod experiments;
mod quadrature;
pub mod stats;

pub use checks::{
    funceq_suite, identity_suite, lemma4_sweep, qlil_summary, rm_fuzz, FunceqRow, IdentityRow,
    Lemma4Row, QlilSummary, RmFuzzRow,
};
pub use experiments::{
    chebyshev_tail_measure, default_panels, growth_scan, growth_scan_in, mean_value_integral,
    mean_value_integral_with_cap, mu_exponent_estimate, section_profile, section_profile_with_cap,
    MeanValueRow, MuEstimate,
    ScanReport, ScanRow, seeded_omegas, SectionReport, SectionRow, TailMeasureRow, MEAN_VALUE_T_CAP, OMEGA_WINDOW,
    SCAN_T_CAP, SECTION_T_CAP,
};
pub use quadrature::{composite_gauss_legendre, GL8_NODES, GL8_WEIGHTS};

use crate::menchoff::MenchoffError;
use crate::special::SpecialError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Menchoff(#[from] MenchoffError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature at t = {t} moved by {change:.3e} under panel halving (integral {integral:.6e})")]
    QuadratureNotConverged { t: f64, change: f64, integral: f64 },
    #[error("only {found} dyadic blocks in the t-grid, need at least 4")]
    InsufficientBlocks { found: usize },
}

pub type Result<T> = std::result::Result<T, HarnessError>;

/// Geometric grid of heights `t_min .. t_max`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub points: usize,
}

impl TGrid {
    pub fn geometric(t_min: f64, t_max: f64, points: usize) -> Result<Self> {
        if !(t_min > std::f64::consts::E) || !(t_max > t_min) || !t_max.is_finite() {
            return Err(HarnessError::Domain(format!(
                "t-grid needs e < t_min < t_max, got [{t_min}, {t_max}]"
            )));
        }
        if points < 2 {
            return Err(HarnessError::Domain(format!("t-grid needs >= 2 points, got {points}")));
        }
        Ok(TGrid { t_min, t_max, points })
    }

    pub fn values(&self) -> Vec<f64> {
        let ratio = (self.t_max / self.t_min).ln();
        let last = self.points - 1;
        (0..self.points)
            .map(|i| {
                if i == last {
                    self.t_max
                } else {
                    self.t_min * (ratio * i as f64 / last as f64).exp()
                }
            })
            .collect()
    }
}
