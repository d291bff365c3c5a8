//! Rademacher-Menchoff maximal inequalities and the quasi-LIL simulator.

mod dyadic;
mod moments;
mod trajectory;

pub use dyadic::{dyadic_chain, max_abs_sq, rm_bound, telescoping_sum, DyadicChain, PrefixArray};
pub use moments::{
    lemma4_bound, lemma4_empirical, pair_correlation_exact, pair_correlation_mc, phi, phi_exponent,
};
pub use trajectory::{
    dyadic_grid, qlil_ensemble, qlil_trajectory, ArraySpec, Kernel, Source, TrajectoryReport,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MenchoffError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid array spec: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, MenchoffError>;
