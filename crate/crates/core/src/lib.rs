//! Numerical experiments on the growth of Hurwitz zeta functions on the
//! critical line.
//!
//! * [`special`]: Hurwitz zeta, log-gamma and the exponential sums of the
//!   functional equation, each with an error bound.
//! * [`menchoff`]: dyadic maximal inequalities and the quasi-LIL
//!   trajectory simulator.
//! * [`harness`]: mean-value, tail-measure, growth-scan, exponent and
//!   section experiments.
//! * [`cli`] and [`report`]: the `lindeloef` binary and its CSV/JSON output.

pub mod cli;
pub mod harness;
pub mod menchoff;
pub mod report;
pub mod rng;
pub mod special;
