//! Suites behind the `identity-check`, `funceq-check`, `rm-check`,
//! `lemma4-check` and `qlil` subcommands.

use super::stats::median;
use super::Result;
use crate::menchoff::{
    dyadic_chain, lemma4_empirical, max_abs_sq, rm_bound, telescoping_sum, ArraySpec, Kernel,
    PrefixArray, TrajectoryReport,
};
use crate::rng::CounterRng;
use crate::special::{functional_eq_check, hurwitz_zeta, riemann_zeta, OmegaParam, SPoint};
use num_complex::Complex64;
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityRow {
    pub sigma: f64,
    pub t: f64,
    pub omega: f64,
    /// `zeta(s, 1/2)` against `(2^s - 1) zeta(s)`.
    pub duplication_rel_err: f64,
    /// `zeta(s, omega)` against `omega^{-s} + zeta(s, omega + 1)`.
    pub shift_rel_err: f64,
}

fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm())
}

/// `points` grid points cycling sigma through {0.5, 1.5, 2.5} and omega
/// through {0.1, ..., 0.9}, with t geometric on [1, 100].
pub fn identity_suite(points: usize, abs_err: f64) -> Result<Vec<IdentityRow>> {
    const SIGMAS: [f64; 3] = [0.5, 1.5, 2.5];
    let last = points.saturating_sub(1).max(1) as f64;
    (0..points)
        .into_par_iter()
        .map(|i| {
            let sigma = SIGMAS[i % 3];
            let omega = 0.1 * (1 + i % 9) as f64;
            let t = 100f64.powf(i as f64 / last);
            let s = SPoint::new(sigma, t)?;
            let z = s.to_complex();

            let half = hurwitz_zeta(s, OmegaParam::new(0.5)?, abs_err)?.value;
            let riemann = riemann_zeta(s, abs_err)?.value;
            let two_s = Complex64::new(2.0, 0.0).powc(z);
            let duplication_rel_err = rel_err(half, (two_s - 1.0) * riemann);

            let direct = hurwitz_zeta(s, OmegaParam::new(omega)?, abs_err)?.value;
            let shifted = hurwitz_zeta(s, OmegaParam::new(omega + 1.0)?, abs_err)?.value;
            let first = Complex64::new(omega, 0.0).powc(-z);
            let shift_rel_err = rel_err(direct, first + shifted);
            Ok(IdentityRow { sigma, t, omega, duplication_rel_err, shift_rel_err })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunceqRow {
    pub sigma: f64,
    pub t: f64,
    pub omega: f64,
    pub k_terms: usize,
    pub residual: f64,
    pub budget_total: f64,
    pub eval_err: f64,
    pub within_budget: bool,
}

/// Residual grid on the critical line: `t` linear on [5, 50] with
/// `t_points` values, `omega` linear on [0.1, 0.9] with `omega_points`
/// values, `K = ceil(t^2)`. A final row checks `s = 2 + 5i`, `omega = 0.3`,
/// `K = 10^5`.
pub fn funceq_suite(t_points: usize, omega_points: usize) -> Result<Vec<FunceqRow>> {
    let lin = |lo: f64, hi: f64, n: usize, i: usize| {
        if n <= 1 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    };
    let mut cases: Vec<(f64, f64, f64, usize)> = Vec::new();
    for i in 0..t_points {
        let t = lin(5.0, 50.0, t_points, i);
        for j in 0..omega_points {
            cases.push((0.5, t, lin(0.1, 0.9, omega_points, j), (t * t).ceil() as usize));
        }
    }
    cases.push((2.0, 5.0, 0.3, 100_000));
    cases
        .into_par_iter()
        .map(|(sigma, t, omega, k)| {
            let c = functional_eq_check(SPoint::new(sigma, t)?, omega, k)?;
            Ok(FunceqRow {
                sigma,
                t,
                omega,
                k_terms: k,
                residual: c.residual,
                budget_total: c.budget.total,
                eval_err: c.lhs.abs_err_bound,
                within_budget: c.within_budget(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RmFuzzRow {
    pub depth: u32,
    pub trials: u64,
    pub violations: u64,
    pub telescoping_failures: u64,
    /// Largest observed `max |a(p)|^2 / rm_bound`.
    pub max_ratio: f64,
}

fn fuzz_array(rng: CounterRng, depth: u32) -> PrefixArray {
    let len = (1u64 << (depth + 1)) - 1;
    let increments: Vec<Complex64> = (0..len)
        .map(|i| {
            let scale = 10f64.powf(6.0 * rng.uniform_at(3 * i + 1) - 3.0);
            Complex64::new(
                scale * (2.0 * rng.uniform_at(3 * i + 2) - 1.0),
                scale * (2.0 * rng.uniform_at(3 * i + 3) - 1.0),
            )
        })
        .collect();
    PrefixArray::from_increments(&increments).expect("length is 2^(n+1) - 1")
}

/// Random prefix arrays of depth `0..=max_depth` (trial `i` has depth
/// `i mod (max_depth + 1)`), each checked for the maximal inequality and for
/// telescoping of every dyadic chain. Increments have log-uniform scales
/// across six decades.
pub fn rm_fuzz(trials: u64, max_depth: u32, seed: u64) -> Result<Vec<RmFuzzRow>> {
    if max_depth > 20 {
        return Err(super::HarnessError::Domain(format!("depth {max_depth} too large")));
    }
    let root = CounterRng::new(seed);
    let outcomes: Vec<(u32, bool, u64, f64)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let depth = (i % (max_depth as u64 + 1)) as u32;
            let a = fuzz_array(root.split(i), depth);
            let lhs = max_abs_sq(&a);
            let rhs = rm_bound(&a);
            let mut tele_fail = 0;
            let scale = a.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
            for p in 1..(1u64 << (depth + 1)) {
                let chain = dyadic_chain(p, depth).expect("p in range");
                let direct = a.values()[p as usize];
                if (telescoping_sum(&a, &chain) - direct).norm() > 1e-12 * scale {
                    tele_fail += 1;
                }
            }
            (depth, lhs <= rhs, tele_fail, lhs / rhs)
        })
        .collect();
    let mut rows: Vec<RmFuzzRow> =
        (0..=max_depth).map(|depth| RmFuzzRow { depth, ..Default::default() }).collect();
    for (depth, ok, tele, ratio) in outcomes {
        let row = &mut rows[depth as usize];
        row.trials += 1;
        row.violations += u64::from(!ok);
        row.telescoping_failures += tele;
        row.max_ratio = row.max_ratio.max(ratio);
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma4Row {
    pub alpha: f64,
    pub m: u32,
    pub empirical: f64,
    pub bound: f64,
}

impl Lemma4Row {
    pub fn holds(&self) -> bool {
        self.empirical <= self.bound
    }
}

/// [`lemma4_empirical`] for PowerNoise rows over every `alpha` and
/// `m = 0..=m_max`.
pub fn lemma4_sweep(alphas: &[f64], m_max: u32, reps: usize, seed: u64) -> Result<Vec<Lemma4Row>> {
    let mut rows = Vec::new();
    for &alpha in alphas {
        let spec = ArraySpec::new(Kernel::PowerNoise, alpha, 0.1, seed)?;
        for m in 0..=m_max {
            let (empirical, bound) = lemma4_empirical(m, &spec, reps, seed)?;
            rows.push(Lemma4Row { alpha, m, empirical, bound });
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QlilSummary {
    pub members: usize,
    pub median_last_block_max: f64,
    pub median_global_max: f64,
    /// Members whose last-block maximum is strictly below their global maximum.
    pub members_decaying: usize,
}

pub fn qlil_summary(reports: &[TrajectoryReport]) -> QlilSummary {
    let last: Vec<f64> = reports.iter().map(|r| r.last_block_max()).collect();
    let global: Vec<f64> = reports.iter().map(|r| r.global_max()).collect();
    QlilSummary {
        members: reports.len(),
        median_last_block_max: median(&last),
        median_global_max: median(&global),
        members_decaying: last.iter().zip(&global).filter(|(l, g)| l < g).count(),
    }
}
