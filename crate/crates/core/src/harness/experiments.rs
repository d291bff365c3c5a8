use super::quadrature::composite_gauss_legendre;
use super::stats::least_squares_slope;
use super::{HarnessError, Result, TGrid};
use crate::rng::CounterRng;
use crate::special::{hurwitz_zeta, zeta1, OmegaParam, SPoint, SpecialError};
use rayon::prelude::*;

/// Default ceiling on `t` for the mean-value integral.
pub const MEAN_VALUE_T_CAP: f64 = 2e4;
/// Default ceiling on `t_max` for growth scans.
pub const SCAN_T_CAP: f64 = 1e5;
/// Default ceiling on `t` for section profiles.
pub const SECTION_T_CAP: f64 = 1e7;
/// Default omega window for growth scans, keeping away from the endpoints
/// where `1 / |1 - e^{2 pi i omega}|` blows up.
pub const OMEGA_WINDOW: (f64, f64) = (0.05, 0.95);

fn critical(t: f64) -> SPoint {
    SPoint { sigma: 0.5, t }
}

fn omega(w: f64) -> Result<OmegaParam> {
    Ok(OmegaParam::new(w)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanValueRow {
    pub t: f64,
    pub integral: f64,
    pub log_t: f64,
    pub ratio: f64,
    pub quad_err_bound: f64,
}

/// Smallest admissible panel count at height `t`: `max(256, ceil(t))`,
/// rounded up to even so the halved rule has whole panels.
pub fn default_panels(t: f64) -> usize {
    let p = (t.ceil() as usize).max(256);
    p + p % 2
}

/// `int_0^1 |zeta_1(1/2 + it, omega)|^2 d omega` by composite Gauss-Legendre.
pub fn mean_value_integral(t: f64, panels: usize, abs_err: f64) -> Result<MeanValueRow> {
    mean_value_integral_with_cap(t, panels, abs_err, MEAN_VALUE_T_CAP)
}

pub fn mean_value_integral_with_cap(
    t: f64,
    panels: usize,
    abs_err: f64,
    t_cap: f64,
) -> Result<MeanValueRow> {
    if !(t >= 10.0 && t <= t_cap) {
        return Err(HarnessError::Domain(format!("t = {t} outside [10, {t_cap}]")));
    }
    let min_panels = default_panels(t);
    if panels < min_panels || !panels.is_multiple_of(2) {
        return Err(HarnessError::Domain(format!(
            "need an even panel count >= {min_panels} at t = {t}, got {panels}"
        )));
    }
    let s = critical(t);
    // integrand |zeta(s, omega + 1)|^2 and its propagated evaluator error
    let integrand = |w: f64| -> Result<(f64, f64)> {
        let r = zeta1(s, omega(w)?, abs_err)?;
        let z = r.value.norm();
        let d = r.abs_err_bound;
        Ok((z * z, 2.0 * z * d + d * d))
    };
    let (fine, eval_err) = composite_gauss_legendre(integrand, 0.0, 1.0, panels)?;
    let (coarse, _) = composite_gauss_legendre(integrand, 0.0, 1.0, panels / 2)?;
    let change = (fine - coarse).abs();
    if change > 0.01 * fine {
        return Err(HarnessError::QuadratureNotConverged { t, change, integral: fine });
    }
    let quad_err_bound = change + eval_err + 64.0 * f64::EPSILON * fine;
    let log_t = t.ln();
    Ok(MeanValueRow { t, integral: fine, log_t, ratio: fine / log_t, quad_err_bound })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailMeasureRow {
    pub c: f64,
    pub threshold: f64,
    pub measure_hat: f64,
    pub std_err: f64,
}

/// Fraction of uniform `omega` in (0, 1) with `|zeta(1/2 + it, omega)| >= C sqrt(log t)`,
/// for each `C`, all on one shared sample.
pub fn chebyshev_tail_measure(
    t: f64,
    c_list: &[f64],
    samples: usize,
    seed: u64,
    abs_err: f64,
) -> Result<Vec<TailMeasureRow>> {
    if !(t >= 10.0) {
        return Err(HarnessError::Domain(format!("tail measure needs t >= 10, got {t}")));
    }
    if samples < 1000 {
        return Err(HarnessError::Domain(format!("need >= 1000 samples, got {samples}")));
    }
    if let Some(c) = c_list.iter().find(|c| !(**c > 0.0)) {
        return Err(HarnessError::Domain(format!("C must be > 0, got {c}")));
    }
    let rng = CounterRng::new(seed);
    let s = critical(t);
    let moduli: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|i| Ok(hurwitz_zeta(s, omega(rng.open_uniform_at(i))?, abs_err)?.value.norm()))
        .collect::<Result<_>>()?;
    let scale = t.ln().sqrt();
    let n = samples as f64;
    Ok(c_list
        .iter()
        .map(|&c| {
            let threshold = c * scale;
            let hits = moduli.iter().filter(|&&m| m >= threshold).count();
            let p = hits as f64 / n;
            TailMeasureRow { c, threshold, measure_hat: p, std_err: (p * (1.0 - p) / n).sqrt() }
        })
        .collect())
}

/// `count` omegas uniform on `window`, member `i` drawn from stream `i` of
/// `seed`.
pub fn seeded_omegas(count: usize, seed: u64, window: (f64, f64)) -> Vec<f64> {
    let rng = CounterRng::new(seed);
    (0..count as u64)
        .map(|i| window.0 + (window.1 - window.0) * rng.split(i).open_uniform_at(0))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub t: f64,
    /// `|zeta(1/2 + it, omega)|`, NaN when the evaluation failed.
    pub abs: f64,
    /// `abs / (log t)^{3/2 + epsilon}`
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub omega: f64,
    pub epsilon: f64,
    pub rows: Vec<ScanRow>,
    pub failures: Vec<(f64, String)>,
    pub global_max_ratio: f64,
    /// Maximum over the last decade `t >= t_max / 10`.
    pub tail_max_ratio: f64,
}

/// Growth of `|zeta(1/2 + it, omega)|` against `(log t)^{3/2 + epsilon}`,
/// for `omega` inside [`OMEGA_WINDOW`].
pub fn growth_scan(omega_value: f64, grid: &TGrid, epsilon: f64, abs_err: f64) -> Result<ScanReport> {
    growth_scan_in(omega_value, grid, epsilon, abs_err, OMEGA_WINDOW, SCAN_T_CAP)
}

pub fn growth_scan_in(
    omega_value: f64,
    grid: &TGrid,
    epsilon: f64,
    abs_err: f64,
    window: (f64, f64),
    t_cap: f64,
) -> Result<ScanReport> {
    if !(omega_value >= window.0 && omega_value <= window.1) {
        return Err(HarnessError::Domain(format!(
            "omega = {omega_value} outside [{}, {}]",
            window.0, window.1
        )));
    }
    if !(epsilon > 0.0) {
        return Err(HarnessError::Domain(format!("epsilon must be > 0, got {epsilon}")));
    }
    if grid.t_max > t_cap {
        return Err(HarnessError::Domain(format!("t_max = {} above cap {t_cap}", grid.t_max)));
    }
    let w = omega(omega_value)?;
    let ts = grid.values();
    let evals: Vec<std::result::Result<f64, SpecialError>> = ts
        .par_iter()
        .map(|&t| hurwitz_zeta(critical(t), w, abs_err).map(|r| r.value.norm()))
        .collect();
    let mut rows = Vec::with_capacity(ts.len());
    let mut failures = Vec::new();
    for (&t, e) in ts.iter().zip(evals) {
        let abs = match e {
            Ok(v) => v,
            Err(err) => {
                failures.push((t, err.to_string()));
                f64::NAN
            }
        };
        rows.push(ScanRow { t, abs, ratio: abs / t.ln().powf(1.5 + epsilon) });
    }
    let max_over = |pred: &dyn Fn(&ScanRow) -> bool| {
        rows.iter().filter(|r| pred(r) && r.ratio.is_finite()).map(|r| r.ratio).fold(0.0, f64::max)
    };
    let global_max_ratio = max_over(&|_| true);
    let tail_start = grid.t_max / 10.0;
    let tail_max_ratio = max_over(&|r| r.t >= tail_start);
    Ok(ScanReport { omega: omega_value, epsilon, rows, failures, global_max_ratio, tail_max_ratio })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuEstimate {
    pub sigma: f64,
    pub omega: f64,
    pub mu_hat: f64,
    pub blocks: usize,
}

/// Upper-envelope growth exponent: the grid is cut into dyadic blocks
/// `[2^b t_min, 2^{b+1} t_min)`, and `mu_hat` is the least-squares slope of
/// each block's maximum of `log |zeta(sigma + it, omega)|` against `log t`
/// at the maximising `t`.
pub fn mu_exponent_estimate(sigma: f64, omega_value: f64, grid: &TGrid, abs_err: f64) -> Result<MuEstimate> {
    if grid.points < 100 {
        return Err(HarnessError::Domain(format!("need >= 100 grid points, got {}", grid.points)));
    }
    if !(-1.0..=4.0).contains(&sigma) {
        return Err(HarnessError::Domain(format!("sigma = {sigma} outside [-1, 4]")));
    }
    let w = omega(omega_value)?;
    let ts = grid.values();
    let logs: Vec<f64> = ts
        .par_iter()
        .map(|&t| Ok(hurwitz_zeta(SPoint::new(sigma, t)?, w, abs_err)?.value.norm().ln()))
        .collect::<Result<_>>()?;
    let mut block_max: Vec<(f64, f64)> = Vec::new();
    let mut current: Option<(u32, f64, f64)> = None;
    for (&t, &l) in ts.iter().zip(&logs) {
        let b = (t / grid.t_min).log2().floor().max(0.0) as u32;
        match current {
            Some((cb, bt, bl)) if cb == b => {
                if l > bl {
                    current = Some((cb, t, l));
                } else {
                    current = Some((cb, bt, bl));
                }
            }
            Some((_, bt, bl)) => {
                block_max.push((bt, bl));
                current = Some((b, t, l));
            }
            None => current = Some((b, t, l)),
        }
    }
    if let Some((_, bt, bl)) = current {
        block_max.push((bt, bl));
    }
    if block_max.len() < 4 {
        return Err(HarnessError::InsufficientBlocks { found: block_max.len() });
    }
    let xs: Vec<f64> = block_max.iter().map(|b| b.0.ln()).collect();
    let ys: Vec<f64> = block_max.iter().map(|b| b.1).collect();
    Ok(MuEstimate {
        sigma,
        omega: omega_value,
        mu_hat: least_squares_slope(&xs, &ys),
        blocks: block_max.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionRow {
    pub x: f64,
    /// `|zeta(1/2 + it, x) - x^{-(1/2 + it)}| / (log t)^2`, NaN on failure.
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectionReport {
    pub t: f64,
    pub rows: Vec<SectionRow>,
    pub failures: Vec<(f64, String)>,
}

/// Cross-section in the Hurwitz parameter at fixed height, through the
/// cancellation-free `zeta_1` route. Rows come back sorted by `x`.
pub fn section_profile(t: f64, x_grid: &[f64], abs_err: f64) -> Result<SectionReport> {
    section_profile_with_cap(t, x_grid, abs_err, SECTION_T_CAP)
}

pub fn section_profile_with_cap(t: f64, x_grid: &[f64], abs_err: f64, t_cap: f64) -> Result<SectionReport> {
    if !(t > std::f64::consts::E && t <= t_cap) {
        return Err(HarnessError::Domain(format!("t = {t} outside (e, {t_cap}]")));
    }
    if let Some(x) = x_grid.iter().find(|x| !(0.02..=1.0).contains(*x)) {
        return Err(HarnessError::Domain(format!("x = {x} outside [0.02, 1]")));
    }
    let mut xs = x_grid.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));
    let norm = t.ln().powi(2);
    let s = critical(t);
    let evals: Vec<std::result::Result<f64, SpecialError>> = xs
        .par_iter()
        .map(|&x| zeta1(s, OmegaParam::new(x)?, abs_err).map(|r| r.value.norm() / norm))
        .collect();
    let mut rows = Vec::with_capacity(xs.len());
    let mut failures = Vec::new();
    for (&x, e) in xs.iter().zip(evals) {
        let y = e.unwrap_or_else(|err| {
            failures.push((x, err.to_string()));
            f64::NAN
        });
        rows.push(SectionRow { x, y });
    }
    Ok(SectionReport { t, rows, failures })
}
