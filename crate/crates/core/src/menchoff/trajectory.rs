//! Triangular arrays and diagonal-sum trajectories `S_n^{(n)} / phi(n)`.

use super::{phi, MenchoffError, Result};
use crate::rng::CounterRng;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kernel {
    /// `X_k^{(n)} = k^{-1/2 - it} e^{2 pi i k omega}` with `t = sqrt(n)`.
    HurwitzPhase,
    /// `X_k = k^{-alpha} xi_k`, `xi_k` iid uniform on `{1, i, -1, -i}`.
    PowerNoise,
    /// `X_k = k^{-1/2}`. Not mean-zero; used as a negative control.
    DeterministicHarmonic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArraySpec {
    pub kernel: Kernel,
    pub alpha: f64,
    pub epsilon: f64,
    pub seed: u64,
}

impl ArraySpec {
    pub fn new(kernel: Kernel, alpha: f64, epsilon: f64, seed: u64) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(MenchoffError::InvalidSpec(format!("epsilon must be > 0, got {epsilon}")));
        }
        let alpha = match kernel {
            Kernel::HurwitzPhase | Kernel::DeterministicHarmonic => 0.5,
            Kernel::PowerNoise if alpha.is_nan() || alpha == f64::NEG_INFINITY => {
                return Err(MenchoffError::InvalidSpec(format!("alpha = {alpha}")))
            }
            Kernel::PowerNoise => alpha,
        };
        Ok(ArraySpec { kernel, alpha, epsilon, seed })
    }

    /// Standard-deviation envelope `sigma_k = k^{-alpha}` (constant 1).
    pub fn sigma(&self, k: u64) -> f64 {
        (k as f64).powf(-self.alpha)
    }

    pub fn is_uncorrelated(&self) -> bool {
        !matches!(self.kernel, Kernel::DeterministicHarmonic)
    }

    /// One realisation of a row. Hurwitz rows draw omega from counter 0 of
    /// `stream`; noise rows use counter `k` for `xi_k`.
    pub(crate) fn row(&self, stream: CounterRng, t: f64) -> Row {
        let omega = match self.kernel {
            Kernel::HurwitzPhase => stream.open_uniform_at(0),
            _ => 0.0,
        };
        Row { kernel: self.kernel, alpha: self.alpha, stream, omega, t }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Row {
    kernel: Kernel,
    alpha: f64,
    stream: CounterRng,
    omega: f64,
    t: f64,
}

impl Row {
    fn with_omega(mut self, omega: f64) -> Self {
        self.omega = omega;
        self
    }

    fn with_t(mut self, t: f64) -> Self {
        self.t = t;
        self
    }

    /// `X_k` with its modulus replaced by `scale` (noise and harmonic kernels
    /// have `|X_k| = sigma_k`, so passing `sigma_k` is exact).
    pub(crate) fn draw_scaled(&self, k: u64, scale: f64) -> Complex64 {
        match self.kernel {
            Kernel::PowerNoise => match self.stream.u64_at(k) & 3 {
                0 => Complex64::new(scale, 0.0),
                1 => Complex64::new(0.0, scale),
                2 => Complex64::new(-scale, 0.0),
                _ => Complex64::new(0.0, -scale),
            },
            Kernel::DeterministicHarmonic => Complex64::new(scale, 0.0),
            Kernel::HurwitzPhase => {
                let n = k as f64;
                let phase = 2.0 * PI * (n * self.omega).fract() - self.t * n.ln();
                Complex64::from_polar(scale, phase)
            }
        }
    }

    fn draw(&self, k: u64) -> Complex64 {
        let scale = match self.kernel {
            Kernel::PowerNoise => (k as f64).powf(-self.alpha),
            _ => 1.0 / (k as f64).sqrt(),
        };
        self.draw_scaled(k, scale)
    }
}

/// Where a trajectory's randomness comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Source {
    /// A fixed Hurwitz parameter (HurwitzPhase only).
    Omega(f64),
    /// Ensemble member index; the stream is `(spec.seed, member)`.
    Member(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryReport {
    pub omega: Option<f64>,
    pub n_grid: Vec<u64>,
    pub is_dyadic: Vec<bool>,
    /// `|S_n^{(n)}| / phi(n)` on `n_grid`.
    pub ratios: Vec<f64>,
    /// Block index `k` of the dyadic diagnostics (row `n_k = 2^{k+1}`).
    pub diag_k: Vec<u32>,
    /// `|S_{2^k}^{(n_k)}| / phi(2^k)`
    pub diag_s: Vec<f64>,
    /// `Y_k^{(n_k)} / phi(2^k)`, `Y_k = max_{1<=l<=2^k} |X_{2^k+1} + ... + X_{2^k+l}|`
    pub diag_y: Vec<f64>,
}

impl TrajectoryReport {
    pub fn global_max(&self) -> f64 {
        self.ratios.iter().copied().fold(0.0, f64::max)
    }

    /// Largest ratio over grid points in the last dyadic block `(2^{K-1}, 2^K]`.
    pub fn last_block_max(&self) -> f64 {
        let top = *self.n_grid.last().unwrap_or(&0);
        self.n_grid
            .iter()
            .zip(&self.ratios)
            .filter(|(n, _)| **n > top / 2)
            .map(|(_, r)| *r)
            .fold(0.0, f64::max)
    }

    pub fn ratio_at(&self, n: u64) -> Option<f64> {
        self.n_grid.iter().position(|&m| m == n).map(|i| self.ratios[i])
    }
}

/// Dyadic points `2^4, ..., 2^K` (`K = floor(log2 n_max)`) and the midpoints
/// `3 * 2^{k-1}` between consecutive ones, ascending. The flag marks dyadic
/// points.
pub fn dyadic_grid(n_max: u64) -> Vec<(u64, bool)> {
    if n_max < 16 {
        return Vec::new();
    }
    let top = 63 - n_max.leading_zeros();
    let mut grid = Vec::new();
    for k in 4..=top {
        grid.push((1u64 << k, true));
        if k < top {
            grid.push((3u64 << (k - 1), false));
        }
    }
    grid
}

struct BlockDiag {
    k: u32,
    s: f64,
    y: f64,
}

/// Runs `k = 1..=n` through `draw`, returning `|S_n|`, the partial-sum
/// modulus at every requested checkpoint, and the block diagnostics for
/// every dyadic block `(2^j, 2^{j+1}]` with `j` in `blocks`.
fn scan(
    n: u64,
    draw: impl Fn(u64) -> Complex64,
    checkpoints: &[u64],
    blocks: std::ops::Range<u32>,
) -> (Vec<f64>, Vec<BlockDiag>) {
    let mut s = Complex64::new(0.0, 0.0);
    let mut at = Vec::with_capacity(checkpoints.len());
    let mut next_cp = checkpoints.iter().peekable();
    let mut diags = Vec::new();
    let mut open: Option<(u32, Complex64, f64)> = None;
    for k in 1..=n {
        s += draw(k);
        if let Some((_, base, y)) = open.as_mut() {
            *y = y.max((s - *base).norm());
        }
        if k.is_power_of_two() {
            let j = k.trailing_zeros();
            if let Some((bj, base, y)) = open.take() {
                diags.push(BlockDiag { k: bj, s: base.norm(), y });
            }
            if blocks.contains(&j) {
                open = Some((j, s, 0.0));
            }
        }
        if next_cp.peek() == Some(&&k) {
            at.push(s.norm());
            next_cp.next();
        }
    }
    (at, diags)
}

/// Diagonal-sum trajectory on [`dyadic_grid`]`(n_max)`.
///
/// Row-independent kernels are summed once in `O(n_max)`. Hurwitz rows
/// change with `n` (`t = sqrt(n)`), so each grid row is summed separately;
/// the dyadic diagnostics for block `k` come from row `n_k = 2^{k+1}`.
pub fn qlil_trajectory(spec: &ArraySpec, n_max: u64, source: Source) -> Result<TrajectoryReport> {
    if n_max < 16 {
        return Err(MenchoffError::InvalidSpec(format!("n_max must be >= 16, got {n_max}")));
    }
    let root = CounterRng::new(spec.seed);
    let (row, omega) = match (spec.kernel, source) {
        (Kernel::HurwitzPhase, Source::Omega(w)) => {
            if !(w > 0.0 && w < 1.0) {
                return Err(MenchoffError::InvalidSpec(format!("omega = {w} not in (0, 1)")));
            }
            (spec.row(root, 0.0).with_omega(w), Some(w))
        }
        (Kernel::HurwitzPhase, Source::Member(i)) => {
            let row = spec.row(root.split(i), 0.0);
            (row, Some(row.omega))
        }
        (_, Source::Omega(_)) => {
            return Err(MenchoffError::InvalidSpec(format!(
                "{:?} rows are not parametrised by omega",
                spec.kernel
            )))
        }
        (_, Source::Member(i)) => (spec.row(root.split(i), 0.0), None),
    };

    let grid = dyadic_grid(n_max);
    let top_exp = 63 - n_max.leading_zeros();
    let n_grid: Vec<u64> = grid.iter().map(|g| g.0).collect();
    let is_dyadic: Vec<bool> = grid.iter().map(|g| g.1).collect();

    let (abs_sums, diags) = match spec.kernel {
        Kernel::HurwitzPhase => {
            let mut sums = Vec::with_capacity(n_grid.len());
            let mut diags = Vec::new();
            for (&n, &dyadic) in n_grid.iter().zip(&is_dyadic) {
                let row = row.with_t((n as f64).sqrt());
                let j = n.trailing_zeros();
                let blocks = if dyadic && j >= 5 { j - 1..j } else { 0..0 };
                let (at, mut d) = scan(n, |k| row.draw(k), &[n], blocks);
                sums.push(at[0]);
                diags.append(&mut d);
            }
            (sums, diags)
        }
        _ => scan(n_max.min(1 << top_exp), |k| row.draw(k), &n_grid, 4..top_exp),
    };

    let phi_at = |n: u64| phi(n, spec.alpha, spec.epsilon);
    let ratios = n_grid
        .iter()
        .zip(&abs_sums)
        .map(|(&n, &s)| Ok(s / phi_at(n)?))
        .collect::<Result<Vec<f64>>>()?;
    let mut diag_k = Vec::with_capacity(diags.len());
    let mut diag_s = Vec::with_capacity(diags.len());
    let mut diag_y = Vec::with_capacity(diags.len());
    for d in diags {
        let p = phi_at(1u64 << d.k)?;
        diag_k.push(d.k);
        diag_s.push(d.s / p);
        diag_y.push(d.y / p);
    }
    Ok(TrajectoryReport { omega, n_grid, is_dyadic, ratios, diag_k, diag_s, diag_y })
}

/// Members `0..members` of the ensemble, computed in parallel; the output
/// order and contents do not depend on the thread count.
pub fn qlil_ensemble(spec: &ArraySpec, n_max: u64, members: u64) -> Result<Vec<TrajectoryReport>> {
    (0..members)
        .into_par_iter()
        .map(|i| qlil_trajectory(spec, n_max, Source::Member(i)))
        .collect()
}
