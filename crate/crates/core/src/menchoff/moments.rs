use super::{ArraySpec, MenchoffError, Result};
use crate::rng::CounterRng;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// `(m^2 + 1) sum_{i=1}^{2^m} sigma_{2^m + i}^2`; `sigmas` holds
/// `sigma_{2^m + 1}, ..., sigma_{2^{m+1}}`.
pub fn lemma4_bound(m: u32, sigmas: &[f64]) -> Result<f64> {
    let expected = 1usize << m;
    if sigmas.len() != expected {
        return Err(MenchoffError::LengthMismatch { expected, got: sigmas.len() });
    }
    if let Some(bad) = sigmas.iter().find(|s| !(**s >= 0.0)) {
        return Err(MenchoffError::Domain(format!("sigma must be >= 0, got {bad}")));
    }
    let m = m as f64;
    Ok((m * m + 1.0) * sigmas.iter().map(|s| s * s).sum::<f64>())
}

/// Monte Carlo mean of `max_{2^m < k <= 2^{m+1}} |S_k - S_{2^m}|^2` over
/// `reps` independent rows, paired with [`lemma4_bound`] for the same
/// standard deviations.
pub fn lemma4_empirical(m: u32, spec: &ArraySpec, reps: usize, seed: u64) -> Result<(f64, f64)> {
    if !spec.is_uncorrelated() {
        return Err(MenchoffError::InvalidSpec(format!(
            "{:?} is not a pairwise-uncorrelated mean-zero kernel",
            spec.kernel
        )));
    }
    if m >= 40 {
        return Err(MenchoffError::Domain(format!("block index m = {m} too large")));
    }
    if reps < 100 {
        return Err(MenchoffError::Domain(format!("need at least 100 replications, got {reps}")));
    }
    let lo = 1u64 << m;
    let hi = lo << 1;
    let sigmas: Vec<f64> = (lo + 1..=hi).map(|k| spec.sigma(k)).collect();
    let bound = lemma4_bound(m, &sigmas)?;
    let root = CounterRng::new(seed);
    let row_t = (hi as f64).sqrt();

    let maxima: Vec<f64> = (0..reps as u64)
        .into_par_iter()
        .map(|r| {
            let row = spec.row(root.split(r), row_t);
            let mut partial = Complex64::new(0.0, 0.0);
            let mut best = 0.0f64;
            for (i, k) in (lo + 1..=hi).enumerate() {
                partial += row.draw_scaled(k, sigmas[i]);
                best = best.max(partial.norm_sqr());
            }
            best
        })
        .collect();
    let empirical = maxima.iter().sum::<f64>() / reps as f64;
    Ok((empirical, bound))
}

/// `beta = 0` for `alpha >= 1/2`, else `1/2 - alpha`.
pub fn phi_exponent(alpha: f64) -> f64 {
    if alpha >= 0.5 {
        0.0
    } else {
        0.5 - alpha
    }
}

/// Quasi-LIL normaliser `n^beta (log n)^{3/2 + epsilon}`.
pub fn phi(n: u64, alpha: f64, epsilon: f64) -> Result<f64> {
    if n < 2 {
        return Err(MenchoffError::Domain(format!("phi needs n >= 2, got {n}")));
    }
    if !(epsilon > 0.0) {
        return Err(MenchoffError::Domain(format!("epsilon must be > 0, got {epsilon}")));
    }
    let x = n as f64;
    Ok(x.powf(phi_exponent(alpha)) * x.ln().powf(1.5 + epsilon))
}

/// `E[conj(X_j) X_k]` for `X_k = k^{-1/2 - it} e^{2 pi i k omega}`, omega
/// uniform on (0, 1): the phase integral vanishes unless `j = k`.
pub fn pair_correlation_exact(j: u64, k: u64) -> Result<Complex64> {
    if j == 0 || k == 0 {
        return Err(MenchoffError::Domain("indices start at 1".into()));
    }
    Ok(if j == k { Complex64::new(1.0 / j as f64, 0.0) } else { Complex64::new(0.0, 0.0) })
}

/// Sample mean of `conj(X_j) X_k` over `samples` uniform omegas.
pub fn pair_correlation_mc(j: u64, k: u64, t: f64, samples: usize, seed: u64) -> Result<Complex64> {
    if j == 0 || k == 0 || samples == 0 {
        return Err(MenchoffError::Domain("indices and sample count start at 1".into()));
    }
    let rng = CounterRng::new(seed);
    let x = |idx: u64, omega: f64| {
        let n = idx as f64;
        let phase = 2.0 * PI * (n * omega).fract() - t * n.ln();
        Complex64::from_polar(n.powf(-0.5), phase)
    };
    let total: Complex64 = (0..samples as u64)
        .map(|i| {
            let omega = rng.open_uniform_at(i);
            x(j, omega).conj() * x(k, omega)
        })
        .sum();
    Ok(total / samples as f64)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::menchoff::Kernel;

    fn noise(alpha: f64) -> ArraySpec {
        ArraySpec::new(Kernel::PowerNoise, alpha, 0.1, 0).unwrap()
    }

    #[test]
    fn bound_formula() {
        assert_eq!(lemma4_bound(0, &[1.0]).unwrap(), 1.0);
        assert_eq!(lemma4_bound(1, &[1.0, 1.0]).unwrap(), 4.0);
        assert_eq!(lemma4_bound(3, &[0.0; 8]).unwrap(), 0.0);
        assert_eq!(
            lemma4_bound(2, &[1.0; 3]),
            Err(MenchoffError::LengthMismatch { expected: 4, got: 3 })
        );
        assert!(lemma4_bound(0, &[-1.0]).is_err());
    }

    #[test]
    fn single_increment_meets_bound() {
        let (emp, bound) = lemma4_empirical(0, &noise(0.0), 10_000, 0).unwrap();
        assert_eq!(bound, 1.0);
        assert!((emp - 1.0).abs() < 1e-12 && emp <= bound);
    }

    #[test]
    fn block_seven_half_power() {
        let (emp, bound) = lemma4_empirical(7, &noise(0.5), 10_000, 0).unwrap();
        let harmonic: f64 = (129..=256).map(|k| 1.0 / k as f64).sum();
        assert!((bound - 50.0 * harmonic).abs() < 1e-12);
        assert!((bound - 50.0 * 2f64.ln()).abs() < 0.2);
        assert!(emp <= bound, "{emp} > {bound}");
    }

    #[test]
    fn zero_variance_rows() {
        let (emp, bound) = lemma4_empirical(3, &noise(f64::INFINITY), 100, 5).unwrap();
        assert_eq!((emp, bound), (0.0, 0.0));
    }

    #[test]
    fn rejects_correlated_kernel() {
        let spec = ArraySpec::new(Kernel::DeterministicHarmonic, 0.5, 0.1, 0).unwrap();
        assert!(matches!(lemma4_empirical(2, &spec, 1000, 0), Err(MenchoffError::InvalidSpec(_))));
        assert!(lemma4_empirical(2, &noise(0.5), 99, 0).is_err());
    }

    #[test]
    fn hurwitz_rows_also_satisfy_lemma4() {
        let spec = ArraySpec::new(Kernel::HurwitzPhase, 0.5, 0.1, 0).unwrap();
        for m in 0..6 {
            let (emp, bound) = lemma4_empirical(m, &spec, 2000, 11).unwrap();
            assert!(emp <= bound, "m = {m}: {emp} > {bound}");
        }
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi_exponent(0.7), 0.0);
        assert_eq!(phi_exponent(0.5), 0.0);
        assert_eq!(phi_exponent(0.2), 0.3);
        assert!((phi(1024, 1.0, 0.5).unwrap() - 48.045).abs() < 1e-3);
        assert!((phi(100, 0.0, 0.1).unwrap() - 115.1).abs() < 0.05);
        assert!(phi(1, 0.5, 0.1).is_err());
        assert!(phi(10, 0.5, 0.0).is_err());
    }

    #[test]
    fn phi_monotone() {
        for &alpha in &[-0.5, 0.0, 0.25, 0.5, 1.0] {
            let mut prev = 0.0;
            for n in 2..2000 {
                let v = phi(n, alpha, 0.1).unwrap();
                assert!(v > prev);
                prev = v;
            }
        }
        for n in [2, 17, 1000] {
            let mut prev = f64::INFINITY;
            for i in 0..40 {
                let v = phi(n, -1.0 + 0.05 * i as f64, 0.1).unwrap();
                assert!(v <= prev);
                prev = v;
            }
        }
    }

    #[test]
    fn correlation_exact_values() {
        assert_eq!(pair_correlation_exact(4, 4).unwrap(), Complex64::new(0.25, 0.0));
        assert_eq!(pair_correlation_exact(2, 3).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(pair_correlation_exact(7, 7).unwrap(), Complex64::new(1.0 / 7.0, 0.0));
        for j in 1..=64 {
            for k in j + 1..=64 {
                assert_eq!(pair_correlation_exact(j, k).unwrap().norm(), 0.0);
            }
        }
    }

    #[test]
    fn correlation_monte_carlo_agrees() {
        let samples = 10_000;
        for &t in &[0.0, 13.7] {
            for (j, k) in [(7, 7), (1, 2), (3, 17), (40, 64)] {
                let mc = pair_correlation_mc(j, k, t, samples, 1).unwrap();
                let exact = pair_correlation_exact(j, k).unwrap();
                let tol = 3.0 / (samples as f64).sqrt() / ((j * k) as f64).sqrt();
                assert!((mc - exact).norm() <= tol, "({j},{k}) t={t}: {mc}");
            }
        }
    }
}
