use super::{MenchoffError, Result};
use num_complex::Complex64;

/// `a(0), ..., a(2^{n+1} - 1)` with `a(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefixArray {
    depth: u32,
    values: Vec<Complex64>,
}

impl PrefixArray {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        let len = values.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(MenchoffError::Domain(format!(
                "prefix array length must be 2^(n+1) with n >= 0, got {len}"
            )));
        }
        if values[0] != Complex64::new(0.0, 0.0) {
            return Err(MenchoffError::Domain("a(0) must be 0".into()));
        }
        Ok(PrefixArray { depth: len.trailing_zeros() - 1, values })
    }

    /// Builds `a(p) = x_1 + ... + x_p` from increments `x_1..x_{2^{n+1}-1}`.
    pub fn from_increments(increments: &[Complex64]) -> Result<Self> {
        let mut values = Vec::with_capacity(increments.len() + 1);
        let mut acc = Complex64::new(0.0, 0.0);
        values.push(acc);
        for x in increments {
            acc += x;
            values.push(acc);
        }
        Self::new(values)
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        PrefixArray { depth: self.depth, values: self.values.iter().map(|v| v * c).collect() }
    }
}

/// Binary peeling of `p`: `p_k` keeps only the bits of `p` at positions `>= k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicChain {
    pub p: u64,
    pub depth: u32,
    /// `p_0 = p, p_1, ..., p_{n+1} = 0`
    pub chain: Vec<u64>,
    /// `eps_0, ..., eps_n`
    pub bits: Vec<u8>,
}

impl DyadicChain {
    /// `delta_{k+1} = p_{k+1} / 2^{k+1}`, for k = 0..n.
    pub fn multipliers(&self) -> Vec<u64> {
        (0..=self.depth as usize).map(|k| self.chain[k + 1] >> (k + 1)).collect()
    }
}

pub fn dyadic_chain(p: u64, depth: u32) -> Result<DyadicChain> {
    if depth >= 63 || p == 0 || p >= 1u64 << (depth + 1) {
        return Err(MenchoffError::Domain(format!(
            "need 1 <= p < 2^(n+1), got p = {p}, n = {depth}"
        )));
    }
    let chain = (0..=depth + 1).map(|k| p & !((1u64 << k) - 1)).collect();
    let bits = (0..=depth).map(|k| ((p >> k) & 1) as u8).collect();
    Ok(DyadicChain { p, depth, chain, bits })
}

/// `sum_k (a(p_k) - a(p_{k+1}))`, which telescopes to `a(p)`.
pub fn telescoping_sum(a: &PrefixArray, chain: &DyadicChain) -> Complex64 {
    let v = a.values();
    chain.chain.windows(2).map(|w| v[w[0] as usize] - v[w[1] as usize]).sum()
}

/// `max_{1 <= p < 2^{n+1}} |a(p)|^2`.
pub fn max_abs_sq(a: &PrefixArray) -> f64 {
    a.values()[1..].iter().map(|v| v.norm_sqr()).fold(0.0, f64::max)
}

/// `(n + 1) sum_{k=0}^{n} sum_{j=0}^{2^{n-k}-1} |a(2^k + j 2^{k+1}) - a(j 2^{k+1})|^2`,
/// which dominates `max_abs_sq(a)`.
pub fn rm_bound(a: &PrefixArray) -> f64 {
    let n = a.depth() as usize;
    let v = a.values();
    let mut total = 0.0;
    for k in 0..=n {
        let step = 1usize << (k + 1);
        let half = 1usize << k;
        let inner: f64 = (0..1usize << (n - k))
            .map(|j| (v[half + j * step] - v[j * step]).norm_sqr())
            .sum();
        total += inner;
    }
    (n as f64 + 1.0) * total
}
