use super::stats::pairwise_sum;
use rayon::prelude::*;

pub const GL8_NODES: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_78,
    0.183_434_642_495_649_78,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];

pub const GL8_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_69,
    0.222_381_034_453_374_34,
    0.313_706_645_877_887_05,
    0.362_683_783_378_361_77,
    0.362_683_783_378_361_77,
    0.313_706_645_877_887_05,
    0.222_381_034_453_374_34,
    0.101_228_536_290_376_69,
];

/// Composite 8-node Gauss-Legendre rule on `[a, b]` with `panels` equal
/// panels. `f` returns the integrand and a side quantity that is
/// integrated with the same weights (used for error propagation).
/// Panels are evaluated in parallel and summed pairwise in panel order.
pub fn composite_gauss_legendre<F, E>(f: F, a: f64, b: f64, panels: usize) -> Result<(f64, f64), E>
where
    F: Fn(f64) -> Result<(f64, f64), E> + Sync,
    E: Send,
{
    let h = (b - a) / panels as f64;
    let per_panel: Vec<(f64, f64)> = (0..panels)
        .into_par_iter()
        .map(|p| {
            let mid = a + (p as f64 + 0.5) * h;
            let mut acc = (0.0, 0.0);
            for (x, w) in GL8_NODES.iter().zip(GL8_WEIGHTS.iter()) {
                let (v, e) = f(mid + 0.5 * h * x)?;
                acc.0 += w * v;
                acc.1 += w * e;
            }
            Ok((0.5 * h * acc.0, 0.5 * h * acc.1))
        })
        .collect::<Result<_, E>>()?;
    let values: Vec<f64> = per_panel.iter().map(|p| p.0).collect();
    let side: Vec<f64> = per_panel.iter().map(|p| p.1).collect();
    Ok((pairwise_sum(&values), pairwise_sum(&side)))
}
