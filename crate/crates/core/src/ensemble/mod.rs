//! Monte Carlo suites over uniformly random Boolean functions.
//!
//! Sample `k` of a run with master seed `s` is always
//! `BooleanFunction::random_uniform(m, s, k)`, and per-sample results are
//! collected in index order before any reduction. Reports are therefore
//! bit-identical for any number of worker threads.

mod distribution;
mod moments;
mod ratios;
mod scgf;
pub mod stats;
mod tails;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{check_vars, BoolFnError, Result};
use crate::function::BooleanFunction;

pub use distribution::{distribution_suite, DistributionReport, Quantile};
pub use moments::{moment_suite, MomentReport, MOMENT_MAX_VARS, MOMENT_MIN_SAMPLES};
pub use ratios::{asymptotic_ratio_table, RatioReport, RatioRow};
pub use scgf::{convexity_defects, empirical_scgf, ScgfReport, ScgfRow};
pub use tails::{
    deviation_suite, lower_tail_suite, upper_tail_suite, TailReport, TailRow, TailSide,
};

/// Stream reserved for choices that are not samples (tested shifts and
/// pairs). Samples use streams `0..n`.
pub const AUX_STREAM: u64 = u64::MAX;

/// Maps `f` over the `n` sampled functions, in parallel, returning results
/// in sample order.
pub fn sample_map<T, F>(m: u32, seed: u64, n: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&BooleanFunction) -> T + Sync + Send,
{
    check_vars(m)?;
    Ok((0..n)
        .into_par_iter()
        .map(|k| f(&BooleanFunction::random_uniform(m, seed, k).expect("m checked")))
        .collect())
}

pub(crate) fn aux_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(AUX_STREAM);
    rng
}

/// Up to `count` distinct nonzero shifts in `F_2^m`.
pub(crate) fn choose_shifts(rng: &mut impl Rng, q: usize, count: usize) -> Vec<usize> {
    let count = count.min(q - 1);
    rand::seq::index::sample(rng, q - 1, count)
        .into_iter()
        .map(|i| i + 1)
        .collect()
}

/// Up to `count` distinct unordered pairs `(a, b)`, `a < b`, of nonzero shifts.
pub(crate) fn choose_pairs(rng: &mut impl Rng, q: usize, count: usize) -> Vec<(usize, usize)> {
    let available = (q - 1) * (q - 2) / 2;
    if available <= count {
        return (1..q)
            .flat_map(|a| (a + 1..q).map(move |b| (a, b)))
            .collect();
    }
    let mut pairs = Vec::with_capacity(count);
    while pairs.len() < count {
        let a = rng.random_range(1..q);
        let b = rng.random_range(1..q);
        let pair = (a.min(b), a.max(b));
        if a != b && !pairs.contains(&pair) {
            pairs.push(pair);
        }
    }
    pairs
}

pub(crate) fn check_samples(n: u64, min: u64) -> Result<()> {
    if n < min {
        Err(BoolFnError::InvalidParameter(format!(
            "need at least {min} samples, got {n}"
        )))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_order_independent() {
        let par = sample_map(6, 11, 200, |g| g.to_hex()).unwrap();
        let seq: Vec<String> = (0..200)
            .map(|k| BooleanFunction::random_uniform(6, 11, k).unwrap().to_hex())
            .collect();
        assert_eq!(par, seq);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(3)
            .build()
            .unwrap();
        let three = pool.install(|| sample_map(6, 11, 200, |g| g.to_hex()).unwrap());
        assert_eq!(three, seq);
    }

    #[test]
    fn shift_and_pair_selection() {
        let mut rng = aux_rng(5);
        let shifts = choose_shifts(&mut rng, 256, 5);
        assert_eq!(shifts.len(), 5);
        assert!(shifts.iter().all(|&a| (1..256).contains(&a)));
        let pairs = choose_pairs(&mut rng, 256, 10);
        assert_eq!(pairs.len(), 10);
        assert!(pairs.iter().all(|&(a, b)| 0 < a && a < b && b < 256));
        assert_eq!(choose_pairs(&mut rng, 4, 10), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(choose_shifts(&mut rng, 2, 5), vec![1]);
        assert_eq!(
            choose_shifts(&mut aux_rng(5), 256, 5),
            choose_shifts(&mut aux_rng(5), 256, 5)
        );
    }
}
