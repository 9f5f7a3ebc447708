//! Small numerical helpers: normal CDF, Kolmogorov-Smirnov distance,
//! confidence half-widths, exact sample means.

use serde::Serialize;

use crate::error::{BoolFnError, Result};
use crate::report::Rational;

/// Two-sided 99% standard normal quantile.
pub const Z_99: f64 = 2.575_829_303_548_900_4;

/// CDF of the centered normal law with variance 2: `(1 + erf(t / 2)) / 2`.
pub fn normal_var2_cdf(t: f64) -> f64 {
    0.5 * (1.0 + libm::erf(t / 2.0))
}

/// CDF of `Z^2` for `Z ~ Normal(0, 2)`: `erf(sqrt(x) / 2)` for `x > 0`.
pub fn squared_normal_var2_cdf(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        libm::erf(x.sqrt() / 2.0)
    }
}

/// Two-sided Kolmogorov-Smirnov distance `sup_x |F_n(x) - F(x)|` between
/// the empirical CDF of `samples` and a continuous `cdf`.
///
/// Ties are handled exactly: at a repeated value the empirical CDF jumps
/// over the whole group at once.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    d
}

/// Mean and unbiased variance of `values`, accumulated in slice order.
pub fn mean_variance(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, ss / (n - 1.0))
}

/// Empirical quantile by the nearest-rank rule on a sorted slice.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let rank = ((p * n as f64).ceil() as usize).clamp(1, n);
    sorted[rank - 1]
}

/// A sample mean kept as an exact rational, with a 99% normal
/// confidence half-width from the empirical variance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeanEstimate {
    pub exact: Rational,
    pub value: f64,
    pub half_width: f64,
}

impl MeanEstimate {
    /// Mean of exact integer observations.
    pub fn from_integers(
        values: impl IntoIterator<Item = i128> + Clone,
        what: &'static str,
    ) -> Result<Self> {
        let mut sum: i128 = 0;
        let mut count: i128 = 0;
        for v in values.clone() {
            sum = sum.checked_add(v).ok_or(BoolFnError::Overflow(what))?;
            count += 1;
        }
        if count == 0 {
            return Err(BoolFnError::InvalidParameter(
                "mean of an empty sample".into(),
            ));
        }
        let floats: Vec<f64> = values.into_iter().map(|v| v as f64).collect();
        let (_, var) = mean_variance(&floats);
        let exact = Rational::new(sum, count);
        Ok(Self {
            exact,
            value: exact.to_f64(),
            half_width: Z_99 * (var / count as f64).sqrt(),
        })
    }
}

/// `3 sqrt(p (1 - p) / n)` with `p` clamped into `[0, 1]`.
pub fn binomial_three_sigma(p: f64, n: u64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    3.0 * (p * (1.0 - p) / n as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erf_based_cdfs() {
        assert_eq!(normal_var2_cdf(0.0), 0.5);
        // P(|Z| <= sqrt 2) for Z ~ N(0, 2) is P(|N(0,1)| <= 1)
        let p = normal_var2_cdf(2f64.sqrt()) - normal_var2_cdf(-(2f64.sqrt()));
        assert!((p - 0.682_689_492_137_085_9).abs() < 1e-12);
        assert!((squared_normal_var2_cdf(2.0) - p).abs() < 1e-12);
        assert_eq!(squared_normal_var2_cdf(-1.0), 0.0);
        // 99% two-sided quantile
        let z = Z_99 * 2f64.sqrt();
        assert!((normal_var2_cdf(z) - 0.995).abs() < 1e-12);
    }

    #[test]
    fn ks_against_uniform_by_hand() {
        let uniform = |x: f64| x.clamp(0.0, 1.0);
        // ecdf steps at 0.1, 0.2, 0.9: gaps 1/3-0.1, 2/3-0.2, 0.9-2/3, 1-0.9
        let d = ks_statistic(&[0.9, 0.1, 0.2], uniform);
        assert!((d - (2.0 / 3.0 - 0.2)).abs() < 1e-15);
        // all mass at one point: the jump is 1, distance max(1 - .5, .5)
        assert!((ks_statistic(&[0.5, 0.5], uniform) - 0.5).abs() < 1e-15);
        assert!(ks_statistic(&[0.25, 0.75], uniform) <= 0.25 + 1e-15);
    }

    #[test]
    fn mean_estimate_is_exact() {
        let est = MeanEstimate::from_integers([1i128, 2, 2, 4], "test").unwrap();
        assert_eq!(est.exact, Rational::new(9, 4));
        assert_eq!(est.value, 2.25);
        let var = (1.5625 + 0.0625 + 0.0625 + 3.0625) / 3.0;
        assert!((est.half_width - Z_99 * (var / 4.0f64).sqrt()).abs() < 1e-12);
        assert!(MeanEstimate::from_integers(std::iter::empty::<i128>(), "t").is_err());
        assert!(matches!(
            MeanEstimate::from_integers([i128::MAX, 1], "big"),
            Err(BoolFnError::Overflow("big"))
        ));
    }

    #[test]
    fn quantiles() {
        let s = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile_sorted(&s, 0.5), 2.0);
        assert_eq!(quantile_sorted(&s, 0.0), 1.0);
        assert_eq!(quantile_sorted(&s, 1.0), 4.0);
    }
}
