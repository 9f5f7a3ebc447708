use std::collections::BTreeMap;

use serde::Serialize;

use super::stats::{
    ks_statistic, mean_variance, normal_var2_cdf, quantile_sorted, squared_normal_var2_cdf,
};
use super::{check_samples, sample_map};
use crate::error::{BoolFnError, Result};
use crate::report::{Bin, Claim};
use crate::spectra::autocorrelation_at;

/// Below this the limit laws are too far off for the KS tolerance to mean
/// anything; claims are then informational.
const KS_MIN_VARS: u32 = 12;
/// KS tolerance for both limit laws.
pub const KS_TOLERANCE: f64 = 0.05;
const QUANTILE_LEVELS: [f64; 7] = [0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99];

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Quantile {
    pub p: f64,
    pub normalized_delta: f64,
    pub ya: f64,
}

/// Distance between the sampled law of `delta(a) / sqrt q` (resp.
/// `Y_a = delta(a)^2 / q`) and the centered normal of variance 2 (resp. the
/// law of its square).
#[derive(Clone, Debug, Serialize)]
pub struct DistributionReport {
    pub m: u32,
    pub n_samples: u64,
    pub seed: u64,
    pub a: usize,
    pub ks_statistic_gaussian: f64,
    pub ks_statistic_ya: f64,
    pub mean_normalized_delta: f64,
    pub mean_ya: f64,
    pub variance_ya: f64,
    pub quantiles: Vec<Quantile>,
    /// Exact counts of `delta(a)`, one unit bin per attained value.
    pub histogram_delta: Vec<Bin>,
    #[serde(rename = "paper_claims")]
    pub claims: Vec<Claim>,
}

pub fn distribution_suite(
    m: u32,
    n_samples: u64,
    seed: u64,
    a: usize,
) -> Result<DistributionReport> {
    check_samples(n_samples, 2)?;
    if a == 0 {
        return Err(BoolFnError::InvalidParameter(
            "shift a must be nonzero: delta(0) = q for every function".into(),
        ));
    }
    if m > crate::error::MAX_VARS || a >= 1usize << m {
        return Err(BoolFnError::InvalidParameter(format!(
            "shift {a} is not a point of F_2^{m}"
        )));
    }
    let deltas = sample_map(m, seed, n_samples, |g| autocorrelation_at(g, a))?;
    let q = (1u64 << m) as f64;
    let sqrt_q = q.sqrt();
    let z: Vec<f64> = deltas.iter().map(|&d| d as f64 / sqrt_q).collect();
    let y: Vec<f64> = deltas.iter().map(|&d| (d * d) as f64 / q).collect();

    let ks_gauss = ks_statistic(&z, normal_var2_cdf);
    let ks_y = ks_statistic(&y, squared_normal_var2_cdf);
    let (mean_z, _) = mean_variance(&z);
    let (mean_y, var_y) = mean_variance(&y);
    let n = n_samples as f64;

    let mut zs = z.clone();
    zs.sort_by(f64::total_cmp);
    let mut ys = y.clone();
    ys.sort_by(f64::total_cmp);
    let quantiles = QUANTILE_LEVELS
        .iter()
        .map(|&p| Quantile {
            p,
            normalized_delta: quantile_sorted(&zs, p),
            ya: quantile_sorted(&ys, p),
        })
        .collect();

    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for &d in &deltas {
        *counts.entry(d).or_insert(0) += 1;
    }
    let histogram_delta = counts
        .into_iter()
        .map(|(d, count)| Bin {
            lower_edge: d as f64,
            upper_edge: d as f64 + 1.0,
            count,
        })
        .collect();

    let param = format!("a={a}");
    let mut claims = Vec::new();
    if m >= KS_MIN_VARS {
        claims.push(Claim::bound(
            "prop-gauss-limit",
            param.clone(),
            KS_TOLERANCE,
            ks_gauss,
            0.0,
        ));
        claims.push(Claim::bound(
            "prop-ya-limit",
            param.clone(),
            KS_TOLERANCE,
            ks_y,
            0.0,
        ));
    } else {
        claims.push(Claim::informational(
            "prop-gauss-limit",
            param.clone(),
            KS_TOLERANCE,
            ks_gauss,
        ));
        claims.push(Claim::informational(
            "prop-ya-limit",
            param.clone(),
            KS_TOLERANCE,
            ks_y,
        ));
    }
    // E delta(a) = 0 and E Y_a = 2 hold exactly at every m
    claims.push(Claim::equality(
        "prop-gauss-mean",
        param.clone(),
        0.0,
        mean_z,
        3.0 * (2.0 / n).sqrt(),
    ));
    claims.push(Claim::equality(
        "prop-ya-mean",
        param,
        2.0,
        mean_y,
        3.0 * (var_y / n).sqrt(),
    ));

    Ok(DistributionReport {
        m,
        n_samples,
        seed,
        a,
        ks_statistic_gaussian: ks_gauss,
        ks_statistic_ya: ks_y,
        mean_normalized_delta: mean_z,
        mean_ya: mean_y,
        variance_ya: var_y,
        quantiles,
        histogram_delta,
        claims,
    })
}
