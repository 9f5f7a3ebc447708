use serde::Serialize;

use super::stats::binomial_three_sigma;
use super::{check_samples, sample_map};
use crate::error::{BoolFnError, Result};
use crate::report::Claim;
use crate::spectra::wht_fast;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TailSide {
    Upper,
    Lower,
}

/// One threshold of a tail experiment.
#[derive(Clone, Debug, Serialize)]
pub struct TailRow {
    /// `kappa`, `t`, or (for the lower tail) `m`.
    pub parameter: f64,
    pub m: u32,
    pub threshold: f64,
    pub hits: u64,
    pub n_samples: u64,
    pub empirical_probability: f64,
    /// `None` when no explicit bound is known.
    pub theoretical_bound: Option<f64>,
    pub slack: f64,
    /// The bound is at least 1, or the threshold is not positive.
    pub vacuous: bool,
    /// Lower tail only: `q^(-eta)`, the rate at which the failure
    /// probability is expected to vanish.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_pow_neg_eta: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TailReport {
    pub m: u32,
    pub n_samples: u64,
    pub seed: u64,
    pub side: TailSide,
    /// The statistic the thresholds apply to.
    pub statistic: &'static str,
    pub rows: Vec<TailRow>,
    #[serde(rename = "paper_claims")]
    pub claims: Vec<Claim>,
}

fn check_ascending(name: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(BoolFnError::InvalidParameter(format!(
            "{name} list is empty"
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(BoolFnError::InvalidParameter(format!(
            "{name} values must be finite"
        )));
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BoolFnError::InvalidParameter(format!(
            "{name} values must be strictly ascending"
        )));
    }
    Ok(())
}

/// Empirical `P(S >= sqrt(2q(kappa + ln q)))` against `2 e^(-kappa)`.
///
/// A row passes when the empirical frequency is at most the bound plus
/// `3 sqrt(b(1-b)/N) + 10/N`.
pub fn upper_tail_suite(m: u32, n_samples: u64, seed: u64, kappas: &[f64]) -> Result<TailReport> {
    check_samples(n_samples, 1)?;
    check_ascending("kappa", kappas)?;
    if kappas[0] < 0.0 {
        return Err(BoolFnError::InvalidParameter(
            "kappa must be nonnegative".into(),
        ));
    }
    let amplitudes = sample_map(m, seed, n_samples, |g| {
        wht_fast(&g.sign()).spectral_amplitude()
    })?;
    let q = (1u64 << m) as f64;
    let n = n_samples as f64;
    let mut rows = Vec::new();
    let mut claims = Vec::new();
    for &kappa in kappas {
        let threshold = (2.0 * q * (kappa + q.ln())).sqrt();
        let hits = amplitudes
            .iter()
            .filter(|&&s| s as f64 >= threshold)
            .count() as u64;
        let bound = 2.0 * (-kappa).exp();
        let slack = binomial_three_sigma(bound, n_samples) + 10.0 / n;
        let empirical = hits as f64 / n;
        claims.push(Claim::bound(
            "thm-th1",
            format!("kappa={kappa}"),
            bound,
            empirical,
            slack,
        ));
        rows.push(TailRow {
            parameter: kappa,
            m,
            threshold,
            hits,
            n_samples,
            empirical_probability: empirical,
            theoretical_bound: Some(bound),
            slack,
            vacuous: bound >= 1.0,
            q_pow_neg_eta: None,
        });
    }
    Ok(TailReport {
        m,
        n_samples,
        seed,
        side: TailSide::Upper,
        statistic: "spectral_amplitude",
        rows,
        claims,
    })
}

/// Lower-tail threshold `(alpha/2 - eta/alpha - alpha^3 ln q / q) sqrt(q ln q)`.
pub fn lower_tail_threshold(m: u32, alpha: f64, eta: f64) -> f64 {
    let q = (1u64 << m) as f64;
    let ln_q = q.ln();
    (alpha / 2.0 - eta / alpha - alpha.powi(3) * ln_q / q) * (q * ln_q).sqrt()
}

/// Empirical `P(S > threshold)` for every `m` in `m_values`.
///
/// The guaranteed lower bound `1 - B q^(-eta)` has an unknown constant
/// `B`, so rows are informational: they show the failure frequency next
/// to `q^(-eta)` for comparison across `m`.
pub fn lower_tail_suite(
    m_values: &[u32],
    n_samples: u64,
    seed: u64,
    alpha: f64,
    eta: f64,
) -> Result<TailReport> {
    check_samples(n_samples, 1)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(BoolFnError::InvalidParameter(format!(
            "alpha = {alpha} is not in (0, 1)"
        )));
    }
    if !(eta > 0.0 && eta < 1.0 - alpha * alpha) {
        return Err(BoolFnError::InvalidParameter(format!(
            "eta = {eta} is not in (0, 1 - alpha^2) = (0, {})",
            1.0 - alpha * alpha
        )));
    }
    if m_values.is_empty() || m_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BoolFnError::InvalidParameter(
            "m values must be non-empty and ascending".into(),
        ));
    }
    let n = n_samples as f64;
    let mut rows = Vec::new();
    let mut claims = Vec::new();
    for &m in m_values {
        let threshold = lower_tail_threshold(m, alpha, eta);
        let amplitudes = sample_map(m, seed, n_samples, |g| {
            wht_fast(&g.sign()).spectral_amplitude()
        })?;
        let hits = amplitudes.iter().filter(|&&s| s as f64 > threshold).count() as u64;
        let empirical = hits as f64 / n;
        let q = (1u64 << m) as f64;
        let rate = q.powf(-eta);
        claims.push(Claim::informational(
            "thm-minf",
            format!("m={m},alpha={alpha},eta={eta}"),
            rate,
            1.0 - empirical,
        ));
        rows.push(TailRow {
            parameter: f64::from(m),
            m,
            threshold,
            hits,
            n_samples,
            empirical_probability: empirical,
            theoretical_bound: None,
            slack: 0.0,
            vacuous: threshold <= 0.0,
            q_pow_neg_eta: Some(rate),
        });
    }
    Ok(TailReport {
        m: m_values[0],
        n_samples,
        seed,
        side: TailSide::Lower,
        statistic: "spectral_amplitude",
        rows,
        claims,
    })
}

/// Empirical `P(| ||W||_4^4 / q^2 - 3 + 2/q | >= t)` against `40 / (t^2 q)`.
///
/// The deviation is compared exactly as `|l4 - 3q^2 + 2q| >= t q^2`.
pub fn deviation_suite(m: u32, n_samples: u64, seed: u64, ts: &[f64]) -> Result<TailReport> {
    check_samples(n_samples, 1)?;
    check_ascending("t", ts)?;
    if ts[0] <= 0.0 {
        return Err(BoolFnError::InvalidParameter("t must be positive".into()));
    }
    let q = 1i128 << m;
    let centre = 3 * q * q - 2 * q;
    let deviations = sample_map(m, seed, n_samples, |g| {
        (wht_fast(&g.sign()).l4_fourth() as i128 - centre).unsigned_abs()
    })?;
    let qf = q as f64;
    let n = n_samples as f64;
    let mut rows = Vec::new();
    let mut claims = Vec::new();
    for &t in ts {
        let cut = t * qf * qf;
        let hits = deviations.iter().filter(|&&d| d as f64 >= cut).count() as u64;
        let bound = 40.0 / (t * t * qf);
        let slack = binomial_three_sigma(bound, n_samples);
        let empirical = hits as f64 / n;
        claims.push(Claim::bound(
            "prop-chebyshev",
            format!("t={t}"),
            bound,
            empirical,
            slack,
        ));
        rows.push(TailRow {
            parameter: t,
            m,
            threshold: t,
            hits,
            n_samples,
            empirical_probability: empirical,
            theoretical_bound: Some(bound),
            slack,
            vacuous: bound >= 1.0,
            q_pow_neg_eta: None,
        });
    }
    Ok(TailReport {
        m,
        n_samples,
        seed,
        side: TailSide::Upper,
        statistic: "l4_relative_deviation",
        rows,
        claims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    #[test]
    fn upper_tail_rows() {
        let r = upper_tail_suite(8, 2000, 1, &[0.0, 2.0, 12.0]).unwrap();
        assert_eq!(r.rows.len(), 3);
        assert!(r.rows[0].vacuous);
        assert_eq!(r.rows[0].theoretical_bound, Some(2.0));
        assert!((r.rows[1].theoretical_bound.unwrap() - 0.270_670_566_473_225_4).abs() < 1e-15);
        // 2 e^-12 is far below 1/N and the threshold exceeds anything a
        // random function reaches
        assert_eq!(r.rows[2].hits, 0);
        assert!(r.rows.windows(2).all(|w| w[0].threshold < w[1].threshold));
        assert!(r.claims.iter().all(|c| c.verdict == Verdict::Pass));
        assert!(upper_tail_suite(8, 10, 1, &[2.0, 1.0]).is_err());
        assert!(upper_tail_suite(8, 10, 1, &[-1.0]).is_err());
    }

    #[test]
    fn lower_tail_parameters() {
        assert!(lower_tail_suite(&[10], 10, 1, 0.8, 0.36).is_err());
        assert!(lower_tail_suite(&[10], 10, 1, 1.0, 0.1).is_err());
        assert!(lower_tail_suite(&[10], 10, 1, 0.8, 0.0).is_err());
        let expect = (0.4 - 0.375 - 0.512 * 1024f64.ln() / 1024.0) * (1024.0 * 1024f64.ln()).sqrt();
        assert!((lower_tail_threshold(10, 0.8, 0.3) - expect).abs() < 1e-12);
        let r = lower_tail_suite(&[4, 10], 200, 1, 0.8, 0.3).unwrap();
        assert_eq!(r.side, TailSide::Lower);
        assert!(r.claims.iter().all(|c| c.verdict == Verdict::Info));
        // aggressive eta/alpha pushes the threshold below zero
        let v = lower_tail_suite(&[4], 50, 1, 0.5, 0.7).unwrap();
        assert!(v.rows[0].vacuous);
        assert_eq!(v.rows[0].empirical_probability, 1.0);
    }

    #[test]
    fn deviation_rows() {
        let r = deviation_suite(4, 500, 2, &[0.5, 100.0]).unwrap();
        assert!(r.rows[0].vacuous);
        assert!((r.rows[0].theoretical_bound.unwrap() - 10.0).abs() < 1e-12);
        // ||W||_4^4 <= q^3 keeps the deviation below q
        assert_eq!(r.rows[1].hits, 0);
        let r = deviation_suite(10, 200, 2, &[1.0]).unwrap();
        assert!((r.rows[0].theoretical_bound.unwrap() - 40.0 / 1024.0).abs() < 1e-15);
        assert!(deviation_suite(4, 10, 1, &[0.0]).is_err());
    }
}
