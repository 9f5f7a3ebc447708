use serde::Serialize;

use super::{check_samples, sample_map};
use crate::error::{BoolFnError, Result};
use crate::report::{Claim, Rational};
use crate::spectra::wht_fast;

pub const RATIO_MIN_VARS: u32 = 6;
pub const RATIO_MAX_VARS: u32 = 20;

/// Per-`m` summary of the normalized amplitude `S / (2^(m/2) sqrt m)` and
/// the normalized L4 norm `||W||_4 / 2^(m/2)`.
#[derive(Clone, Debug, Serialize)]
pub struct RatioRow {
    pub m: u32,
    pub n_samples: u64,
    pub amplitude_ratio_mean: f64,
    pub amplitude_ratio_min: f64,
    pub amplitude_ratio_max: f64,
    pub l4_ratio_mean: f64,
    pub l4_ratio_min: f64,
    pub l4_ratio_max: f64,
    /// Smallest `S` seen, against `sqrt q`.
    pub min_amplitude: u64,
    pub sqrt_q: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioReport {
    pub m_values: Vec<u32>,
    pub seed: u64,
    pub rows: Vec<RatioRow>,
    /// `sqrt(2 ln 2)`, the almost-sure upper limit of the amplitude ratio.
    pub amplitude_limsup_constant: f64,
    /// `ln(2) / 2`, the stated lower limit of the amplitude ratio.
    pub amplitude_liminf_stated: f64,
    /// `sqrt(ln 2) / 2`, the lower limit the argument actually reaches.
    pub amplitude_liminf_derived: f64,
    /// `3^(1/4)`.
    pub l4_limit: f64,
    #[serde(rename = "paper_claims")]
    pub claims: Vec<Claim>,
}

/// Tabulates the normalized amplitude and L4 ratios across `m_values`.
///
/// The limit statements are almost-sure and cannot be decided at a single
/// `m`, so they are reported as informational rows. `S >= sqrt q` holds for
/// every function and is checked exactly on every sample.
pub fn asymptotic_ratio_table(m_values: &[u32], n_samples: u64, seed: u64) -> Result<RatioReport> {
    check_samples(n_samples, 1)?;
    if m_values.is_empty() || m_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BoolFnError::InvalidParameter(
            "m values must be non-empty and ascending".into(),
        ));
    }
    if let Some(&m) = m_values
        .iter()
        .find(|&&m| !(RATIO_MIN_VARS..=RATIO_MAX_VARS).contains(&m))
    {
        return Err(BoolFnError::InvalidParameter(format!(
            "m = {m} outside [{RATIO_MIN_VARS}, {RATIO_MAX_VARS}]"
        )));
    }

    let ln2 = std::f64::consts::LN_2;
    let limsup = (2.0 * ln2).sqrt();
    let liminf_stated = ln2 / 2.0;
    let liminf_derived = ln2.sqrt() / 2.0;
    let l4_limit = 3f64.powf(0.25);

    let mut rows = Vec::new();
    let mut claims = Vec::new();
    for &m in m_values {
        let pairs = sample_map(m, seed, n_samples, |g| {
            let sp = wht_fast(&g.sign());
            (sp.spectral_amplitude(), sp.l4_fourth())
        })?;
        let q = 1u64 << m;
        let scale = (q as f64).sqrt();
        let amp: Vec<f64> = pairs
            .iter()
            .map(|&(s, _)| s as f64 / (scale * f64::from(m).sqrt()))
            .collect();
        let l4: Vec<f64> = pairs
            .iter()
            .map(|&(_, l)| (l as f64).powf(0.25) / scale)
            .collect();
        let min_amplitude = pairs.iter().map(|&(s, _)| s).min().expect("n >= 1");
        let row = RatioRow {
            m,
            n_samples,
            amplitude_ratio_mean: mean(&amp),
            amplitude_ratio_min: amp.iter().copied().fold(f64::INFINITY, f64::min),
            amplitude_ratio_max: amp.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            l4_ratio_mean: mean(&l4),
            l4_ratio_min: l4.iter().copied().fold(f64::INFINITY, f64::min),
            l4_ratio_max: l4.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            min_amplitude,
            sqrt_q: scale,
        };

        let param = format!("m={m}");
        // S^2 >= q, compared exactly on the smallest amplitude
        claims.push(Claim::exact_lower_bound(
            "lem-sqrt-q",
            param.clone(),
            Rational::from_integer(i128::from(q)),
            Rational::from_integer(i128::from(min_amplitude) * i128::from(min_amplitude)),
        ));
        claims.push(Claim::informational(
            "cor-l4-limit",
            param.clone(),
            l4_limit,
            row.l4_ratio_mean,
        ));
        claims.push(Claim::informational(
            "cor-th1-limsup",
            param.clone(),
            limsup + 0.1,
            row.amplitude_ratio_max,
        ));
        claims.push(Claim::informational(
            "cor-minf-liminf",
            param,
            liminf_stated,
            row.amplitude_ratio_min,
        ));
        rows.push(row);
    }

    Ok(RatioReport {
        m_values: m_values.to_vec(),
        seed,
        rows,
        amplitude_limsup_constant: limsup,
        amplitude_liminf_stated: liminf_stated,
        amplitude_liminf_derived: liminf_derived,
        l4_limit,
        claims,
    })
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    #[test]
    fn guards() {
        assert!(asymptotic_ratio_table(&[5], 10, 0).is_err());
        assert!(asymptotic_ratio_table(&[21], 10, 0).is_err());
        assert!(asymptotic_ratio_table(&[8, 7], 10, 0).is_err());
    }

    #[test]
    fn small_table() {
        let r = asymptotic_ratio_table(&[6, 8], 200, 1).unwrap();
        assert_eq!(r.rows.len(), 2);
        for row in &r.rows {
            assert!(row.amplitude_ratio_min <= row.amplitude_ratio_mean);
            assert!(row.amplitude_ratio_mean <= row.amplitude_ratio_max);
            assert!(row.l4_ratio_min >= 1.0 - 1e-12, "||W||_4 >= sqrt q");
            assert!(row.min_amplitude as f64 >= row.sqrt_q);
        }
        assert!(r
            .claims
            .iter()
            .filter(|c| c.claim_id == "lem-sqrt-q")
            .all(|c| c.verdict == Verdict::Pass));
        assert!((r.l4_limit - 1.316_074_012_952_492_3).abs() < 1e-15);
    }
}
