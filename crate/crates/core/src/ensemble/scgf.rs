use serde::Serialize;

use super::{check_samples, sample_map};
use crate::error::{BoolFnError, Result};
use crate::report::Claim;
use crate::spectra::wht_fast;

/// Tolerance on discrete second differences when checking convexity.
pub const CONVEXITY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct ScgfRow {
    pub u: f64,
    /// `(1/q) ln( (1/N) sum_k exp(u T_k) )` with `T_k = sum_(a != 0) Y_a`.
    pub phi: Option<f64>,
    /// Share of the total weight carried by the single heaviest sample.
    pub top_weight_fraction: Option<f64>,
    /// Kish effective sample size `(sum w)^2 / sum w^2`.
    pub effective_sample_size: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScgfReport {
    pub m: u32,
    pub n_samples: u64,
    pub seed: u64,
    /// Rows sorted by `u`.
    pub rows: Vec<ScgfRow>,
    #[serde(rename = "paper_claims")]
    pub claims: Vec<Claim>,
}

/// Empirical scaled cumulant generating function of the sum-of-squares
/// indicator, evaluated with log-sum-exp.
pub fn empirical_scgf(m: u32, n_samples: u64, seed: u64, us: &[f64]) -> Result<ScgfReport> {
    check_samples(n_samples, 1)?;
    if us.is_empty() || us.iter().any(|u| !u.is_finite()) {
        return Err(BoolFnError::InvalidParameter(
            "u values must be finite and non-empty".into(),
        ));
    }
    let mut grid = us.to_vec();
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let q = (1u64 << m) as f64;
    let totals = sample_map(m, seed, n_samples, |g| {
        wht_fast(&g.sign()).autocorrelation().sum_of_squares() as f64 / q
    })?;
    let ln_n = (n_samples as f64).ln();

    let rows: Vec<ScgfRow> = grid
        .iter()
        .map(|&u| {
            let exps: Vec<f64> = totals.iter().map(|&t| u * t).collect();
            let max = exps.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let weights: Vec<f64> = exps.iter().map(|&v| (v - max).exp()).collect();
            let sum: f64 = weights.iter().sum();
            let sum_sq: f64 = weights.iter().map(|w| w * w).sum();
            let phi = (max + sum.ln() - ln_n) / q;
            if phi.is_finite() && sum.is_finite() {
                ScgfRow {
                    u,
                    phi: Some(phi),
                    top_weight_fraction: Some(1.0 / sum),
                    effective_sample_size: Some(sum * sum / sum_sq),
                    error: None,
                }
            } else {
                ScgfRow {
                    u,
                    phi: None,
                    top_weight_fraction: None,
                    effective_sample_size: None,
                    error: Some(format!(
                        "exponential moment at u = {u} is not representable"
                    )),
                }
            }
        })
        .collect();

    let mut claims = Vec::new();
    for row in &rows {
        let Some(phi) = row.phi else { continue };
        let param = format!("u={}", row.u);
        if row.u == 0.0 {
            claims.push(Claim::equality("scgf-zero", param, 0.0, phi, 0.0));
        } else if row.u < 0.0 {
            claims.push(Claim::bound("scgf-nonpositive", param, 0.0, phi, 0.0));
        }
    }
    let finite: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.phi.map(|p| (r.u, p)))
        .collect();
    let worst_monotone = finite
        .windows(2)
        .map(|w| w[1].1 - w[0].1)
        .fold(f64::INFINITY, f64::min);
    if finite.len() >= 2 {
        // phi(u_i) - phi(u_{i+1}) <= 0
        claims.push(Claim::bound(
            "scgf-monotone",
            "",
            0.0,
            -worst_monotone,
            CONVEXITY_TOLERANCE,
        ));
    }
    let defects = convexity_defects(&finite);
    if let Some(worst) = defects.iter().copied().reduce(f64::min) {
        claims.push(Claim::bound(
            "scgf-convexity",
            "",
            0.0,
            -worst,
            CONVEXITY_TOLERANCE,
        ));
    }

    Ok(ScgfReport {
        m,
        n_samples,
        seed,
        rows,
        claims,
    })
}

/// Differences of consecutive slopes on an ascending, possibly uneven
/// grid: `(phi2 - phi1)/(u2 - u1) - (phi1 - phi0)/(u1 - u0)`. Nonnegative
/// for a convex function.
pub fn convexity_defects(points: &[(f64, f64)]) -> Vec<f64> {
    points
        .windows(3)
        .map(|w| {
            let s1 = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
            let s2 = (w[2].1 - w[1].1) / (w[2].0 - w[1].0);
            s2 - s1
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    #[test]
    fn zero_is_exact_and_shape_holds() {
        let r = empirical_scgf(6, 500, 9, &[0.1, -0.4, 0.0, -0.2]).unwrap();
        let us: Vec<f64> = r.rows.iter().map(|row| row.u).collect();
        assert_eq!(us, [-0.4, -0.2, 0.0, 0.1]);
        assert_eq!(r.rows[2].phi, Some(0.0));
        assert!(r.rows[0].phi.unwrap() <= 0.0 && r.rows[1].phi.unwrap() <= 0.0);
        assert!(
            r.claims.iter().all(|c| c.verdict == Verdict::Pass),
            "{:?}",
            r.claims
        );
        assert!(r
            .rows
            .iter()
            .all(|row| row.effective_sample_size.unwrap() <= 500.0 + 1e-9));
    }

    #[test]
    fn huge_u_is_an_error_row() {
        let r = empirical_scgf(4, 50, 1, &[1e308]).unwrap();
        assert!(r.rows[0].phi.is_none());
        assert!(r.rows[0].error.is_some());
        assert!(empirical_scgf(4, 50, 1, &[f64::NAN]).is_err());
    }

    #[test]
    fn defects_of_a_parabola() {
        let pts: Vec<(f64, f64)> = [-0.4, -0.2, 0.0, 0.1].iter().map(|&u| (u, u * u)).collect();
        let d = convexity_defects(&pts);
        // slopes of u^2 between consecutive points are u_i + u_{i+1}
        assert!((d[0] - 0.4).abs() < 1e-12 && (d[1] - 0.3).abs() < 1e-12);
    }
}
