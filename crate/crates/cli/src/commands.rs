use boolfn_core::ensemble::{
    asymptotic_ratio_table, deviation_suite, distribution_suite, empirical_scgf, lower_tail_suite,
    moment_suite, upper_tail_suite,
};
use boolfn_core::spectra::{nonlinearity_bruteforce, BRUTEFORCE_NL_MAX_VARS};
use boolfn_core::{
    exhaustive_report_with, wht_fast, BoolFnError, BooleanFunction, Claim, Rational,
};
use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

/// A finished run: the report body plus the identification fields that go
/// into the envelope.
pub struct Report {
    pub mode: &'static str,
    pub suite: Option<&'static str>,
    pub m: u32,
    pub seed: Option<u64>,
    pub n_samples: Option<u64>,
    pub body: Value,
    pub claims: Vec<Claim>,
}

#[derive(Serialize)]
struct AnalyzeReport {
    hex: String,
    m: u32,
    spectral_amplitude: u64,
    nonlinearity: u64,
    l4_fourth: u128,
    sum_of_squares: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    walsh_spectrum: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    autocorrelation: Option<Vec<i64>>,
    paper_claims: Vec<Claim>,
}

fn body<T: Serialize>(report: &T) -> Value {
    serde_json::to_value(report).expect("reports serialize")
}

pub fn run(config: RunConfig) -> Result<Report, BoolFnError> {
    let sample = |suite, m, seed, n, body, claims| Report {
        mode: "sample",
        suite: Some(suite),
        m,
        seed: Some(seed),
        n_samples: Some(n),
        body,
        claims,
    };
    Ok(match config {
        RunConfig::Analyze { function, full } => analyze(&function, full)?,
        RunConfig::Moments { m, n, seed } => {
            let r = moment_suite(m, n, seed)?;
            sample("moments", m, seed, n, body(&r), r.claims)
        }
        RunConfig::UpperTail { m, n, seed, kappa } => {
            let r = upper_tail_suite(m, n, seed, &kappa)?;
            sample("upper-tail", m, seed, n, body(&r), r.claims)
        }
        RunConfig::LowerTail {
            ms,
            n,
            seed,
            alpha,
            eta,
        } => {
            let r = lower_tail_suite(&ms, n, seed, alpha, eta)?;
            sample("lower-tail", ms[0], seed, n, body(&r), r.claims)
        }
        RunConfig::Deviation { m, n, seed, t } => {
            let r = deviation_suite(m, n, seed, &t)?;
            sample("deviation", m, seed, n, body(&r), r.claims)
        }
        RunConfig::Dist { m, n, seed, a } => {
            let r = distribution_suite(m, n, seed, a)?;
            sample("dist", m, seed, n, body(&r), r.claims)
        }
        RunConfig::Scgf { m, n, seed, u } => {
            let r = empirical_scgf(m, n, seed, &u)?;
            sample("scgf", m, seed, n, body(&r), r.claims)
        }
        RunConfig::Ratios { ms, n, seed } => {
            let r = asymptotic_ratio_table(&ms, n, seed)?;
            sample("ratios", ms[0], seed, n, body(&r), r.claims)
        }
        RunConfig::Enumerate { m, override_cost } => {
            let r = exhaustive_report_with(m, override_cost)?;
            Report {
                mode: "exhaustive",
                suite: None,
                m,
                seed: None,
                n_samples: Some(r.n_functions),
                body: body(&r),
                claims: r.claims,
            }
        }
    })
}

fn analyze(g: &BooleanFunction, full: bool) -> Result<Report, BoolFnError> {
    let m = g.num_vars();
    let q = 1i128 << m;
    let spectrum = wht_fast(&g.sign());
    let autocorrelation = spectrum.autocorrelation();
    let s = spectrum.spectral_amplitude();
    let l4 = spectrum.l4_fourth();
    let nl = (g.len() as u64 - s) / 2;
    let int = Rational::from_integer;

    let mut claims = Vec::new();
    if m <= BRUTEFORCE_NL_MAX_VARS {
        claims.push(Claim::exact_equality(
            "prop-nl-spectral",
            "min distance to affine",
            int(i128::from(nl)),
            int(i128::from(nonlinearity_bruteforce(g)?)),
        ));
    }
    claims.push(Claim::exact_lower_bound(
        "lem-sqrt-q",
        "S^2 >= q",
        int(q),
        int(i128::from(s) * i128::from(s)),
    ));
    claims.push(Claim::exact_lower_bound(
        "prop-l4-range",
        "lower",
        int(q * q),
        int(l4 as i128),
    ));
    claims.push(Claim::exact_bound(
        "prop-l4-range",
        "upper",
        int(q * q * q),
        int(l4 as i128),
    ));
    claims.push(Claim::exact_equality(
        "lem-som",
        "l4 = q^2 + sum of squares",
        int(l4 as i128),
        int(q * q + autocorrelation.sum_of_squares() as i128),
    ));

    let report = AnalyzeReport {
        hex: g.to_hex(),
        m,
        spectral_amplitude: s,
        nonlinearity: nl,
        l4_fourth: l4,
        sum_of_squares: autocorrelation.sum_of_squares(),
        walsh_spectrum: full.then(|| spectrum.coeffs().to_vec()),
        autocorrelation: full.then(|| autocorrelation.delta().to_vec()),
        paper_claims: claims,
    };
    Ok(Report {
        mode: "analyze",
        suite: None,
        m,
        seed: None,
        n_samples: None,
        body: body(&report),
        claims: report.paper_claims,
    })
}
