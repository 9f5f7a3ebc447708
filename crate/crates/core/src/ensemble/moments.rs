use serde::Serialize;

use super::stats::MeanEstimate;
use super::{aux_rng, check_samples, choose_pairs, choose_shifts, sample_map};
use crate::error::{BoolFnError, Result};
use crate::report::{Claim, Rational};
use crate::spectra::wht_fast;

pub const MOMENT_MIN_SAMPLES: u64 = 1000;
pub const MOMENT_MAX_VARS: u32 = 20;
const TESTED_SHIFTS: usize = 5;
const TESTED_PAIRS: usize = 10;

#[derive(Clone, Debug, Serialize)]
pub struct ShiftMoment {
    pub a: usize,
    pub mean: MeanEstimate,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairMoment {
    pub a: usize,
    pub b: usize,
    pub mean: MeanEstimate,
}

/// Sample moments of the autocorrelation and of `||W||_4^4` next to their
/// exact expectations or upper bounds.
#[derive(Clone, Debug, Serialize)]
pub struct MomentReport {
    pub m: u32,
    pub n_samples: u64,
    pub seed: u64,
    pub empirical_mean_l4: MeanEstimate,
    /// `3q^2 - 2q`.
    pub theory_l4: u128,
    pub empirical_mean_xa: Vec<ShiftMoment>,
    /// `2q`.
    pub theory_xa: u128,
    pub empirical_xa2: Vec<ShiftMoment>,
    /// `12q^2`.
    pub bound_xa2: u128,
    pub empirical_xaxb: Vec<PairMoment>,
    /// `4q^2 + 32q`.
    pub bound_xaxb: u128,
    pub empirical_l4_eighth: MeanEstimate,
    /// `64q - 100q^2 + 28q^3 + 9q^4`.
    pub bound_l4_eighth: u128,
    #[serde(rename = "paper_claims")]
    pub claims: Vec<Claim>,
}

struct SampleMoments {
    l4: u128,
    xa: Vec<u64>,
    xaxb: Vec<u128>,
}

/// Estimates `E(X_a)`, `E(X_a^2)`, `E(X_a X_b)`, `E ||W||_4^4` and
/// `E ||W||_4^8` over `n_samples` random functions.
///
/// Five nonzero shifts and ten shift pairs are drawn from the auxiliary
/// stream of `seed` (fewer when `m` is too small to have that many).
pub fn moment_suite(m: u32, n_samples: u64, seed: u64) -> Result<MomentReport> {
    check_samples(n_samples, MOMENT_MIN_SAMPLES)?;
    if m > MOMENT_MAX_VARS {
        return Err(BoolFnError::CostGuard {
            op: "moment_suite",
            m,
            max: MOMENT_MAX_VARS,
        });
    }
    let q = 1usize << m;
    let mut rng = aux_rng(seed);
    let shifts = choose_shifts(&mut rng, q, TESTED_SHIFTS);
    let pairs = choose_pairs(&mut rng, q, TESTED_PAIRS);

    let samples = sample_map(m, seed, n_samples, |g| {
        let spectrum = wht_fast(&g.sign());
        let ac = spectrum.autocorrelation();
        SampleMoments {
            l4: spectrum.l4_fourth(),
            xa: shifts.iter().map(|&a| ac.x(a)).collect(),
            xaxb: pairs
                .iter()
                .map(|&(a, b)| u128::from(ac.x(a)) * u128::from(ac.x(b)))
                .collect(),
        }
    })?;

    let l4 = MeanEstimate::from_integers(samples.iter().map(|s| s.l4 as i128), "l4 sum")?;
    let mut l4_sq = Vec::with_capacity(samples.len());
    for s in &samples {
        let sq =
            s.l4.checked_mul(s.l4)
                .ok_or(BoolFnError::Overflow("l4 square"))?;
        l4_sq.push(i128::try_from(sq).map_err(|_| BoolFnError::Overflow("l4 square"))?);
    }
    let l4_eighth = MeanEstimate::from_integers(l4_sq.iter().copied(), "l4 eighth sum")?;

    let mut xa = Vec::new();
    let mut xa2 = Vec::new();
    for (j, &a) in shifts.iter().enumerate() {
        let mean =
            MeanEstimate::from_integers(samples.iter().map(|s| i128::from(s.xa[j])), "X_a sum")?;
        let sq = MeanEstimate::from_integers(
            samples
                .iter()
                .map(|s| i128::from(s.xa[j]) * i128::from(s.xa[j])),
            "X_a^2 sum",
        )?;
        xa.push(ShiftMoment { a, mean });
        xa2.push(ShiftMoment { a, mean: sq });
    }
    let mut xaxb = Vec::new();
    for (j, &(a, b)) in pairs.iter().enumerate() {
        let mean =
            MeanEstimate::from_integers(samples.iter().map(|s| s.xaxb[j] as i128), "X_a X_b sum")?;
        xaxb.push(PairMoment { a, b, mean });
    }

    let qq = q as u128;
    let theory_l4 = 3 * qq * qq - 2 * qq;
    let theory_xa = 2 * qq;
    let bound_xa2 = 12 * qq * qq;
    let bound_xaxb = 4 * qq * qq + 32 * qq;
    let bound_l4_eighth = 64 * qq + 28 * qq.pow(3) + 9 * qq.pow(4) - 100 * qq * qq;

    let mut claims = vec![Claim::equality(
        "prop-esp-l4",
        "",
        Rational::from_integer(theory_l4 as i128),
        l4.exact,
        l4.half_width,
    )];
    for s in &xa {
        claims.push(Claim::equality(
            "prop-esp1",
            format!("a={}", s.a),
            Rational::from_integer(theory_xa as i128),
            s.mean.exact,
            s.mean.half_width,
        ));
    }
    for s in &xa2 {
        claims.push(Claim::bound(
            "prop-esp-xa2",
            format!("a={}", s.a),
            Rational::from_integer(bound_xa2 as i128),
            s.mean.exact,
            s.mean.half_width,
        ));
    }
    for p in &xaxb {
        claims.push(Claim::bound(
            "prop-esp-xaxb",
            format!("a={},b={}", p.a, p.b),
            Rational::from_integer(bound_xaxb as i128),
            p.mean.exact,
            p.mean.half_width,
        ));
    }
    claims.push(Claim::bound(
        "prop-esp-l4-eighth",
        "",
        Rational::from_integer(bound_l4_eighth as i128),
        l4_eighth.exact,
        l4_eighth.half_width,
    ));

    Ok(MomentReport {
        m,
        n_samples,
        seed,
        empirical_mean_l4: l4,
        theory_l4,
        empirical_mean_xa: xa,
        theory_xa,
        empirical_xa2: xa2,
        bound_xa2,
        empirical_xaxb: xaxb,
        bound_xaxb,
        empirical_l4_eighth: l4_eighth,
        bound_l4_eighth,
        claims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guards() {
        assert!(matches!(
            moment_suite(4, 999, 0),
            Err(BoolFnError::InvalidParameter(_))
        ));
        assert!(matches!(
            moment_suite(21, 1000, 0),
            Err(BoolFnError::CostGuard { .. })
        ));
    }

    #[test]
    fn small_run_is_reproducible_and_reconciles() {
        let a = moment_suite(6, 2000, 3).unwrap();
        let b = moment_suite(6, 2000, 3).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert_eq!(a.theory_l4, 3 * 64 * 64 - 128);
        assert_eq!(a.empirical_mean_xa.len(), 5);
        assert_eq!(a.empirical_xaxb.len(), 10);
        // every sample contributes once to every mean
        assert!(a
            .empirical_mean_xa
            .iter()
            .all(|s| 2000 % s.mean.exact.denom() == 0));
        assert_eq!(a.claims.len(), 1 + 5 + 5 + 10 + 1);
    }

    #[test]
    fn theory_values_for_m8() {
        let r = moment_suite(8, 1000, 1).unwrap();
        assert_eq!(r.theory_l4, 196_096);
        assert_eq!(r.theory_xa, 512);
        assert_eq!(r.bound_xa2, 786_432);
        assert_eq!(r.bound_xaxb, 4 * 65_536 + 32 * 256);
        assert_eq!(
            r.bound_l4_eighth,
            64 * 256 + 28 * 16_777_216 + 9 * 4_294_967_296 - 100 * 65_536
        );
    }

    #[test]
    fn tiny_dimension_has_no_pairs() {
        let r = moment_suite(1, 1000, 1).unwrap();
        assert_eq!(r.empirical_mean_xa.len(), 1);
        assert!(r.empirical_xaxb.is_empty());
        // for m = 1, X_1 = 4 always
        assert_eq!(r.empirical_mean_xa[0].mean.exact, Rational::from_integer(4));
    }
}
