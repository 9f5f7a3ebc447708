//! Exhaustive enumeration of every Boolean function in `m` variables.
//!
//! Tables are visited in integer order (`from_table_index(m, 0..2^q)`),
//! every statistic is an exact integer sum, and expectations are exact
//! rationals over `2^q`. There is no symmetry reduction: the point is to
//! have a ground truth that shares nothing with the clever paths.
//!
//! An [`EnumerationState`] is a checkpoint. It serializes with serde, and
//! resuming it yields the same report as an uninterrupted run.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_vars, BoolFnError, Result};
use crate::function::BooleanFunction;
use crate::report::{Claim, IntHistogram, Rational};
use crate::spectra::wht_fast;

/// Largest `m` enumerated without an explicit override.
pub const EXHAUSTIVE_DEFAULT_MAX_VARS: u32 = 4;
/// Largest `m` enumerated at all (`2^32` functions).
pub const EXHAUSTIVE_OVERRIDE_MAX_VARS: u32 = 5;

const BLOCK: u64 = 1 << 12;

/// Resumable partial sums over the tables `0..next_index`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationState {
    pub m: u32,
    pub next_index: u64,
    hist_s: BTreeMap<u64, u64>,
    hist_nl: BTreeMap<u64, u64>,
    hist_l4: BTreeMap<u64, u64>,
    sum_l4: i128,
    sum_l4_sq: i128,
    /// Indexed by shift `a` (entry 0 unused).
    sum_xa: Vec<i128>,
    sum_xa2: Vec<i128>,
    /// One entry per pair in [`shift_pairs`] order.
    sum_xaxb: Vec<i128>,
}

/// All unordered pairs `(a, b)`, `0 < a < b < q`.
pub fn shift_pairs(q: usize) -> Vec<(usize, usize)> {
    (1..q)
        .flat_map(|a| (a + 1..q).map(move |b| (a, b)))
        .collect()
}

impl EnumerationState {
    /// A fresh state. Refuses `m > 4` unless `allow_large`, and `m > 5`
    /// always.
    pub fn new(m: u32, allow_large: bool) -> Result<Self> {
        check_vars(m)?;
        let max = if allow_large {
            EXHAUSTIVE_OVERRIDE_MAX_VARS
        } else {
            EXHAUSTIVE_DEFAULT_MAX_VARS
        };
        if m > max {
            return Err(BoolFnError::CostGuard {
                op: "exhaustive enumeration",
                m,
                max,
            });
        }
        let q = 1usize << m;
        Ok(Self {
            m,
            next_index: 0,
            hist_s: BTreeMap::new(),
            hist_nl: BTreeMap::new(),
            hist_l4: BTreeMap::new(),
            sum_l4: 0,
            sum_l4_sq: 0,
            sum_xa: vec![0; q],
            sum_xa2: vec![0; q],
            sum_xaxb: vec![0; shift_pairs(q).len()],
        })
    }

    /// Number of functions, `2^q`.
    pub fn total(&self) -> u64 {
        1u64 << (1u32 << self.m)
    }

    pub fn is_complete(&self) -> bool {
        self.next_index == self.total()
    }

    /// Processes up to `count` further tables.
    pub fn advance(&mut self, count: u64) {
        let end = self.next_index.saturating_add(count).min(self.total());
        let start = self.next_index;
        let blocks: Vec<(u64, u64)> = (start..end)
            .step_by(BLOCK as usize)
            .map(|lo| (lo, (lo + BLOCK).min(end)))
            .collect();
        let m = self.m;
        let partials: Vec<Self> = blocks
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut part = Self::new(m, true).expect("m validated");
                part.next_index = lo;
                part.run(hi);
                part
            })
            .collect();
        for part in &partials {
            self.absorb(part);
        }
        self.next_index = end;
    }

    fn run(&mut self, end: u64) {
        let q = 1usize << self.m;
        let pairs = shift_pairs(q);
        for index in self.next_index..end {
            let g = BooleanFunction::from_table_index(self.m, index).expect("index in range");
            let spectrum = wht_fast(&g.sign());
            let s = spectrum.spectral_amplitude();
            let l4 = spectrum.l4_fourth();
            let ac = spectrum.autocorrelation();
            *self.hist_s.entry(s).or_insert(0) += 1;
            *self.hist_nl.entry((q as u64 - s) / 2).or_insert(0) += 1;
            *self.hist_l4.entry(l4 as u64).or_insert(0) += 1;
            let l4 = l4 as i128;
            self.sum_l4 += l4;
            self.sum_l4_sq += l4 * l4;
            let x: Vec<i128> = (0..q).map(|a| i128::from(ac.x(a))).collect();
            for ((sum, sum_sq), &xa) in self
                .sum_xa
                .iter_mut()
                .zip(&mut self.sum_xa2)
                .zip(&x)
                .skip(1)
            {
                *sum += xa;
                *sum_sq += xa * xa;
            }
            for (slot, &(a, b)) in self.sum_xaxb.iter_mut().zip(&pairs) {
                *slot += x[a] * x[b];
            }
        }
        self.next_index = end;
    }

    fn absorb(&mut self, other: &Self) {
        for (dst, src) in [
            (&mut self.hist_s, &other.hist_s),
            (&mut self.hist_nl, &other.hist_nl),
            (&mut self.hist_l4, &other.hist_l4),
        ] {
            for (&k, &c) in src {
                *dst.entry(k).or_insert(0) += c;
            }
        }
        self.sum_l4 += other.sum_l4;
        self.sum_l4_sq += other.sum_l4_sq;
        for (dst, src) in [
            (&mut self.sum_xa, &other.sum_xa),
            (&mut self.sum_xa2, &other.sum_xa2),
            (&mut self.sum_xaxb, &other.sum_xaxb),
        ] {
            for (d, s) in dst.iter_mut().zip(src) {
                *d += s;
            }
        }
    }

    /// Builds the report. Fails unless every table has been visited.
    pub fn finish(self) -> Result<ExhaustiveReport> {
        if !self.is_complete() {
            return Err(BoolFnError::InvalidParameter(format!(
                "enumeration stopped at {} of {} functions",
                self.next_index,
                self.total()
            )));
        }
        let m = self.m;
        let q = 1usize << m;
        let n = i128::from(self.total());
        let mean = |sum: i128| Rational::new(sum, n);
        let hist_s = IntHistogram(self.hist_s);
        let hist_nl = IntHistogram(self.hist_nl);
        let mu_m = hist_s.min_key().expect("at least one function");
        let covering_radius = (q as u64 - mu_m) / 2;
        let exact_e_xa = (1..q)
            .map(|a| ShiftExpectation {
                a,
                value: mean(self.sum_xa[a]),
            })
            .collect();
        let exact_e_xa2 = (1..q)
            .map(|a| ShiftExpectation {
                a,
                value: mean(self.sum_xa2[a]),
            })
            .collect();
        let exact_e_xaxb = shift_pairs(q)
            .into_iter()
            .zip(&self.sum_xaxb)
            .map(|((a, b), &sum)| PairExpectation {
                a,
                b,
                value: mean(sum),
            })
            .collect();
        let mut report = ExhaustiveReport {
            mode: "exhaustive",
            m,
            n_functions: n as u64,
            histogram_s: hist_s,
            histogram_nl: hist_nl,
            histogram_l4: IntHistogram(self.hist_l4),
            mu_m,
            covering_radius,
            exact_e_l4: mean(self.sum_l4),
            exact_e_l4sq: mean(self.sum_l4_sq),
            exact_e_xa,
            exact_e_xa2,
            exact_e_xaxb,
            claims: Vec::new(),
        };
        report.claims = crosscheck_claims(&report);
        Ok(report)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShiftExpectation {
    pub a: usize,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairExpectation {
    pub a: usize,
    pub b: usize,
    pub value: Rational,
}

/// Exact distributions and expectations over all `2^(2^m)` functions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExhaustiveReport {
    pub mode: &'static str,
    pub m: u32,
    pub n_functions: u64,
    pub histogram_s: IntHistogram,
    pub histogram_nl: IntHistogram,
    pub histogram_l4: IntHistogram,
    /// Smallest spectral amplitude over all functions.
    pub mu_m: u64,
    /// `2^(m-1) - mu_m / 2`.
    pub covering_radius: u64,
    #[serde(rename = "exact_E_l4")]
    pub exact_e_l4: Rational,
    #[serde(rename = "exact_E_l4sq")]
    pub exact_e_l4sq: Rational,
    #[serde(rename = "exact_E_Xa")]
    pub exact_e_xa: Vec<ShiftExpectation>,
    #[serde(rename = "exact_E_Xa2")]
    pub exact_e_xa2: Vec<ShiftExpectation>,
    #[serde(rename = "exact_E_XaXb")]
    pub exact_e_xaxb: Vec<PairExpectation>,
    #[serde(rename = "paper_claims")]
    pub claims: Vec<Claim>,
}

/// Enumerates all functions in `m <= 4` variables (`m = 5` with
/// `allow_large`; expect hours).
pub fn exhaustive_report_with(m: u32, allow_large: bool) -> Result<ExhaustiveReport> {
    let mut state = EnumerationState::new(m, allow_large)?;
    let total = state.total();
    state.advance(total);
    state.finish()
}

pub fn exhaustive_report(m: u32) -> Result<ExhaustiveReport> {
    exhaustive_report_with(m, false)
}

/// Covering radius of the first-order Reed-Muller code, `m <= 4`.
pub fn covering_radius(m: u32) -> Result<u64> {
    Ok(exhaustive_report(m)?.covering_radius)
}

/// Verdict table for the exact moment identities and bounds at `m <= 4`.
pub fn exact_moment_crosscheck(m: u32) -> Result<Vec<Claim>> {
    Ok(exhaustive_report(m)?.claims)
}

fn crosscheck_claims(r: &ExhaustiveReport) -> Vec<Claim> {
    let q = 1i128 << r.m;
    let int = Rational::from_integer;
    let mut claims = vec![Claim::exact_equality(
        "prop-esp-l4",
        "",
        int(3 * q * q - 2 * q),
        r.exact_e_l4,
    )];
    for e in &r.exact_e_xa {
        claims.push(Claim::exact_equality(
            "prop-esp1",
            format!("a={}", e.a),
            int(2 * q),
            e.value,
        ));
    }
    for e in &r.exact_e_xa2 {
        claims.push(Claim::exact_bound(
            "prop-esp-xa2",
            format!("a={}", e.a),
            int(12 * q * q),
            e.value,
        ));
    }
    for e in &r.exact_e_xaxb {
        claims.push(Claim::exact_bound(
            "prop-esp-xaxb",
            format!("a={},b={}", e.a, e.b),
            int(4 * q * q + 32 * q),
            e.value,
        ));
    }
    claims.push(Claim::exact_bound(
        "prop-esp-l4-eighth",
        "",
        int(64 * q - 100 * q * q + 28 * q.pow(3) + 9 * q.pow(4)),
        r.exact_e_l4sq,
    ));
    let max_nl = r.histogram_nl.max_key().expect("non-empty");
    claims.push(Claim::exact_equality(
        "def-covering-radius",
        "r_m = max nl",
        int(i128::from(max_nl)),
        int(i128::from(r.covering_radius)),
    ));
    if r.m % 2 == 0 {
        claims.push(Claim::exact_equality(
            "prop-mu-even",
            "mu_m = 2^(m/2)",
            int(1 << (r.m / 2)),
            int(i128::from(r.mu_m)),
        ));
    } else {
        // odd m: only the bracket 2^(m/2) <= mu_m <= 2^((m+1)/2) is known
        claims.push(Claim::informational(
            "prop-mu-odd",
            "upper end 2^((m+1)/2)",
            int(1 << (r.m.div_ceil(2))),
            int(i128::from(r.mu_m)),
        ));
    }
    claims
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{autocorrelation_naive, nonlinearity_bruteforce, wht_naive};

    #[test]
    fn guards() {
        assert!(matches!(
            exhaustive_report(5),
            Err(BoolFnError::CostGuard { max: 4, .. })
        ));
        assert!(matches!(
            EnumerationState::new(6, true),
            Err(BoolFnError::CostGuard { max: 5, .. })
        ));
        assert!(EnumerationState::new(5, true).is_ok());
    }

    #[test]
    fn m1_by_hand() {
        let r = exhaustive_report(1).unwrap();
        assert_eq!((r.mu_m, r.covering_radius), (2, 0));
        // f = (a, b): W = (a + b, a - b), so (1/2) sum W^4 = 8 for all four
        assert_eq!(r.exact_e_l4, Rational::from_integer(8));
        assert_eq!(r.exact_e_l4sq, Rational::from_integer(64));
        assert_eq!(r.histogram_s.total(), 4);
        assert!(r.exact_e_xaxb.is_empty());
    }

    /// Independent oracle: naive transform and naive autocorrelation over
    /// every table, averaged by hand.
    fn brute_expectations(m: u32) -> (Rational, Vec<Rational>, u64, u64) {
        let q = 1usize << m;
        let total = 1u64 << q;
        let mut l4 = 0i128;
        let mut xa = vec![0i128; q];
        let mut min_s = u64::MAX;
        let mut max_nl = 0u64;
        for idx in 0..total {
            let g = BooleanFunction::from_table_index(m, idx).unwrap();
            let sp = wht_naive(&g.sign()).unwrap();
            l4 += sp
                .coeffs()
                .iter()
                .map(|&c| i128::from(c).pow(4))
                .sum::<i128>()
                / q as i128;
            let ac = autocorrelation_naive(&g.sign()).unwrap();
            for (sum, &d) in xa.iter_mut().zip(ac.delta()).skip(1) {
                *sum += i128::from(d).pow(2);
            }
            min_s = min_s.min(sp.coeffs().iter().map(|c| c.unsigned_abs()).max().unwrap());
            if m <= 3 {
                max_nl = max_nl.max(nonlinearity_bruteforce(&g).unwrap());
            }
        }
        let n = i128::from(total);
        (
            Rational::new(l4, n),
            xa[1..].iter().map(|&s| Rational::new(s, n)).collect(),
            min_s,
            max_nl,
        )
    }

    #[test]
    fn matches_brute_oracle() {
        for m in 1..=3 {
            let r = exhaustive_report(m).unwrap();
            let (l4, xa, mu, max_nl) = brute_expectations(m);
            assert_eq!(r.exact_e_l4, l4);
            assert_eq!(r.exact_e_xa.iter().map(|e| e.value).collect::<Vec<_>>(), xa);
            assert_eq!(r.mu_m, mu);
            assert_eq!(r.covering_radius, max_nl);
        }
    }

    #[test]
    fn known_small_values() {
        let r2 = exhaustive_report(2).unwrap();
        assert_eq!(r2.exact_e_l4.to_string(), "40/1");
        assert_eq!((r2.mu_m, r2.covering_radius), (2, 1));
        let r3 = exhaustive_report(3).unwrap();
        assert_eq!(r3.exact_e_l4, Rational::from_integer(176));
        assert!(r3
            .exact_e_xa
            .iter()
            .all(|e| e.value == Rational::from_integer(16)));
        assert_eq!((r3.mu_m, r3.covering_radius), (4, 2));
        assert_eq!(covering_radius(3).unwrap(), 2);
        for r in [&r2, &r3] {
            assert!(r.claims.iter().all(|c| !c.failed()), "{:?}", r.claims);
            let n = r.n_functions;
            assert_eq!(r.histogram_s.total(), n);
            assert_eq!(r.histogram_nl.total(), n);
            assert_eq!(r.histogram_l4.total(), n);
        }
    }

    #[test]
    fn histograms_pair_under_nl_map() {
        let r = exhaustive_report(3).unwrap();
        let q = 8u64;
        let mapped: BTreeMap<u64, u64> = r
            .histogram_s
            .0
            .iter()
            .map(|(&s, &c)| ((q - s) / 2, c))
            .collect();
        assert_eq!(mapped, r.histogram_nl.0);
        assert!(r
            .histogram_s
            .0
            .keys()
            .all(|s| s % 2 == 0 && s * s >= q && *s <= q));
    }

    #[test]
    fn checkpoint_resume_is_identical() {
        let full = exhaustive_report(3).unwrap();
        let mut state = EnumerationState::new(3, false).unwrap();
        state.advance(100);
        assert!(!state.clone().is_complete());
        assert!(state.clone().finish().is_err());
        let saved = serde_json::to_string(&state).unwrap();
        let mut resumed: EnumerationState = serde_json::from_str(&saved).unwrap();
        assert_eq!(resumed, state);
        resumed.advance(57);
        resumed.advance(u64::MAX);
        assert_eq!(resumed.finish().unwrap(), full);
    }
}
