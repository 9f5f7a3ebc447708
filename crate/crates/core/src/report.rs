//! Claim rows, exact rationals and histograms shared by every report.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

/// Version of the JSON/CSV report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// An exact rational, rendered as `"numerator/denominator"` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<i128>);

impl Rational {
    pub fn new(numer: i128, denom: i128) -> Self {
        Self(Ratio::new(numer, denom))
    }

    pub fn from_integer(n: i128) -> Self {
        Self(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimKind {
    Equality,
    Bound,
    Informational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Info,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "PASS",
            Self::Fail => "FAIL",
            Self::Info => "INFO",
        })
    }
}

/// A number in a claim row: exact where the computation is exact.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Quantity {
    Exact(Rational),
    Real(f64),
}

impl Quantity {
    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Exact(r) => r.to_f64(),
            Self::Real(x) => *x,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(r) => r.fmt(f),
            Self::Real(x) => x.fmt(f),
        }
    }
}

impl From<Rational> for Quantity {
    fn from(r: Rational) -> Self {
        Self::Exact(r)
    }
}

impl From<f64> for Quantity {
    fn from(x: f64) -> Self {
        Self::Real(x)
    }
}

/// One checked statement: a theoretical value or bound next to what was
/// observed.
///
/// Equalities pass when `|empirical - theory| <= slack`, bounds when
/// `empirical <= theory + slack` (upper bounds, unless built with
/// [`Claim::exact_lower_bound`]). Exact rows carry `slack = 0` and compare
/// rationals without rounding.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim {
    pub claim_id: String,
    pub kind: ClaimKind,
    /// What the row is about, e.g. `a=3` or `kappa=2`.
    pub param: String,
    pub theory: Quantity,
    pub empirical: Quantity,
    pub slack: f64,
    pub verdict: Verdict,
}

impl Claim {
    pub fn exact_equality(
        id: &str,
        param: impl Into<String>,
        theory: Rational,
        empirical: Rational,
    ) -> Self {
        Self {
            claim_id: id.to_owned(),
            kind: ClaimKind::Equality,
            param: param.into(),
            theory: theory.into(),
            empirical: empirical.into(),
            slack: 0.0,
            verdict: Verdict::from_bool(theory == empirical),
        }
    }

    pub fn exact_bound(
        id: &str,
        param: impl Into<String>,
        bound: Rational,
        empirical: Rational,
    ) -> Self {
        Self {
            claim_id: id.to_owned(),
            kind: ClaimKind::Bound,
            param: param.into(),
            theory: bound.into(),
            empirical: empirical.into(),
            slack: 0.0,
            verdict: Verdict::from_bool(empirical <= bound),
        }
    }

    /// Like [`Self::exact_bound`] with the inequality reversed:
    /// passes when `empirical >= bound`.
    pub fn exact_lower_bound(
        id: &str,
        param: impl Into<String>,
        bound: Rational,
        empirical: Rational,
    ) -> Self {
        Self {
            verdict: Verdict::from_bool(empirical >= bound),
            ..Self::exact_bound(id, param, bound, empirical)
        }
    }

    pub fn equality(
        id: &str,
        param: impl Into<String>,
        theory: impl Into<Quantity>,
        empirical: impl Into<Quantity>,
        slack: f64,
    ) -> Self {
        let (theory, empirical) = (theory.into(), empirical.into());
        let ok = (empirical.to_f64() - theory.to_f64()).abs() <= slack;
        Self {
            claim_id: id.to_owned(),
            kind: ClaimKind::Equality,
            param: param.into(),
            theory,
            empirical,
            slack,
            verdict: Verdict::from_bool(ok),
        }
    }

    pub fn bound(
        id: &str,
        param: impl Into<String>,
        bound: impl Into<Quantity>,
        empirical: impl Into<Quantity>,
        slack: f64,
    ) -> Self {
        let (theory, empirical) = (bound.into(), empirical.into());
        let ok = empirical.to_f64() <= theory.to_f64() + slack;
        Self {
            claim_id: id.to_owned(),
            kind: ClaimKind::Bound,
            param: param.into(),
            theory,
            empirical,
            slack,
            verdict: Verdict::from_bool(ok),
        }
    }

    pub fn informational(
        id: &str,
        param: impl Into<String>,
        theory: impl Into<Quantity>,
        empirical: impl Into<Quantity>,
    ) -> Self {
        Self {
            claim_id: id.to_owned(),
            kind: ClaimKind::Informational,
            param: param.into(),
            theory: theory.into(),
            empirical: empirical.into(),
            slack: 0.0,
            verdict: Verdict::Info,
        }
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

/// Half-open histogram bin `[lower_edge, upper_edge)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Bin {
    pub lower_edge: f64,
    pub upper_edge: f64,
    pub count: u64,
}

/// Bins an integer-valued histogram with unit-width bins `[v, v + 1)`.
pub fn integer_bins(hist: &BTreeMap<u64, u64>) -> Vec<Bin> {
    hist.iter()
        .map(|(&v, &count)| Bin {
            lower_edge: v as f64,
            upper_edge: v as f64 + 1.0,
            count,
        })
        .collect()
}

/// Exact histogram over integer keys, serialized as explicit bins.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntHistogram(pub BTreeMap<u64, u64>);

impl IntHistogram {
    pub fn add(&mut self, key: u64, count: u64) {
        *self.0.entry(key).or_insert(0) += count;
    }

    pub fn merge(&mut self, other: &Self) {
        for (&k, &c) in &other.0 {
            self.add(k, c);
        }
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn min_key(&self) -> Option<u64> {
        self.0.keys().next().copied()
    }

    pub fn max_key(&self) -> Option<u64> {
        self.0.keys().next_back().copied()
    }
}

impl Serialize for IntHistogram {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        integer_bins(&self.0).serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_rendering() {
        assert_eq!(Rational::new(80, 2).to_string(), "40/1");
        assert_eq!(Rational::new(6, -4).to_string(), "-3/2");
        assert_eq!(
            serde_json::to_string(&Rational::new(1, 3)).unwrap(),
            "\"1/3\""
        );
        assert!(Rational::new(1, 3) < Rational::new(1, 2));
    }

    #[test]
    fn verdicts() {
        let r = |n| Rational::from_integer(n);
        assert_eq!(
            Claim::exact_equality("x", "", r(4), r(4)).verdict,
            Verdict::Pass
        );
        assert_eq!(
            Claim::exact_bound("x", "", r(4), r(5)).verdict,
            Verdict::Fail
        );
        assert_eq!(
            Claim::equality("x", "", 2.0, 2.1, 0.2).verdict,
            Verdict::Pass
        );
        assert_eq!(
            Claim::bound("x", "", 0.1, 0.15, 0.01).verdict,
            Verdict::Fail
        );
        assert_eq!(
            Claim::informational("x", "", 0.1, 9.0).verdict,
            Verdict::Info
        );
    }

    #[test]
    fn histogram_bins_have_edges() {
        let mut h = IntHistogram::default();
        h.add(4, 2);
        h.add(2, 1);
        h.add(4, 1);
        assert_eq!(h.total(), 4);
        assert_eq!((h.min_key(), h.max_key()), (Some(2), Some(4)));
        let json = serde_json::to_value(&h).unwrap();
        assert_eq!(json[1]["lower_edge"], 4.0);
        assert_eq!(json[1]["upper_edge"], 5.0);
        assert_eq!(json[1]["count"], 3);
    }
}
