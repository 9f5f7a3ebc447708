//! Spectral analysis of Boolean functions.
//!
//! * [`function`]: truth tables, the `+-1` exponential, constructors.
//! * [`spectra`]: Walsh-Hadamard transform, nonlinearity, autocorrelation,
//!   L4 norm and sum-of-squares indicator, each with a slow oracle.
//! * [`enumerate`]: exact statistics over every function for `m <= 4`.
//! * [`ensemble`]: seeded Monte Carlo suites over uniformly random
//!   functions, reporting empirical values next to exact expectations and
//!   tail bounds.
//! * [`report`]: claim rows and exact rationals shared by all reports.

pub mod ensemble;
pub mod enumerate;
mod error;
pub mod function;
pub mod report;
pub mod spectra;

pub use crate::enumerate::{
    covering_radius, exact_moment_crosscheck, exhaustive_report, exhaustive_report_with,
    EnumerationState, ExhaustiveReport,
};
pub use crate::error::{BoolFnError, Result, MAX_VARS};
pub use crate::function::{BooleanFunction, SignVector};
pub use crate::report::{Claim, ClaimKind, Quantity, Rational, Verdict, SCHEMA_VERSION};
pub use crate::spectra::{
    autocorrelation, l4_fourth, nonlinearity, nonlinearity_bruteforce, spectral_amplitude,
    summarize, wht_fast, wht_naive, AutocorrSpectrum, SpectralSummary, WalshSpectrum,
};
