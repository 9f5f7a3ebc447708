//! Walsh spectrum, autocorrelation and the quantities derived from them.
//!
//! Coefficients use the unnormalized counting sum
//! `W(v) = sum_x f(x) (-1)^(v.x)`. The L4 quantity is the fourth power of
//! the norm for the probability (mass one) measure on characters, i.e.
//! `(1/q) sum_v W(v)^4`; that division is always exact.

use serde::Serialize;

use crate::error::{cost_guard, Result};
use crate::function::{BooleanFunction, SignVector};

/// Largest `m` accepted by the quadratic-time oracles.
pub const NAIVE_MAX_VARS: u32 = 14;
/// Largest `m` for the affine scan in [`nonlinearity_bruteforce`].
pub const BRUTEFORCE_NL_MAX_VARS: u32 = 10;
/// Largest `m` for the cubic-time quadruple sum.
pub const QUADRUPLE_SUM_MAX_VARS: u32 = 8;

/// Walsh coefficients `W(v)` for every `v` in `F_2^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalshSpectrum {
    m: u32,
    coeffs: Vec<i64>,
}

impl WalshSpectrum {
    pub fn num_vars(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    /// `max_v |W(v)|`.
    pub fn spectral_amplitude(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// `sum_v W(v)^2`; equals `q^2` for every sign vector.
    pub fn energy(&self) -> u128 {
        self.coeffs
            .iter()
            .map(|&c| (c as i128 * c as i128) as u128)
            .sum()
    }

    /// `(1/q) sum_v W(v)^4`.
    ///
    /// # Panics
    /// If the fourth-power sum is not a multiple of `q`, which cannot happen
    /// for the spectrum of a sign vector.
    pub fn l4_fourth(&self) -> u128 {
        let q = self.coeffs.len() as u128;
        let total: u128 = self
            .coeffs
            .iter()
            .map(|&c| {
                let sq = (c as i128 * c as i128) as u128;
                sq * sq
            })
            .sum();
        assert_eq!(total % q, 0, "sum of fourth powers not divisible by q");
        total / q
    }

    /// Autocorrelation recovered from the spectrum:
    /// `delta(a) = (1/q) sum_v W(v)^2 (-1)^(v.a)`.
    pub fn autocorrelation(&self) -> AutocorrSpectrum {
        let q = self.coeffs.len() as i64;
        let mut work: Vec<i64> = self.coeffs.iter().map(|&c| c * c).collect();
        fwht_in_place(&mut work);
        for d in &mut work {
            debug_assert_eq!(*d % q, 0);
            *d /= q;
        }
        AutocorrSpectrum {
            m: self.m,
            delta: work,
        }
    }
}

/// `delta(a) = sum_x f(x) f(x + a)` for every shift `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutocorrSpectrum {
    m: u32,
    delta: Vec<i64>,
}

impl AutocorrSpectrum {
    pub fn num_vars(&self) -> u32 {
        self.m
    }

    pub fn delta(&self) -> &[i64] {
        &self.delta
    }

    /// Squared autocorrelation `X_a = delta(a)^2`.
    pub fn x(&self, a: usize) -> u64 {
        let d = self.delta[a].unsigned_abs();
        d * d
    }

    /// `Y_a = X_a / q`.
    pub fn y(&self, a: usize) -> f64 {
        self.x(a) as f64 / self.delta.len() as f64
    }

    /// Sum-of-squares indicator `sum_(a != 0) X_a`.
    pub fn sum_of_squares(&self) -> u128 {
        (1..self.delta.len()).map(|a| u128::from(self.x(a))).sum()
    }

    /// `sum_a delta(a)^2`, which equals [`WalshSpectrum::l4_fourth`].
    pub fn l4_fourth(&self) -> u128 {
        (0..self.delta.len()).map(|a| u128::from(self.x(a))).sum()
    }
}

/// Scalar summary of a single function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralSummary {
    pub m: u32,
    pub spectral_amplitude: u64,
    pub nonlinearity: u64,
    pub l4_fourth: u128,
    pub sum_of_squares: u128,
}

impl SpectralSummary {
    /// Checks the relations tying the four numbers together:
    /// `nl = 2^(m-1) - S/2`, `l4 = q^2 + sum_of_squares` and
    /// `q^2 <= l4 <= S^2 q`.
    pub fn is_consistent(&self) -> bool {
        let q = 1u128 << self.m;
        let s = u128::from(self.spectral_amplitude);
        2 * u128::from(self.nonlinearity) + s == q
            && self.l4_fourth == q * q + self.sum_of_squares
            && q * q <= self.l4_fourth
            && self.l4_fourth <= s * s * q
            && self.l4_fourth <= q * q * q
    }
}

/// In-place Walsh-Hadamard butterfly over little-endian index bits.
///
/// Stage `h = 1, 2, 4, ..` combines entries `i` and `i + h` for every `i`
/// with bit `h` clear. Applying it twice multiplies the input by its length.
pub fn fwht_in_place(data: &mut [i64]) {
    let n = data.len();
    assert!(
        n.is_power_of_two(),
        "transform length must be a power of two"
    );
    let mut h = 1;
    while h < n {
        for block in data.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Walsh spectrum by the `O(q log q)` butterfly.
pub fn wht_fast(f: &SignVector) -> WalshSpectrum {
    let mut coeffs: Vec<i64> = f.values().iter().map(|&v| i64::from(v)).collect();
    fwht_in_place(&mut coeffs);
    WalshSpectrum {
        m: f.num_vars(),
        coeffs,
    }
}

/// Walsh spectrum as `q` explicit inner products of `f` with each
/// character. Test oracle, `m <= 14`.
pub fn wht_naive(f: &SignVector) -> Result<WalshSpectrum> {
    cost_guard("wht_naive", f.num_vars(), NAIVE_MAX_VARS)?;
    let values = f.values();
    let q = values.len();
    // odd[x] = v.x; v walks the Gray code, so each step flips one bit j of v
    // and toggles odd[x] wherever x_j = 1.
    let mut odd = vec![0u8; q];
    let mut coeffs = vec![0i64; q];
    let mut v = 0usize;
    for k in 0..q {
        if k > 0 {
            let j = k.trailing_zeros();
            v ^= 1 << j;
            for (x, o) in odd.iter_mut().enumerate() {
                *o ^= ((x >> j) & 1) as u8;
            }
        }
        // |sum| <= q, so the wrapping add never wraps
        let sum = values
            .iter()
            .zip(&odd)
            .map(|(&fx, &o)| {
                let fx = i32::from(fx);
                if o == 0 {
                    fx
                } else {
                    -fx
                }
            })
            .fold(0i32, i32::wrapping_add);
        coeffs[v] = i64::from(sum);
    }
    Ok(WalshSpectrum {
        m: f.num_vars(),
        coeffs,
    })
}

/// Spectral amplitude `S(g) = max_v |W(v)|`.
pub fn spectral_amplitude(spectrum: &WalshSpectrum) -> u64 {
    spectrum.spectral_amplitude()
}

/// Nonlinearity from the spectrum: `2^(m-1) - S/2`.
pub fn nonlinearity(g: &BooleanFunction) -> u64 {
    let s = wht_fast(&g.sign()).spectral_amplitude();
    (g.len() as u64 - s) / 2
}

/// Nonlinearity as the minimum distance to all `2^(m+1)` affine functions.
/// Test oracle, `m <= 10`.
pub fn nonlinearity_bruteforce(g: &BooleanFunction) -> Result<u64> {
    let m = g.num_vars();
    cost_guard("nonlinearity_bruteforce", m, BRUTEFORCE_NL_MAX_VARS)?;
    let q = g.len() as u64;
    let mut best = u64::MAX;
    for v in 0..q {
        let d = g.hamming_distance(&BooleanFunction::affine(v, false, m)?)?;
        // the complement of an affine function is the affine function with c = 1
        best = best.min(d).min(q - d);
    }
    Ok(best)
}

/// Autocorrelation through two transforms, `O(q log q)`.
pub fn autocorrelation(f: &SignVector) -> AutocorrSpectrum {
    wht_fast(f).autocorrelation()
}

/// Autocorrelation by the literal sum over `x` for every shift. Test oracle,
/// `m <= 14`.
pub fn autocorrelation_naive(f: &SignVector) -> Result<AutocorrSpectrum> {
    cost_guard("autocorrelation_naive", f.num_vars(), NAIVE_MAX_VARS)?;
    let values = f.values();
    let delta = (0..values.len())
        .map(|a| {
            values
                .iter()
                .enumerate()
                .map(|(x, &fx)| i64::from(fx) * i64::from(values[x ^ a]))
                .sum()
        })
        .collect();
    Ok(AutocorrSpectrum {
        m: f.num_vars(),
        delta,
    })
}

/// A single autocorrelation value `delta(a)` in `O(q)` word operations.
pub fn autocorrelation_at(g: &BooleanFunction, a: usize) -> i64 {
    let q = g.len();
    assert!(a < q, "shift {a} outside F_2^m");
    let disagreements = if q >= 64 {
        // the shift permutes whole words for the high bits of `a` and
        // moves bits within each word for the low six bits
        let words = g.words();
        let hi = a >> 6;
        let lo = a & 63;
        words
            .iter()
            .enumerate()
            .map(|(w, &word)| {
                let shifted = permute_within_word(words[w ^ hi], lo);
                u64::from((word ^ shifted).count_ones())
            })
            .sum::<u64>()
    } else {
        (0..q).filter(|&x| g.bit(x) != g.bit(x ^ a)).count() as u64
    };
    q as i64 - 2 * disagreements as i64
}

/// Returns the word whose bit `i` is bit `i ^ lo` of `word`.
fn permute_within_word(mut word: u64, lo: usize) -> u64 {
    const MASKS: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    for (j, mask) in MASKS.iter().enumerate() {
        if lo >> j & 1 == 1 {
            let s = 1 << j;
            word = ((word & mask) << s) | ((word >> s) & mask);
        }
    }
    word
}

/// `||W||_4^4` under the mass-one measure, from the spectrum.
pub fn l4_fourth(f: &SignVector) -> u128 {
    wht_fast(f).l4_fourth()
}

/// `||W||_4^4` as `sum_a delta(a)^2`, from the naive autocorrelation.
pub fn l4_fourth_via_autocorrelation(f: &SignVector) -> Result<u128> {
    Ok(autocorrelation_naive(f)?.l4_fourth())
}

/// `||W||_4^4` as the sum of `f(x1) f(x2) f(x3) f(x4)` over all quadruples
/// with `x1 + x2 + x3 + x4 = 0`. Test oracle, `m <= 8`.
pub fn l4_fourth_quadruple_sum(f: &SignVector) -> Result<u128> {
    cost_guard(
        "l4_fourth_quadruple_sum",
        f.num_vars(),
        QUADRUPLE_SUM_MAX_VARS,
    )?;
    let v = f.values();
    let q = v.len();
    let mut total: i128 = 0;
    for x1 in 0..q {
        for x2 in 0..q {
            let p = i64::from(v[x1] * v[x2]);
            let mut inner = 0i64;
            for x3 in 0..q {
                inner += i64::from(v[x3] * v[x1 ^ x2 ^ x3]);
            }
            total += i128::from(p * inner);
        }
    }
    Ok(u128::try_from(total).expect("fourth moment is nonnegative"))
}

/// Bundles `S`, `nl`, `||W||_4^4` and the sum-of-squares indicator.
///
/// `l4_fourth` comes from the spectrum and `sum_of_squares` from the
/// autocorrelation, so [`SpectralSummary::is_consistent`] compares two
/// independent computations.
pub fn summarize(g: &BooleanFunction) -> SpectralSummary {
    let spectrum = wht_fast(&g.sign());
    summarize_spectrum(&spectrum)
}

pub(crate) fn summarize_spectrum(spectrum: &WalshSpectrum) -> SpectralSummary {
    let q = spectrum.coeffs().len() as u64;
    let s = spectrum.spectral_amplitude();
    SpectralSummary {
        m: spectrum.num_vars(),
        spectral_amplitude: s,
        nonlinearity: (q - s) / 2,
        l4_fourth: spectrum.l4_fourth(),
        sum_of_squares: spectrum.autocorrelation().sum_of_squares(),
    }
}
