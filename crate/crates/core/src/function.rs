//! Truth-table representation of Boolean functions on `F_2^m`.
//!
//! A point `x = (x_1, .., x_m)` of `F_2^m` is identified with the integer
//! `i = x_1 + 2 x_2 + .. + 2^(m-1) x_m`, so coordinate `x_j` is bit `j - 1`
//! of the index. The table is packed into 64-bit words, little-endian within
//! each word: bit `i` of the table is bit `i % 64` of word `i / 64`.

use std::fmt;

use rand::RngCore;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{check_vars, BoolFnError, Result};

/// A Boolean function `g: F_2^m -> F_2` stored as its truth table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    m: u32,
    words: Vec<u64>,
}

impl BooleanFunction {
    /// The constant zero function.
    pub fn zero(m: u32) -> Result<Self> {
        check_vars(m)?;
        Ok(Self {
            m,
            words: vec![0; word_count(m)],
        })
    }

    /// Builds a function by evaluating `f` at every index `0..2^m`.
    pub fn from_fn(m: u32, mut f: impl FnMut(usize) -> bool) -> Result<Self> {
        let mut g = Self::zero(m)?;
        for i in 0..g.len() {
            if f(i) {
                g.words[i >> 6] |= 1 << (i & 63);
            }
        }
        Ok(g)
    }

    /// Builds a function from a table given as a single integer, bit `i`
    /// holding `g(x_i)`. Only for `m <= 6`, where the table fits in a word.
    /// This is the enumeration order used by the exhaustive oracle.
    pub fn from_table_index(m: u32, index: u64) -> Result<Self> {
        check_vars(m)?;
        if m > 6 {
            return Err(BoolFnError::InvalidParameter(format!(
                "a {m}-variable table does not fit in one 64-bit word"
            )));
        }
        if m < 6 && index >> (1u64 << m) != 0 {
            return Err(BoolFnError::InvalidParameter(format!(
                "table index {index} has bits beyond 2^{m}"
            )));
        }
        Ok(Self {
            m,
            words: vec![index],
        })
    }

    /// Parses the lowercase hexadecimal interchange format.
    ///
    /// The string holds exactly `ceil(2^m / 4)` digits and reads as one
    /// big-endian integer: the last digit carries indices 0..3.
    pub fn from_hex(hex: &str, m: u32) -> Result<Self> {
        check_vars(m)?;
        let q = 1usize << m;
        let digits = q.div_ceil(4);
        let bytes = hex.as_bytes();
        if bytes.len() != digits {
            return Err(BoolFnError::Format(format!(
                "expected {digits} hex digits for m = {m}, got {}",
                bytes.len()
            )));
        }
        let mut g = Self::zero(m)?;
        for (pos, &b) in bytes.iter().rev().enumerate() {
            let nibble = (b as char)
                .to_digit(16)
                .ok_or_else(|| BoolFnError::Format(format!("invalid hex digit {:?}", b as char)))?
                as u64;
            let base = 4 * pos;
            if q < 4 && nibble >> q != 0 {
                return Err(BoolFnError::Format(format!(
                    "digit {:?} sets bits beyond the {q}-entry table",
                    b as char
                )));
            }
            g.words[base >> 6] |= nibble << (base & 63);
        }
        Ok(g)
    }

    /// Renders the truth table in the interchange format (see [`Self::from_hex`]).
    pub fn to_hex(&self) -> String {
        let digits = self.len().div_ceil(4);
        (0..digits)
            .rev()
            .map(|pos| {
                let base = 4 * pos;
                let nibble = (self.words[base >> 6] >> (base & 63)) & 0xf;
                char::from_digit(nibble as u32, 16).expect("nibble < 16")
            })
            .collect()
    }

    /// A uniformly random function, fully determined by
    /// `(master_seed, stream_index)`.
    ///
    /// Every table bit is an independent fair coin. The generator is ChaCha8
    /// keyed by `master_seed` and positioned on stream `stream_index`, so
    /// distinct indices give independent functions and the result does not
    /// depend on which thread asks or in which order.
    pub fn random_uniform(m: u32, master_seed: u64, stream_index: u64) -> Result<Self> {
        check_vars(m)?;
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(stream_index);
        let mut words: Vec<u64> = (0..word_count(m)).map(|_| rng.next_u64()).collect();
        if m < 6 {
            words[0] &= (1u64 << (1u32 << m)) - 1;
        }
        Ok(Self { m, words })
    }

    /// The affine function `x -> v.x + c`.
    pub fn affine(v: u64, c: bool, m: u32) -> Result<Self> {
        check_vars(m)?;
        if v >> m != 0 {
            return Err(BoolFnError::InvalidParameter(format!(
                "linear part {v} is not a point of F_2^{m}"
            )));
        }
        Self::from_fn(m, |x| dot(v, x as u64) ^ c)
    }

    /// The inner-product bent function
    /// `x_1 x_(k+1) + x_2 x_(k+2) + .. + x_k x_m` with `k = m / 2`.
    pub fn inner_product_bent(m: u32) -> Result<Self> {
        check_vars(m)?;
        if m % 2 != 0 {
            return Err(BoolFnError::Domain(format!(
                "bent functions need an even number of variables, got {m}"
            )));
        }
        let half = m / 2;
        let low_mask = (1u64 << half) - 1;
        Self::from_fn(m, |x| {
            let x = x as u64;
            dot(x & low_mask, x >> half)
        })
    }

    /// Number of variables `m`.
    pub fn num_vars(&self) -> u32 {
        self.m
    }

    /// Table length `q = 2^m`.
    pub fn len(&self) -> usize {
        1 << self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Hamming weight of the table.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// The `+-1` exponential `f = (-1)^g`.
    pub fn sign(&self) -> SignVector {
        let values = (0..self.len())
            .map(|i| if self.bit(i) { -1 } else { 1 })
            .collect();
        SignVector { m: self.m, values }
    }

    /// Number of points where `self` and `other` disagree.
    pub fn hamming_distance(&self, other: &Self) -> Result<u64> {
        if self.m != other.m {
            return Err(BoolFnError::DimensionMismatch {
                left: self.m,
                right: other.m,
            });
        }
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| u64::from((a ^ b).count_ones()))
            .sum())
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction(m={}, {})", self.m, self.to_hex())
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// The `+-1` valued exponential `f(x) = (-1)^g(x)` of a Boolean function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignVector {
    m: u32,
    values: Vec<i8>,
}

impl SignVector {
    /// Wraps explicit `+-1` values; the length must be a power of two.
    pub fn from_values(values: Vec<i8>) -> Result<Self> {
        let q = values.len();
        if !q.is_power_of_two() || q < 2 {
            return Err(BoolFnError::Format(format!(
                "sign vector length {q} is not 2^m with m >= 1"
            )));
        }
        let m = q.trailing_zeros();
        check_vars(m)?;
        if let Some(bad) = values.iter().find(|&&v| v != 1 && v != -1) {
            return Err(BoolFnError::Format(format!("sign entry {bad} is not +-1")));
        }
        Ok(Self { m, values })
    }

    pub fn num_vars(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// Back to the Boolean table: `g(x) = 1` exactly where `f(x) = -1`.
    pub fn to_function(&self) -> BooleanFunction {
        BooleanFunction::from_fn(self.m, |i| self.values[i] < 0).expect("m already validated")
    }
}

fn word_count(m: u32) -> usize {
    (1usize << m).div_ceil(64)
}

/// Inner product `v.x` over `F_2`.
#[inline]
pub(crate) fn dot(v: u64, x: u64) -> bool {
    (v & x).count_ones() & 1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn table(g: &BooleanFunction) -> Vec<u8> {
        (0..g.len()).map(|i| g.bit(i) as u8).collect()
    }

    #[test]
    fn hex_single_bit() {
        let g = BooleanFunction::from_hex("8", 2).unwrap();
        assert_eq!(table(&g), [0, 0, 0, 1]);
        let and = BooleanFunction::from_fn(2, |x| x & 1 == 1 && x & 2 == 2).unwrap();
        assert_eq!(g, and);
        assert_eq!(
            BooleanFunction::from_hex("0", 2).unwrap(),
            BooleanFunction::zero(2).unwrap()
        );
    }

    #[test]
    fn hex_round_trip_m5() {
        let g = BooleanFunction::from_hex("ac90f013", 5).unwrap();
        assert_eq!(g.to_hex(), "ac90f013");
        assert!(g.bit(0) && g.bit(1) && !g.bit(2) && g.bit(4));
    }

    #[test]
    fn hex_errors() {
        assert!(matches!(
            BooleanFunction::from_hex("00", 2),
            Err(BoolFnError::Format(_))
        ));
        assert!(matches!(
            BooleanFunction::from_hex("g", 2),
            Err(BoolFnError::Format(_))
        ));
        assert!(matches!(
            BooleanFunction::from_hex("4", 1),
            Err(BoolFnError::Format(_))
        ));
        assert_eq!(
            BooleanFunction::from_hex("0", 0),
            Err(BoolFnError::Range { m: 0 })
        );
        assert_eq!(
            BooleanFunction::from_hex("0", 25),
            Err(BoolFnError::Range { m: 25 })
        );
        assert_eq!(BooleanFunction::from_hex("3", 1).unwrap().weight(), 2);
    }

    #[test]
    fn sign_examples() {
        assert_eq!(
            BooleanFunction::zero(2).unwrap().sign().values(),
            [1, 1, 1, 1]
        );
        let g = BooleanFunction::from_hex("8", 2).unwrap();
        assert_eq!(g.sign().values(), [1, 1, 1, -1]);
        assert_eq!(g.sign().to_function(), g);
        assert!(SignVector::from_values(vec![1, 0]).is_err());
        assert!(SignVector::from_values(vec![1, 1, 1]).is_err());
    }

    #[test]
    fn affine_examples() {
        assert_eq!(
            BooleanFunction::affine(0, false, 3).unwrap(),
            BooleanFunction::zero(3).unwrap()
        );
        assert_eq!(
            table(&BooleanFunction::affine(1, false, 2).unwrap()),
            [0, 1, 0, 1]
        );
        assert_eq!(
            table(&BooleanFunction::affine(3, true, 2).unwrap()),
            [1, 0, 0, 1]
        );
        assert!(BooleanFunction::affine(4, false, 2).is_err());
    }

    #[test]
    fn bent_constructor() {
        let g = BooleanFunction::inner_product_bent(2).unwrap();
        assert_eq!(g.to_hex(), "8");
        // x1 x3 + x2 x4
        let g4 = BooleanFunction::inner_product_bent(4).unwrap();
        let expect = BooleanFunction::from_fn(4, |x| {
            let b = |j: usize| (x >> j) & 1 == 1;
            (b(0) & b(2)) ^ (b(1) & b(3))
        })
        .unwrap();
        assert_eq!(g4, expect);
        assert!(matches!(
            BooleanFunction::inner_product_bent(3),
            Err(BoolFnError::Domain(_))
        ));
    }

    #[test]
    fn hamming_examples() {
        let g = BooleanFunction::random_uniform(7, 1, 2).unwrap();
        assert_eq!(g.hamming_distance(&g).unwrap(), 0);
        let zero = BooleanFunction::zero(3).unwrap();
        let ones = BooleanFunction::affine(0, true, 3).unwrap();
        assert_eq!(zero.hamming_distance(&ones).unwrap(), 8);
        let and = BooleanFunction::from_hex("8", 2).unwrap();
        assert_eq!(
            and.hamming_distance(&BooleanFunction::zero(2).unwrap())
                .unwrap(),
            1
        );
        assert!(matches!(
            zero.hamming_distance(&and),
            Err(BoolFnError::DimensionMismatch { left: 3, right: 2 })
        ));
    }

    #[test]
    fn random_is_reproducible_and_masked() {
        for m in 1..=8 {
            let a = BooleanFunction::random_uniform(m, 42, 9).unwrap();
            let b = BooleanFunction::random_uniform(m, 42, 9).unwrap();
            assert_eq!(a, b);
            assert!(a.weight() <= a.len() as u64);
        }
        let a = BooleanFunction::random_uniform(10, 42, 0).unwrap();
        let b = BooleanFunction::random_uniform(10, 42, 1).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn random_first_bit_is_fair() {
        // Binomial 3-sigma interval for a fair bit over N draws.
        let n = 100_000u64;
        let ones: u64 = (0..n)
            .map(|k| BooleanFunction::random_uniform(8, 2024, k).unwrap().bit(0) as u64)
            .sum();
        let mean = ones as f64 / n as f64;
        let half = 3.0 * 0.5 / (n as f64).sqrt();
        assert!((mean - 0.5).abs() <= half, "mean {mean}");
    }

    #[test]
    fn table_index_matches_bits() {
        let g = BooleanFunction::from_table_index(2, 0b1000).unwrap();
        assert_eq!(g.to_hex(), "8");
        assert!(BooleanFunction::from_table_index(2, 16).is_err());
        assert!(BooleanFunction::from_table_index(7, 0).is_err());
    }

    proptest! {
        #[test]
        fn hex_round_trip(m in 1u32..=12, seed: u64, idx: u64) {
            let g = BooleanFunction::random_uniform(m, seed, idx).unwrap();
            let hex = g.to_hex();
            prop_assert_eq!(hex.len(), g.len().div_ceil(4));
            prop_assert_eq!(BooleanFunction::from_hex(&hex, m).unwrap(), g);
        }

        #[test]
        fn sign_counts_weight(m in 1u32..=10, seed: u64) {
            let g = BooleanFunction::random_uniform(m, seed, 0).unwrap();
            let f = g.sign();
            let minus: i64 = f.values().iter().map(|&v| i64::from((1 - v) / 2)).sum();
            prop_assert!(f.values().iter().all(|&v| v * v == 1));
            prop_assert_eq!(minus as u64, g.weight());
        }

        #[test]
        fn hamming_via_signs(m in 1u32..=10, seed: u64) {
            let g = BooleanFunction::random_uniform(m, seed, 0).unwrap();
            let h = BooleanFunction::random_uniform(m, seed, 1).unwrap();
            let corr: i64 = g.sign().values().iter().zip(h.sign().values())
                .map(|(&a, &b)| i64::from(a) * i64::from(b)).sum();
            let d = g.hamming_distance(&h).unwrap() as i64;
            prop_assert_eq!(d, (g.len() as i64 - corr) / 2);
            prop_assert_eq!(d as u64, h.hamming_distance(&g).unwrap());
        }
    }
}
