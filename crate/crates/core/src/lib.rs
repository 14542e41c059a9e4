//! Split squares: perfect squares whose decimal digits are a nonzero square,
//! then `s` zeros, then another nonzero square, with neither block a
//! multiple of 10. `49 = [4][9]` and `2433606240004 = [24336][0][6240004]`
//! are examples.
//!
//! The numeric layer and the classifier are generic over [`Natural`], so the
//! brute-force search can run on `u128` while the parametric families, whose
//! members reach hundreds of digits, use [`Nat`].

pub mod classifier;
pub mod error;
pub mod generators;
pub mod numeric;
pub mod oracle;
pub mod output;
mod serial;

pub use classifier::{
    check_witness, check_witness_with, classify_root, find_split_witnesses, verify_witness,
    ClassifyOptions, SplitWitness, WitnessViolation,
};
pub use error::{Error, Result};
pub use numeric::{
    concat_with_zeros, digit_count, is_perfect_square, isqrt, padic_valuation, pow10, split_at,
    Natural, SmallPrime,
};

/// Arbitrary-precision natural number.
pub type Nat = num_bigint::BigUint;

/// Fixed-width natural wide enough for every square of a `u64` root.
pub type WideNat = u128;

pub type Witness = SplitWitness<Nat>;
pub type WideWitness = SplitWitness<WideNat>;
pub type WideSearchReport = oracle::SearchReport<WideNat>;
