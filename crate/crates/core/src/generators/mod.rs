//! Constructive families of split squares.
//!
//! Every generated object is handed back to the classifier before it is
//! reported; nothing here is trusted on construction alone.

mod family;
mod ladder;
mod pair;

pub use family::{
    family_candidate, family_grid, family_stream, satisfies_digit_conditions, CandidateStatus,
    FamilyCandidate, FamilyCase, FamilyParams, RejectReason,
};
pub use ladder::{
    divisor_chain, quartering_ladder, zeros_between_stream, ChainRecord, LadderStep, ZerosStream,
};
pub use pair::{divisor_pair, PairRecord};

use num_bigint::BigUint;

use crate::numeric::pow10;
use crate::Nat;

/// `49 · 10^(2k)`: a split square only when blocks divisible by 10 are
/// allowed (for `k ≥ 1`).
pub fn trailing_zero_family(k: u32) -> Nat {
    let scale: Nat = pow10(2 * k).expect("BigUint never overflows");
    scale * 49u32
}

pub(crate) fn pow_nat(base: u32, exp: u32) -> Nat {
    BigUint::from(base).pow(exp)
}
