//! Split-square recognition.
//!
//! A witness records one way of reading the decimal digits of a square `N`
//! as a square `p`, then `s` zero digits, then a square `q`:
//! `N = p · 10^L + q` where `L = s + digits(q)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::numeric::{digit_count, is_perfect_square, pow10, Natural};
use crate::serial::decimal;
use crate::Nat;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(bound(serialize = "T: fmt::Display", deserialize = "T: std::str::FromStr"))]
pub struct SplitWitness<T = Nat> {
    #[serde(with = "decimal")]
    pub total: T,
    #[serde(with = "decimal")]
    pub left_root: T,
    #[serde(with = "decimal")]
    pub right_root: T,
    #[serde(with = "decimal")]
    pub left_square: T,
    #[serde(with = "decimal")]
    pub right_square: T,
    #[serde(with = "decimal")]
    pub zeros_between: u32,
    #[serde(with = "decimal")]
    pub right_width: u32,
}

impl<T: Natural> SplitWitness<T> {
    /// Converts the witness into another integer representation.
    pub fn convert<U: Natural>(&self) -> Option<SplitWitness<U>> {
        let conv = |v: &T| v.to_string().parse::<U>().ok();
        Some(SplitWitness {
            total: conv(&self.total)?,
            left_root: conv(&self.left_root)?,
            right_root: conv(&self.right_root)?,
            left_square: conv(&self.left_square)?,
            right_square: conv(&self.right_square)?,
            zeros_between: self.zeros_between,
            right_width: self.right_width,
        })
    }
}

impl<T: fmt::Display> fmt::Display for SplitWitness<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = [{}]", self.total, self.left_square)?;
        if self.zeros_between > 0 {
            write!(f, "[{}]", "0".repeat(self.zeros_between as usize))?;
        }
        write!(
            f,
            "[{}]  ({}^2, {}^2, s={})",
            self.right_square, self.left_root, self.right_root, self.zeros_between
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Skip numbers that are not themselves perfect squares.
    pub require_total_square: bool,
    /// Accept blocks that are multiples of 10 (the `49·10^(2k)` family).
    pub allow_divisible_by_10_parts: bool,
    /// Keep only witnesses with exactly this many interior zeros.
    pub zeros_filter: Option<u32>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            require_total_square: true,
            allow_divisible_by_10_parts: false,
            zeros_filter: None,
        }
    }
}

impl ClassifyOptions {
    pub fn relaxed() -> Self {
        ClassifyOptions {
            allow_divisible_by_10_parts: true,
            ..Self::default()
        }
    }

    pub fn with_zeros(s: u32) -> Self {
        ClassifyOptions {
            zeros_filter: Some(s),
            ..Self::default()
        }
    }
}

/// First invariant a witness breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessViolation {
    LeftRoot,
    RightRoot,
    ZeroBlock,
    LeftDivisibleBy10,
    RightDivisibleBy10,
    Decomposition,
    Width,
    TotalNotSquare,
}

impl fmt::Display for WitnessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            WitnessViolation::LeftRoot => "left_root^2 != left_square",
            WitnessViolation::RightRoot => "right_root^2 != right_square",
            WitnessViolation::ZeroBlock => "a block is zero",
            WitnessViolation::LeftDivisibleBy10 => "left_square is divisible by 10",
            WitnessViolation::RightDivisibleBy10 => "right_square is divisible by 10",
            WitnessViolation::Decomposition => {
                "total != left_square * 10^right_width + right_square"
            }
            WitnessViolation::Width => "digits(right_square) != right_width - zeros_between",
            WitnessViolation::TotalNotSquare => "total is not a perfect square",
        };
        f.write_str(msg)
    }
}

/// Every way of splitting `n` into two square blocks, by increasing
/// `right_width`.
pub fn find_split_witnesses<T: Natural>(n: &T, opts: &ClassifyOptions) -> Vec<SplitWitness<T>> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    if opts.require_total_square && is_perfect_square(n).is_none() {
        return out;
    }
    let ten = T::small(10);
    let digits = digit_count(n);
    let mut scale = T::one();
    for width in 1..digits {
        // scale = 10^width < n, so the product never overflows.
        scale = scale * ten.clone();
        let (p, q) = n.div_rem(&scale);
        if q.is_zero() {
            continue;
        }
        if !opts.allow_divisible_by_10_parts && (p.is_multiple_of(&ten) || q.is_multiple_of(&ten)) {
            continue;
        }
        let q_digits = digit_count(&q);
        let zeros = width - q_digits;
        if opts.zeros_filter.is_some_and(|s| s != zeros) {
            continue;
        }
        let Some(right_root) = is_perfect_square(&q) else {
            continue;
        };
        let Some(left_root) = is_perfect_square(&p) else {
            continue;
        };
        out.push(SplitWitness {
            total: n.clone(),
            left_root,
            right_root,
            left_square: p,
            right_square: q,
            zeros_between: zeros,
            right_width: width,
        });
    }
    out
}

/// Classifies `z²`. Returns nothing if `z²` does not fit in `T`.
pub fn classify_root<T: Natural>(z: &T, opts: &ClassifyOptions) -> Vec<SplitWitness<T>> {
    match z.checked_mul(z) {
        Some(n) => find_split_witnesses(&n, opts),
        None => Vec::new(),
    }
}

/// Re-checks every witness invariant from the raw fields under default
/// options.
pub fn check_witness<T: Natural>(w: &SplitWitness<T>) -> Result<(), WitnessViolation> {
    check_witness_with(w, &ClassifyOptions::default())
}

/// Like [`check_witness`], honouring the relaxed flags in `opts`.
pub fn check_witness_with<T: Natural>(
    w: &SplitWitness<T>,
    opts: &ClassifyOptions,
) -> Result<(), WitnessViolation> {
    if w.left_root.checked_mul(&w.left_root).as_ref() != Some(&w.left_square) {
        return Err(WitnessViolation::LeftRoot);
    }
    if w.right_root.checked_mul(&w.right_root).as_ref() != Some(&w.right_square) {
        return Err(WitnessViolation::RightRoot);
    }
    if w.left_square.is_zero() || w.right_square.is_zero() {
        return Err(WitnessViolation::ZeroBlock);
    }
    let ten = T::small(10);
    if !opts.allow_divisible_by_10_parts {
        if w.left_square.is_multiple_of(&ten) {
            return Err(WitnessViolation::LeftDivisibleBy10);
        }
        if w.right_square.is_multiple_of(&ten) {
            return Err(WitnessViolation::RightDivisibleBy10);
        }
    }
    let rebuilt = pow10::<T>(w.right_width)
        .ok()
        .and_then(|scale| w.left_square.checked_mul(&scale))
        .and_then(|hi| hi.checked_add(&w.right_square));
    if rebuilt.as_ref() != Some(&w.total) {
        return Err(WitnessViolation::Decomposition);
    }
    if w.right_width.checked_sub(w.zeros_between) != Some(digit_count(&w.right_square)) {
        return Err(WitnessViolation::Width);
    }
    if opts.require_total_square && is_perfect_square(&w.total).is_none() {
        return Err(WitnessViolation::TotalNotSquare);
    }
    Ok(())
}

pub fn verify_witness<T: Natural>(w: &SplitWitness<T>) -> bool {
    check_witness(w).is_ok()
}
