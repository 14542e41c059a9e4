//! The two-parameter Pythagorean families `x² + a² = z²` with
//! `a = 10^α − n` and `z = x + n`, for `n = 2^β` or `n = 5^β`.
//!
//! When `10^α` exactly divides `x` and `a²` has `2α` digits, `z²` reads as
//! `(x/10^α)²` followed by `a²`.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::pow_nat;
use crate::classifier::{find_split_witnesses, ClassifyOptions};
use crate::error::{Error, Result};
use crate::numeric::{digit_count, padic_valuation, SmallPrime};
use crate::serial::{decimal, decimal_opt};
use crate::{Nat, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyCase {
    /// `n = 2^β`
    PowerOfTwo,
    /// `n = 5^β`
    PowerOfFive,
}

impl FamilyCase {
    pub fn from_id(id: u32) -> Result<Self> {
        match id {
            1 => Ok(FamilyCase::PowerOfTwo),
            2 => Ok(FamilyCase::PowerOfFive),
            _ => Err(Error::InvalidParams(format!(
                "case must be 1 or 2, got {id}"
            ))),
        }
    }

    pub fn id(self) -> u32 {
        match self {
            FamilyCase::PowerOfTwo => 1,
            FamilyCase::PowerOfFive => 2,
        }
    }
}

impl fmt::Display for FamilyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyParams {
    #[serde(serialize_with = "decimal::serialize")]
    pub alpha: u32,
    #[serde(serialize_with = "decimal::serialize")]
    pub beta: u32,
    #[serde(rename = "case", serialize_with = "decimal::serialize")]
    pub case: FamilyCase,
}

impl FamilyParams {
    pub fn new(alpha: u32, beta: u32, case: FamilyCase) -> Result<Self> {
        if alpha == 0 {
            return Err(Error::InvalidParams("alpha must be at least 1".into()));
        }
        if beta > alpha {
            return Err(Error::InvalidParams(format!(
                "beta = {beta} exceeds alpha = {alpha}"
            )));
        }
        Ok(FamilyParams { alpha, beta, case })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RejectReason {
    /// `a²` does not have exactly `2α` digits.
    DigitCountMismatch,
    /// `x²` is not `10^(2α)` times a square free of a factor 10.
    ValuationMismatch,
    DegenerateALeN,
    NonIntegralX,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let code = match self {
            RejectReason::DigitCountMismatch => "DIGIT_COUNT_MISMATCH",
            RejectReason::ValuationMismatch => "VALUATION_MISMATCH",
            RejectReason::DegenerateALeN => "DEGENERATE_A_LE_N",
            RejectReason::NonIntegralX => "NON_INTEGRAL_X",
        };
        f.write_str(code)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum CandidateStatus {
    Verified,
    Rejected(RejectReason),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyCandidate {
    #[serde(flatten)]
    pub params: FamilyParams,
    #[serde(with = "decimal")]
    pub k: Nat,
    #[serde(with = "decimal")]
    pub n: Nat,
    #[serde(with = "decimal")]
    pub a: Nat,
    /// Absent when `a ≤ n` or `2n ∤ (a−n)(a+n)`.
    #[serde(with = "decimal_opt")]
    pub x: Option<Nat>,
    #[serde(with = "decimal_opt")]
    pub z: Option<Nat>,
    #[serde(flatten)]
    pub status: CandidateStatus,
    pub witness: Option<Witness>,
}

impl FamilyCandidate {
    pub fn is_verified(&self) -> bool {
        self.status == CandidateStatus::Verified
    }

    /// `z²`, when `z` exists.
    pub fn total(&self) -> Option<Nat> {
        self.z.as_ref().map(|z| z * z)
    }
}

/// Builds and classifies the family member for `params`.
pub fn family_candidate(params: FamilyParams) -> Result<FamilyCandidate> {
    let FamilyParams { alpha, beta, case } =
        FamilyParams::new(params.alpha, params.beta, params.case)?;
    let (k, n) = match case {
        FamilyCase::PowerOfTwo => (
            pow_nat(5, alpha) * pow_nat(2, alpha - beta) - 1u32,
            pow_nat(2, beta),
        ),
        FamilyCase::PowerOfFive => (
            pow_nat(5, alpha - beta) * pow_nat(2, alpha) - 1u32,
            pow_nat(5, beta),
        ),
    };
    let a = &k * &n;
    debug_assert_eq!(&a + &n, pow_nat(10, alpha));

    let rejected = |reason, x, z| FamilyCandidate {
        params,
        k: k.clone(),
        n: n.clone(),
        a: a.clone(),
        x,
        z,
        status: CandidateStatus::Rejected(reason),
        witness: None,
    };

    if a <= n {
        return Ok(rejected(RejectReason::DegenerateALeN, None, None));
    }
    let numerator = (&a - &n) * (&a + &n);
    let denominator = &n * 2u32;
    if !(&numerator % &denominator).is_zero() {
        return Ok(rejected(RejectReason::NonIntegralX, None, None));
    }
    let x = numerator / denominator;
    let z = &x + &n;

    let a_sq = &a * &a;
    let witness = find_split_witnesses(&(&z * &z), &ClassifyOptions::with_zeros(0))
        .into_iter()
        .find(|w| w.right_square == a_sq);

    match witness {
        Some(w) => Ok(FamilyCandidate {
            params,
            k,
            n,
            a,
            x: Some(x),
            z: Some(z),
            status: CandidateStatus::Verified,
            witness: Some(w),
        }),
        None => {
            let reason = if digit_count(&a_sq) != 2 * alpha {
                RejectReason::DigitCountMismatch
            } else {
                RejectReason::ValuationMismatch
            };
            Ok(rejected(reason, Some(x), Some(z)))
        }
    }
}

/// Checks the construction's digit conditions directly, without the
/// classifier: `a²` has `2α` digits, `10 ∤ a`, and `x = 10^α · m` with
/// `m ≥ 1` and `10 ∤ m`.
pub fn satisfies_digit_conditions(c: &FamilyCandidate) -> bool {
    let alpha = c.params.alpha;
    let Some(x) = &c.x else {
        return false;
    };
    if x.is_zero() || digit_count(&(&c.a * &c.a)) != 2 * alpha {
        return false;
    }
    if (&c.a % 10u32).is_zero() {
        return false;
    }
    let v2 = padic_valuation(x, SmallPrime::Two).expect("x > 0");
    let v5 = padic_valuation(x, SmallPrime::Five).expect("x > 0");
    // m = x / 10^α is divisible by 10 iff both valuations exceed α.
    v2 >= alpha && v5 >= alpha && (v2 == alpha || v5 == alpha)
}

/// Every `(α, β)` cell for one case with `1 ≤ α ≤ alpha_max`, verified or
/// not, ordered by `α` then `β`.
pub fn family_grid(case: FamilyCase, alpha_max: u32) -> Result<Vec<FamilyCandidate>> {
    if alpha_max == 0 {
        return Err(Error::InvalidParams("alpha_max must be at least 1".into()));
    }
    let cells: Vec<FamilyParams> = (1..=alpha_max)
        .flat_map(|alpha| (0..=alpha).map(move |beta| FamilyParams { alpha, beta, case }))
        .collect();
    cells.into_par_iter().map(family_candidate).collect()
}

/// Verified candidates for `α ≤ alpha_max`, deduplicated by `z²`.
pub fn family_stream(case: FamilyCase, alpha_max: u32) -> Result<Vec<FamilyCandidate>> {
    let mut seen = BTreeSet::new();
    Ok(family_grid(case, alpha_max)?
        .into_iter()
        .filter(|c| c.is_verified())
        .filter(|c| seen.insert(c.z.clone()))
        .collect())
}
