//! Repeated halving of one Pythagorean triple and the divisibility chains
//! and zero-gap examples read off it.
//!
//! Starting from `a = 10^α − 2^(α−1)`, `n = 2^(α−1)`,
//! `x = (a−n)(a+n)/(2n) = (5^α − 1)·10^α` and `z = x + n`, each step divides
//! `(z, x, a)` by two. Dividing every term of `z² = x² + a²` by 4 keeps the
//! identity, and consecutive totals divide one another.

use std::collections::BTreeSet;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use super::pow_nat;
use crate::classifier::{find_split_witnesses, ClassifyOptions};
use crate::error::{Error, Result};
use crate::numeric::digit_count;
use crate::serial::{decimal, decimal_vec};
use crate::{Nat, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LadderStep {
    #[serde(with = "decimal")]
    pub k: u32,
    #[serde(with = "decimal")]
    pub z: Nat,
    #[serde(with = "decimal")]
    pub x: Nat,
    #[serde(with = "decimal")]
    pub a: Nat,
    /// `2α − digits(a_k²)`.
    #[serde(with = "decimal")]
    pub deficit: u32,
    /// The witness of `z_k²` whose right root is `a_k`.
    pub witness: Option<Witness>,
    pub other_witnesses: Vec<Witness>,
}

impl LadderStep {
    pub fn total(&self) -> Nat {
        &self.z * &self.z
    }

    /// Gap of the canonical witness, if there is one.
    pub fn zeros_between(&self) -> Option<u32> {
        self.witness.as_ref().map(|w| w.zeros_between)
    }
}

/// All halving steps for `α ≥ 2`, from `k = 0` until `x_k` or `a_k` is odd.
pub fn quartering_ladder(alpha: u32) -> Result<Vec<LadderStep>> {
    if alpha < 2 {
        return Err(Error::InvalidParams(format!(
            "ladder needs alpha >= 2, got {alpha}"
        )));
    }
    let n = pow_nat(2, alpha - 1);
    let mut a = pow_nat(10, alpha) - &n;
    let mut x = (&a - &n) * (&a + &n) / (&n * 2u32);
    let mut z = &x + &n;

    let mut triples = Vec::new();
    loop {
        let more = x.is_even() && a.is_even();
        triples.push((z.clone(), x.clone(), a.clone()));
        if !more {
            break;
        }
        z /= 2u32;
        x /= 2u32;
        a /= 2u32;
    }

    let full_width = 2 * alpha;
    let steps = triples
        .into_par_iter()
        .enumerate()
        .map(|(k, (z, x, a))| {
            let mut witnesses = find_split_witnesses(&(&z * &z), &ClassifyOptions::default());
            let canonical = witnesses
                .iter()
                .position(|w| w.right_root == a)
                .map(|i| witnesses.remove(i));
            LadderStep {
                k: k as u32,
                deficit: full_width - digit_count(&(&a * &a)),
                z,
                x,
                a,
                witness: canonical,
                other_witnesses: witnesses,
            }
        })
        .collect();
    Ok(steps)
}

/// A chain `l_1 | l_2 | … ` of split squares taken from one ladder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainRecord {
    #[serde(with = "decimal")]
    pub r: u32,
    #[serde(with = "decimal")]
    pub alpha: u32,
    /// Increasing; each divides the next.
    #[serde(with = "decimal_vec")]
    pub members: Vec<Nat>,
    /// `members[i + 1] / members[i]`, each a power of 4.
    #[serde(with = "decimal_vec")]
    pub ratios: Vec<Nat>,
    /// Ladder index of each member.
    pub steps: Vec<u32>,
    pub witnesses: Vec<Witness>,
}

/// Builds a chain of at least `r` members from the ladder at
/// `α = 2^(3(r−2)+2)`, keeping the steps whose canonical witness has no
/// interior zeros.
pub fn divisor_chain(r: u32) -> Result<ChainRecord> {
    if r < 2 {
        return Err(Error::InvalidParams(format!(
            "chain length must be >= 2, got {r}"
        )));
    }
    let exponent = 3 * (r - 2) + 2;
    let alpha = 1u32
        .checked_shl(exponent)
        .filter(|_| exponent < 32)
        .ok_or(Error::Overflow)?;
    let ladder = quartering_ladder(alpha)?;

    let mut picked: Vec<&LadderStep> = ladder
        .iter()
        .filter(|s| s.zeros_between() == Some(0))
        .collect();
    picked.reverse();
    if picked.len() < r as usize {
        return Err(Error::ChainShortfall {
            requested: r,
            alpha,
            found: picked.len(),
        });
    }

    let members: Vec<Nat> = picked.iter().map(|s| s.total()).collect();
    let ratios = members.windows(2).map(|w| &w[1] / &w[0]).collect();
    Ok(ChainRecord {
        r,
        alpha,
        members,
        ratios,
        steps: picked.iter().map(|s| s.k).collect(),
        witnesses: picked
            .iter()
            .map(|s| s.witness.clone().expect("filtered on witness"))
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZerosStream {
    #[serde(with = "decimal")]
    pub zeros: u32,
    pub witnesses: Vec<Witness>,
    /// False when the ceiling was reached before `count` examples.
    pub complete: bool,
    #[serde(with = "decimal")]
    pub alpha_reached: u32,
}

/// Collects `count` ladder-step witnesses with exactly `s` interior zeros,
/// scanning ladders for `α = alpha_start ..= alpha_ceiling`.
pub fn zeros_between_stream(
    s: u32,
    count: usize,
    alpha_start: u32,
    alpha_ceiling: u32,
) -> Result<ZerosStream> {
    if count == 0 {
        return Err(Error::InvalidParams("count must be at least 1".into()));
    }
    if alpha_start < 2 {
        return Err(Error::InvalidParams(format!(
            "alpha_start must be >= 2, got {alpha_start}"
        )));
    }
    let mut seen = BTreeSet::new();
    let mut witnesses = Vec::new();
    let mut alpha_reached = alpha_start;
    for alpha in alpha_start..=alpha_ceiling {
        alpha_reached = alpha;
        for step in quartering_ladder(alpha)? {
            let found = step
                .witness
                .into_iter()
                .chain(step.other_witnesses)
                .filter(|w| w.zeros_between == s);
            for w in found {
                if seen.insert(w.total.clone()) {
                    witnesses.push(w);
                    if witnesses.len() == count {
                        return Ok(ZerosStream {
                            zeros: s,
                            witnesses,
                            complete: true,
                            alpha_reached,
                        });
                    }
                }
            }
        }
    }
    Ok(ZerosStream {
        zeros: s,
        witnesses,
        complete: false,
        alpha_reached,
    })
}
