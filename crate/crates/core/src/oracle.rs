//! Brute-force enumeration of split squares by root, plus cross-checks of
//! the generators against it.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::classifier::{classify_root, ClassifyOptions, SplitWitness};
use crate::error::{Error, Result};
use crate::generators::{divisor_pair, family_stream, quartering_ladder, FamilyCase};
use crate::numeric::{digit_count, Natural};
use crate::{Nat, WideNat};

#[derive(Debug, Clone)]
pub struct SearchReport<T = WideNat> {
    pub z_max: u64,
    pub zeros_filter: Option<u32>,
    /// Sorted by `(total, right_width)`.
    pub witnesses: Vec<SplitWitness<T>>,
    pub elapsed: Duration,
    /// Distinct totals per decimal length.
    pub counts_by_digits: BTreeMap<u32, u64>,
}

impl<T: Natural> SearchReport<T> {
    /// Distinct totals, strictly increasing.
    pub fn totals(&self) -> Vec<T> {
        let mut out: Vec<T> = Vec::new();
        for w in &self.witnesses {
            if out.last() != Some(&w.total) {
                out.push(w.total.clone());
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Roots per work unit.
    pub block: u64,
    /// `Some(1)` scans on the calling thread; otherwise the rayon pool is
    /// used, `workers` blocks at a time.
    pub workers: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            block: 1 << 16,
            workers: None,
        }
    }
}

/// Witnesses for every root in `lo..=hi`, in root order.
///
/// Roots divisible by 10 are skipped: then `10 | z²`, so every right block
/// `z² mod 10^L` is divisible by 10 and no default witness exists.
pub fn scan_range<T: Natural>(lo: u64, hi: u64, zeros_filter: Option<u32>) -> Vec<SplitWitness<T>> {
    let opts = ClassifyOptions {
        zeros_filter,
        ..ClassifyOptions::default()
    };
    let mut out = Vec::new();
    for z in lo..=hi {
        if z % 10 == 0 {
            continue;
        }
        let root = T::from_u64(z).expect("root fits the total type");
        out.extend(classify_root(&root, &opts));
    }
    out
}

/// Sorts and deduplicates independently produced batches.
pub fn merge_batches<T: Natural>(
    batches: impl IntoIterator<Item = Vec<SplitWitness<T>>>,
) -> Vec<SplitWitness<T>> {
    let mut all: Vec<SplitWitness<T>> = batches.into_iter().flatten().collect();
    all.sort_by(|a, b| (&a.total, a.right_width).cmp(&(&b.total, b.right_width)));
    all.dedup();
    all
}

fn check_bound<T: Natural>(z_max: u64) -> Result<()> {
    if z_max < 2 {
        return Err(Error::InvalidParams(format!(
            "z_max must be >= 2, got {z_max}"
        )));
    }
    T::from_u64(z_max)
        .and_then(|z| z.checked_mul(&z))
        .map(|_| ())
        .ok_or(Error::Overflow)
}

/// Scans `[2, z_max]`, handing each finished block to `on_batch` in root
/// order together with the last root it covers.
pub fn enumerate_streaming<T, F>(
    z_max: u64,
    zeros_filter: Option<u32>,
    opts: SearchOptions,
    mut on_batch: F,
) -> Result<SearchReport<T>>
where
    T: Natural,
    F: FnMut(&[SplitWitness<T>], u64) -> Result<()>,
{
    check_bound::<T>(z_max)?;
    let start = Instant::now();
    let block = opts.block.max(1);
    let ranges: Vec<(u64, u64)> = (0..)
        .map(|i: u64| 2 + i * block)
        .take_while(|&lo| lo <= z_max)
        .map(|lo| (lo, lo.saturating_add(block - 1).min(z_max)))
        .collect();

    let wave = match opts.workers {
        Some(w) => w.max(1),
        None => rayon::current_num_threads().max(1) * 4,
    };
    let mut witnesses = Vec::new();
    for chunk in ranges.chunks(wave) {
        let batches: Vec<Vec<SplitWitness<T>>> = if opts.workers == Some(1) {
            chunk
                .iter()
                .map(|&(lo, hi)| scan_range(lo, hi, zeros_filter))
                .collect()
        } else {
            chunk
                .par_iter()
                .map(|&(lo, hi)| scan_range(lo, hi, zeros_filter))
                .collect()
        };
        for (batch, &(_, hi)) in batches.into_iter().zip(chunk) {
            on_batch(&batch, hi)?;
            witnesses.extend(batch);
        }
    }

    // Roots ascend, so totals already do; the merge only normalizes.
    let witnesses = merge_batches([witnesses]);
    let mut counts_by_digits = BTreeMap::new();
    let mut last: Option<&T> = None;
    for w in &witnesses {
        if last != Some(&w.total) {
            *counts_by_digits.entry(digit_count(&w.total)).or_insert(0) += 1;
            last = Some(&w.total);
        }
    }
    Ok(SearchReport {
        z_max,
        zeros_filter,
        witnesses,
        elapsed: start.elapsed(),
        counts_by_digits,
    })
}

/// All split squares `z²` with `2 ≤ z ≤ z_max`, optionally restricted to an
/// exact zero gap.
pub fn enumerate_split_squares<T: Natural>(
    z_max: u64,
    zeros_filter: Option<u32>,
) -> Result<SearchReport<T>> {
    enumerate_streaming(z_max, zeros_filter, SearchOptions::default(), |_, _| Ok(()))
}

/// Split-square counts by decimal length of the total.
pub fn density_report(z_max: u64) -> Result<BTreeMap<u32, u64>> {
    Ok(enumerate_split_squares::<WideNat>(z_max, None)?.counts_by_digits)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MissingTotal {
    pub source: String,
    pub total: Nat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckReport {
    pub candidates_checked: usize,
    pub confirmed: usize,
    /// Generated totals the enumeration did not find. Must be empty.
    pub missing_from_oracle: Vec<MissingTotal>,
    /// Enumerated totals no generator produced.
    pub oracle_not_generated: usize,
}

impl CrossCheckReport {
    pub fn is_consistent(&self) -> bool {
        self.missing_from_oracle.is_empty()
    }
}

/// Every generated split square `z²` with `z ≤ z_max`, labelled by source.
pub fn generated_up_to(z_max: u64) -> Result<Vec<(String, SplitWitness<Nat>)>> {
    let limit = Nat::from(z_max);
    let total_limit = &limit * &limit;
    // Every family and ladder root at exponent α is at least 10^α, so
    // α ≤ digits(z_max) covers all of them.
    let alpha_bound = digit_count(&z_max) + 1;
    let mut out = Vec::new();

    for case in [FamilyCase::PowerOfTwo, FamilyCase::PowerOfFive] {
        for c in family_stream(case, alpha_bound)? {
            if c.z.as_ref().is_some_and(|z| z <= &limit) {
                let label = format!(
                    "family case {} alpha={} beta={}",
                    case, c.params.alpha, c.params.beta
                );
                out.push((label, c.witness.expect("verified candidate")));
            }
        }
    }
    for alpha in 3..=alpha_bound.max(3) {
        let p = divisor_pair(alpha)?;
        for w in [p.c_witness, p.d_witness] {
            if w.total <= total_limit {
                out.push((format!("pair alpha={alpha}"), w));
            }
        }
    }
    for alpha in 2..=alpha_bound.max(2) {
        for step in quartering_ladder(alpha)? {
            if step.z > limit {
                continue;
            }
            for w in step.witness.into_iter().chain(step.other_witnesses) {
                out.push((format!("ladder alpha={alpha} k={}", step.k), w));
            }
        }
    }
    Ok(out)
}

/// Checks that every generated total up to `z_max²` appears, with the same
/// witness, in the brute-force enumeration.
pub fn cross_check(z_max: u64) -> Result<CrossCheckReport> {
    let report = enumerate_split_squares::<WideNat>(z_max, None)?;
    let oracle: BTreeSet<SplitWitness<Nat>> = report
        .witnesses
        .iter()
        .map(|w| w.convert::<Nat>().expect("u128 converts to BigUint"))
        .collect();
    let oracle_totals: BTreeSet<&Nat> = oracle.iter().map(|w| &w.total).collect();

    let generated = generated_up_to(z_max)?;
    let mut generated_totals = BTreeSet::new();
    let mut confirmed = 0;
    let mut missing = Vec::new();
    for (source, w) in &generated {
        generated_totals.insert(w.total.clone());
        if oracle_totals.contains(&w.total) && oracle.contains(w) {
            confirmed += 1;
        } else {
            missing.push(MissingTotal {
                source: source.clone(),
                total: w.total.clone(),
            });
        }
    }
    Ok(CrossCheckReport {
        candidates_checked: generated.len(),
        confirmed,
        missing_from_oracle: missing,
        oracle_not_generated: oracle_totals
            .iter()
            .filter(|t| !generated_totals.contains(**t))
            .count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_scan() {
        let r = enumerate_split_squares::<u64>(50, Some(0)).unwrap();
        assert_eq!(r.totals(), [49, 169, 361, 1225, 1444, 1681]);
        assert_eq!(r.counts_by_digits, BTreeMap::from([(2, 1), (3, 2), (4, 3)]));
        assert!(enumerate_split_squares::<u64>(50, Some(1))
            .unwrap()
            .witnesses
            .is_empty());
    }

    #[test]
    fn tiny_bounds() {
        // Nothing below 49 = 7^2; the first hit needs z_max >= 7.
        let r = enumerate_split_squares::<u64>(9, None).unwrap();
        assert_eq!(r.totals(), [49]);
        assert!(density_report(6).unwrap().values().all(|&c| c == 0));
        assert_eq!(density_report(9).unwrap(), BTreeMap::from([(2, 1)]));
        assert!(matches!(
            enumerate_split_squares::<u64>(1, None),
            Err(Error::InvalidParams(_))
        ));
        assert_eq!(
            enumerate_split_squares::<u32>(100_000, None).unwrap_err(),
            Error::Overflow
        );
    }

    #[test]
    fn streaming_batches_arrive_in_order() {
        let mut seen = Vec::new();
        let mut last_hi = 0;
        let opts = SearchOptions {
            block: 97,
            workers: Some(3),
        };
        let report = enumerate_streaming::<u64, _>(2_000, None, opts, |batch, hi| {
            assert!(hi > last_hi);
            last_hi = hi;
            seen.extend_from_slice(batch);
            Ok(())
        })
        .unwrap();
        assert_eq!(last_hi, 2_000);
        assert_eq!(seen, report.witnesses);
    }

    #[test]
    fn multiple_witnesses_are_kept() {
        // 2225² = 4950625 reads as 49|50625 and 4|950625.
        let r = enumerate_split_squares::<u64>(2225, None).unwrap();
        let hits: Vec<_> = r.witnesses.iter().filter(|w| w.total == 4950625).collect();
        assert_eq!(hits.len(), 2);
        assert!(hits[0].right_width < hits[1].right_width);
    }

    #[test]
    fn cross_check_small() {
        let r = cross_check(100).unwrap();
        assert!(r.is_consistent());
        assert!(r.confirmed >= 1);

        let r = cross_check(10_000).unwrap();
        assert!(r.is_consistent(), "{:?}", r.missing_from_oracle);
        assert!(r.confirmed >= 2);
        assert!(r.oracle_not_generated > 0);

        let r = cross_check(2).unwrap();
        assert_eq!(r.confirmed, 0);
        assert!(r.missing_from_oracle.is_empty());
    }
}
