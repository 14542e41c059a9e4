use num_traits::Zero;
use serde::Serialize;

use super::pow_nat;
use crate::classifier::{find_split_witnesses, ClassifyOptions};
use crate::error::{Error, Result};
use crate::serial::decimal;
use crate::{Nat, Witness};

/// Two split squares `c | d` with `d = 4c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    #[serde(with = "decimal")]
    pub alpha: u32,
    #[serde(with = "decimal")]
    pub c: Nat,
    #[serde(with = "decimal")]
    pub d: Nat,
    pub c_witness: Witness,
    pub d_witness: Witness,
}

/// Picks the zero-gap witness of `total` whose right block is `root²`,
/// falling back to any zero-gap witness.
fn zero_gap_witness(total: &Nat, root: &Nat) -> Option<Witness> {
    let mut ws = find_split_witnesses(total, &ClassifyOptions::with_zeros(0));
    match ws.iter().position(|w| &w.right_root == root) {
        Some(i) => Some(ws.swap_remove(i)),
        None => ws.into_iter().next(),
    }
}

/// `d = x² + a²` for `a = 10^α − 2^(α−1)`, `n = 2^(α−1)`,
/// `x = (a−n)(a+n)/(2n)`, and `c = (x/2)² + (a/2)²`. Requires `α > 2`.
pub fn divisor_pair(alpha: u32) -> Result<PairRecord> {
    if alpha <= 2 {
        return Err(Error::InvalidParams(format!(
            "pair construction needs alpha > 2, got {alpha}"
        )));
    }
    let n = pow_nat(2, alpha - 1);
    let a = pow_nat(10, alpha) - &n;
    let x = (&a - &n) * (&a + &n) / (&n * 2u32);
    let d = &x * &x + &a * &a;
    let (x0, a0) = (&x / 2u32, &a / 2u32);
    let c = &x0 * &x0 + &a0 * &a0;

    if !(&d % &c).is_zero() || d != &c * 4u32 {
        return Err(Error::Unverified(format!("d != 4c at alpha = {alpha}")));
    }
    let d_witness = zero_gap_witness(&d, &a)
        .ok_or_else(|| Error::Unverified(format!("d = {d} has no zero-gap witness")))?;
    let c_witness = zero_gap_witness(&c, &a0)
        .ok_or_else(|| Error::Unverified(format!("c = {c} has no zero-gap witness")))?;
    Ok(PairRecord {
        alpha,
        c,
        d,
        c_witness,
        d_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::verify_witness;

    fn nat(s: &str) -> Nat {
        s.parse().unwrap()
    }

    #[test]
    fn alpha_three() {
        let p = divisor_pair(3).unwrap();
        assert_eq!(p.c, nat("3844248004"));
        assert_eq!(p.d, nat("15376992016"));
        assert_eq!(nat("62002") * nat("62002"), p.c);
        assert_eq!(nat("124004") * nat("124004"), p.d);
        assert_eq!(p.c_witness.left_square, nat("3844"));
        assert_eq!(p.c_witness.right_square, nat("248004"));
        assert_eq!(p.d_witness.left_square, nat("15376"));
        assert_eq!(p.d_witness.right_square, nat("992016"));
        assert!(verify_witness(&p.c_witness) && verify_witness(&p.d_witness));
    }

    #[test]
    fn alpha_four() {
        let p = divisor_pair(4).unwrap();
        assert_eq!(p.c, nat("9734424960016"));
        assert_eq!(p.d, nat("38937699840064"));
        assert_eq!(p.c_witness.left_square, nat("97344"));
        assert_eq!(p.c_witness.right_square, nat("24960016"));
        assert_eq!(p.d_witness.left_square, nat("389376"));
        assert_eq!(p.d_witness.right_square, nat("99840064"));
    }

    #[test]
    fn small_alpha_rejected() {
        assert!(matches!(divisor_pair(2), Err(Error::InvalidParams(_))));
        assert!(divisor_pair(0).is_err());
    }
}
