//! Exact natural-number helpers: square roots, decimal digits, and the
//! 2- and 5-adic valuations used by the divisibility checks.
//!
//! Everything is generic over [`Natural`], which is implemented for the
//! fixed-width unsigned types (checked against overflow) and for
//! [`BigUint`].

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{CheckedAdd, CheckedMul, FromPrimitive, ToPrimitive, Unsigned};

use crate::error::{Error, Result};

/// An unsigned integer type the library can compute with.
pub trait Natural:
    Clone
    + Ord
    + Hash
    + Debug
    + Display
    + FromStr
    + Integer
    + Unsigned
    + Roots
    + CheckedAdd
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Number of decimal digits; zero has one digit.
    fn digit_count(&self) -> u32;

    /// Lossless conversion of a small constant. All implementors hold `u32`.
    fn small(v: u32) -> Self {
        Self::from_u32(v).expect("u32 fits every Natural")
    }
}

macro_rules! impl_natural_prim {
    ($($t:ty)*) => {$(
        impl Natural for $t {
            #[inline]
            fn digit_count(&self) -> u32 {
                self.checked_ilog10().map_or(1, |d| d + 1)
            }
        }
    )*};
}
impl_natural_prim!(u32 u64 u128);

impl Natural for BigUint {
    fn digit_count(&self) -> u32 {
        let bits = self.bits();
        if bits == 0 {
            return 1;
        }
        // 2^(bits-1) <= self < 2^bits pins the answer to one of two values;
        // the float estimate is then corrected exactly.
        let mut d = ((bits - 1) as f64 * std::f64::consts::LOG10_2).floor() as u32 + 1;
        let ten = BigUint::from(10u32);
        while *self >= ten.pow(d) {
            d += 1;
        }
        while d > 1 && *self < ten.pow(d - 1) {
            d -= 1;
        }
        d
    }
}

/// Primes whose valuations the divisibility arguments need.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SmallPrime {
    Two,
    Five,
}

impl SmallPrime {
    pub fn value(self) -> u32 {
        match self {
            SmallPrime::Two => 2,
            SmallPrime::Five => 5,
        }
    }
}

/// Floor square root: the `r` with `r² ≤ n < (r+1)²`.
pub fn isqrt<T: Natural>(n: &T) -> T {
    n.sqrt()
}

// Bit i of QR_m is set iff i is a quadratic residue mod m.
const QR_64: u64 = 0x0202_0212_0203_0213;
const QR_63: u64 = 0x0402_4830_1245_0293;
const QR_65: u64 = 0x218a_0198_6601_4613;
const QR_11: u64 = 0x23b;
const RESIDUE_MODULUS: u32 = 64 * 63 * 65 * 11;

/// Returns the square root of `n` when `n` is a perfect square.
pub fn is_perfect_square<T: Natural>(n: &T) -> Option<T> {
    let m = (n.clone() % T::small(RESIDUE_MODULUS))
        .to_u64()
        .expect("residue below modulus");
    if (QR_64 >> (m % 64)) & 1 == 0
        || (QR_63 >> (m % 63)) & 1 == 0
        || (QR_65 >> ((m % 65) & 63)) & 1 == 0
        || (QR_11 >> (m % 11)) & 1 == 0
    {
        return None;
    }
    let r = isqrt(n);
    if r.clone() * r.clone() == *n {
        Some(r)
    } else {
        None
    }
}

/// Number of decimal digits of `n`, with `digit_count(0) == 1`.
pub fn digit_count<T: Natural>(n: &T) -> u32 {
    n.digit_count()
}

/// `10^k`, or [`Error::Overflow`] if it does not fit in `T`.
pub fn pow10<T: Natural>(k: u32) -> Result<T> {
    num_traits::checked_pow(T::small(10), k as usize).ok_or(Error::Overflow)
}

/// Splits `n` into `(n div 10^l, n mod 10^l)`.
///
/// `l` must leave at least one digit on each side.
pub fn split_at<T: Natural>(n: &T, l: u32) -> Result<(T, T)> {
    let digits = n.digit_count();
    if l == 0 || l >= digits {
        return Err(Error::InvalidSplit {
            position: l,
            digits,
        });
    }
    Ok(n.div_rem(&pow10(l)?))
}

/// `p · 10^(s + digits(q)) + q`: the decimal digits of `p`, then `s` zeros,
/// then the digits of `q`.
pub fn concat_with_zeros<T: Natural>(p: &T, s: u32, q: &T) -> Result<T> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPart);
    }
    let width = s.checked_add(q.digit_count()).ok_or(Error::Overflow)?;
    p.checked_mul(&pow10(width)?)
        .and_then(|hi| hi.checked_add(q))
        .ok_or(Error::Overflow)
}

/// Exponent of `prime` in `n`.
pub fn padic_valuation<T: Natural>(n: &T, prime: SmallPrime) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let p = T::small(prime.value());
    let mut rest = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        rest = q;
        e += 1;
    }
}

/// Parses a plain decimal string (ASCII digits only, no sign or spaces).
pub fn parse_decimal<T: Natural>(s: &str) -> Result<T> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(s.to_string()));
    }
    s.parse::<T>().map_err(|_| Error::Parse(s.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&0u64), 0);
        assert_eq!(41u64 * 41, 1681);
        assert_eq!(isqrt(&1681u64), 41);
        assert_eq!(isqrt(&2u64), 1);
        assert_eq!(isqrt(&BigUint::from(1681u32)), BigUint::from(41u32));
    }

    #[test]
    fn perfect_square_examples() {
        assert_eq!(is_perfect_square(&49u64), Some(7));
        assert_eq!(is_perfect_square(&48u64), None);
        assert_eq!(996u64 * 996, 992016);
        assert_eq!(is_perfect_square(&992016u64), Some(996));
        assert_eq!(is_perfect_square(&0u64), Some(0));
        assert_eq!(is_perfect_square(&1u32), Some(1));
    }

    #[test]
    fn perfect_square_filter_agrees_with_root_check() {
        for n in 0u64..200_000 {
            let r = isqrt(&n);
            assert_eq!(is_perfect_square(&n).is_some(), r * r == n, "n = {n}");
        }
    }

    #[test]
    fn digit_count_examples() {
        assert_eq!(digit_count(&0u64), 1);
        assert_eq!(9992u64 * 9992, 99840064);
        assert_eq!(digit_count(&99840064u64), 8);
        assert_eq!(2498u64 * 2498, 6240004);
        assert_eq!(digit_count(&6240004u64), 7);
        assert_eq!(digit_count(&BigUint::zero()), 1);
        assert_eq!(digit_count(&big("99840064")), 8);
        assert_eq!(digit_count(&u128::MAX), 39);
    }

    #[test]
    fn digit_count_big_powers_of_ten() {
        for k in 0..400 {
            let p: BigUint = pow10(k).unwrap();
            assert_eq!(digit_count(&p), k + 1);
            if k > 0 {
                assert_eq!(digit_count(&(p - 1u32)), k);
            }
        }
    }

    #[test]
    fn pow10_examples() {
        assert_eq!(pow10::<u64>(0).unwrap(), 1);
        assert_eq!(pow10::<u64>(2).unwrap(), 100);
        assert_eq!(pow10::<u64>(4).unwrap(), 10000);
        assert_eq!(pow10::<u64>(20), Err(Error::Overflow));
        assert_eq!(pow10::<u128>(38).unwrap(), 10u128.pow(38));
    }

    #[test]
    fn split_at_examples() {
        assert_eq!(split_at(&1681u64, 2).unwrap(), (16, 81));
        assert_eq!(split_at(&49u64, 1).unwrap(), (4, 9));
        assert_eq!(1560002u64 * 1560002, 2433606240004);
        assert_eq!(split_at(&2433606240004u64, 8).unwrap(), (24336, 6240004));
    }

    #[test]
    fn split_at_rejects_out_of_range_positions() {
        assert_eq!(
            split_at(&1681u64, 0),
            Err(Error::InvalidSplit {
                position: 0,
                digits: 4
            })
        );
        assert!(split_at(&1681u64, 4).is_err());
        assert!(split_at(&7u64, 1).is_err());
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat_with_zeros(&4u64, 0, &9).unwrap(), 49);
        assert_eq!(
            concat_with_zeros(&24336u64, 1, &6240004).unwrap(),
            2433606240004
        );
        assert_eq!(concat_with_zeros(&1u64, 0, &225).unwrap(), 1225);
        assert_eq!(35u64 * 35, 1225);
    }

    #[test]
    fn concat_rejects_zero_blocks_and_overflow() {
        assert_eq!(concat_with_zeros(&0u64, 0, &9), Err(Error::ZeroPart));
        assert_eq!(concat_with_zeros(&4u64, 0, &0), Err(Error::ZeroPart));
        assert_eq!(concat_with_zeros(&4u32, 9, &9), Err(Error::Overflow));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(&1600u64, SmallPrime::Two).unwrap(), 6);
        assert_eq!(padic_valuation(&1600u64, SmallPrime::Five).unwrap(), 2);
        // (5^4 - 1) * 2^4 * 5^4
        assert_eq!(624u64 * 16 * 625, 6240000);
        assert_eq!(padic_valuation(&6240000u64, SmallPrime::Five).unwrap(), 4);
        assert_eq!(padic_valuation(&6240000u64, SmallPrime::Two).unwrap(), 8);
        assert_eq!(
            padic_valuation(&0u64, SmallPrime::Two),
            Err(Error::ZeroValuation)
        );
    }

    #[test]
    fn parse_decimal_is_strict() {
        assert_eq!(parse_decimal::<u64>("49").unwrap(), 49);
        assert!(parse_decimal::<u64>("12x").is_err());
        assert!(parse_decimal::<u64>("+12").is_err());
        assert!(parse_decimal::<u64>("").is_err());
        assert!(parse_decimal::<u32>("99999999999").is_err());
        assert_eq!(
            parse_decimal::<BigUint>("123456789012345678901234567890").unwrap(),
            big("123456789012345678901234567890")
        );
    }
}
