//! Parsing and formatting of exact rationals as `p/q` strings.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::{BigCount, BigRatio};

/// Parses `"7/2"`, `"-1/3"` or `"5"` into an exact rational.
pub fn parse_ratio(s: &str) -> Result<BigRatio> {
    let bad = || Error::InvalidRational(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRatio::new(num, den))
}

/// Formats a rational as `p/q`, or just `p` when the denominator is 1.
pub fn format_ratio(r: &BigRatio) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Embeds a count into the rationals.
pub fn count_to_ratio(c: &BigCount) -> BigRatio {
    BigRatio::from_integer(BigInt::from(c.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["7/2", "-1/3", "5", "0", "-4"] {
            let r = parse_ratio(s).unwrap();
            assert_eq!(format_ratio(&r), s);
        }
        // non-canonical inputs normalise
        assert_eq!(format_ratio(&parse_ratio("4/2").unwrap()), "2");
        assert_eq!(format_ratio(&parse_ratio("2/-4").unwrap()), "-1/2");
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "a", "1/0", "1/2/3", "1.5"] {
            assert!(parse_ratio(s).is_err(), "accepted {s:?}");
        }
    }
}
