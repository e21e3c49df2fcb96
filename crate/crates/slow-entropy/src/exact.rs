//! Exact arithmetic aliases and small helpers shared across the crate.
//!
//! Everything that touches a decision boundary (orbit vs. partition
//! endpoint, greedy thresholds, gap lengths) is computed in `Rat`;
//! floating point only ever appears after the exact work is done, when a
//! ratio is handed to the regression code or printed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(int(p), int(q))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

/// Fractional part in `[0, 1)`, exact.
pub fn frac(x: &Rat) -> Rat {
    x - x.floor()
}

/// `floor(x)` as a `BigInt`.
pub fn floor_int(x: &Rat) -> Int {
    x.floor().to_integer()
}

/// Distance to the nearest integer, exact, in `[0, 1/2]`.
pub fn dist_nearest_int(x: &Rat) -> Rat {
    let f = frac(x);
    let c = Rat::one() - &f;
    if f <= c {
        f
    } else {
        c
    }
}

/// Parse an exact rational from `"p/q"`, an integer literal, or a plain
/// decimal like `"0.05"` (which is read as 5/100, not via `f64`).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("cannot parse rational from {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: Int = p.trim().parse().map_err(|_| bad())?;
        let q: Int = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((whole, fracpart)) = s.split_once('.') {
        let neg = whole.trim_start().starts_with('-');
        let whole: Int = if whole.is_empty() || whole == "-" {
            Int::zero()
        } else {
            whole.parse().map_err(|_| bad())?
        };
        if fracpart.is_empty() || !fracpart.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: Int = fracpart.parse().map_err(|_| bad())?;
        let scale = Int::from(10u32).pow(fracpart.len() as u32);
        let frac = Rat::new(digits, scale);
        let whole = Rat::from_integer(whole);
        return Ok(if neg { whole - frac } else { whole + frac });
    }
    let n: Int = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(n))
}

/// Serialize as `p/q` unconditionally (integers render as `n/1`), so CSV
/// cells have a single stable shape.
pub fn fmt_rat(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Out-of-range numerator/denominator pairs still have a meaningful
        // quotient; fall back to a scaled division.
        let digits = 18usize;
        let scale = Int::from(10u64.pow(digits as u32));
        let scaled = (x * Rat::from_integer(scale)).to_integer();
        scaled.to_f64().unwrap_or(f64::NAN) / 10f64.powi(digits as i32)
    })
}

/// Positivity check with a name, used by constructors.
pub fn require_positive(x: &Rat, what: &str) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must be positive, got {}", x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert_eq!(parse_rat("0.05").unwrap(), rat(1, 20));
        assert_eq!(parse_rat("1.25").unwrap(), rat(5, 4));
        assert_eq!(parse_rat("-0.5").unwrap(), rat(-1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1.2e3").is_err());
    }

    #[test]
    fn nearest_int_distance() {
        assert_eq!(dist_nearest_int(&rat(1, 3)), rat(1, 3));
        assert_eq!(dist_nearest_int(&rat(2, 3)), rat(1, 3));
        assert_eq!(dist_nearest_int(&rat(1, 2)), rat(1, 2));
        assert_eq!(dist_nearest_int(&rat(-1, 4)), rat(1, 4));
        assert_eq!(dist_nearest_int(&rat_int(5)), rat_int(0));
        assert_eq!(dist_nearest_int(&rat(7, 2)), rat(1, 2));
    }

    #[test]
    fn fmt_is_always_p_over_q() {
        assert_eq!(fmt_rat(&rat(3, 4)), "3/4");
        assert_eq!(fmt_rat(&rat_int(2)), "2/1");
    }
}
