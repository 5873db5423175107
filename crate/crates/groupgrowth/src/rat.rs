//! Exact rational scale factors and comparison thresholds.
//!
//! The scale factor λ always enters comparisons through products like
//! `λ · Card(D)` that get compared against integer ball sizes. Floating
//! point would misclassify exactly at the jump points of the reverse growth
//! function, so λ is kept as an exact rational whenever the caller provides
//! one, and comparisons cross-multiply in 128-bit integers.

use num_rational::Ratio;
use thiserror::Error;

/// An exact rational scale factor.
pub type Rational = Ratio<i64>;

#[derive(Debug, Error)]
#[error("cannot parse {text:?} as a rational number: {reason}")]
pub struct RationalParseError {
    pub text: String,
    pub reason: String,
}

/// Parses `"3"`, `"3/2"` or a plain decimal such as `"1.5"` into an exact
/// rational.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let text = text.trim();
    let err = |reason: &str| RationalParseError {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    if let Some((num, den)) = text.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| err("bad numerator"))?;
        let den: i64 = den.trim().parse().map_err(|_| err("bad denominator"))?;
        if den == 0 {
            return Err(err("zero denominator"));
        }
        return Ok(Ratio::new(num, den));
    }
    if let Some((int, frac)) = text.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int: i64 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().map_err(|_| err("bad integer part"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("bad fractional part"));
        }
        if frac.len() > 18 {
            return Err(err("too many fractional digits for exact arithmetic"));
        }
        let digits: i64 = frac.parse().map_err(|_| err("bad fractional part"))?;
        let scale = 10i64.pow(frac.len() as u32);
        let frac_part = Ratio::new(if negative { -digits } else { digits }, scale);
        return Ok(Ratio::from_integer(int) + frac_part);
    }
    let n: i64 = text.parse().map_err(|_| err("not an integer"))?;
    Ok(Ratio::from_integer(n))
}

/// Renders a rational as `p/q`, or just `p` when it is an integer.
pub fn render_rational(r: Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// A threshold value `t` against which integer counts are compared.
///
/// Exact thresholds compare by 128-bit cross multiplication; real thresholds
/// compare in `f64`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Threshold {
    Exact { num: i128, den: i128 },
    Real(f64),
}

impl Threshold {
    pub fn from_rational(r: Rational) -> Self {
        let mut num = *r.numer() as i128;
        let mut den = *r.denom() as i128;
        if den < 0 {
            num = -num;
            den = -den;
        }
        Threshold::Exact { num, den }
    }

    /// The threshold `r · m` without rounding.
    pub fn from_rational_times(r: Rational, m: u64) -> Self {
        let mut num = *r.numer() as i128 * m as i128;
        let mut den = *r.denom() as i128;
        if den < 0 {
            num = -num;
            den = -den;
        }
        Threshold::Exact { num, den }
    }

    pub fn from_count(m: u64) -> Self {
        Threshold::Exact {
            num: m as i128,
            den: 1,
        }
    }

    /// Does `count >= self` hold?
    pub fn met_by(&self, count: u64) -> bool {
        match *self {
            Threshold::Exact { num, den } => count as i128 * den >= num,
            Threshold::Real(t) => count as f64 >= t,
        }
    }

    /// Does `count > self` hold?
    pub fn exceeded_by(&self, count: u64) -> bool {
        match *self {
            Threshold::Exact { num, den } => count as i128 * den > num,
            Threshold::Real(t) => count as f64 > t,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match *self {
            Threshold::Exact { num, den } => num as f64 / den as f64,
            Threshold::Real(t) => t,
        }
    }
}

impl From<f64> for Threshold {
    fn from(t: f64) -> Self {
        Threshold::Real(t)
    }
}

impl From<u64> for Threshold {
    fn from(m: u64) -> Self {
        Threshold::from_count(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_fractions_and_decimals() {
        assert_eq!(parse_rational("2").unwrap(), Ratio::new(2, 1));
        assert_eq!(parse_rational("3/2").unwrap(), Ratio::new(3, 2));
        assert_eq!(parse_rational("1.5").unwrap(), Ratio::new(3, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), Ratio::new(-1, 4));
        assert_eq!(parse_rational(".5").unwrap(), Ratio::new(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2e3").is_err());
    }

    #[test]
    fn render_round_trips() {
        for s in ["2", "3/2", "-7/3"] {
            assert_eq!(render_rational(parse_rational(s).unwrap()), s);
        }
    }

    #[test]
    fn threshold_comparisons_are_exact_at_jumps() {
        // t = 13 exactly: gamma = 13 meets it, 12 does not.
        let t = Threshold::from_rational_times(Ratio::new(13, 5), 5);
        assert!(t.met_by(13));
        assert!(!t.met_by(12));
        assert!(!t.exceeded_by(13));
        assert!(t.exceeded_by(14));
        // A float threshold at the same point could round either way; the
        // exact path must not.
        let t = Threshold::from_rational_times(Ratio::new(1, 3), 9);
        assert!(t.met_by(3));
        assert!(!t.met_by(2));
    }
}
