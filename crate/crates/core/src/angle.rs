//! Angles that stay exact when given as rational multiples of pi.
//!
//! Pulse programs and the command line write angles like `60deg`, `3pi/8`
//! or `1/(2J)`; keeping those as rationals means `cos(pi/2)` is exactly 0
//! and `pi - 2*theta` carries no rounding residue into the propagators.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum Angle {
    /// `q * pi` radians, exact.
    Pi(Rational),
    /// Plain radians.
    Radians(f64),
}

impl Angle {
    pub const ZERO: Angle = Angle::Pi(Ratio::new_raw(0, 1));

    pub fn pi_frac(numer: i64, denom: i64) -> Self {
        Angle::Pi(Ratio::new(numer, denom))
    }

    pub fn degrees(deg: Rational) -> Self {
        Angle::Pi(deg / 180)
    }

    pub fn radians(&self) -> f64 {
        match *self {
            Angle::Pi(q) => ratio_to_f64(q) * PI,
            Angle::Radians(x) => x,
        }
    }

    pub fn as_pi_multiple(&self) -> Option<Rational> {
        match *self {
            Angle::Pi(q) => Some(q),
            Angle::Radians(_) => None,
        }
    }

    /// `(sin, cos)`, exact at multiples of pi/2.
    pub fn sin_cos(&self) -> (f64, f64) {
        match *self {
            Angle::Pi(q) => {
                // reduce to [0, 2)
                let two = Rational::from_integer(2);
                let mut r = q % two;
                if r.is_negative() {
                    r += two;
                }
                let quarter = r * 2;
                if quarter.is_integer() {
                    match quarter.to_integer() {
                        0 => (0.0, 1.0),
                        1 => (1.0, 0.0),
                        2 => (0.0, -1.0),
                        _ => (-1.0, 0.0),
                    }
                } else {
                    (ratio_to_f64(r) * PI).sin_cos()
                }
            }
            Angle::Radians(x) => x.sin_cos(),
        }
    }

    pub fn half(&self) -> Self {
        *self * Rational::new(1, 2)
    }

    /// Parses command-line forms: `pi`, `-pi/2`, `3pi/8`, `2pi`, `0.25`,
    /// `45deg`, `0.7rad`.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        let bad = || Error::Usage(format!("cannot parse angle '{text}'"));
        if s.is_empty() {
            return Err(bad());
        }
        if let Some(deg) = s.strip_suffix("deg") {
            return parse_rational(deg).map(Angle::degrees).ok_or_else(bad);
        }
        if let Some(rad) = s.strip_suffix("rad") {
            return rad.trim().parse::<f64>().map(Angle::Radians).map_err(|_| bad());
        }
        if let Some(pos) = s.find("pi") {
            let (coef, rest) = (&s[..pos], &s[pos + 2..]);
            let numer = match coef.trim() {
                "" | "+" => Rational::from_integer(1),
                "-" => Rational::from_integer(-1),
                c => parse_rational(c.trim_end_matches('*')).ok_or_else(bad)?,
            };
            let denom = match rest.trim() {
                "" => Rational::from_integer(1),
                r => {
                    let d = r.strip_prefix('/').ok_or_else(bad)?;
                    parse_rational(d).filter(|d| !d.is_zero()).ok_or_else(bad)?
                }
            };
            return Ok(Angle::Pi(numer / denom));
        }
        s.parse::<f64>().ok().filter(|x| x.is_finite()).map(Angle::Radians).ok_or_else(bad)
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        match (self, rhs) {
            (Angle::Pi(a), Angle::Pi(b)) => Angle::Pi(a + b),
            (a, b) => Angle::Radians(a.radians() + b.radians()),
        }
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        self + (-rhs)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        match self {
            Angle::Pi(a) => Angle::Pi(-a),
            Angle::Radians(x) => Angle::Radians(-x),
        }
    }
}

impl Mul<Rational> for Angle {
    type Output = Angle;
    fn mul(self, k: Rational) -> Angle {
        match self {
            Angle::Pi(a) => Angle::Pi(a * k),
            Angle::Radians(x) => Angle::Radians(x * ratio_to_f64(k)),
        }
    }
}

impl Mul<i64> for Angle {
    type Output = Angle;
    fn mul(self, k: i64) -> Angle {
        self * Rational::from_integer(k)
    }
}

impl From<f64> for Angle {
    fn from(x: f64) -> Self {
        Angle::Radians(x)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::Pi(q) if q.is_zero() => write!(f, "0"),
            Angle::Pi(q) => {
                let (n, d) = (*q.numer(), *q.denom());
                match n {
                    1 => write!(f, "pi")?,
                    -1 => write!(f, "-pi")?,
                    _ => write!(f, "{n}pi")?,
                }
                if d != 1 {
                    write!(f, "/{d}")?;
                }
                Ok(())
            }
            Angle::Radians(x) => write!(f, "{x:?}"),
        }
    }
}

/// Reduces `x` into `(-pi, pi]`.
pub fn wrap_pi(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

pub(crate) fn ratio_to_f64(q: Rational) -> f64 {
    // numer/denom as f64 division is correctly rounded for |n|, |d| < 2^53
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

/// Parses `12`, `-3/4` or `0.125` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let s = text.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.is_zero() {
            return None;
        }
        return Some(n / d);
    }
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let numer: i64 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let denom = 10i64.checked_pow(u32::try_from(frac.len()).ok()?)?;
    let q = Ratio::new(numer, denom);
    Some(if neg { -q } else { q })
}

/// Renders a rational as a terminating decimal when one exists, else `p/q`.
pub fn format_rational(q: Rational) -> String {
    let (n, mut d) = (*q.numer(), *q.denom());
    if d == 1 {
        return n.to_string();
    }
    let mut scale = 0u32;
    let mut twos_fives = true;
    for p in [2, 5] {
        while d % p == 0 {
            d /= p;
        }
    }
    if d != 1 {
        twos_fives = false;
    }
    if twos_fives {
        let mut num = i128::from(n);
        let den = i128::from(*q.denom());
        while num * 10i128.pow(scale) % den != 0 && scale < 30 {
            scale += 1;
        }
        num = num * 10i128.pow(scale) / den;
        let neg = num < 0;
        let digits = num.abs().to_string();
        let width = scale as usize + 1;
        let digits = format!("{digits:0>width$}");
        let (i, fr) = digits.split_at(digits.len() - scale as usize);
        format!("{}{i}.{fr}", if neg { "-" } else { "" })
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_symbolic_forms() {
        assert_eq!(Angle::parse("pi").unwrap(), Angle::pi_frac(1, 1));
        assert_eq!(Angle::parse("-pi/2").unwrap(), Angle::pi_frac(-1, 2));
        assert_eq!(Angle::parse("3pi/8").unwrap(), Angle::pi_frac(3, 8));
        assert_eq!(Angle::parse("2pi").unwrap(), Angle::pi_frac(2, 1));
        assert_eq!(Angle::parse("60deg").unwrap(), Angle::pi_frac(1, 3));
        assert_eq!(Angle::parse("0.5").unwrap(), Angle::Radians(0.5));
        assert!(Angle::parse("pi/0").is_err());
        assert!(Angle::parse("").is_err());
        assert!(Angle::parse("abc").is_err());
    }

    #[test]
    fn exact_quadrant_values() {
        assert_eq!(Angle::pi_frac(1, 2).sin_cos(), (1.0, 0.0));
        assert_eq!(Angle::pi_frac(1, 1).sin_cos(), (0.0, -1.0));
        assert_eq!(Angle::pi_frac(-1, 2).sin_cos(), (-1.0, 0.0));
        assert_eq!(Angle::pi_frac(7, 2).sin_cos(), (-1.0, 0.0));
        let (s, c) = Angle::pi_frac(1, 3).sin_cos();
        assert!((s - 3f64.sqrt() / 2.0).abs() < 1e-15 && (c - 0.5).abs() < 1e-15);
    }

    #[test]
    fn arithmetic_stays_exact() {
        let theta = Angle::pi_frac(1, 8);
        assert_eq!(Angle::pi_frac(1, 1) - theta * 2, Angle::pi_frac(3, 4));
        assert_eq!((theta * 4).half(), Angle::pi_frac(1, 4));
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("0.125"), Some(Rational::new(1, 8)));
        assert_eq!(parse_rational("-3/4"), Some(Rational::new(-3, 4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(Rational::new(45, 2)), "22.5");
        assert_eq!(format_rational(Rational::new(-1, 8)), "-0.125");
        assert_eq!(format_rational(Rational::new(180, 7)), "180/7");
        assert_eq!(format_rational(Rational::new(60, 1)), "60");
    }
}
