//! Fixed-precision number output.

use serde::{Serialize, Serializer};

pub const SIG_DIGITS: usize = 12;

/// `x` rounded to [`SIG_DIGITS`] significant digits, as text. Plain
/// notation for magnitudes in `[1e-4, 1e12)`, scientific otherwise.
pub fn fmt(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if !(-4..12).contains(&exp) {
        return format!("{}e{}", trim(mantissa), exp);
    }
    let rounded: f64 = sci.parse().expect("round trip");
    let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
    trim(&format!("{rounded:.decimals$}")).to_string()
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `x` rounded to [`SIG_DIGITS`] significant digits.
pub fn round(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().expect("round trip")
}

fn digit_step(x: f64) -> f64 {
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let exp: i32 = sci.split_once('e').expect("exponent").1.parse().expect("digits");
    10f64.powi(exp - (SIG_DIGITS as i32 - 1))
}

/// Largest 12-digit value `≤ x`.
pub fn round_down(x: f64) -> f64 {
    let r = round(x);
    if r <= x || !x.is_finite() {
        r
    } else {
        round(r - digit_step(r))
    }
}

/// Smallest 12-digit value `≥ x`.
pub fn round_up(x: f64) -> f64 {
    -round_down(-x)
}

/// An interval that serializes as `[lo, hi]` rounded outward, so the printed
/// interval still contains the computed one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval(pub f64, pub f64);

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [round_down(self.0), round_up(self.1)].serialize(s)
    }
}

/// A float that serializes rounded to [`SIG_DIGITS`] digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(round(self.0))
    }
}

impl From<f64> for Num {
    fn from(x: f64) -> Self {
        Num(x)
    }
}
