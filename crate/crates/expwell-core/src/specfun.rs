//! Real-argument special functions: the gamma function and Bessel functions
//! `J_ν(z)`, `Y_ν(z)` of arbitrary real order for `z > 0`.
//!
//! `J_ν` is evaluated from its ascending power series only. The series is
//! accumulated in double-double arithmetic so that the cancellation between
//! terms at `z ≈ 40` (terms near `1e15` summing to `O(0.1)`) still leaves
//! close to full double precision. `Y_ν` comes from the connection formula
//!
//! ```text
//! Y_ν(z) = [J_ν(z) cos(νπ) − J_{−ν}(z)] / sin(νπ)
//! ```
//!
//! and, within [`INTEGER_ORDER_SNAP`] of an integer order, from the average
//! of the formula at `n ± δ`.

use crate::dd::Dd;
use crate::error::{Error, Result};
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Largest supported `|ν|`.
pub const MAX_ORDER: f64 = 100.0;
/// Largest supported argument. Accuracy claims only hold for `z ≤ 40`.
pub const MAX_ARGUMENT: f64 = 200.0;
/// Orders closer than this to an integer use the averaged limit in `Y_ν`.
pub const INTEGER_ORDER_SNAP: f64 = 1e-6;
/// Ratio of the largest series term to the sum above which the result has
/// lost more digits than double-double accumulation can absorb.
pub const PRECISION_WARNING_CONDITION: f64 = 1e16;

// Lanczos approximation, g = 7, n = 9. Coefficients from P. Godfrey's
// tabulation as distributed with the GNU Scientific Library.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// A Bessel order `ν`, finite with `|ν| ≤ MAX_ORDER`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() {
            return Err(Error::Domain {
                what: "Bessel order",
                value: nu,
            });
        }
        if libm::fabs(nu) > MAX_ORDER {
            return Err(Error::Envelope {
                what: "Bessel order",
                value: nu,
                limit: MAX_ORDER,
            });
        }
        Ok(Order(nu))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A strictly positive Bessel argument `z ≤ MAX_ARGUMENT`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Argument(f64);

impl Argument {
    pub fn new(z: f64) -> Result<Self> {
        if !(z > 0.0) || !z.is_finite() {
            return Err(Error::Domain {
                what: "Bessel argument",
                value: z,
            });
        }
        if z > MAX_ARGUMENT {
            return Err(Error::Envelope {
                what: "Bessel argument",
                value: z,
                limit: MAX_ARGUMENT,
            });
        }
        Ok(Argument(z))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `sin(πx)` with exact argument reduction, so zeros at integers are exact.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    // r in [-1, 1], computed exactly
    let r = x - 2.0 * libm::round(0.5 * x);
    if r > 0.5 {
        libm::sin(PI * (1.0 - r))
    } else if r < -0.5 {
        libm::sin(PI * (-1.0 - r))
    } else {
        libm::sin(PI * r)
    }
}

/// `cos(πx)` with exact argument reduction.
pub fn cos_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let r = libm::fabs(x - 2.0 * libm::round(0.5 * x));
    if r <= 0.5 {
        libm::sin(PI * (0.5 - r))
    } else {
        -libm::sin(PI * (r - 0.5))
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && libm::floor(x) == x
}

/// Lanczos sum and shifted variable for `x ≥ 0.5`.
fn lanczos_parts(x: f64) -> (f64, f64) {
    let xm1 = x - 1.0;
    let mut a = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (xm1 + i as f64);
    }
    (a, xm1 + LANCZOS_G + 0.5)
}

/// Γ(x) for real `x`. Uses reflection below `x = 0.5`.
pub fn gamma_real(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain {
            what: "gamma argument",
            value: x,
        });
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole { x });
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return PI / (sin_pi(x) * gamma_unchecked(1.0 - x));
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    if libm::floor(x) == x {
        // factorials are exact through 22!
        let mut p = 1.0;
        let mut i = 2.0;
        while i < x {
            p *= i;
            i += 1.0;
        }
        return p;
    }
    let (a, t) = lanczos_parts(x);
    // split the power so t^(x-0.5) does not overflow before exp(-t) applies
    let half = libm::pow(t, 0.5 * (x - 0.5));
    libm::sqrt(2.0 * PI) * half * (half * libm::exp(-t)) * a
}

/// `ln|Γ(x)|`.
pub fn ln_gamma_abs(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain {
            what: "gamma argument",
            value: x,
        });
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole { x });
    }
    Ok(ln_gamma_abs_unchecked(x))
}

fn ln_gamma_abs_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        return libm::log(PI) - libm::log(libm::fabs(sin_pi(x))) - ln_gamma_abs_unchecked(1.0 - x);
    }
    let (a, t) = lanczos_parts(x);
    LN_SQRT_2PI + (x - 0.5) * libm::log(t) - t + libm::log(a)
}

/// `1/Γ(x)`, an entire function: zero at the non-positive integers.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x < 0.5 {
        sin_pi(x) * gamma_unchecked(1.0 - x) / PI
    } else {
        1.0 / gamma_unchecked(x)
    }
}

/// A series evaluation together with its cancellation condition number
/// (largest term magnitude over the magnitude of the sum).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub condition: f64,
}

impl SeriesValue {
    pub fn precision_warning(&self) -> bool {
        !(self.condition <= PRECISION_WARNING_CONDITION)
    }
}

/// `Σ_m (−q)^m / (m! (μ+1)_m)`, i.e. `J_μ(z) Γ(μ+1) / (z/2)^μ` with
/// `q = (z/2)²`. `ratio(m)` must return `1 / (m (m + μ))`. Requires `μ` not
/// a negative integer.
fn pochhammer_sum(mu: f64, q: f64, ratio: impl Fn(usize) -> Dd) -> (Dd, f64) {
    let neg_q = -Dd::new(q);
    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut max_abs: f64 = 1.0;
    let peak = libm::sqrt(q) + libm::fabs(mu.min(0.0)) + 1.0;
    let mut m = 1usize;
    loop {
        term = term * neg_q * ratio(m);
        sum = sum + term;
        let t = term.abs();
        if t > max_abs {
            max_abs = t;
        }
        if m as f64 > peak && (t <= 1e-33 * sum.abs() || t <= 1e-40 * max_abs) {
            break;
        }
        if m >= MAX_TERMS || !t.is_finite() {
            break;
        }
        m += 1;
    }
    let s = sum.abs();
    let condition = if s > 0.0 { max_abs / s } else { f64::INFINITY };
    (sum, condition)
}

const MAX_TERMS: usize = 2000;

fn ratio_direct(mu: f64, m: usize) -> Dd {
    let mf = m as f64;
    Dd::ONE / (Dd::new(mf) * Dd::sum(mf, mu))
}

fn pochhammer_series(mu: f64, q: f64) -> (Dd, f64) {
    pochhammer_sum(mu, q, |m| ratio_direct(mu, m))
}

/// `J_μ(z) / (z/2)^μ` for a fixed order and many `q = (z/2)² ≤ q_max`, with
/// the per-term ratios and `1/Γ(μ+1)` computed once.
pub(crate) struct ScaledSeries {
    mu: f64,
    lead: f64,
    ratios: Vec<Dd>,
}

impl ScaledSeries {
    pub(crate) fn new(mu: f64, q_max: f64) -> Self {
        let n = (2.0 * libm::sqrt(q_max) + libm::fabs(mu) + 120.0) as usize;
        let n = n.min(MAX_TERMS);
        let ratios = if is_nonpositive_integer(mu) {
            Vec::new()
        } else {
            (1..=n).map(|m| ratio_direct(mu, m)).collect()
        };
        ScaledSeries {
            mu,
            lead: rgamma(mu + 1.0),
            ratios,
        }
    }

    pub(crate) fn eval(&self, q: f64) -> f64 {
        if self.ratios.is_empty() {
            return bessel_j_scaled(self.mu, q).value;
        }
        let (sum, _) = pochhammer_sum(self.mu, q, |m| {
            self.ratios
                .get(m - 1)
                .copied()
                .unwrap_or_else(|| ratio_direct(self.mu, m))
        });
        self.lead * sum.to_f64()
    }
}

/// `J_μ(z) / (z/2)^μ` as a function of `q = (z/2)²`, without forming the
/// power. Lets callers work at arguments where `(z/2)^μ` over- or
/// underflows.
pub fn bessel_j_scaled(mu: f64, q: f64) -> SeriesValue {
    if is_nonpositive_integer(mu) && mu != 0.0 {
        // J_{-n} = (-1)^n J_n
        let n = -mu;
        let inner = bessel_j_scaled(n, q);
        let sign = if (n as u64) % 2 == 0 { 1.0 } else { -1.0 };
        return SeriesValue {
            value: sign * libm::pow(q, n) * inner.value,
            condition: inner.condition,
        };
    }
    let (sum, condition) = pochhammer_series(mu, q);
    SeriesValue {
        value: rgamma(mu + 1.0) * sum.to_f64(),
        condition,
    }
}

/// `(z/2)^ν / Γ(ν+1)`, falling back to logarithms when the direct product
/// over- or underflows.
fn leading_factor(nu: f64, half_z: f64) -> f64 {
    let rg = rgamma(nu + 1.0);
    let direct = libm::pow(half_z, nu) * rg;
    if direct.is_finite() && direct != 0.0 {
        return direct;
    }
    if rg == 0.0 {
        return 0.0;
    }
    let ln = nu * libm::log(half_z) - ln_gamma_abs_unchecked(nu + 1.0);
    libm::copysign(libm::exp(ln), rg)
}

pub(crate) fn bessel_j_series(nu: f64, z: f64) -> SeriesValue {
    let half_z = 0.5 * z;
    let q = half_z * half_z;
    if is_nonpositive_integer(nu) && nu != 0.0 {
        let inner = bessel_j_series(-nu, z);
        let sign = if ((-nu) as u64) % 2 == 0 { 1.0 } else { -1.0 };
        return SeriesValue {
            value: sign * inner.value,
            condition: inner.condition,
        };
    }
    let (sum, condition) = pochhammer_series(nu, q);
    SeriesValue {
        value: leading_factor(nu, half_z) * sum.to_f64(),
        condition,
    }
}

/// `J_ν(z)` with its series condition number.
pub fn bessel_j_checked(nu: Order, z: Argument) -> SeriesValue {
    bessel_j_series(nu.value(), z.value())
}

/// `J_ν(z)` from the ascending power series.
pub fn bessel_j(nu: Order, z: Argument) -> f64 {
    bessel_j_series(nu.value(), z.value()).value
}

fn y_connection(nu: f64, z: f64) -> f64 {
    let jp = bessel_j_series(nu, z).value;
    let jm = bessel_j_series(-nu, z).value;
    (jp * cos_pi(nu) - jm) / sin_pi(nu)
}

pub(crate) fn bessel_y_unchecked(nu: f64, z: f64) -> f64 {
    let n = libm::round(nu);
    if libm::fabs(nu - n) < INTEGER_ORDER_SNAP {
        let d = INTEGER_ORDER_SNAP;
        0.5 * (y_connection(n + d, z) + y_connection(n - d, z))
    } else {
        y_connection(nu, z)
    }
}

/// `Y_ν(z)` via the connection formula; orders within
/// [`INTEGER_ORDER_SNAP`] of an integer `n` return the mean of the formula at
/// `n ± INTEGER_ORDER_SNAP`.
pub fn bessel_y(nu: Order, z: Argument) -> f64 {
    bessel_y_unchecked(nu.value(), z.value())
}
