//! Harmonic-oscillator majorants of the well.
//!
//! A parabola `ω²x² − M` that touches `−g² e^{−|x|}` at `x = ±ξ` (equal value
//! and slope) lies above the well everywhere, so the oscillator levels
//! `(2n+1)ω − M` are upper bounds on the true levels. Tangency fixes
//!
//! ```text
//! ω(ξ) = g / √(2ξ e^ξ),   M(ξ) = g² e^{−ξ} (1 + ξ/2) = ω² (ξ² + 2ξ)
//! ```
//!
//! and the best bound comes from minimizing over `ξ`. Stationary points of
//! the ground-state bound satisfy `g = √(e^ξ / (2ξ³))`, a U-shaped curve with
//! its minimum at `ξ = 3`: points left of it are minima of the bound, points
//! right of it are maxima.

use crate::error::{Error, Result};
use crate::solver::Coupling;

/// Position of the minimum of the stationary curve.
pub const CRITICAL_XI: f64 = 3.0;
/// Half-width of the band around [`CRITICAL_XI`] classified as critical.
pub const CRITICAL_BAND: f64 = 1e-12;
/// Left end of the search interval used by [`optimal_xi`].
pub const SEARCH_FLOOR: f64 = 1e-4;
/// Couplings within this relative distance of the curve minimum are treated
/// as sitting exactly on it.
pub const CRITICAL_COUPLING_RTOL: f64 = 1e-5;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Tangency coordinate `ξ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct OsculationPoint(f64);

impl OsculationPoint {
    pub fn new(xi: f64) -> Result<Self> {
        if !(xi > 0.0) || !xi.is_finite() {
            return Err(Error::Domain {
                what: "osculation point xi",
                value: xi,
            });
        }
        Ok(OsculationPoint(xi))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// One oscillator bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoEstimate {
    pub g: f64,
    pub xi: f64,
    pub omega: f64,
    pub shift: f64,
    pub n: usize,
    pub bound: f64,
}

impl HoEstimate {
    /// `(value mismatch, slope mismatch)` of the parabola against the well
    /// at `x = ξ`.
    pub fn osculation_residuals(&self) -> (f64, f64) {
        let well = self.g * self.g * libm::exp(-self.xi);
        let value = libm::fabs(-well - (self.omega * self.omega * self.xi * self.xi - self.shift));
        let slope = libm::fabs(well - 2.0 * self.omega * self.omega * self.xi);
        (value, slope)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Useful,
    Critical,
    Useless,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Useful => "useful",
            Branch::Critical => "critical",
            Branch::Useless => "useless",
        }
    }
}

/// A point `(ξ₀, g(ξ₀))` on the stationary curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalCurvePoint {
    pub xi0: f64,
    pub g: f64,
    pub branch: Branch,
}

impl OptimalCurvePoint {
    pub fn at(xi0: f64) -> Result<Self> {
        Ok(OptimalCurvePoint {
            xi0,
            g: coupling_of_optimal_xi(xi0)?,
            branch: classify_branch(xi0),
        })
    }
}

/// `V(x) = −g² e^{−|x|}`.
pub fn potential(g: Coupling, x: f64) -> f64 {
    -g.depth() * libm::exp(-libm::fabs(x))
}

/// `ω² x² − M`.
pub fn parabola(omega: f64, shift: f64, x: f64) -> f64 {
    omega * omega * x * x - shift
}

/// `ω(ξ) = g / √(2ξ e^ξ)`.
pub fn omega_of_xi(g: Coupling, xi: OsculationPoint) -> f64 {
    let xi = xi.value();
    // e^{−ξ/2} / √(2ξ) stays finite for large ξ
    g.value() * libm::exp(-0.5 * xi) / libm::sqrt(2.0 * xi)
}

/// `M(ξ) = g² e^{−ξ} (1 + ξ/2)`.
pub fn shift_of_xi(g: Coupling, xi: OsculationPoint) -> f64 {
    let xi = xi.value();
    g.depth() * libm::exp(-xi) * (1.0 + 0.5 * xi)
}

/// `E_n ≤ (2n+1) ω(ξ) − M(ξ)`.
pub fn ho_upper_bound(g: Coupling, xi: OsculationPoint, n: usize) -> HoEstimate {
    let omega = omega_of_xi(g, xi);
    let shift = shift_of_xi(g, xi);
    HoEstimate {
        g: g.value(),
        xi: xi.value(),
        omega,
        shift,
        n,
        bound: (2 * n + 1) as f64 * omega - shift,
    }
}

fn bound_at(g: Coupling, xi: f64, n: usize) -> f64 {
    let (gv, l) = (g.value(), (2 * n + 1) as f64);
    l * gv * libm::exp(-0.5 * xi) / libm::sqrt(2.0 * xi) - gv * gv * libm::exp(-xi) * (1.0 + 0.5 * xi)
}

/// `∂E_n/∂ξ = (1+ξ)/2 · [g² e^{−ξ} − (2n+1) g e^{−ξ/2} / (√2 ξ^{3/2})]`.
pub fn bound_slope(g: Coupling, xi: OsculationPoint, n: usize) -> f64 {
    let (gv, xi) = (g.value(), xi.value());
    let l = (2 * n + 1) as f64;
    0.5 * (1.0 + xi)
        * (gv * gv * libm::exp(-xi)
            - l * gv * libm::exp(-0.5 * xi) / (core::f64::consts::SQRT_2 * xi * libm::sqrt(xi)))
}

/// Principal branch of Lambert's W for `y > 0`: the root of `w e^w = y`.
pub fn lambert_w(y: f64) -> Result<f64> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain {
            what: "Lambert W argument",
            value: y,
        });
    }
    // W(y) lies in [y/(1+y), ln(1+y)]
    let mut lo = y / (1.0 + y);
    let mut hi = libm::log1p(y);
    let ln_y = libm::log(y);
    // solve ln w + w − ln y = 0, increasing in w
    let f = |w: f64| libm::log(w) + w - ln_y;
    let mut w = 0.5 * (lo + hi);
    for _ in 0..100 {
        let fw = f(w);
        if fw > 0.0 {
            hi = w;
        } else {
            lo = w;
        }
        let mut next = w - fw / (1.0 / w + 1.0);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if libm::fabs(next - w) <= 1e-15 * w {
            return Ok(next);
        }
        w = next;
    }
    Ok(w)
}

/// The tangency point at which the majorant has spring constant `ω`:
/// `ξ e^ξ = g² / (2ω²)`.
pub fn xi_from_omega(g: Coupling, omega: f64) -> Result<OsculationPoint> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Domain {
            what: "spring constant omega",
            value: omega,
        });
    }
    let y = g.depth() / (2.0 * omega * omega);
    OsculationPoint::new(lambert_w(y)?)
}

/// `g(ξ₀) = √(e^{ξ₀} / (2ξ₀³))`.
pub fn coupling_of_optimal_xi(xi0: f64) -> Result<f64> {
    if !(xi0 > 0.0) || !xi0.is_finite() {
        return Err(Error::Domain {
            what: "optimal xi",
            value: xi0,
        });
    }
    Ok(libm::exp(0.5 * xi0) / libm::sqrt(2.0 * xi0 * xi0 * xi0))
}

pub fn classify_branch(xi0: f64) -> Branch {
    if xi0 < CRITICAL_XI - CRITICAL_BAND {
        Branch::Useful
    } else if xi0 > CRITICAL_XI + CRITICAL_BAND {
        Branch::Useless
    } else {
        Branch::Critical
    }
}

/// Golden-section search for a minimum of a unimodal `f` on `[a, b]`.
pub fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Result of [`optimal_xi`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub xi0: f64,
    pub estimate: HoEstimate,
    pub branch: Branch,
    /// False when the bound has no stationary point on `(0, 3]` and the
    /// reported value is the infimum at `ξ = 3`.
    pub interior: bool,
}

/// Minimizes the bound for level `n` over `ξ ∈ (0, 3]`.
///
/// The slope of the bound has the sign of `g − (2n+1) g(ξ)`, so the minimum
/// is where the scaled stationary curve crosses `g`. If `g` lies below the
/// curve's minimum the bound decreases all the way to `ξ = 3` and the result
/// is flagged as not interior.
pub fn optimal_xi(g: Coupling, n: usize) -> Result<Optimum> {
    let level = (2 * n + 1) as f64;
    let target = g.value() / level;
    let floor = coupling_of_optimal_xi(CRITICAL_XI)?;
    let finish = |xi0: f64, interior: bool| -> Result<Optimum> {
        let estimate = ho_upper_bound(g, OsculationPoint::new(xi0)?, n);
        Ok(Optimum {
            xi0,
            estimate,
            branch: classify_branch(xi0),
            interior,
        })
    };
    if libm::fabs(target - floor) <= CRITICAL_COUPLING_RTOL * floor {
        return finish(CRITICAL_XI, true);
    }
    if target < floor {
        return finish(CRITICAL_XI, false);
    }

    let coarse = golden_min(|xi| bound_at(g, xi, n), SEARCH_FLOOR, CRITICAL_XI, 1e-6);

    // slope sign: negative left of the minimum, positive right of it
    let h = |xi: f64| target - coupling_of_optimal_xi(xi).unwrap_or(f64::INFINITY);
    let mut step = 1e-4;
    let (mut lo, mut hi) = loop {
        let lo = (coarse - step).max(SEARCH_FLOOR);
        let hi = (coarse + step).min(CRITICAL_XI);
        if h(lo) <= 0.0 && h(hi) >= 0.0 {
            break (lo, hi);
        }
        if lo == SEARCH_FLOOR && hi == CRITICAL_XI {
            break (lo, hi);
        }
        step *= 4.0;
    };
    if !(h(lo) <= 0.0 && h(hi) >= 0.0) {
        return Err(Error::NoConvergence {
            what: "optimal xi bracket",
            iterations: 0,
        });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            break;
        }
        if h(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    finish(0.5 * (lo + hi), true)
}
