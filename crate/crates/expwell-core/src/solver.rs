//! Analytic shooting for `−ψ″ − g² e^{−|x|} ψ = E ψ`, `E = −k²`.
//!
//! On `x ≥ 0` the substitution `y = 2g e^{−x/2}` turns the equation into
//! Bessel's equation of order `2k`, so every solution is a combination of
//! `J_{−2k}(y)` and `Y_{−2k}(y)`. The coefficients `(d1, d2)` are fixed by
//! the data at the origin: `ψ(0) = 1, ψ′(0) = 0` for even states and
//! `ψ(0) = 0, ψ′(0) = 1` for odd ones. No energy condition is imposed; the
//! trial function is exact for every `k` and only its behaviour as
//! `x → ∞` decides whether `k` is an eigenvalue.
//!
//! Writing `Y_{−2k}` through the connection formula splits the trial
//! function into a growing and a decaying part,
//!
//! ```text
//! ψ(x) = A J_{−2k}(y) + B J_{2k}(y),   A = d1 − d2 cot(2πk),   B = d2 / sin(2πk)
//! ```
//!
//! where `J_{−2k}(y) ∝ e^{kx}` and `J_{2k}(y) ∝ e^{−kx}`. Bound states are the
//! zeros of the growing amplitude. As `k` decreases through an eigenvalue
//! the growing tail flips sign and one more node appears far out. That is
//! the node-count predicate the bisection uses.

use crate::error::{Error, Result};
use crate::specfun::{bessel_j_series, ScaledSeries, bessel_y_unchecked, cos_pi, sin_pi};
use alloc::vec::Vec;

/// Upper end of the supported coupling range.
pub const MAX_COUPLING: f64 = 20.0;
/// Smallest energy parameter searched; shallower states are reported absent.
pub const K_FLOOR: f64 = 1e-6;
/// Default number of grid points in the allowed region for node counting.
pub const DEFAULT_GRID: usize = 2000;
pub const MIN_GRID: usize = 1000;
/// Half-width (in `2k`) of the exclusion zone around integer orders.
pub const INTEGER_SNAP: f64 = 1e-6;
/// Smallest tolerance accepted by [`solve_state`].
pub const MIN_TOLERANCE: f64 = 1e-12;

const WRONSKIAN_FLOOR: f64 = 1e-14;
const TAIL_SIN_FLOOR: f64 = 1e-8;
const REFINE: usize = 16;

/// Potential strength `g`, `V(x) = −g² e^{−|x|}`, with `0 < g ≤ 20`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Coupling(f64);

impl Coupling {
    pub fn new(g: f64) -> Result<Self> {
        if !(g > 0.0) || !g.is_finite() {
            return Err(Error::Domain {
                what: "coupling g",
                value: g,
            });
        }
        if g > MAX_COUPLING {
            return Err(Error::Envelope {
                what: "coupling g",
                value: g,
                limit: MAX_COUPLING,
            });
        }
        Ok(Coupling(g))
    }

    pub fn from_squared(g2: f64) -> Result<Self> {
        if !(g2 > 0.0) {
            return Err(Error::Domain {
                what: "coupling g^2",
                value: g2,
            });
        }
        Coupling::new(libm::sqrt(g2))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Depth of the well, `g²`.
    pub fn depth(self) -> f64 {
        self.0 * self.0
    }
}

/// `k > 0` with `E = −k²`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EnergyParameter(f64);

impl EnergyParameter {
    pub fn new(k: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::Domain {
                what: "energy parameter k",
                value: k,
            });
        }
        Ok(EnergyParameter(k))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn energy(self) -> f64 {
        -self.0 * self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Parity of the `n`-th state of a symmetric well.
    pub fn of_state(n: usize) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Nodes on the open half-line `x > 0` of the `n`-th state.
    pub fn half_line_nodes(n: usize) -> usize {
        n / 2
    }

    /// `ψ(−x) = sign · ψ(x)`.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// A trial solution normalized at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchedSolution {
    pub k: f64,
    pub g: f64,
    pub parity: Parity,
    pub d1: f64,
    pub d2: f64,
}

impl MatchedSolution {
    pub fn new(k: EnergyParameter, g: Coupling, parity: Parity) -> Result<Self> {
        let (d1, d2) = match parity {
            Parity::Even => coefficients_even(k, g)?,
            Parity::Odd => coefficients_odd(k, g)?,
        };
        Ok(MatchedSolution {
            k: k.value(),
            g: g.value(),
            parity,
            d1,
            d2,
        })
    }
}

/// Interval in `k` certified to hold exactly one eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub k_lo: f64,
    pub k_hi: f64,
}

impl Bracket {
    pub fn width(&self) -> f64 {
        self.k_hi - self.k_lo
    }

    pub fn contains(&self, k: f64) -> bool {
        self.k_lo < k && k < self.k_hi
    }

    /// `(E_lo, E_hi) = (−k_hi², −k_lo²)`.
    pub fn energy_bounds(&self) -> (f64, f64) {
        (-self.k_hi * self.k_hi, -self.k_lo * self.k_lo)
    }
}

/// A converged bound state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    /// Global quantum number.
    pub n: usize,
    pub parity: Parity,
    /// Estimate of `k`, the root of the secular function inside `bracket`.
    pub k: f64,
    pub energy: f64,
    pub bracket: Bracket,
    pub energy_bracket: (f64, f64),
    /// Nodes on `x > 0`.
    pub nodes: usize,
    /// Bisection steps taken.
    pub iterations: usize,
}

struct Origin {
    j: f64,
    j1: f64,
    y: f64,
    y1: f64,
    w: f64,
}

fn origin_values(k: f64, g: f64) -> Result<Origin> {
    if !(k <= g) {
        return Err(Error::Domain {
            what: "energy parameter k (must not exceed g)",
            value: k,
        });
    }
    let nu = -2.0 * k;
    let z = 2.0 * g;
    let j = bessel_j_series(nu, z).value;
    let j1 = bessel_j_series(nu + 1.0, z).value;
    let y = bessel_y_unchecked(nu, z);
    let y1 = bessel_y_unchecked(nu + 1.0, z);
    let w = j1 * y - y1 * j;
    if !(libm::fabs(w) >= WRONSKIAN_FLOOR) {
        return Err(Error::DegenerateWronskian {
            value: libm::fabs(w),
        });
    }
    Ok(Origin { j, j1, y, y1, w })
}

/// `(D1, D2)` such that `ψ(0) = 1` and `ψ′(0) = 0`.
pub fn coefficients_even(k: EnergyParameter, g: Coupling) -> Result<(f64, f64)> {
    let (k, g) = (k.value(), g.value());
    let o = origin_values(k, g)?;
    let d1 = -(o.y1 + k * o.y / g) / o.w;
    let d2 = (o.j1 + k * o.j / g) / o.w;
    Ok((d1, d2))
}

/// `(D1, D2)` such that `ψ(0) = 0` and `ψ′(0) = 1`.
pub fn coefficients_odd(k: EnergyParameter, g: Coupling) -> Result<(f64, f64)> {
    let (k, g) = (k.value(), g.value());
    let o = origin_values(k, g)?;
    let mut d1 = o.y / (g * o.w);
    let mut d2 = -o.j / (g * o.w);
    // ψ′(0) = d1 (g J_{ν+1} + k J_ν) + d2 (g Y_{ν+1} + k Y_ν)
    let slope = d1 * (g * o.j1 + k * o.j) + d2 * (g * o.y1 + k * o.y);
    if slope < 0.0 {
        d1 = -d1;
        d2 = -d2;
    }
    Ok((d1, d2))
}

fn check_x(x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "position x",
            value: x,
        });
    }
    Ok(())
}

/// `ψ(x) = d1 J_{−2k}(2g e^{−x/2}) + d2 Y_{−2k}(2g e^{−x/2})` for `x ≥ 0`.
pub fn wavefunction(sol: &MatchedSolution, x: f64) -> Result<f64> {
    check_x(x)?;
    let nu = -2.0 * sol.k;
    let y = 2.0 * sol.g * libm::exp(-0.5 * x);
    if !(y > 0.0) {
        return Err(Error::Domain {
            what: "position x (Bessel argument underflows)",
            value: x,
        });
    }
    Ok(sol.d1 * bessel_j_series(nu, y).value + sol.d2 * bessel_y_unchecked(nu, y))
}

/// `ψ′(x) = (y/2) [d1 J_{ν+1}(y) + d2 Y_{ν+1}(y)] + k [d1 J_ν(y) + d2 Y_ν(y)]`.
pub fn wavefunction_derivative(sol: &MatchedSolution, x: f64) -> Result<f64> {
    check_x(x)?;
    let nu = -2.0 * sol.k;
    let y = 2.0 * sol.g * libm::exp(-0.5 * x);
    let c = sol.d1 * bessel_j_series(nu, y).value + sol.d2 * bessel_y_unchecked(nu, y);
    let c1 = sol.d1 * bessel_j_series(nu + 1.0, y).value + sol.d2 * bessel_y_unchecked(nu + 1.0, y);
    Ok(0.5 * y * c1 + sol.k * c)
}

/// Is `2k` inside the exclusion zone around an integer?
pub fn near_integer_order(k: f64) -> bool {
    let two_k = 2.0 * k;
    libm::fabs(two_k - libm::round(two_k)) < INTEGER_SNAP
}

/// Moves `k` by `INTEGER_SNAP` (i.e. `2k` by twice that) away from the
/// nearest integer of `2k` when it is inside the exclusion zone.
pub fn snap_k(k: f64) -> f64 {
    if !near_integer_order(k) {
        return k;
    }
    let two_k = 2.0 * k;
    let n = libm::round(two_k);
    if two_k > n {
        k + INTEGER_SNAP
    } else {
        k - INTEGER_SNAP
    }
}

/// Evaluates `ψ(x) e^{−kx}` in the split form, which never over- or
/// underflows and has the sign of `ψ`.
pub(crate) struct ScaledTrial {
    k: f64,
    g2: f64,
    growing: f64,
    decaying: f64,
    up: ScaledSeries,
    down: ScaledSeries,
}

impl ScaledTrial {
    pub(crate) fn new(sol: &MatchedSolution) -> Result<Self> {
        let sol = if near_integer_order(sol.k) {
            let k = EnergyParameter::new(snap_k(sol.k))?;
            MatchedSolution::new(k, Coupling::new(sol.g)?, sol.parity)?
        } else {
            *sol
        };
        let (k, g) = (sol.k, sol.g);
        let s = sin_pi(2.0 * k);
        let a = sol.d1 - sol.d2 * cos_pi(2.0 * k) / s;
        let b = sol.d2 / s;
        let gp = libm::pow(g, 2.0 * k);
        Ok(ScaledTrial {
            k,
            g2: g * g,
            growing: a / gp,
            decaying: b * gp,
            up: ScaledSeries::new(-2.0 * k, g * g),
            down: ScaledSeries::new(2.0 * k, g * g),
        })
    }

    pub(crate) fn eval(&self, x: f64) -> f64 {
        let q = self.g2 * libm::exp(-x);
        let up = self.up.eval(q);
        let down = self.down.eval(q);
        self.growing * up + self.decaying * libm::exp(-2.0 * self.k * x) * down
    }
}

/// `ψ(x) e^{−kx}`: same sign as `ψ`, finite for every `x ≥ 0`.
pub fn scaled_wavefunction(sol: &MatchedSolution, x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(ScaledTrial::new(sol)?.eval(x))
}

/// Scan range for node counting:
/// `max(25, (2/k) ln 1e8, ln(g² / (1e−6 k²)))`.
pub fn default_x_max(k: f64, g: f64) -> f64 {
    let growth = 2.0 / k * libm::log(1e8);
    let flat = libm::log(g * g / (1e-6 * k * k));
    25f64.max(growth).max(flat)
}

fn sign_of(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

fn changes_in(values: &[f64]) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for &v in values {
        let s = sign_of(v);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

fn refined_changes(trial: &ScaledTrial, a: f64, fa: f64, b: f64, fb: f64) -> usize {
    let mut v = Vec::with_capacity(REFINE + 1);
    v.push(fa);
    for i in 1..REFINE {
        v.push(trial.eval(a + (b - a) * i as f64 / REFINE as f64));
    }
    v.push(fb);
    changes_in(&v)
}

/// Number of strict sign changes of `ψ` on `(0, x_max)`.
///
/// The classically allowed region `x < 2 ln(g/k)` is scanned with `n_grid`
/// points. Beyond the turning point `ψψ″ > 0`, so at most one more zero can
/// occur there and a coarser scan suffices. Cells that show a sign change,
/// or hold a local minimum of `|ψ|`, are re-sampled `16×` finer; a cell whose
/// refined count disagrees with the coarse one makes the count inconclusive.
pub fn node_count(sol: &MatchedSolution, x_max: f64, n_grid: usize) -> Result<usize> {
    if n_grid < MIN_GRID {
        return Err(Error::Domain {
            what: "node-count grid size",
            value: n_grid as f64,
        });
    }
    if !(x_max > 0.0) {
        return Err(Error::Domain {
            what: "x_max",
            value: x_max,
        });
    }
    let trial = ScaledTrial::new(sol)?;
    let x_turn = if sol.g > sol.k {
        2.0 * libm::log(sol.g / sol.k)
    } else {
        0.0
    };
    let x_mid = x_turn.min(x_max);

    let mut xs = Vec::with_capacity(n_grid + n_grid / 4 + 2);
    if x_mid > 0.0 {
        for i in 1..=n_grid {
            xs.push(x_mid * i as f64 / n_grid as f64);
        }
    }
    let n_far = n_grid / 4;
    let start = x_mid;
    for i in 1..=n_far {
        let x = start + (x_max - start) * i as f64 / n_far as f64;
        if x < x_max {
            xs.push(x);
        }
    }
    if xs.is_empty() {
        return Ok(0);
    }
    let fs: Vec<f64> = xs.iter().map(|&x| trial.eval(x)).collect();

    let mut count = 0;
    for i in 0..xs.len() - 1 {
        let (a, b) = (xs[i], xs[i + 1]);
        let (fa, fb) = (fs[i], fs[i + 1]);
        let coarse = usize::from(sign_of(fa) * sign_of(fb) < 0);
        count += coarse;
        let suspicious = coarse == 1
            || (i > 0
                && sign_of(fs[i - 1]) == sign_of(fa)
                && sign_of(fa) == sign_of(fb)
                && libm::fabs(fa) < libm::fabs(fs[i - 1])
                && libm::fabs(fa) < libm::fabs(fb));
        if !suspicious || a >= x_mid {
            continue;
        }
        if coarse == 1 {
            if refined_changes(&trial, a, fa, b, fb) != 1 {
                return Err(Error::Inconclusive { x_lo: a, x_hi: b });
            }
        } else {
            let lo = xs[i - 1];
            let left = refined_changes(&trial, lo, fs[i - 1], a, fa);
            let right = refined_changes(&trial, a, fa, b, fb);
            if left + right != 0 {
                return Err(Error::Inconclusive { x_lo: lo, x_hi: b });
            }
        }
    }
    Ok(count)
}

/// Growing amplitude up to a positive factor, `S(k)`, whose sign is the
/// sign of `ψ` as `x → ∞`:
///
/// * even: `S = g J_{2k−1}(2g) − k J_{2k}(2g) = g J′_{2k}(2g)`
/// * odd:  `S = J_{2k}(2g)`
///
/// `ψ(x) e^{−kx} → S Γ(2k) g^{−2k}` and `A sin(2πk) = π S`. Unlike `A`,
/// `S` is smooth through integer `2k`.
pub fn secular_function(k: f64, g: f64, parity: Parity) -> f64 {
    let z = 2.0 * g;
    match parity {
        Parity::Even => {
            g * bessel_j_series(2.0 * k - 1.0, z).value - k * bessel_j_series(2.0 * k, z).value
        }
        Parity::Odd => bessel_j_series(2.0 * k, z).value,
    }
}

/// `A(k, g) = d1 − d2 cot(2πk)`, the coefficient of `J_{−2k}(y)`, the
/// component that grows like `e^{kx}`.
pub fn tail_coefficient(k: EnergyParameter, g: Coupling, parity: Parity) -> Result<f64> {
    let s = sin_pi(2.0 * k.value());
    if libm::fabs(s) < TAIL_SIN_FLOOR {
        return Err(Error::NearIntegerOrder { k: k.value() });
    }
    let sol = MatchedSolution::new(k, g, parity)?;
    Ok(sol.d1 - sol.d2 * cos_pi(2.0 * k.value()) / s)
}

/// Node count at `k` with the default scan range and grid.
pub fn nodes_at(k: f64, g: Coupling, parity: Parity) -> Result<usize> {
    let sol = MatchedSolution::new(EnergyParameter::new(k)?, g, parity)?;
    node_count(&sol, default_x_max(k, g.value()), DEFAULT_GRID)
}

/// Bisection midpoint kept out of the integer-order exclusion zone.
fn safe_midpoint(lo: f64, hi: f64) -> f64 {
    let mid = 0.5 * (lo + hi);
    if !near_integer_order(mid) {
        return mid;
    }
    let p = 0.5 * libm::round(2.0 * mid);
    // shift toward the wider half
    let shifted = if p - lo >= hi - p {
        p - INTEGER_SNAP
    } else {
        p + INTEGER_SNAP
    };
    if shifted > lo && shifted < hi {
        shifted
    } else {
        mid
    }
}

/// Illinois variant of regula falsi on `[a, b]` with `f(a) f(b) < 0`.
fn illinois(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> Option<f64> {
    let mut fa = f(a);
    let mut fb = f(b);
    if !(fa * fb < 0.0) {
        return None;
    }
    let mut side = 0i8;
    let mut c = a;
    for _ in 0..100 {
        let prev = c;
        c = (fa * b - fb * a) / (fa - fb);
        if !(c > a && c < b) {
            c = 0.5 * (a + b);
        }
        if libm::fabs(c - prev) <= 2.0 * f64::EPSILON * libm::fabs(c) {
            break;
        }
        let fc = f(c);
        if fc * fb > 0.0 {
            b = c;
            fb = fc;
            if side == -1 {
                fa *= 0.5;
            }
            side = -1;
        } else if fa * fc > 0.0 {
            a = c;
            fa = fc;
            if side == 1 {
                fb *= 0.5;
            }
            side = 1;
        } else {
            break;
        }
    }
    Some(c)
}

/// Bound state `n` (`n` even: even parity, `n` odd: odd parity), bracketed
/// in `k` to width `≤ tol_k`.
///
/// With `m = ⌊n/2⌋` the target node count on `x > 0`, a trial `k` is too
/// small when it shows `m + 1` or more nodes and too large otherwise.
pub fn solve_state(g: Coupling, n: usize, tol_k: f64) -> Result<BoundState> {
    if !(tol_k >= MIN_TOLERANCE) {
        return Err(Error::Domain {
            what: "tolerance in k",
            value: tol_k,
        });
    }
    let parity = Parity::of_state(n);
    let m = Parity::half_line_nodes(n);
    let gv = g.value();

    let mut hi = gv;
    if near_integer_order(hi) {
        hi = 0.5 * libm::round(2.0 * hi) - INTEGER_SNAP;
    }
    let mut lo = K_FLOOR;

    let nodes_hi = nodes_at(hi, g, parity)?;
    if nodes_hi > m {
        return Err(Error::BracketInit { k_lo: lo, k_hi: hi });
    }
    let nodes_lo = nodes_at(lo, g, parity)?;
    if nodes_lo <= m {
        return Err(Error::NoSuchState { n, g: gv });
    }

    let mut iterations = 0;
    let mut hi_nodes = nodes_hi;
    while hi - lo > tol_k {
        let mid = safe_midpoint(lo, hi);
        if !(mid > lo && mid < hi) {
            break;
        }
        let c = nodes_at(mid, g, parity)?;
        if c > m {
            lo = mid;
        } else {
            hi = mid;
            hi_nodes = c;
        }
        iterations += 1;
        if iterations > 200 {
            return Err(Error::NoConvergence {
                what: "node-count bisection",
                iterations,
            });
        }
    }

    let bracket = Bracket { k_lo: lo, k_hi: hi };
    let k = match illinois(|k| secular_function(k, gv, parity), lo, hi) {
        Some(r) if bracket.contains(r) => r,
        _ => 0.5 * (lo + hi),
    };
    Ok(BoundState {
        n,
        parity,
        k,
        energy: -k * k,
        bracket,
        energy_bracket: bracket.energy_bounds(),
        nodes: hi_nodes,
        iterations,
    })
}

/// All bound states with `n ≤ n_max`, lowest first. Stops at the first
/// quantum number the well does not support.
pub fn spectrum(g: Coupling, n_max: usize, tol_k: f64) -> Result<Vec<BoundState>> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        match solve_state(g, n, tol_k) {
            Ok(s) => out.push(s),
            Err(Error::NoSuchState { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Evidence that a bracket really separates an eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Certificate {
    pub nodes_lo: usize,
    pub nodes_hi: usize,
    pub tail_lo: f64,
    pub tail_hi: f64,
    pub secular_lo: f64,
    pub secular_hi: f64,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.nodes_lo != self.nodes_hi
            && self.tail_lo * self.tail_hi < 0.0
            && self.secular_lo * self.secular_hi < 0.0
    }
}

/// Re-evaluates node counts, tail coefficients and the secular function at
/// both ends of a state's bracket.
pub fn certify(state: &BoundState, g: Coupling) -> Result<Certificate> {
    let Bracket { k_lo, k_hi } = state.bracket;
    let p = state.parity;
    Ok(Certificate {
        nodes_lo: nodes_at(k_lo, g, p)?,
        nodes_hi: nodes_at(k_hi, g, p)?,
        tail_lo: tail_coefficient(EnergyParameter::new(k_lo)?, g, p)?,
        tail_hi: tail_coefficient(EnergyParameter::new(k_hi)?, g, p)?,
        secular_lo: secular_function(k_lo, g.value(), p),
        secular_hi: secular_function(k_hi, g.value(), p),
    })
}

/// Uniform samples `(x, ψ(x))` on `[0, x_max]`, or on `[−x_max, x_max]`
/// using `ψ(−x) = ±ψ(x)` when `reflect` is set. Shape only; not normalized.
pub fn sample_wavefunction(
    sol: &MatchedSolution,
    x_max: f64,
    points: usize,
    reflect: bool,
) -> Result<Vec<(f64, f64)>> {
    if points < 2 {
        return Err(Error::Domain {
            what: "sample count",
            value: points as f64,
        });
    }
    check_x(x_max)?;
    let x0 = if reflect { -x_max } else { 0.0 };
    let step = (x_max - x0) / (points - 1) as f64;
    let sign = sol.parity.sign();
    let mut out = Vec::with_capacity(points);
    for i in 0..points {
        let x = if i + 1 == points { x_max } else { x0 + step * i as f64 };
        let v = if x < 0.0 {
            sign * wavefunction(sol, -x)?
        } else {
            wavefunction(sol, x)?
        };
        out.push((x, v));
    }
    Ok(out)
}
