//! Self-check suites: identities and invariants evaluated on fixed grids and
//! seeded random trials, each reduced to a worst-case figure and a limit.

use expwell_core::hobound::{
    coupling_of_optimal_xi, golden_min, ho_upper_bound, optimal_xi, parabola, potential,
    xi_from_omega, OsculationPoint,
};
use expwell_core::oracle::{fd_eigenvalues, fd_spectrum, sturm_count, FdGrid};
use expwell_core::solver::{
    certify, nodes_at, solve_state, wavefunction, wavefunction_derivative, Coupling,
    EnergyParameter, MatchedSolution, Parity,
};
use expwell_core::specfun::{bessel_j, bessel_y, gamma_real, sin_pi, Argument, Order};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{PI, SQRT_2};

pub const SEED: u64 = 0x5EED_0F_E4F0;
pub const RANDOM_TRIALS: usize = 1000;
pub const RESIDUAL_POINTS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Specfun,
    Solver,
    Hobound,
    Oracle,
    All,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    /// Worst-case statistic over the suite's samples.
    pub worst: f64,
    pub limit: f64,
    /// How `worst` is compared with `limit`.
    pub relation: &'static str,
    pub pass: bool,
}

impl Check {
    fn at_most(suite: &'static str, name: &'static str, worst: f64, limit: f64) -> Self {
        Check {
            suite,
            name,
            worst,
            limit,
            relation: "<=",
            pass: worst <= limit,
        }
    }

    fn above(suite: &'static str, name: &'static str, worst: f64, limit: f64) -> Self {
        Check {
            suite,
            name,
            worst,
            limit,
            relation: ">",
            pass: worst > limit,
        }
    }
}

pub fn run(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Specfun => specfun(),
        Suite::Solver => solver(),
        Suite::Hobound => hobound(),
        Suite::Oracle => oracle(),
        Suite::All => {
            let mut v = specfun();
            v.extend(solver());
            v.extend(hobound());
            v.extend(oracle());
            v
        }
    }
}

fn j(nu: f64, z: f64) -> f64 {
    bessel_j(Order::new(nu).unwrap(), Argument::new(z).unwrap())
}

fn y(nu: f64, z: f64) -> f64 {
    bessel_y(Order::new(nu).unwrap(), Argument::new(z).unwrap())
}

fn max(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, |m, x| if x.is_nan() { f64::INFINITY } else { m.max(x) })
}

// Orders far below −z make the connection formula subtract products much
// larger than the Wronskian itself.
fn wronskian_domain(nu: f64, z: f64) -> bool {
    nu >= -(z + 1.0)
}

pub fn specfun() -> Vec<Check> {
    let orders: Vec<f64> = (0..43).map(|i| -40.37 + 1.913 * i as f64).collect();
    let args: Vec<f64> = (0..36).map(|i| 0.1 * 1.17f64.powi(i)).filter(|&z| z <= 40.0).collect();

    let wronskian = max(orders.par_iter().map(|&nu| {
        max(args.iter().filter(|&&z| wronskian_domain(nu, z)).map(|&z| {
            let w = j(nu + 1.0, z) * y(nu, z) - y(nu + 1.0, z) * j(nu, z);
            let exact = 2.0 / (PI * z);
            (w - exact).abs() / exact
        }))
    })
    .collect::<Vec<_>>()
    .into_iter());

    let recurrence = max(orders
        .par_iter()
        .filter(|nu| nu.abs() <= 30.0)
        .map(|&nu| {
            max(args.iter().map(|&z| {
                let (jm, jc, jp) = (j(nu - 1.0, z), j(nu, z), j(nu + 1.0, z));
                let rhs = 2.0 * nu / z * jc;
                let scale = jm.abs().max(jp.abs()).max(rhs.abs());
                (jm + jp - rhs).abs() / scale
            }))
        })
        .collect::<Vec<_>>()
        .into_iter());

    let half = max((0..546).map(|i| {
        let z = 0.1 + 0.0731 * i as f64;
        let amp = (2.0 / (PI * z)).sqrt();
        let d = [
            j(0.5, z) - amp * z.sin(),
            j(-0.5, z) - amp * z.cos(),
            y(0.5, z) + amp * z.cos(),
            y(-0.5, z) - amp * z.sin(),
        ];
        max(d.iter().map(|e| e.abs() / amp))
    }));

    let reflection = max((0..2920).filter_map(|i| {
        let x = -19.95 + 0.0137 * i as f64;
        if (x - x.round()).abs() < 1e-3 {
            return None;
        }
        let v = gamma_real(x).ok()? * gamma_real(1.0 - x).ok()? * sin_pi(x) / PI;
        Some((v - 1.0).abs())
    }));

    vec![
        Check::at_most("specfun", "wronskian", wronskian, 1e-11),
        Check::at_most("specfun", "recurrence", recurrence, 1e-11),
        Check::at_most("specfun", "half_integer", half, 1e-11),
        Check::at_most("specfun", "gamma_reflection", reflection, 1e-12),
    ]
}

/// Random `(k, g, parity)` trials, `2k` kept away from integers.
pub fn random_trials(seed: u64, count: usize) -> Vec<(f64, f64, Parity)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let g: f64 = rng.random_range(0.05..20.0);
        let k = (rng.random_range(0.0..1.0) * g).max(1e-3);
        let parity = if rng.random_bool(0.5) {
            Parity::Odd
        } else {
            Parity::Even
        };
        let t = 2.0 * k;
        if (t - t.round()).abs() > 1e-4 {
            out.push((k, g, parity));
        }
    }
    out
}

fn trial(k: f64, g: f64, parity: Parity) -> MatchedSolution {
    MatchedSolution::new(
        EnergyParameter::new(k).unwrap(),
        Coupling::new(g).unwrap(),
        parity,
    )
    .unwrap()
}

/// `(|ψ(0) − target|, slope error)`; slope from a one-sided fourth-order
/// difference. For even states the slope error is scaled by `1 + |ψ″(0)|`.
fn origin_residuals(k: f64, g: f64, parity: Parity) -> (f64, f64) {
    let sol = trial(k, g, parity);
    let h = 1e-3;
    let p = |i: f64| wavefunction(&sol, i * h).unwrap();
    let slope =
        (-25.0 * p(0.0) + 48.0 * p(1.0) - 36.0 * p(2.0) + 16.0 * p(3.0) - 3.0 * p(4.0)) / (12.0 * h);
    let psi0 = p(0.0);
    match parity {
        Parity::Even => {
            let curv = (k * k - g * g) * psi0;
            ((psi0 - 1.0).abs(), slope.abs() / (1.0 + curv.abs()))
        }
        Parity::Odd => (psi0.abs(), (slope - 1.0).abs()),
    }
}

/// Largest ODE residual at `points` random positions in `(0.05, 10)`,
/// relative to `(g² e^{−x} + k²)` times the local amplitude.
fn ode_residual(k: f64, g: f64, parity: Parity, seed: u64, points: usize) -> f64 {
    let sol = trial(k, g, parity);
    let mut rng = StdRng::seed_from_u64(seed);
    let h = 0.005;
    max((0..points).map(|_| {
        let x: f64 = rng.random_range(0.05..10.0);
        let p = |d: f64| wavefunction(&sol, x + d * h).unwrap();
        let second =
            (-p(2.0) + 16.0 * p(1.0) - 30.0 * p(0.0) + 16.0 * p(-1.0) - p(-2.0)) / (12.0 * h * h);
        let well = g * g * (-x).exp();
        let psi = p(0.0);
        let residual = -second - well * psi + k * k * psi;
        let scale = well + k * k;
        let amp = psi
            .abs()
            .max(wavefunction_derivative(&sol, x).unwrap().abs() / scale.sqrt());
        residual.abs() / (scale * amp)
    }))
}

/// Violations of the step law on a uniform scan of `points` values of `k`
/// in `[0.01, g]`: count rises, or drops by more than one.
pub fn node_law_violations(g: f64, points: usize, parity: Parity) -> usize {
    let c = Coupling::new(g).unwrap();
    let counts: Vec<usize> = (0..points)
        .into_par_iter()
        .map(|i| {
            let k = 0.01 + (g - 0.01) * i as f64 / (points - 1) as f64;
            nodes_at(k, c, parity).unwrap_or(usize::MAX)
        })
        .collect();
    counts
        .windows(2)
        .filter(|w| w[0] == usize::MAX || w[1] > w[0] || w[0] - w[1] > 1)
        .count()
}

pub fn solver() -> Vec<Check> {
    let trials = random_trials(SEED, RANDOM_TRIALS);
    let origin: Vec<(Parity, f64, f64)> = trials
        .par_iter()
        .map(|&(k, g, p)| {
            let (v, s) = origin_residuals(k, g, p);
            (p, v, s)
        })
        .collect();
    let pick = |parity: Parity, value: bool| {
        max(origin
            .iter()
            .filter(|o| o.0 == parity)
            .map(|o| if value { o.1 } else { o.2 }))
    };
    let residual = max(trials
        .par_iter()
        .enumerate()
        .map(|(i, &(k, g, p))| ode_residual(k, g, p, SEED ^ i as u64, RESIDUAL_POINTS))
        .collect::<Vec<_>>()
        .into_iter());

    let violations = (node_law_violations(2.0, 200, Parity::Even)
        + node_law_violations(2.0, 200, Parity::Odd)) as f64;

    // distance of the ground-state energy outside (−0.81721, −0.81720)
    let root2 = Coupling::new(SQRT_2).unwrap();
    let outside = match solve_state(root2, 0, 1e-5) {
        Ok(s) => (-0.81721 - s.energy).max(s.energy + 0.81720).max(0.0),
        Err(_) => f64::INFINITY,
    };

    let uncertified = [SQRT_2, 2.0, 5.0]
        .par_iter()
        .map(|&g| {
            let c = Coupling::new(g).unwrap();
            match crate::parallel::spectrum(c, 10, 1e-8) {
                Ok(states) => states
                    .iter()
                    .filter(|s| !certify(s, c).map(|x| x.is_certified()).unwrap_or(false))
                    .count(),
                Err(_) => usize::MAX / 8,
            }
        })
        .sum::<usize>() as f64;

    vec![
        Check::at_most("solver", "origin_even_value", pick(Parity::Even, true), 1e-10),
        Check::at_most("solver", "origin_even_slope", pick(Parity::Even, false), 1e-6),
        Check::at_most("solver", "origin_odd_value", pick(Parity::Odd, true), 1e-10),
        Check::at_most("solver", "origin_odd_slope", pick(Parity::Odd, false), 1e-6),
        Check::at_most("solver", "ode_residual", residual, 1e-5),
        Check::at_most("solver", "node_law_violations", violations, 0.0),
        Check::at_most("solver", "ground_state_bracket", outside, 0.0),
        Check::at_most("solver", "uncertified_brackets", uncertified, 0.0),
    ]
}

fn log_spaced(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (a.ln() + (b.ln() - a.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Couplings of the majorization grid.
pub const MAJORIZATION_COUPLINGS: [f64; 5] = [0.5, 1.0, SQRT_2, 2.0, 5.0];

/// Most negative `parabola − well` over the majorization grid: 50
/// log-spaced tangency points in `(0.01, 10)` per coupling, `x` on `[−30, 30]`.
pub fn majorization_worst() -> f64 {
    let xis = log_spaced(0.01, 10.0, 50);
    MAJORIZATION_COUPLINGS
        .par_iter()
        .map(|&g| {
            let c = Coupling::new(g).unwrap();
            xis.iter()
                .map(|&x0| {
                    let e = ho_upper_bound(c, OsculationPoint::new(x0).unwrap(), 0);
                    (0..=6000)
                        .map(|i| {
                            let x = -30.0 + 0.01 * i as f64;
                            parabola(e.omega, e.shift, x) - potential(c, x)
                        })
                        .fold(f64::INFINITY, f64::min)
                })
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min)
}

/// Smallest `bound − E₀` over `ξ` log-spaced in `(0.01, 10)`.
pub fn upper_bound_margin(g: f64, points: usize) -> Result<f64, expwell_core::Error> {
    let c = Coupling::new(g)?;
    let e0 = solve_state(c, 0, 1e-9)?.energy;
    Ok(log_spaced(0.01, 10.0, points)
        .iter()
        .map(|&x0| ho_upper_bound(c, OsculationPoint::new(x0).unwrap(), 0).bound - e0)
        .fold(f64::INFINITY, f64::min))
}

pub fn hobound() -> Vec<Check> {
    let gap = majorization_worst();

    let osculation = max(MAJORIZATION_COUPLINGS.iter().flat_map(|&g| {
        let c = Coupling::new(g).unwrap();
        log_spaced(0.01, 10.0, 50).into_iter().map(move |x0| {
            let e = ho_upper_bound(c, OsculationPoint::new(x0).unwrap(), 0);
            let (a, b) = e.osculation_residuals();
            a.max(b)
        })
    }));

    let root2 = Coupling::new(SQRT_2).unwrap();
    let fig = ho_upper_bound(root2, xi_from_omega(root2, 1.0).unwrap(), 0);
    let fig_err = (fig.shift - 1.455_938_091).abs().max((fig.bound + 0.455_938_091).abs());

    let argmin = golden_min(|x| coupling_of_optimal_xi(x).unwrap(), 0.1, 10.0, 1e-9);

    let margin = [0.8, 1.0, SQRT_2, 2.0, 3.0, 5.0]
        .par_iter()
        .map(|&g| upper_bound_margin(g, 50).unwrap_or(f64::NEG_INFINITY))
        .reduce(|| f64::INFINITY, f64::min);

    let opt = optimal_xi(root2, 0).map(|o| o.estimate.bound).unwrap_or(f64::NAN);
    let opt_outside = (-0.8172 - opt).max(opt + 0.455_938).max(0.0);
    let opt_outside = if opt.is_nan() { f64::INFINITY } else { opt_outside };

    vec![
        Check::at_most("hobound", "majorization_deficit", (-gap).max(0.0), 1e-12),
        Check::at_most("hobound", "osculation", osculation, 1e-10),
        Check::at_most("hobound", "figure_one_constants", fig_err, 1e-8),
        Check::at_most("hobound", "curve_minimum_offset", (argmin - 3.0).abs(), 1e-4),
        Check::above("hobound", "upper_bound_margin", margin, 0.0),
        Check::at_most("hobound", "optimized_bound_outside", opt_outside, 0.0),
    ]
}

pub fn oracle() -> Vec<Check> {
    let g = Coupling::new(3.0).unwrap();
    let grid = FdGrid::new(g, 30.0, 2001).unwrap();
    let levels = fd_eigenvalues(g, &grid, 50).unwrap_or_default();
    let sturm = (0..=40)
        .filter(|&i| {
            let sigma = -9.0 + 9.0 * i as f64 / 40.0;
            sturm_count(g, &grid, sigma) != levels.iter().filter(|&&e| e < sigma).count()
        })
        .count() as f64;

    let g2 = Coupling::new(2.0).unwrap();
    let e: Vec<f64> = [1001usize, 2003, 4007]
        .iter()
        .map(|&n| {
            let gr = FdGrid::new(g2, 30.0, n).unwrap();
            fd_eigenvalues(g2, &gr, 0).map(|v| v[0]).unwrap_or(f64::NAN)
        })
        .collect();
    let ratio = (e[0] - e[1]) / (e[1] - e[2]);
    let ratio_off = if (3.0..=5.0).contains(&ratio) { 0.0 } else { (ratio - 4.0).abs() };

    let root2 = Coupling::new(SQRT_2).unwrap();
    let diff = FdGrid::new(root2, 40.0, 16001)
        .and_then(|gr| fd_spectrum(root2, &gr, 0))
        .and_then(|r| Ok((r.extrapolated[0] - solve_state(root2, 0, 1e-10)?.energy).abs()))
        .unwrap_or(f64::INFINITY);

    vec![
        Check::at_most("oracle", "sturm_mismatches", sturm, 0.0),
        Check::at_most("oracle", "convergence_ratio_off", ratio_off, 0.0),
        Check::at_most("oracle", "ground_state_vs_solver", diff, 1e-4),
    ]
}
