//! Brute-force reference spectrum: three-point finite differences on a
//! Dirichlet box `[−L, L]`, eigenvalues of the tridiagonal matrix by Sturm
//! counting and bisection.
//!
//! The grid has an odd number of interior points so the kink of the
//! potential at the origin sits on a node. Every run is repeated at half
//! the spacing; the difference gives a second-order Richardson estimate.

use crate::error::{Error, Result};
use crate::solver::Coupling;
use alloc::vec;
use alloc::vec::Vec;

pub const MIN_POINTS: usize = 200;
/// Largest allowed `g² e^{−L}`, the potential at the walls.
pub const WALL_POTENTIAL: f64 = 1e-10;
/// Absolute bisection tolerance on matrix eigenvalues.
pub const EIGEN_TOL: f64 = 1e-12;
pub const INVERSE_ITERATION_STEPS: usize = 50;

/// Box `[−L, L]` with `N` interior points at spacing `h = 2L/(N+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdGrid {
    pub half_width: f64,
    pub n_points: usize,
}

impl FdGrid {
    pub fn new(g: Coupling, half_width: f64, n_points: usize) -> Result<Self> {
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::Domain {
                what: "box half-width L",
                value: half_width,
            });
        }
        if n_points < MIN_POINTS || n_points % 2 == 0 {
            return Err(Error::Domain {
                what: "interior point count N (odd, at least 200)",
                value: n_points as f64,
            });
        }
        let grid = FdGrid {
            half_width,
            n_points,
        };
        grid.check_walls(g)?;
        Ok(grid)
    }

    fn check_walls(&self, g: Coupling) -> Result<()> {
        let wall = g.depth() * libm::exp(-self.half_width);
        if !(wall <= WALL_POTENTIAL) {
            return Err(Error::Envelope {
                what: "wall potential g^2 exp(-L)",
                value: wall,
                limit: WALL_POTENTIAL,
            });
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.n_points + 1) as f64
    }

    /// Same box at half the spacing.
    pub fn refined(&self) -> FdGrid {
        FdGrid {
            half_width: self.half_width,
            n_points: 2 * self.n_points + 1,
        }
    }

    /// Position of interior point `i` (0-based).
    pub fn x(&self, i: usize) -> f64 {
        -self.half_width + (i + 1) as f64 * self.spacing()
    }

    /// Index of the point at `x = 0`.
    pub fn center(&self) -> usize {
        self.n_points / 2
    }
}

/// Eigenvalues below zero at spacing `h/2`, with Richardson data.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub grid: FdGrid,
    /// Values at the refined spacing `h/2`.
    pub energies: Vec<f64>,
    /// `(4 E(h/2) − E(h)) / 3`.
    pub extrapolated: Vec<f64>,
    /// `|E(h) − E(h/2)| / 3`.
    pub richardson_error: Vec<f64>,
}

fn diagonal(g: Coupling, grid: &FdGrid) -> Vec<f64> {
    let h = grid.spacing();
    let kin = 2.0 / (h * h);
    let depth = g.depth();
    (0..grid.n_points)
        .map(|i| kin - depth * libm::exp(-libm::fabs(grid.x(i))))
        .collect()
}

fn count_below(diag: &[f64], off2: f64, sigma: f64) -> usize {
    let mut count = 0;
    let mut d = 1.0;
    for (i, &a) in diag.iter().enumerate() {
        d = if i == 0 { a - sigma } else { a - sigma - off2 / d };
        if d == 0.0 {
            d = -f64::EPSILON * (libm::fabs(a) + libm::fabs(sigma) + 1.0);
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Number of matrix eigenvalues strictly below `sigma` (Sturm count).
pub fn sturm_count(g: Coupling, grid: &FdGrid, sigma: f64) -> usize {
    let h = grid.spacing();
    let off = 1.0 / (h * h);
    count_below(&diagonal(g, grid), off * off, sigma)
}

fn bisect_eigenvalue(diag: &[f64], off2: f64, index: usize, mut lo: f64, mut hi: f64) -> f64 {
    while hi - lo > EIGEN_TOL {
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            break;
        }
        if count_below(diag, off2, mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Negative eigenvalues with index `≤ n_max` on one grid, lowest first.
pub fn fd_eigenvalues(g: Coupling, grid: &FdGrid, n_max: usize) -> Result<Vec<f64>> {
    grid.check_walls(g)?;
    let h = grid.spacing();
    let off = 1.0 / (h * h);
    let diag = diagonal(g, grid);
    let bound = count_below(&diag, off * off, 0.0);
    let wanted = bound.min(n_max + 1);
    // the Laplacian is positive, so nothing lies below the well bottom
    let floor = -g.depth() - 1.0;
    Ok((0..wanted)
        .map(|j| bisect_eigenvalue(&diag, off * off, j, floor, 0.0))
        .collect())
}

/// Bound-state energies with index `≤ n_max`. Levels the box does not hold
/// below zero are absent from the result; a level that is negative but not
/// separated from zero by more than its error estimate is an error.
pub fn fd_spectrum(g: Coupling, grid: &FdGrid, n_max: usize) -> Result<OracleResult> {
    let coarse = fd_eigenvalues(g, grid, n_max)?;
    let fine = fd_eigenvalues(g, &grid.refined(), n_max)?;
    let count = coarse.len().min(fine.len());
    let mut energies = Vec::with_capacity(count);
    let mut extrapolated = Vec::with_capacity(count);
    let mut richardson_error = Vec::with_capacity(count);
    for j in 0..count {
        let (e1, e2) = (coarse[j], fine[j]);
        let err = libm::fabs(e1 - e2) / 3.0;
        if !(-e2 > err) {
            return Err(Error::GridTooSmall {
                index: j,
                energy: e2,
            });
        }
        energies.push(e2);
        extrapolated.push((4.0 * e2 - e1) / 3.0);
        richardson_error.push(err);
    }
    Ok(OracleResult {
        grid: *grid,
        energies,
        extrapolated,
        richardson_error,
    })
}

/// Solves `(T − σ) x = b` for tridiagonal `T` with constant off-diagonal,
/// Gaussian elimination with partial pivoting.
fn solve_shifted(diag: &[f64], off: f64, sigma: f64, b: &[f64]) -> Vec<f64> {
    let n = diag.len();
    // row i of U holds u0[i] (diagonal), u1[i], u2[i] (two superdiagonals)
    let mut u0 = vec![0.0; n];
    let mut u1 = vec![0.0; n];
    let mut u2 = vec![0.0; n];
    let mut rhs = b.to_vec();
    // current working row: (a, c, 0) at columns (i, i+1, i+2)
    let mut a = diag[0] - sigma;
    let mut c = if n > 1 { off } else { 0.0 };
    let mut e = 0.0;
    let mut r = rhs[0];
    for i in 0..n {
        if i + 1 == n {
            u0[i] = if a == 0.0 { f64::EPSILON } else { a };
            u1[i] = 0.0;
            u2[i] = 0.0;
            rhs[i] = r;
            break;
        }
        // next original row: (off, d, off) at columns (i, i+1, i+2)
        let nd = diag[i + 1] - sigma;
        let nc = if i + 2 < n { off } else { 0.0 };
        let nr = rhs[i + 1];
        if libm::fabs(off) > libm::fabs(a) {
            // swap: pivot row is the original next row
            u0[i] = off;
            u1[i] = nd;
            u2[i] = nc;
            rhs[i] = nr;
            let m = a / off;
            a = c - m * nd;
            c = e - m * nc;
            e = 0.0;
            r -= m * nr;
        } else {
            let piv = if a == 0.0 { f64::EPSILON } else { a };
            u0[i] = piv;
            u1[i] = c;
            u2[i] = e;
            rhs[i] = r;
            let m = off / piv;
            a = nd - m * c;
            c = nc - m * e;
            e = 0.0;
            r = nr - m * r;
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        if i + 1 < n {
            s -= u1[i] * x[i + 1];
        }
        if i + 2 < n {
            s -= u2[i] * x[i + 2];
        }
        x[i] = s / u0[i];
    }
    x
}

fn normalize_max(v: &mut [f64]) {
    let m = v.iter().fold(0.0f64, |m, &x| m.max(libm::fabs(x)));
    if m > 0.0 {
        for x in v.iter_mut() {
            *x /= m;
        }
    }
}

/// Eigenvector of level `n` on `grid` by inverse iteration, as `(x, value)`
/// pairs. Normalized to `max |value| = 1` and signed so the first point
/// right of the origin is positive.
pub fn fd_eigenvector(g: Coupling, grid: &FdGrid, n: usize) -> Result<Vec<(f64, f64)>> {
    let levels = fd_eigenvalues(g, grid, n)?;
    let Some(&lambda) = levels.get(n) else {
        return Err(Error::NoSuchState { n, g: g.value() });
    };
    let h = grid.spacing();
    let off = -1.0 / (h * h);
    let diag = diagonal(g, grid);
    let sigma = lambda - 1e-9 * (1.0 + libm::fabs(lambda));
    let size = grid.n_points;
    // a start vector with no special symmetry
    let mut v: Vec<f64> = (0..size)
        .map(|i| 1.0 + 0.5 * libm::sin(0.37 * i as f64 + 0.1))
        .collect();
    normalize_max(&mut v);
    let right = grid.center() + 1;
    let mut converged = false;
    for _ in 0..INVERSE_ITERATION_STEPS {
        let mut w = solve_shifted(&diag, off, sigma, &v);
        normalize_max(&mut w);
        if w[right] < 0.0 {
            for x in w.iter_mut() {
                *x = -*x;
            }
        }
        let change = v
            .iter()
            .zip(&w)
            .fold(0.0f64, |m, (a, b)| m.max(libm::fabs(a - b)));
        v = w;
        if change < 1e-13 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            what: "inverse iteration",
            iterations: INVERSE_ITERATION_STEPS,
        });
    }
    Ok((0..size).map(|i| (grid.x(i), v[i])).collect())
}
