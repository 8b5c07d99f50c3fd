//! Figure data: the well with one osculating parabola, the bound surface
//! over `(g, ξ)`, and the stationary curve `g(ξ₀)`.

use crate::num::{fmt, Num};
use crate::report::Table;
use expwell_core::hobound::{
    classify_branch, coupling_of_optimal_xi, ho_upper_bound, parabola, potential, xi_from_omega,
    OsculationPoint,
};
use expwell_core::solver::Coupling;
use expwell_core::Result;
use rayon::prelude::*;
use serde::Serialize;

/// Inclusive uniform range split into `steps` intervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Range {
    pub fn points(&self) -> Vec<f64> {
        let n = self.steps.max(1);
        (0..=n)
            .map(|i| {
                if i == n {
                    self.max
                } else {
                    self.min + (self.max - self.min) * i as f64 / n as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FigOneSummary {
    pub g: Num,
    pub omega: Num,
    pub xi: Num,
    pub shift: Num,
    pub bound: Num,
    /// Smallest `parabola − well` over the samples.
    pub min_gap: Num,
    pub min_gap_x: Num,
    pub rows: usize,
}

/// Samples of `x, V(x), ω²x² − M` on `[−x_max, x_max]`, with the two
/// tangency points `±ξ` added to the grid.
pub fn fig1(g: Coupling, omega: f64, x: Range) -> Result<(FigOneSummary, Table)> {
    let xi = xi_from_omega(g, omega)?;
    let est = ho_upper_bound(g, xi, 0);
    let mut xs = x.points();
    for t in [-xi.value(), xi.value()] {
        if t >= x.min && t <= x.max {
            xs.push(t);
        }
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mut table = Table::new("", &["x", "V", "V_ho"]);
    let mut min_gap = (f64::INFINITY, 0.0);
    for &t in &xs {
        let v = potential(g, t);
        let p = parabola(est.omega, est.shift, t);
        if p - v < min_gap.0 {
            min_gap = (p - v, t);
        }
        table.push(vec![fmt(t), fmt(v), fmt(p)]);
    }
    let summary = FigOneSummary {
        g: Num(g.value()),
        omega: Num(est.omega),
        xi: Num(est.xi),
        shift: Num(est.shift),
        bound: Num(est.bound),
        min_gap: Num(min_gap.0),
        min_gap_x: Num(min_gap.1),
        rows: xs.len(),
    };
    Ok((summary, table))
}

#[derive(Debug, Clone, Serialize)]
pub struct RowMinimum {
    pub g: Num,
    pub xi: Num,
    pub bound: Num,
    pub branch: &'static str,
}

/// Bound `E₀ ≤ ω − M` on the grid `g × ξ`, rows computed in parallel and
/// emitted in grid order. Returns the per-`g` minima over the `ξ` column.
pub fn fig2(g: Range, xi: Range) -> Result<(Vec<RowMinimum>, Table)> {
    let xis = xi.points();
    for &x in &xis {
        OsculationPoint::new(x)?;
    }
    let gs = g.points();
    for &v in &gs {
        Coupling::new(v)?;
    }
    let rows: Vec<(RowMinimum, Vec<Vec<String>>)> = gs
        .par_iter()
        .map(|&gv| {
            let c = Coupling::new(gv).unwrap();
            let mut best = (f64::INFINITY, 0.0);
            let cells = xis
                .iter()
                .map(|&x| {
                    let b = ho_upper_bound(c, OsculationPoint::new(x).unwrap(), 0).bound;
                    if b < best.0 {
                        best = (b, x);
                    }
                    vec![fmt(gv), fmt(x), fmt(b)]
                })
                .collect();
            let m = RowMinimum {
                g: Num(gv),
                xi: Num(best.1),
                bound: Num(best.0),
                branch: classify_branch(best.1).as_str(),
            };
            (m, cells)
        })
        .collect();
    let mut table = Table::new("", &["g", "xi", "bound"]);
    let mut minima = Vec::with_capacity(rows.len());
    for (m, cells) in rows {
        minima.push(m);
        for c in cells {
            table.push(c);
        }
    }
    Ok((minima, table))
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveSummary {
    pub argmin_xi0: Num,
    pub min_g: Num,
    pub rows: usize,
}

/// `ξ₀, g(ξ₀), branch` on a uniform grid.
pub fn curve(xi: Range) -> Result<(CurveSummary, Table)> {
    let mut table = Table::new("", &["xi0", "g", "branch"]);
    let mut best = (f64::INFINITY, 0.0);
    let pts = xi.points();
    for &x in &pts {
        let g = coupling_of_optimal_xi(x)?;
        if g < best.0 {
            best = (g, x);
        }
        table.push(vec![fmt(x), fmt(g), classify_branch(x).as_str().to_string()]);
    }
    Ok((
        CurveSummary {
            argmin_xi0: Num(best.1),
            min_g: Num(best.0),
            rows: pts.len(),
        },
        table,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn range_hits_both_ends() {
        let r = Range {
            min: 0.1,
            max: 6.0,
            steps: 7,
        };
        let p = r.points();
        assert_eq!(p.len(), 8);
        assert_eq!(p[0], 0.1);
        assert_eq!(p[7], 6.0);
    }

    #[test]
    fn figure_one_touches_at_tangency() {
        let g = Coupling::new(SQRT_2).unwrap();
        let (s, t) = fig1(
            g,
            1.0,
            Range {
                min: -4.0,
                max: 4.0,
                steps: 800,
            },
        )
        .unwrap();
        assert!(s.min_gap.0.abs() <= 1e-8);
        assert!((s.min_gap_x.0.abs() - 0.567_143_290_4).abs() < 1e-9);
        assert_eq!(t.rows.len(), 803);
    }

    #[test]
    fn curve_minimum_row() {
        let (s, _) = curve(Range {
            min: 0.1,
            max: 10.0,
            steps: 99,
        })
        .unwrap();
        assert!((s.argmin_xi0.0 - 3.0).abs() < 1e-9);
    }
}
