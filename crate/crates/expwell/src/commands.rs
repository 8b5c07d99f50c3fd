//! One function per subcommand. Each returns the structured payload and
//! its tabular view; printing is left to the caller.

use crate::checks::{self, Check};
use crate::cli::{
    Command, FigdataArgs, Figure, HoboundArgs, OracleArgs, SelfcheckArgs, SolveArgs, SpectrumArgs,
};
use crate::error::{exit, CliError};
use crate::figures::{self, Range};
use crate::num::{fmt, Interval, Num};
use crate::parallel;
use crate::report::{Outcome, Table};
use expwell_core::hobound::{
    bound_slope, ho_upper_bound, optimal_xi, xi_from_omega, HoEstimate, OsculationPoint,
};
use expwell_core::oracle::{fd_eigenvector, fd_spectrum, FdGrid, OracleResult};
use expwell_core::solver::{certify, solve_state, BoundState, Coupling};
use serde::Serialize;
use serde_json::{json, Value};
use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

pub fn run(cmd: &Command) -> Result<Outcome, CliError> {
    let pool = parallel::pool()?;
    pool.install(|| match cmd {
        Command::Solve(a) => solve(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Hobound(a) => hobound(a),
        Command::Figdata(a) => figdata(a),
        Command::Oracle(a) => oracle(a),
        Command::Selfcheck(a) => selfcheck(a),
    })
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if !(tol >= expwell_core::solver::MIN_TOLERANCE) || !tol.is_finite() {
        return Err(CliError::Flag {
            flag: "--tol",
            source: expwell_core::Error::Domain {
                what: "tolerance in k (at least 1e-12)",
                value: tol,
            },
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct StateRecord {
    pub n: usize,
    pub parity: &'static str,
    pub energy: Num,
    pub energy_bracket: Interval,
    pub k: Num,
    pub k_bracket: Interval,
    pub nodes: usize,
    pub iterations: usize,
    pub certified: bool,
}

fn record(s: &BoundState, g: Coupling) -> Result<StateRecord, CliError> {
    let cert = certify(s, g)?;
    Ok(StateRecord {
        n: s.n,
        parity: s.parity.as_str(),
        energy: Num(s.energy),
        energy_bracket: Interval(s.energy_bracket.0, s.energy_bracket.1),
        k: Num(s.k),
        k_bracket: Interval(s.bracket.k_lo, s.bracket.k_hi),
        nodes: s.nodes,
        iterations: s.iterations,
        certified: cert.is_certified(),
    })
}

const STATE_HEADERS: [&str; 9] = [
    "n",
    "parity",
    "energy",
    "E_lo",
    "E_hi",
    "k",
    "nodes",
    "iterations",
    "certified",
];

fn state_row(r: &StateRecord) -> Vec<String> {
    vec![
        r.n.to_string(),
        r.parity.to_string(),
        fmt(r.energy.0),
        fmt(crate::num::round_down(r.energy_bracket.0)),
        fmt(crate::num::round_up(r.energy_bracket.1)),
        fmt(r.k.0),
        r.nodes.to_string(),
        r.iterations.to_string(),
        r.certified.to_string(),
    ]
}

pub fn solve(a: &SolveArgs) -> Result<Outcome, CliError> {
    let g = a.coupling.coupling()?;
    check_tol(a.tol)?;
    let s = solve_state(g, a.n, a.tol)?;
    let r = record(&s, g)?;
    let mut t = Table::new("", &STATE_HEADERS);
    t.push(state_row(&r));
    Ok(Outcome::ok(json!({ "g": Num(g.value()), "state": r }), vec![t]))
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleLevel {
    pub n: usize,
    pub energy: Num,
    pub extrapolated: Num,
    pub richardson_error: Num,
}

#[derive(Debug, Clone, Serialize)]
pub struct GridRecord {
    pub half_width: Num,
    pub points: usize,
    pub spacing: Num,
}

fn grid_record(r: &OracleResult) -> GridRecord {
    GridRecord {
        half_width: Num(r.grid.half_width),
        points: r.grid.n_points,
        spacing: Num(r.grid.spacing()),
    }
}

fn oracle_levels(r: &OracleResult) -> Vec<OracleLevel> {
    (0..r.energies.len())
        .map(|n| OracleLevel {
            n,
            energy: Num(r.energies[n]),
            extrapolated: Num(r.extrapolated[n]),
            richardson_error: Num(r.richardson_error[n]),
        })
        .collect()
}

fn run_oracle(g: Coupling, half_width: f64, points: usize, n_max: usize) -> Result<OracleResult, CliError> {
    let grid = FdGrid::new(g, half_width, points).map_err(CliError::flag("--half-width/--points"))?;
    Ok(fd_spectrum(g, &grid, n_max)?)
}

/// Agreement threshold between the solver and the reference.
pub const ORACLE_AGREEMENT: f64 = 1e-4;

pub fn spectrum(a: &SpectrumArgs) -> Result<Outcome, CliError> {
    let g = a.coupling.coupling()?;
    check_tol(a.tol)?;
    let states = parallel::spectrum(g, a.nmax, a.tol)?;
    let records = states
        .iter()
        .map(|s| record(s, g))
        .collect::<Result<Vec<_>, _>>()?;

    let mut headers: Vec<&str> = STATE_HEADERS.to_vec();
    let mut results = json!({
        "g": Num(g.value()),
        "count": records.len(),
        "states": records,
    });
    let mut rows: Vec<Vec<String>> = records.iter().map(state_row).collect();

    if a.check_oracle {
        let n_max = states.len().saturating_sub(1);
        let r = run_oracle(g, a.oracle_half_width, a.oracle_points, n_max)?;
        headers.extend(["oracle_E", "richardson_err", "delta"]);
        let mut worst: f64 = 0.0;
        let mut compared = Vec::new();
        for (i, s) in states.iter().enumerate() {
            match r.extrapolated.get(i) {
                Some(&e) => {
                    let d = (s.energy - e).abs();
                    worst = worst.max(d);
                    rows[i].extend([fmt(e), fmt(r.richardson_error[i]), fmt(d)]);
                    compared.push(json!({
                        "n": i,
                        "oracle_energy": Num(e),
                        "richardson_error": Num(r.richardson_error[i]),
                        "delta": Num(d),
                        "agree": d <= ORACLE_AGREEMENT,
                    }));
                }
                None => {
                    worst = f64::INFINITY;
                    rows[i].extend(["-".into(), "-".into(), "-".into()]);
                    compared.push(json!({ "n": i, "oracle_energy": null, "agree": false }));
                }
            }
        }
        results["oracle"] = json!({
            "grid": grid_record(&r),
            "levels": compared,
            "max_delta": Num(worst),
            "tolerance": Num(ORACLE_AGREEMENT),
            "all_agree": worst <= ORACLE_AGREEMENT,
        });
    }
    let mut t = Table::new("", &headers);
    for row in rows {
        t.push(row);
    }
    Ok(Outcome::ok(results, vec![t]))
}

#[derive(Debug, Clone, Serialize)]
pub struct EstimateRecord {
    pub g: Num,
    pub n: usize,
    pub xi: Num,
    pub omega: Num,
    pub shift: Num,
    pub bound: Num,
    /// Largest mismatch of the tangency conditions at `xi`.
    pub osculation_residual: Num,
}

fn estimate_record(e: &HoEstimate) -> EstimateRecord {
    let (a, b) = e.osculation_residuals();
    EstimateRecord {
        g: Num(e.g),
        n: e.n,
        xi: Num(e.xi),
        omega: Num(e.omega),
        shift: Num(e.shift),
        bound: Num(e.bound),
        osculation_residual: Num(a.max(b)),
    }
}

pub fn hobound(a: &HoboundArgs) -> Result<Outcome, CliError> {
    let g = a.coupling.coupling()?;
    let mut headers = vec!["n", "xi", "omega", "M", "bound"];
    let (est, opt) = if a.optimize {
        let o = optimal_xi(g, a.n)?;
        (o.estimate, Some(o))
    } else if let Some(xi) = a.xi {
        let p = OsculationPoint::new(xi).map_err(CliError::flag("--xi"))?;
        (ho_upper_bound(g, p, a.n), None)
    } else {
        let omega = a.omega.unwrap_or(f64::NAN);
        let p = xi_from_omega(g, omega).map_err(CliError::flag("--omega"))?;
        (ho_upper_bound(g, p, a.n), None)
    };
    let rec = estimate_record(&est);
    let mut row = vec![
        a.n.to_string(),
        fmt(est.xi),
        fmt(est.omega),
        fmt(est.shift),
        fmt(est.bound),
    ];
    let mut results = json!({ "estimate": rec });
    let mut outcome_code = exit::OK;
    let mut message = None;
    if let Some(o) = opt {
        let slope = bound_slope(g, OsculationPoint::new(o.xi0)?, a.n);
        headers.extend(["branch", "interior"]);
        row.extend([o.branch.as_str().to_string(), o.interior.to_string()]);
        results["optimization"] = json!({
            "xi0": Num(o.xi0),
            "branch": o.branch.as_str(),
            "interior": o.interior,
            "slope": Num(slope),
        });
        if !o.interior {
            outcome_code = exit::DOMAIN;
            message = Some(format!(
                "--optimize: no interior minimum on (0, 3] for g = {}; reported value is the infimum at xi = 3",
                fmt(g.value())
            ));
        }
    }
    let mut t = Table::new("", &headers);
    t.push(row);
    Ok(Outcome {
        results,
        tables: vec![t],
        exit_code: outcome_code,
        message,
    })
}

fn write_table_csv(path: &Path, t: &Table) -> Result<(), CliError> {
    let file = File::create(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    crate::report::write_csv(std::slice::from_ref(t), BufWriter::new(file)).map_err(|source| {
        CliError::Csv {
            path: path.to_path_buf(),
            source,
        }
    })
}

/// Data table plus a summary; the caller prints one or the other.
pub struct FigureData {
    pub summary: Value,
    pub data: Table,
}

pub fn figure_data(a: &FigdataArgs) -> Result<FigureData, CliError> {
    let (summary, data) = match a.which {
        Figure::Fig1 => {
            let g = a.coupling()?;
            let x = Range {
                min: a.x_min,
                max: a.x_max,
                steps: a.x_steps,
            };
            let (s, t) = figures::fig1(g, a.omega, x).map_err(CliError::flag("--omega"))?;
            (serde_json::to_value(s).expect("summary"), t)
        }
        Figure::Fig2 => {
            let g = Range {
                min: a.g_min,
                max: a.g_max,
                steps: a.g_steps,
            };
            let xi = Range {
                min: a.xi_min.unwrap_or(0.1),
                max: a.xi_max.unwrap_or(6.0),
                steps: a.xi_steps.unwrap_or(59),
            };
            let (m, t) = figures::fig2(g, xi).map_err(CliError::flag("--g-min/--g-max/--xi-min/--xi-max"))?;
            (json!({ "rows": t.rows.len(), "minima": m }), t)
        }
        Figure::Curve => {
            let xi = Range {
                min: a.xi_min.unwrap_or(0.1),
                max: a.xi_max.unwrap_or(10.0),
                steps: a.xi_steps.unwrap_or(99),
            };
            let (s, t) = figures::curve(xi).map_err(CliError::flag("--xi-min/--xi-max"))?;
            (serde_json::to_value(s).expect("summary"), t)
        }
    };
    Ok(FigureData { summary, data })
}

pub fn figdata(a: &FigdataArgs) -> Result<Outcome, CliError> {
    let fd = figure_data(a)?;
    let which = serde_json::to_value(a.which).expect("figure name");
    match &a.out {
        Some(path) => {
            write_table_csv(path, &fd.data)?;
            let mut t = Table::new("", &["figure", "path", "rows"]);
            t.push(vec![
                which.as_str().unwrap_or_default().to_string(),
                path.display().to_string(),
                fd.data.rows.len().to_string(),
            ]);
            let results = json!({
                "figure": which,
                "path": path.display().to_string(),
                "columns": fd.data.headers,
                "summary": fd.summary,
            });
            Ok(Outcome::ok(results, vec![t]))
        }
        None => {
            let results = json!({
                "figure": which,
                "columns": fd.data.headers,
                "rows": fd.data.rows,
                "summary": fd.summary,
            });
            Ok(Outcome::ok(results, vec![fd.data]))
        }
    }
}

pub fn oracle(a: &OracleArgs) -> Result<Outcome, CliError> {
    let g = a.coupling.coupling()?;
    let r = run_oracle(g, a.half_width, a.points, a.nmax)?;
    let levels = oracle_levels(&r);
    let mut t = Table::new("", &["n", "energy", "extrapolated", "richardson_err"]);
    for l in &levels {
        t.push(vec![
            l.n.to_string(),
            fmt(l.energy.0),
            fmt(l.extrapolated.0),
            fmt(l.richardson_error.0),
        ]);
    }
    let mut results = json!({
        "g": Num(g.value()),
        "grid": grid_record(&r),
        "count": levels.len(),
        "levels": levels,
    });
    if let (Some(n), Some(path)) = (a.eigenvector, &a.out) {
        let v = fd_eigenvector(g, &r.grid, n).map_err(CliError::flag("--eigenvector"))?;
        let mut vt = Table::new("", &["x", "value"]);
        for (x, y) in &v {
            vt.push(vec![fmt(*x), fmt(*y)]);
        }
        write_table_csv(path, &vt)?;
        results["eigenvector"] = json!({
            "n": n,
            "path": path.display().to_string(),
            "rows": v.len(),
        });
    }
    Ok(Outcome::ok(results, vec![t]))
}

pub fn selfcheck(a: &SelfcheckArgs) -> Result<Outcome, CliError> {
    let suite = a.selected();
    let list: Vec<Check> = checks::run(suite);
    let failed: Vec<String> = list
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{}.{}", c.suite, c.name))
        .collect();
    let mut t = Table::new("", &["suite", "check", "worst", "relation", "limit", "status"]);
    for c in &list {
        t.push(vec![
            c.suite.to_string(),
            c.name.to_string(),
            fmt(c.worst),
            c.relation.to_string(),
            fmt(c.limit),
            if c.pass { "pass" } else { "FAIL" }.to_string(),
        ]);
    }
    let checks_json: Vec<Value> = list
        .iter()
        .map(|c| {
            json!({
                "suite": c.suite,
                "name": c.name,
                "worst": Num(c.worst),
                "relation": c.relation,
                "limit": Num(c.limit),
                "pass": c.pass,
            })
        })
        .collect();
    let results = json!({
        "suite": suite,
        "passed": list.len() - failed.len(),
        "failed": failed,
        "checks": checks_json,
    });
    let (exit_code, message) = if failed.is_empty() {
        (exit::OK, None)
    } else {
        (exit::SELFCHECK, Some(format!("self-check failed: {}", failed.join(", "))))
    };
    Ok(Outcome {
        results,
        tables: vec![t],
        exit_code,
        message,
    })
}
