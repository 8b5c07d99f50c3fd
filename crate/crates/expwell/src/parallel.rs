//! Sweep parallelism, capped by `EXPWELL_THREADS`.

use crate::error::CliError;
use expwell_core::solver::{solve_state, BoundState, Coupling};
use expwell_core::Error;
use rayon::prelude::*;

pub const THREADS_VAR: &str = "EXPWELL_THREADS";

/// Thread cap from the environment; `None` leaves the choice to rayon.
pub fn thread_cap() -> Result<Option<usize>, CliError> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Usage {
                flag: THREADS_VAR,
                message: format!("expected a positive integer, got {s:?}"),
            }),
        },
    }
}

pub fn pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_cap()? {
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Usage {
        flag: THREADS_VAR,
        message: e.to_string(),
    })
}

/// Like the core `spectrum`, but levels are solved concurrently, one batch
/// per round, until a level is missing.
pub fn spectrum(g: Coupling, n_max: usize, tol_k: f64) -> Result<Vec<BoundState>, Error> {
    let batch = rayon::current_num_threads().max(1);
    let mut out = Vec::new();
    let mut start = 0;
    while start <= n_max {
        let end = (start + batch - 1).min(n_max);
        let round: Vec<Result<BoundState, Error>> = (start..=end)
            .into_par_iter()
            .map(|n| solve_state(g, n, tol_k))
            .collect();
        for r in round {
            match r {
                Ok(s) => out.push(s),
                Err(Error::NoSuchState { .. }) => return Ok(out),
                Err(e) => return Err(e),
            }
        }
        start = end + 1;
    }
    Ok(out)
}
