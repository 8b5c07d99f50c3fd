use core::fmt;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Gamma function evaluated at zero or a negative integer.
    Pole { x: f64 },
    /// Argument outside the mathematical domain of the operation.
    Domain { what: &'static str, value: f64 },
    /// Argument outside the documented accuracy envelope.
    Envelope {
        what: &'static str,
        value: f64,
        limit: f64,
    },
    /// The Bessel Wronskian at the origin collapsed, which means the special
    /// function evaluation failed.
    DegenerateWronskian { value: f64 },
    /// `2k` is too close to an integer for the connection formula.
    NearIntegerOrder { k: f64 },
    /// A grid cell showed more than one sign change after refinement.
    Inconclusive { x_lo: f64, x_hi: f64 },
    /// The well does not support a bound state with this quantum number.
    NoSuchState { n: usize, g: f64 },
    /// The node-count predicate did not separate the initial search interval.
    BracketInit { k_lo: f64, k_hi: f64 },
    /// An iterative method ran out of iterations.
    NoConvergence {
        what: &'static str,
        iterations: usize,
    },
    /// The finite-difference box cannot resolve the requested eigenvalue.
    GridTooSmall { index: usize, energy: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole { x } => write!(f, "gamma function pole at x = {x}"),
            Error::Domain { what, value } => write!(f, "{what} out of domain: {value}"),
            Error::Envelope { what, value, limit } => {
                write!(f, "{what} = {value} outside supported envelope (limit {limit})")
            }
            Error::DegenerateWronskian { value } => {
                write!(f, "degenerate Bessel Wronskian |W| = {value:e}")
            }
            Error::NearIntegerOrder { k } => {
                write!(f, "2k = {} is too close to an integer", 2.0 * k)
            }
            Error::Inconclusive { x_lo, x_hi } => write!(
                f,
                "node count inconclusive: multiple sign changes in cell [{x_lo}, {x_hi}]"
            ),
            Error::NoSuchState { n, g } => write!(f, "no bound state n = {n} exists for g = {g}"),
            Error::BracketInit { k_lo, k_hi } => write!(
                f,
                "node count does not change on the search interval [{k_lo}, {k_hi}]"
            ),
            Error::NoConvergence { what, iterations } => {
                write!(f, "{what} did not converge in {iterations} iterations")
            }
            Error::GridTooSmall { index, energy } => write!(
                f,
                "finite-difference grid cannot resolve eigenvalue {index} (E = {energy})"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
