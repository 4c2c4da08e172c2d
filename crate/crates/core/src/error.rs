use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the formula.
    Domain { what: &'static str, value: f64 },
    /// The bracket endpoints do not straddle a root.
    Bracket { lo: f64, hi: f64 },
    /// No stationary point of E(ν) inside the search interval.
    Extremization,
    /// The closed form has no bound state for these parameters.
    NoBoundState,
    /// Exponents in (-2, -1) give no physical AFM solution.
    Unphysical,
    /// Yukawa reduced coupling above the principal number (g > N).
    CriticalExceeded,
    /// Yukawa reduced mass below the principal number (χ < N).
    NoSpectrum,
    /// The Hamiltonian is unbounded from below (supercritical 1/r strength).
    Unbound,
    /// The eigensolver did not reach the requested tolerance.
    ConvergenceFailure { basis_size: usize, estimate: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "{what} out of domain: {value}"),
            Error::Bracket { lo, hi } => write!(f, "no sign change on [{lo}, {hi}]"),
            Error::Extremization => f.write_str("no stationary point in bracket"),
            Error::NoBoundState => f.write_str("no bound state"),
            Error::Unphysical => f.write_str("unphysical exponent (-2 < lambda < -1)"),
            Error::CriticalExceeded => f.write_str("coupling above critical value (g > N)"),
            Error::NoSpectrum => f.write_str("state cannot bind (chi < N)"),
            Error::Unbound => f.write_str("Hamiltonian unbounded from below"),
            Error::ConvergenceFailure {
                basis_size,
                estimate,
            } => write!(
                f,
                "not converged at basis size {basis_size} (estimate {estimate:e})"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn domain(what: &'static str, value: f64) -> Error {
    Error::Domain { what, value }
}
