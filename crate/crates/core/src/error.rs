use core::fmt;

/// Errors raised by the quadrature, kernel and bound routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The integrand (or one of its derivatives) produced a non-finite value
    /// or was evaluated outside its domain.
    Evaluation { abscissa: f64, reason: EvalFailure },
    /// A derivative of a higher order than the integrand provides was requested.
    Capability { requested: usize, available: usize },
    /// Interval endpoints are not finite or not strictly increasing.
    InvalidInterval { a: f64, b: f64 },
    /// A grid needs at least one pair of subintervals.
    InvalidGrid { n_pairs: usize },
    /// Abscissa outside the domain of a kernel.
    Domain { x: f64, lo: f64, hi: f64 },
    /// Kernel order outside 2..=6.
    InvalidKernel { k: usize },
    /// A constant or bound that is not defined for the requested order.
    Unsupported { what: &'static str, k: usize },
    /// Lower bound of a derivative range exceeds the upper bound.
    InvalidRange { gamma: f64, big_gamma: f64 },
    /// The secant slope falls outside the supplied derivative range.
    InconsistentSecant { secant: f64, gamma: f64, big_gamma: f64 },
    /// Orders of the range and secant slope do not fit the requested bound.
    OrderMismatch { expected: usize, found: usize },
    /// A numeric argument that must be non-negative (or positive) was not.
    InvalidArgument { name: &'static str, value: f64 },
    /// The adaptive reference integrator did not reach its tolerance.
    Convergence { best: f64, est_abs_error: f64, subdivisions: usize },
}

/// Why a single evaluation failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalFailure {
    NonFinite,
    DivisionByZero,
    LogOfNonPositive,
    SqrtOfNegative,
    NonDifferentiable,
    PowDomain,
}

impl fmt::Display for EvalFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EvalFailure::NonFinite => "non-finite value",
            EvalFailure::DivisionByZero => "division by zero",
            EvalFailure::LogOfNonPositive => "log of a non-positive number",
            EvalFailure::SqrtOfNegative => "sqrt of a negative number",
            EvalFailure::NonDifferentiable => "function is not differentiable here",
            EvalFailure::PowDomain => "power with a non-positive base",
        };
        f.write_str(s)
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Evaluation { abscissa, reason } => {
                write!(f, "evaluation failed at x = {abscissa}: {reason}")
            }
            Error::Capability { requested, available } => write!(
                f,
                "derivative of order {requested} requested but only {available} available"
            ),
            Error::InvalidInterval { a, b } => {
                write!(f, "invalid interval [{a}, {b}]: need finite a < b")
            }
            Error::InvalidGrid { n_pairs } => {
                write!(f, "invalid grid: {n_pairs} panel pairs (need at least 1)")
            }
            Error::Domain { x, lo, hi } => write!(f, "x = {x} outside [{lo}, {hi}]"),
            Error::InvalidKernel { k } => write!(f, "kernel order {k} outside 2..=6"),
            Error::Unsupported { what, k } => write!(f, "{what} is not defined for k = {k}"),
            Error::InvalidRange { gamma, big_gamma } => {
                write!(f, "invalid derivative range: lower {gamma} > upper {big_gamma}")
            }
            Error::InconsistentSecant { secant, gamma, big_gamma } => write!(
                f,
                "secant slope {secant} lies outside the derivative range [{gamma}, {big_gamma}]"
            ),
            Error::OrderMismatch { expected, found } => {
                write!(f, "order mismatch: expected {expected}, found {found}")
            }
            Error::InvalidArgument { name, value } => write!(f, "invalid {name}: {value}"),
            Error::Convergence { best, est_abs_error, subdivisions } => write!(
                f,
                "reference integral did not converge after {subdivisions} subdivisions \
                 (best {best}, estimated error {est_abs_error})"
            ),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn finite(x: f64, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Evaluation { abscissa: x, reason: EvalFailure::NonFinite })
    }
}
