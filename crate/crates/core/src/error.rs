use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside its admissible range.
    InvalidParameter(&'static str),
    /// A moment integral evaluated to something that is not a positive finite number.
    NonFinite {
        what: &'static str,
        d: usize,
        r: usize,
    },
    /// Adaptive quadrature did not reach the requested tolerance.
    Quadrature {
        estimate: f64,
        error: f64,
    },
    /// Exhaustive enumeration was requested above the configured cap.
    CapExceeded {
        requested: usize,
        cap: usize,
    },
    /// Prediction weights did not sum to one.
    WeightNormalization {
        total: f64,
    },
    /// Every seating score vanished, so no category can be drawn.
    ZeroScores {
        customer: usize,
    },
    /// An operation needing at least one observation in a block got an empty one.
    EmptyBlock,
    /// A block set is not a partition of `{0..n}`.
    InvalidPartition(&'static str),
    EmptyData,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::NonFinite { what, d, r } => {
                write!(
                    f,
                    "{what} is not a positive finite number (d = {d}, r = {r})"
                )
            }
            Error::Quadrature { estimate, error } => write!(
                f,
                "quadrature did not converge (estimate {estimate:e}, error {error:e})"
            ),
            Error::CapExceeded { requested, cap } => {
                write!(f, "size {requested} exceeds enumeration cap {cap}")
            }
            Error::WeightNormalization { total } => {
                write!(f, "prediction weights sum to {total}, expected 1")
            }
            Error::ZeroScores { customer } => {
                write!(f, "all seating scores are zero for customer {customer}")
            }
            Error::EmptyBlock => write!(f, "operation requires a nonempty block"),
            Error::InvalidPartition(msg) => write!(f, "invalid partition: {msg}"),
            Error::EmptyData => write!(f, "no observations"),
        }
    }
}

impl core::error::Error for Error {}
