use core::fmt;



pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The chart requires `3 + (-1)^r H > 0`.
    ChartInvalid { r: u8, h: f64 },
    /// Point on (or too close to) a coordinate singularity or outside the chart.
    Singularity { x1: f64 },
    /// A family was requested where it does not exist.
    FamilyUnavailable { r: u8, h: f64 },
    ZeroSpinor,
    /// A closed-form denominator vanished.
    Degenerate(&'static str),
    /// A case hypothesis could not be met for the given space-form.
    Hypothesis(&'static str),
    InvalidArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ChartInvalid { r, h } => {
                write!(f, "chart-invalid space-form (r={r}, H={h}): 3+(-1)^r H must be positive")
            }
            Error::Singularity { x1 } => write!(f, "point x1={x1} is outside the chart interior"),
            Error::FamilyUnavailable { r, h } => {
                write!(f, "S± families do not exist for r={r}, H={h}")
            }
            Error::ZeroSpinor => f.write_str("spinor vanishes at the evaluation point"),
            Error::Degenerate(what) => write!(f, "degenerate configuration: {what}"),
            Error::Hypothesis(what) => write!(f, "case hypothesis not satisfiable: {what}"),
            Error::InvalidArgument(what) => write!(f, "invalid argument: {what}"),
        }
    }
}

impl core::error::Error for Error {}
