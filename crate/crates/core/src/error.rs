use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A single rejected input field.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub field: &'static str,
    pub message: String,
}

impl Violation {
    pub fn new(field: &'static str, message: impl Into<String>) -> Self {
        Violation {
            field,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the domain of a mathematical function.
    Domain { quantity: &'static str, value: f64 },
    /// One or more inputs failed validation.
    Validation(Vec<Violation>),
    InsufficientData { required: usize, got: usize },
    /// Least-squares basis is (numerically) rank deficient.
    IllConditioned { condition_number: f64 },
    /// No equilibrium below the stretch bound: the pressure work gradient
    /// exceeds the strain gradient everywhere on `[1, lambda_max]`.
    Saturated {
        lambda_max: f64,
        strain_gradient: f64,
        air_gradient: f64,
    },
    /// Strain gradient decreases with stretch between two scan points.
    NonMonotone {
        lambda_lo: f64,
        lambda_hi: f64,
        gradient_lo: f64,
        gradient_hi: f64,
    },
    Unconverged { residual: f64, tolerance: f64 },
    /// Every candidate in a calibration scan was infeasible.
    Calibration { candidates: usize },
    TooManyFolds { n_folds: usize, max: usize },
    AtPressure { pressure_kpa: f64, source: Box<Error> },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, message: impl Into<String>) -> Self {
        Error::Validation(alloc::vec![Violation::new(field, message)])
    }

    /// True for failures of the numerics (as opposed to bad input).
    pub fn is_numeric(&self) -> bool {
        match self {
            Error::IllConditioned { .. }
            | Error::Saturated { .. }
            | Error::NonMonotone { .. }
            | Error::Unconverged { .. }
            | Error::Calibration { .. } => true,
            Error::AtPressure { source, .. } => source.is_numeric(),
            _ => false,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { quantity, value } => {
                write!(f, "{quantity} = {value} is outside the valid domain")
            }
            Error::Validation(violations) => {
                f.write_str("invalid input: ")?;
                for (i, v) in violations.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{v}")?;
                }
                Ok(())
            }
            Error::InsufficientData { required, got } => {
                write!(f, "insufficient data: need at least {required} samples, got {got}")
            }
            Error::IllConditioned { condition_number } => write!(
                f,
                "least-squares basis is rank deficient (condition number {condition_number:e})"
            ),
            Error::Saturated {
                lambda_max,
                strain_gradient,
                air_gradient,
            } => write!(
                f,
                "pressure saturates the actuator: at lambda_max = {lambda_max} the strain \
                 gradient {strain_gradient} N*mm is below the pressure gradient {air_gradient} N*mm"
            ),
            Error::NonMonotone {
                lambda_lo,
                lambda_hi,
                gradient_lo,
                gradient_hi,
            } => write!(
                f,
                "strain gradient is not monotone: {gradient_lo} at lambda = {lambda_lo} \
                 but {gradient_hi} at lambda = {lambda_hi}"
            ),
            Error::Unconverged { residual, tolerance } => write!(
                f,
                "equilibrium residual {residual:e} exceeds tolerance {tolerance:e}"
            ),
            Error::Calibration { candidates } => {
                write!(f, "all {candidates} alpha candidates were infeasible")
            }
            Error::TooManyFolds { n_folds, max } => write!(
                f,
                "{n_folds} folds exceeds the exhaustive search limit of {max}; \
                 score individual masks instead"
            ),
            Error::AtPressure {
                pressure_kpa,
                source,
            } => write!(f, "at {pressure_kpa} kPa: {source}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
