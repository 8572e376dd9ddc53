use thiserror::Error;

/// Errors raised by the numeric kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` = {value} lies outside [0, 1]")]
    Domain { name: &'static str, value: f64 },
    #[error("a Bernstein polynomial needs at least one coefficient")]
    EmptyCoefficients,
    #[error("coefficient {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },
    #[error("degree {degree} exceeds the supported maximum of {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("coordinate lists have different lengths ({x} vs {y})")]
    LengthMismatch { x: usize, y: usize },
    #[error("a degree-0 curve has no tangent; no transversal intersection is possible")]
    DegreeZero,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Checks that a parameter lies in the closed unit interval.
pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::Domain { name, value })
    }
}
