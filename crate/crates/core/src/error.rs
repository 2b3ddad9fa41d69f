use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameters {0} do not define a hyperbola (4 q3 q5 - q4² must be negative)")]
    NotHyperbola(String),
    #[error("leading coefficient {coeff} = {value} is below the degeneracy tolerance {tol}")]
    DegenerateLeadingCoefficient { coeff: &'static str, value: f64, tol: f64 },
    #[error("no point of the curve has ordinate x2 = {x2} (discriminant {disc})")]
    InfeasibleOrdinate { x2: f64, disc: f64 },
    #[error("degenerate pseudo-distance band: {0}")]
    DegenerateBand(String),
    #[error("invalid symmetry ({0},{1}): expected a signed permutation of (1,2)")]
    InvalidSymmetry(i8, i8),
    #[error("accuracy must be positive and finite, got {0}")]
    InvalidAccuracy(f64),
    #[error("invalid frame {0}: must be nonempty and bounded")]
    InvalidFrame(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("scenario error: {0}")]
    Scenario(String),
    #[error("i/o error: {0}")]
    Io(String),
}
