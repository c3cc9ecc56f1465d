use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("at least 3 joints are required, got {0}")]
    TooFewJoints(usize),

    /// The joint angles are not `2*pi*(i-1)/n`.
    #[error("joint {joint} is not symmetrically placed: expected angle {expected}, got {found}")]
    NonSymmetricJoints {
        joint: usize,
        expected: f64,
        found: f64,
    },

    #[error("invalid {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("expected {expected} joint values, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("scheme {scheme} requires {required} joints, geometry has {found}")]
    SchemeMismatch {
        scheme: &'static str,
        required: usize,
        found: usize,
    },

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    /// Raised by [`SingularityStrategy::AvoidStraight`](crate::SingularityStrategy) near the
    /// straight configuration.
    #[error(
        "configuration too close to straight: Clarke magnitude {magnitude} < epsilon {epsilon}"
    )]
    StraightConfiguration { magnitude: f64, epsilon: f64 },
}
