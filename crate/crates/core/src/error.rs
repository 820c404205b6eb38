//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Everything that can go wrong while loading models or computing in the
/// quantum homology ring.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed descriptor document or unparsable element text.
    #[error("parse error: {0}")]
    Parse(String),

    /// The intersection pairing is not invertible over the integers, so no
    /// dual basis exists.
    #[error("intersection pairing of `{0}` is not unimodular")]
    NonUnimodularPairing(String),

    /// A spherical class breaks omega(A) = lambda * c1(A).
    #[error("monotonicity violation on class `{class}` of `{model}`")]
    MonotonicityViolation { model: String, class: String },

    /// An aspherical model carries a nonzero spherical class or a
    /// Gromov-Witten entry for one.
    #[error("aspherical violation in `{0}`: {1}")]
    AsphericalViolation(String, String),

    /// Two operands belong to different manifold models.
    #[error("model mismatch: `{left}` vs `{right}`")]
    ModelMismatch { left: String, right: String },

    /// A spherical class name is not in the model's lattice.
    #[error("unknown spherical class `{class}` on `{model}`")]
    UnknownClass { model: String, class: String },

    /// The degree gate admits a class whose invariants were never tabulated;
    /// answering 0 would silently truncate the quantum product.
    #[error("incomplete GW table on `{model}`: {detail}")]
    IncompleteTable { model: String, detail: String },

    /// A stored table entry fails deg(a)+deg(b)+deg(c) = 4n - 2c1(A).
    #[error("degree gate violation on `{model}`: {detail}")]
    DegreeGateViolation { model: String, detail: String },

    /// Degree of the zero element is undefined.
    #[error("degree of the zero element is undefined")]
    ZeroElement,

    /// A scalar mixes several q-exponents, so it has no single degree.
    #[error("scalar mixes distinct q-exponents, degree undefined")]
    MixedDegrees,

    /// An element is not homogeneous where homogeneity is required.
    #[error("element is not homogeneous: {0}")]
    NonHomogeneous(String),

    /// No inverse exists under quantum multiplication.
    #[error("element is not a unit of the quantum homology ring")]
    NotAUnit,

    /// Two spherical factors with different monotonicity constants cannot
    /// form a product model.
    #[error(
        "monotonicity mismatch: lambda {left} for `{left_model}` vs {right} for `{right_model}`"
    )]
    MonotonicityMismatch {
        left_model: String,
        left: String,
        right_model: String,
        right: String,
    },

    /// The operation needs a factor with no nonzero spherical classes.
    #[error("aspherical model required: {0}")]
    AsphericalRequired(String),

    /// Circle-action data breaks a degree constraint of the Seidel element.
    #[error("degree contract violation: {0}")]
    DegreeContractViolation(String),

    /// A correction term's coupling area does not exceed K0.
    #[error("correction term has omega_tilde = {omega_tilde} not above K0 = {k0}")]
    CorrectionBelowK0 { omega_tilde: String, k0: String },
}

pub type Result<T> = std::result::Result<T, Error>;
