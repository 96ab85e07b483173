//! Error type shared by all modules.

use thiserror::Error;

/// Errors raised by the geometric, algebraic and dynamical operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation that requires a traceless matrix received one with nonzero trace.
    #[error("matrix is not traceless (trace = {0})")]
    NotTraceless(String),
    /// A matrix that should be invertible is singular.
    #[error("matrix is singular")]
    Singular,
    /// A projective vector with all coordinates zero.
    #[error("zero vector does not define a projective point")]
    ZeroVector,
    /// A point and a line that should be incident are not.
    #[error("point does not lie on line")]
    NotIncident,
    /// An element of P_min was expected.
    #[error("matrix is not upper-triangular")]
    NotUpperTriangular,
    /// A flag lies outside the domain of a chart.
    #[error("flag lies outside the chart domain: {0}")]
    ChartDomain(String),
    /// A flag lies on the boundary of the affine chart (point on the line at infinity).
    #[error("flag lies on the surface of pointed lines through the line at infinity")]
    AffineBoundary,
    /// A flag lies on the boundary of a homogeneous model.
    #[error("flag is not interior to model {0}")]
    NotInterior(&'static str),
    /// A group element does not belong to the subgroup an operation expects.
    #[error("group membership violated: {0}")]
    Membership(String),
    /// A pair of vectors fails the contact (non-integrability) condition.
    #[error("contact condition fails: {0}")]
    NotContact(String),
    /// Two vector fields are dependent at the evaluation point.
    #[error("degenerate frame: fields are dependent at the evaluation point")]
    DegenerateFrame,
    /// A finite-difference derivative failed its step-size consistency gate.
    #[error("finite-difference consistency gate failed (ratio {0})")]
    RichardsonGate(String),
    /// The orbit of a subalgebra through a base point is not open.
    #[error("orbit is not open (orbit dimension {0})")]
    NonOpenOrbit(usize),
    /// A characteristic polynomial has real roots that are not rational.
    #[error("isotropy action has irrational real eigenvalues")]
    IrrationalEigenvalues,
    /// An unknown named case.
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    /// An argument outside the operation's domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A linear part that is not hyperbolic where hyperbolicity is required.
    #[error("linear part is not hyperbolic")]
    NotHyperbolic,
    /// A multiplier equal to zero.
    #[error("zero multiplier")]
    ZeroMultiplier,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
