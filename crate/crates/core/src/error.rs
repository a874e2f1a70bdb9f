use thiserror::Error;

/// Errors produced by the dispersion, spectrum and coefficient machinery.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{field}`: {message}")]
    InvalidParameters { field: &'static str, message: String },

    #[error("evaluation too close to a branch-point endpoint (z = {z})")]
    EndpointSingularity { z: String },

    #[error("evaluation point lies on the cut {cut} (z = {z})")]
    CutCollision { z: String, cut: &'static str },

    #[error("boundary value of the dispersion function vanishes near mu = {mu} (|lambda| = {modulus:.3e})")]
    Resonance { mu: f64, modulus: f64 },

    #[error("parameters fall inside the near-L band: {detail}")]
    NearL { detail: String },

    #[error("iteration did not converge: {what} (best residual {residual:.3e})")]
    NonConvergence { what: &'static str, residual: f64 },

    #[error("quadrature depth cap exceeded (estimate {estimate}, error bound {bound:.3e})")]
    DepthExceeded { estimate: String, bound: f64 },

    #[error("path passes too close to zero for winding tracking (|f| = {modulus:.3e})")]
    ZeroCrossing { modulus: f64 },

    #[error("winding total is not close to an integer multiple of 2*pi (raw = {raw})")]
    NonIntegerWinding { raw: f64 },

    #[error("contour passes too close to a zero of the dispersion function (min |lambda| = {min_modulus:.3e})")]
    ContourTooClose { min_modulus: f64 },

    #[error("zero of the dispersion function is degenerate (|lambda'| = {modulus:.3e})")]
    DegenerateZero { modulus: f64 },

    #[error("lambda(eta1) is resonantly small (|lambda_1| = {modulus:.3e})")]
    LambdaOneResonance { modulus: f64 },

    #[error("requested a Debye-mode quantity but parameters lie in D- (no discrete plasma zero)")]
    NotInDPlus,

    #[error("denominator of the accommodation constant vanishes (|den| = {modulus:.3e})")]
    ZeroDenominator { modulus: f64 },

    #[error("flux denominator P_i - P_s is degenerate (|den| = {modulus:.3e})")]
    DegenerateFlux { modulus: f64 },

    #[error("coefficient system residuals exceed tolerance: pole {pole:.3e}, field {field:.3e}, accommodation {accommodation:.3e}")]
    ResidualFailure {
        pole: f64,
        field: f64,
        accommodation: f64,
    },

    #[error("boundary grid carries no quadrature weights; build it with `boundary_distribution`")]
    MissingWeights,
}

pub type Result<T> = std::result::Result<T, Error>;
