//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the analysis operations.
///
/// Every variant carries a stable, module-qualified code (see [`Error::code`])
/// so batch runners can report failures without string matching.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The crossing configuration t = -1/2. Spectral-analysis operations
    /// refuse it; the question is undecided for this value.
    #[error("t = -1/2 (plus space): spectral analysis is refused for this parameter")]
    PlusSpace,

    /// A candidate enumerated to zero points.
    #[error("candidate enumerates to no points in the requested window")]
    EmptyCandidate,

    /// Tiling decisions need exact rational endpoints.
    #[error("interval endpoints must be exact rationals for tiling decisions")]
    NonRationalEndpoints,

    /// Tiling decisions are about sets; weights must agree.
    #[error("tiling decision requires uniform weights, found {0} and {1}")]
    NonUniformWeights(f64, f64),

    /// Bump support must stay inside the open horizontal segment.
    #[error("bump support [{lo}, {hi}] is not inside the open segment ({seg_lo}, {seg_hi})")]
    BumpOutOfRange {
        lo: f64,
        hi: f64,
        seg_lo: f64,
        seg_hi: f64,
    },

    /// Projection is not one-to-one on the support.
    #[error("projection is not injective on the support")]
    NotInjective,

    /// Projected density is not constant on its support.
    #[error("projected density is not constant on its support")]
    NotConstant,

    /// A candidate point fails membership in the line group H2.
    #[error("candidate point ({0}, {1}) does not lie in H2 within tolerance")]
    NotInH2(f64, f64),

    /// The certificate only applies to the crossing regime -1/2 < t < 0.
    #[error("operation requires -1/2 < t < 0, got t = {0}")]
    WrongRegime(String),

    /// detect_period needs data covering at least three candidate periods.
    #[error("data span {span} is smaller than 3 * max_period = {required}")]
    InsufficientSpan { span: f64, required: f64 },

    /// Precondition violation on an argument.
    #[error("invalid {what}: {why}")]
    Invalid { what: &'static str, why: String },

    /// Two redundant computations disagreed.
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}

impl Error {
    /// Stable module-qualified error code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::PlusSpace => "measure/plus-space",
            Error::EmptyCandidate => "tiling/empty-candidate",
            Error::NonRationalEndpoints => "tiling/non-rational-endpoints",
            Error::NonUniformWeights(..) => "tiling/non-uniform-weights",
            Error::BumpOutOfRange { .. } => "diagnostics/bump-out-of-range",
            Error::NotInjective => "projection/not-injective",
            Error::NotConstant => "projection/not-constant",
            Error::NotInH2(..) => "diagnostics/not-in-h2",
            Error::WrongRegime(..) => "diagnostics/wrong-regime",
            Error::InsufficientSpan { .. } => "tiling/insufficient-span",
            Error::Invalid { .. } => "config/invalid",
            Error::Inconsistency(..) => "internal/inconsistency",
        }
    }

    pub(crate) fn invalid(what: &'static str, why: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            why: why.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
