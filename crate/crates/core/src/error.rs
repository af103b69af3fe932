use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("amplitude vector (alpha, beta) is zero")]
    ZeroVector,

    #[error("amplitudes are not normalized: |alpha|^2 + |beta|^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("energies must satisfy e0 < e1 (got e0 = {e0}, e1 = {e1})")]
    InvalidEnergies { e0: f64, e1: f64 },

    #[error("Lindblad rates must be strictly positive and finite (got mu = {mu}, nu = {nu})")]
    InvalidRates { mu: f64, nu: f64 },

    #[error("non-physical state: {0}")]
    NonPhysical(String),

    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix exponential refused: ||tW||_inf = {norm} exceeds {limit}")]
    OverflowGuard { norm: f64, limit: f64 },

    #[error("cubic root bracket failed: f(0) = {f_hi}, f(-a2) = {f_lo}")]
    BracketFailure { f_hi: f64, f_lo: f64 },

    #[error("degenerate spectrum: minimum eigenvalue gap {gap:e}; use the oracle propagator")]
    DegenerateSpectrum { gap: f64 },

    #[error("degenerate amplitude: |alpha| = {abs_alpha}, |beta| = {abs_beta} gives a zero rate")]
    DegenerateAmplitude { abs_alpha: f64, abs_beta: f64 },

    #[error("splitting is exact for these operators (max error {max_error:e}); slope undefined")]
    DegenerateCase { max_error: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
