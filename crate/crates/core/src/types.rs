//! Value types for the driven two-level model and the bridge between a 2x2
//! density matrix and its vectorized `(a, b, b̄, d)` form.

use crate::error::{Error, Result};
use crate::linalg::{cr, Mat2, Vec4, C64};

/// Normalization tolerance for `|alpha|^2 + |beta|^2`.
pub const AMPLITUDE_NORM_TOL: f64 = 1e-12;
/// Trace and positivity tolerance for constructed density matrices.
pub const STATE_TOL: f64 = 1e-10;
/// Conjugacy and trace tolerance accepted by [`devectorize`].
pub const DEVECTORIZE_TOL: f64 = 1e-8;

/// The pair `(alpha, beta)` of the prepared superposition `alpha|0> + beta|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperpositionAmplitudes {
    alpha: C64,
    beta: C64,
}

impl SuperpositionAmplitudes {
    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn beta(&self) -> C64 {
        self.beta
    }

    /// `|alpha|^2`
    pub fn p0(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    /// `|beta|^2`
    pub fn p1(&self) -> f64 {
        self.beta.norm_sqr()
    }

    /// `|alpha|^2 - |beta|^2`
    pub fn imbalance(&self) -> f64 {
        self.p0() - self.p1()
    }
}

/// Builds amplitudes, optionally rescaling `(alpha, beta)` to unit norm.
///
/// Without `normalize` the pair must already be normalized to `1e-12`.
pub fn make_amplitudes(alpha: C64, beta: C64, normalize: bool) -> Result<SuperpositionAmplitudes> {
    if !(alpha.re.is_finite() && alpha.im.is_finite() && beta.re.is_finite() && beta.im.is_finite()) {
        return Err(Error::InvalidArgument("amplitudes must be finite".into()));
    }
    let norm_sq = alpha.norm_sqr() + beta.norm_sqr();
    if norm_sq == 0.0 {
        return Err(Error::ZeroVector);
    }
    if normalize {
        let scale = cr(1.0 / norm_sq.sqrt());
        return Ok(SuperpositionAmplitudes {
            alpha: alpha * scale,
            beta: beta * scale,
        });
    }
    if (norm_sq - 1.0).abs() > AMPLITUDE_NORM_TOL {
        return Err(Error::NotNormalized { norm_sq });
    }
    Ok(SuperpositionAmplitudes { alpha, beta })
}

/// Bare level energies `E0 < E1` (units with hbar = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyPair {
    e0: f64,
    e1: f64,
}

impl EnergyPair {
    pub fn new(e0: f64, e1: f64) -> Result<Self> {
        if !(e0.is_finite() && e1.is_finite()) || e0 >= e1 {
            return Err(Error::InvalidEnergies { e0, e1 });
        }
        Ok(Self { e0, e1 })
    }

    pub fn e0(&self) -> f64 {
        self.e0
    }

    pub fn e1(&self) -> f64 {
        self.e1
    }

    /// `E1 - E0 > 0`
    pub fn gap(&self) -> f64 {
        self.e1 - self.e0
    }
}

/// Dissipator rates. `mu` weights the `sigma_-` channel (population flows
/// `|0> -> |1>`), `nu` the `sigma_+` channel (`|1> -> |0>`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LindbladRates {
    mu: f64,
    nu: f64,
}

impl LindbladRates {
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        if !(mu.is_finite() && nu.is_finite()) || mu <= 0.0 || nu <= 0.0 {
            return Err(Error::InvalidRates { mu, nu });
        }
        Ok(Self { mu, nu })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// `mu + nu`
    pub fn total(&self) -> f64 {
        self.mu + self.nu
    }
}

/// A 2x2 density matrix `[[a, b], [conj(b), d]]`.
///
/// Only `(a, b, d)` are stored, so hermiticity holds by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    a: f64,
    b: C64,
    d: f64,
}

impl DensityMatrix2 {
    /// Validated constructor: unit trace and positive semidefinite to `1e-10`.
    pub fn new(a: f64, b: C64, d: f64) -> Result<Self> {
        let rho = Self { a, b, d };
        rho.check(STATE_TOL, STATE_TOL)?;
        Ok(rho)
    }

    /// No positivity check. Used for evolved states whose physicality is
    /// judged by the caller.
    pub(crate) fn from_parts(a: f64, b: C64, d: f64) -> Self {
        Self { a, b, d }
    }

    pub fn ket0() -> Self {
        Self::from_parts(1.0, cr(0.0), 0.0)
    }

    pub fn ket1() -> Self {
        Self::from_parts(0.0, cr(0.0), 1.0)
    }

    /// `|+><+|` with `|+> = (|0> + |1>)/sqrt(2)`.
    pub fn plus() -> Self {
        Self::from_parts(0.5, cr(0.5), 0.5)
    }

    pub fn maximally_mixed() -> Self {
        Self::from_parts(0.5, cr(0.0), 0.5)
    }

    /// Projector onto the pure state `alpha|0> + beta|1>`.
    pub fn pure(amps: &SuperpositionAmplitudes) -> Self {
        Self::from_parts(amps.p0(), amps.alpha * amps.beta.conj(), amps.p1())
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> C64 {
        self.b
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn trace_error(&self) -> f64 {
        (self.trace() - 1.0).abs()
    }

    /// Smaller eigenvalue of the hermitian matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        let mean = 0.5 * (self.a + self.d);
        let half_diff = 0.5 * (self.a - self.d);
        mean - (half_diff * half_diff + self.b.norm_sqr()).sqrt()
    }

    /// `|b|`
    pub fn coherence(&self) -> f64 {
        self.b.norm()
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::new(cr(self.a), self.b, self.b.conj(), cr(self.d))
    }

    /// Max-row-sum norm of `self - other`.
    pub fn distance_inf(&self, other: &Self) -> f64 {
        let da = (self.a - other.a).abs();
        let dd = (self.d - other.d).abs();
        let db = (self.b - other.b).norm();
        (da + db).max(db + dd)
    }

    pub fn check(&self, trace_tol: f64, psd_tol: f64) -> Result<()> {
        if !(self.a.is_finite() && self.d.is_finite() && self.b.re.is_finite() && self.b.im.is_finite()) {
            return Err(Error::NonPhysical("non-finite entries".into()));
        }
        if self.trace_error() > trace_tol {
            return Err(Error::NonPhysical(format!("trace {} != 1", self.trace())));
        }
        let det = self.a * self.d - self.b.norm_sqr();
        if self.a < -psd_tol || self.d < -psd_tol || det < -psd_tol {
            return Err(Error::NonPhysical(format!(
                "not positive semidefinite (a = {}, d = {}, ad - |b|^2 = {})",
                self.a, self.d, det
            )));
        }
        Ok(())
    }
}

/// Hermitian Hamiltonian `[[h, k], [conj(k), l]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelHamiltonian {
    pub h: f64,
    pub k: C64,
    pub l: f64,
}

impl TwoLevelHamiltonian {
    pub fn matrix(&self) -> Mat2 {
        Mat2::new(cr(self.h), self.k, self.k.conj(), cr(self.l))
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let mean = 0.5 * (self.h + self.l);
        let half_diff = 0.5 * (self.h - self.l);
        let r = (half_diff * half_diff + self.k.norm_sqr()).sqrt();
        (mean - r, mean + r)
    }
}

/// `U = [[alpha, -conj(beta)], [beta, conj(alpha)]]`, an SU(2) element whose
/// first column is the prepared state.
pub fn dressing_unitary(amps: &SuperpositionAmplitudes) -> Mat2 {
    let (al, be) = (amps.alpha, amps.beta);
    Mat2::new(al, -be.conj(), be, al.conj())
}

/// `H = U diag(E0, E1) U^dagger`, written out entrywise.
pub fn dressed_hamiltonian(amps: &SuperpositionAmplitudes, energies: &EnergyPair) -> TwoLevelHamiltonian {
    let (p0, p1) = (amps.p0(), amps.p1());
    let (e0, e1) = (energies.e0, energies.e1);
    TwoLevelHamiltonian {
        h: p0 * e0 + p1 * e1,
        k: amps.alpha * amps.beta.conj() * (e0 - e1),
        l: p1 * e0 + p0 * e1,
    }
}

/// The column `(a, b, conj(b), d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VectorizedState(pub Vec4);

impl VectorizedState {
    pub fn components(&self) -> [C64; 4] {
        [self.0[0], self.0[1], self.0[2], self.0[3]]
    }
}

pub fn vectorize(rho: &DensityMatrix2) -> VectorizedState {
    VectorizedState(Vec4::new(cr(rho.a), rho.b, rho.b.conj(), cr(rho.d)))
}

/// Inverse of [`vectorize`].
///
/// Requires `psi[2] = conj(psi[1])`, real diagonal entries and unit trace,
/// all to `1e-8`. Positivity is not checked here.
pub fn devectorize(psi: &VectorizedState) -> Result<DensityMatrix2> {
    let [a, b, b_bar, d] = psi.components();
    let finite = psi.0.iter().all(|z| z.re.is_finite() && z.im.is_finite());
    if !finite {
        return Err(Error::NonPhysical("non-finite vector".into()));
    }
    let conj_defect = (b_bar - b.conj()).norm();
    if conj_defect > DEVECTORIZE_TOL {
        return Err(Error::NonPhysical(format!(
            "conjugacy defect {conj_defect:e} between components 2 and 3"
        )));
    }
    if a.im.abs() > DEVECTORIZE_TOL || d.im.abs() > DEVECTORIZE_TOL {
        return Err(Error::NonPhysical("diagonal entries are not real".into()));
    }
    let trace_err = (a.re + d.re - 1.0).abs();
    if trace_err > DEVECTORIZE_TOL {
        return Err(Error::NonPhysical(format!("trace defect {trace_err:e}")));
    }
    Ok(DensityMatrix2::from_parts(a.re, b, d.re))
}

/// Everything needed to run one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub amps: SuperpositionAmplitudes,
    pub energies: EnergyPair,
    pub rates: LindbladRates,
    /// Measurement time `t0`.
    pub t_measure: f64,
    /// Decoherence time; carried as an annotation only.
    pub t_decoherence: Option<f64>,
    pub t_max: f64,
    pub steps: usize,
    pub initial_state: DensityMatrix2,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_measure.is_finite() && self.t_measure > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "t_measure must be positive (got {})",
                self.t_measure
            )));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "t_max must be positive (got {})",
                self.t_max
            )));
        }
        if self.steps < 1 {
            return Err(Error::InvalidArgument("steps must be at least 1".into()));
        }
        if let Some(td) = self.t_decoherence {
            if !(td.is_finite() && td > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "t_decoherence must be positive (got {td})"
                )));
            }
        }
        self.initial_state.check(STATE_TOL, STATE_TOL)
    }

    /// The time grid `t_i = i * t_max / steps`, `i = 0..=steps`.
    pub fn time_grid(&self) -> Vec<f64> {
        let dt = self.t_max / self.steps as f64;
        (0..=self.steps)
            .map(|i| if i == self.steps { self.t_max } else { i as f64 * dt })
            .collect()
    }
}
