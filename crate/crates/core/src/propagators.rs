//! Propagators `P(t)` with `Ψ(t) = P(t) Ψ(0)`.
//!
//! Three routes are provided: the split product `e^{tD̂} e^{tĤ}` built from
//! closed forms, the brute-force exponential `e^{tW}`, and the exact spectral
//! form from [`crate::spectral`].

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{cr, expm4, Mat4, Vec4, C64};
use crate::spectral::{w_spectrum, WSpectrum};
use crate::superoperator::{build_d_hat, build_h_hat, build_w, kron, Superoperator4};
use crate::types::{
    devectorize, dressed_hamiltonian, dressing_unitary, vectorize, DensityMatrix2, EnergyPair, LindbladRates,
    SuperpositionAmplitudes, TwoLevelHamiltonian, VectorizedState,
};

/// Trace tolerance for states produced by exact methods.
pub const EXACT_TRACE_TOL: f64 = 1e-9;
/// Most negative eigenvalue tolerated from exact methods.
pub const EXACT_PSD_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropagatorMethod {
    /// `e^{tD̂} e^{tĤ}`
    ApproxProduct,
    /// scaling-and-squaring `e^{tW}`
    ExactOracle,
    /// `(Oᵀ)⁻¹ e^{tD_W} Oᵀ`
    ExactSpectral,
}

impl PropagatorMethod {
    pub const ALL: [PropagatorMethod; 3] = [Self::ApproxProduct, Self::ExactOracle, Self::ExactSpectral];

    pub fn name(&self) -> &'static str {
        match self {
            Self::ApproxProduct => "approx_product",
            Self::ExactOracle => "exact_oracle",
            Self::ExactSpectral => "exact_spectral",
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Self::ApproxProduct)
    }
}

impl fmt::Display for PropagatorMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropagatorMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method {s:?}")))
    }
}

/// The physical parameters of one driven, damped two-level system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model {
    pub amps: SuperpositionAmplitudes,
    pub energies: EnergyPair,
    pub rates: LindbladRates,
}

impl Model {
    pub fn new(amps: SuperpositionAmplitudes, energies: EnergyPair, rates: LindbladRates) -> Self {
        Self { amps, energies, rates }
    }

    pub fn hamiltonian(&self) -> TwoLevelHamiltonian {
        dressed_hamiltonian(&self.amps, &self.energies)
    }

    pub fn h_hat(&self) -> Superoperator4 {
        build_h_hat(&self.hamiltonian())
    }

    pub fn d_hat(&self) -> Superoperator4 {
        build_d_hat(&self.rates)
    }

    pub fn w(&self) -> Superoperator4 {
        build_w(&self.hamiltonian(), &self.rates)
    }
}

/// First and fourth rows of `e^{tĤ}` in closed form, plus `J = e^{it(E1-E0)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CijCoefficients {
    pub c11: C64,
    pub c12: C64,
    pub c13: C64,
    pub c14: C64,
    pub c41: C64,
    pub c42: C64,
    pub c43: C64,
    pub c44: C64,
    pub j: C64,
}

impl CijCoefficients {
    pub fn row1(&self) -> [C64; 4] {
        [self.c11, self.c12, self.c13, self.c14]
    }

    pub fn row4(&self) -> [C64; 4] {
        [self.c41, self.c42, self.c43, self.c44]
    }

    /// Largest violation of `c1j + c4j = (1, 0, 0, 1)_j`.
    pub fn sum_rule_defect(&self) -> f64 {
        let want = [1.0, 0.0, 0.0, 1.0];
        self.row1()
            .iter()
            .zip(self.row4())
            .zip(want)
            .map(|((a, b), w)| (a + b - cr(w)).norm())
            .fold(0.0, f64::max)
    }
}

/// Closed-form `e^{tD̂}`.
///
/// The `(a, d)` block is `e^{tK}` with `K = [[-μ, ν], [μ, -ν]]`, whose
/// eigenvalues are `0` and `-(μ+ν)`; the coherences decay as `e^{-t(μ+ν)/2}`.
pub fn exp_d_hat(t: f64, rates: &LindbladRates) -> Superoperator4 {
    let (mu, nu, s) = (rates.mu(), rates.nu(), rates.total());
    let decay = (-t * s).exp();
    let half = (-0.5 * t * s).exp();
    let z = cr(0.0);
    #[rustfmt::skip]
    let m = Mat4::new(
        cr((nu + mu * decay) / s), z,        z,        cr((nu - nu * decay) / s),
        z,                         cr(half), z,        z,
        z,                         z,        cr(half), z,
        cr((mu - mu * decay) / s), z,        z,        cr((mu + nu * decay) / s),
    );
    Superoperator4(m)
}

pub fn cij(t: f64, amps: &SuperpositionAmplitudes, energies: &EnergyPair) -> CijCoefficients {
    let j = C64::from_polar(1.0, t * energies.gap());
    let jinv = j.conj();
    let (p0, p1) = (cr(amps.p0()), cr(amps.p1()));
    let cross = p0 * p1;
    let ab = amps.alpha().conj() * amps.beta();
    let ab_c = amps.alpha() * amps.beta().conj();
    let two = cr(2.0);
    CijCoefficients {
        c11: p0 * p0 + (j + jinv) * cross + p1 * p1,
        c12: (p0 - p0 * j + p1 * jinv - p1) * ab,
        c13: (p0 + p1 * j - p0 * jinv - p1) * ab_c,
        c14: (two - j - jinv) * cross,
        c41: (two - j - jinv) * cross,
        c42: (p1 + p0 * j - p1 * jinv - p0) * ab,
        c43: (p1 - p1 * j + p0 * jinv - p0) * ab_c,
        c44: p1 * p1 + (j + jinv) * cross + p0 * p0,
        j,
    }
}

/// Closed-form `e^{tĤ} = V diag(1, J, J⁻¹, 1) V†` with `V = U ⊗ (U†)ᵀ`.
pub fn exp_h_hat(t: f64, amps: &SuperpositionAmplitudes, energies: &EnergyPair) -> Superoperator4 {
    let u = dressing_unitary(amps);
    let v = kron(&u, &u.adjoint().transpose());
    let j = C64::from_polar(1.0, t * energies.gap());
    let phases = Mat4::from_diagonal(&Vec4::new(cr(1.0), j, j.conj(), cr(1.0)));
    Superoperator4(v * phases * v.adjoint())
}

/// `e^{tD̂} e^{tĤ}`, dissipative factor applied last.
pub fn approx_propagator(t: f64, model: &Model) -> Superoperator4 {
    exp_d_hat(t, &model.rates) * exp_h_hat(t, &model.amps, &model.energies)
}

/// `e^{tW}` by scaling and squaring. Refuses `||tW||_inf > 1e4`.
pub fn exact_propagator_oracle(t: f64, w: &Superoperator4) -> Result<Superoperator4> {
    let tw = w.0 * cr(t);
    expm4(&tw).map(Superoperator4)
}

/// A state at one time, with its positivity diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evolved {
    pub t: f64,
    pub rho: DensityMatrix2,
    pub min_eigenvalue: f64,
    /// Set when the approximate product leaves the positive cone.
    pub positivity_violation: bool,
}

/// Evolution of one initial state under one method, with per-method setup
/// (the spectral decomposition) done once.
pub struct Evolver {
    model: Model,
    method: PropagatorMethod,
    w: Superoperator4,
    spectrum: Option<WSpectrum>,
}

impl Evolver {
    pub fn new(model: &Model, method: PropagatorMethod) -> Result<Self> {
        let spectrum = match method {
            PropagatorMethod::ExactSpectral => Some(w_spectrum(&model.amps, &model.energies, &model.rates)?),
            _ => None,
        };
        Ok(Self {
            model: *model,
            method,
            w: model.w(),
            spectrum,
        })
    }

    pub fn method(&self) -> PropagatorMethod {
        self.method
    }

    pub fn propagator(&self, t: f64) -> Result<Superoperator4> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "time must be finite and non-negative (got {t})"
            )));
        }
        match self.method {
            PropagatorMethod::ApproxProduct => Ok(approx_propagator(t, &self.model)),
            PropagatorMethod::ExactOracle => exact_propagator_oracle(t, &self.w),
            PropagatorMethod::ExactSpectral => Ok(self
                .spectrum
                .as_ref()
                .expect("spectrum is built for the spectral method")
                .propagator(t)),
        }
    }

    pub fn evolve(&self, rho0: &DensityMatrix2, t: f64) -> Result<Evolved> {
        if t == 0.0 {
            return Ok(Evolved {
                t,
                rho: *rho0,
                min_eigenvalue: rho0.min_eigenvalue(),
                positivity_violation: false,
            });
        }
        let p = self.propagator(t)?;
        let psi = VectorizedState(p.0 * vectorize(rho0).0);
        let rho = devectorize(&psi)?;
        let min_eigenvalue = rho.min_eigenvalue();
        if self.method.is_exact() && (rho.trace_error() > EXACT_TRACE_TOL || min_eigenvalue < -EXACT_PSD_TOL) {
            return Err(Error::NonPhysical(format!(
                "{} at t = {t}: trace error {:e}, min eigenvalue {:e}",
                self.method,
                rho.trace_error(),
                min_eigenvalue
            )));
        }
        Ok(Evolved {
            t,
            rho,
            min_eigenvalue,
            positivity_violation: min_eigenvalue < -EXACT_PSD_TOL,
        })
    }

    /// Evaluates every grid point independently; output order follows `times`.
    pub fn trajectory(&self, rho0: &DensityMatrix2, times: &[f64]) -> Result<Vec<Evolved>> {
        times.par_iter().map(|&t| self.evolve(rho0, t)).collect()
    }
}

/// `ρ(t) = devectorize(P(t) vectorize(ρ0))` for a single time.
pub fn evolve(rho0: &DensityMatrix2, t: f64, method: PropagatorMethod, model: &Model) -> Result<Evolved> {
    Evolver::new(model, method)?.evolve(rho0, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_abs};
    use crate::types::make_amplitudes;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn model(a: C64, b: C64, e0: f64, e1: f64, mu: f64, nu: f64) -> Model {
        Model::new(
            make_amplitudes(a, b, true).unwrap(),
            EnergyPair::new(e0, e1).unwrap(),
            LindbladRates::new(mu, nu).unwrap(),
        )
    }

    fn random_model(rng: &mut ChaCha8Rng) -> Model {
        let a = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let b = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let e0 = rng.random_range(-2.0..2.0);
        let gap = rng.random_range(0.1..3.0);
        model(
            a,
            b,
            e0,
            e0 + gap,
            rng.random_range(0.1..3.0),
            rng.random_range(0.1..3.0),
        )
    }

    #[test]
    fn method_names_round_trip() {
        for m in PropagatorMethod::ALL {
            assert_eq!(m.name().parse::<PropagatorMethod>().unwrap(), m);
        }
        assert!("exact".parse::<PropagatorMethod>().is_err());
    }

    #[test]
    fn exp_d_hat_at_zero_is_identity() {
        let r = LindbladRates::new(0.4, 2.0).unwrap();
        assert!(max_abs(&(exp_d_hat(0.0, &r).0 - Mat4::identity())) < 1e-15);
    }

    #[test]
    fn exp_d_hat_long_time_limit() {
        let r = LindbladRates::new(1.0, 3.0).unwrap();
        let m = exp_d_hat(100.0 / 4.0, &r).0;
        for row in [0, 3] {
            let want = if row == 0 { 0.75 } else { 0.25 };
            assert!((m[(row, 0)] - cr(want)).norm() < 1e-15);
            assert!((m[(row, 3)] - cr(want)).norm() < 1e-15);
        }
        assert!(max_abs(&m.column(1)) < 1e-20 && max_abs(&m.column(2)) < 1e-20);
    }

    #[test]
    fn cij_at_zero() {
        let m = model(c(0.3, 0.1), c(0.5, -0.7), 0.0, 1.0, 1.0, 1.0);
        let k = cij(0.0, &m.amps, &m.energies);
        assert!((k.c11 - cr(1.0)).norm() < 1e-15 && (k.c44 - cr(1.0)).norm() < 1e-15);
        for z in [k.c12, k.c13, k.c14, k.c41, k.c42, k.c43] {
            assert!(z.norm() < 1e-15);
        }
    }

    #[test]
    fn cij_half_period_balanced() {
        let m = model(cr(1.0), cr(1.0), 0.0, 1.0, 1.0, 1.0);
        let k = cij(std::f64::consts::PI, &m.amps, &m.energies);
        assert!((k.j - cr(-1.0)).norm() < 1e-15);
        assert!(k.c11.norm() < 1e-15);
        assert!((k.c14 - cr(1.0)).norm() < 1e-15);
    }

    #[test]
    fn exp_h_hat_cases() {
        let m = model(cr(1.0), cr(0.0), 0.0, 1.3, 1.0, 1.0);
        assert!(max_abs(&(exp_h_hat(0.0, &m.amps, &m.energies).0 - Mat4::identity())) < 1e-15);
        let t = 0.77;
        let j = C64::from_polar(1.0, t * 1.3);
        let want = Mat4::from_diagonal(&Vec4::new(cr(1.0), j, j.conj(), cr(1.0)));
        assert!(max_abs(&(exp_h_hat(t, &m.amps, &m.energies).0 - want)) < 1e-15);
    }

    #[test]
    fn closed_forms_match_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let m = random_model(&mut rng);
            for t in [0.1, 1.0, 10.0] {
                let d = exact_propagator_oracle(t, &m.d_hat()).unwrap();
                assert!(max_abs(&(d.0 - exp_d_hat(t, &m.rates).0)) < 1e-11);
                let h = exact_propagator_oracle(t, &m.h_hat()).unwrap();
                let closed = exp_h_hat(t, &m.amps, &m.energies);
                assert!(max_abs(&(h.0 - closed.0)) < 1e-11);
                let k = cij(t, &m.amps, &m.energies);
                for col in 0..4 {
                    assert!((closed.0[(0, col)] - k.row1()[col]).norm() < 1e-12);
                    assert!((closed.0[(3, col)] - k.row4()[col]).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn cij_sum_rules() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let m = random_model(&mut rng);
            let t = rng.random_range(0.0..20.0);
            let k = cij(t, &m.amps, &m.energies);
            assert!(k.sum_rule_defect() < 1e-12);
            assert!((k.j.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn approx_is_exact_without_coupling() {
        let m = model(cr(1.0), cr(0.0), 0.2, 1.5, 0.8, 2.1);
        for t in [0.0, 0.3, 1.0, 4.0, 10.0] {
            let approx = approx_propagator(t, &m);
            let exact = exact_propagator_oracle(t, &m.w()).unwrap();
            assert!(crate::linalg::norm_inf4(&(approx.0 - exact.0)) <= 1e-10);
        }
    }

    #[test]
    fn approx_error_is_second_order() {
        let m = model(cr(0.6), cr(0.8), 0.0, 1.0, 1.0, 3.0);
        let err = |t: f64| {
            let a = approx_propagator(t, &m);
            let e = exact_propagator_oracle(t, &m.w()).unwrap();
            crate::linalg::norm_inf4(&(a.0 - e.0))
        };
        let (e1, e2) = (err(0.01), err(0.005));
        let ratio = e1 / e2;
        assert!((ratio - 4.0).abs() < 0.2, "ratio {ratio}");
        // constant from the halving fit bounds the error at t = 0.01
        let c = e2 / 0.005f64.powi(2);
        assert!(e1 <= 1.1 * c * 0.01f64.powi(2));
    }

    #[test]
    fn oracle_semigroup_and_diagonal() {
        let diag = Superoperator4(Mat4::from_diagonal(&Vec4::new(
            cr(0.0),
            c(-1.0, 2.0),
            c(-1.0, -2.0),
            cr(-3.0),
        )));
        let e = exact_propagator_oracle(1.5, &diag).unwrap();
        for k in 0..4 {
            assert!((e.0[(k, k)] - (diag.0[(k, k)] * cr(1.5)).exp()).norm() < 1e-13);
        }
        assert_eq!(exact_propagator_oracle(0.0, &diag).unwrap().0, Mat4::identity());

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let w = random_model(&mut rng).w();
            let (s, t) = (rng.random_range(0.0..5.0), rng.random_range(0.0..5.0));
            let lhs = exact_propagator_oracle(s + t, &w).unwrap();
            let rhs = exact_propagator_oracle(s, &w).unwrap() * exact_propagator_oracle(t, &w).unwrap();
            assert!(max_abs(&(lhs.0 - rhs.0)) < 1e-11);
        }
        let huge = Superoperator4(Mat4::identity());
        assert!(matches!(
            exact_propagator_oracle(2e4, &huge),
            Err(Error::OverflowGuard { .. })
        ));
    }

    #[test]
    fn evolve_examples() {
        let m = model(c(0.2, 0.4), c(-0.1, 0.9), 0.0, 1.0, 1.0, 3.0);
        let rho0 = DensityMatrix2::plus();
        for method in PropagatorMethod::ALL {
            assert_eq!(evolve(&rho0, 0.0, method, &m).unwrap().rho, rho0);
        }

        let sym = model(cr(1.0), cr(0.0), 0.0, 1.0, 1.5, 1.5);
        let mut last = 1.0;
        for t in [0.5, 1.0, 2.0, 5.0, 20.0] {
            let e = evolve(&DensityMatrix2::ket0(), t, PropagatorMethod::ExactOracle, &sym).unwrap();
            assert!(e.rho.b().norm() < 1e-15);
            // a(t) = 1/2 + e^{-3t}/2
            assert!((e.rho.a() - (0.5 + 0.5 * (-3.0 * t).exp())).abs() < 1e-12);
            assert!(e.rho.a() < last);
            last = e.rho.a();
        }

        let e = evolve(&DensityMatrix2::ket0(), 50.0 / 4.0, PropagatorMethod::ApproxProduct, &m).unwrap();
        assert!((e.rho.a() - 0.75).abs() < 1e-8 && (e.rho.d() - 0.25).abs() < 1e-8);
        assert!(e.rho.b().norm() < 1e-8);
    }

    #[test]
    fn evolve_rejects_negative_time() {
        let m = model(cr(1.0), cr(0.0), 0.0, 1.0, 1.0, 1.0);
        assert!(evolve(&DensityMatrix2::ket0(), -1.0, PropagatorMethod::ExactOracle, &m).is_err());
    }

    #[test]
    fn methods_agree_on_exact_dynamics() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let m = random_model(&mut rng);
            let oracle = Evolver::new(&m, PropagatorMethod::ExactOracle).unwrap();
            let spectral = Evolver::new(&m, PropagatorMethod::ExactSpectral).unwrap();
            for t in [0.1, 1.0, 5.0] {
                let a = oracle.evolve(&DensityMatrix2::plus(), t).unwrap();
                let b = spectral.evolve(&DensityMatrix2::plus(), t).unwrap();
                assert!(a.rho.distance_inf(&b.rho) < 1e-9);
                assert!((a.rho.b() - b.rho.b()).norm() < 1e-9);
            }
        }
    }
}
