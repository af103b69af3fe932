//! Long-time endpoints.
//!
//! The split product `e^{tD̂} e^{tĤ}` forgets everything but the trace and
//! relaxes to `diag(ν, μ)/(μ+ν)`. The exact flow `e^{tW}` relaxes to the zero
//! mode of `W`, which depends on the Hamiltonian but not on the initial state.

use crate::error::{Error, Result};
use crate::linalg::{cr, max_abs, Mat4};
use crate::propagators::{approx_propagator, exact_propagator_oracle, Model, PropagatorMethod};
use crate::spectral::{w_spectrum, WSpectrum};
use crate::types::{devectorize, vectorize, DensityMatrix2, LindbladRates, SuperpositionAmplitudes, VectorizedState};

/// Probe time for the exact limit, in units of the slowest decay time.
pub const EXACT_PROBE_FACTOR: f64 = 60.0;
/// Probe time for the approximate limit, in units of `1/(μ+ν)`.
pub const APPROX_PROBE_FACTOR: f64 = 50.0;
/// Amplitudes below this cannot be mapped to positive rates.
pub const BORN_AMPLITUDE_TOL: f64 = 1e-12;

const LIMIT_TRACE_TOL: f64 = 1e-10;
const LIMIT_PSD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    pub rho_limit: DensityMatrix2,
    pub method: PropagatorMethod,
    /// Max-entry distance between the propagated vector at `probe_time` and the limit.
    pub residual: f64,
    pub probe_time: f64,
    pub born_weights: Option<(f64, f64)>,
}

/// `ρ(∞) = diag(ν, μ) (a0 + d0) / (μ+ν)` under the split product.
pub fn stationary_approx(rates: &LindbladRates, rho0: &DensityMatrix2) -> DensityMatrix2 {
    let tr = rho0.trace();
    let s = rates.total();
    DensityMatrix2::from_parts(rates.nu() * tr / s, cr(0.0), rates.mu() * tr / s)
}

/// Rates with `ν/(μ+ν) = |α|²` and `μ/(μ+ν) = |β|²`, `μ + ν = scale`.
pub fn born_rates(amps: &SuperpositionAmplitudes, scale: f64) -> Result<LindbladRates> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "rate scale must be positive (got {scale})"
        )));
    }
    let (abs_alpha, abs_beta) = (amps.alpha().norm(), amps.beta().norm());
    if abs_alpha < BORN_AMPLITUDE_TOL || abs_beta < BORN_AMPLITUDE_TOL {
        return Err(Error::DegenerateAmplitude { abs_alpha, abs_beta });
    }
    LindbladRates::new(scale * amps.p1(), scale * amps.p0())
}

/// Split-product endpoint together with the distance reached at `t = 50/(μ+ν)`.
pub fn approx_report(model: &Model, rho0: &DensityMatrix2) -> AsymptoticReport {
    let rho_limit = stationary_approx(&model.rates, rho0);
    let probe_time = APPROX_PROBE_FACTOR / model.rates.total();
    let psi = approx_propagator(probe_time, model).0 * vectorize(rho0).0;
    let residual = max_abs(&(psi - vectorize(&rho_limit).0));
    AsymptoticReport {
        rho_limit,
        method: PropagatorMethod::ApproxProduct,
        residual,
        probe_time,
        born_weights: Some((rho_limit.a(), rho_limit.d())),
    }
}

/// Exact endpoint `lim e^{tW} Ψ0`, read off the zero mode of `W`.
///
/// The residual is measured against oracle propagation to
/// `T = 60 / min |Re λ|`.
pub fn stationary_exact(model: &Model, rho0: &DensityMatrix2) -> Result<AsymptoticReport> {
    let spectrum = w_spectrum(&model.amps, &model.energies, &model.rates)?;
    stationary_exact_with(&spectrum, rho0)
}

pub fn stationary_exact_with(spectrum: &WSpectrum, rho0: &DensityMatrix2) -> Result<AsymptoticReport> {
    let psi0 = vectorize(rho0).0;
    let psi_limit = spectrum.zero_mode_projector() * psi0;
    let rho_limit = devectorize(&VectorizedState(psi_limit))?;
    rho_limit.check(LIMIT_TRACE_TOL, LIMIT_PSD_TOL)?;

    let probe_time = EXACT_PROBE_FACTOR / spectrum.slowest_rate();
    let propagated = exact_propagator_oracle(probe_time, &spectrum.w)?.0 * psi0;
    let residual = max_abs(&(propagated - psi_limit));
    Ok(AsymptoticReport {
        rho_limit,
        method: PropagatorMethod::ExactSpectral,
        residual,
        probe_time,
        born_weights: None,
    })
}

/// The exact limit propagator in the cofactor form, for comparison
/// with the projector route.
pub fn cofactor_limit(model: &Model) -> Result<Mat4> {
    Ok(w_spectrum(&model.amps, &model.energies, &model.rates)?.cofactor_limit())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, C64};
    use crate::types::{make_amplitudes, EnergyPair};

    fn model(a: C64, b: C64, mu: f64, nu: f64) -> Model {
        Model::new(
            make_amplitudes(a, b, true).unwrap(),
            EnergyPair::new(0.0, 1.0).unwrap(),
            LindbladRates::new(mu, nu).unwrap(),
        )
    }

    #[test]
    fn approx_limit_examples() {
        let r = LindbladRates::new(1.0, 3.0).unwrap();
        let rho = stationary_approx(&r, &DensityMatrix2::ket0());
        assert_eq!((rho.a(), rho.d()), (0.75, 0.25));
        assert_eq!(rho, stationary_approx(&r, &DensityMatrix2::plus()));

        let r = LindbladRates::new(2.0, 2.0).unwrap();
        let rho = stationary_approx(&r, &DensityMatrix2::ket1());
        assert_eq!((rho.a(), rho.d()), (0.5, 0.5));
    }

    #[test]
    fn born_rate_examples() {
        let s = make_amplitudes(cr(1.0), cr(1.0), true).unwrap();
        let r = born_rates(&s, 2.0).unwrap();
        assert!((r.mu() - 1.0).abs() < 1e-15 && (r.nu() - 1.0).abs() < 1e-15);

        let s = make_amplitudes(cr(0.6), cr(0.8), false).unwrap();
        let r = born_rates(&s, 1.0).unwrap();
        assert!((r.nu() - 0.36).abs() < 1e-15 && (r.mu() - 0.64).abs() < 1e-15);
        let rho = stationary_approx(&r, &DensityMatrix2::ket0());
        assert!((rho.a() - 0.36).abs() < 1e-12 && (rho.d() - 0.64).abs() < 1e-12);

        let other = stationary_approx(&born_rates(&s, 10.0).unwrap(), &DensityMatrix2::ket0());
        assert!((other.a() - rho.a()).abs() < 1e-15);
    }

    #[test]
    fn born_rate_errors() {
        let s = make_amplitudes(cr(1.0), cr(0.0), false).unwrap();
        assert!(matches!(born_rates(&s, 1.0), Err(Error::DegenerateAmplitude { .. })));
        let s = make_amplitudes(cr(0.6), cr(0.8), false).unwrap();
        assert!(born_rates(&s, 0.0).is_err());
        assert!(born_rates(&s, f64::INFINITY).is_err());
    }

    #[test]
    fn uncoupled_exact_limit() {
        let m = model(cr(1.0), cr(0.0), 1.0, 3.0);
        let rep = stationary_exact(&m, &DensityMatrix2::ket0()).unwrap();
        assert!((rep.rho_limit.a() - 0.75).abs() < 1e-12);
        assert!((rep.rho_limit.d() - 0.25).abs() < 1e-12);
        assert!(rep.rho_limit.b().norm() < 1e-12);
        assert!(rep.residual < 1e-8);
    }

    #[test]
    fn exact_limit_forgets_initial_state() {
        let m = model(c(0.8, 0.1), c(0.2, -0.5), 0.9, 0.4);
        let r0 = stationary_exact(&m, &DensityMatrix2::ket0()).unwrap();
        let r1 = stationary_exact(&m, &DensityMatrix2::ket1()).unwrap();
        assert!(r0.rho_limit.distance_inf(&r1.rho_limit) < 1e-9);
        assert!(r0.residual < 1e-8 && r1.residual < 1e-8);
        let w = m.w().0;
        let stationary = w * vectorize(&r0.rho_limit).0;
        assert!(max_abs(&stationary) <= 1e-10);
        // differs from the split-product endpoint once the drive couples levels
        let approx = stationary_approx(&m.rates, &DensityMatrix2::ket0());
        assert!(approx.distance_inf(&r0.rho_limit) > 1e-3);
    }

    #[test]
    fn cofactor_form_is_trace_normalized() {
        let m = model(c(0.3, 0.3), c(0.9, 0.0), 1.3, 0.5);
        let lim = cofactor_limit(&m).unwrap();
        assert!((lim[(0, 0)] + lim[(3, 0)] - cr(1.0)).norm() < 1e-12);
        let psi = lim * vectorize(&DensityMatrix2::ket0()).0;
        let rep = stationary_exact(&m, &DensityMatrix2::ket0()).unwrap();
        assert!(max_abs(&(psi - vectorize(&rep.rho_limit).0)) < 1e-10);
    }

    #[test]
    fn approx_report_residual() {
        let m = model(c(0.3, 0.3), c(0.9, 0.0), 1.0, 3.0);
        let rep = approx_report(&m, &DensityMatrix2::ket0());
        assert!(rep.residual < 1e-8);
        let (p0, p1) = rep.born_weights.unwrap();
        assert!((p0 + p1 - 1.0).abs() < 1e-12);
    }
}
