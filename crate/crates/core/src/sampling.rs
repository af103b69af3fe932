//! Seeded random draws of models and states, shared by the CLI and tests.

use rand::Rng;

use crate::linalg::{c, C64};
use crate::propagators::Model;
use crate::types::{make_amplitudes, DensityMatrix2, EnergyPair, LindbladRates, SuperpositionAmplitudes};

/// Parameter ranges for [`random_model`].
#[derive(Debug, Clone, Copy)]
pub struct DrawRanges {
    pub rate: (f64, f64),
    pub energy: (f64, f64),
    pub gap: (f64, f64),
}

impl Default for DrawRanges {
    fn default() -> Self {
        Self {
            rate: (0.2, 3.0),
            energy: (-2.0, 2.0),
            gap: (0.2, 3.0),
        }
    }
}

fn gaussian_like<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Normalized amplitudes with `min(|α|, |β|) >= min_abs`.
pub fn random_amplitudes<R: Rng + ?Sized>(rng: &mut R, min_abs: f64) -> SuperpositionAmplitudes {
    loop {
        let (a, b) = (gaussian_like(rng), gaussian_like(rng));
        if a.norm() + b.norm() < 1e-3 {
            continue;
        }
        let amps = make_amplitudes(a, b, true).expect("nonzero draw");
        if amps.alpha().norm().min(amps.beta().norm()) >= min_abs {
            return amps;
        }
    }
}

/// `|α| = |β| = 1/√2` with random phases.
pub fn random_balanced_amplitudes<R: Rng + ?Sized>(rng: &mut R) -> SuperpositionAmplitudes {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let pa = rng.random_range(0.0..std::f64::consts::TAU);
    let pb = rng.random_range(0.0..std::f64::consts::TAU);
    make_amplitudes(C64::from_polar(r, pa), C64::from_polar(r, pb), true).expect("unit amplitudes")
}

pub fn random_energies<R: Rng + ?Sized>(rng: &mut R, ranges: &DrawRanges) -> EnergyPair {
    let e0 = rng.random_range(ranges.energy.0..ranges.energy.1);
    let gap = rng.random_range(ranges.gap.0..ranges.gap.1);
    EnergyPair::new(e0, e0 + gap).expect("positive gap")
}

pub fn random_rates<R: Rng + ?Sized>(rng: &mut R, ranges: &DrawRanges) -> LindbladRates {
    LindbladRates::new(
        rng.random_range(ranges.rate.0..ranges.rate.1),
        rng.random_range(ranges.rate.0..ranges.rate.1),
    )
    .expect("positive rates")
}

/// A model with `|α| ≠ |β|` by at least `min_imbalance` in `||α|² - |β|²|`.
pub fn random_unbalanced_model<R: Rng + ?Sized>(rng: &mut R, ranges: &DrawRanges, min_imbalance: f64) -> Model {
    let amps = loop {
        let amps = random_amplitudes(rng, 0.0);
        if amps.imbalance().abs() >= min_imbalance {
            break amps;
        }
    };
    Model::new(amps, random_energies(rng, ranges), random_rates(rng, ranges))
}

pub fn random_model<R: Rng + ?Sized>(rng: &mut R, ranges: &DrawRanges) -> Model {
    Model::new(
        random_amplitudes(rng, 0.0),
        random_energies(rng, ranges),
        random_rates(rng, ranges),
    )
}

/// A density matrix drawn uniformly in `a` and in the allowed coherence disc.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix2 {
    let a: f64 = rng.random_range(0.0..=1.0);
    let r: f64 = rng.random_range(0.0..=1.0);
    let phase = rng.random_range(0.0..std::f64::consts::TAU);
    let b = C64::from_polar(r * (a * (1.0 - a)).sqrt(), phase);
    DensityMatrix2::from_parts(a, b, 1.0 - a)
}
