//! Exact diagonalization of `W`.
//!
//! `det(λ - W) = λ f(λ + (μ+ν)/2)` with the cubic
//! `f(Λ) = Λ³ + a2 Λ² + a1 Λ + a0`, where `a2 = (μ+ν)/2`, `a1 = (E1-E0)²` and
//! `a0 = (E1-E0)² (|α|²-|β|²)² (μ+ν)/2`. When `a0 > 0` the cubic has a real
//! root in `(-a2, 0)` because `f(0) > 0` and `f(-a2) < 0`; that root is
//! isolated by bisection, polished by Newton, and the other two come from the
//! deflated quadratic.
//!
//! Eigenvectors are taken from `Wᵀ`: its zero mode is exactly `(1, 0, 0, 1)`
//! (trace preservation), and `W = (Oᵀ)⁻¹ D_W Oᵀ` when the columns of `O` are
//! eigenvectors of `Wᵀ`.

use crate::error::{Error, Result};
use crate::linalg::{cofactor4, cr, norm_inf4, null_vector, to_dense4, Mat4, Vec4, C64};
use crate::superoperator::{build_w, Superoperator4};
use crate::types::{dressed_hamiltonian, EnergyPair, LindbladRates, SuperpositionAmplitudes, TwoLevelHamiltonian};

/// `|α|² - |β|²` below this is treated as exactly balanced.
pub const BALANCE_TOL: f64 = 1e-12;
/// Bisection stops once the bracket is this narrow (relative to `max(1, a2)`).
const BISECTION_WIDTH: f64 = 1e-6;
/// Newton polish target, relative to the coefficient scale.
const POLISH_RESIDUAL: f64 = 1e-13;
/// Root residual contract, relative to the coefficient scale.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;
/// Eigenvalues closer than this are treated as degenerate.
pub const DEGENERACY_GAP: f64 = 1e-8;
/// Pivot threshold for eigenvector extraction, relative to `||W||_inf`.
const PIVOT_REL_TOL: f64 = 1e-12;

/// Coefficients of the monic cubic `Λ³ + a2 Λ² + a1 Λ + a0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicCoefficients {
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
}

impl CubicCoefficients {
    pub fn eval(&self, x: C64) -> C64 {
        ((x + cr(self.a2)) * x + cr(self.a1)) * x + cr(self.a0)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        ((x + self.a2) * x + self.a1) * x + self.a0
    }

    fn derivative(&self, x: C64) -> C64 {
        (x * cr(3.0) + cr(2.0 * self.a2)) * x + cr(self.a1)
    }

    /// `max(1, |a2|, |a1|, |a0|)`
    pub fn scale(&self) -> f64 {
        1f64.max(self.a2.abs()).max(self.a1.abs()).max(self.a0.abs())
    }

    pub fn is_balanced(&self) -> bool {
        self.a0 == 0.0
    }
}

pub fn characteristic_cubic(
    amps: &SuperpositionAmplitudes,
    energies: &EnergyPair,
    rates: &LindbladRates,
) -> CubicCoefficients {
    let half = 0.5 * rates.total();
    let gap_sq = energies.gap().powi(2);
    let imbalance = amps.imbalance();
    let a0 = if imbalance.abs() <= BALANCE_TOL {
        0.0
    } else {
        gap_sq * imbalance * imbalance * half
    };
    CubicCoefficients {
        a2: half,
        a1: gap_sq,
        a0,
    }
}

/// The same cubic written through the Hamiltonian entries:
/// `a1 = (l-h)² + 4|k|²`, `a0 = (l-h)² (μ+ν)/2`.
pub fn cubic_from_hamiltonian(ham: &TwoLevelHamiltonian, rates: &LindbladRates) -> CubicCoefficients {
    let half = 0.5 * rates.total();
    let diff_sq = (ham.l - ham.h).powi(2);
    CubicCoefficients {
        a2: half,
        a1: diff_sq + 4.0 * ham.k.norm_sqr(),
        a0: diff_sq * half,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubicCase {
    /// `|α| = |β|`: `Λ0 = 0` and the rest from a quadratic.
    Balanced,
    /// `|α| ≠ |β|`: `Λ0` is bracketed in `(-a2, 0)`.
    Unbalanced,
}

/// The roots `Λ0` (real), `Λ+` and `Λ-`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicRoots {
    pub case: CubicCase,
    pub lambda0: f64,
    pub plus: C64,
    pub minus: C64,
}

impl CubicRoots {
    pub fn all(&self) -> [C64; 3] {
        [cr(self.lambda0), self.plus, self.minus]
    }

    pub fn residuals(&self, coeffs: &CubicCoefficients) -> [f64; 3] {
        self.all().map(|x| coeffs.eval(x).norm())
    }
}

pub fn solve_cubic(coeffs: &CubicCoefficients) -> Result<CubicRoots> {
    let CubicCoefficients { a2, a1, .. } = *coeffs;
    if coeffs.is_balanced() {
        let (plus, minus) = quadratic_roots(a2, a1);
        return Ok(CubicRoots {
            case: CubicCase::Balanced,
            lambda0: 0.0,
            plus,
            minus,
        });
    }

    let scale = coeffs.scale();
    let f_hi = coeffs.eval_real(0.0);
    let f_lo = coeffs.eval_real(-a2);
    if f_hi.is_nan() || f_hi <= 0.0 || f_lo > 1e-12 * scale || !f_lo.is_finite() {
        return Err(Error::BracketFailure { f_hi, f_lo });
    }

    let lambda0 = bracketed_root(coeffs, -a2, 0.0);
    // Λ² + (Λ0 + a2) Λ + (Λ0² + a2 Λ0 + a1)
    let lin = lambda0 + a2;
    let konst = lambda0 * lambda0 + a2 * lambda0 + a1;
    let (plus, minus) = quadratic_roots(lin, konst);
    Ok(CubicRoots {
        case: CubicCase::Unbalanced,
        lambda0,
        plus: polish(coeffs, plus),
        minus: polish(coeffs, minus),
    })
}

/// Roots of `x² + p x + q`, `+` branch first.
fn quadratic_roots(p: f64, q: f64) -> (C64, C64) {
    let disc = p * p - 4.0 * q;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        // avoid cancellation: compute the larger-magnitude root first
        let big = -0.5 * (p + p.signum() * sq);
        if big == 0.0 {
            return (cr(0.0), cr(0.0));
        }
        let small = q / big;
        let (plus, minus) = if p >= 0.0 { (small, big) } else { (big, small) };
        (cr(plus), cr(minus))
    } else {
        let im = 0.5 * (-disc).sqrt();
        (C64::new(-0.5 * p, im), C64::new(-0.5 * p, -im))
    }
}

/// Bisection on `[lo, hi]` with `f(lo) <= 0 < f(hi)`, then safeguarded Newton.
fn bracketed_root(coeffs: &CubicCoefficients, mut lo: f64, mut hi: f64) -> f64 {
    let scale = coeffs.scale();
    if coeffs.eval_real(lo) == 0.0 {
        return lo;
    }
    let width = BISECTION_WIDTH * 1f64.max(coeffs.a2);
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if coeffs.eval_real(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let mut x = 0.5 * (lo + hi);
    for _ in 0..100 {
        let fx = coeffs.eval_real(x);
        if fx.abs() <= POLISH_RESIDUAL * scale {
            break;
        }
        if fx > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let dfx = (3.0 * x + 2.0 * coeffs.a2) * x + coeffs.a1;
        let newton = x - fx / dfx;
        x = if dfx != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= f64::EPSILON * x.abs().max(1e-300) {
            break;
        }
    }
    x
}

/// A few Newton steps on the full cubic, each kept only if it lowers `|f|`.
fn polish(coeffs: &CubicCoefficients, mut x: C64) -> C64 {
    let mut fx = coeffs.eval(x).norm();
    for _ in 0..4 {
        let d = coeffs.derivative(x);
        if d.norm() == 0.0 {
            break;
        }
        let next = x - coeffs.eval(x) / d;
        let fnext = coeffs.eval(next).norm();
        if fnext < fx {
            x = next;
            fx = fnext;
        } else {
            break;
        }
    }
    x
}

/// Eigenvalues `(0, λ2, λ3, λ4)` with `λi = Λi - (μ+ν)/2`.
pub fn w_eigenvalues(
    amps: &SuperpositionAmplitudes,
    energies: &EnergyPair,
    rates: &LindbladRates,
) -> Result<(CubicCoefficients, CubicRoots, [C64; 4])> {
    let coeffs = characteristic_cubic(amps, energies, rates);
    let roots = solve_cubic(&coeffs)?;
    let shift = cr(coeffs.a2);
    let lambdas = [
        cr(0.0),
        cr(roots.lambda0) - shift,
        roots.plus - shift,
        roots.minus - shift,
    ];
    Ok((coeffs, roots, lambdas))
}

/// Smallest pairwise distance between eigenvalues.
pub fn min_gap(lambdas: &[C64; 4]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..4 {
        for j in i + 1..4 {
            gap = gap.min((lambdas[i] - lambdas[j]).norm());
        }
    }
    gap
}

#[derive(Debug, Clone, PartialEq)]
pub struct WSpectrum {
    pub coeffs: CubicCoefficients,
    pub roots: CubicRoots,
    /// `(λ1 = 0, λ2, λ3, λ4)`
    pub lambdas: [C64; 4],
    /// Columns are eigenvectors of `Wᵀ`; the first is `(1, 0, 0, 1)`.
    pub o_matrix: Mat4,
    pub o_det: C64,
    /// First row of the adjugate of `O`, so `(O⁻¹)_{1j} = cofactors_row1[j] / o_det`.
    pub cofactors_row1: [C64; 4],
    /// `(Oᵀ)⁻¹`; columns are eigenvectors of `W`.
    pub right_vectors: Mat4,
    /// Right null vector of `W` scaled to `Ψ1 + Ψ4 = 1`.
    pub zero_mode: Vec4,
    pub min_gap: f64,
    pub w: Superoperator4,
}

impl WSpectrum {
    /// `Re λ2, Re λ3, Re λ4 < 0`.
    pub fn is_stable(&self) -> bool {
        self.lambdas[1..].iter().all(|l| l.re < 0.0)
    }

    /// Slowest decay rate among the non-zero modes.
    pub fn slowest_rate(&self) -> f64 {
        self.lambdas[1..]
            .iter()
            .map(|l| l.re.abs())
            .fold(f64::INFINITY, f64::min)
    }

    /// `e^{tW} = (Oᵀ)⁻¹ e^{t D_W} Oᵀ`.
    pub fn propagator(&self, t: f64) -> Superoperator4 {
        let phases = Mat4::from_diagonal(&Vec4::from_iterator(self.lambdas.iter().map(|l| (l * cr(t)).exp())));
        Superoperator4(self.right_vectors * phases * self.o_matrix.transpose())
    }

    /// `lim e^{tW}` through the cofactor route:
    /// `(O⁻¹)_{1j}` in column one and column four, zero elsewhere.
    pub fn cofactor_limit(&self) -> Mat4 {
        let col = Vec4::from_iterator(self.cofactors_row1.iter().map(|c| c / self.o_det));
        let mut m = Mat4::zeros();
        m.set_column(0, &col);
        m.set_column(3, &col);
        m
    }

    /// `r ℓᵀ` with `r` the trace-normalized zero mode and `ℓ = (1, 0, 0, 1)`.
    pub fn zero_mode_projector(&self) -> Mat4 {
        let mut m = Mat4::zeros();
        m.set_column(0, &self.zero_mode);
        m.set_column(3, &self.zero_mode);
        m
    }

    /// Largest `||W v - λ v||` over the right eigenvectors.
    pub fn right_residual(&self) -> f64 {
        (0..4)
            .map(|i| {
                let v = self.right_vectors.column(i);
                (self.w.0 * v - v * self.lambdas[i]).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Largest `||Wᵀ o - λ o||` over the columns of `O`.
    pub fn left_residual(&self) -> f64 {
        let wt = self.w.0.transpose();
        (0..4)
            .map(|i| {
                let v = self.o_matrix.column(i);
                (wt * v - v * self.lambdas[i]).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Full spectral data of `W`.
///
/// Refuses (`DegenerateSpectrum`) when two eigenvalues are closer than `1e-8`
/// or an eigenvector cannot be isolated; callers should then fall back to
/// the oracle propagator.
pub fn w_spectrum(amps: &SuperpositionAmplitudes, energies: &EnergyPair, rates: &LindbladRates) -> Result<WSpectrum> {
    let (coeffs, roots, lambdas) = w_eigenvalues(amps, energies, rates)?;
    let gap = min_gap(&lambdas);
    if gap < DEGENERACY_GAP {
        return Err(Error::DegenerateSpectrum { gap });
    }

    let w = build_w(&dressed_hamiltonian(amps, energies), rates);
    let pivot_tol = PIVOT_REL_TOL * norm_inf4(&w.0);
    let wt = w.0.transpose();

    let mut o_matrix = Mat4::zeros();
    o_matrix.set_column(0, &Vec4::new(cr(1.0), cr(0.0), cr(0.0), cr(1.0)));
    for (i, lambda) in lambdas.iter().enumerate().skip(1) {
        let shifted = wt - Mat4::identity() * *lambda;
        let v = null_vector(&to_dense4(&shifted), pivot_tol).ok_or(Error::DegenerateSpectrum { gap })?;
        o_matrix.set_column(i, &Vec4::from_column_slice(v.as_slice()));
    }

    let o_det = o_matrix.determinant();
    let cofactors_row1 = [0, 1, 2, 3].map(|j| cofactor4(&o_matrix, j, 0));
    let right_vectors = o_matrix
        .transpose()
        .try_inverse()
        .ok_or(Error::DegenerateSpectrum { gap })?;

    let r = null_vector(&to_dense4(&w.0), pivot_tol).ok_or(Error::DegenerateSpectrum { gap })?;
    let r = Vec4::from_column_slice(r.as_slice());
    let zero_mode = r / (r[0] + r[3]);

    Ok(WSpectrum {
        coeffs,
        roots,
        lambdas,
        o_matrix,
        o_det,
        cofactors_row1,
        right_vectors,
        zero_mode,
        min_gap: gap,
        w,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_abs};
    use crate::types::make_amplitudes;

    fn amps(a: C64, b: C64) -> SuperpositionAmplitudes {
        make_amplitudes(a, b, true).unwrap()
    }

    #[test]
    fn cubic_coefficient_examples() {
        let e = EnergyPair::new(0.0, 2.0).unwrap();
        let r = LindbladRates::new(1.0, 1.0).unwrap();
        let k = characteristic_cubic(&amps(cr(0.6), cr(0.8)), &e, &r);
        assert!((k.a2 - 1.0).abs() < 1e-15);
        assert!((k.a1 - 4.0).abs() < 1e-15);
        assert!((k.a0 - 0.3136).abs() < 1e-14);

        let k = characteristic_cubic(&amps(cr(1.0), cr(1.0)), &e, &r);
        assert_eq!(k.a0, 0.0);

        let r = LindbladRates::new(0.5, 2.5).unwrap();
        let k = characteristic_cubic(&amps(cr(1.0), cr(0.0)), &e, &r);
        assert!((k.a0 - 4.0 * 1.5).abs() < 1e-14);
    }

    #[test]
    fn cubic_routes_agree() {
        let s = amps(c(0.3, -0.4), c(0.1, 0.8));
        let e = EnergyPair::new(-0.3, 1.9).unwrap();
        let r = LindbladRates::new(0.7, 1.2).unwrap();
        let a = characteristic_cubic(&s, &e, &r);
        let b = cubic_from_hamiltonian(&dressed_hamiltonian(&s, &e), &r);
        assert!((a.a1 - b.a1).abs() < 1e-10);
        assert!((a.a0 - b.a0).abs() < 1e-10);
    }

    #[test]
    fn balanced_roots_real() {
        let k = CubicCoefficients {
            a2: 4.0,
            a1: 1.0,
            a0: 0.0,
        };
        let roots = solve_cubic(&k).unwrap();
        assert_eq!(roots.case, CubicCase::Balanced);
        assert_eq!(roots.lambda0, 0.0);
        let s3 = 3f64.sqrt();
        assert!((roots.plus - cr(-2.0 + s3)).norm() < 1e-14);
        assert!((roots.minus - cr(-2.0 - s3)).norm() < 1e-14);
    }

    #[test]
    fn balanced_roots_complex() {
        let k = CubicCoefficients {
            a2: 1.0,
            a1: 4.0,
            a0: 0.0,
        };
        let roots = solve_cubic(&k).unwrap();
        let s15 = 15f64.sqrt();
        assert!((roots.plus - c(-0.5, 0.5 * s15)).norm() < 1e-14);
        assert!((roots.minus - c(-0.5, -0.5 * s15)).norm() < 1e-14);
    }

    #[test]
    fn unbalanced_root_in_bracket() {
        let k = CubicCoefficients {
            a2: 1.0,
            a1: 4.0,
            a0: 0.3136,
        };
        let roots = solve_cubic(&k).unwrap();
        assert_eq!(roots.case, CubicCase::Unbalanced);
        assert!(roots.lambda0 > -k.a2 && roots.lambda0 < 0.0);
        for r in roots.residuals(&k) {
            assert!(r <= ROOT_RESIDUAL_TOL * k.scale());
        }
        let q = roots.lambda0 * roots.lambda0 + k.a2 * roots.lambda0 + k.a1;
        assert!(q > 0.0);
    }

    #[test]
    fn bracket_failure_on_bad_coefficients() {
        // f(-a2) = a0 - a1 a2 > 0
        let k = CubicCoefficients {
            a2: 1.0,
            a1: 1.0,
            a0: 5.0,
        };
        assert!(matches!(solve_cubic(&k), Err(Error::BracketFailure { .. })));
        let k = CubicCoefficients {
            a2: 1.0,
            a1: 1.0,
            a0: -1.0,
        };
        assert!(matches!(solve_cubic(&k), Err(Error::BracketFailure { .. })));
    }

    #[test]
    fn uncoupled_spectrum() {
        let s = amps(cr(1.0), cr(0.0));
        let e = EnergyPair::new(0.0, 1.5).unwrap();
        let r = LindbladRates::new(1.0, 3.0).unwrap();
        let spec = w_spectrum(&s, &e, &r).unwrap();
        let want = [cr(0.0), cr(-4.0), c(-2.0, 1.5), c(-2.0, -1.5)];
        for w in want {
            let best = spec
                .lambdas
                .iter()
                .map(|l| (l - w).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-10, "missing eigenvalue {w}");
        }
        assert!(spec.is_stable());
    }

    #[test]
    fn eigenpairs_and_projector() {
        let s = amps(c(0.7, 0.2), c(-0.3, 0.5));
        let e = EnergyPair::new(0.1, 1.4).unwrap();
        let r = LindbladRates::new(0.6, 1.7).unwrap();
        let spec = w_spectrum(&s, &e, &r).unwrap();
        assert!(spec.right_residual() < 1e-9);
        assert!(spec.left_residual() < 1e-9);
        assert_eq!(spec.lambdas[0], cr(0.0));
        // W O^{-T} = O^{-T} D
        let d = Mat4::from_diagonal(&Vec4::from_column_slice(&spec.lambdas));
        let lhs = spec.w.0 * spec.right_vectors;
        let rhs = spec.right_vectors * d;
        assert!(max_abs(&(lhs - rhs)) < 1e-9);

        // the two limit routes coincide and are trace-normalized
        let diff = spec.cofactor_limit() - spec.zero_mode_projector();
        assert!(max_abs(&diff) < 1e-10);
        let col = spec.cofactor_limit().column(0).into_owned();
        assert!((col[0] + col[3] - cr(1.0)).norm() < 1e-12);
        assert!(max_abs(&(spec.w.0 * spec.zero_mode)) < 1e-12);

        // spectral propagator at t = 0 is the identity
        assert!(max_abs(&(spec.propagator(0.0).0 - Mat4::identity())) < 1e-12);
    }

    #[test]
    fn degenerate_spectrum_is_refused() {
        // balanced with a2^2 = 4 a1 gives a repeated pair Λ+ = Λ-
        let s = amps(cr(1.0), cr(1.0));
        let e = EnergyPair::new(0.0, 0.5).unwrap();
        let r = LindbladRates::new(1.0, 1.0).unwrap();
        let k = characteristic_cubic(&s, &e, &r);
        assert!((k.a2 * k.a2 - 4.0 * k.a1).abs() < 1e-15);
        assert!(matches!(w_spectrum(&s, &e, &r), Err(Error::DegenerateSpectrum { .. })));
    }
}
