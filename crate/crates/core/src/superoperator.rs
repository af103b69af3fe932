//! The 4x4 generators acting on `(a, b, b̄, d)`.
//!
//! With this ordering `vec(X)` is the row-major flattening of `X`, so
//! `vec(A X B) = (A ⊗ Bᵀ) vec(X)` and the commutator part of the master
//! equation becomes `Ĥ = -i (H ⊗ 1 - 1 ⊗ Hᵀ)`.

use crate::linalg::{c, cr, Mat2, Mat4, I};
use crate::types::{DensityMatrix2, LindbladRates, TwoLevelHamiltonian};

/// A dense 4x4 generator or propagator on vectorized states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Superoperator4(pub Mat4);

impl Superoperator4 {
    pub fn identity() -> Self {
        Self(Mat4::identity())
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    /// `row_1 + row_4`; zero for a trace-preserving generator.
    pub fn trace_row_defect(&self) -> f64 {
        (0..4)
            .map(|j| (self.0[(0, j)] + self.0[(3, j)]).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Add for Superoperator4 {
    type Output = Superoperator4;
    fn add(self, rhs: Self) -> Self {
        Superoperator4(self.0 + rhs.0)
    }
}

impl std::ops::Mul for Superoperator4 {
    type Output = Superoperator4;
    fn mul(self, rhs: Self) -> Self {
        Superoperator4(self.0 * rhs.0)
    }
}

pub mod pauli {
    use super::*;

    pub fn identity() -> Mat2 {
        Mat2::identity()
    }

    pub fn sigma1() -> Mat2 {
        Mat2::new(cr(0.0), cr(1.0), cr(1.0), cr(0.0))
    }

    pub fn sigma2() -> Mat2 {
        Mat2::new(cr(0.0), c(0.0, -1.0), c(0.0, 1.0), cr(0.0))
    }

    pub fn sigma3() -> Mat2 {
        Mat2::new(cr(1.0), cr(0.0), cr(0.0), cr(-1.0))
    }

    /// `(σ1 + iσ2)/2 = |0><1|`
    pub fn sigma_plus() -> Mat2 {
        Mat2::new(cr(0.0), cr(1.0), cr(0.0), cr(0.0))
    }

    /// `(σ1 - iσ2)/2 = |1><0|`
    pub fn sigma_minus() -> Mat2 {
        Mat2::new(cr(0.0), cr(0.0), cr(1.0), cr(0.0))
    }
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    Mat4::from_fn(|r, col| a[(r / 2, col / 2)] * b[(r % 2, col % 2)])
}

/// `Ĥ = -i (H ⊗ 1 - 1 ⊗ Hᵀ)`.
pub fn build_h_hat(ham: &TwoLevelHamiltonian) -> Superoperator4 {
    let h = ham.matrix();
    let one = Mat2::identity();
    Superoperator4((kron(&h, &one) - kron(&one, &h.transpose())) * (-I))
}

/// The same generator written out entry by entry.
pub fn build_h_hat_explicit(ham: &TwoLevelHamiltonian) -> Superoperator4 {
    let (k, kb) = (ham.k, ham.k.conj());
    let diff = cr(ham.l - ham.h);
    let z = cr(0.0);
    #[rustfmt::skip]
    let inner = Mat4::new(
        z,   -kb,   k,    z,
        -k,  -diff, z,    k,
        kb,  z,     diff, -kb,
        z,   kb,    -k,   z,
    );
    Superoperator4(inner * (-I))
}

pub fn build_d_hat(rates: &LindbladRates) -> Superoperator4 {
    let (mu, nu) = (rates.mu(), rates.nu());
    let half = -0.5 * (mu + nu);
    let z = cr(0.0);
    #[rustfmt::skip]
    let m = Mat4::new(
        cr(-mu), z,        z,        cr(nu),
        z,       cr(half), z,        z,
        z,       z,        cr(half), z,
        cr(mu),  z,        z,        cr(-nu),
    );
    Superoperator4(m)
}

/// The dissipator evaluated directly on the 2x2 matrix:
/// `μ(σ₋ρσ₊ - ½{σ₊σ₋, ρ}) + ν(σ₊ρσ₋ - ½{σ₋σ₊, ρ})`.
pub fn dissipator_apply(rho: &DensityMatrix2, rates: &LindbladRates) -> Mat2 {
    dissipator_raw(&rho.matrix(), rates.mu(), rates.nu())
}

fn dissipator_raw(r: &Mat2, mu: f64, nu: f64) -> Mat2 {
    let r = *r;
    let sp = pauli::sigma_plus();
    let sm = pauli::sigma_minus();
    let half = cr(0.5);
    let decay = sm * r * sp - (sp * sm * r + r * sp * sm) * half;
    let pump = sp * r * sm - (sm * sp * r + r * sm * sp) * half;
    decay * cr(mu) + pump * cr(nu)
}

/// `W = Ĥ + D̂`.
pub fn build_w(ham: &TwoLevelHamiltonian, rates: &LindbladRates) -> Superoperator4 {
    build_h_hat(ham) + build_d_hat(rates)
}
