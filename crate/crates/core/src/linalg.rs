//! Small dense complex linear algebra used throughout the crate.
//!
//! Everything here works on `nalgebra` matrices of `Complex64`. The matrix
//! exponential is a plain scaling-and-squaring Taylor evaluator; it is the
//! brute-force reference every closed-form propagator is checked against.

use nalgebra::{DMatrix, DVector, Matrix2, Matrix4, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;
pub type Mat4 = Matrix4<C64>;
pub type Vec4 = Vector4<C64>;

/// Inputs with `||M||_inf` above this are refused by [`expm`].
pub const EXPM_NORM_LIMIT: f64 = 1e4;

/// Scaled argument bound for the Taylor core.
const EXPM_SCALED_NORM: f64 = 0.5;
/// Series terms are added until their largest entry drops below this.
const EXPM_TERM_CUTOFF: f64 = 1e-18;
const EXPM_MAX_TERMS: usize = 60;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Max-row-sum norm.
pub fn norm_inf(m: &DMatrix<C64>) -> f64 {
    m.row_iter()
        .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn norm_inf4(m: &Mat4) -> f64 {
    m.row_iter()
        .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Largest entry modulus.
pub fn max_abs<R: nalgebra::Dim, Cc: nalgebra::Dim, S>(m: &nalgebra::Matrix<C64, R, Cc, S>) -> f64
where
    S: nalgebra::RawStorage<C64, R, Cc>,
{
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring with a truncated Taylor core.
///
/// The argument is scaled by `2^-s` until `||M / 2^s||_inf <= 0.5`, the series
/// is summed until a term falls below `1e-18` in every entry, and the result
/// is squared `s` times.
pub fn expm(m: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            left: m.shape(),
            right: (m.ncols(), m.nrows()),
        });
    }
    let n = m.nrows();
    let finite = m.iter().all(|z| z.re.is_finite() && z.im.is_finite());
    let norm = if finite { norm_inf(m) } else { f64::NAN };
    if !finite || norm > EXPM_NORM_LIMIT {
        return Err(Error::OverflowGuard {
            norm,
            limit: EXPM_NORM_LIMIT,
        });
    }

    let mut squarings = 0u32;
    while norm / 2f64.powi(squarings as i32) > EXPM_SCALED_NORM {
        squarings += 1;
    }
    let scaled = m * cr(2f64.powi(-(squarings as i32)));

    let mut sum = DMatrix::<C64>::identity(n, n);
    let mut term = DMatrix::<C64>::identity(n, n);
    for k in 1..=EXPM_MAX_TERMS {
        term = &term * &scaled * cr(1.0 / k as f64);
        sum += &term;
        if max_abs(&term) < EXPM_TERM_CUTOFF {
            break;
        }
    }

    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    Ok(sum)
}

pub fn expm4(m: &Mat4) -> Result<Mat4> {
    let dense = DMatrix::from_column_slice(4, 4, m.as_slice());
    let e = expm(&dense)?;
    Ok(Mat4::from_column_slice(e.as_slice()))
}

pub fn to_dense4(m: &Mat4) -> DMatrix<C64> {
    DMatrix::from_column_slice(4, 4, m.as_slice())
}

/// Null vector of a matrix of nullity one, by Gaussian elimination with full
/// pivoting.
///
/// The smallest (last) pivot is treated as zero. Returns `None` when one of
/// the leading `n - 1` pivots falls below `pivot_tol`, meaning the null space
/// is at least two-dimensional at that tolerance. The result has unit
/// Euclidean norm.
pub fn null_vector(m: &DMatrix<C64>, pivot_tol: f64) -> Option<DVector<C64>> {
    let n = m.nrows();
    assert!(m.is_square() && n >= 1);
    let mut a = m.clone();
    let mut col_perm: Vec<usize> = (0..n).collect();

    for step in 0..n - 1 {
        let (mut pr, mut pc, mut best) = (step, step, -1.0);
        for r in step..n {
            for cidx in step..n {
                let v = a[(r, cidx)].norm();
                if v > best {
                    best = v;
                    pr = r;
                    pc = cidx;
                }
            }
        }
        if best < pivot_tol {
            return None;
        }
        a.swap_rows(step, pr);
        a.swap_columns(step, pc);
        col_perm.swap(step, pc);

        let pivot = a[(step, step)];
        for r in step + 1..n {
            let factor = a[(r, step)] / pivot;
            if factor == C64::new(0.0, 0.0) {
                continue;
            }
            for cidx in step..n {
                let sub = factor * a[(step, cidx)];
                a[(r, cidx)] -= sub;
            }
        }
    }

    // Upper triangular with the last pivot treated as zero: fix the last
    // permuted unknown to one and back-substitute.
    let mut y = DVector::<C64>::zeros(n);
    y[n - 1] = cr(1.0);
    for r in (0..n - 1).rev() {
        let mut acc = C64::new(0.0, 0.0);
        for cidx in r + 1..n {
            acc += a[(r, cidx)] * y[cidx];
        }
        y[r] = -acc / a[(r, r)];
    }

    let mut x = DVector::<C64>::zeros(n);
    for (k, &orig) in col_perm.iter().enumerate() {
        x[orig] = y[k];
    }
    let norm = x.norm();
    Some(x / cr(norm))
}

/// Determinant of a 3x3 complex matrix given row-major.
pub fn det3(m: [[C64; 3]; 3]) -> C64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Cofactor `C_ij = (-1)^(i+j) det(minor_ij)` of a 4x4 matrix.
pub fn cofactor4(m: &Mat4, row: usize, col: usize) -> C64 {
    let mut minor = [[C64::new(0.0, 0.0); 3]; 3];
    for (mi, r) in (0..4).filter(|&r| r != row).enumerate() {
        for (mj, cidx) in (0..4).filter(|&cidx| cidx != col).enumerate() {
            minor[mi][mj] = m[(r, cidx)];
        }
    }
    let sign = if (row + col).is_multiple_of(2) { 1.0 } else { -1.0 };
    det3(minor) * sign
}
