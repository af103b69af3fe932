//! Truncated Zassenhaus products and a halving harness for their error order.
//!
//! With the factors ordered as
//! `e^{t(A+B)} ≈ e^{-t³/6 (2[[A,B],B] + [[A,B],A])} e^{t²/2 [A,B]} e^{tB} e^{tA}`,
//! the order-`n` truncation has a local error of `O(t^{n+1})`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{cr, expm, norm_inf, C64};

/// Accepted deviation of the fitted slope from `order + 1`.
pub const SLOPE_TOL: f64 = 0.3;
/// All errors below this mean the splitting is exact.
pub const EXACT_ERROR_FLOOR: f64 = 1e-14;

pub fn commutator(a: &DMatrix<C64>, b: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(a * b - b * a)
}

/// Order-`order` Zassenhaus approximation of `e^{t(A+B)}`:
///
/// - 1: `e^{tB} e^{tA}`
/// - 2: `e^{t²/2 [A,B]} e^{tB} e^{tA}`
/// - 3: `e^{-t³/6 (2[[A,B],B] + [[A,B],A])}` times the order-2 product
///
/// Swapping `A` and `B` at order 1 gives the reversed split.
pub fn zassenhaus_product(t: f64, a: &DMatrix<C64>, b: &DMatrix<C64>, order: u32) -> Result<DMatrix<C64>> {
    if !(1..=3).contains(&order) {
        return Err(Error::InvalidArgument(format!(
            "Zassenhaus order must be 1, 2 or 3 (got {order})"
        )));
    }
    let ab = commutator(a, b)?;
    let mut product = expm(&(b * cr(t)))? * expm(&(a * cr(t)))?;
    if order >= 2 {
        product = expm(&(&ab * cr(0.5 * t * t)))? * product;
    }
    if order >= 3 {
        let third = commutator(&ab, b)? * cr(2.0) + commutator(&ab, a)?;
        product = expm(&(third * cr(-t * t * t / 6.0)))? * product;
    }
    Ok(product)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderCheckResult {
    pub order: u32,
    /// `t0, t0/2, t0/4, ...`
    pub t_values: Vec<f64>,
    /// `||approximation - e^{t(A+B)}||_inf` at each `t`.
    pub errors: Vec<f64>,
    /// Least-squares slope of `ln e` against `ln t`.
    pub fitted_slope: f64,
}

impl OrderCheckResult {
    pub fn expected_slope(&self) -> f64 {
        self.order as f64 + 1.0
    }

    pub fn passes(&self) -> bool {
        (self.fitted_slope - self.expected_slope()).abs() <= SLOPE_TOL
    }

    /// `e(t_i) / e(t_{i+1})`
    pub fn ratios(&self) -> Vec<f64> {
        self.errors.windows(2).map(|w| w[0] / w[1]).collect()
    }
}

/// Runs `error_at` on `t0 / 2^i` for `i = 0..=halvings` and fits the slope.
pub fn halving_fit<F>(order: u32, t0: f64, halvings: u32, mut error_at: F) -> Result<OrderCheckResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if halvings < 3 {
        return Err(Error::InvalidArgument(format!(
            "need at least 3 halvings (got {halvings})"
        )));
    }
    if !(t0.is_finite() && t0 > 0.0) {
        return Err(Error::InvalidArgument(format!("t0 must be positive (got {t0})")));
    }
    let t_values: Vec<f64> = (0..=halvings).map(|i| t0 / 2f64.powi(i as i32)).collect();
    let errors = t_values.iter().map(|&t| error_at(t)).collect::<Result<Vec<_>>>()?;

    let max_error = errors.iter().copied().fold(0.0, f64::max);
    if max_error < EXACT_ERROR_FLOOR {
        return Err(Error::DegenerateCase { max_error });
    }
    if errors.iter().any(|e| !e.is_finite()) {
        return Err(Error::InvalidArgument("non-finite splitting error".into()));
    }

    let points: Vec<(f64, f64)> = t_values
        .iter()
        .zip(&errors)
        .filter(|(_, &e)| e > 0.0)
        .map(|(&t, &e)| (t.ln(), e.ln()))
        .collect();
    Ok(OrderCheckResult {
        order,
        t_values,
        errors,
        fitted_slope: least_squares_slope(&points),
    })
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Error order of the order-2 or order-3 product against `e^{t(A+B)}`.
///
/// Requires `||t0 (A+B)||_inf <= 1`.
pub fn order_check(a: &DMatrix<C64>, b: &DMatrix<C64>, order: u32, t0: f64, halvings: u32) -> Result<OrderCheckResult> {
    if order != 2 && order != 3 {
        return Err(Error::InvalidArgument(format!(
            "order check supports orders 2 and 3 (got {order})"
        )));
    }
    let sum = commutator(a, b).map(|_| a + b)?;
    let scaled = norm_inf(&sum) * t0;
    if scaled > 1.0 + 1e-12 {
        return Err(Error::InvalidArgument(format!("||t0 (A+B)||_inf = {scaled} exceeds 1")));
    }
    halving_fit(order, t0, halvings, |t| {
        let exact = expm(&(&sum * cr(t)))?;
        let approx = zassenhaus_product(t, a, b, order)?;
        Ok(norm_inf(&(approx - exact)))
    })
}

/// `||e^{tA} e^{tB} - e^{tA + tB + t²/2 [A,B]}||_inf`, expected to scale as `t³`.
pub fn bch_check(a: &DMatrix<C64>, b: &DMatrix<C64>, t0: f64, halvings: u32) -> Result<OrderCheckResult> {
    let ab = commutator(a, b)?;
    halving_fit(2, t0, halvings, |t| {
        let lhs = expm(&(a * cr(t)))? * expm(&(b * cr(t)))?;
        let exponent = (a + b) * cr(t) + &ab * cr(0.5 * t * t);
        Ok(norm_inf(&(lhs - expm(&exponent)?)))
    })
}

/// `t0 = 0.1 / ||A + B||_inf`.
pub fn default_t0(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    0.1 / norm_inf(&(a + b))
}
