use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

const TAYLOR_TERMS: usize = 18;

#[derive(Debug, Clone)]
pub struct ExpResult {
    pub value: DMatrix<Complex64>,
    /// Number of squarings applied after the Taylor step.
    pub squarings: u32,
    /// A-priori bound on the relative truncation error of the Taylor step.
    pub error_bound: f64,
}

fn one_norm(a: &DMatrix<Complex64>) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `exp(A)` by scaling and squaring with a degree-18 Taylor polynomial.
pub fn matrix_exp(a: &DMatrix<Complex64>) -> Result<ExpResult> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch(a.nrows(), a.ncols()));
    }
    let n = a.nrows();
    let norm = one_norm(a);
    if !norm.is_finite() || norm > 1e6 {
        return Err(Error::ExpOverflow(norm));
    }
    if norm == 0.0 {
        return Ok(ExpResult { value: DMatrix::identity(n, n), squarings: 0, error_bound: 0.0 });
    }
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = a * Complex64::new(0.5f64.powi(squarings as i32), 0.0);
    let theta = norm * 0.5f64.powi(squarings as i32);

    // Horner form of sum_{k<=J} X^k / k!
    let ident = DMatrix::<Complex64>::identity(n, n);
    let mut acc = ident.clone();
    for k in (1..=TAYLOR_TERMS).rev() {
        acc = &ident + (&scaled * acc) * Complex64::new(1.0 / k as f64, 0.0);
    }
    for _ in 0..squarings {
        acc = &acc * &acc;
    }
    // remainder of the Taylor series at ||X|| = theta
    let mut term = 1.0;
    for k in 1..=(TAYLOR_TERMS + 1) {
        term *= theta / k as f64;
    }
    let error_bound = term / (1.0 - theta / (TAYLOR_TERMS as f64 + 2.0)) * 2f64.powi(squarings as i32);
    Ok(ExpResult { value: acc, squarings, error_bound })
}
