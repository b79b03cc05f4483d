use crate::error::Result;

use super::matrix::ComplexMatrix;

const TAYLOR_TERMS: usize = 18;

/// Matrix exponential by scaling and squaring around an 18-term Taylor core.
pub fn matrix_exp(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = m.ensure_square()?;
    let norm = m.norm_one();
    // Scale so the Taylor argument has 1-norm at most 1/2.
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = m.scale_real(0.5_f64.powi(squarings as i32));

    let mut result = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=TAYLOR_TERMS {
        term = (&term * &scaled).scale_real(1.0 / k as f64);
        result = &result + &term;
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}
