use num_complex::Complex64;

use super::CMatrix;

/// Condition estimates above this are treated as singular.
pub const SINGULAR_CONDITION: f64 = 1e12;

/// Max column sum.
fn norm1(a: &CMatrix) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// 1-norm condition number of `a` given its inverse.
pub fn condition_1norm(a: &CMatrix, inverse: &CMatrix) -> f64 {
    norm1(a) * norm1(inverse)
}

/// Pivoted-LU inverse. On failure returns the condition estimate
/// (infinite for an exactly singular pivot).
pub fn invert(a: &CMatrix) -> std::result::Result<CMatrix, f64> {
    let inv = a.clone().lu().try_inverse().ok_or(f64::INFINITY)?;
    let cond = condition_1norm(a, &inv);
    if !cond.is_finite() || cond > SINGULAR_CONDITION || inv.iter().any(|z: &Complex64| !z.is_finite()) {
        return Err(cond);
    }
    Ok(inv)
}
