use crate::exactla::{LinalgError, Matrix};
use crate::scalar::IntScalar;

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Every intermediate quotient is exact, so no rational arithmetic is needed.
pub fn det<T: IntScalar>(a: &Matrix<T>) -> Result<T, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(T::one());
    }
    let mut m = a.clone();
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign_flip = !sign_flip;
                }
                None => return Ok(T::zero()),
            }
        }
        let pivot = m[(k, k)].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = pivot.clone() * m[(i, j)].clone() - m[(i, k)].clone() * m[(k, j)].clone();
                m[(i, j)] = num / prev.clone();
            }
            m[(i, k)] = T::zero();
        }
        prev = pivot;
    }
    let d = m[(n - 1, n - 1)].clone();
    Ok(if sign_flip { -d } else { d })
}
