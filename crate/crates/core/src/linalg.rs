//! Small dense 3×3 helpers.

use crate::error::{Error, Result};

/// Row-major 3×3 matrix.
pub type Matrix3 = [[f64; 3]; 3];

/// Relative pivot threshold below which [`solve3`] reports a singular system.
pub const SINGULAR_RTOL: f64 = 1e-12;

/// Solves `a · x = b` by Gaussian elimination with partial pivoting.
///
/// The system is declared singular when a pivot magnitude falls below
/// `SINGULAR_RTOL` times the largest entry of `a`.
pub fn solve3(a: &Matrix3, b: &[f64; 3]) -> Result<[f64; 3]> {
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let threshold = SINGULAR_RTOL * scale;
    let mut m = *a;
    let mut rhs = *b;

    for col in 0..3 {
        let pivot_row = (col..3)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .expect("non-empty range");
        let pivot = m[pivot_row][col];
        if !(pivot.abs() > threshold) {
            return Err(Error::Singular {
                pivot: pivot.abs(),
                threshold,
            });
        }
        m.swap(col, pivot_row);
        rhs.swap(col, pivot_row);

        for row in col + 1..3 {
            let factor = m[row][col] / m[col][col];
            if factor == 0.0 {
                continue;
            }
            m[row][col] = 0.0;
            for k in col + 1..3 {
                m[row][k] -= factor * m[col][k];
            }
            rhs[row] -= factor * rhs[col];
        }
    }

    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let tail: f64 = (row + 1..3).map(|k| m[row][k] * x[k]).sum();
        x[row] = (rhs[row] - tail) / m[row][row];
    }
    Ok(x)
}

pub fn trace(a: &Matrix3) -> f64 {
    a[0][0] + a[1][1] + a[2][2]
}

pub fn det(a: &Matrix3) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Sum of the three principal 2×2 minors.
pub fn principal_minor_sum(a: &Matrix3) -> f64 {
    (a[0][0] * a[1][1] - a[0][1] * a[1][0])
        + (a[0][0] * a[2][2] - a[0][2] * a[2][0])
        + (a[1][1] * a[2][2] - a[1][2] * a[2][1])
}

pub fn mul_vec(a: &Matrix3, x: &[f64; 3]) -> [f64; 3] {
    [
        a[0][0] * x[0] + a[0][1] * x[1] + a[0][2] * x[2],
        a[1][0] * x[0] + a[1][1] * x[1] + a[1][2] * x[2],
        a[2][0] * x[0] + a[2][1] * x[1] + a[2][2] * x[2],
    ]
}
