//! Dense linear algebra over [`Real`] for the small systems of the constructions.

use crate::error::{Error, Result};
use crate::real::Real;

pub type Matrix = Vec<Vec<Real>>;

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
/// The empty matrix has determinant 1.
pub fn determinant(m: &Matrix, bits: u32) -> Real {
    let n = m.len();
    if n == 0 {
        return Real::one(bits);
    }
    let mut a: Matrix = m
        .iter()
        .map(|r| r.iter().map(|v| v.with_bits(bits)).collect())
        .collect();
    let mut sign = 1i64;
    let mut prev = Real::one(bits);
    for k in 0..n - 1 {
        let pivot_row = (k..n)
            .max_by(|&i, &j| {
                a[i][k]
                    .abs()
                    .partial_cmp(&a[j][k].abs())
                    .expect("finite entries")
            })
            .expect("nonempty range");
        if a[pivot_row][k].is_zero() {
            return Real::zero(bits);
        }
        if pivot_row != k {
            a.swap(pivot_row, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Lower-triangular L with H = L Lᵀ. `min_pivot` is the smallest admissible
/// ratio L_kk² / H_kk.
pub fn cholesky(h: &Matrix, min_pivot: &Real, digits: u32) -> Result<Matrix> {
    let n = h.len();
    let bits = h[0][0].bits();
    let mut l = vec![vec![Real::zero(bits); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = h[i][j].clone();
            for (a, b) in l[i].iter().zip(&l[j]).take(j) {
                s -= a * b;
            }
            if i == j {
                let ratio = &s / &h[i][i];
                if !s.is_positive() || &ratio < min_pivot {
                    let lost = -ratio.abs().log10_abs().unwrap_or(f64::from(digits));
                    return Err(Error::Conditioning {
                        message: format!(
                            "Hankel pivot {} at order {i} is below {}",
                            ratio.to_sig_string(6),
                            min_pivot.to_sig_string(3)
                        ),
                        digits,
                        required_digits: required_for(lost, digits),
                    });
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / &l[j][j];
            }
        }
    }
    Ok(l)
}

/// Inverse of a lower-triangular matrix.
pub fn lower_inverse(l: &Matrix) -> Matrix {
    let n = l.len();
    let bits = l[0][0].bits();
    let mut inv = vec![vec![Real::zero(bits); n]; n];
    for i in 0..n {
        inv[i][i] = l[i][i].recip();
        for j in (0..i).rev() {
            let mut s = Real::zero(bits);
            for k in j..i {
                s += &l[i][k] * &inv[k][j];
            }
            inv[i][j] = -(s / &l[i][i]);
        }
    }
    inv
}

/// Digits needed when `lost` digits cancel, with the half-precision margin.
pub fn required_for(lost: f64, digits: u32) -> u32 {
    ((2.0 * lost).ceil() as u32 + 10).max(digits + 10)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&v| Real::from_i64(v, 128)).collect())
            .collect()
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&Vec::new(), 64), Real::one(64));
        assert_eq!(determinant(&m(&[&[3]]), 128), Real::from_i64(3, 128));
        assert_eq!(
            determinant(&m(&[&[0, 1], &[1, 0]]), 128),
            Real::from_i64(-1, 128)
        );
        let a = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(determinant(&a, 128), Real::from_i64(4, 128));
        assert!(determinant(&m(&[&[1, 2], &[2, 4]]), 128).is_zero());
    }

    #[test]
    fn cholesky_and_inverse() {
        let h = m(&[&[4, 2], &[2, 10]]);
        let l = cholesky(&h, &Real::pow10(-10, 128), 30).unwrap();
        assert_eq!(l[0][0], Real::from_i64(2, 128));
        assert_eq!(l[1][1], Real::from_i64(3, 128));
        let inv = lower_inverse(&l);
        assert_eq!(
            &inv[1][0] * &l[0][0] + &inv[1][1] * &l[1][0],
            Real::zero(128)
        );
        let bad = m(&[&[1, 1], &[1, 1]]);
        assert!(matches!(
            cholesky(&bad, &Real::pow10(-10, 128), 30),
            Err(Error::Conditioning { .. })
        ));
    }
}
