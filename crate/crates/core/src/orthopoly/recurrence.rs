use nalgebra::DMatrix;

use crate::moments::Family;
use crate::polynomial::Polynomial;
use crate::real::Real;

use super::routes::determinants;
use super::OrthoBasis;

/// Recurrence coefficients in coefficient form and in determinant form.
#[derive(Clone, Debug)]
pub struct Recurrence {
    /// A_{k+1} = a_k / a_{k+1}, k = 0..n−1.
    pub a: Vec<Real>,
    /// B_k = b_k/a_k − b_{k+1}/a_{k+1}, k = 0..n−1.
    pub b: Vec<Real>,
    /// A_{k+1} from the Cramer determinants.
    pub a_det: Vec<Real>,
    /// B_k from the Cramer determinants.
    pub b_det: Vec<Real>,
}

pub(crate) fn coefficient_form(polys: &[Polynomial]) -> (Vec<Real>, Vec<Real>) {
    let ratio = |k: usize| -> Real {
        if k == 0 {
            Real::zero(polys[0].leading().bits())
        } else {
            polys[k].coeff(k - 1) / polys[k].leading()
        }
    };
    let n = polys.len() - 1;
    let a = (0..n)
        .map(|k| polys[k].leading() / polys[k + 1].leading())
        .collect();
    let b = (0..n).map(|k| ratio(k) - ratio(k + 1)).collect();
    (a, b)
}

/// Both forms of the recurrence coefficients of `basis`.
pub fn recurrence_coeffs(basis: &OrthoBasis) -> Recurrence {
    let n = basis.degree();
    let work = &basis.work;
    let dets: Vec<_> = (0..=n)
        .map(|k| determinants(&basis.table, k, work))
        .collect();
    let mut a_det = Vec::with_capacity(n);
    let mut b_det = Vec::with_capacity(n);
    for k in 0..n {
        match basis.spec.family() {
            Family::Plus => {
                let first = if k == 0 {
                    work.zero()
                } else {
                    &dets[k].dk[k - 1] / &dets[k].dk[k]
                };
                b_det.push(first - &dets[k + 1].dk[k] / &dets[k + 1].dk[k + 1]);
                let free_k = basis.polys[k].coeff(0);
                let free_k1 = basis.polys[k + 1].coeff(0);
                a_det.push(
                    free_k * &dets[k + 1].d * &dets[k].dk[k]
                        / (free_k1 * &dets[k].d * &dets[k + 1].dk[k + 1]),
                );
            }
            Family::Minus => {
                let second = if k == 0 {
                    work.zero()
                } else {
                    &dets[k].dk[k - 1] / &dets[k].d
                };
                b_det.push(&dets[k + 1].dk[k] / &dets[k + 1].d - second);
                a_det.push(basis.leading(k) / basis.leading(k + 1));
            }
        }
    }
    Recurrence {
        a: basis.a.clone(),
        b: basis.b.clone(),
        a_det,
        b_det,
    }
}

/// p_k(x) by Horner's rule, at working precision.
pub fn eval(basis: &OrthoBasis, k: usize, x: &Real) -> Real {
    basis.polys[k].eval(&basis.work.lift(x))
}

/// p_k(x) from the three-term recurrence.
pub fn eval_recurrence(basis: &OrthoBasis, k: usize, x: &Real) -> Real {
    let x = basis.work.lift(x);
    let mut prev = basis.work.zero();
    let mut cur = basis.polys[0].coeff(0);
    for j in 0..k {
        let back = if j == 0 {
            basis.work.zero()
        } else {
            &basis.a[j - 1] * &prev
        };
        let next = ((&x - &basis.b[j]) * &cur - back) / &basis.a[j];
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Zeros of p_k as eigenvalues of the k×k Jacobi matrix, ascending, in double precision.
pub fn jacobi_zeros(basis: &OrthoBasis, k: usize) -> Vec<f64> {
    if k == 0 {
        return Vec::new();
    }
    let j = DMatrix::from_fn(k, k, |r, c| {
        if r == c {
            basis.b[r].to_f64()
        } else if r + 1 == c {
            basis.a[r].to_f64()
        } else if c + 1 == r {
            basis.a[c].to_f64()
        } else {
            0.0
        }
    });
    let mut z: Vec<f64> = j.symmetric_eigen().eigenvalues.iter().copied().collect();
    z.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    z
}

/// True when the zeros of every consecutive pair p_k, p_{k+1} are positive and
/// strictly interlace.
pub fn zeros_interlace(basis: &OrthoBasis) -> bool {
    (1..basis.degree()).all(|k| {
        let lo = jacobi_zeros(basis, k);
        let hi = jacobi_zeros(basis, k + 1);
        hi[0] > 0.0
            && lo
                .iter()
                .enumerate()
                .all(|(i, z)| hi[i] < *z && *z < hi[i + 1])
    })
}
