use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::real::{PrecisionContext, Real};
use crate::specfun::{
    hyp3f2_unit, laguerre, laguerre_poly, macdonald_reduction, pochhammer, Macdonald,
};

use super::routes::determinants;
use super::OrthoBasis;
use crate::moments::Family;

/// q(x) = Σ_k f_k (−1)^k k! x^k L_k^ν(x), so that f(x)ρ_ν(x) = Σ_j q_j ρ_{ν+j}(x).
pub fn associated_q(nu: &Real, f: &Polynomial, ctx: &PrecisionContext) -> Polynomial {
    let mut q = Polynomial::zero(ctx.bits());
    for (k, fk) in f.coeffs().iter().enumerate() {
        if fk.is_zero() {
            continue;
        }
        let mut scale = ctx.lift(fk) * ctx.factorial(k as u32);
        if k % 2 == 1 {
            scale = -scale;
        }
        let term = laguerre_poly(k as u32, nu, ctx).shift(k).scale(&scale);
        q = &q + &term;
    }
    q
}

/// Coefficients f_{2n,k}, k = 0..2n, of q_{2n} = Σ_k f_{2n,k} L_k^ν for p_n of
/// `basis`, from the Cramer determinants:
/// f_{2n,k} = −(c/D_n) Σ_r D_{n,r} r! (1+ν)_r ₃F₂(−k, 1+ν+r, 1+r; 1+ν, 1; 1),
/// with c the free term (Plus) or the leading term (Minus).
pub fn laguerre_expansion(basis: &OrthoBasis, n: usize) -> Result<Vec<Real>> {
    if n > basis.degree() {
        return Err(Error::Invalid(format!(
            "degree {n} exceeds basis degree {}",
            basis.degree()
        )));
    }
    let work = &basis.work;
    let nu = work.lift(basis.spec.nu());
    let det = determinants(&basis.table, n, work);
    let c = match basis.spec.family() {
        Family::Plus => basis.polys[n].coeff(0),
        Family::Minus => basis.leading(n).clone(),
    };
    let scale = -(c / &det.d);
    let one = work.one();
    (0..=2 * n as u32)
        .map(|k| {
            let mut acc = work.zero();
            for (r, dr) in det.dk.iter().enumerate() {
                let r_i = r as i64;
                let f = hyp3f2_unit(
                    k,
                    &(&nu + (1 + r_i)),
                    &work.int(1 + r_i),
                    &(&nu + 1i64),
                    &one,
                    work,
                )?;
                acc +=
                    dr * work.factorial(r as u32) * pochhammer(&(&nu + 1i64), r as u32, work) * f;
            }
            Ok(&scale * acc)
        })
        .collect()
}

/// Both evaluations of Σ_{n≤N} p_n(x) zⁿ/n!.
#[derive(Clone, Debug)]
pub struct GeneratingSum {
    /// zⁿ/n! p_n(x) from the polynomial coefficients.
    pub direct_terms: Vec<Real>,
    /// The same terms through the Laguerre coefficients and the reduction
    /// x^j ρ_{ν−j} = P_j ρ_ν + Q_j ρ_{ν+1}, with weights C(k,j)(−1)^j/j!.
    pub reduction_terms: Vec<Real>,
    /// As above with the weights (−1)^j/(j!(k−j)!).
    pub printed_terms: Vec<Real>,
}

impl GeneratingSum {
    pub fn direct(&self) -> Real {
        self.direct_terms.iter().cloned().sum()
    }

    pub fn reduction(&self) -> Real {
        self.reduction_terms.iter().cloned().sum()
    }

    pub fn printed(&self) -> Real {
        self.printed_terms.iter().cloned().sum()
    }
}

/// Partial sum of the exponential generating function up to degree `terms`.
pub fn generating_partial_sum(
    basis: &OrthoBasis,
    x: &Real,
    z: &Real,
    terms: usize,
) -> Result<GeneratingSum> {
    if terms > basis.degree() {
        return Err(Error::Invalid(format!(
            "{terms} terms requested from a basis of degree {}",
            basis.degree()
        )));
    }
    if !x.is_positive() {
        return Err(Error::Domain("generating function needs x > 0".into()));
    }
    let work = &basis.work;
    let nu = work.lift(basis.spec.nu());
    let x = work.lift(x);
    let z = work.lift(z);
    let ratio =
        Macdonald::new(&(&nu + 1i64), work)?.rho(&x)? / Macdonald::new(&nu, work)?.rho(&x)?;

    // x^j ρ_{ν−j}/ρ_ν for j ≤ 2N
    let reduced: Vec<Real> = (0..=2 * terms as u32)
        .map(|j| {
            let (p, q) = macdonald_reduction(j, &nu, work);
            p.eval(&x) + q.eval(&x) * &ratio
        })
        .collect();

    let mut out = GeneratingSum {
        direct_terms: Vec::new(),
        reduction_terms: Vec::new(),
        printed_terms: Vec::new(),
    };
    let mut zpow = work.one();
    for n in 0..=terms {
        let w = &zpow / work.factorial(n as u32);
        out.direct_terms.push(&w * basis.polys[n].eval(&x));
        let f = laguerre_expansion(basis, n)?;
        let mut good = work.zero();
        let mut printed = work.zero();
        for (k, fk) in f.iter().enumerate() {
            let mut binom = work.one();
            for (j, red) in reduced.iter().enumerate().take(k + 1) {
                let jf = work.factorial(j as u32);
                let sign = if j % 2 == 0 { 1i64 } else { -1i64 };
                good += fk * &binom * red * sign / &jf;
                printed += fk * red * sign / (jf * work.factorial((k - j) as u32));
                binom = binom * (k - j) as i64 / (j + 1) as i64;
            }
        }
        out.reduction_terms.push(&w * good);
        out.printed_terms.push(&w * printed);
        zpow *= &z;
    }
    Ok(out)
}

/// Σ_k f_k L_k^ν(t).
pub fn laguerre_series(nu: &Real, f: &[Real], t: &Real, ctx: &PrecisionContext) -> Real {
    f.iter()
        .enumerate()
        .map(|(k, fk)| fk * laguerre(k as u32, nu, t, ctx))
        .fold(ctx.zero(), |a, b| a + b)
}
