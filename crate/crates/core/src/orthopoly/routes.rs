use std::sync::Arc;

use crate::error::{Error, Result};
use crate::moments::{Family, MomentTable, WeightSpec};
use crate::polynomial::Polynomial;
use crate::real::{PrecisionContext, Real};
use crate::specfun::{gamma, tricomi_psi1};

use super::linalg::{cholesky, determinant, lower_inverse, required_for, Matrix};
use super::{working_digits, OrthoBasis, Route};

/// D_k and the column-replaced determinants D_{k,0..k} of the Cramer system at
/// degree k, with the conventions D_{k,0} = −D_k (Plus) and D_{k,k} = −D_k (Minus).
#[derive(Clone, Debug)]
pub struct Determinants {
    pub d: Real,
    pub dk: Vec<Real>,
}

fn system(table: &MomentTable, k: usize) -> (Matrix, Vec<Real>, usize) {
    // Returns the k×k matrix, the replacement column and the index of the
    // unknown that carries the normalization.
    match table.spec.family() {
        Family::Plus => {
            let d = &table.aux;
            let m = (0..k)
                .map(|row| (1..=k).map(|c| d[c][row].clone()).collect())
                .collect();
            let rhs = (0..k).map(|row| d[0][row].clone()).collect();
            (m, rhs, 0)
        }
        Family::Minus => {
            let f = |s: usize| {
                let i = s.min(table.n);
                table.aux[i][s - i].clone()
            };
            let m = (0..k).map(|i| (0..k).map(|j| f(i + j)).collect()).collect();
            let rhs = (0..k).map(|i| f(k + i)).collect();
            (m, rhs, k)
        }
    }
}

/// Determinants of the degree-k Cramer system over the table's aux entries.
pub fn determinants(table: &MomentTable, k: usize, work: &PrecisionContext) -> Determinants {
    let bits = work.bits();
    let (m, rhs, fixed) = system(table, k);
    let d = determinant(&m, bits);
    let mut dk = Vec::with_capacity(k + 1);
    for j in 0..=k {
        if j == fixed {
            dk.push(-d.clone());
            continue;
        }
        // column index inside the k×k matrix
        let col = if fixed == 0 { j - 1 } else { j };
        let mut mj = m.clone();
        for (row, v) in rhs.iter().enumerate() {
            mj[row][col] = v.clone();
        }
        dk.push(determinant(&mj, bits));
    }
    Determinants { d, dk }
}

/// Rejects a Cramer determinant that is negligible against its Hadamard bound.
fn check_determinant(m: &Matrix, d: &Real, work: &PrecisionContext, digits: u32) -> Result<()> {
    if m.is_empty() {
        return Ok(());
    }
    let bound = m
        .iter()
        .map(|row| {
            row.iter()
                .map(Real::square)
                .fold(work.zero(), |a, b| a + b)
                .sqrt()
        })
        .fold(work.one(), |a, b| a * b);
    let ratio = d.abs() / bound;
    let floor = work.pow10(-(work.digits() as i32) / 2);
    if ratio < floor {
        let lost = -ratio.log10_abs().unwrap_or(f64::from(work.digits()));
        return Err(Error::Conditioning {
            message: format!(
                "Cramer determinant ratio {} below {}",
                ratio.to_sig_string(6),
                floor.to_sig_string(3)
            ),
            digits,
            required_digits: required_for(lost, digits),
        });
    }
    Ok(())
}

fn work_context(ctx: &PrecisionContext, n: usize) -> PrecisionContext {
    ctx.with_digits(working_digits(ctx.digits(), n))
}

/// Gram route: Cholesky of the Hankel moment matrix, p = L^{-1} applied to monomials.
pub fn build_moment_route(
    spec: &WeightSpec,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<OrthoBasis> {
    let work = work_context(ctx, n);
    let table = MomentTable::get(spec, n, &work)?;
    let h: Matrix = (0..=n)
        .map(|i| (0..=n).map(|j| table.mu[i + j].clone()).collect())
        .collect();
    let floor = work.pow10(-(work.digits() as i32) / 2);
    let l = cholesky(&h, &floor, ctx.digits())
        .map_err(|e| bump_required(e, ctx.digits(), work.digits()))?;
    let c = lower_inverse(&l);
    let polys = (0..=n)
        .map(|k| Polynomial::new(c[k][..=k].to_vec()))
        .collect();
    Ok(OrthoBasis::assemble(
        spec,
        polys,
        Route::MomentGram,
        table,
        ctx.digits(),
        work,
    ))
}

/// Reports the requirement in terms of the user-facing digit count.
fn bump_required(e: Error, digits: u32, work_digits: u32) -> Error {
    match e {
        Error::Conditioning {
            message,
            required_digits,
            ..
        } => Error::Conditioning {
            message,
            digits,
            required_digits: required_digits
                .saturating_sub(work_digits - digits)
                .max(digits + 1),
        },
        other => other,
    }
}

/// Explicit Cramer construction for the selected family.
pub fn build_paper_route(
    spec: &WeightSpec,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<OrthoBasis> {
    match spec.family() {
        Family::Plus => build_p_paper(spec.nu(), n, ctx),
        Family::Minus => build_q_paper(spec.nu(), n, ctx),
    }
}

/// P_n: a_{k,j} = −a_{k,0} D_{k,j}/D_k with the free term fixed by the norm.
pub fn build_p_paper(nu: &Real, n: usize, ctx: &PrecisionContext) -> Result<OrthoBasis> {
    let spec = WeightSpec::plus(nu.clone())?;
    let work = work_context(ctx, n);
    let table = MomentTable::get(&spec, n, &work)?;
    let nu = work.lift(nu);
    let g1 = gamma(&(&nu + 1i64), &work)?;

    // p_0 = [Γ(ν+1) Ψ(1+ν, 1+ν; 1)]^{-1/2}
    let psi = tricomi_psi1(&(&nu + 1i64), &(&nu + 1i64), &work)?;
    let mut polys = vec![Polynomial::constant((&g1 * psi).sqrt().recip())];

    for k in 1..=n {
        let (m, _, _) = system(&table, k);
        let det = determinants(&table, k, &work);
        check_determinant(&m, &det.d, &work, ctx.digits())?;
        // S = Σ_j D_{k,j} (k+j)! d_{0,k+j}
        let s = (0..=k)
            .map(|j| &det.dk[j] * work.factorial((k + j) as u32) * &table.aux[0][k + j])
            .fold(work.zero(), |a, b| a + b);
        let radicand = &g1 * &det.dk[k] / &s;
        if !radicand.is_positive() {
            return Err(Error::SignConvention(format!(
                "degree {k}: Γ(1+ν)D_(k,k)/S = {} admits no real normalization",
                radicand.to_sig_string(8)
            )));
        }
        let lead = radicand.sqrt();
        let free = -(&lead * &det.d / &det.dk[k]);
        let coeffs = (0..=k)
            .map(|j| {
                if j == 0 {
                    free.clone()
                } else {
                    -(&free * &det.dk[j] / &det.d)
                }
            })
            .collect();
        polys.push(Polynomial::new(coeffs));
    }
    Ok(OrthoBasis::assemble(
        &spec,
        polys,
        Route::PaperCramer,
        table,
        ctx.digits(),
        work,
    ))
}

/// Q_n: a_{k,j} = −a_k D_{k,j}/D_k over the Hankel table, a_k from the norm.
pub fn build_q_paper(nu: &Real, n: usize, ctx: &PrecisionContext) -> Result<OrthoBasis> {
    let spec = WeightSpec::minus(nu.clone())?;
    let work = work_context(ctx, n);
    let table: Arc<MomentTable> = MomentTable::get(&spec, n, &work)?;
    let mut polys = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let (m, _, _) = system(&table, k);
        let det = determinants(&table, k, &work);
        check_determinant(&m, &det.d, &work, ctx.digits())?;
        // a_k = [−(1/D_k) Σ_j D_{k,j} μ_{k+j}]^{-1/2}
        let s = (0..=k)
            .map(|j| &det.dk[j] * &table.mu[k + j])
            .fold(work.zero(), |a, b| a + b);
        let radicand = -(s / &det.d);
        if !radicand.is_positive() {
            return Err(Error::SignConvention(format!(
                "degree {k}: normalization radicand {} is not positive",
                radicand.to_sig_string(8)
            )));
        }
        let lead = radicand.sqrt().recip();
        let coeffs = (0..=k)
            .map(|j| {
                if j == k {
                    lead.clone()
                } else {
                    -(&lead * &det.dk[j] / &det.d)
                }
            })
            .collect();
        polys.push(Polynomial::new(coeffs));
    }
    Ok(OrthoBasis::assemble(
        &spec,
        polys,
        Route::PaperCramer,
        table,
        ctx.digits(),
        work,
    ))
}
