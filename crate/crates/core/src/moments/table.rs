use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::quadrature::{integrate_many, moment_oracle_batch, Decay, LeftBehavior, Shape};
use crate::real::{PrecisionContext, Real};
use crate::specfun::{digamma, gamma, hyp0f2, pochhammer, SeriesSum};

use super::closed_form::{minus_branch, moment_minus, moment_plus, MinusBranch};
use super::weight::{Family, WeightSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    Oracle,
}

/// Raw moments μ_0..μ_{2n} and the auxiliary table of one weight.
///
/// For Plus, `aux[k][m] = d_{k,m}` with k ≤ n, m ≤ 2n. For Minus,
/// `aux[k][m] = f_{k,m}` with k, m ≤ n; the entries depend on k+m only.
#[derive(Clone, Debug)]
pub struct MomentTable {
    pub spec: WeightSpec,
    pub mu: Vec<Real>,
    pub aux: Vec<Vec<Real>>,
    pub n: usize,
    pub digits: u32,
    pub provenance: Provenance,
}

/// d_{k,m} = Γ(1+ν) Σ_r (−1)^{k+r} C(k,r) (1+ν)_k/(1+ν)_r Γ(1+ν+k+r+m) Ψ(1+m, 1−ν−k−r; 1)
/// for k ≤ n, m ≤ 2n.
pub fn d_table(nu: &Real, n: usize, ctx: &PrecisionContext) -> Result<Vec<Vec<Real>>> {
    if nu <= &-1i64 {
        return Err(Error::Domain(format!(
            "d table needs ν > -1, got {}",
            nu.to_sig_string(10)
        )));
    }
    let work = ctx.with_extra_digits(6);
    let nu = work.lift(nu);
    // psi[m][j] = Ψ(1+m, 1−ν−j; 1) for j ≤ 2n
    let mut psi = Vec::with_capacity(2 * n + 1);
    for m in 0..=2 * n {
        psi.push(tricomi_row(&nu, m, 2 * n, &work)?);
    }
    let g1 = gamma(&(&nu + 1i64), &work)?;
    let mut table = vec![vec![work.zero(); 2 * n + 1]; n + 1];
    for k in 0..=n {
        let poch_k = pochhammer(&(&nu + 1i64), k as u32, &work);
        for m in 0..=2 * n {
            let mut acc = work.zero();
            let mut binom = work.one();
            for r in 0..=k {
                let t = &binom * &poch_k / pochhammer(&(&nu + 1i64), r as u32, &work)
                    * gamma(&(&nu + (1 + k + r + m) as i64), &work)?
                    * &psi[m][k + r];
                if (k + r) % 2 == 0 {
                    acc += t;
                } else {
                    acc -= t;
                }
                binom = binom * (k - r) as i64 / (r + 1) as i64;
            }
            table[k][m] = ctx.lift(&(&g1 * acc));
        }
    }
    Ok(table)
}

/// Ψ(1+m, 1−ν−j; 1) for j = 0..=j_max in one quadrature pass:
/// (1/m!) ∫ e^{−t} t^m (1+t)^{−ν−j−m−1} dt.
fn tricomi_row(nu: &Real, m: usize, j_max: usize, ctx: &PrecisionContext) -> Result<Vec<Real>> {
    let shape = Shape::new(
        LeftBehavior::Power(ctx.int(m as i64)),
        Decay::Exp,
        ctx.one(),
    );
    let base_exp = -(nu + (m as i64 + 1));
    let res = integrate_many(
        &shape,
        j_max + 1,
        |t| {
            let onep = t + 1i64;
            let mut v = (-t).exp() * t.powi(m as i64) * onep.pow(&base_exp);
            let inv = onep.recip();
            let mut out = Vec::with_capacity(j_max + 1);
            for _ in 0..=j_max {
                out.push(v.clone());
                v *= &inv;
            }
            out
        },
        ctx,
    )?;
    let mf = ctx.factorial(m as u32);
    Ok(res.into_iter().map(|r| r.value / &mf).collect())
}

/// f_{k,m} as a function of s = k+m, for s ≤ s_max.
///
/// Non-integer ν uses the gamma/digamma/₀F₂ representation; integer ν uses the
/// logarithmic limit, which coincides with the moment μ_s; near-integer ν is
/// integrated directly.
pub fn f_table(nu: &Real, s_max: usize, ctx: &PrecisionContext) -> Result<Vec<Real>> {
    if !nu.is_positive() {
        return Err(Error::Domain(format!(
            "f table needs ν > 0, got {}",
            nu.to_sig_string(10)
        )));
    }
    match minus_branch(nu) {
        MinusBranch::NonInteger => (0..=s_max)
            .map(|s| f_entry_noninteger(nu, s as u32, ctx))
            .collect(),
        MinusBranch::Integer => (0..=s_max)
            .map(|s| moment_minus(nu, s as u32, ctx))
            .collect(),
        MinusBranch::Oracle => {
            moment_oracle_batch(&WeightSpec::minus(nu.clone())?, 0, s_max as u32, ctx)
        }
    }
}

/// f_{k,m}, s = k+m, for ν ∉ ℕ:
/// (−1)^{s+1} Σ_{r<s} (−1)^r Γ(ν+r+1) r!/(s−r−1)!
/// + (−1)^s Γ(ν)/s! Σ_r (−1)^r [ψ(1−ν+r)+ψ(1+r)+ψ(1+s+r)−ψ(1−ν)+ψ(ν)] / (r!(1−ν)_r(1+s)_r)
/// + Γ(−ν)Γ(−ν−s) ₀F₂(;1+ν+s, 1+ν; −1).
pub fn f_entry_noninteger(nu: &Real, s: u32, ctx: &PrecisionContext) -> Result<Real> {
    let lost = -nu.dist_to_integer().log10_abs().unwrap_or(0.0);
    let work = ctx.with_extra_digits(lost.max(0.0).ceil() as u32 + 10);
    let bits = work.bits();
    let nu = work.lift(nu);
    let s_i = i64::from(s);

    let mut finite = work.zero();
    for r in 0..s {
        let t = gamma(&(&nu + (i64::from(r) + 1)), &work)? * work.factorial(r)
            / work.factorial(s - r - 1);
        if r % 2 == 0 {
            finite += t;
        } else {
            finite -= t;
        }
    }
    if s.is_multiple_of(2) {
        finite = -finite;
    }

    let shift = digamma(&nu, &work)? - digamma(&(1i64 - &nu), &work)?;
    let mut psi_a = digamma(&(1i64 - &nu), &work)?;
    let mut psi_b = digamma(&work.one(), &work)?;
    let mut psi_c = digamma(&work.int(1 + s_i), &work)?;
    let mut base = work.one();
    let mut sum = SeriesSum::new(&work, bits);
    let mut r = 0i64;
    while !sum.add(&base * (&psi_a + &psi_b + &psi_c + &shift))? {
        psi_a += (-&nu + (r + 1)).recip();
        psi_b += Real::from_i64(r + 1, bits).recip();
        psi_c += Real::from_i64(r + 1 + s_i, bits).recip();
        base = -(base / ((r + 1) * (-&nu + (r + 1)) * (r + 1 + s_i)));
        r += 1;
    }
    let mut series = gamma(&nu, &work)? / work.factorial(s) * sum.value();
    if s % 2 == 1 {
        series = -series;
    }

    let tail = gamma(&-&nu, &work)?
        * gamma(&(-&nu - s_i), &work)?
        * hyp0f2(&(&nu + (1 + s_i)), &(&nu + 1i64), &work.int(-1), &work)?;
    Ok(ctx.lift(&(finite + series + tail)))
}

/// The integer-order entry exactly as printed alongside the non-integer form:
/// (−1)^s [ Σ_{r<l} (l−r−1)!/(r!(s+r)!) (ψ(l−r)+ψ(1+r)+ψ(1+s+r))
///   − Σ_{r<s} (−1)^r (l+r)! r!/(s−r−1)!
///   + Σ_r (−1)^r ψ(1+l+r)ψ(1+s+r+l) / (r!(l+s+r)!(l+r)!) ].
///
/// Kept for comparison only: it disagrees with the defining integral, and
/// [`f_table`] does not use it.
pub fn f_entry_printed_integer(l: u32, s: u32, ctx: &PrecisionContext) -> Result<Real> {
    let work = ctx.with_extra_digits(10);
    let bits = work.bits();
    let (l_i, s_i) = (i64::from(l), i64::from(s));
    let fact = |n: i64| work.factorial(n as u32);
    let psi = |n: i64| digamma(&work.int(n), &work);

    let mut a = work.zero();
    for r in 0..l_i {
        a += fact(l_i - r - 1) / (fact(r) * fact(s_i + r))
            * (psi(l_i - r)? + psi(1 + r)? + psi(1 + s_i + r)?);
    }
    let mut b = work.zero();
    for r in 0..s_i {
        let t = fact(l_i + r) * fact(r) / fact(s_i - r - 1);
        if r % 2 == 0 {
            b += t;
        } else {
            b -= t;
        }
    }
    let mut p1 = psi(1 + l_i)?;
    let mut p2 = psi(1 + s_i + l_i)?;
    let mut base = (fact(l_i + s_i) * fact(l_i)).recip();
    let mut sum = SeriesSum::new(&work, bits);
    let mut r = 0i64;
    while !sum.add(&base * &p1 * &p2)? {
        p1 += Real::from_i64(1 + l_i + r, bits).recip();
        p2 += Real::from_i64(1 + s_i + l_i + r, bits).recip();
        base = -(base / ((r + 1) * (l_i + s_i + r + 1) * (l_i + r + 1)));
        r += 1;
    }
    let v = a - b + sum.value();
    Ok(ctx.lift(&if s.is_multiple_of(2) { v } else { -v }))
}

/// Defining integral of f_{k,m}:
/// (−1)^k k! ∫ t^{ν+k−1} e^{−t} L_k^ν(t) ρ_{−m}(1/t) dt.
pub fn f_entry_integral(nu: &Real, k: u32, m: u32, ctx: &PrecisionContext) -> Result<Real> {
    use crate::specfun::{laguerre, Macdonald};
    let work = ctx.with_extra_digits(8);
    let nu = work.lift(nu);
    let kernel = Macdonald::new(&work.int(-i64::from(m)), &work)?;
    let shape = Shape::new(
        LeftBehavior::Power(&nu + (i64::from(k) - 1)),
        Decay::Exp,
        work.one(),
    );
    let mut failure = None;
    let power = &nu + (i64::from(k) - 1);
    let res = integrate_many(
        &shape,
        1,
        |t| {
            let r = kernel.rho(&t.recip()).unwrap_or_else(|e| {
                failure.get_or_insert(e);
                work.zero()
            });
            vec![t.pow(&power) * (-t).exp() * laguerre(k, &nu, t, &work) * r]
        },
        &work,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let mut v = res[0].value.clone() * work.factorial(k);
    if k % 2 == 1 {
        v = -v;
    }
    Ok(ctx.lift(&v))
}

type Key = (Family, String, usize, u32);

fn cache() -> &'static RwLock<HashMap<Key, Arc<MomentTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, Arc<MomentTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

impl MomentTable {
    /// Builds (or fetches from the process-wide cache) the table for degree n.
    pub fn get(spec: &WeightSpec, n: usize, ctx: &PrecisionContext) -> Result<Arc<MomentTable>> {
        let key = (
            spec.family(),
            spec.nu().to_sig_string(ctx.digits() + 10),
            n,
            ctx.digits(),
        );
        if let Some(t) = cache().read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(t));
        }
        let table = Arc::new(Self::build(spec, n, ctx)?);
        let mut guard = cache().write().expect("cache lock");
        Ok(Arc::clone(guard.entry(key).or_insert(table)))
    }

    fn build(spec: &WeightSpec, n: usize, ctx: &PrecisionContext) -> Result<Self> {
        let nu = spec.nu();
        let (mu, aux, provenance) = match spec.family() {
            Family::Plus => {
                let mu = (0..=2 * n)
                    .map(|k| moment_plus(nu, &ctx.int(k as i64), ctx))
                    .collect::<Result<Vec<_>>>()?;
                (mu, d_table(nu, n, ctx)?, Provenance::ClosedForm)
            }
            Family::Minus => {
                let f = f_table(nu, 2 * n, ctx)?;
                let provenance = if minus_branch(nu) == MinusBranch::Oracle {
                    Provenance::Oracle
                } else {
                    Provenance::ClosedForm
                };
                let mu = match minus_branch(nu) {
                    MinusBranch::NonInteger => (0..=2 * n)
                        .map(|k| moment_minus(nu, k as u32, ctx))
                        .collect::<Result<Vec<_>>>()?,
                    _ => f.clone(),
                };
                let aux = (0..=n)
                    .map(|k| (0..=n).map(|m| f[k + m].clone()).collect())
                    .collect();
                (mu, aux, provenance)
            }
        };
        if !mu[0].is_positive() {
            return Err(Error::Convergence("zeroth moment is not positive".into()));
        }
        Ok(Self {
            spec: spec.clone(),
            mu,
            aux,
            n,
            digits: ctx.digits(),
            provenance,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_row_zero_matches_special_case() {
        let c = PrecisionContext::new(30).unwrap();
        let nu = c.real(0.5);
        let d = d_table(&nu, 2, &c).unwrap();
        for m in 0..=4i64 {
            let special = gamma(&(&nu + 1i64), &c).unwrap()
                * gamma(&(&nu + (1 + m)), &c).unwrap()
                * crate::specfun::tricomi_psi1(&c.int(1 + m), &(1i64 - &nu), &c).unwrap();
            assert!(d[0][m as usize].rel_diff(&special) < c.pow10(-27));
        }
    }

    #[test]
    fn f_forms_agree_with_integral() {
        let c = PrecisionContext::new(25).unwrap();
        let nu = c.real(0.5);
        let f = f_table(&nu, 2, &c).unwrap();
        let a = f_entry_integral(&nu, 1, 1, &c).unwrap();
        let b = f_entry_integral(&nu, 2, 0, &c).unwrap();
        assert!(f[2].rel_diff(&a) < c.pow10(-22), "{} {}", f[2], a);
        assert!(f[2].rel_diff(&b) < c.pow10(-22));
    }

    #[test]
    fn cache_returns_shared_table() {
        let c = PrecisionContext::new(20).unwrap();
        let spec = WeightSpec::minus(c.real(1.5)).unwrap();
        let a = MomentTable::get(&spec, 1, &c).unwrap();
        let b = MomentTable::get(&spec, 1, &c).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(a.aux[0][1], a.aux[1][0]);
        assert_eq!(a.mu.len(), 3);
    }
}
