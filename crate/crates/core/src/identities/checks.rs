use crate::error::Result;
use crate::moments::{Family, WeightSpec};
use crate::orthopoly::{
    associated_q, eval, generating_partial_sum, laguerre_expansion, recurrence_coeffs, OrthoBasis,
};
use crate::polynomial::Polynomial;
use crate::quadrature::{integrate_many, Decay, LeftBehavior, Shape};
use crate::real::{PrecisionContext, Real};
use crate::specfun::{gamma, hyp3f2_unit, laguerre_poly, pochhammer, Macdonald};

use super::rho_algebra::{beta, theta, RhoCombination};
use super::{default_tolerance, VerificationReport};

fn max_abs(terms: &[&Real]) -> Real {
    terms
        .iter()
        .fold(Real::zero(terms[0].bits()), |m, t| m.max(t.abs()))
}

fn rho_at(nu: &Real, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    Macdonald::new(nu, ctx)?.rho(x)
}

fn point(x: &Real) -> String {
    x.to_sig_string(6)
}

/// ρ_{ν+1}(x) = νρ_ν(x) + xρ_{ν−1}(x).
pub fn verify_rho_recurrence(
    nu: &Real,
    grid: &[Real],
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("rho_recurrence", default_tolerance(ctx))
        .param("nu", nu.to_sig_string(8));
    let up = Macdonald::new(&(nu + 1i64), ctx)?;
    let mid = Macdonald::new(nu, ctx)?;
    let down = Macdonald::new(&(nu - 1i64), ctx)?;
    for x in grid {
        let lhs = up.rho(x)?;
        let a = nu * mid.rho(x)?;
        let b = x * down.rho(x)?;
        let scale = max_abs(&[&lhs, &a, &b]);
        report.record(point(x), &lhs - a - b, scale);
    }
    Ok(report)
}

/// (ω, ω′, ω″) from ρ_ν, ρ_{ν−1}, ρ_{ν−2} using ρ′_μ = −ρ_{μ−1}.
pub fn weight_derivatives(
    spec: &WeightSpec,
    x: &Real,
    ctx: &PrecisionContext,
) -> Result<[Real; 3]> {
    let nu = spec.nu();
    let r0 = rho_at(nu, x, ctx)?;
    let r1 = rho_at(&(nu - 1i64), x, ctx)?;
    let r2 = rho_at(&(nu - 2i64), x, ctx)?;
    Ok(match spec.family() {
        Family::Plus => {
            let e = (-x).exp();
            [&e * &r0, -(&e * (&r0 + &r1)), &e * (&r0 + &r1 * 2i64 + &r2)]
        }
        Family::Minus => {
            let inv = x.recip();
            let g = (-&inv).exp() * &inv;
            let u = inv.square() - &inv;
            let g1 = &g * &u;
            let g2 = &g * (u.square() - inv.powi(3) * 2i64 + inv.square());
            [
                &g * &r0,
                &g1 * &r0 - &g * &r1,
                &g2 * &r0 - &g1 * &r1 * 2i64 + &g * &r2,
            ]
        }
    })
}

/// Second-order ODE of the weight, derivatives assembled from order shifts.
pub fn verify_weight_ode(
    spec: &WeightSpec,
    grid: &[Real],
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    let nu = ctx.lift(spec.nu());
    let mut report = VerificationReport::new("weight_ode", default_tolerance(ctx))
        .param("family", spec.family())
        .param("nu", nu.to_sig_string(8));
    for x in grid {
        let [w, w1, w2] = weight_derivatives(spec, x, ctx)?;
        let terms = match spec.family() {
            Family::Plus => [x * &w2, (x * 2i64 - &nu + 1i64) * &w1, (x - &nu) * &w],
            Family::Minus => {
                let x2 = x.square();
                [
                    x2.square() * &w2,
                    &x2 * ((-&nu + 3i64) * x - 2i64) * &w1,
                    -((x - 1i64) * (&x2 + &nu * x + 1i64) * &w),
                ]
            }
        };
        let scale = max_abs(&[&terms[0], &terms[1], &terms[2]]);
        let [a, b, c] = terms;
        report.record(point(x), a + b + c, scale);
    }
    Ok(report)
}

/// (1/Γ(μ)) ∫_0^∞ u^{μ−1} f(x+u) du for an integrand with a Macdonald tail.
fn fractional_integral<F>(mu: &Real, x: &Real, f: F, ctx: &PrecisionContext) -> Result<Real>
where
    F: Fn(&Real) -> Result<Real>,
{
    let shape = Shape::new(LeftBehavior::Power(mu - 1i64), Decay::ExpSqrt, ctx.one());
    let mut err = None;
    let res = integrate_many(
        &shape,
        1,
        |u| {
            let v = match f(&(x + u)) {
                Ok(v) => v,
                Err(e) => {
                    err.get_or_insert(e);
                    ctx.zero()
                }
            };
            vec![u.pow(&(mu - 1i64)) * v]
        },
        ctx,
    )?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(&res[0].value / gamma(mu, ctx)?)
}

/// ρ_{ν+μ}(x) = (I^μ_− ρ_ν)(x) by quadrature.
pub fn verify_fractional_ladder(
    nu: &Real,
    mu: &Real,
    grid: &[Real],
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("fractional_ladder", default_tolerance(ctx))
        .param("nu", nu.to_sig_string(8))
        .param("mu", mu.to_sig_string(8));
    let base = Macdonald::new(nu, ctx)?;
    let target = Macdonald::new(&(nu + mu), ctx)?;
    for x in grid {
        let lhs = target.rho(x)?;
        let rhs = fractional_integral(mu, x, |t| base.rho(t), ctx)?;
        let scale = lhs.abs().max(rhs.abs());
        report.record(point(x), lhs - rhs, scale);
    }
    Ok(report)
}

/// Digits used by the nested index-law quadrature.
pub const INDEX_LAW_DIGITS: u32 = 20;

/// I^{μ/2} I^{μ/2} ρ_ν = ρ_{ν+μ} at x = 1 by nested quadrature, at reduced precision.
pub fn verify_index_law(
    nu: &Real,
    mu: &Real,
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    let low = ctx.with_digits(INDEX_LAW_DIGITS.min(ctx.digits()));
    let half = low.lift(mu) / 2i64;
    let x = low.one();
    let base = Macdonald::new(nu, &low)?;
    let inner = |y: &Real| fractional_integral(&half, y, |t| base.rho(t), &low);
    let nested = fractional_integral(&half, &x, inner, &low)?;
    let exact = rho_at(&(nu + mu), &x, &low)?;
    let mut report = VerificationReport::new("index_law", default_tolerance(&low))
        .param("nu", nu.to_sig_string(8))
        .param("mu", mu.to_sig_string(8))
        .param("digits", low.digits());
    let scale = exact.abs();
    report.record(point(&x), nested - exact, scale);
    Ok(report)
}

fn max_coeff_diff(p: &Polynomial, q: &Polynomial) -> (Real, Real) {
    let bits = p.max_abs().bits();
    let mut diff = Real::zero(bits);
    for k in 0..=p.degree().max(q.degree()) {
        diff = diff.max((p.coeff(k) - q.coeff(k)).abs());
    }
    (diff, p.max_abs().max(q.max_abs()))
}

/// θ^n and β^n identities for n ≤ `n_max`, k ≤ `k_max`; θ exactly on
/// polynomials, β numerically at `x`.
pub fn verify_viskov(
    n_max: u32,
    k_max: u32,
    x: &Real,
    ctx: &PrecisionContext,
) -> Result<Vec<VerificationReport>> {
    let bits = ctx.bits();
    let tol = default_tolerance(ctx);
    let mut th = VerificationReport::new("viskov_theta", tol.clone())
        .param("n_max", n_max)
        .param("k_max", k_max);
    let x_poly = Polynomial::monomial(ctx.one(), 1);
    for k in 0..=k_max {
        let mut p = Polynomial::monomial(ctx.one(), k as usize);
        let start = p.clone();
        for n in 0..=n_max {
            let coeff = ctx.factorial(n + k) / ctx.factorial(k);
            let expected = Polynomial::monomial(coeff, (n + k) as usize);
            let (d, s) = max_coeff_diff(&p, &expected);
            th.record(format!("theta^{n} x^{k}"), d, s);

            // θ^n = x^n D^n x^n
            let mut q = start.clone();
            for _ in 0..n {
                q = &q * &x_poly;
            }
            for _ in 0..n {
                q = q.derivative();
            }
            for _ in 0..n {
                q = &q * &x_poly;
            }
            let (d, s) = max_coeff_diff(&p, &q);
            th.record(format!("theta^{n} = x^{n}D^{n}x^{n} on x^{k}"), d, s);
            p = theta(&p);
        }
    }

    let mut be = VerificationReport::new("viskov_beta", tol)
        .param("n_max", n_max)
        .param("x", point(x));
    let zero = ctx.zero();
    let r0 = rho_at(&zero, x, ctx)?;
    let r1 = rho_at(&ctx.one(), x, ctx)?;
    for base in [0i64, 1] {
        let mut comb = RhoCombination::single(0, bits);
        let nu = ctx.int(base);
        for n in 0..=n_max {
            let (value, scale) = comb.eval(&nu, x, ctx)?;
            let expected = if base == 0 {
                r0.clone()
            } else {
                &r1 - &r0 * n as i64
            };
            let scale = scale.max(expected.abs());
            be.record(
                format!("beta^{n} rho_{base}"),
                &value - &expected,
                scale.clone(),
            );

            // β^n = D^n x^n D^n
            let mut alt = RhoCombination::single(0, bits);
            for _ in 0..n {
                alt = alt.derivative();
            }
            for _ in 0..n {
                alt = alt.times_x();
            }
            for _ in 0..n {
                alt = alt.derivative();
            }
            let (v2, s2) = alt.eval(&nu, x, ctx)?;
            be.record(
                format!("beta^{n} = D^{n}x^{n}D^{n} on rho_{base}"),
                v2 - &value,
                s2.max(scale),
            );
            comb = beta(&comb);
        }
    }
    Ok(vec![th, be])
}

/// Runs a vector quadrature whose integrand may fail; the first error wins.
fn integrate_checked<F>(
    shape: &Shape,
    dim: usize,
    mut f: F,
    ctx: &PrecisionContext,
) -> Result<Vec<Real>>
where
    F: FnMut(&Real) -> Result<Vec<Real>>,
{
    let mut err = None;
    let res = integrate_many(
        shape,
        dim,
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                vec![ctx.zero(); dim]
            }
        },
        ctx,
    )?;
    match err {
        Some(e) => Err(e),
        None => Ok(res.into_iter().map(|r| r.value).collect()),
    }
}

/// Reduced orthogonality conditions for p_n against every m < n, with
/// Σ_k a_{n,k}(−1)^k k! t^k L_k^ν(t) assembled as the associated polynomial.
/// Plus: ∫ t^ν e^{−t} q(t) (1+t)^{−m−1} dt = 0.
/// Minus: ∫ t^{ν−1} e^{−t} q(t) ρ_{−m}(1/t) dt = 0.
pub fn verify_composition_orthogonality(
    basis: &OrthoBasis,
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    let nu = ctx.lift(basis.spec.nu());
    let family = basis.spec.family();
    let n = basis.degree();
    let mut report = VerificationReport::new("composition_orthogonality", default_tolerance(ctx))
        .param("family", family)
        .param("nu", nu.to_sig_string(8))
        .param("n", n);
    let qs: Vec<Polynomial> = basis
        .polys
        .iter()
        .map(|p| associated_q(&nu, p, &basis.work))
        .collect();
    // smooth majorant for the scale: coefficients replaced by their absolute values
    let majorants: Vec<Polynomial> = qs
        .iter()
        .map(|q| Polynomial::new(q.coeffs().iter().map(|c| c.abs()).collect()))
        .collect();
    let shape = match family {
        Family::Plus => Shape::new(LeftBehavior::Power(nu.clone()), Decay::Exp, ctx.one()),
        Family::Minus => Shape::new(LeftBehavior::ExpInverse, Decay::Exp, ctx.one()),
    };
    let kernels: Vec<Macdonald> = (0..n)
        .map(|m| Macdonald::new(&ctx.int(-(m as i64)), ctx))
        .collect::<Result<_>>()?;
    // layout: for each (k, m) with m < k ≤ n, the majorant then the signed value
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|k| (0..k).map(move |m| (k, m))).collect();
    let values = integrate_checked(
        &shape,
        2 * pairs.len(),
        |t| {
            let common = match family {
                Family::Plus => t.pow(&nu) * (-t).exp(),
                Family::Minus => t.pow(&(&nu - 1i64)) * (-t).exp(),
            };
            let inv = t.recip();
            let mut kern = Vec::with_capacity(n);
            for (m, km) in kernels.iter().enumerate() {
                kern.push(match family {
                    Family::Plus => (t + 1i64).powi(-(m as i64) - 1),
                    Family::Minus => km.rho(&inv)?,
                });
            }
            let mut out = Vec::with_capacity(2 * pairs.len());
            for &(k, m) in &pairs {
                let c = &common * &kern[m];
                out.push(&c * majorants[k].eval(t));
                out.push(c * qs[k].eval(t));
            }
            Ok(out)
        },
        ctx,
    )?;
    for (i, &(k, m)) in pairs.iter().enumerate() {
        report.record(
            format!("n={k} m={m}"),
            values[2 * i + 1].clone(),
            values[2 * i].clone(),
        );
    }
    Ok(report)
}

/// ∫ p_i p_j ω dx = δ_ij by quadrature.
pub fn verify_orthonormality(
    basis: &OrthoBasis,
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    let n = basis.degree();
    let spec = &basis.spec;
    let mut report = VerificationReport::new("orthonormality", default_tolerance(ctx))
        .param("family", spec.family())
        .param("nu", spec.nu().to_sig_string(8))
        .param("n", n);
    let pairs: Vec<(usize, usize)> = (0..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
    let kernel = Macdonald::new(spec.nu(), ctx)?;
    let values = integrate_checked(
        &spec.shape(ctx),
        pairs.len(),
        |x| {
            let w = spec.apply(x, kernel.rho(x)?);
            let pv: Vec<Real> = basis.polys.iter().map(|p| p.eval(x)).collect();
            Ok(pairs.iter().map(|&(i, j)| &w * &pv[i] * &pv[j]).collect())
        },
        ctx,
    )?;
    for ((i, j), g) in pairs.iter().zip(values) {
        let expected = if i == j { 1i64 } else { 0 };
        report.record(format!("({i},{j})"), g - expected, ctx.one());
    }
    Ok(report)
}

/// x p_k = A_{k+1} p_{k+1} + B_k p_k + A_k p_{k−1}, k < n, on the grid.
pub fn verify_recurrence(
    basis: &OrthoBasis,
    grid: &[Real],
    ctx: &PrecisionContext,
) -> VerificationReport {
    let n = basis.degree();
    let mut report = VerificationReport::new("recurrence", default_tolerance(ctx))
        .param("family", basis.spec.family())
        .param("nu", basis.spec.nu().to_sig_string(8))
        .param("n", n);
    for x in grid {
        let xw = basis.work.lift(x);
        let p: Vec<Real> = (0..=n).map(|k| eval(basis, k, &xw)).collect();
        let mut worst = basis.work.zero();
        let mut worst_scale = basis.work.one();
        for k in 0..n {
            let lhs = &xw * &p[k];
            let up = &basis.a[k] * &p[k + 1];
            let mid = &basis.b[k] * &p[k];
            let down = if k == 0 {
                basis.work.zero()
            } else {
                &basis.a[k - 1] * &p[k - 1]
            };
            let scale = max_abs(&[&lhs, &up, &mid, &down]);
            let r = (&lhs - up - mid - down).abs();
            if &r / &scale > &worst / &worst_scale {
                worst = r;
                worst_scale = scale;
            }
        }
        report.record(point(x), worst, worst_scale);
    }
    report
}

/// Coefficient form versus determinant form of A_k and B_k.
pub fn verify_determinant_recurrence(
    basis: &OrthoBasis,
    ctx: &PrecisionContext,
) -> VerificationReport {
    let rec = recurrence_coeffs(basis);
    let mut report = VerificationReport::new("recurrence_determinant_form", default_tolerance(ctx))
        .param("family", basis.spec.family())
        .param("nu", basis.spec.nu().to_sig_string(8))
        .param("n", basis.degree());
    for k in 0..rec.a.len() {
        let s = rec.a[k].abs().max(rec.a_det[k].abs());
        report.record(format!("A_{}", k + 1), &rec.a[k] - &rec.a_det[k], s);
        let s = rec.b[k].abs().max(rec.b_det[k].abs());
        report.record(format!("B_{k}"), &rec.b[k] - &rec.b_det[k], s);
    }
    report
}

/// p_n(x)ρ_ν(x) = Σ_k q_{n,k} ρ_{ν+k}(x) for every p_n of the basis.
pub fn verify_rho_expansion(
    basis: &OrthoBasis,
    grid: &[Real],
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    let work = &basis.work;
    let nu = work.lift(basis.spec.nu());
    let n = basis.degree();
    let mut report = VerificationReport::new("rho_expansion", default_tolerance(ctx))
        .param("family", basis.spec.family())
        .param("nu", nu.to_sig_string(8))
        .param("n", n);
    let kernels: Vec<Macdonald> = (0..=2 * n as i64)
        .map(|k| Macdonald::new(&(&nu + k), work))
        .collect::<Result<_>>()?;
    let qs: Vec<Polynomial> = basis
        .polys
        .iter()
        .map(|p| associated_q(&nu, p, work))
        .collect();
    for x in grid {
        let x = work.lift(x);
        let rhos: Vec<Real> = kernels.iter().map(|k| k.rho(&x)).collect::<Result<_>>()?;
        for (m, (p, q)) in basis.polys.iter().zip(&qs).enumerate() {
            let lhs = p.eval(&x) * &rhos[0];
            let mut scale = lhs.abs();
            let mut rhs = work.zero();
            for (k, c) in q.coeffs().iter().enumerate() {
                let t = c * &rhos[k];
                scale = scale.max(t.abs());
                rhs += t;
            }
            report.record(format!("n={m} x={}", point(&x)), lhs - rhs, scale);
        }
    }
    Ok(report)
}

/// Σ_k f_{2n,k} L_k^ν from the determinant formula equals the associated
/// polynomial of p_n, coefficient by coefficient.
pub fn verify_laguerre_expansion(
    basis: &OrthoBasis,
    ctx: &PrecisionContext,
) -> Result<VerificationReport> {
    let work = &basis.work;
    let nu = work.lift(basis.spec.nu());
    let mut report = VerificationReport::new("laguerre_expansion", default_tolerance(ctx))
        .param("family", basis.spec.family())
        .param("nu", nu.to_sig_string(8))
        .param("n", basis.degree());
    for n in 0..=basis.degree() {
        let f = laguerre_expansion(basis, n)?;
        let mut series = Polynomial::zero(work.bits());
        for (k, fk) in f.iter().enumerate() {
            series = &series + &laguerre_poly(k as u32, &nu, work).scale(fk);
        }
        let q = associated_q(&nu, &basis.polys[n], work);
        let (d, s) = max_coeff_diff(&series, &q);
        report.record(format!("n={n}"), d, s);
    }
    Ok(report)
}

/// Largest n whose norm identity can be checked: B_n must be available.
fn norm_range(basis: &OrthoBasis) -> usize {
    basis.degree().saturating_sub(1).min(5)
}

/// Plus: ∫ p_n² e^{−x} ρ_{ν+1} dx = ν + 2n + 1 − B_n.
/// Minus: ∫ q_n² e^{−1/x} ρ_{ν+1} dx = (ν+1+2n)B_n + 1 − 2b_n/a_n; the variant
/// with −1 in place of +1 is reported separately as a non-gating check.
pub fn verify_norm_identity(
    basis: &OrthoBasis,
    ctx: &PrecisionContext,
) -> Result<Vec<VerificationReport>> {
    let spec = &basis.spec;
    let nu = ctx.lift(spec.nu());
    let top = norm_range(basis);
    let kernel = Macdonald::new(&(&nu + 1i64), ctx)?;
    let shape = match spec.family() {
        Family::Plus => Shape::new(LeftBehavior::Power(ctx.zero()), Decay::Exp, ctx.one()),
        Family::Minus => Shape::new(LeftBehavior::ExpInverse, Decay::ExpSqrt, ctx.one()),
    };
    let lhs = integrate_checked(
        &shape,
        top + 1,
        |x| {
            let e = match spec.family() {
                Family::Plus => (-x).exp(),
                Family::Minus => (-x.recip()).exp(),
            };
            let w = e * kernel.rho(x)?;
            Ok(basis.polys[..=top]
                .iter()
                .map(|p| p.eval(x).square() * &w)
                .collect())
        },
        ctx,
    )?;
    let tol = default_tolerance(ctx);
    let mut main = VerificationReport::new("norm_identity", tol.clone())
        .param("family", spec.family())
        .param("nu", nu.to_sig_string(8));
    let mut printed = VerificationReport::new("norm_identity_printed", tol)
        .param("family", spec.family())
        .param("nu", nu.to_sig_string(8))
        .informational();
    for (n, value) in lhs.iter().enumerate() {
        let b = &basis.b[n];
        let ni = n as i64;
        match spec.family() {
            Family::Plus => {
                let rhs = &nu + (2 * ni + 1) - b;
                let s = value.abs().max(rhs.abs());
                main.record(format!("n={n}"), value - rhs, s);
            }
            Family::Minus => {
                let ratio = basis.subleading(n) / basis.leading(n);
                let core = (&nu + (1 + 2 * ni)) * b - ratio * 2i64;
                let good = &core + 1i64;
                let bad = &core - 1i64;
                let s = value.abs().max(good.abs());
                main.record(format!("n={n}"), value - &good, s);
                let s = value.abs().max(bad.abs());
                printed.record(format!("n={n}"), value - &bad, s);
            }
        }
    }
    let mut out = vec![main];
    if spec.family() == Family::Minus {
        out.push(printed);
    }
    Ok(out)
}

/// Σ_{n≤N} p_n(x) zⁿ/n! directly and via the Laguerre expansion and the
/// Macdonald reduction. The variant with weights (−1)^j/(j!(k−j)!) is non-gating.
pub fn verify_generating_function(
    basis: &OrthoBasis,
    x: &Real,
    z: &Real,
    ctx: &PrecisionContext,
) -> Result<Vec<VerificationReport>> {
    let tol = default_tolerance(ctx);
    let sums = generating_partial_sum(basis, x, z, basis.degree())?;
    let mut good = VerificationReport::new("generating_function", tol.clone())
        .param("family", basis.spec.family())
        .param("nu", basis.spec.nu().to_sig_string(8))
        .param("x", point(x))
        .param("z", point(z));
    let mut printed = VerificationReport::new("generating_function_printed_weights", tol)
        .param("family", basis.spec.family())
        .param("nu", basis.spec.nu().to_sig_string(8))
        .informational();
    for (n, d) in sums.direct_terms.iter().enumerate() {
        let r = &sums.reduction_terms[n];
        good.record(format!("n={n}"), d - r, d.abs().max(r.abs()));
        let p = &sums.printed_terms[n];
        printed.record(format!("n={n}"), d - p, d.abs().max(p.abs()));
    }
    Ok(vec![good, printed])
}

/// Which closed form of (1+ν)_r ₃F₂(−k, 1+ν+r, 1+r; 1+ν, 1; 1) applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecialCase {
    /// k > 2r: zero.
    Above,
    /// k = 2r: (2r)!/r!.
    Diagonal,
    /// k = 2r − 1, printed form (2r)!(2r(ν+2r) − r(ν+r))/r!.
    BelowOne,
    /// k = 2r − 2, printed form (2r)!/(2 r!)(2r²(2r+ν−1)(2r−1) + r(r−1)(r+ν−1)(r+ν)).
    BelowTwo,
}

impl SpecialCase {
    pub fn name(self) -> &'static str {
        match self {
            SpecialCase::Above => "3f2_k_above_2r",
            SpecialCase::Diagonal => "3f2_k_eq_2r",
            SpecialCase::BelowOne => "3f2_k_eq_2r_minus_1",
            SpecialCase::BelowTwo => "3f2_k_eq_2r_minus_2",
        }
    }

    /// k values of this case for a given r (empty where k would be negative).
    pub fn ks(self, r: u32) -> Vec<u32> {
        match self {
            SpecialCase::Above => (2 * r + 1..=2 * r + 3).collect(),
            SpecialCase::Diagonal => vec![2 * r],
            SpecialCase::BelowOne => (r >= 1).then(|| 2 * r - 1).into_iter().collect(),
            SpecialCase::BelowTwo => (r >= 1).then(|| 2 * r - 2).into_iter().collect(),
        }
    }

    /// The printed closed form.
    pub fn closed_form(self, r: u32, nu: &Real, ctx: &PrecisionContext) -> Real {
        let ri = r as i64;
        let lead = ctx.factorial(2 * r) / ctx.factorial(r);
        match self {
            SpecialCase::Above => ctx.zero(),
            SpecialCase::Diagonal => lead,
            SpecialCase::BelowOne => lead * ((nu + 2 * ri) * (2 * ri) - (nu + ri) * ri),
            SpecialCase::BelowTwo => {
                let a = (nu + (2 * ri - 1)) * (2 * ri * ri * (2 * ri - 1));
                let b = (nu + (ri - 1)) * (nu + ri) * (ri * (ri - 1));
                lead * (a + b) / 2i64
            }
        }
    }
}

/// (1+ν)_r ₃F₂(−k, 1+ν+r, 1+r; 1+ν, 1; 1) by direct terminating summation.
pub fn scaled_3f2(k: u32, r: u32, nu: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let ri = r as i64;
    let f = hyp3f2_unit(
        k,
        &(nu + (1 + ri)),
        &ctx.int(1 + ri),
        &(nu + 1i64),
        &ctx.one(),
        ctx,
    )?;
    Ok(pochhammer(&(nu + 1i64), r, ctx) * f)
}

/// Closed forms of the terminating ₃F₂ against direct summation, r ≤ `r_max`.
/// The k = 2r and k > 2r cases gate; the two lower cases are informational.
pub fn verify_3f2_special_values(
    nu: &Real,
    r_max: u32,
    ctx: &PrecisionContext,
) -> Result<Vec<VerificationReport>> {
    let tol = default_tolerance(ctx);
    let mut out = Vec::new();
    for case in [
        SpecialCase::Above,
        SpecialCase::Diagonal,
        SpecialCase::BelowOne,
        SpecialCase::BelowTwo,
    ] {
        let mut report =
            VerificationReport::new(case.name(), tol.clone()).param("nu", nu.to_sig_string(8));
        if matches!(case, SpecialCase::BelowOne | SpecialCase::BelowTwo) {
            report = report.informational();
        }
        for r in 0..=r_max {
            for k in case.ks(r) {
                let direct = scaled_3f2(k, r, nu, ctx)?;
                let closed = case.closed_form(r, nu, ctx);
                let s = direct.abs().max(closed.abs()).max(ctx.one());
                report.record(format!("r={r} k={k}"), direct - closed, s);
            }
        }
        out.push(report);
    }
    Ok(out)
}
