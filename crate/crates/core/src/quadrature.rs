//! Double-exponential quadrature on the half line (0, ∞).
//!
//! The interval is cut at a split point `s`. The left piece (0, s) uses the
//! tanh–sinh map, which absorbs algebraic and logarithmic behaviour at 0⁺, or,
//! when the integrand carries an `e^{-c/x}` factor, the substitution `x = 1/u`
//! followed by an exponential map on (1/s, ∞). The right piece (s, ∞) uses the
//! map `x = s + exp(t - e^{-t})`, optionally after `x = u²` for integrands
//! decaying like `e^{-2√x}`.
//!
//! Every panel is a trapezoidal sum in the transformed variable, refined by
//! halving the step. Nodes are summed in a fixed order so results do not
//! depend on scheduling.

use crate::error::{Error, Result};
use crate::moments::WeightSpec;
use crate::real::{PrecisionContext, Real};
use crate::specfun::Macdonald;

/// Hard cap on step halvings (about 2^12 nodes per unit of transformed length).
pub const MAX_LEVEL: u32 = 12;
const MIN_LEVEL: u32 = 3;
const GUARD_BITS: u32 = 24;

/// Behaviour of the integrand at 0⁺.
#[derive(Clone, Debug)]
pub enum LeftBehavior {
    /// `x^exponent` (exponent > -1) or a logarithm (exponent 0).
    Power(Real),
    /// Carries a factor `e^{-c/x^p}` with c, p > 0.
    ExpInverse,
}

/// Decay of the integrand as x → ∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decay {
    /// `e^{-c x}`.
    Exp,
    /// `e^{-c √x}`, the Macdonald-function tail.
    ExpSqrt,
}

/// Endpoint hints shared by every component of a (possibly vector) integrand.
#[derive(Clone, Debug)]
pub struct Shape {
    pub left: LeftBehavior,
    pub decay: Decay,
    pub split_point: Real,
}

impl Shape {
    pub fn new(left: LeftBehavior, decay: Decay, split_point: Real) -> Self {
        Self {
            left,
            decay,
            split_point,
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.split_point.is_positive() {
            return Err(Error::Invalid("split point must be positive".into()));
        }
        if let LeftBehavior::Power(e) = &self.left {
            if e <= &-1i64 {
                return Err(Error::Domain(format!(
                    "left exponent {} is not integrable at 0",
                    e.to_sig_string(8)
                )));
            }
        }
        Ok(())
    }
}

/// A scalar integrand on (0, ∞) with its endpoint hints.
pub struct IntegrandSpec<'a> {
    pub f: Box<dyn Fn(&Real) -> Real + 'a>,
    pub left: LeftBehavior,
    pub decay: Decay,
    pub split_point: Real,
}

#[derive(Clone, Debug)]
pub struct QuadratureResult {
    pub value: Real,
    /// Absolute error estimate, always ≥ 0.
    pub est_error: Real,
    pub evaluations: usize,
}

/// Integrates `spec.f` over (0, ∞).
pub fn integrate_semiaxis(
    spec: &IntegrandSpec<'_>,
    ctx: &PrecisionContext,
) -> Result<QuadratureResult> {
    let shape = Shape::new(spec.left.clone(), spec.decay, spec.split_point.clone());
    let mut out = integrate_many(&shape, 1, |x| vec![(spec.f)(x)], ctx)?;
    Ok(out.pop().expect("one component"))
}

/// Integrates a vector of `dim` integrands sharing one set of nodes.
///
/// Each node is evaluated once; useful when an expensive weight multiplies
/// many cheap factors (Gram matrices, moment batches).
pub fn integrate_many<F>(
    shape: &Shape,
    dim: usize,
    mut f: F,
    ctx: &PrecisionContext,
) -> Result<Vec<QuadratureResult>>
where
    F: FnMut(&Real) -> Vec<Real>,
{
    shape.validate()?;
    let bits = ctx.bits() + GUARD_BITS;
    let s = shape.split_point.with_bits(bits);
    let left = match &shape.left {
        LeftBehavior::Power(e) => Panel::TanhSinh {
            s: s.clone(),
            exponent: e.to_f64(),
        },
        LeftBehavior::ExpInverse => Panel::Inverse { s: s.clone() },
    };
    let right = match shape.decay {
        Decay::Exp => Panel::Exp { a: s.clone() },
        Decay::ExpSqrt => Panel::Sqrt { root: s.sqrt() },
    };
    let a = integrate_panel(&left, dim, &mut f, bits, ctx)?;
    let b = integrate_panel(&right, dim, &mut f, bits, ctx)?;
    Ok(a.into_iter()
        .zip(b)
        .map(|(p, q)| QuadratureResult {
            value: ctx.lift(&(&p.value + &q.value)),
            est_error: ctx.lift(&(&p.est_error + &q.est_error)),
            evaluations: p.evaluations + q.evaluations,
        })
        .collect())
}

/// Integral of `x^k ω(x)` for the weight `w`, by direct quadrature with the
/// Macdonald function evaluated pointwise. Ground truth for the closed forms.
pub fn moment_oracle(w: &WeightSpec, k: u32, ctx: &PrecisionContext) -> Result<Real> {
    Ok(moment_oracle_batch(w, k, k, ctx)?
        .pop()
        .expect("one moment"))
}

/// Moments `k_min..=k_max` of `w` in one quadrature pass.
pub fn moment_oracle_batch(
    w: &WeightSpec,
    k_min: u32,
    k_max: u32,
    ctx: &PrecisionContext,
) -> Result<Vec<Real>> {
    let work = ctx.with_extra_digits(6);
    let nu = work.lift(w.nu());
    let kernel = Macdonald::new(&nu, &work)?;
    let dim = (k_max - k_min + 1) as usize;
    let shape = w.shape(&work);
    let mut failure = None;
    let results = integrate_many(
        &shape,
        dim,
        |x| {
            let r = match kernel.rho(x) {
                Ok(r) => r,
                Err(e) => {
                    failure.get_or_insert(e);
                    return vec![Real::zero(x.bits()); dim];
                }
            };
            let weight = w.apply(x, r);
            let mut out = Vec::with_capacity(dim);
            let mut p = weight * x.powi(i64::from(k_min));
            for _ in 0..dim {
                out.push(p.clone());
                p *= x;
            }
            out
        },
        &work,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(results.into_iter().map(|r| ctx.lift(&r.value)).collect())
}

enum Panel {
    /// (0, s) by tanh–sinh.
    TanhSinh { s: Real, exponent: f64 },
    /// (0, s) via x = 1/u, u ∈ (1/s, ∞).
    Inverse { s: Real },
    /// (a, ∞) via x = a + exp(t - e^{-t}).
    Exp { a: Real },
    /// (root², ∞) via x = (root + exp(t - e^{-t}))².
    Sqrt { root: Real },
}

impl Panel {
    /// Transformed-variable range beyond which nodes cannot contribute.
    fn t_bounds(&self, bits: u32) -> (f64, f64) {
        let budget = f64::from(bits) * std::f64::consts::LN_2 + 40.0;
        let exp_lo = -(budget.ln() + 1.0);
        match self {
            Panel::TanhSinh { exponent, .. } => {
                let power = (1.0 + exponent).max(0.02);
                let lo = (budget / (std::f64::consts::PI * power)).asinh();
                let hi = (budget / std::f64::consts::PI).asinh();
                (-lo, hi)
            }
            Panel::Exp { .. } => (exp_lo, (4.0 * budget).ln()),
            Panel::Sqrt { .. } | Panel::Inverse { .. } => (exp_lo, (budget * budget).ln()),
        }
    }

    /// Abscissa and Jacobian dx/dt at transformed coordinate `t`.
    fn node(&self, t: &Real) -> (Real, Real) {
        match self {
            Panel::TanhSinh { s, .. } => {
                let half_pi = Real::pi(t.bits()) / 2i64;
                let u = &half_pi * t.sinh();
                let du = &half_pi * t.cosh();
                let e = (u.abs() * -2i64).exp();
                let denom = &e + 1i64;
                let x = if u.is_negative() {
                    s * &e / &denom
                } else {
                    s / &denom
                };
                let sech2 = &e * 4i64 / denom.square();
                let jac = s * sech2 * du / 2i64;
                (x, jac)
            }
            Panel::Exp { a } => {
                let (g, dg) = exp_map(t);
                (a + g, dg)
            }
            Panel::Sqrt { root } => {
                let (g, dg) = exp_map(t);
                let u = root + &g;
                let jac = &u * dg * 2i64;
                (u.square(), jac)
            }
            Panel::Inverse { s } => {
                let (g, dg) = exp_map(t);
                let u = s.recip() + g;
                let x = u.recip();
                let jac = dg * x.square();
                (x, jac)
            }
        }
    }
}

fn exp_map(t: &Real) -> (Real, Real) {
    let emt = (-t).exp();
    let g = (t - &emt).exp();
    let dg = &g * (emt + 1i64);
    (g, dg)
}

struct PanelResult {
    value: Real,
    est_error: Real,
    evaluations: usize,
}

fn integrate_panel<F>(
    panel: &Panel,
    dim: usize,
    f: &mut F,
    bits: u32,
    ctx: &PrecisionContext,
) -> Result<Vec<PanelResult>>
where
    F: FnMut(&Real) -> Vec<Real>,
{
    let (t_lo, t_hi) = panel.t_bounds(bits);
    let stop_tol = Real::from_i64(1, bits) / Real::from_i64(2, bits).powi(i64::from(bits) + 8);
    let target = ctx.epsilon().with_bits(bits);
    let mut raw = vec![Real::zero(bits); dim];
    let mut l1 = vec![Real::zero(bits); dim];
    let mut history: Vec<Vec<Real>> = Vec::new();
    let mut evaluations = 0usize;

    // Evaluates the (jacobian-weighted) integrand at t = j * step, accumulating.
    let mut sweep = |step: &Real,
                     j_start: i64,
                     j_stride: i64,
                     raw: &mut Vec<Real>,
                     l1: &mut Vec<Real>,
                     evaluations: &mut usize| {
        for dir in [1i64, -1i64] {
            let mut quiet = 0;
            let mut j = if dir == 1 {
                j_start
            } else {
                j_start - j_stride
            };
            if dir == -1 && j_start == 0 {
                j = -j_stride;
            }
            loop {
                let t = step * j;
                let tf = t.to_f64();
                if tf > t_hi || tf < t_lo {
                    break;
                }
                let (x, jac) = panel.node(&t);
                if !x.is_positive() || !jac.is_positive() || !x.is_finite() {
                    break;
                }
                let values = f(&x);
                *evaluations += 1;
                let mut negligible = true;
                for c in 0..dim {
                    let term = &values[c] * &jac;
                    let mag = term.abs();
                    if mag > &l1[c] * &stop_tol || (l1[c].is_zero() && !mag.is_zero()) {
                        negligible = false;
                    }
                    l1[c] += &mag;
                    raw[c] += term;
                }
                quiet = if negligible { quiet + 1 } else { 0 };
                if quiet >= 3 {
                    break;
                }
                j += dir * j_stride;
            }
        }
    };

    let mut step = Real::one(bits);
    sweep(&step, 0, 1, &mut raw, &mut l1, &mut evaluations);
    history.push(raw.iter().map(|r| r * &step).collect());

    for level in 1..=MAX_LEVEL {
        step /= 2i64;
        // New nodes at odd multiples of the halved step.
        sweep(&step, 1, 2, &mut raw, &mut l1, &mut evaluations);
        let current: Vec<Real> = raw.iter().map(|r| r * &step).collect();
        let scaled_l1: Vec<Real> = l1.iter().map(|a| a * &step).collect();
        history.push(current);
        if level < MIN_LEVEL {
            continue;
        }
        let n = history.len();
        let estimates: Vec<Real> = (0..dim)
            .map(|c| {
                error_estimate(
                    &history[n - 1][c],
                    &history[n - 2][c],
                    &history[n - 3][c],
                    &scaled_l1[c],
                    bits,
                )
            })
            .collect();
        let converged = (0..dim).all(|c| estimates[c] <= &target * &scaled_l1[c]);
        if converged {
            return Ok((0..dim)
                .map(|c| PanelResult {
                    value: history[n - 1][c].clone(),
                    est_error: estimates[c].clone(),
                    evaluations,
                })
                .collect());
        }
    }
    Err(Error::Convergence(format!(
        "double-exponential quadrature reached level {MAX_LEVEL} without meeting 1e-{} relative tolerance",
        ctx.digits()
    )))
}

/// Error estimate of the newest level from the last three (Bailey's rule).
fn error_estimate(i2: &Real, i1: &Real, i0: &Real, l1: &Real, bits: u32) -> Real {
    let floor = l1 * Real::from_i64(2, bits).powi(-i64::from(bits) + 4);
    let d1 = (i2 - i1).abs();
    let d2 = (i2 - i0).abs();
    if d1.is_zero() {
        return floor;
    }
    if l1.is_zero() {
        return d1;
    }
    let r1 = (&d1 / l1).log10_abs().unwrap_or(0.0);
    let r2 = if d2.is_zero() {
        r1
    } else {
        (&d2 / l1).log10_abs().unwrap_or(0.0)
    };
    let exponent = if r2 < 0.0 && r1 < 0.0 {
        (r1 * r1 / r2).max(2.0 * r1)
    } else {
        r1
    };
    let exponent = exponent.min(r1.max(0.0));
    let est = l1 * Real::pow10(exponent.floor() as i32 + 1, bits);
    est.max(floor)
}
