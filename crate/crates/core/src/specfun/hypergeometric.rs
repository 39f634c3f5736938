use crate::error::{Error, Result};
use crate::quadrature::{integrate_semiaxis, Decay, IntegrandSpec, LeftBehavior};
use crate::real::{PrecisionContext, Real};

use super::gamma::gamma;

/// Running sum that stops once three consecutive terms fall below the
/// relative tolerance.
pub(crate) struct SeriesSum {
    sum: Real,
    tol: Real,
    quiet: u32,
    terms: usize,
    max_terms: usize,
}

impl SeriesSum {
    pub(crate) fn new(ctx: &PrecisionContext, bits: u32) -> Self {
        Self {
            sum: Real::zero(bits),
            tol: ctx.series_rel_tol().clone(),
            quiet: 0,
            terms: 0,
            max_terms: ctx.max_terms(),
        }
    }

    /// Adds a term; `Ok(true)` once the series has converged.
    pub(crate) fn add(&mut self, term: Real) -> Result<bool> {
        let small =
            term.abs() <= &self.tol * self.sum.abs() || (term.is_zero() && self.sum.is_zero());
        self.sum += term;
        self.terms += 1;
        self.quiet = if small { self.quiet + 1 } else { 0 };
        if self.quiet >= 3 {
            return Ok(true);
        }
        if self.terms >= self.max_terms {
            return Err(Error::Convergence(format!(
                "series not converged after {} terms",
                self.terms
            )));
        }
        Ok(false)
    }

    pub(crate) fn value(self) -> Real {
        self.sum
    }
}

fn check_lower(b: &Real, ctx: &PrecisionContext) -> Result<()> {
    if !b.is_positive() && b.dist_to_integer() < ctx.epsilon() {
        return Err(Error::Pole(format!(
            "lower parameter {} is a non-positive integer",
            b.to_sig_string(12)
        )));
    }
    Ok(())
}

/// ₀F₂(;b1,b2;z).
pub fn hyp0f2(b1: &Real, b2: &Real, z: &Real, ctx: &PrecisionContext) -> Result<Real> {
    check_lower(b1, ctx)?;
    check_lower(b2, ctx)?;
    let bits = ctx.bits() + 16;
    let (b1, b2, z) = (b1.with_bits(bits), b2.with_bits(bits), z.with_bits(bits));
    let mut sum = SeriesSum::new(ctx, bits);
    let mut term = Real::one(bits);
    let mut r = 0i64;
    while !sum.add(term.clone())? {
        term = term * &z / ((&b1 + r) * (&b2 + r) * (r + 1));
        r += 1;
    }
    Ok(ctx.lift(&sum.value()))
}

/// Terminating ₃F₂(−k, a, b; c, d; 1).
pub fn hyp3f2_unit(
    k: u32,
    a: &Real,
    b: &Real,
    c: &Real,
    d: &Real,
    ctx: &PrecisionContext,
) -> Result<Real> {
    let bits = ctx.bits() + 16;
    let (a, b, c, d) = (
        a.with_bits(bits),
        b.with_bits(bits),
        c.with_bits(bits),
        d.with_bits(bits),
    );
    let mut term = Real::one(bits);
    let mut sum = term.clone();
    let k = i64::from(k);
    for j in 0..k {
        let den = (&c + j) * (&d + j);
        if den.is_zero() {
            return Err(Error::Pole(format!(
                "lower Pochhammer vanishes at term {}",
                j + 1
            )));
        }
        term = term * (j - k) * (&a + j) * (&b + j) / (den * (j + 1));
        sum += &term;
    }
    Ok(ctx.lift(&sum))
}

/// Tricomi Ψ(a, b; 1) from its Laplace-type integral, for a > 0.
pub fn tricomi_psi1(a: &Real, b: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if !a.is_positive() {
        return Err(Error::Domain(format!(
            "Ψ(a,b;1) integral needs a > 0, got a = {}",
            a.to_sig_string(12)
        )));
    }
    let work = ctx.with_extra_digits(6);
    let a = work.lift(a);
    let am1 = &a - 1i64;
    let e2 = work.lift(b) - &a - 1i64;
    let spec = IntegrandSpec {
        f: Box::new(|t: &Real| (-t).exp() * t.pow(&am1) * (t + 1i64).pow(&e2)),
        left: LeftBehavior::Power(am1.clone()),
        decay: Decay::Exp,
        split_point: work.one(),
    };
    let r = integrate_semiaxis(&spec, &work)?;
    Ok(ctx.lift(&(r.value / gamma(&a, &work)?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    #[test]
    fn zero_argument_and_poles() {
        let c = ctx();
        assert_eq!(hyp0f2(&c.one(), &c.one(), &c.zero(), &c).unwrap(), c.one());
        assert!(matches!(
            hyp0f2(&c.int(-2), &c.one(), &c.one(), &c),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn terminating_3f2() {
        let c = ctx();
        let x = c.real(0.3);
        assert_eq!(hyp3f2_unit(0, &x, &x, &x, &x, &c).unwrap(), c.one());
        // Chu–Vandermonde limit: ₃F₂(−k, a, b; c, b; 1) = (c−a)_k/(c)_k
        let (a, b, cc) = (c.real(2.5), c.real(1.25), c.real(3.5));
        let v = hyp3f2_unit(4, &a, &b, &cc, &b, &c).unwrap();
        let num = super::super::pochhammer(&(&cc - &a), 4, &c);
        let den = super::super::pochhammer(&cc, 4, &c);
        assert!(v.rel_diff(&(num / den)) < c.pow10(-38));
        assert!(matches!(
            hyp3f2_unit(3, &a, &b, &c.int(-1), &b, &c),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn tricomi_trivial_case() {
        let c = ctx();
        let v = tricomi_psi1(&c.one(), &c.int(2), &c).unwrap();
        assert!((v - 1i64).abs() < c.pow10(-38));
        assert!(matches!(
            tricomi_psi1(&c.zero(), &c.one(), &c),
            Err(Error::Domain(_))
        ));
    }
}
