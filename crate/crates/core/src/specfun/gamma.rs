use crate::error::{Error, Result};
use crate::real::{PrecisionContext, Real};

fn check_pole(x: &Real, what: &str, ctx: &PrecisionContext) -> Result<()> {
    if !x.is_positive() && x.dist_to_integer() < ctx.epsilon() {
        return Err(Error::Pole(format!(
            "{what} at non-positive integer {}",
            x.to_sig_string(12)
        )));
    }
    Ok(())
}

pub fn gamma(x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    check_pole(x, "gamma", ctx)?;
    Ok(ctx.lift(x).gamma_raw())
}

pub fn digamma(x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    check_pole(x, "digamma", ctx)?;
    Ok(ctx.lift(x).digamma_raw())
}

/// ψ′(x), by upward shift into the asymptotic range and reflection for x < ½.
pub fn trigamma(x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    check_pole(x, "trigamma", ctx)?;
    let bits = ctx.bits() + 16;
    let x = x.with_bits(bits);
    if x < Real::from_f64(0.5, bits) {
        // ψ′(1−x) + ψ′(x) = π² / sin²(πx)
        let pi = Real::pi(bits);
        let s = (&pi * &x).sin();
        let rhs = pi.square() / s.square();
        let other = trigamma_positive(&(1i64 - &x), bits);
        return Ok(ctx.lift(&(rhs - other)));
    }
    Ok(ctx.lift(&trigamma_positive(&x, bits)))
}

fn trigamma_positive(x: &Real, bits: u32) -> Real {
    // Asymptotic terms B_{2k}/y^{2k+1} shrink like (2k)!/(2πy)^{2k}; a shift
    // to y ≳ bits/8 keeps the smallest term below 2^-bits.
    let threshold = f64::from(bits) / 8.0 + 10.0;
    let mut acc = Real::zero(bits);
    let mut y = x.clone();
    while y.to_f64() < threshold {
        acc += y.square().recip();
        y += 1i64;
    }
    let inv = y.recip();
    let inv2 = inv.square();
    let mut tail = &inv + &inv2 / 2i64;
    let eps = Real::from_i64(2, bits).powi(-i64::from(bits));
    let two_pi = Real::pi(bits) * 2i64;
    // (2k)! / (2π)^{2k}, updated incrementally
    let mut ratio = Real::one(bits);
    let mut ypow = inv * &inv2;
    for k in 1..=(bits as i64) {
        ratio = ratio * ((2 * k - 1) * (2 * k)) / two_pi.square();
        let zeta = Real::from_float(rug::Float::with_val(bits, rug::Float::zeta_u(2 * k as u32)));
        let b2k = &ratio * zeta * 2i64;
        let term = if k % 2 == 1 {
            &b2k * &ypow
        } else {
            -(&b2k * &ypow)
        };
        tail += &term;
        if term.abs() < &eps * tail.abs() {
            break;
        }
        ypow *= &inv2;
    }
    acc + tail
}

/// Rising factorial (a)_k; 1 for k = 0.
pub fn pochhammer(a: &Real, k: u32, ctx: &PrecisionContext) -> Real {
    let mut p = ctx.one();
    let mut t = ctx.lift(a);
    for _ in 0..k {
        p *= &t;
        t += 1i64;
    }
    p
}
