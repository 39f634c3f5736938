use crate::error::{Error, Result};
use crate::quadrature::moment_oracle;
use crate::real::{PrecisionContext, Real};
use crate::specfun::{digamma, gamma, hyp0f2, pochhammer, tricomi_psi1, trigamma, SeriesSum};

use super::weight::WeightSpec;

/// Below this distance from an integer the non-integer formulas are replaced
/// by direct quadrature.
pub const INTEGER_GUARD: f64 = 1e-3;

/// Which representation produced a Minus-family moment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinusBranch {
    /// Finite gamma sum, digamma series and ₀F₂ term (ν ∉ ℕ).
    NonInteger,
    /// Logarithmic limit with ψ and ψ′ series (ν ∈ ℕ).
    Integer,
    /// Direct quadrature of x^k ω⁻_ν.
    Oracle,
}

/// ∫ x^μ e^{−x}ρ_ν(x) dx = Γ(μ+ν+1) Γ(μ+1) Ψ(1+μ+ν, 1+ν; 1).
pub fn moment_plus(nu: &Real, mu: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let a = nu + mu + 1i64;
    if mu <= &-1i64 || !a.is_positive() {
        return Err(Error::Domain(format!(
            "moment needs μ > -1 and μ+ν > -1 (ν = {}, μ = {})",
            nu.to_sig_string(10),
            mu.to_sig_string(10)
        )));
    }
    let work = ctx.with_extra_digits(4);
    let psi = tricomi_psi1(&a, &(nu + 1i64), &work)?;
    let v = gamma(&a, &work)? * gamma(&(mu + 1i64), &work)? * psi;
    Ok(ctx.lift(&v))
}

/// Branch chosen for ν: exact integers use the logarithmic form, points
/// within the guard band use quadrature.
pub fn minus_branch(nu: &Real) -> MinusBranch {
    if nu.is_integer() {
        MinusBranch::Integer
    } else if nu.dist_to_integer().to_f64() < INTEGER_GUARD {
        MinusBranch::Oracle
    } else {
        MinusBranch::NonInteger
    }
}

/// k-th moment of e^{−1/x}x^{−1}ρ_ν(x), ν > 0.
pub fn moment_minus(nu: &Real, k: u32, ctx: &PrecisionContext) -> Result<Real> {
    moment_minus_with(nu, k, minus_branch(nu), ctx)
}

/// As [`moment_minus`] with the representation forced.
pub fn moment_minus_with(
    nu: &Real,
    k: u32,
    branch: MinusBranch,
    ctx: &PrecisionContext,
) -> Result<Real> {
    if !nu.is_positive() {
        return Err(Error::Domain(format!(
            "ω⁻ moments need ν > 0, got {}",
            nu.to_sig_string(10)
        )));
    }
    match branch {
        MinusBranch::NonInteger => minus_noninteger(nu, k, ctx),
        MinusBranch::Integer => {
            let l = nu
                .nearest_i64()
                .filter(|_| nu.is_integer())
                .ok_or_else(|| {
                    Error::Domain(format!(
                        "integer branch needs integer ν, got {}",
                        nu.to_sig_string(10)
                    ))
                })?;
            minus_integer(l as u32, k, ctx)
        }
        MinusBranch::Oracle => moment_oracle(&WeightSpec::minus(nu.clone())?, k, ctx),
    }
}

/// Extra digits needed to absorb the Γ(−ν) cancellation near an integer.
fn cancellation_digits(nu: &Real) -> u32 {
    let lost = -nu.dist_to_integer().log10_abs().unwrap_or(0.0);
    lost.max(0.0).ceil() as u32 + 10
}

fn minus_noninteger(nu: &Real, s: u32, ctx: &PrecisionContext) -> Result<Real> {
    if nu.is_integer() {
        return Err(Error::Pole(format!(
            "non-integer formula at integer ν = {}",
            nu.to_sig_string(10)
        )));
    }
    let work = ctx.with_extra_digits(cancellation_digits(nu));
    let bits = work.bits();
    let nu = work.lift(nu);
    let s_i = i64::from(s);

    // Σ_{r<s} (−1)^r (s−1−r)! Γ(s−r+ν) / r!
    let mut finite = work.zero();
    for r in 0..s {
        let t = work.factorial(s - 1 - r) * gamma(&(&nu + (s_i - i64::from(r))), &work)?
            / work.factorial(r);
        if r % 2 == 0 {
            finite += t;
        } else {
            finite -= t;
        }
    }

    // Γ(ν) Σ_r (−1)^r [ψ(r+1)+ψ(r+1+s)+ψ(r+1−ν) − π cot πν] / (r!(r+s)!(1−ν)_r)
    let pi = work.pi();
    let shift = &pi * (&pi * &nu).cot();
    let mut psi_a = digamma(&work.one(), &work)?;
    let mut psi_b = digamma(&work.int(s_i + 1), &work)?;
    let mut psi_c = digamma(&(1i64 - &nu), &work)?;
    let mut base = work.factorial(s).recip();
    let mut sum = SeriesSum::new(&work, bits);
    let mut r = 0i64;
    while !sum.add(&base * (&psi_a + &psi_b + &psi_c - &shift))? {
        psi_a += Real::from_i64(r + 1, bits).recip();
        psi_b += Real::from_i64(r + 1 + s_i, bits).recip();
        psi_c += (-&nu + (r + 1)).recip();
        base = -(base / ((r + 1) * (r + 1 + s_i) * (-&nu + (r + 1))));
        r += 1;
    }
    let series = gamma(&nu, &work)? * sum.value();

    // Γ(−ν)² / (1+ν)_s · ₀F₂(;1+ν+s, 1+ν; −1)
    let g = gamma(&-&nu, &work)?;
    let tail = g.square() / pochhammer(&(&nu + 1i64), s, &work)
        * hyp0f2(&(&nu + (1 + s_i)), &(&nu + 1i64), &work.int(-1), &work)?;

    let signed = if s.is_multiple_of(2) {
        series + tail
    } else {
        -(series + tail)
    };
    Ok(ctx.lift(&(finite + signed)))
}

fn minus_integer(l: u32, s: u32, ctx: &PrecisionContext) -> Result<Real> {
    let work = ctx.with_extra_digits(10);
    let bits = work.bits();
    let (l_i, s_i) = (i64::from(l), i64::from(s));
    let fact = |n: i64| work.factorial(n as u32);

    // Σ_{r<s} (−1)^r (s−1−r)! (s−r+l−1)! / r!
    let mut finite = work.zero();
    for r in 0..s_i {
        let t = fact(s_i - 1 - r) * fact(s_i - r + l_i - 1) / fact(r);
        if r % 2 == 0 {
            finite += t;
        } else {
            finite -= t;
        }
    }

    let psi = |n: i64| digamma(&work.int(n), &work);
    // Σ_{r<l} (l−r−1)! [ψ(r+1)+ψ(r+1+s)+ψ(l−r)] / (r!(s+r)!)
    let mut head = work.zero();
    for r in 0..l_i {
        let bracket = psi(r + 1)? + psi(r + 1 + s_i)? + psi(l_i - r)?;
        head += fact(l_i - r - 1) * bracket / (fact(r) * fact(s_i + r));
    }

    // ½ Σ_r (−1)^r ([Σψ]² − Σψ′) / (r!(l+r+s)!(l+r)!)
    let mut p = [psi(1)?, psi(1 + l_i)?, psi(1 + l_i + s_i)?];
    let mut q = [
        trigamma(&work.one(), &work)?,
        trigamma(&work.int(1 + l_i), &work)?,
        trigamma(&work.int(1 + l_i + s_i), &work)?,
    ];
    let offsets = [0i64, l_i, l_i + s_i];
    let mut base = (fact(l_i + s_i) * fact(l_i)).recip();
    let mut sum = SeriesSum::new(&work, bits);
    let mut r = 0i64;
    loop {
        let ps = &p[0] + &p[1] + &p[2];
        let qs = &q[0] + &q[1] + &q[2];
        if sum.add(&base * (ps.square() - qs))? {
            break;
        }
        for (i, off) in offsets.iter().enumerate() {
            let x = Real::from_i64(r + 1 + off, bits);
            p[i] += x.recip();
            q[i] -= x.square().recip();
        }
        base = -(base / ((r + 1) * (l_i + r + 1 + s_i) * (l_i + r + 1)));
        r += 1;
    }
    let bracket = head + sum.value() / 2i64;

    let pi = work.pi();
    let tail = pi.square() / (fact(l_i + s_i) * fact(l_i) * 2i64)
        * hyp0f2(
            &work.int(1 + l_i + s_i),
            &work.int(1 + l_i),
            &work.int(-1),
            &work,
        )?;

    let signed = bracket + tail;
    let v = if s.is_multiple_of(2) {
        finite + signed
    } else {
        finite - signed
    };
    Ok(ctx.lift(&v))
}

/// Real-order moment ∫ x^μ ω⁻_ν(x) dx from the three-₀F₂ representation.
/// Needs μ, ν and μ+ν off the integers.
pub fn moment_minus_real(nu: &Real, mu: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let sum = nu + mu;
    for (v, name) in [(nu, "ν"), (mu, "μ"), (&sum, "μ+ν")] {
        if v.is_integer() || v.dist_to_integer().to_f64() < INTEGER_GUARD {
            return Err(Error::Domain(format!(
                "{name} = {} is (near) an integer",
                v.to_sig_string(10)
            )));
        }
    }
    let extra = [nu, mu, &sum]
        .iter()
        .map(|v| cancellation_digits(v))
        .max()
        .unwrap_or(10);
    let work = ctx.with_extra_digits(extra);
    let (nu, mu) = (work.lift(nu), work.lift(mu));
    let m1 = work.int(-1);
    let a = gamma(&mu, &work)?
        * gamma(&(&mu + &nu), &work)?
        * hyp0f2(&(1i64 - &mu - &nu), &(1i64 - &mu), &m1, &work)?;
    let b = gamma(&-&nu, &work)?
        * gamma(&(-&mu - &nu), &work)?
        * hyp0f2(&(&mu + &nu + 1i64), &(&nu + 1i64), &m1, &work)?;
    let c = gamma(&nu, &work)?
        * gamma(&-&mu, &work)?
        * hyp0f2(&(&mu + 1i64), &(1i64 - &nu), &m1, &work)?;
    Ok(ctx.lift(&(a + b + c)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plus_domain() {
        let c = PrecisionContext::new(20).unwrap();
        assert!(matches!(
            moment_plus(&c.zero(), &c.int(-1), &c),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            moment_plus(&c.real(-0.5), &c.real(-0.6), &c),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn minus_branch_selection() {
        let c = PrecisionContext::new(20).unwrap();
        assert_eq!(minus_branch(&c.int(2)), MinusBranch::Integer);
        assert_eq!(minus_branch(&c.real(2.0005)), MinusBranch::Oracle);
        assert_eq!(minus_branch(&c.real(2.5)), MinusBranch::NonInteger);
        assert!(matches!(
            moment_minus(&c.zero(), 0, &c),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn minus_closed_forms_match_quadrature() {
        let c = PrecisionContext::new(30).unwrap();
        for (nu, k) in [(0.5, 0), (2.5, 3), (1.0, 0), (1.0, 1), (2.0, 3)] {
            let nu = c.real(nu);
            let closed = moment_minus(&nu, k, &c).unwrap();
            let oracle = moment_minus_with(&nu, k, MinusBranch::Oracle, &c).unwrap();
            assert!(
                closed.rel_diff(&oracle) < c.pow10(-27),
                "ν={nu} k={k}: {closed} vs {oracle}"
            );
        }
    }

    #[test]
    fn real_order_representation() {
        let c = PrecisionContext::new(30).unwrap();
        let nu = c.real(0.5);
        let v = moment_minus_real(&nu, &c.real(1.25), &c).unwrap();
        let w = crate::moments::WeightSpec::minus(nu.clone()).unwrap();
        let shape = crate::quadrature::Shape::new(
            crate::quadrature::LeftBehavior::ExpInverse,
            crate::quadrature::Decay::ExpSqrt,
            c.one(),
        );
        let q = crate::quadrature::integrate_many(
            &shape,
            1,
            |x| vec![w.weight(x, &c).unwrap() * x.pow(&c.real(1.25))],
            &c,
        )
        .unwrap();
        assert!(
            v.rel_diff(&q[0].value) < c.pow10(-26),
            "{v} vs {}",
            q[0].value
        );
        assert!(moment_minus_real(&nu, &c.int(2), &c).is_err());
    }
}
