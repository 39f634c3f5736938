use crate::error::{Error, Result};
use crate::quadrature::{integrate_semiaxis, Decay, IntegrandSpec, LeftBehavior};
use crate::real::{PrecisionContext, Real};

use super::gamma::gamma;
use super::hypergeometric::SeriesSum;

const GUARD_BITS: u32 = 24;
/// Below this argument K_ν comes from its ascending series.
const SERIES_LIMIT: f64 = 2.0;

/// How ρ_ν is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RhoPath {
    /// 2x^{ν/2} K_ν(2√x).
    #[default]
    Bessel,
    /// ∫₀^∞ t^{ν−1} e^{−t−x/t} dt by quadrature.
    Laplace,
}

#[derive(Clone, Debug)]
enum Order {
    Integer(u32),
    Fractional { extra_bits: u32 },
}

/// K_ν and ρ_ν for one fixed order, reusable across many arguments.
#[derive(Clone, Debug)]
pub struct Macdonald {
    nu: Real,
    abs_nu: Real,
    order: Order,
    ctx: PrecisionContext,
    bits: u32,
}

impl Macdonald {
    pub fn new(nu: &Real, ctx: &PrecisionContext) -> Result<Self> {
        let bits = ctx.bits() + GUARD_BITS;
        let nu = nu.with_bits(bits);
        let abs_nu = nu.abs();
        if abs_nu > 200i64 {
            return Err(Error::Domain(format!(
                "order {} is out of range",
                nu.to_sig_string(8)
            )));
        }
        let dist = abs_nu.dist_to_integer();
        let tiny = Real::pow10(-2 * ctx.digits() as i32, bits);
        let order = if dist < tiny {
            Order::Integer(abs_nu.nearest_i64().unwrap_or(0) as u32)
        } else {
            // The reflection form loses about -log10(dist) digits.
            let lost = -dist.log10_abs().unwrap_or(0.0);
            Order::Fractional {
                extra_bits: (lost.max(0.0) * std::f64::consts::LOG2_10).ceil() as u32 + 8,
            }
        };
        Ok(Self {
            nu,
            abs_nu,
            order,
            ctx: ctx.clone(),
            bits,
        })
    }

    pub fn nu(&self) -> &Real {
        &self.nu
    }

    /// K_ν(z) for z > 0.
    pub fn k(&self, z: &Real) -> Result<Real> {
        Ok(self.ctx.lift(&self.k_work(z)?))
    }

    fn k_work(&self, z: &Real) -> Result<Real> {
        if !z.is_positive() {
            return Err(Error::Domain(format!(
                "K_ν(z) needs z > 0, got {}",
                z.to_sig_string(12)
            )));
        }
        if z.to_f64() < SERIES_LIMIT {
            match self.order {
                Order::Integer(n) => self.k_series_integer(n, z),
                Order::Fractional { extra_bits } => self.k_series_fractional(z, extra_bits),
            }
        } else {
            Ok(self.k_integral(z))
        }
    }

    /// ρ_ν(x) = 2x^{ν/2} K_ν(2√x).
    pub fn rho(&self, x: &Real) -> Result<Real> {
        if !x.is_positive() {
            return Err(Error::Domain(format!(
                "ρ_ν(x) needs x > 0, got {}",
                x.to_sig_string(12)
            )));
        }
        let x = x.with_bits(self.bits);
        let k = self.k_work(&(x.sqrt() * 2i64))?;
        let scale = x.pow(&(&self.nu / 2i64));
        Ok(self.ctx.lift(&(k * scale * 2i64)))
    }

    pub fn rho_path(&self, x: &Real, path: RhoPath) -> Result<Real> {
        match path {
            RhoPath::Bessel => self.rho(x),
            RhoPath::Laplace => rho_laplace(&self.nu, x, &self.ctx),
        }
    }

    fn k_series_fractional(&self, z: &Real, extra_bits: u32) -> Result<Real> {
        let bits = self.bits + extra_bits;
        let ctx = self.ctx.with_digits(crate::real::bits_to_digits(bits));
        let nu = self.abs_nu.with_bits(bits);
        let z = z.with_bits(bits);
        let half = &z / 2i64;
        let q = half.square();
        let series_i = |mu: &Real| -> Result<Real> {
            let mut sum = SeriesSum::new(&ctx, bits);
            let mut term = gamma(&(mu + 1i64), &ctx)?.recip();
            let mut k = 0i64;
            while !sum.add(term.clone())? {
                k += 1;
                term = term * &q / ((mu + k) * k);
            }
            Ok(sum.value() * half.pow(mu))
        };
        let i_minus = series_i(&-&nu)?;
        let i_plus = series_i(&nu)?;
        let pi = Real::pi(bits);
        let s = (&pi * &nu).sin();
        Ok(pi / (s * 2i64) * (i_minus - i_plus))
    }

    fn k_series_integer(&self, n: u32, z: &Real) -> Result<Real> {
        let bits = self.bits + 16;
        let ctx = self.ctx.with_digits(crate::real::bits_to_digits(bits));
        let z = z.with_bits(bits);
        let half = &z / 2i64;
        let q = half.square();
        let n_i = i64::from(n);

        // ½(z/2)^{-n} Σ_{k<n} (n−k−1)!/k! (−q)^k
        let mut finite = Real::zero(bits);
        let mut term = Real::factorial(n.saturating_sub(1), bits);
        for k in 0..n_i {
            finite += &term;
            if k + 1 < n_i {
                term = -(term * &q) / ((k + 1) * (n_i - k - 1));
            }
        }
        let finite = if n == 0 {
            Real::zero(bits)
        } else {
            finite * half.powi(-n_i) / 2i64
        };

        // Σ q^k/(k!(n+k)!) and Σ [ψ(k+1)+ψ(n+k+1)] q^k/(k!(n+k)!)
        let mut plain = SeriesSum::new(&ctx, bits);
        let mut psi_sum = SeriesSum::new(&ctx, bits);
        let gamma_e = Real::euler_gamma(bits);
        let mut psi_a = -&gamma_e;
        let mut psi_b = -gamma_e + harmonic(n, bits);
        let mut base = Real::factorial(n, bits).recip();
        let mut k = 0i64;
        loop {
            let done_a = plain.add(base.clone())?;
            let done_b = psi_sum.add(&base * (&psi_a + &psi_b))?;
            if done_a && done_b {
                break;
            }
            k += 1;
            psi_a += Real::from_i64(k, bits).recip();
            psi_b += Real::from_i64(n_i + k, bits).recip();
            base = base * &q / (k * (n_i + k));
        }
        let hn = half.powi(n_i);
        let i_n = plain.value() * &hn;
        let sign = if n.is_multiple_of(2) { 1i64 } else { -1i64 };
        let log_part = -(half.ln() * i_n) * sign;
        let psi_part = psi_sum.value() * hn * sign / 2i64;
        Ok(finite + log_part + psi_part)
    }

    /// Trapezoidal rule for ∫₀^∞ e^{−z cosh t} cosh(νt) dt.
    fn k_integral(&self, z: &Real) -> Real {
        let bits = self.bits;
        let z = z.with_bits(bits);
        let zf = z.to_f64();
        let budget = f64::from(bits) * std::f64::consts::LN_2 + 20.0;
        let pi = std::f64::consts::PI;
        // Step from the strip of analyticity: the integrand grows by e^{z} on
        // Im t = π/2, or by e^{d²/2} at Im t = d/√z after rescaling.
        let h_strip = pi * pi / (budget + zf);
        let h_scaled = pi * (2.0 / budget).sqrt() / zf.sqrt();
        let h_f = if 2.0 * pi / (h_scaled * zf) < pi / 2.0 {
            h_strip.max(h_scaled)
        } else {
            h_strip
        } * 0.95;
        let h = Real::from_f64(h_f, bits);
        let ch = h.cosh();
        let cnh = (&h * &self.abs_nu).cosh();
        // cosh(kh) − 1 and cosh(kνh) by Chebyshev-type recurrences.
        let one = Real::one(bits);
        let (mut c_prev, mut c_cur) = (ch.clone(), one.clone());
        let (mut n_prev, mut n_cur) = (cnh.clone(), one.clone());
        let nu_f = self.abs_nu.to_f64();
        let mut sum = Real::zero(bits);
        let mut k = 0i64;
        loop {
            let cm1 = if k == 0 {
                Real::zero(bits)
            } else {
                &c_cur - 1i64
            };
            let expo = zf * cm1.to_f64() - nu_f * h_f * k as f64;
            let term = (-(&z * &cm1)).exp() * &n_cur;
            sum += if k == 0 { term / 2i64 } else { term };
            if k > 0 && expo > budget {
                break;
            }
            let c_next = &ch * &c_cur * 2i64 - &c_prev;
            c_prev = std::mem::replace(&mut c_cur, c_next);
            let n_next = &cnh * &n_cur * 2i64 - &n_prev;
            n_prev = std::mem::replace(&mut n_cur, n_next);
            k += 1;
        }
        sum * h * (-z).exp()
    }
}

fn harmonic(n: u32, bits: u32) -> Real {
    (1..=i64::from(n))
        .map(|k| Real::from_i64(k, bits).recip())
        .fold(Real::zero(bits), |a, b| a + b)
}

/// K_ν(z).
pub fn bessel_k(nu: &Real, z: &Real, ctx: &PrecisionContext) -> Result<Real> {
    Macdonald::new(nu, ctx)?.k(z)
}

/// ρ_ν(x) = 2x^{ν/2} K_ν(2√x).
pub fn rho(nu: &Real, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    Macdonald::new(nu, ctx)?.rho(x)
}

/// ρ_ν(x) from its Laplace integral ∫₀^∞ t^{ν−1} e^{−t−x/t} dt.
pub fn rho_laplace(nu: &Real, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if !x.is_positive() {
        return Err(Error::Domain(format!(
            "ρ_ν(x) needs x > 0, got {}",
            x.to_sig_string(12)
        )));
    }
    let work = ctx.with_extra_digits(6);
    let nu = work.lift(nu);
    let x = work.lift(x);
    let nm1 = &nu - 1i64;
    let spec = IntegrandSpec {
        f: Box::new(|t: &Real| t.pow(&nm1) * (-(t + &x / t)).exp()),
        left: LeftBehavior::ExpInverse,
        decay: Decay::Exp,
        split_point: x.sqrt(),
    };
    Ok(ctx.lift(&integrate_semiaxis(&spec, &work)?.value))
}
