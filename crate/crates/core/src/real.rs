//! Arbitrary-precision scalar and the precision context threaded through
//! every computation.
//!
//! [`Real`] wraps an MPFR float. Binary operations between two `Real`s are
//! carried out at the larger of the two precisions, so mixing a high-precision
//! intermediate with a context-precision constant never silently truncates.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// Smallest supported decimal precision.
pub const MIN_DIGITS: u32 = 16;

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Binary precision carrying `digits` decimal digits.
pub fn digits_to_bits(digits: u32) -> u32 {
    (f64::from(digits) * LOG2_10).ceil() as u32 + 4
}

/// Decimal digits representable in `bits` of mantissa.
pub fn bits_to_digits(bits: u32) -> u32 {
    (f64::from(bits.saturating_sub(4)) / LOG2_10).floor() as u32
}

#[derive(Clone, Debug)]
pub struct Real(Float);

impl Real {
    pub fn from_float(f: Float) -> Self {
        Real(f)
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn zero(bits: u32) -> Self {
        Real(Float::with_val(bits, 0))
    }

    pub fn one(bits: u32) -> Self {
        Real(Float::with_val(bits, 1))
    }

    pub fn from_i64(v: i64, bits: u32) -> Self {
        Real(Float::with_val(bits, v))
    }

    pub fn from_u64(v: u64, bits: u32) -> Self {
        Real(Float::with_val(bits, v))
    }

    /// Exact binary value of `v`; use [`Real::parse`] for decimal literals.
    pub fn from_f64(v: f64, bits: u32) -> Self {
        Real(Float::with_val(bits, v))
    }

    /// Parses a decimal string such as `"0.25"` or `"-1.5e3"` at `bits` precision.
    pub fn parse(s: &str, bits: u32) -> Result<Self> {
        let parsed = Float::parse(s.trim())
            .map_err(|e| Error::Invalid(format!("cannot parse {s:?} as a real number: {e}")))?;
        Ok(Real(Float::with_val(bits, parsed)))
    }

    pub fn pi(bits: u32) -> Self {
        Real(Float::with_val(bits, Constant::Pi))
    }

    pub fn euler_gamma(bits: u32) -> Self {
        Real(Float::with_val(bits, Constant::Euler))
    }

    /// `10^e`.
    pub fn pow10(e: i32, bits: u32) -> Self {
        Real(Float::with_val(bits, Float::i_pow_u(10, e.unsigned_abs()))).pow_sign(e)
    }

    fn pow_sign(self, e: i32) -> Self {
        if e < 0 {
            self.recip()
        } else {
            self
        }
    }

    /// `n!` as an exact-as-possible real.
    pub fn factorial(n: u32, bits: u32) -> Self {
        Real(Float::with_val(bits, Float::factorial(n)))
    }

    pub fn bits(&self) -> u32 {
        self.0.prec()
    }

    pub fn digits(&self) -> u32 {
        bits_to_digits(self.bits())
    }

    /// Rounds (or widens) to `bits` of precision.
    pub fn with_bits(&self, bits: u32) -> Self {
        Real(Float::with_val(bits, &self.0))
    }

    fn unary(&self, f: impl FnOnce(Float) -> Float) -> Self {
        Real(f(self.0.clone()))
    }

    pub fn abs(&self) -> Self {
        self.unary(Float::abs)
    }

    pub fn recip(&self) -> Self {
        self.unary(Float::recip)
    }

    pub fn square(&self) -> Self {
        self.unary(Float::square)
    }

    pub fn sqrt(&self) -> Self {
        self.unary(Float::sqrt)
    }

    pub fn exp(&self) -> Self {
        self.unary(Float::exp)
    }

    pub fn ln(&self) -> Self {
        self.unary(Float::ln)
    }

    pub fn sin(&self) -> Self {
        self.unary(Float::sin)
    }

    pub fn cos(&self) -> Self {
        self.unary(Float::cos)
    }

    pub fn cot(&self) -> Self {
        self.unary(Float::cot)
    }

    pub fn sinh(&self) -> Self {
        self.unary(Float::sinh)
    }

    pub fn cosh(&self) -> Self {
        self.unary(Float::cosh)
    }

    pub fn tanh(&self) -> Self {
        self.unary(Float::tanh)
    }

    pub fn asinh(&self) -> Self {
        self.unary(Float::asinh)
    }

    /// Euler gamma function (MPFR); poles yield infinities, callers check first.
    pub fn gamma_raw(&self) -> Self {
        self.unary(Float::gamma)
    }

    /// Digamma function (MPFR); poles yield infinities, callers check first.
    pub fn digamma_raw(&self) -> Self {
        self.unary(Float::digamma)
    }

    pub fn powi(&self, e: i64) -> Self {
        Real(Float::with_val(self.bits(), (&self.0).pow(e)))
    }

    pub fn pow(&self, e: &Real) -> Self {
        let bits = self.bits().max(e.bits());
        Real(Float::with_val(bits, (&self.0).pow(&e.0)))
    }

    pub fn floor(&self) -> Self {
        self.unary(Float::floor)
    }

    pub fn round(&self) -> Self {
        self.unary(Float::round)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_sign_positive() && !self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Nearest integer, if it fits in `i64`.
    pub fn nearest_i64(&self) -> Option<i64> {
        self.0.to_integer().and_then(|i| i.to_i64())
    }

    /// Distance to the nearest integer.
    pub fn dist_to_integer(&self) -> Real {
        (self - &self.round()).abs()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Real) -> Real {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Decimal string with exactly `digits` significant figures, in
    /// `d.ddd…e±N` form. Deterministic for a fixed value and digit count.
    pub fn to_sig_string(&self, digits: u32) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        let s = self.0.to_string_radix(10, Some(digits.max(1) as usize));
        normalize_exponent(&s)
    }

    /// Base-10 exponent of |x| (floor of log10), or `None` for zero.
    pub fn log10_abs(&self) -> Option<f64> {
        if self.0.is_zero() {
            None
        } else {
            Some(Float::with_val(64, self.0.abs_ref()).log10().to_f64())
        }
    }

    /// Relative difference |a-b| / max(|a|,|b|), or |a-b| when both vanish.
    pub fn rel_diff(&self, other: &Real) -> Real {
        let diff = (self - other).abs();
        let scale = self.abs().max(other.abs());
        if scale.is_zero() {
            diff
        } else {
            diff / scale
        }
    }
}

fn normalize_exponent(s: &str) -> String {
    // rug may print "-24.000" or "1.2340e-1"; rewrite as one leading digit.
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", s),
    };
    let (mant, exp) = match body.find(['e', '@']) {
        Some(pos) => (&body[..pos], body[pos + 1..].parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let point = mant.find('.').unwrap_or(mant.len());
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let lead = digits.find(|c| c != '0').unwrap_or(0);
    let sig = &digits[lead..];
    let exp = exp + point as i64 - 1 - lead as i64;
    let width = digits.len() - lead;
    let sig = if sig.len() < width {
        format!("{sig:0<width$}")
    } else {
        sig.to_string()
    };
    if sig.len() == 1 {
        format!("{sign}{sig}e{exp:+}")
    } else {
        format!("{sign}{}.{}e{exp:+}", &sig[..1], &sig[1..])
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .map(|p| p as u32)
            .unwrap_or_else(|| self.digits());
        f.write_str(&self.to_sig_string(digits))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl PartialEq<i64> for Real {
    fn eq(&self, other: &i64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<i64> for Real {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign:ident, $op:tt) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let bits = self.bits().max(rhs.bits());
                Real(Float::with_val(bits, &self.0 $op &rhs.0))
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self $op &rhs
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                &self $op rhs
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                &self $op &rhs
            }
        }
        impl $trait<i64> for &Real {
            type Output = Real;
            fn $method(self, rhs: i64) -> Real {
                Real(Float::with_val(self.bits(), &self.0 $op rhs))
            }
        }
        impl $trait<i64> for Real {
            type Output = Real;
            fn $method(self, rhs: i64) -> Real {
                &self $op rhs
            }
        }
        impl $trait<&Real> for i64 {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                Real(Float::with_val(rhs.bits(), self $op &rhs.0))
            }
        }
        impl $trait<Real> for i64 {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self $op &rhs
            }
        }
        impl $assign_trait<&Real> for Real {
            fn $assign(&mut self, rhs: &Real) {
                *self = &*self $op rhs;
            }
        }
        impl $assign_trait<Real> for Real {
            fn $assign(&mut self, rhs: Real) {
                *self = &*self $op &rhs;
            }
        }
        impl $assign_trait<i64> for Real {
            fn $assign(&mut self, rhs: i64) {
                *self = &*self $op rhs;
            }
        }
    };
}

real_binop!(Add, add, AddAssign, add_assign, +);
real_binop!(Sub, sub, SubAssign, sub_assign, -);
real_binop!(Mul, mul, MulAssign, mul_assign, *);
real_binop!(Div, div, DivAssign, div_assign, /);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(Float::with_val(self.bits(), -&self.0))
    }
}

impl std::iter::Sum for Real {
    fn sum<I: Iterator<Item = Real>>(iter: I) -> Real {
        let mut acc: Option<Real> = None;
        for x in iter {
            acc = Some(match acc {
                None => x,
                Some(a) => a + x,
            });
        }
        acc.unwrap_or_else(|| Real::zero(64))
    }
}

/// Working precision plus series controls shared by all kernels.
#[derive(Clone, Debug)]
pub struct PrecisionContext {
    digits: u32,
    series_rel_tol: Real,
    max_terms: usize,
}

impl PrecisionContext {
    pub const DEFAULT_MAX_TERMS: usize = 2000;

    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::Invalid(format!(
                "precision must be at least {MIN_DIGITS} digits, got {digits}"
            )));
        }
        let bits = digits_to_bits(digits + 8);
        let series_rel_tol = Real::pow10(-(digits as i32 + 5), bits);
        Ok(Self {
            digits,
            series_rel_tol,
            max_terms: Self::DEFAULT_MAX_TERMS,
        })
    }

    /// Overrides the series controls. `rel_tol` must lie below `10^-digits`.
    pub fn with_series(mut self, rel_tol: Real, max_terms: usize) -> Result<Self> {
        if rel_tol >= Real::pow10(-(self.digits as i32), self.bits()) || !rel_tol.is_positive() {
            return Err(Error::Invalid(format!(
                "series tolerance {} must be positive and below 1e-{}",
                rel_tol.to_sig_string(6),
                self.digits
            )));
        }
        self.series_rel_tol = rel_tol;
        self.max_terms = max_terms.max(1);
        Ok(self)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> u32 {
        digits_to_bits(self.digits)
    }

    pub fn series_rel_tol(&self) -> &Real {
        &self.series_rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    /// Same series policy at a different digit count.
    pub fn with_digits(&self, digits: u32) -> Self {
        let mut ctx = Self::new(digits.max(MIN_DIGITS)).expect("digits clamped to minimum");
        ctx.max_terms = self.max_terms;
        ctx
    }

    pub fn with_extra_digits(&self, extra: u32) -> Self {
        self.with_digits(self.digits + extra)
    }

    pub fn zero(&self) -> Real {
        Real::zero(self.bits())
    }

    pub fn one(&self) -> Real {
        Real::one(self.bits())
    }

    pub fn int(&self, v: i64) -> Real {
        Real::from_i64(v, self.bits())
    }

    /// Exact binary value of `v`.
    pub fn real(&self, v: f64) -> Real {
        Real::from_f64(v, self.bits())
    }

    pub fn parse(&self, s: &str) -> Result<Real> {
        Real::parse(s, self.bits())
    }

    pub fn pi(&self) -> Real {
        Real::pi(self.bits())
    }

    pub fn factorial(&self, n: u32) -> Real {
        Real::factorial(n, self.bits())
    }

    /// `10^-digits`.
    pub fn epsilon(&self) -> Real {
        Real::pow10(-(self.digits as i32), self.bits())
    }

    /// `10^e` at context precision.
    pub fn pow10(&self, e: i32) -> Real {
        Real::pow10(e, self.bits())
    }

    /// Brings `x` to the context precision.
    pub fn lift(&self, x: &Real) -> Real {
        x.with_bits(self.bits())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_precision_uses_the_wider_operand() {
        let a = Real::one(64);
        let b = Real::from_i64(3, 256);
        assert_eq!((&a / &b).bits(), 256);
        assert_eq!((&b / &a).bits(), 256);
    }

    #[test]
    fn context_rejects_low_precision() {
        assert!(PrecisionContext::new(15).is_err());
        assert!(PrecisionContext::new(16).is_ok());
    }

    #[test]
    fn series_tolerance_is_tighter_than_epsilon() {
        let ctx = PrecisionContext::new(30).unwrap();
        assert!(ctx.series_rel_tol() < &ctx.epsilon());
        let loose = ctx.pow10(-29);
        assert!(ctx.clone().with_series(loose, 10).is_err());
    }

    #[test]
    fn sig_string_has_requested_digits() {
        let ctx = PrecisionContext::new(40).unwrap();
        let x = ctx.int(1) / ctx.int(3);
        let s = x.to_sig_string(20);
        assert_eq!(s, "3.3333333333333333333e-1");
        assert_eq!(ctx.int(-24).to_sig_string(5), "-2.4000e+1");
    }

    #[test]
    fn parse_round_trips_decimal_literal() {
        let ctx = PrecisionContext::new(50).unwrap();
        let x = ctx.parse("0.1").unwrap();
        let ten = ctx.int(10);
        assert!(((x * ten) - 1i64).abs() < ctx.epsilon());
    }
}
