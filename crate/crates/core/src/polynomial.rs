//! Dense polynomials over [`Real`] in the monomial basis.

use std::ops::{Add, Mul, Sub};

use crate::real::Real;

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Real>,
}

impl Polynomial {
    /// Builds from coefficients in increasing degree; trailing exact zeros are dropped.
    pub fn new(mut coeffs: Vec<Real>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Real::is_zero) {
            coeffs.pop();
        }
        assert!(
            !coeffs.is_empty(),
            "polynomial needs at least one coefficient"
        );
        Self { coeffs }
    }

    pub fn zero(bits: u32) -> Self {
        Self::new(vec![Real::zero(bits)])
    }

    pub fn constant(c: Real) -> Self {
        Self::new(vec![c])
    }

    /// The monomial c·x^k.
    pub fn monomial(c: Real, k: usize) -> Self {
        let bits = c.bits();
        let mut coeffs = vec![Real::zero(bits); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    /// Coefficient of x^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Real {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Real::zero(self.coeffs[0].bits()))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn leading(&self) -> &Real {
        self.coeffs.last().expect("nonempty")
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Real) -> Real {
        let mut acc = self.leading().clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, s: &Real) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiplies by x^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let bits = self.coeffs[0].bits();
        let mut coeffs = vec![Real::zero(bits); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(self.coeffs[0].bits());
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as i64)
                .collect(),
        )
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> Real {
        self.coeffs
            .iter()
            .map(Real::abs)
            .fold(Real::zero(self.coeffs[0].bits()), Real::max)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let bits = self.coeffs[0].bits().max(rhs.coeffs[0].bits());
        let mut out = vec![Real::zero(bits); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Real {
        Real::from_i64(v, 128)
    }

    #[test]
    fn arithmetic_and_horner() {
        let p = Polynomial::new(vec![r(1), r(-2), r(1)]);
        let q = Polynomial::new(vec![r(-1), r(1)]);
        assert_eq!(p.eval(&r(3)), r(4));
        let prod = &p * &q;
        assert_eq!(prod.degree(), 3);
        assert_eq!(prod.eval(&r(3)), r(8));
        assert_eq!((&p - &p).degree(), 0);
        assert!((&p - &p).is_zero());
        assert_eq!(p.derivative().coeffs(), &[r(-2), r(2)]);
        assert_eq!(q.shift(2).coeffs(), &[r(0), r(0), r(-1), r(1)]);
        assert_eq!(Polynomial::monomial(r(5), 2).eval(&r(2)), r(20));
    }
}
