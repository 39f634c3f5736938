//! Linear combinations Σ c_j(x) ρ_{ν+j}(x) with polynomial coefficients, closed
//! under d/dx (via ρ′_μ = −ρ_{μ−1}) and multiplication by x.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::polynomial::Polynomial;
use crate::real::{PrecisionContext, Real};
use crate::specfun::Macdonald;

#[derive(Clone, Debug)]
pub struct RhoCombination {
    terms: BTreeMap<i64, Polynomial>,
    bits: u32,
}

impl RhoCombination {
    /// ρ_{ν+offset} with unit coefficient.
    pub fn single(offset: i64, bits: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(offset, Polynomial::constant(Real::one(bits)));
        Self { terms, bits }
    }

    fn add_term(&mut self, offset: i64, p: Polynomial) {
        let bits = self.bits;
        let slot = self
            .terms
            .entry(offset)
            .or_insert_with(|| Polynomial::zero(bits));
        *slot = &*slot + &p;
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self {
            terms: BTreeMap::new(),
            bits: self.bits,
        };
        for (&off, c) in &self.terms {
            out.add_term(off, c.derivative());
            out.add_term(off - 1, c.scale(&Real::from_i64(-1, self.bits)));
        }
        out
    }

    pub fn times_x(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&o, c)| (o, c.shift(1))).collect(),
            bits: self.bits,
        }
    }

    pub fn scale(&self, s: &Real) -> Self {
        Self {
            terms: self.terms.iter().map(|(&o, c)| (o, c.scale(s))).collect(),
            bits: self.bits,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&o, c) in &other.terms {
            out.add_term(o, c.clone());
        }
        out
    }

    /// Value at x for base order ν, with the largest single term magnitude.
    pub fn eval(&self, nu: &Real, x: &Real, ctx: &PrecisionContext) -> Result<(Real, Real)> {
        let mut sum = ctx.zero();
        let mut scale = ctx.zero();
        for (&off, c) in &self.terms {
            let r = Macdonald::new(&(nu + off), ctx)?.rho(x)?;
            let t = c.eval(x) * r;
            scale = scale.max(t.abs());
            sum += t;
        }
        Ok((sum, scale))
    }
}

/// θ = xDx applied to a polynomial.
pub fn theta(p: &Polynomial) -> Polynomial {
    p.shift(1).derivative().shift(1)
}

/// β = DxD applied to a ρ-combination.
pub fn beta(r: &RhoCombination) -> RhoCombination {
    r.derivative().times_x().derivative()
}
