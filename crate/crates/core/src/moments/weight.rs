use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{Decay, LeftBehavior, Shape};
use crate::real::{PrecisionContext, Real};
use crate::specfun::Macdonald;

/// ω⁺_ν(x) = e^{−x}ρ_ν(x) or ω⁻_ν(x) = e^{−1/x}x^{−1}ρ_ν(x).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Plus,
    Minus,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Plus => "plus",
            Family::Minus => "minus",
        })
    }
}

#[derive(Clone, Debug)]
pub struct WeightSpec {
    family: Family,
    nu: Real,
}

impl WeightSpec {
    /// Plus needs ν > −1, Minus needs ν > 0.
    pub fn new(family: Family, nu: Real) -> Result<Self> {
        let ok = match family {
            Family::Plus => nu > -1i64,
            Family::Minus => nu.is_positive(),
        };
        if !ok {
            let need = if family == Family::Plus {
                "ν > -1"
            } else {
                "ν > 0"
            };
            return Err(Error::Domain(format!(
                "{family} weight requires {need}, got ν = {}",
                nu.to_sig_string(12)
            )));
        }
        Ok(Self { family, nu })
    }

    pub fn plus(nu: Real) -> Result<Self> {
        Self::new(Family::Plus, nu)
    }

    pub fn minus(nu: Real) -> Result<Self> {
        Self::new(Family::Minus, nu)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn nu(&self) -> &Real {
        &self.nu
    }

    /// Pointwise weight value.
    pub fn weight(&self, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
        let r = Macdonald::new(&self.nu, ctx)?.rho(x)?;
        Ok(self.apply(x, r))
    }

    /// Multiplies ρ_ν(x) by the family's elementary factor.
    pub(crate) fn apply(&self, x: &Real, rho: Real) -> Real {
        match self.family {
            Family::Plus => (-x).exp() * rho,
            Family::Minus => (-(x.recip())).exp() * rho / x,
        }
    }

    /// Endpoint hints for integrands of the form polynomial × weight.
    pub fn shape(&self, ctx: &PrecisionContext) -> Shape {
        match self.family {
            Family::Plus => Shape::new(
                LeftBehavior::Power(ctx.lift(&self.nu).min(ctx.zero())),
                Decay::Exp,
                ctx.one(),
            ),
            Family::Minus => Shape::new(LeftBehavior::ExpInverse, Decay::ExpSqrt, ctx.one()),
        }
    }
}
