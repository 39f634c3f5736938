//! Orthonormal polynomial sequences for the two weights: construction by the
//! explicit Cramer formulas or by Cholesky factorization of the moment matrix,
//! recurrence coefficients, evaluation and Laguerre-type expansions.

mod expansion;
pub mod linalg;
mod recurrence;
mod routes;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::moments::{MomentTable, WeightSpec};
use crate::polynomial::Polynomial;
use crate::real::{PrecisionContext, Real};

pub use expansion::{
    associated_q, generating_partial_sum, laguerre_expansion, laguerre_series, GeneratingSum,
};
pub use recurrence::{
    eval, eval_recurrence, jacobi_zeros, recurrence_coeffs, zeros_interlace, Recurrence,
};
pub use routes::{
    build_moment_route, build_p_paper, build_paper_route, build_q_paper, determinants, Determinants,
};

/// Guard digits on top of the degree-dependent escalation.
pub const GUARD_DIGITS: u32 = 10;
/// Digits lost per degree in the Hankel systems.
pub const DIGITS_PER_DEGREE: u32 = 10;

/// Working precision used internally to deliver `digits` at degree `n`.
pub fn working_digits(digits: u32, n: usize) -> u32 {
    digits + DIGITS_PER_DEGREE * n as u32 + GUARD_DIGITS
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    PaperCramer,
    MomentGram,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::PaperCramer => "paper",
            Route::MomentGram => "moment",
        })
    }
}

/// Orthonormal polynomials p_0..p_n with positive leading coefficients.
#[derive(Clone, Debug)]
pub struct OrthoBasis {
    pub spec: WeightSpec,
    /// Coefficients at working precision.
    pub polys: Vec<Polynomial>,
    /// A_1..A_n.
    pub a: Vec<Real>,
    /// B_0..B_{n−1}.
    pub b: Vec<Real>,
    pub route: Route,
    pub table: Arc<MomentTable>,
    /// Requested output precision.
    pub digits: u32,
    pub work: PrecisionContext,
}

impl OrthoBasis {
    pub(crate) fn assemble(
        spec: &WeightSpec,
        polys: Vec<Polynomial>,
        route: Route,
        table: Arc<MomentTable>,
        digits: u32,
        work: PrecisionContext,
    ) -> Self {
        let (a, b) = recurrence::coefficient_form(&polys);
        Self {
            spec: spec.clone(),
            polys,
            a,
            b,
            route,
            table,
            digits,
            work,
        }
    }

    pub fn degree(&self) -> usize {
        self.polys.len() - 1
    }

    /// Leading coefficient a_k of p_k.
    pub fn leading(&self, k: usize) -> &Real {
        self.polys[k].leading()
    }

    /// Sub-leading coefficient b_k = a_{k,k−1} (zero for k = 0).
    pub fn subleading(&self, k: usize) -> Real {
        if k == 0 {
            self.work.zero()
        } else {
            self.polys[k].coeff(k - 1)
        }
    }

    /// Largest relative coefficient discrepancy against another basis.
    pub fn max_discrepancy(&self, other: &OrthoBasis) -> Real {
        let mut worst = self.work.zero();
        for (p, q) in self.polys.iter().zip(&other.polys) {
            let scale = p.max_abs().max(q.max_abs());
            for k in 0..=p.degree().max(q.degree()) {
                let d = (p.coeff(k) - q.coeff(k)).abs() / &scale;
                worst = worst.max(d);
            }
        }
        worst
    }

    /// JSON object `{family, nu, n, digits, route, coeffs, A, B}` with decimal strings.
    pub fn to_json(&self) -> Value {
        let d = self.digits;
        let coeffs: Vec<Vec<String>> = self
            .polys
            .iter()
            .map(|p| p.coeffs().iter().map(|c| c.to_sig_string(d)).collect())
            .collect();
        json!({
            "family": self.spec.family().to_string(),
            "nu": self.spec.nu().to_sig_string(d),
            "n": self.degree(),
            "digits": d,
            "route": self.route.to_string(),
            "coeffs": coeffs,
            "A": self.a.iter().map(|v| v.to_sig_string(d)).collect::<Vec<_>>(),
            "B": self.b.iter().map(|v| v.to_sig_string(d)).collect::<Vec<_>>(),
        })
    }
}

/// A way of constructing an [`OrthoBasis`].
pub trait BasisConstruction: Send + Sync {
    fn name(&self) -> &'static str;
    fn route(&self) -> Route;
    fn build(&self, spec: &WeightSpec, n: usize, ctx: &PrecisionContext) -> Result<OrthoBasis>;
}

struct PaperConstruction;
struct MomentConstruction;

impl BasisConstruction for PaperConstruction {
    fn name(&self) -> &'static str {
        "paper"
    }

    fn route(&self) -> Route {
        Route::PaperCramer
    }

    fn build(&self, spec: &WeightSpec, n: usize, ctx: &PrecisionContext) -> Result<OrthoBasis> {
        build_paper_route(spec, n, ctx)
    }
}

impl BasisConstruction for MomentConstruction {
    fn name(&self) -> &'static str {
        "moment"
    }

    fn route(&self) -> Route {
        Route::MomentGram
    }

    fn build(&self, spec: &WeightSpec, n: usize, ctx: &PrecisionContext) -> Result<OrthoBasis> {
        build_moment_route(spec, n, ctx)
    }
}

/// Constructions selectable by name.
pub struct Registry {
    entries: BTreeMap<&'static str, Box<dyn BasisConstruction>>,
}

impl Registry {
    pub fn empty() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, c: Box<dyn BasisConstruction>) {
        self.entries.insert(c.name(), c);
    }

    pub fn get(&self, name: &str) -> Result<&dyn BasisConstruction> {
        self.entries.get(name).map(|b| b.as_ref()).ok_or_else(|| {
            Error::Invalid(format!(
                "unknown construction '{name}' (known: {})",
                self.names().join(", ")
            ))
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.keys().copied().collect()
    }
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(PaperConstruction));
        r.register(Box::new(MomentConstruction));
        r
    }
}
