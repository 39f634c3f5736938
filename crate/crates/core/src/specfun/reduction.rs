use crate::polynomial::Polynomial;
use crate::real::{PrecisionContext, Real};

use super::gamma::pochhammer;

/// x^{j/2} r_j(2√x; ν) as a polynomial in x:
/// (−1)^j Σ_{i≤j/2} (ν+i−j+1)_{j−2i} (j−2i+1)_i x^i / i!.
fn scaled_r(j: u32, nu: &Real, ctx: &PrecisionContext) -> Polynomial {
    let j_i = i64::from(j);
    let coeffs = (0..=j / 2)
        .map(|i| {
            let i_i = i64::from(i);
            let a = pochhammer(&(nu + (i_i - j_i + 1)), j - 2 * i, ctx);
            let b = pochhammer(&ctx.int(j_i - 2 * i_i + 1), i, ctx);
            let v = a * b / ctx.factorial(i);
            if j % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect();
    Polynomial::new(coeffs)
}

/// Polynomials (p, q) with x^j ρ_{ν−j}(x) = p(x) ρ_ν(x) + q(x) ρ_{ν+1}(x).
pub fn macdonald_reduction(j: u32, nu: &Real, ctx: &PrecisionContext) -> (Polynomial, Polynomial) {
    let nu = ctx.lift(nu);
    let p = scaled_r(j, &nu, ctx);
    let q = if j == 0 {
        Polynomial::zero(ctx.bits())
    } else {
        scaled_r(j - 1, &(&nu - 1i64), ctx)
    };
    (p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::Macdonald;

    #[test]
    fn low_orders() {
        let c = PrecisionContext::new(30).unwrap();
        let nu = c.real(2.5);
        let (p, q) = macdonald_reduction(0, &nu, &c);
        assert_eq!(p.coeffs(), &[c.one()]);
        assert!(q.is_zero());
        let (p, q) = macdonald_reduction(1, &nu, &c);
        assert_eq!(p.coeffs(), &[-&nu]);
        assert_eq!(q.coeffs(), &[c.one()]);
    }

    #[test]
    fn residual_small() {
        let c = PrecisionContext::new(40).unwrap();
        for nu in [0.5, 1.0, 2.5] {
            let nu = c.real(nu);
            let base = Macdonald::new(&nu, &c).unwrap();
            let up = Macdonald::new(&(&nu + 1i64), &c).unwrap();
            for j in 0..=6u32 {
                let low = Macdonald::new(&(&nu - i64::from(j)), &c).unwrap();
                let (p, q) = macdonald_reduction(j, &nu, &c);
                for x in [0.5, 1.0, 4.0] {
                    let x = c.real(x);
                    let lhs = x.powi(i64::from(j)) * low.rho(&x).unwrap();
                    let rhs = p.eval(&x) * base.rho(&x).unwrap() + q.eval(&x) * up.rho(&x).unwrap();
                    assert!(
                        lhs.rel_diff(&rhs) < c.pow10(-35),
                        "j={j} x={x}: {lhs} vs {rhs}"
                    );
                }
            }
        }
    }
}
