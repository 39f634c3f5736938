use crate::polynomial::Polynomial;
use crate::real::{PrecisionContext, Real};

/// L_n^ν(x) by the three-term recurrence.
pub fn laguerre(n: u32, nu: &Real, x: &Real, ctx: &PrecisionContext) -> Real {
    let nu = ctx.lift(nu);
    let x = ctx.lift(x);
    let mut prev = ctx.zero();
    let mut cur = ctx.one();
    for k in 0..i64::from(n) {
        // (k+1) L_{k+1} = (2k+1+ν−x) L_k − (k+ν) L_{k−1}
        let next = ((&nu - &x + (2 * k + 1)) * &cur - (&nu + k) * &prev) / (k + 1);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Monomial coefficients of L_n^ν: Σ_i (−1)^i (ν+i+1)_{n−i} / ((n−i)! i!) x^i.
pub fn laguerre_poly(n: u32, nu: &Real, ctx: &PrecisionContext) -> Polynomial {
    let nu = ctx.lift(nu);
    let n = i64::from(n);
    // top coefficient (−1)^n/n!, then walk downwards
    let mut coeffs = vec![ctx.zero(); n as usize + 1];
    let mut c = ctx.one() / ctx.factorial(n as u32);
    if n % 2 == 1 {
        c = -c;
    }
    coeffs[n as usize] = c.clone();
    for i in (0..n).rev() {
        // c_i / c_{i+1} = −(i+1)(ν+i+1)/(n−i)
        c = -(c * (i + 1) * (&nu + (i + 1))) / (n - i);
        coeffs[i as usize] = c.clone();
    }
    Polynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_orders() {
        let c = PrecisionContext::new(30).unwrap();
        let nu = c.real(0.75);
        let x = c.real(1.5);
        assert_eq!(laguerre(0, &nu, &x, &c), c.one());
        assert_eq!(laguerre(1, &nu, &x, &c), &nu + 1i64 - &x);
        assert_eq!(laguerre(2, &c.zero(), &c.one(), &c), c.real(-0.5));
        for n in 0..8 {
            let p = laguerre_poly(n, &nu, &c);
            assert_eq!(p.degree(), n as usize);
            let a = p.eval(&x);
            let b = laguerre(n, &nu, &x, &c);
            assert!((a - b).abs() < c.pow10(-28));
        }
    }
}
