#!/usr/bin/env python3
"""Regenerate the golden reference values under crates/core/tests/golden/.

Every value comes from mpmath at DPS digits, through a path independent of the
Rust implementation (direct quadrature, explicit sums, Gram-Schmidt).
"""
import json
import pathlib

import mpmath as mp

DPS = 100
KEEP = 70
mp.mp.dps = DPS
OUT = pathlib.Path(__file__).resolve().parent.parent / "crates" / "core" / "tests" / "golden"


def s(v):
    return mp.nstr(mp.mpf(v), KEEP, strip_zeros=False, min_fixed=1, max_fixed=0)


def rho(nu, x):
    return 2 * x ** (mp.mpf(nu) / 2) * mp.besselk(nu, 2 * mp.sqrt(x))


def plus_moment(nu, k):
    # Fubini on the Laplace form of rho
    nu = mp.mpf(nu)
    f = lambda t: t ** (nu + k) * mp.exp(-t) / (1 + t) ** (k + 1)
    return mp.factorial(k) * mp.quad(f, [0, 1, 10, mp.inf])


def minus_moment_quad(nu, k):
    f = lambda x: mp.exp(-1 / x) * x ** (k - 1) * rho(nu, x)
    return mp.quad(f, [0, mp.mpf(1) / 4, 1, 4, 16, mp.inf])


def minus_moment(nu, k):
    # Mellin-Barnes product Γ(s)Γ(s+ν)Γ(s−k) as a Meijer G function
    return mp.meijerg([[], []], [[0, mp.mpf(nu), -k], []], 1)


def moments(family, nu, count):
    fn = plus_moment if family == "plus" else minus_moment
    return [fn(nu, k) for k in range(count)]


def orthonormal(mu, n):
    """Coefficient lists of p_0..p_n from the Hankel matrix by Cholesky."""
    h = mp.matrix(n + 1, n + 1)
    for i in range(n + 1):
        for j in range(n + 1):
            h[i, j] = mu[i + j]
    l = mp.cholesky(h)
    c = mp.inverse(l)
    return [[c[k, j] for j in range(k + 1)] for k in range(n + 1)]


def specfun():
    grid = [mp.mpf(10) ** (-2 + mp.mpf(4) * i / 11) for i in range(12)]
    rho_grid = {}
    for nu in ["0.25", "0.5", "1", "2", "2.5"]:
        rho_grid[nu] = [[s(x), s(rho(mp.mpf(nu), x))] for x in grid]
    hyp0f2_direct = lambda b1, b2: mp.nsum(
        lambda r: (-1) ** r / (mp.factorial(r) * mp.rf(b1, r) * mp.rf(b2, r)), [0, mp.inf]
    )
    hyp3f2_direct = lambda k, a, b, c, d: sum(
        mp.rf(-k, j) * mp.rf(a, j) * mp.rf(b, j) / (mp.rf(c, j) * mp.rf(d, j) * mp.factorial(j))
        for j in range(k + 1)
    )
    def cosh_k(nu, z):
        # integrand is below 10^-250 past the cut
        top = mp.acosh((600 + 10 * abs(nu)) / mp.mpf(z))
        return mp.quad(lambda t: mp.exp(-z * mp.cosh(t)) * mp.cosh(nu * t), mp.linspace(0, top, 5))
    return {
        "bessel_k": [
            {"nu": "1.5", "z": "2", "value": s(cosh_k(mp.mpf("1.5"), 2))},
            {"nu": "0", "z": "1", "value": s(cosh_k(0, 1))},
            {"nu": "0.25", "z": "0.5", "value": s(cosh_k(mp.mpf("0.25"), mp.mpf("0.5")))},
            {"nu": "3", "z": "7", "value": s(cosh_k(3, 7))},
        ],
        "rho_laplace": [
            {"nu": "1", "x": "1", "value": s(mp.quad(lambda t: mp.exp(-t - 1 / t), [0, 1, mp.inf]))},
        ],
        "rho_grid": rho_grid,
        "tricomi_psi1": [
            {"a": "1", "b": "1", "value": s(mp.quad(lambda t: mp.exp(-t) / (1 + t), [0, 1, mp.inf]))},
            {"a": "2", "b": "-1", "value": s(mp.quad(lambda t: mp.exp(-t) * t * (1 + t) ** -4, [0, 1, mp.inf]))},
        ],
        "hyp0f2": [
            {"b1": "1", "b2": "2", "z": "-1", "value": s(hyp0f2_direct(1, 2))},
            {"b1": "1.5", "b2": "2.5", "z": "-1", "value": s(hyp0f2_direct(mp.mpf("1.5"), mp.mpf("2.5")))},
        ],
        "hyp3f2_unit": [
            {"k": 3, "a": "2.5", "b": "2", "c": "1.5", "d": "1",
             "value": s(hyp3f2_direct(3, mp.mpf("2.5"), 2, mp.mpf("1.5"), 1))},
        ],
        "gamma": [{"x": x, "value": s(mp.gamma(mp.mpf(x)))} for x in ["0.5", "1.5", "7.25", "-2.5"]],
        "digamma": [{"x": x, "value": s(mp.digamma(mp.mpf(x)))} for x in ["1", "0.5", "3.75", "-0.5"]],
        "trigamma": [{"x": x, "value": s(mp.psi(1, mp.mpf(x)))} for x in ["1", "0.5", "3.75", "-0.5", "40"]],
    }


def moments_golden():
    out = {"plus": {}, "minus": {}}
    for nu in ["0", "0.25", "0.5", "1", "2", "2.5"]:
        out["plus"][nu] = [s(v) for v in moments("plus", mp.mpf(nu), 13)]
    for nu in ["0.25", "0.5", "1", "2", "2.5"]:
        out["minus"][nu] = [s(v) for v in moments("minus", mp.mpf(nu), 13)]
    # the two routes to the Minus moments must agree before anything is frozen
    for nu, k in [("1", 0), ("1", 1), ("0.5", 0), ("2.5", 3)]:
        a, b = minus_moment(mp.mpf(nu), k), minus_moment_quad(mp.mpf(nu), k)
        assert abs(a - b) < mp.mpf(10) ** (-80) * abs(a), (nu, k)
    # defining integrals of the auxiliary Minus table with m = 0
    f_defining = []
    for nu, k in [("0.5", 0), ("1", 1)]:
        nv = mp.mpf(nu)
        g = lambda t: t ** (nv + k - 1) * mp.exp(-t) * mp.laguerre(k, nv, t) * rho(0, 1 / t)
        v = (-1) ** k * mp.factorial(k) * mp.quad(g, [0, mp.mpf(1) / 4, 1, 4, 16, mp.inf])
        f_defining.append({"nu": nu, "k": k, "m": 0, "value": s(v)})
    out["f_defining"] = f_defining
    return out


def orthopoly_golden():
    cases = [("plus", "0", 1), ("plus", "0.5", 3), ("plus", "1", 3), ("plus", "2.5", 2),
             ("minus", "1", 2), ("minus", "0.5", 2), ("minus", "2", 3)]
    out = []
    for family, nu, n in cases:
        mu = moments(family, mp.mpf(nu), 2 * n + 1)
        coeffs = orthonormal(mu, n)
        out.append({"family": family, "nu": nu, "n": n,
                    "coeffs": [[s(c) for c in row] for row in coeffs]})
    p0 = 1 / mp.sqrt(mp.gamma(mp.mpf("1.5")) * mp.hyperu(mp.mpf("1.5"), mp.mpf("1.5"), 1))
    x = mp.mpf(1)
    mu = moments("plus", 0, 5)
    p2 = orthonormal(mu, 2)[2]
    return {
        "cases": out,
        "p0_plus_half": s(p0),
        "eval_plus_nu0_k2_x1": s(sum(c * x ** j for j, c in enumerate(p2))),
    }


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    meta = {"dps": DPS, "kept_digits": KEEP}
    for name, fn in [("specfun", specfun), ("moments", moments_golden), ("orthopoly", orthopoly_golden)]:
        data = {"meta": meta, **fn()}
        (OUT / f"{name}.json").write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
        print("wrote", name)


if __name__ == "__main__":
    main()
