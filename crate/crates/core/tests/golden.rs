mod common;

use common::{assert_close, ctx, field, golden, num};
use prudnikov::moments::{d_table, f_entry_integral, moment_minus, moment_plus, WeightSpec};
use prudnikov::orthopoly::{build_moment_route, build_paper_route, eval};
use prudnikov::quadrature::moment_oracle_batch;
use prudnikov::specfun::{
    bessel_k, digamma, gamma, hyp0f2, hyp3f2_unit, laguerre, rho, rho_laplace, tricomi_psi1,
    trigamma,
};
use prudnikov::PrecisionContext;

const REL: f64 = 1e-47;

#[test]
fn bessel_k_values() {
    let c = ctx(50);
    for e in golden("specfun")["bessel_k"].as_array().unwrap() {
        let got = bessel_k(&field(e, "nu", &c), &field(e, "z", &c), &c).unwrap();
        assert_close(&got, &field(e, "value", &c), REL, "bessel_k");
    }
}

#[test]
fn rho_on_the_grid() {
    let c = ctx(50);
    let g = golden("specfun");
    for (nu, rows) in g["rho_grid"].as_object().unwrap() {
        let nu = c.parse(nu).unwrap();
        for row in rows.as_array().unwrap() {
            let got = rho(&nu, &num(&row[0], &c), &c).unwrap();
            assert_close(&got, &num(&row[1], &c), REL, "rho");
        }
    }
    let e = &g["rho_laplace"][0];
    let got = rho_laplace(&field(e, "nu", &c), &field(e, "x", &c), &c).unwrap();
    assert_close(&got, &field(e, "value", &c), REL, "rho_laplace");
}

#[test]
fn hypergeometric_values() {
    let c = ctx(50);
    let g = golden("specfun");
    for e in g["tricomi_psi1"].as_array().unwrap() {
        let got = tricomi_psi1(&field(e, "a", &c), &field(e, "b", &c), &c).unwrap();
        assert_close(&got, &field(e, "value", &c), REL, "tricomi_psi1");
    }
    for e in g["hyp0f2"].as_array().unwrap() {
        let got = hyp0f2(
            &field(e, "b1", &c),
            &field(e, "b2", &c),
            &field(e, "z", &c),
            &c,
        )
        .unwrap();
        assert_close(&got, &field(e, "value", &c), REL, "hyp0f2");
    }
    for e in g["hyp3f2_unit"].as_array().unwrap() {
        let k = e["k"].as_u64().unwrap() as u32;
        let got = hyp3f2_unit(
            k,
            &field(e, "a", &c),
            &field(e, "b", &c),
            &field(e, "c", &c),
            &field(e, "d", &c),
            &c,
        )
        .unwrap();
        assert_close(&got, &field(e, "value", &c), REL, "hyp3f2_unit");
    }
}

#[test]
fn gamma_family_values() {
    let c = ctx(50);
    let g = golden("specfun");
    type F = fn(&prudnikov::Real, &PrecisionContext) -> prudnikov::Result<prudnikov::Real>;
    for (key, f) in [
        ("gamma", gamma as F),
        ("digamma", digamma as F),
        ("trigamma", trigamma as F),
    ] {
        for e in g[key].as_array().unwrap() {
            let got = f(&field(e, "x", &c), &c).unwrap();
            assert_close(&got, &field(e, "value", &c), REL, key);
        }
    }
}

#[test]
fn laguerre_small_case() {
    let c = ctx(30);
    let v = laguerre(2, &c.zero(), &c.one(), &c);
    assert_close(&v, &c.real(-0.5), 1e-29, "L_2(1)");
}

#[test]
fn plus_moments_closed_form_and_oracle() {
    let c = ctx(50);
    let g = golden("moments");
    for (nu, row) in g["plus"].as_object().unwrap() {
        let nu = c.parse(nu).unwrap();
        for (k, v) in row.as_array().unwrap().iter().enumerate() {
            let got = moment_plus(&nu, &c.int(k as i64), &c).unwrap();
            assert_close(&got, &num(v, &c), 1e-45, "moment_plus");
        }
    }
    let oracle = moment_oracle_batch(&WeightSpec::plus(c.real(0.5)).unwrap(), 0, 4, &c).unwrap();
    for (k, v) in oracle.iter().enumerate() {
        assert_close(v, &num(&g["plus"]["0.5"][k], &c), 1e-45, "plus oracle");
    }
}

#[test]
fn minus_moments_both_branches() {
    let c = ctx(50);
    let g = golden("moments");
    for (nu, row) in g["minus"].as_object().unwrap() {
        let nu = c.parse(nu).unwrap();
        for (k, v) in row.as_array().unwrap().iter().enumerate() {
            let got = moment_minus(&nu, k as u32, &c).unwrap();
            assert_close(&got, &num(v, &c), 1e-45, "moment_minus");
        }
    }
}

#[test]
fn auxiliary_tables() {
    let c = ctx(50);
    let g = golden("moments");
    // d_{0,0} at ν = 0 is e·E₁(1) = μ₀
    let d = d_table(&c.zero(), 1, &c).unwrap();
    assert_close(&d[0][0], &num(&g["plus"]["0"][0], &c), 1e-45, "d_00");
    for e in g["f_defining"].as_array().unwrap() {
        let k = e["k"].as_u64().unwrap() as u32;
        let m = e["m"].as_u64().unwrap() as u32;
        let got = f_entry_integral(&field(e, "nu", &c), k, m, &c).unwrap();
        assert_close(&got, &field(e, "value", &c), 1e-40, "f defining integral");
    }
}

#[test]
fn polynomial_coefficients() {
    let c = ctx(50);
    let g = golden("orthopoly");
    for case in g["cases"].as_array().unwrap() {
        let nu = field(case, "nu", &c);
        let spec = match case["family"].as_str().unwrap() {
            "plus" => WeightSpec::plus(nu).unwrap(),
            _ => WeightSpec::minus(nu).unwrap(),
        };
        let n = case["n"].as_u64().unwrap() as usize;
        for basis in [
            build_paper_route(&spec, n, &c).unwrap(),
            build_moment_route(&spec, n, &c).unwrap(),
        ] {
            for (k, row) in case["coeffs"].as_array().unwrap().iter().enumerate() {
                let scale = basis.polys[k].max_abs();
                for (j, v) in row.as_array().unwrap().iter().enumerate() {
                    let diff = (basis.polys[k].coeff(j) - num(v, &c)).abs() / &scale;
                    assert!(
                        diff < c.pow10(-40),
                        "{} {case} p_{k} x^{j}: {}",
                        basis.route,
                        diff.to_sig_string(3)
                    );
                }
            }
        }
    }
    let p0 = build_paper_route(&WeightSpec::plus(c.real(0.5)).unwrap(), 0, &c).unwrap();
    assert_close(
        &p0.polys[0].coeff(0),
        &num(&g["p0_plus_half"], &c),
        1e-45,
        "P_0",
    );
    let b = build_paper_route(&WeightSpec::plus(c.zero()).unwrap(), 2, &c).unwrap();
    assert_close(
        &eval(&b, 2, &c.one()),
        &num(&g["eval_plus_nu0_k2_x1"], &c),
        1e-45,
        "p_2(1)",
    );
}
