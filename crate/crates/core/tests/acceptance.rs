//! Acceptance criteria 1–10. Prints one PASS/FAIL line per criterion and exits
//! nonzero on any failure not listed as a known erratum.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use prudnikov::identities::{
    exploratory_suite, geometric_grid, run_suite, verify_3f2_special_values, verify_norm_identity,
    verify_orthonormality, verify_recurrence, verify_rho_expansion,
};
use prudnikov::moments::{
    f_entry_integral, f_entry_printed_integer, f_table, moment_minus, moment_minus_with,
    moment_plus, Family, MinusBranch, WeightSpec,
};
use prudnikov::orthopoly::{build_moment_route, build_paper_route, zeros_interlace, OrthoBasis};
use prudnikov::quadrature::moment_oracle_batch;
use prudnikov::specfun::{rho, rho_laplace};
use prudnikov::{PrecisionContext, Real, Result};

const DIGITS: u32 = 50;
const NUS: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 2.5];
const DEGREE: usize = 6;

struct Outcome {
    passed: bool,
    /// A failure that is documented and whose corrected form was verified.
    known_erratum: bool,
    detail: String,
}

impl Outcome {
    fn check(passed: bool, detail: String) -> Self {
        Self {
            passed,
            known_erratum: false,
            detail,
        }
    }
}

fn exp10(v: &Real) -> String {
    v.to_sig_string(2)
}

fn spec(family: Family, nu: f64, c: &PrecisionContext) -> WeightSpec {
    WeightSpec::new(family, c.real(nu)).unwrap()
}

struct Bases {
    paper: BTreeMap<(u8, String), OrthoBasis>,
    moment: BTreeMap<(u8, String), OrthoBasis>,
}

fn key(family: Family, nu: f64) -> (u8, String) {
    (if family == Family::Plus { 0 } else { 1 }, format!("{nu}"))
}

fn bases(c: &PrecisionContext) -> Result<Bases> {
    let mut out = Bases {
        paper: BTreeMap::new(),
        moment: BTreeMap::new(),
    };
    for family in [Family::Plus, Family::Minus] {
        for nu in NUS {
            let s = spec(family, nu, c);
            out.paper
                .insert(key(family, nu), build_paper_route(&s, DEGREE, c)?);
            out.moment
                .insert(key(family, nu), build_moment_route(&s, DEGREE, c)?);
        }
    }
    Ok(out)
}

fn criterion1(c: &PrecisionContext) -> Result<Outcome> {
    let grid = geometric_grid(12, c);
    let mut worst = c.zero();
    for nu in NUS {
        let nu = c.real(nu);
        for x in &grid {
            worst = worst.max(rho(&nu, x, c)?.rel_diff(&rho_laplace(&nu, x, c)?));
        }
    }
    let mut half = c.zero();
    for x in &grid {
        let exact = c.pi().sqrt() * (-(x.sqrt() * 2i64)).exp();
        half = half.max(rho(&c.real(0.5), x, c)?.rel_diff(&exact));
    }
    Ok(Outcome::check(
        worst <= c.pow10(-45) && half <= c.pow10(-48),
        format!(
            "K-path vs Laplace max rel {} (≤1e-45); half-order closed form {} (≤1e-48)",
            exp10(&worst),
            exp10(&half)
        ),
    ))
}

fn criterion2(c: &PrecisionContext) -> Result<Outcome> {
    let mut worst = c.zero();
    for family in [Family::Plus, Family::Minus] {
        for nu in NUS {
            let s = spec(family, nu, c);
            let oracle = moment_oracle_batch(&s, 0, 12, c)?;
            for (k, o) in oracle.iter().enumerate() {
                let v = match family {
                    Family::Plus => moment_plus(s.nu(), &c.int(k as i64), c)?,
                    Family::Minus => moment_minus(s.nu(), k as u32, c)?,
                };
                worst = worst.max(v.rel_diff(o));
            }
        }
    }
    // non-integer formula approaching ν = 1 from both sides
    let mut monotone = true;
    let mut last_gap = String::new();
    for k in 0..4u32 {
        let target = moment_minus_with(&c.one(), k, MinusBranch::Integer, c)?;
        for side in [1i64, -1] {
            let mut prev: Option<Real> = None;
            for e in [-1, -2, -3] {
                let nu = c.one() + c.pow10(e) * side;
                let gap = moment_minus_with(&nu, k, MinusBranch::NonInteger, c)?.rel_diff(&target);
                if let Some(p) = &prev {
                    monotone &= &gap < p;
                }
                last_gap = exp10(&gap);
                prev = Some(gap);
            }
        }
    }
    Ok(Outcome::check(
        worst <= c.pow10(-40) && monotone,
        format!(
            "closed forms vs quadrature max rel {} (≤1e-40) for k≤12; continuity at ν=1±10^-j monotone={monotone}, gap at 10^-3 {last_gap}",
            exp10(&worst)
        ),
    ))
}

fn criterion3(c: &PrecisionContext) -> Result<Outcome> {
    let mut worst = c.zero();
    let mut printed_worst = c.zero();
    for nu in [0.5, 1.0, 2.5] {
        let nu_r = c.real(nu);
        let table = f_table(&nu_r, 9, c)?;
        for s in 0..=9u32 {
            let (k, m) = (s - s / 2, s / 2);
            let integral = f_entry_integral(&nu_r, k, m, c)?;
            worst = worst.max(table[s as usize].rel_diff(&integral));
            if nu == 1.0 {
                printed_worst =
                    printed_worst.max(f_entry_printed_integer(1, s, c)?.rel_diff(&integral));
            }
        }
    }
    Ok(Outcome::check(
        worst <= c.pow10(-35),
        format!(
            "shipped table vs defining integrals max rel {} (≤1e-35), s≤9; printed integer-order form deviates by up to {} at ν=1 (erratum, oracle governs)",
            exp10(&worst),
            exp10(&printed_worst)
        ),
    ))
}

fn criterion4(b: &Bases, c: &PrecisionContext) -> Result<Outcome> {
    let mut disc = c.zero();
    let mut gram = c.zero();
    for (k, p) in &b.paper {
        disc = disc.max(p.max_discrepancy(&b.moment[k]));
        gram = gram.max(verify_orthonormality(p, c)?.max_residual);
    }
    Ok(Outcome::check(
        disc <= c.pow10(-30) && gram <= c.pow10(-35),
        format!(
            "paper vs moment route max rel {} (≤1e-30), n≤{DEGREE}; Gram deviation {} (≤1e-35)",
            exp10(&disc),
            exp10(&gram)
        ),
    ))
}

fn criterion5(b: &Bases, c: &PrecisionContext) -> Result<Outcome> {
    let grid = geometric_grid(12, c);
    let mut worst = c.zero();
    let mut interlace = true;
    for p in b.paper.values() {
        worst = worst.max(verify_recurrence(p, &grid, c).max_residual);
        interlace &= zeros_interlace(p);
    }
    Ok(Outcome::check(
        worst <= c.pow10(-35) && interlace,
        format!(
            "three-term residual {} (≤1e-35); zeros interlace: {interlace}",
            exp10(&worst)
        ),
    ))
}

fn criterion6(b: &Bases, c: &PrecisionContext) -> Result<Outcome> {
    let tol = c.pow10(-25);
    let mut v_worst = c.zero();
    let mut m_good = c.zero();
    let mut m_printed = c.zero();
    let mut offset_is_two = true;
    for ((fam, _), p) in &b.paper {
        for r in verify_norm_identity(p, c)? {
            match (fam, r.name.as_str()) {
                (0, _) => v_worst = v_worst.max(r.max_residual.clone()),
                (_, "norm_identity") => m_good = m_good.max(r.max_residual.clone()),
                _ => {
                    m_printed = m_printed.max(r.max_residual.clone());
                    for d in &r.details {
                        offset_is_two &= (&d.residual - 2i64).abs() < c.pow10(-30);
                    }
                }
            }
        }
    }
    let corrected_ok = v_worst <= tol && m_good <= tol && offset_is_two;
    let passed = corrected_ok && m_printed <= tol;
    Ok(Outcome {
        passed,
        known_erratum: !passed && corrected_ok,
        detail: format!(
            "V form rel {} (≤1e-25); printed M form rel {}, off by exactly 2: {offset_is_two}; M with +1 in place of −1 rel {}",
            exp10(&v_worst),
            exp10(&m_printed),
            exp10(&m_good)
        ),
    })
}

fn criterion7(b: &Bases, c: &PrecisionContext) -> Result<Outcome> {
    let grid = geometric_grid(12, c);
    let mut worst = c.zero();
    for p in b.paper.values() {
        worst = worst.max(verify_rho_expansion(p, &grid, c)?.max_residual);
    }
    Ok(Outcome::check(
        worst <= c.pow10(-35),
        format!(
            "p_n ρ_ν = Σ q_k ρ_(ν+k) max scaled residual {} (≤1e-35)",
            exp10(&worst)
        ),
    ))
}

fn criterion8(c: &PrecisionContext) -> Result<Outcome> {
    let mut gating_ok = true;
    let mut lower = BTreeMap::new();
    for nu in [0.5, 1.0] {
        for r in verify_3f2_special_values(&c.real(nu), 4, c)? {
            if r.gating {
                gating_ok &= r.passed;
            } else {
                let e = lower.entry(r.name.clone()).or_insert_with(|| c.zero());
                *e = e.clone().max(r.max_residual.clone());
            }
        }
    }
    let notes: Vec<String> = lower
        .iter()
        .map(|(k, v)| format!("{k} printed form off by {}", exp10(v)))
        .collect();
    Ok(Outcome::check(
        gating_ok,
        format!(
            "k=2r and k>2r match direct sums, r≤4; {} (erratum, oracle governs)",
            notes.join(", ")
        ),
    ))
}

fn criterion9(c: &PrecisionContext) -> Result<Outcome> {
    let mut failing = Vec::new();
    let mut count = 0;
    for family in [Family::Plus, Family::Minus] {
        for nu in NUS {
            let (_, reports) = run_suite(&spec(family, nu, c), DEGREE, c)?;
            for r in reports.iter().filter(|r| r.gating) {
                count += 1;
                if !r.passed {
                    failing.push(format!("{}({family},{nu})", r.name));
                }
            }
        }
    }
    let explore = exploratory_suite(3, c);
    let explore_pass = explore.iter().filter(|r| r.passed).count();
    Ok(Outcome::check(
        failing.is_empty(),
        format!(
            "{count} gating reports, failing: [{}]; exploratory Plus ν=-0.5 (non-gating): {explore_pass}/{} reports within tolerance",
            failing.join(", "),
            explore.len()
        ),
    ))
}

fn criterion10() -> Result<Outcome> {
    let exe = env!("CARGO_BIN_EXE_prudnikov");
    let mut worst = 0f64;
    let mut identical = true;
    for (family, nu) in [("plus", "0.5"), ("minus", "1"), ("minus", "2.5")] {
        let args = [
            "ortho", "--route", "both", "--family", family, "--nu", nu, "--degree", "4",
            "--digits", "50",
        ];
        let run = || {
            Command::new(exe)
                .args(args)
                .env_remove("ORTHO_DIGITS")
                .output()
                .expect("binary runs")
        };
        let (a, b) = (run(), run());
        identical &= a.status.success() && a.stdout == b.stdout;
        let v: serde_json::Value = serde_json::from_slice(&a.stdout)?;
        let d: f64 = v["max_discrepancy"]
            .as_str()
            .unwrap_or("inf")
            .parse()
            .unwrap_or(f64::INFINITY);
        worst = worst.max(d);
    }
    Ok(Outcome::check(
        identical && worst <= 1e-30,
        format!(
            "bit-identical across runs: {identical}; reported discrepancy {worst:.2e} (≤1e-30)"
        ),
    ))
}

fn main() {
    let c = PrecisionContext::new(DIGITS).unwrap();
    let start = Instant::now();
    let b = bases(&c).expect("bases build at 50 digits");
    let titles = [
        "special-function dual path",
        "moments",
        "table vs integral",
        "construction equivalence",
        "recurrence",
        "norm identities",
        "rho expansion",
        "special 3F2 values",
        "identity suite",
        "CLI determinism",
    ];
    let mut unexpected = 0;
    for (i, title) in titles.iter().enumerate() {
        let t = Instant::now();
        let out = match i + 1 {
            1 => criterion1(&c),
            2 => criterion2(&c),
            3 => criterion3(&c),
            4 => criterion4(&b, &c),
            5 => criterion5(&b, &c),
            6 => criterion6(&b, &c),
            7 => criterion7(&b, &c),
            8 => criterion8(&c),
            9 => criterion9(&c),
            _ => criterion10(),
        };
        let out = out.unwrap_or_else(|e| Outcome::check(false, format!("error: {e}")));
        let mut tag = if out.passed { "PASS" } else { "FAIL" }.to_string();
        if out.known_erratum {
            tag.push_str(" (known erratum)");
        } else if !out.passed {
            unexpected += 1;
        }
        println!(
            "criterion {:>2} {tag}: {title}: {} [{:.1}s]",
            i + 1,
            out.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance finished in {:.1}s",
        start.elapsed().as_secs_f64()
    );
    if unexpected > 0 {
        std::process::exit(1);
    }
}
