//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rkcert::classifier::{classify_scheme, Conclusion};
use rkcert::fixtures::{levy_tadmor, minus_identity, sun_shu, ww_star};
use rkcert::hypocoercivity::{hc_index_definitional, hc_index_staircase, staircase_of, witness_vector, HcIndex};
use rkcert::linalg::{hpd_sqrt_pair, solve_lyapunov, spectral_norm, transform_to_dissipative, ComplexMatrix};
use rkcert::random::{random_staircase_instance, rng_from_env};
use rkcert::rk::{coefficient_condition, eval_poly_matrix, ks_indicators, scheme_by_name};
use rkcert::tolerance::{HC_CHAIN, RANK_REL};
use rkcert::verifier::{gram_defect, norm_sweep, quadratic_form_identity, short_time_exponent, GramDefect, Grid};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err(e: rkcert::Error) -> String {
    e.to_string()
}

fn hc_golden() -> Check {
    let mut details = Vec::new();
    let mut ok = true;
    for (name, m, expected) in [("sunshu", sun_shu(), 2), ("levytadmor", levy_tadmor(), 4)] {
        let start = Instant::now();
        let chain = hc_index_definitional(&m, HC_CHAIN, m.dim()).map_err(err)?.index;
        let stairs = hc_index_staircase(&m, RANK_REL).map_err(err)?;
        let elapsed = start.elapsed();
        ok &= chain == HcIndex::Finite(expected) && stairs == expected && elapsed < Duration::from_millis(100);
        details.push(format!("{name}: chain {chain:?} staircase {stairs} in {elapsed:?}"));
    }
    ensure(ok, details.join("; "))
}

fn staircase_structure() -> Check {
    let mut details = Vec::new();
    let mut ok = true;
    for (name, m, r) in [("sunshu", sun_shu(), 4), ("levytadmor", levy_tadmor(), 6)] {
        let form = staircase_of(&m, RANK_REL).map_err(err)?;
        let sizes = form.leading_sizes();
        let recon = (form.reconstruct() - m.as_matrix()).norm();
        ok &= form.block_count == r
            && sizes.len() == r - 1
            && sizes.iter().all(|&s| s == 1)
            && form.residual_size() == 0
            && recon <= 1e-10;
        details.push(format!("{name}: r={} sizes {sizes:?} recon {recon:.1e}", form.block_count));
    }
    ensure(ok, details.join("; "))
}

fn order_table() -> Check {
    use Conclusion::{No, Undecided, Yes};
    let mut mismatches = Vec::new();
    for p in 1..=8usize {
        let r = classify_scheme(&scheme_by_name(&format!("texp{p}")).map_err(err)?).map_err(err)?;
        let expected = match p % 4 {
            0 => (No, Yes, No),
            1 => (No, No, No),
            2 => (Undecided, No, No),
            _ => (Yes, Yes, Yes),
        };
        let got = (r.class_as.conclusion, r.imag_axis.conclusion, r.overall.conclusion);
        if got != expected {
            mismatches.push(format!("p={p}: {got:?} vs {expected:?}"));
        }
    }
    ensure(mismatches.is_empty(), if mismatches.is_empty() { "8/8 rows".into() } else { mismatches.join("; ") })
}

fn indicator_arithmetic() -> Check {
    let rk4 = scheme_by_name("rk4").map_err(err)?.polynomial;
    let delta = ks_indicators(&rk4).delta.unwrap_or(f64::NAN);
    let c_even = coefficient_condition(&rk4).value();
    let euler = scheme_by_name("euler").map_err(err)?.polynomial;
    let gamma = ks_indicators(&euler).gamma.unwrap_or(f64::NAN);
    ensure(
        (delta - 5.0).abs() <= 1e-12 && (c_even + 5.0).abs() <= 1e-12 && (gamma + 1.0).abs() <= 1e-12,
        format!("delta_5 {delta}, c.even {c_even}, gamma_2 {gamma}"),
    )
}

fn sweep_grid() -> Result<Grid, String> {
    Grid::log_spaced(1e-6, 1e-1, 200).map_err(err)
}

fn norm_refutation() -> Check {
    let poly = scheme_by_name("rk4").map_err(err)?.polynomial;
    let start = Instant::now();
    let sweep = norm_sweep(&poly, &sun_shu(), &sweep_grid()?, None).map_err(err)?;
    let elapsed = start.elapsed();
    let first = sweep.first_violation.as_ref().map(|v| v.tau);
    ensure(
        sweep.violated() && elapsed < Duration::from_secs(1),
        format!("first violation at {first:?}, max excess {:.2e}, {elapsed:?}", sweep.max_excess),
    )
}

fn weak_form() -> Check {
    let m = sun_shu();
    let poly = scheme_by_name("rk4").map_err(err)?.polynomial;
    let grid = sweep_grid()?;
    let auto = solve_lyapunov(&m, &ComplexMatrix::identity(3)).map_err(err)?;
    let mut ok = true;
    let mut details = Vec::new();
    for (name, p) in [("WW*", ww_star()), ("lyapunov", auto)] {
        let sweep = norm_sweep(&poly, &m, &grid, Some(&p)).map_err(err)?;
        let (s, s_inv) = hpd_sqrt_pair(&p).map_err(err)?;
        let hat = transform_to_dissipative(&m, &p).map_err(err)?;
        let gap = grid
            .taus()
            .iter()
            .map(|&tau| {
                let step = eval_poly_matrix(&poly, &m, tau);
                let weighted = spectral_norm(&(s.as_matrix() * step.as_matrix() * s_inv.as_matrix()));
                let plain = spectral_norm(eval_poly_matrix(&poly, &hat, tau).as_matrix());
                (weighted - plain).abs()
            })
            .fold(0.0, f64::max);
        ok &= !sweep.violated() && gap <= 1e-10;
        details.push(format!("{name}: violated {} transform gap {gap:.1e}", sweep.violated()));
    }
    ensure(ok, details.join("; "))
}

fn short_time_exponents() -> Check {
    let mut ok = true;
    let mut details = Vec::new();
    for (name, m, a, tol) in [
        ("-I", minus_identity(3), 1.0, 0.05),
        ("sunshu", sun_shu(), 5.0, 0.15),
        ("levytadmor", levy_tadmor(), 9.0, 0.3),
    ] {
        let fit = short_time_exponent(&m).map_err(err)?;
        ok &= (fit.a_hat - a).abs() <= tol;
        details.push(format!("{name}: {:.4}", fit.a_hat));
    }
    ensure(ok, details.join("; "))
}

fn gram_order() -> Check {
    let m = sun_shu();
    let poly = scheme_by_name("rk4").map_err(err)?.polynomial;
    let d = gram_defect(&poly, &m, &GramDefect::default_grid(&m)).map_err(err)?;
    // Independent reference: ‖L^5 + (L*)^5‖₂ / 5!.
    let l5 = m.as_matrix().pow(5);
    let reference = spectral_norm(&(&l5 + l5.adjoint())) / 120.0;
    let order = d.fitted_order.unwrap_or(f64::NAN);
    let coef = d.measured_coefficient.unwrap_or(f64::NAN);
    ensure(
        (order - 5.0).abs() <= 0.1 && ((coef - reference) / reference).abs() <= 0.1,
        format!("order {order:.4}, coefficient {coef:.4e} vs {reference:.4e}"),
    )
}

fn quadratic_identity() -> Check {
    let rel = |lhs: f64, rhs: f64| (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
    let m = sun_shu();
    let u = witness_vector(&m, 2, HC_CHAIN).map_err(err)?;
    let c = quadratic_form_identity(&m, &u, 2).map_err(err)?;
    let mut worst = rel(c.lhs, c.rhs);
    let mut rng = rng_from_env();
    for k in 0..20 {
        let index = 1 + k % 3;
        let n = 4 + k % 5;
        let m = random_staircase_instance(n, index, &mut rng);
        let got = hc_index_definitional(&m, HC_CHAIN, n).map_err(err)?.index;
        if got != HcIndex::Finite(index) {
            return Err(format!("instance {k}: constructed index {index}, oracle says {got:?}"));
        }
        let u = witness_vector(&m, index, HC_CHAIN).map_err(err)?;
        let c = quadratic_form_identity(&m, &u, index).map_err(err)?;
        worst = worst.max(rel(c.lhs, c.rhs));
    }
    ensure(worst <= 1e-8, format!("worst relative gap {worst:.1e} over 21 cases"))
}

fn property_suites() -> Check {
    let start = Instant::now();
    let out = Command::new(env!("CARGO"))
        .args(["test", "--quiet", "--manifest-path", concat!(env!("CARGO_MANIFEST_DIR"), "/Cargo.toml")])
        .args(["--test", "properties"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let stdout = String::from_utf8_lossy(&out.stdout);
    let summary = stdout.lines().find(|l| l.starts_with("test result")).unwrap_or("no summary");
    ensure(
        out.status.success() && elapsed < Duration::from_secs(60),
        format!("{summary} (wall {elapsed:?})"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("hc index golden values", hc_golden),
        ("staircase structure", staircase_structure),
        ("truncated exponential table", order_table),
        ("indicator arithmetic", indicator_arithmetic),
        ("norm sweep refutation", norm_refutation),
        ("weak form certification", weak_form),
        ("short-time exponent", short_time_exponents),
        ("gram defect order", gram_order),
        ("quadratic form identity", quadratic_identity),
        ("property suites", property_suites),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{}/10 criteria pass", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
