//! Acceptance criteria, one line each. Exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use modelspace_core::bernstein::{
    asymptotic_ratio_sweep, bergman_envelope, bernstein_constant_sigma, expansion_check, gap_shrinks,
    hardy_upper, last_element_derivative_audit,
};
use modelspace_core::blaschke::{model_projection, recentered_coefficients};
use modelspace_core::hermitian::gram_matrix;
use modelspace_core::interp::{
    interp_exact, interpolation_envelopes, moebius_seminorm_check, one_point_composed_closed_form,
    one_point_lower_bounds, one_point_test_function, single_point_closed_form,
};
use modelspace_core::series::compose_with_blaschke_factor;
use modelspace_core::{Complex64, MalmquistBasis, NormKind, PoleConfiguration, TaylorSeries};
use modelspace_lab::commands::audit_rows;
use modelspace_lab::quadrature::{last_element_derivative_quadrature, moebius_invariance_check, smooth_rule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn e(x: f64) -> String {
    format!("{x:.3e}")
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn cx(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn series(rng: &mut ChaCha8Rng, len: usize) -> TaylorSeries {
    TaylorSeries::new((0..len).map(|_| cx(rng)).collect()).unwrap()
}

fn point(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::from_polar(r * rng.random::<f64>().sqrt(), std::f64::consts::TAU * rng.random::<f64>())
}

fn sigma(rng: &mut ChaCha8Rng, n: usize, r: f64) -> PoleConfiguration {
    PoleConfiguration::new((0..n).map(|_| point(rng, r)).collect()).unwrap()
}

fn one_point(n: usize, r: f64) -> PoleConfiguration {
    PoleConfiguration::one_point(n, c(r)).unwrap()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn dirichlet_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let len = rng.random_range(1..=200);
        let f = series(&mut rng, len);
        let b = f.norm_sqr(NormKind::Dirichlet);
        let gap = (b - f.differentiate().norm_sqr(NormKind::Bergman) - f.norm_sqr(NormKind::Hardy)).abs();
        worst = worst.max(gap / b);
    }
    check(worst <= 1e-12, format!("500 series, max gap/norm {}", e(worst)))
}

fn orthonormality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.random_range(1..=12);
        let r = rng.random_range(0.0..=0.8);
        let basis = MalmquistBasis::with_policy(&sigma(&mut rng, n, r)).map_err(|x| x.to_string())?;
        worst = worst.max(gram_matrix(basis.elements(), NormKind::Hardy).max_deviation_from_identity());
    }
    check(worst <= 1e-10, format!("50 configurations, max entry deviation {}", e(worst)))
}

fn projection_traces() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        // distinct points with random multiplicities
        let mut pts = Vec::new();
        for _ in 0..rng.random_range(1..=4) {
            let p = point(&mut rng, 0.8);
            for _ in 0..rng.random_range(1..=3) {
                pts.push(p);
            }
        }
        let s = PoleConfiguration::new(pts).unwrap();
        let basis = MalmquistBasis::with_policy(&s).map_err(|x| x.to_string())?;
        let len = rng.random_range(1..=30);
        let f = series(&mut rng, len);
        let rest = f.resize(basis.trunc_len()).sub(&model_projection(&f, &basis));
        for (mu, m) in s.nodes() {
            for v in recentered_coefficients(&rest, mu, m).unwrap() {
                worst = worst.max(v.norm());
            }
        }
    }
    check(worst <= 1e-8, format!("50 pairs, max residual trace {}", e(worst)))
}

fn bernstein_hand_values() -> Outcome {
    let cases = [
        (vec![0.0, 0.0], 1.0),
        (vec![0.0, 0.0, 0.0], 2f64.sqrt()),
        (vec![0.5, 0.5], ((7.0 + 41f64.sqrt()) / 6.0).sqrt()),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for (pts, expect) in cases {
        let s = PoleConfiguration::new(pts.into_iter().map(c).collect()).unwrap();
        let v = bernstein_constant_sigma(&s, NormKind::Bergman).map_err(|x| x.to_string())?.constant;
        ok &= (v - expect).abs() <= 1e-9;
        parts.push(format!("{v:.12}"));
    }
    check(ok, format!("values {}", parts.join(", ")))
}

fn upper_chain() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut configs = Vec::new();
    for n in 1..=12 {
        for r in [0.0, 0.2, 0.4, 0.6, 0.8] {
            configs.push(one_point(n, r));
        }
    }
    for _ in 0..100 {
        let n = rng.random_range(1..=12);
        let r = rng.random_range(0.0..=0.8);
        configs.push(sigma(&mut rng, n, r));
    }
    let mut min_slack = f64::INFINITY;
    for s in &configs {
        let (n, r) = (s.len(), s.radius());
        let b = bernstein_constant_sigma(s, NormKind::Bergman).map_err(|x| x.to_string())?.constant;
        let h = bernstein_constant_sigma(s, NormKind::Hardy).map_err(|x| x.to_string())?.constant;
        let env = bergman_envelope(n, r).upper.unwrap();
        let slack = (h.sqrt() - b)
            .min(hardy_upper(n, r).sqrt() - h.sqrt())
            .min(env - b);
        min_slack = min_slack.min(slack);
    }
    check(
        min_slack >= -1e-9,
        format!("{} configurations, min slack {}", configs.len(), e(min_slack)),
    )
}

fn en_prime_audit() -> Outcome {
    let q = smooth_rule();
    let mut worst: f64 = 0.0;
    for n in 1..=20 {
        for r in [0.0, 0.3, 0.5, 0.7] {
            let a = last_element_derivative_audit(n, r).map_err(|x| x.to_string())?;
            let quad = last_element_derivative_quadrature(n, r, &q);
            worst = worst.max((a.numeric - quad).abs() / quad);
        }
    }
    let a = last_element_derivative_audit(2, 0.5).unwrap();
    let (_, findings) = audit_rows(&[2], &[0.5]).map_err(|x| x.to_string())?;
    let reported = findings.iter().any(|f| f.starts_with("en-prime n=2 r=0.5"));
    check(
        worst <= 1e-8 && (a.numeric - 2.0).abs() <= 1e-8 && (a.closed_form - 3.0).abs() <= 1e-12 && reported,
        format!(
            "coefficient vs quadrature max rel {}, n=2 r=0.5 numeric {:.12} closed form {:.12}, reported {reported}",
            e(worst),
            a.numeric,
            a.closed_form
        ),
    )
}

fn asymptotic_trend() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for target in [NormKind::Bergman, NormKind::Hardy] {
        for r in [0.0, 0.5] {
            let rows = asymptotic_ratio_sweep(r, &[25, 200], target).map_err(|x| x.to_string())?;
            ok &= gap_shrinks(&rows);
            parts.push(format!("{target:?} r={r} gaps {} -> {}", e(rows[0].gap()), e(rows[1].gap())));
        }
    }
    let ns = [2usize, 10, 25, 50, 100, 200];
    let rows = asymptotic_ratio_sweep(0.0, &ns, NormKind::Bergman).map_err(|x| x.to_string())?;
    let worst = rows
        .iter()
        .map(|row| (row.ratio - ((row.n as f64 - 1.0) / row.n as f64).sqrt()).abs())
        .fold(0.0, f64::max);
    ok &= worst <= 1e-9;
    parts.push(format!("r=0 closed-form gap {}", e(worst)));
    check(ok, parts.join("; "))
}

fn interp_brackets() -> Outcome {
    let mut min_slack = f64::INFINITY;
    for n in 2..=12 {
        for r in [0.0, 0.3, 0.5, 0.7] {
            let res = interp_exact(&one_point(n, r)).map_err(|x| x.to_string())?;
            let low = one_point_lower_bounds(n, c(r)).unwrap().stated;
            let env = interpolation_envelopes(n, r).finite.upper.unwrap();
            let slack = (res.exact - low)
                .min(res.upper_projection - res.exact)
                .min(env - res.upper_projection);
            min_slack = min_slack.min(slack);
        }
    }
    let z = interp_exact(&one_point(2, 0.0)).map_err(|x| x.to_string())?;
    let eq = (z.exact - 2f64.sqrt()).abs().max((z.upper_projection - 2f64.sqrt()).abs());
    check(
        min_slack >= -1e-9 && eq <= 1e-9,
        format!("44 configurations, min slack {}; at {{0,0}} max gap to sqrt2 {}", e(min_slack), e(eq)),
    )
}

fn single_point() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut at_half = 0.0;
    for m in [0.0, 0.25, 0.5, 0.75] {
        for theta in [0.0, 1.0, 2.5, 4.0] {
            let l = Complex64::from_polar(m, theta);
            let s = PoleConfiguration::new(vec![l]).unwrap();
            let exact = interp_exact(&s).map_err(|x| x.to_string())?.exact;
            let closed = single_point_closed_form(l).unwrap();
            worst = worst.max((exact - closed).abs());
            if m == 0.5 && theta == 0.0 {
                at_half = exact;
            }
        }
    }
    check(
        worst <= 1e-9 && (at_half - 1.0764).abs() < 5e-5,
        format!("max gap {}, value at 0.5 {at_half:.6}", e(worst)),
    )
}

fn test_function() -> Outcome {
    let mut worst_norm: f64 = 0.0;
    let mut worst_coef: f64 = 0.0;
    for n in 1..=50 {
        for r in [0.0, 0.1, 0.3, 0.5, 0.7] {
            let l = c(-r);
            let f = one_point_test_function(n, l).map_err(|x| x.to_string())?;
            worst_norm = worst_norm.max((f.norm_sqr(NormKind::Hardy) - n as f64).abs());
            let composed = compose_with_blaschke_factor(&f, l, n + 8).map_err(|x| x.to_string())?;
            let closed = one_point_composed_closed_form(n, l).unwrap();
            for k in 0..=n + 8 {
                worst_coef = worst_coef.max((composed.coeff(k) - closed.coeff(k)).norm());
            }
        }
    }
    check(
        worst_norm <= 1e-10 && worst_coef <= 1e-10,
        format!("norm gap {}, coefficient gap {}", e(worst_norm), e(worst_coef)),
    )
}

fn step_two() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst: f64 = 0.0;
    let mut min_slack = f64::INFINITY;
    // n = 1 makes the inequality an identity; it is checked as one below.
    for _ in 0..100 {
        let n = rng.random_range(2..=40);
        let r = rng.random_range(0.0..0.8);
        let basis = MalmquistBasis::with_policy(&one_point(n, r)).map_err(|x| x.to_string())?;
        let coords: Vec<Complex64> = (0..n).map(|_| cx(&mut rng)).collect();
        let rep = expansion_check(&basis, &coords).map_err(|x| x.to_string())?;
        worst = worst.max(rep.expansion_gap() / rep.q_norm_sqr.max(1.0));
        min_slack = min_slack.min(rep.p_bound_slack());
    }
    let basis = MalmquistBasis::with_policy(&one_point(1, 0.6)).map_err(|x| x.to_string())?;
    let rep = expansion_check(&basis, &[Complex64::new(0.3, -0.7)]).map_err(|x| x.to_string())?;
    let identity = rep.p_bound_slack().abs() / rep.p_hardy_bound;
    check(
        worst <= 1e-9 && min_slack >= 0.0 && identity <= 1e-15,
        format!(
            "100 functions, max relative expansion gap {}, min inequality slack {}, n=1 identity gap {}",
            e(worst),
            e(min_slack),
            e(identity)
        ),
    )
}

fn moebius() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let q = smooth_rule();
    let mut worst_coef: f64 = 0.0;
    let mut worst_quad: f64 = 0.0;
    for _ in 0..100 {
        let len = rng.random_range(2..=16);
        let g = series(&mut rng, len);
        let l = point(&mut rng, 0.7);
        worst_coef = worst_coef.max(moebius_seminorm_check(&g, l).map_err(|x| x.to_string())?.relative_gap());
        worst_quad = worst_quad.max(moebius_invariance_check(&g, l, &q).map_err(|x| x.to_string())?.relative_gap);
    }
    check(
        worst_coef <= 1e-8 && worst_quad <= 1e-8,
        format!("100 pairs, coefficient gap {}, quadrature gap {}", e(worst_coef), e(worst_quad)),
    )
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_modelspace");
    let runs: [&[&str]; 8] = [
        &["verify"],
        &["bernstein", "--sigma", "random:n=4,r=0.6,count=5", "--target", "hardy", "--seed", "3"],
        &["bernstein", "--sigma", "one-point:n=8,r=0.5"],
        &["interp", "--sigma", "one-point:n=6,r=0.3", "--exact", "--bounds"],
        &["interp", "--sigma", "random:n=3,r=0.5,count=4", "--format", "json"],
        &["asymptotics", "--r", "0.5", "--n-list", "25,100"],
        &["asymptotics", "--r", "0.3", "--n-list", "10,40", "--target", "hardy"],
        &["audit", "--n-list", "2,10", "--r-list", "0,0.5"],
    ];
    for args in runs {
        let a = Command::new(bin).args(args).output().map_err(|x| x.to_string())?;
        let b = Command::new(bin).args(args).output().map_err(|x| x.to_string())?;
        if a.stdout.is_empty() || a.stdout != b.stdout || a.stderr != b.stderr || a.status != b.status {
            return Err(format!("`{}` differs between runs", args.join(" ")));
        }
    }
    Ok(format!("{} commands byte-identical across two runs", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("dirichlet-identity", dirichlet_identity),
        ("malmquist-orthonormality", orthonormality),
        ("projection-traces", projection_traces),
        ("bernstein-hand-values", bernstein_hand_values),
        ("upper-bound-chain", upper_chain),
        ("en-prime-audit", en_prime_audit),
        ("asymptotic-trend", asymptotic_trend),
        ("interpolation-brackets", interp_brackets),
        ("single-point-closed-form", single_point),
        ("one-point-test-function", test_function),
        ("alternating-expansion", step_two),
        ("moebius-invariance", moebius),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("PASS {:02} {name}: {d} ({secs:.2}s)", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL {:02} {name}: {d} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} criteria, {failed} failed", criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
