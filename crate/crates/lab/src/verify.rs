//! Deterministic invariant suite behind `modelspace verify`.
//!
//! Every check uses fixed seeds and prints one line. Audits compare
//! closed forms against numerics; they are informational unless `strict`.

use modelspace_core::bernstein::{
    alternating_coordinates, bergman_envelope, bernstein_constant_sigma,
    bernstein_constant_with_trunc, expansion_check, hardy_upper, last_element_derivative_audit,
};
use modelspace_core::blaschke::{model_projection, recentered_coefficients};
use modelspace_core::hermitian::{gram_matrix, max_eigenpair, min_norm_solve, LinearConstraint};
use modelspace_core::interp::{
    interp_exact, interpolation_envelopes, moebius_seminorm_check, one_point_composed_closed_form,
    one_point_test_function, single_point_closed_form,
};
use modelspace_core::series::{cauchy_kernel_series, compose_with_blaschke_factor};
use modelspace_core::blaschke::blaschke_factor_eval;
use modelspace_core::{Complex64, HermitianMatrix, MalmquistBasis, NormKind, PoleConfiguration, TaylorSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quadrature::{
    bergman_norm_quadrature, bergman_norm_unchecked, hardy_norm_circle, moebius_invariance_check,
    smooth_rule, DiscQuadrature,
};

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub strict_paper: bool,
    /// Added to an off-diagonal entry of the orthonormality Gram (fault hook).
    pub inject_gram_perturbation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub lines: Vec<String>,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

type Check = fn(&VerifyOptions) -> Result<String, String>;

fn e(x: f64) -> String {
    format!("{x:.3e}")
}

fn cx(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    Complex64::new(rng.random_range(-scale..scale), rng.random_range(-scale..scale))
}

fn random_series(rng: &mut ChaCha8Rng, len: usize) -> TaylorSeries {
    TaylorSeries::new((0..len).map(|_| cx(rng, 1.0)).collect()).expect("finite")
}

fn random_sigma(rng: &mut ChaCha8Rng, n: usize, r: f64) -> PoleConfiguration {
    let pts = (0..n)
        .map(|_| {
            Complex64::from_polar(
                r * rng.random::<f64>().sqrt(),
                std::f64::consts::TAU * rng.random::<f64>(),
            )
        })
        .collect();
    PoleConfiguration::new(pts).expect("inside disc")
}

fn ensure(ok: bool, detail: String) -> Result<String, String> {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn core<T>(r: modelspace_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn dirichlet_identity(_: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let len = rng.random_range(1..120);
        let f = random_series(&mut rng, len);
        let d = f.norm_sqr(NormKind::Dirichlet);
        let rhs = f.differentiate().norm_sqr(NormKind::Bergman) + f.norm_sqr(NormKind::Hardy);
        worst = worst.max((d - rhs).abs() / d);
    }
    ensure(worst <= 1e-12, format!("max relative gap {}", e(worst)))
}

fn homogeneity(_: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let f = random_series(&mut rng, 30);
        let c = cx(&mut rng, 3.0);
        for kind in NormKind::ALL {
            let a = f.scale(c).norm(kind);
            let b = c.norm() * f.norm(kind);
            worst = worst.max((a - b).abs() / b);
        }
    }
    ensure(worst <= 1e-14 * 4.0, format!("max relative gap {}", e(worst)))
}

fn kernel_tail(_: &VerifyOptions) -> Result<String, String> {
    for l in [Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.9), Complex64::new(-0.6, 0.6)] {
        for n in [8usize, 32, 64] {
            let a = core(cauchy_kernel_series(l, n))?;
            let b = core(cauchy_kernel_series(l, 2 * n))?;
            let change = (b.norm(NormKind::Hardy) - a.norm(NormKind::Hardy)).abs();
            if change > a.tail_bound() {
                return Err(format!("lambda={l} N={n}: change {} > bound {}", e(change), e(a.tail_bound())));
            }
        }
    }
    Ok("9 kernels".into())
}

fn composition_evaluation(_: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst: f64 = 0.0;
    for _ in 0..40 {
        let f = random_series(&mut rng, 10);
        let l = Complex64::from_polar(rng.random_range(0.0..0.8), rng.random_range(0.0..std::f64::consts::TAU));
        let z = Complex64::from_polar(rng.random_range(0.0..0.9), rng.random_range(0.0..std::f64::consts::TAU));
        let comp = core(compose_with_blaschke_factor(&f, l, 500))?;
        let lhs = core(comp.evaluate(z))?;
        let rhs = core(f.evaluate(core(blaschke_factor_eval(l, z))?))?;
        worst = worst.max((lhs - rhs).norm());
    }
    ensure(worst < 1e-9, format!("max gap {}", e(worst)))
}

fn orthonormality(opts: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let n = rng.random_range(1..=12);
        let s = random_sigma(&mut rng, n, 0.8);
        let basis = core(MalmquistBasis::with_policy(&s))?;
        let mut g = gram_matrix(basis.elements(), NormKind::Hardy);
        if let (0, Some(eps)) = (i, opts.inject_gram_perturbation) {
            let j = if g.dim() > 1 { 1 } else { 0 };
            g = g.perturbed(0, j, Complex64::new(eps, 0.0));
        }
        worst = worst.max(g.max_deviation_from_identity());
    }
    ensure(worst <= 1e-10, format!("max deviation from identity {}", e(worst)))
}

fn projection_traces(_: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let mut pts = random_sigma(&mut rng, 3, 0.75).points().to_vec();
        pts.push(pts[0]);
        pts.push(pts[2]);
        let s = core(PoleConfiguration::new(pts))?;
        let basis = core(MalmquistBasis::with_policy(&s))?;
        let f = random_series(&mut rng, 12);
        let p = model_projection(&f, &basis);
        if p.norm(NormKind::Hardy) > f.norm(NormKind::Hardy) + 1e-12 {
            return Err("projection increased the H2 norm".into());
        }
        let rest = f.resize(basis.trunc_len()).sub(&p);
        for (mu, m) in s.nodes() {
            for v in core(recentered_coefficients(&rest, mu, m))? {
                worst = worst.max(v.norm());
            }
        }
    }
    ensure(worst < 1e-8, format!("max residual trace {}", e(worst)))
}

fn rayleigh(_: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let n = 7;
    let raw: Vec<Complex64> = (0..n * n).map(|_| cx(&mut rng, 1.0)).collect();
    let m = HermitianMatrix::from_fn(n, |j, k| (raw[j * n + k] + raw[k * n + j].conj()) * 0.5);
    let top = core(max_eigenpair(&m))?;
    let mut excess = f64::NEG_INFINITY;
    for _ in 0..1000 {
        let v: Vec<Complex64> = (0..n).map(|_| cx(&mut rng, 1.0)).collect();
        let norm: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        excess = excess.max(m.quadratic_form(&v) / norm - top.value);
    }
    ensure(
        excess <= 1e-10 && top.residual <= 1e-10 * (1.0 + top.value.abs()),
        format!("max Rayleigh excess {}, residual {}", e(excess), e(top.residual)),
    )
}

fn min_norm(_: &VerifyOptions) -> Result<String, String> {
    let len = 20;
    let w: Vec<f64> = (0..len).map(|k| k as f64 + 1.0).collect();
    let cons: Vec<LinearConstraint> = [(0.3, 0.7), (-0.4, -1.1)]
        .iter()
        .map(|&(p, t)| LinearConstraint {
            functional: (0..len).map(|k| Complex64::new(p, 0.0).powu(k as u32)).collect(),
            target: Complex64::new(t, 0.0),
        })
        .collect();
    let sol = core(min_norm_solve(&w, &cons))?;
    let mut worst: f64 = 0.0;
    for c in &cons {
        let v: Complex64 = c.functional.iter().zip(sol.series.coeffs()).map(|(a, x)| a * x).sum();
        worst = worst.max((v - c.target).norm());
    }
    ensure(worst < 1e-10, format!("max constraint violation {}", e(worst)))
}

fn bernstein_hand_values(_: &VerifyOptions) -> Result<String, String> {
    let cases: [(&[f64], f64); 4] = [
        (&[0.0], 0.0),
        (&[0.0, 0.0], 1.0),
        (&[0.0, 0.0, 0.0], 2f64.sqrt()),
        (&[0.5, 0.5], ((7.0 + 41f64.sqrt()) / 6.0).sqrt()),
    ];
    let mut worst: f64 = 0.0;
    for (pts, expect) in cases {
        let s = core(PoleConfiguration::new(pts.iter().map(|&x| Complex64::new(x, 0.0)).collect()))?;
        let v = core(bernstein_constant_sigma(&s, NormKind::Bergman))?.constant;
        worst = worst.max((v - expect).abs());
    }
    ensure(worst <= 1e-9, format!("max gap {}", e(worst)))
}

fn upper_chain(_: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut configs: Vec<PoleConfiguration> = Vec::new();
    for n in 1..=12 {
        for r in [0.0, 0.4, 0.8] {
            configs.push(core(PoleConfiguration::one_point(n, Complex64::new(r, 0.0)))?);
        }
    }
    for _ in 0..100 {
        let n = rng.random_range(1..=12);
        let r = rng.random_range(0.0..0.8);
        configs.push(random_sigma(&mut rng, n, r));
    }
    for s in &configs {
        let (n, r) = (s.len(), s.radius());
        let b = core(bernstein_constant_sigma(s, NormKind::Bergman))?.constant;
        let h = core(bernstein_constant_sigma(s, NormKind::Hardy))?.constant;
        let up = bergman_envelope(n, r).upper.unwrap_or(f64::INFINITY);
        if !(b <= h.sqrt() + 1e-9 && h.sqrt() <= hardy_upper(n, r).sqrt() + 1e-9 && b <= up + 1e-9) {
            return Err(format!("n={n} r={}: bergman {} hardy {}", e(r), e(b), e(h)));
        }
    }
    Ok(format!("{} configurations", configs.len()))
}

fn bernstein_rotation(_: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut worst: f64 = 0.0;
    for _ in 0..8 {
        let s = random_sigma(&mut rng, 5, 0.7);
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        for t in [NormKind::Bergman, NormKind::Hardy] {
            let a = core(bernstein_constant_sigma(&s, t))?.constant;
            let b = core(bernstein_constant_sigma(&s.rotated(theta), t))?.constant;
            worst = worst.max((a - b).abs() / a.max(1.0));
        }
    }
    ensure(worst < 1e-8, format!("max gap {}", e(worst)))
}

fn nesting(_: &VerifyOptions) -> Result<String, String> {
    for r in [0.0, 0.5, 0.7] {
        let mut prev = 0.0;
        for n in 1..=12 {
            let s = core(PoleConfiguration::one_point(n, Complex64::new(r, 0.0)))?;
            let v = core(bernstein_constant_sigma(&s, NormKind::Bergman))?.constant;
            if v < prev - 1e-10 {
                return Err(format!("r={r} n={n}: {} < {}", e(v), e(prev)));
            }
            prev = v;
        }
    }
    Ok("n = 1..12, r in {0, 0.5, 0.7}".into())
}

fn doubling(_: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let s = random_sigma(&mut rng, 6, 0.8);
        let a = core(bernstein_constant_sigma(&s, NormKind::Hardy))?;
        let b = core(bernstein_constant_with_trunc(&s, NormKind::Hardy, 2 * (a.trunc_len - 1)))?;
        worst = worst.max((a.constant - b.constant).abs() / a.constant);
    }
    ensure(worst < 1e-8, format!("max relative change {}", e(worst)))
}

fn interp_hand_values(_: &VerifyOptions) -> Result<String, String> {
    let one = |pts: &[f64]| -> Result<f64, String> {
        let s = core(PoleConfiguration::new(pts.iter().map(|&x| Complex64::new(x, 0.0)).collect()))?;
        Ok(core(interp_exact(&s))?.exact)
    };
    let gaps = [
        (one(&[0.0])? - 1.0).abs(),
        (one(&[0.0, 0.0])? - 2f64.sqrt()).abs(),
        (one(&[0.5])? - core(single_point_closed_form(Complex64::new(0.5, 0.0)))?).abs(),
    ];
    let worst = gaps.iter().copied().fold(0.0, f64::max);
    ensure(worst < 1e-9, format!("max gap {}", e(worst)))
}

fn interp_brackets(_: &VerifyOptions) -> Result<String, String> {
    let mut min_slack = f64::INFINITY;
    for n in 2..=12 {
        for r in [0.0, 0.3, 0.5, 0.7] {
            let s = core(PoleConfiguration::one_point(n, Complex64::new(r, 0.0)))?;
            let res = core(interp_exact(&s))?;
            let low = res.lower_one_point.ok_or("missing lower bound")?;
            let env = interpolation_envelopes(n, r).finite.upper.unwrap_or(f64::INFINITY);
            let slack = (res.exact - low.stated)
                .min(res.exact - low.partial_sum)
                .min(res.upper_projection - res.exact)
                .min(env - res.upper_projection);
            if slack < -1e-9 {
                return Err(format!("n={n} r={r}: slack {}", e(slack)));
            }
            min_slack = min_slack.min(slack);
        }
    }
    Ok(format!("44 configurations, min slack {}", e(min_slack)))
}

fn interp_rotation(_: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let mut worst: f64 = 0.0;
    for _ in 0..6 {
        let s = random_sigma(&mut rng, 4, 0.7);
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let a = core(interp_exact(&s))?.exact;
        let b = core(interp_exact(&s.rotated(theta)))?.exact;
        worst = worst.max((a - b).abs());
    }
    ensure(worst < 1e-8, format!("max gap {}", e(worst)))
}

fn moebius(_: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    let q = smooth_rule();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let g = random_series(&mut rng, 11);
        let l = Complex64::from_polar(rng.random_range(0.0..0.7), rng.random_range(0.0..std::f64::consts::TAU));
        let a = core(moebius_seminorm_check(&g, l))?.relative_gap();
        let b = moebius_invariance_check(&g, l, &q).map_err(|e| e.to_string())?.relative_gap;
        worst = worst.max(a).max(b);
    }
    ensure(worst < 1e-8, format!("max relative gap {}", e(worst)))
}

fn quadrature_agreement(_: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(112);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let deg = rng.random_range(0..=64);
        let f = random_series(&mut rng, deg + 1);
        let q = DiscQuadrature::for_degree(deg);
        let b = bergman_norm_quadrature(&f, &q).map_err(|e| e.to_string())?;
        let h = hardy_norm_circle(&f, 2 * deg + 2).map_err(|e| e.to_string())?;
        worst = worst
            .max((b - f.norm(NormKind::Bergman)).abs() / f.norm(NormKind::Bergman))
            .max((h - f.norm(NormKind::Hardy)).abs() / f.norm(NormKind::Hardy));
    }
    ensure(worst < 1e-11, format!("max relative gap {}", e(worst)))
}

fn quadrature_negative_control(_: &VerifyOptions) -> Result<String, String> {
    let deg = 40;
    let f = TaylorSeries::monomial(deg, deg + 1);
    let exact = f.norm(NormKind::Bergman);
    let full = DiscQuadrature::for_degree(deg);
    let halved = DiscQuadrature::with_orders(full.radial_count() / 2, full.angular_count() / 2);
    let gap = (bergman_norm_unchecked(&f, &halved) - exact).abs() / exact;
    ensure(gap > 1e-6, format!("halved-rule gap {}", e(gap)))
}

fn expansion(_: &VerifyOptions) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    let mut worst: f64 = 0.0;
    let mut min_slack = f64::INFINITY;
    for (n, r) in [(2usize, 0.5), (7, 0.3), (16, 0.6), (30, 0.8)] {
        let s = core(PoleConfiguration::one_point(n, Complex64::new(r, 0.0)))?;
        let basis = core(MalmquistBasis::with_policy(&s))?;
        for _ in 0..5 {
            let coords: Vec<Complex64> = (0..n).map(|_| cx(&mut rng, 1.0)).collect();
            let rep = core(expansion_check(&basis, &coords))?;
            worst = worst
                .max(rep.expansion_gap() / rep.q_norm_sqr.max(1.0))
                .max(rep.substitution_gap() / rep.derivative_norm_sqr.max(1.0));
            min_slack = min_slack.min(rep.p_bound_slack());
            if !rep.sandwich_holds(1e-12) {
                return Err(format!("sandwich violated at n={n} r={r}"));
            }
        }
    }
    ensure(worst < 1e-9 && min_slack >= 0.0, format!("max gap {}, min slack {}", e(worst), e(min_slack)))
}

fn test_function(_: &VerifyOptions) -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for n in [1usize, 2, 5, 12, 30, 50] {
        for r in [0.0, 0.3, 0.7] {
            let l = Complex64::new(-r, 0.0);
            let f = core(one_point_test_function(n, l))?;
            worst = worst.max((f.norm_sqr(NormKind::Hardy) - n as f64).abs());
            let comp = core(compose_with_blaschke_factor(&f, l, n + 3))?;
            let closed = core(one_point_composed_closed_form(n, l))?;
            for k in 0..=n + 3 {
                worst = worst.max((comp.coeff(k) - closed.coeff(k)).norm());
            }
        }
    }
    ensure(worst < 1e-10, format!("max gap {}", e(worst)))
}

fn audit_en_prime(_: &VerifyOptions) -> Result<String, String> {
    let a = core(last_element_derivative_audit(2, 0.5))?;
    let detail = format!(
        "n=2 r=0.5 numeric {} closed form {} discrepancy {}",
        e(a.numeric),
        e(a.closed_form),
        e(a.discrepancy)
    );
    ensure(a.discrepancy.abs() <= 1e-8, detail)
}

fn audit_lower_bracket(_: &VerifyOptions) -> Result<String, String> {
    let mut failing = Vec::new();
    for n in 1..=6 {
        let s = core(PoleConfiguration::one_point(n, Complex64::new(0.5, 0.0)))?;
        let c = core(bernstein_constant_sigma(&s, NormKind::Bergman))?.constant;
        if c < bergman_envelope(n, 0.5).lower.unwrap_or(0.0) - 1e-9 {
            failing.push(n.to_string());
        }
    }
    ensure(
        failing.is_empty(),
        format!("one-point constants below the closed-form lower bound at r=0.5 for n in [{}]", failing.join(",")),
    )
}

fn audit_expansion_printed(_: &VerifyOptions) -> Result<String, String> {
    let s = core(PoleConfiguration::one_point(10, Complex64::new(0.5, 0.0)))?;
    let basis = core(MalmquistBasis::with_policy(&s))?;
    let rep = core(expansion_check(&basis, &core(alternating_coordinates(10, 2))?))?;
    ensure(
        (rep.q_expansion_as_printed - rep.q_norm_sqr).abs() <= 1e-9 * rep.q_norm_sqr.max(1.0),
        format!("n=10 r=0.5 s=2 printed {} direct {}", e(rep.q_expansion_as_printed), e(rep.q_norm_sqr)),
    )
}

const INVARIANTS: &[(&str, Check)] = &[
    ("series.dirichlet-identity", dirichlet_identity),
    ("series.homogeneity", homogeneity),
    ("series.kernel-tail-bound", kernel_tail),
    ("series.composition-evaluation", composition_evaluation),
    ("basis.orthonormality", orthonormality),
    ("basis.projection-traces", projection_traces),
    ("hermitian.rayleigh-bound", rayleigh),
    ("hermitian.min-norm-feasibility", min_norm),
    ("bernstein.hand-values", bernstein_hand_values),
    ("bernstein.upper-chain", upper_chain),
    ("bernstein.rotation-invariance", bernstein_rotation),
    ("bernstein.nesting", nesting),
    ("bernstein.doubling-stability", doubling),
    ("interp.hand-values", interp_hand_values),
    ("interp.brackets", interp_brackets),
    ("interp.rotation-invariance", interp_rotation),
    ("interp.moebius-invariance", moebius),
    ("quadrature.agreement", quadrature_agreement),
    ("quadrature.negative-control", quadrature_negative_control),
    ("alternating.expansion", expansion),
    ("test-function.composition", test_function),
];

const AUDITS: &[(&str, Check)] = &[
    ("audit.en-prime", audit_en_prime),
    ("audit.bergman-lower-bracket", audit_lower_bracket),
    ("audit.expansion-as-printed", audit_expansion_printed),
];

pub fn invariant_names() -> Vec<&'static str> {
    INVARIANTS.iter().chain(AUDITS).map(|(n, _)| *n).collect()
}

pub fn run_verify(opts: &VerifyOptions) -> VerifyReport {
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for (name, check) in INVARIANTS {
        match check(opts) {
            Ok(detail) => lines.push(format!("PASS {name}: {detail}")),
            Err(detail) => {
                lines.push(format!("FAIL {name}: {detail}"));
                failures.push(name.to_string());
            }
        }
    }
    for (name, check) in AUDITS {
        match check(opts) {
            Ok(detail) => lines.push(format!("PASS {name}: {detail}")),
            Err(detail) if opts.strict_paper => {
                lines.push(format!("FAIL {name}: {detail}"));
                failures.push(name.to_string());
            }
            Err(detail) => lines.push(format!("INFO {name}: {detail}")),
        }
    }
    lines.push(format!(
        "verify: {} checks, {} failed",
        INVARIANTS.len() + AUDITS.len(),
        failures.len()
    ));
    VerifyReport { lines, failures }
}
