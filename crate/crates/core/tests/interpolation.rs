use modelspace_core::interp::{
    interp_exact, interp_exact_with_trunc, interpolation_envelopes, min_norm_interpolant,
    moebius_seminorm_check, one_point_test_function, single_point_closed_form,
};
use modelspace_core::blaschke::recentered_coefficients;
use modelspace_core::{Complex64, NormKind, PoleConfiguration, TaylorSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn one_point_brackets() {
    for n in 2..=12 {
        for &r in &[0.0, 0.3, 0.5, 0.7] {
            let s = PoleConfiguration::one_point(n, c(r, 0.0)).unwrap();
            let res = interp_exact(&s).unwrap();
            let low = res.lower_one_point.unwrap();
            let env = interpolation_envelopes(n, r);
            assert!(low.stated <= res.exact + 1e-9, "n={n} r={r}");
            assert!(low.partial_sum <= res.exact + 1e-9, "n={n} r={r}");
            assert!(res.exact <= res.upper_projection + 1e-9, "n={n} r={r}");
            assert!(res.upper_projection <= env.finite.upper.unwrap() + 1e-9, "n={n} r={r}");
        }
    }
}

#[test]
fn witness_interpolates_with_multiplicity() {
    let s = PoleConfiguration::new(vec![c(0.4, 0.2), c(0.4, 0.2), c(-0.3, 0.0), c(0.4, 0.2)]).unwrap();
    let res = interp_exact(&s).unwrap();
    assert!((res.witness_f.norm(NormKind::Hardy) - 1.0).abs() < 1e-10);
    assert!((res.witness_g.norm(NormKind::Dirichlet) - res.exact).abs() < 1e-9);
    let diff = res.witness_f.sub(&res.witness_g);
    for (mu, m) in s.nodes() {
        for v in recentered_coefficients(&diff, mu, m).unwrap() {
            assert!(v.norm() < 1e-8);
        }
    }
}

#[test]
fn rotation_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..5 {
        let pts: Vec<Complex64> = (0..4)
            .map(|_| Complex64::from_polar(rng.random_range(0.0..0.7), rng.random_range(0.0..std::f64::consts::TAU)))
            .collect();
        let s = PoleConfiguration::new(pts).unwrap();
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let a = interp_exact(&s).unwrap().exact;
        let b = interp_exact(&s.rotated(theta)).unwrap().exact;
        assert!((a - b).abs() < 1e-8);
    }
}

#[test]
fn test_function_quotient_below_exact() {
    for &(n, r) in &[(3usize, 0.5), (6, 0.3), (10, 0.7)] {
        let lambda = c(r, 0.0);
        let s = PoleConfiguration::one_point(n, lambda).unwrap();
        let res = interp_exact(&s).unwrap();
        let f = one_point_test_function(n, lambda).unwrap();
        let g = min_norm_interpolant(&f, &s, res.trunc_len - 1).unwrap();
        let q = g.weighted_norm / f.norm(NormKind::Hardy);
        assert!(q <= res.exact + 1e-9, "{q} > {}", res.exact);
    }
}

#[test]
fn single_point_closed_form_values() {
    for &m in &[0.0, 0.25, 0.5, 0.75] {
        let l = Complex64::from_polar(m, 0.4);
        let s = PoleConfiguration::new(vec![l]).unwrap();
        let exact = interp_exact(&s).unwrap().exact;
        assert!((exact - single_point_closed_form(l).unwrap()).abs() < 1e-9, "{m}");
    }
}

#[test]
fn doubling_truncation_is_stable() {
    let s = PoleConfiguration::one_point(6, c(0.7, 0.0)).unwrap();
    let base = interp_exact(&s).unwrap();
    let doubled = interp_exact_with_trunc(&s, 2 * (base.trunc_len - 1)).unwrap();
    assert!((base.exact - doubled.exact).abs() < 1e-8 * base.exact);
}

#[test]
fn moebius_invariance_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..30 {
        let g = TaylorSeries::new(
            (0..11)
                .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect(),
        )
        .unwrap();
        let l = Complex64::from_polar(rng.random_range(0.0..0.7), rng.random_range(0.0..std::f64::consts::TAU));
        assert!(moebius_seminorm_check(&g, l).unwrap().relative_gap() < 1e-8);
    }
}
