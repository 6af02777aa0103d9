use modelspace_core::bernstein::{
    bergman_envelope, bernstein_constant_sigma, bernstein_constant_with_trunc, hardy_upper,
};
use modelspace_core::blaschke::{model_projection, recentered_coefficients};
use modelspace_core::hermitian::gram_matrix;
use modelspace_core::{Complex64, MalmquistBasis, NormKind, PoleConfiguration, TaylorSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_sigma(rng: &mut ChaCha8Rng, n: usize, r: f64) -> PoleConfiguration {
    let pts = (0..n)
        .map(|_| {
            Complex64::from_polar(
                r * rng.random::<f64>().sqrt(),
                std::f64::consts::TAU * rng.random::<f64>(),
            )
        })
        .collect();
    PoleConfiguration::new(pts).unwrap()
}

fn random_poly(rng: &mut ChaCha8Rng, len: usize) -> TaylorSeries {
    TaylorSeries::new(
        (0..len)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect(),
    )
    .unwrap()
}

#[test]
fn orthonormal_for_random_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..30 {
        let n = rng.random_range(1..=12);
        let s = random_sigma(&mut rng, n, 0.8);
        let basis = MalmquistBasis::with_policy(&s).unwrap();
        let g = gram_matrix(basis.elements(), NormKind::Hardy);
        assert!(g.max_deviation_from_identity() < 1e-10);
    }
}

#[test]
fn projection_removes_traces_with_multiplicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let mut pts = random_sigma(&mut rng, 3, 0.7).points().to_vec();
        pts.push(pts[0]);
        pts.push(pts[1]);
        pts.push(pts[0]);
        let s = PoleConfiguration::new(pts).unwrap();
        let basis = MalmquistBasis::with_policy(&s).unwrap();
        let f = random_poly(&mut rng, 10);
        let p = model_projection(&f, &basis);
        assert!(p.norm(NormKind::Hardy) <= f.norm(NormKind::Hardy) + 1e-12);
        let rest = f.resize(basis.trunc_len()).sub(&p);
        for (mu, m) in s.nodes() {
            for coeff in recentered_coefficients(&rest, mu, m).unwrap() {
                assert!(coeff.norm() < 1e-8, "{mu} x{m}: {coeff}");
            }
        }
        let again = model_projection(&p, &basis);
        assert!(again.sub(&p).norm(NormKind::Hardy) < 1e-12);
    }
}

#[test]
fn constants_are_rotation_and_order_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let s = random_sigma(&mut rng, 5, 0.75);
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let mut reversed = s.points().to_vec();
        reversed.reverse();
        let rev = PoleConfiguration::new(reversed).unwrap();
        for target in [NormKind::Bergman, NormKind::Hardy] {
            let base = bernstein_constant_sigma(&s, target).unwrap().constant;
            let rot = bernstein_constant_sigma(&s.rotated(theta), target).unwrap().constant;
            let ord = bernstein_constant_sigma(&rev, target).unwrap().constant;
            assert!((base - rot).abs() < 1e-8 * base.max(1.0));
            assert!((base - ord).abs() < 1e-8 * base.max(1.0));
        }
    }
}

#[test]
fn rotated_basis_is_precomposition_up_to_phases() {
    let s = PoleConfiguration::new(vec![Complex64::new(0.3, 0.2), Complex64::new(-0.5, 0.1)]).unwrap();
    let theta = 0.9;
    let a = MalmquistBasis::with_policy(&s).unwrap();
    let b = MalmquistBasis::with_policy(&s.rotated(theta)).unwrap();
    let w = Complex64::from_polar(1.0, -theta);
    for (ea, eb) in a.elements().iter().zip(b.elements()) {
        // e_b(z) = u · e_a(e^{-iθ} z) for a unimodular u.
        let z = Complex64::new(0.2, -0.4);
        let u = eb.evaluate(z).unwrap() / ea.evaluate(z * w).unwrap();
        assert!((u.norm() - 1.0).abs() < 1e-10);
        let z2 = Complex64::new(-0.6, 0.1);
        let u2 = eb.evaluate(z2).unwrap() / ea.evaluate(z2 * w).unwrap();
        assert!((u - u2).norm() < 1e-10);
    }
}

#[test]
fn nesting_monotonicity_for_one_point_spaces() {
    for &r in &[0.0, 0.4, 0.7] {
        let mut prev = 0.0;
        for n in 1..=10 {
            let s = PoleConfiguration::one_point(n, Complex64::new(r, 0.0)).unwrap();
            let v = bernstein_constant_sigma(&s, NormKind::Bergman).unwrap().constant;
            assert!(v >= prev - 1e-10);
            prev = v;
        }
    }
}

#[test]
fn chain_of_upper_bounds_and_member_domination() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let n = rng.random_range(1..=8);
        let r = rng.random_range(0.0..0.8);
        let s = random_sigma(&mut rng, n, r);
        let berg = bernstein_constant_sigma(&s, NormKind::Bergman).unwrap();
        let hardy = bernstein_constant_sigma(&s, NormKind::Hardy).unwrap();
        assert!(berg.constant <= hardy.constant.sqrt() + 1e-9);
        assert!(hardy.constant <= hardy_upper(n, s.radius()) + 1e-9);
        assert!(berg.constant <= bergman_envelope(n, s.radius()).upper.unwrap() + 1e-9);
        let basis = MalmquistBasis::with_policy(&s).unwrap();
        for e in basis.elements() {
            assert!(berg.constant >= e.differentiate().norm(NormKind::Bergman) - 1e-12);
        }
    }
}

#[test]
fn constant_scale_invariance() {
    let s = PoleConfiguration::new(vec![Complex64::new(0.2, 0.3), Complex64::new(0.6, 0.0), Complex64::new(-0.1, -0.5)]).unwrap();
    let basis = MalmquistBasis::with_policy(&s).unwrap();
    let derivs: Vec<TaylorSeries> = basis.elements().iter().map(|e| e.differentiate()).collect();
    let factor = Complex64::new(-0.3, 1.7);
    let scaled: Vec<TaylorSeries> = derivs.iter().map(|d| d.scale(factor)).collect();
    let a = gram_matrix(&derivs, NormKind::Bergman).max_eigenpair().unwrap().value.sqrt();
    let b = gram_matrix(&scaled, NormKind::Bergman).max_eigenpair().unwrap().value.sqrt();
    assert!((a * factor.norm() - b).abs() < 1e-12 * b);
}

#[test]
fn doubling_truncation_is_stable() {
    let s = PoleConfiguration::new(vec![Complex64::new(0.7, 0.1), Complex64::new(0.7, 0.1), Complex64::new(-0.4, 0.5)]).unwrap();
    for target in [NormKind::Bergman, NormKind::Hardy] {
        let base = bernstein_constant_sigma(&s, target).unwrap();
        let doubled = bernstein_constant_with_trunc(&s, target, 2 * (base.trunc_len - 1)).unwrap();
        assert!((base.constant - doubled.constant).abs() < 1e-8 * base.constant);
    }
}

#[test]
fn alternating_ratio_grows_between_sizes() {
    use modelspace_core::bernstein::alternating_ratio;
    let small = alternating_ratio(25, 0.5, 4).unwrap();
    let large = alternating_ratio(200, 0.5, 14).unwrap();
    assert!(large > small, "{small} {large}");
}
