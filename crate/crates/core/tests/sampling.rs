use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};
use simplex_limits::geometry::{distance_to_affine_hull, log_parallelotope_volume, log_simplex_volume};
use simplex_limits::rng::with_threads;
use simplex_limits::sampling::{
    distance_samples, log_volume_samples, sample_distance_to_affine, sample_points, sample_product_representation,
};
use simplex_limits::stats::{ks_one_sample, ks_two_sample, ks_two_sample_critical, mean_and_se};
use simplex_limits::{
    log_moment_simplex, ModelSpec, MomentOrder, PointCloud, RngSeed, SamplePath, SimplexDims, Target, VolumeConvention,
};

fn dims(n: usize, r: usize) -> SimplexDims {
    SimplexDims::new(n, r).unwrap()
}

fn norms(cloud: &PointCloud) -> Vec<f64> {
    (0..cloud.count()).map(|i| cloud.coords().column(i).norm()).collect()
}

#[test]
fn spherical_points_lie_on_the_sphere() {
    for n in [2, 3, 17] {
        let c = sample_points(ModelSpec::spherical(), n, 500, RngSeed::new(1, n as u64)).unwrap();
        assert!(norms(&c).iter().all(|r| (r - 1.0).abs() < 1e-12));
    }
}

#[test]
fn beta_points_lie_in_the_ball() {
    let c = sample_points(ModelSpec::beta(0.3).unwrap(), 6, 10_000, RngSeed::new(2, 0)).unwrap();
    assert!(norms(&c).iter().all(|&r| r <= 1.0 + 1e-12));
}

#[test]
fn gaussian_coordinates_are_standard() {
    let c = sample_points(ModelSpec::gaussian(), 10, 100_000, RngSeed::new(3, 0)).unwrap();
    for i in 0..10 {
        let row: Vec<f64> = c.coords().row(i).iter().copied().collect();
        let (m, _) = mean_and_se(&row);
        let var = row.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (row.len() - 1) as f64;
        assert!(m.abs() < 4.0 / 100_000f64.sqrt(), "coordinate {i}: mean {m}");
        assert!((var - 1.0).abs() < 0.02, "coordinate {i}: var {var}");
    }
}

#[test]
fn beta_radius_in_three_dimensions() {
    // ν = 2, n = 3: |X|² ~ Beta(3/2, 1), whose CDF is u^{3/2}.
    let c = sample_points(ModelSpec::beta(2.0).unwrap(), 3, 100_000, RngSeed::new(4, 0)).unwrap();
    let r2: Vec<f64> = norms(&c).iter().map(|r| r * r).collect();
    let d = ks_one_sample(&r2, |u| u.clamp(0.0, 1.0).powf(1.5));
    assert!(d < 0.006, "{d}");
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const STEPS: usize = 20_000;
    let h = (b - a) / STEPS as f64;
    let inner: f64 = (1..STEPS).map(|i| f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 }).sum();
    h / 3.0 * (f(a) + inner + f(b))
}

/// CDF of `|X|` from its unnormalized radial density and total mass.
fn radial_cdf(density: impl Fn(f64) -> f64, total: f64, at: &[f64]) -> Vec<f64> {
    at.iter().map(|&r| simpson(&density, 0.0, r) / total).collect()
}

#[test]
fn radial_laws_match_numeric_integration() {
    let n = 4usize;
    let grid: Vec<f64> = (1..40).map(|i| i as f64 * 0.025).collect();
    for nu in [2.0, 3.0, 5.0] {
        let c = sample_points(ModelSpec::beta(nu).unwrap(), n, 100_000, RngSeed::new(5, nu as u64)).unwrap();
        let mut r = norms(&c);
        r.sort_by(f64::total_cmp);
        // ν = 2 keeps the density bounded at s = 1; larger ν vanish there.
        let density = |s: f64| s.powi(n as i32 - 1) * (1.0 - s * s).max(0.0).powf((nu - 2.0) / 2.0);
        let want = radial_cdf(density, simpson(density, 0.0, 1.0), &grid);
        for (x, w) in grid.iter().zip(want) {
            let emp = r.partition_point(|&v| v <= *x) as f64 / r.len() as f64;
            assert!((emp - w).abs() < 0.008, "beta nu={nu} r={x}: {emp} vs {w}");
        }
    }
    let grid: Vec<f64> = (1..60).map(|i| i as f64 * 0.1).collect();
    for nu in [3.0, 6.0] {
        let c = sample_points(ModelSpec::beta_prime(nu).unwrap(), n, 100_000, RngSeed::new(6, nu as u64)).unwrap();
        let mut r = norms(&c);
        r.sort_by(f64::total_cmp);
        let density = |s: f64| s.powi(n as i32 - 1) * (1.0 + s * s).powf(-(n as f64 + nu) / 2.0);
        // Total mass through s = tan θ, which maps the half line onto [0, π/2).
        let total = simpson(|th: f64| th.sin().powi(n as i32 - 1) * th.cos().powf(nu - 1.0), 0.0, std::f64::consts::FRAC_PI_2);
        let want = radial_cdf(density, total, &grid);
        for (x, w) in grid.iter().zip(want) {
            let emp = r.partition_point(|&v| v <= *x) as f64 / r.len() as f64;
            assert!((emp - w).abs() < 0.008, "beta-prime nu={nu} r={x}: {emp} vs {w}");
        }
    }
}

#[test]
fn segment_volume_is_length() {
    let c = sample_points(ModelSpec::gaussian(), 7, 2, RngSeed::new(7, 0)).unwrap();
    let diff = c.coords().column(1) - c.coords().column(0);
    let v = log_simplex_volume(&c).unwrap();
    assert_eq!(v.convention, VolumeConvention::RawVolume);
    assert!((v.value - diff.norm().ln()).abs() < 1e-14);
    let one = PointCloud::from_columns(c.coords().columns(0, 1).into_owned());
    assert!((log_parallelotope_volume(&one).unwrap().value - c.coords().column(0).norm().ln()).abs() < 1e-14);
}

#[test]
fn simplex_second_moment_matches_exact_formula() {
    let g = ModelSpec::gaussian();
    let d = dims(30, 10);
    let exact = log_moment_simplex(g, d, MomentOrder::new(1.0).unwrap()).unwrap().value;
    let logs = log_volume_samples(g, d, Target::Simplex, SamplePath::Geometric, 1_000_000, RngSeed::new(8, 0)).unwrap();
    let x: Vec<f64> = logs.iter().map(|l| (2.0 * l - exact).exp()).collect();
    let (m, se) = mean_and_se(&x);
    assert!((m - 1.0).abs() < 3.0 * se, "{m} ± {se}");
}

#[test]
fn gaussian_product_law_is_chi_square_product() {
    let (n, r) = (10usize, 3usize);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let direct: Vec<f64> = (0..20_000)
        .map(|_| {
            let s: f64 = (1..=r).map(|j| ChiSquared::new((n - r + j) as f64).unwrap().sample(&mut rng).ln()).sum();
            0.5 * (((r + 1) as f64).ln() + s)
        })
        .collect();
    let product = log_volume_samples(ModelSpec::gaussian(), dims(n, r), Target::Simplex, SamplePath::Reference, 20_000, RngSeed::new(9, 0))
        .unwrap();
    assert!(ks_two_sample(&direct, &product) < ks_two_sample_critical(20_000, 20_000, 1e-3));
}

#[test]
fn product_and_geometric_samplers_agree() {
    let crit = ks_two_sample_critical(20_000, 20_000, 1e-3);
    let cases = [
        (ModelSpec::gaussian(), 10, 3, Target::Simplex),
        (ModelSpec::spherical(), 8, 8, Target::Simplex),
        (ModelSpec::spherical(), 5, 4, Target::Parallelotope),
        (ModelSpec::beta(0.5).unwrap(), 4, 4, Target::Simplex),
        (ModelSpec::beta_prime(1.0).unwrap(), 6, 3, Target::Simplex),
        (ModelSpec::beta_prime(2.5).unwrap(), 3, 3, Target::Parallelotope),
    ];
    for (i, (model, n, r, target)) in cases.into_iter().enumerate() {
        let seed = RngSeed::new(10, i as u64);
        let geo = log_volume_samples(model, dims(n, r), target, SamplePath::Geometric, 20_000, seed).unwrap();
        let rep = log_volume_samples(model, dims(n, r), target, SamplePath::Reference, 20_000, seed.substream(100)).unwrap();
        let d = ks_two_sample(&geo, &rep);
        assert!(d < crit, "{model:?} n={n} r={r} {target:?}: {d}");
    }
}

#[test]
fn distance_laws() {
    let crit = ks_two_sample_critical(20_000, 20_000, 1e-3);
    let g = ModelSpec::gaussian();
    let geo = distance_samples(g, dims(6, 2), SamplePath::Geometric, 20_000, RngSeed::new(11, 0)).unwrap();
    let rep = distance_samples(g, dims(6, 2), SamplePath::Reference, 20_000, RngSeed::new(11, 1)).unwrap();
    assert!(ks_two_sample(&geo, &rep) < crit);

    let s = ModelSpec::spherical();
    let d2: Vec<f64> = distance_samples(s, dims(5, 1), SamplePath::Geometric, 100_000, RngSeed::new(12, 0))
        .unwrap()
        .into_iter()
        .map(|d| d * d)
        .collect();
    let (m, se) = mean_and_se(&d2);
    assert!((m - 0.5).abs() < 3.0 * se, "{m} ± {se}");

    for path in [SamplePath::Geometric, SamplePath::Reference] {
        for model in [g, s, ModelSpec::beta(1.0).unwrap(), ModelSpec::beta_prime(2.0).unwrap()] {
            assert_eq!(sample_distance_to_affine(model, dims(4, 4), RngSeed::new(13, 0), path).unwrap(), 0.0);
        }
    }
}

fn random_orthogonal(n: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    a.qr().q()
}

use rand::Rng;

#[test]
fn volumes_are_rotation_invariant() {
    let q = random_orthogonal(9, 14);
    let mut before = Vec::new();
    let mut after = Vec::new();
    for i in 0..2000 {
        let c = sample_points(ModelSpec::beta(1.0).unwrap(), 9, 5, RngSeed::new(15, i)).unwrap();
        before.push(log_simplex_volume(&c).unwrap().value);
        after.push(log_simplex_volume(&c.transform(&q)).unwrap().value);
    }
    for (a, b) in before.iter().zip(&after) {
        assert!((a - b).abs() < 1e-11, "{a} vs {b}");
    }
    assert!(ks_two_sample(&before, &after) < 1e-3);
}

#[test]
fn sampling_is_deterministic_and_partition_independent() {
    let model = ModelSpec::spherical();
    let d = dims(12, 5);
    let run = |threads| {
        with_threads(threads, || {
            log_volume_samples(model, d, Target::Simplex, SamplePath::Geometric, 3000, RngSeed::new(16, 2)).unwrap()
        })
        .unwrap()
    };
    let one = run(1);
    assert_eq!(one, run(1));
    assert_eq!(one, run(4));
    let a = sample_product_representation(model, d, Target::Simplex, RngSeed::new(17, 0)).unwrap();
    let b = sample_product_representation(model, d, Target::Simplex, RngSeed::new(17, 0)).unwrap();
    assert_eq!(a.value.to_bits(), b.value.to_bits());
    assert_eq!(a.convention, VolumeConvention::FactorialScaled);
}

#[test]
fn affine_hull_distances() {
    // The plane x + y + z = 1 is at distance 1/√3 from the origin.
    let c = PointCloud::from_points(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap();
    assert!((distance_to_affine_hull(&c).unwrap() - 3f64.sqrt().recip()).abs() < 1e-14);
    let line = PointCloud::from_points(&[vec![1.0, 0.0, 0.0], vec![1.0, 1.0, 1.0]]).unwrap();
    assert!((distance_to_affine_hull(&line).unwrap() - 1.0).abs() < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simplex_volume_is_translation_and_scale_covariant(
        seed in 0u64..1000, n in 2usize..9, shift in -5.0f64..5.0, scale in 0.1f64..10.0,
    ) {
        let r = 1 + (seed as usize) % n;
        let c = sample_points(ModelSpec::gaussian(), n, r + 1, RngSeed::new(seed, 0)).unwrap();
        let base = log_simplex_volume(&c).unwrap().value;
        let moved = PointCloud::from_columns(c.coords().map(|x| scale * x + shift));
        let v = log_simplex_volume(&moved).unwrap().value;
        prop_assert!((v - base - r as f64 * scale.ln()).abs() < 1e-9);
    }

    #[test]
    fn simplex_volume_ignores_vertex_order(seed in 0u64..1000, n in 2usize..8) {
        let r = 1 + (seed as usize) % n;
        let c = sample_points(ModelSpec::spherical(), n, r + 1, RngSeed::new(seed, 1)).unwrap();
        let mut cols: Vec<_> = (0..=r).map(|i| c.coords().column(i).into_owned()).collect();
        cols.rotate_left(1);
        let rotated = PointCloud::from_columns(DMatrix::from_columns(&cols));
        let a = log_simplex_volume(&c).unwrap().value;
        let b = log_simplex_volume(&rotated).unwrap().value;
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn distance_never_exceeds_nearest_vertex(seed in 0u64..1000, n in 2usize..9) {
        let r = 1 + (seed as usize) % n;
        let c = sample_points(ModelSpec::beta(2.0).unwrap(), n, r + 1, RngSeed::new(seed, 2)).unwrap();
        let nearest = (0..=r).map(|i| c.coords().column(i).norm()).fold(f64::INFINITY, f64::min);
        prop_assert!(distance_to_affine_hull(&c).unwrap() <= nearest + 1e-12);
    }
}
