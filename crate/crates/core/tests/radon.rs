use std::collections::BTreeMap;

use pfrad_core::radon::*;
use pfrad_core::repmod::shared_irrep;
use pfrad_core::scalar::{rat, ratio};
use pfrad_core::{GaussianRational as Q, Weight};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn w(n: usize, s: &str) -> Weight {
    Weight::parse(n, s).unwrap()
}

fn single(pair: GrassmannPair, side: Side, weight: &Weight) -> SpectralFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    random_function(&pair, side, std::slice::from_ref(weight), &mut rng).unwrap()
}

#[test]
fn forward_then_dual_scales_by_pairing() {
    let pair = GrassmannPair::new(4, 1, 2).unwrap();
    let f = single(pair, Side::Source, &w(4, "2,0"));
    let back = radon_dual(&radon_forward(&f).unwrap()).unwrap();
    let third = Q::from_rational(ratio(1, 3));
    for (weight, v) in &f.components {
        let expected: Vec<Q> = v.iter().map(|x| &third * x).collect();
        assert_eq!(back.components[weight], expected);
    }
}

#[test]
fn reversed_orientation_kills_missing_weights() {
    let pair = GrassmannPair::new(4, 2, 1).unwrap();
    assert_eq!(pair.orientation(), Orientation::Reversed);
    let g = radon_forward(&single(pair, Side::Source, &w(4, "2,2"))).unwrap();
    assert!(g.is_zero());
    let f = single(pair, Side::Source, &w(4, "2,0"));
    assert!(inversion_exact(&f).unwrap());
}

#[test]
fn range_residual_on_so4_weight_2_2() {
    let pair = GrassmannPair::new(4, 1, 2).unwrap();
    let weight = w(4, "2,2");
    let g = single(pair, Side::Target, &weight);
    let rr = range_residual(&g).unwrap();
    assert_eq!(rr.multipliers[&weight], rat(36));
    let v = &g.components[&weight];
    // Multiplier squared times dim V = 5 times the coefficient norm.
    let wn = shared_irrep(&weight).unwrap().inner(v, v).re().clone();
    assert_eq!(rr.norm, rat(36 * 36 * 5) * wn);
    let image = radon_forward(&single(pair, Side::Source, &w(4, "2,0"))).unwrap();
    assert_eq!(range_residual(&image).unwrap().norm, rat(0));
}

#[test]
fn dual_kernel_witness_is_killed() {
    for (n, k1, k2) in [(4, 1, 2), (5, 1, 2), (6, 1, 2), (6, 2, 3)] {
        let pair = GrassmannPair::new(n, k1, k2).unwrap();
        let g = dual_kernel_witness(&pair, 6).unwrap().expect("witness");
        assert!(!g.is_zero());
        assert!(radon_dual(&g).unwrap().is_zero());
    }
}

#[test]
fn constant_function_is_fixed_by_every_transform() {
    let pair = GrassmannPair::new(5, 1, 2).unwrap();
    let c = Q::from_ints(2, -1);
    let f = SpectralFunction::constant(pair, Side::Source, c.clone()).unwrap();
    let g = radon_forward(&f).unwrap();
    assert_eq!(g, SpectralFunction::constant(pair, Side::Target, c).unwrap());
    assert_eq!(radon_dual(&g).unwrap(), f);
    assert_eq!(radon_plus(&g).unwrap(), f);
}

#[test]
fn spectral_function_json_round_trip() {
    let pair = GrassmannPair::new(4, 1, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = random_function(&pair, Side::Source, &[w(4, "0,0"), w(4, "2,0")], &mut rng).unwrap();
    let text = serde_json::to_string(&f).unwrap();
    let back: SpectralFunction = serde_json::from_str(&text).unwrap();
    assert_eq!(back, f);
}

#[test]
fn rejects_coefficients_of_wrong_length() {
    let pair = GrassmannPair::new(4, 1, 2).unwrap();
    let comps: BTreeMap<Weight, Vec<Q>> = [(w(4, "2,0"), vec![Q::from_int(1)])].into_iter().collect();
    assert!(SpectralFunction::new(pair, Side::Source, comps).is_err());
}

#[test]
fn haar_samples_are_special_orthogonal() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..=6 {
        let u = haar_special_orthogonal(n, &mut rng);
        check_orthogonal_f64(&u, n).unwrap();
        assert!((det_f64(&u) - 1.0).abs() < 1e-9);
    }
}

#[test]
fn spectral_evaluation_matches_monte_carlo() {
    let pair = GrassmannPair::new(4, 1, 2).unwrap();
    let f = single(pair, Side::Source, &w(4, "2,0"));
    let mae = oracle_mae(&f, 3, 100_000, 9).unwrap();
    assert!(mae <= 5e-3 * (1.0 + f.norm_f64().unwrap()), "mae {mae}");
}
