use pfrad_core::enveloping::{pfaffian_casimir_in, Algebra};
use pfrad_core::hc_eigen::{dominant_weights, Weight};
use pfrad_core::radon::{spectra_catalog, GrassmannPair};
use pfrad_core::repmod::{central_scalar, fixed_subspace, shared_irrep};
use pfrad_core::scalar::ratio;
use pfrad_core::GaussianRational as Q;

/// Weyl dimension formula with all weights doubled to stay integral.
fn weyl_dimension(n: usize, lambda: &[i64]) -> u64 {
    let m = n / 2;
    let rho2: Vec<i64> = (1..=m).map(|l| n as i64 - 2 * l as i64).collect();
    let shifted: Vec<i64> = lambda.iter().zip(&rho2).map(|(l, r)| 2 * l + r).collect();
    let (mut num, mut den) = (1i128, 1i128);
    for i in 0..m {
        for j in i + 1..m {
            num *= ((shifted[i] - shifted[j]) * (shifted[i] + shifted[j])) as i128;
            den *= ((rho2[i] - rho2[j]) * (rho2[i] + rho2[j])) as i128;
        }
        if n % 2 == 1 {
            num *= shifted[i] as i128;
            den *= rho2[i] as i128;
        }
    }
    assert_eq!(num % den, 0);
    (num / den) as u64
}

#[test]
fn dimensions_match_weyl_formula() {
    for n in 3..=6 {
        let cap = if n == 6 { 3 } else { 4 };
        for w in dominant_weights(n, cap) {
            let rho = shared_irrep(&w).unwrap();
            assert_eq!(rho.dim() as u64, weyl_dimension(n, w.entries()), "N={n} λ={w}");
        }
    }
}

#[test]
fn so4_weight_2_2_has_dimension_five() {
    // so(4) = su(2) ⊕ su(2); λ = (2,2) has spins (2, 0), dimension (2·2+1)(2·0+1).
    let rho = shared_irrep(&Weight::new(4, vec![2, 2]).unwrap()).unwrap();
    assert_eq!(rho.dim(), 5);
    let rho = shared_irrep(&Weight::new(4, vec![2, -2]).unwrap()).unwrap();
    assert_eq!(rho.dim(), 5);
}

#[test]
fn quadratic_casimir_matches_inner_product_formula() {
    for n in 3..=5 {
        let alg = Algebra::shared(n, 0).unwrap();
        let w1 = pfaffian_casimir_in(&alg, 1).unwrap();
        for w in dominant_weights(n, 3) {
            let expected: i64 = w
                .entries()
                .iter()
                .enumerate()
                .map(|(i, &l)| l * (l + n as i64 - 2 * (i as i64 + 1)))
                .sum();
            let (c, scalar) = central_scalar(&w1, &shared_irrep(&w).unwrap()).unwrap();
            assert!(scalar, "N={n} λ={w}");
            assert_eq!(c, Q::from_int(-expected), "N={n} λ={w}");
        }
    }
}

/// Degree-2 harmonics are traceless symmetric matrices with the Frobenius
/// pairing; the `S(O(N−k)×O(k))`-fixed one is `k·I_{N−k} ⊕ −(N−k)·I_k`.
fn harmonic_pairing(n: usize, k1: usize, k2: usize) -> (i64, i64, i64) {
    let diag = |k: usize| -> Vec<i64> {
        (0..n).map(|i| if i < n - k { k as i64 } else { -((n - k) as i64) }).collect()
    };
    let (a, b) = (diag(k1), diag(k2));
    let dot = |x: &[i64], y: &[i64]| x.iter().zip(y).map(|(p, q)| p * q).sum::<i64>();
    (dot(&a, &b), dot(&a, &a), dot(&b, &b))
}

#[test]
fn catalog_pairing_matches_harmonic_oracle() {
    for (n, k1, k2) in [(3, 1, 2), (4, 1, 2), (4, 1, 3), (5, 1, 2), (5, 2, 3), (6, 1, 2), (6, 2, 3), (6, 1, 4)] {
        let pair = GrassmannPair::new(n, k1, k2).unwrap();
        let mut entries = vec![0i64; n / 2];
        entries[0] = 2;
        let w = Weight::new(n, entries).unwrap();
        let entry = spectra_catalog(&pair, 2).unwrap().into_iter().find(|e| e.weight == w).unwrap();
        let (ab, aa, bb) = harmonic_pairing(n, k1, k2);
        let expected = ratio(ab * ab, aa * bb);
        assert_eq!(entry.c_sq.as_deref(), Some(expected.to_string().as_str()), "pair ({n},{k1},{k2})");
    }
}

#[test]
fn fixed_vectors_of_the_defining_representation() {
    // On the defining representation the fixed subspace of S(O(N−k)×O(k)) is zero.
    for n in 3..=6 {
        let mut entries = vec![0i64; n / 2];
        entries[0] = 1;
        let rho = shared_irrep(&Weight::new(n, entries).unwrap()).unwrap();
        for k in 1..n {
            assert_eq!(fixed_subspace(&rho, k).unwrap().dim(), 0, "N={n} k={k}");
        }
    }
}
