use pfrad_core::enveloping::{hc_project, pfaffian_casimir_in, Algebra};
use pfrad_core::hc_eigen::Weight;
use pfrad_core::radon::{inversion_exact, radon_dual, radon_forward, GrassmannPair, Side, SpectralFunction};
use pfrad_core::repmod::shared_irrep;
use pfrad_core::{GaussianRational as Q, UElement};
use proptest::prelude::*;

const N: usize = 4;

fn element() -> impl Strategy<Value = UElement> {
    element_in(N)
}

fn element_in(n: usize) -> impl Strategy<Value = UElement> {
    let term = (1..=n, 1..=n, 1..=n, 1..=n, -3i64..=3, -2i64..=2);
    prop::collection::vec(term, 1..4).prop_map(move |terms| {
        let alg = Algebra::shared(n, 1).unwrap();
        let mut acc = UElement::scalar(&alg, Q::from_int(1));
        for (a, b, c, d, re, im) in terms {
            let mut t = UElement::scalar(&alg, Q::from_ints(re, im));
            if a != b {
                t = t.multiply(&UElement::generator(&alg, a, b).unwrap()).unwrap();
            }
            if c != d {
                t = t.multiply(&UElement::generator(&alg, c, d).unwrap()).unwrap();
            }
            acc = acc.add(&t).unwrap();
        }
        acc
    })
}

fn gaussian() -> impl Strategy<Value = Q> {
    (-5i64..=5, -5i64..=5).prop_map(|(a, b)| Q::from_ints(a, b))
}

fn triple() -> impl Strategy<Value = (UElement, UElement, UElement)> {
    (3usize..=5).prop_flat_map(|n| (element_in(n), element_in(n), element_in(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn multiplication_is_associative((a, b, c) in triple()) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multiplication_distributes(a in element(), b in element(), c in element()) {
        let left = a.multiply(&b.add(&c).unwrap()).unwrap();
        let right = a.multiply(&b).unwrap().add(&a.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn antipode_is_an_anti_involution(a in element(), b in element()) {
        prop_assert_eq!(a.antipode().unwrap().antipode().unwrap(), a.clone());
        let lhs = a.multiply(&b).unwrap().antipode().unwrap();
        let rhs = b.antipode().unwrap().multiply(&a.antipode().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn jacobi_identity(a in element(), b in element(), c in element()) {
        let t1 = a.commutator(&b.commutator(&c).unwrap()).unwrap();
        let t2 = b.commutator(&c.commutator(&a).unwrap()).unwrap();
        let t3 = c.commutator(&a.commutator(&b).unwrap()).unwrap();
        prop_assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
    }

    #[test]
    fn projection_is_idempotent(a in element()) {
        let once = hc_project(&a, 1).unwrap();
        prop_assert_eq!(hc_project(&once, 1).unwrap(), once);
    }

    #[test]
    fn json_round_trip(a in element()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: UElement = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn casimir_commutes_with_everything(a in element()) {
        let w = pfaffian_casimir_in(a.algebra(), 2).unwrap();
        prop_assert!(w.commutator(&a).unwrap().is_zero());
    }

    #[test]
    fn gaussian_rationals_form_a_field(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(inv) = a.inv() {
            prop_assert_eq!(&a * &inv, Q::from_int(1));
        }
    }

    #[test]
    fn weight_compact_round_trip(entries in prop::collection::vec(0i64..4, 2..4)) {
        let mut sorted = entries.clone();
        sorted.sort_unstable_by(|x, y| y.cmp(x));
        let n = 2 * sorted.len() + 1;
        let w = Weight::new(n, sorted).unwrap();
        prop_assert_eq!(Weight::parse(n, &w.to_compact()).unwrap(), w);
    }

    #[test]
    fn radon_inversion_on_random_coefficients(coeffs in prop::collection::vec(gaussian(), 10)) {
        let pair = GrassmannPair::new(4, 1, 2).unwrap();
        let mut start = 0;
        let mut comps = std::collections::BTreeMap::new();
        for entries in [vec![0, 0], vec![2, 0]] {
            let w = Weight::new(4, entries).unwrap();
            let dim = shared_irrep(&w).unwrap().dim();
            comps.insert(w, coeffs[start..start + dim].to_vec());
            start += dim;
        }
        let f = SpectralFunction::new(pair, Side::Source, comps).unwrap();
        prop_assert!(inversion_exact(&f).unwrap());
        let back = radon_dual(&radon_forward(&f).unwrap()).unwrap();
        prop_assert_eq!(back.is_zero(), f.is_zero());
    }
}
