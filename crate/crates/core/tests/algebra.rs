mod common;

use proptest::prelude::*;
use rand::Rng;

use common::*;
use steinberg::algebra::AlgebraElement;
use steinberg::coeff::Gq;
use steinberg::graph::Graph;

fn setup(seed: u64, gi: usize) -> (Graph, rand_chacha::ChaCha8Rng) {
    (test_graphs()[gi].1.clone(), rng(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn normal_form_survives_sibling_splitting(seed in any::<u64>(), gi in 0usize..6) {
        let (g, mut r) = setup(seed, gi);
        let terms = random_terms(&g, &mut r, 4, 3);
        let f = AlgebraElement::normalize(&g, terms.clone());
        let rounds = r.gen_range(1..8);
        let split = split_randomly(&g, &mut r, &terms, rounds);
        prop_assert_eq!(AlgebraElement::normalize(&g, split), f.clone());
        prop_assert_eq!(AlgebraElement::normalize(&g, terms_of(&f)), f.clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normal_form_keys_are_disjoint_and_values_agree(seed in any::<u64>(), gi in 0usize..6) {
        let (g, mut r) = setup(seed, gi);
        let terms = random_terms(&g, &mut r, 4, 3);
        let f = AlgebraElement::normalize(&g, terms.clone());
        let keys: Vec<_> = f.terms().map(|(k, _)| k.clone()).collect();
        for (i, a) in keys.iter().enumerate() {
            for b in &keys[i + 1..] {
                prop_assert!(a.intersect(b).is_none());
            }
        }
        let pts = small_points(&g, 2, 2);
        for gamma in elements_between(&pts, &pts, 3) {
            prop_assert_eq!(f.eval(&gamma), eval_raw(&terms, &gamma));
        }
    }

    #[test]
    fn star_and_grading(seed in any::<u64>(), gi in 0usize..6) {
        let (g, mut r) = setup(seed, gi);
        let f = random_element(&g, &mut r, 4, 3);
        let h = random_element(&g, &mut r, 4, 3);
        prop_assert_eq!(f.star().star(), f.clone());
        prop_assert_eq!(f.add(&g, &h).star(), f.star().add(&g, &h.star()));
        let c = random_coeff(&mut r);
        prop_assert_eq!(f.scale(&c).star(), f.star().scale(&steinberg::coeff::Scalar::conj(&c)));
        let sum = f.degrees().into_iter().fold(AlgebraElement::zero(), |acc, d| acc.add(&g, &f.homogeneous_component(d)));
        prop_assert_eq!(sum, f.clone());
        for d in f.degrees() {
            prop_assert!(f.homogeneous_component(d).is_homogeneous());
            prop_assert!(f.homogeneous_component(d).terms().all(|(k, _)| k.degree() == d));
        }
        prop_assert!(f.sub(&g, &f).is_zero());
    }

    #[test]
    fn the_unit_is_two_sided(seed in any::<u64>(), gi in 0usize..6) {
        let (g, mut r) = setup(seed, gi);
        let f = random_element(&g, &mut r, 4, 3);
        let one = AlgebraElement::unit(&g);
        prop_assert_eq!(one.mul(&g, &f), f.clone());
        prop_assert_eq!(f.mul(&g, &one), f.clone());
    }
}

#[test]
fn generic_coefficients() {
    use num::BigRational;
    let g = Graph::rose(2);
    let half = BigRational::new(1.into(), 2.into());
    let f: AlgebraElement<BigRational> =
        AlgebraElement::normalize(&g, [(bb(&g, "a", "a"), half.clone()), (bb(&g, "b", "b"), half.clone())]);
    assert_eq!(f.render(&g), "1/2[v|v]");
    assert_eq!(f.mul(&g, &f).render(&g), "1/4[v|v]");
    let z = AlgebraElement::<Gq>::normalize(&g, [(bb(&g, "a", "v"), Gq::i())]);
    assert_eq!(z.star().render(&g), "(0-1i)[v|a]");
}
