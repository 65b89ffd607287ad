mod common;

use proptest::prelude::*;
use rand::Rng;

use common::*;
use steinberg::graph::{Graph, Path, RawGraph};
use steinberg::point::{AperiodicPoint, GroupoidElement, Point};
use steinberg::Error;

fn unrolled(g: &Graph, r: &mut rand_chacha::ChaCha8Rng) -> (Path, Path, Point) {
    let cycles = cycles_up_to(g, 3);
    let cycle = cycles[r.gen_range(0..cycles.len())].clone();
    let head = random_path_to(g, r, cycle.range(), 3);
    let x = Point::ev_per(head.clone(), cycle.clone()).unwrap();
    (head, cycle, x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_form_is_a_class_invariant(seed in any::<u64>(), gi in 0usize..6) {
        let (_, g) = &test_graphs()[gi];
        let mut r = rng(seed);
        let (head, cycle, x) = unrolled(g, &mut r);
        let j = r.gen_range(0..3);
        let i = r.gen_range(0..cycle.len());
        let (sigma, tau) = (cycle.take_front(i), cycle.drop_front(i));
        let head2 = head.compose(&cycle.power(j)).unwrap().compose(&sigma).unwrap();
        let cycle2 = tau.compose(&sigma).unwrap().power(r.gen_range(1..3));
        let y = Point::ev_per(head2, cycle2).unwrap();
        prop_assert_eq!(&x, &y);
        for k in 0..40 {
            prop_assert_eq!(x.edge_at(k), y.edge_at(k));
        }
        let Point::EvPer(c) = &x else { unreachable!() };
        prop_assert_eq!(Point::ev_per(c.head().clone(), c.cycle().clone()).unwrap(), x.clone());
        prop_assert!(c.head().last_edge().is_none() || c.head().last_edge() != c.cycle().last_edge());
    }

    #[test]
    fn prefixes_are_nested(seed in any::<u64>(), gi in 0usize..6, m in 0usize..12, extra in 0usize..12) {
        let (_, g) = &test_graphs()[gi];
        let mut r = rng(seed);
        let (_, _, x) = unrolled(g, &mut r);
        prop_assert!(x.prefix(m).is_prefix_of(&x.prefix(m + extra)));
        prop_assert_eq!(x.prefix(m).len(), m);
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>(), gi in 0usize..6) {
        let (_, g) = &test_graphs()[gi];
        let mut r = rng(seed);
        let pts = small_points(g, 2, 2);
        let pick = |r: &mut rand_chacha::ChaCha8Rng| pts[r.gen_range(0..pts.len())].clone();
        let (x, y, z, w) = (pick(&mut r), pick(&mut r), pick(&mut r), pick(&mut r));
        let mk = |a: &Point, b: &Point, r: &mut rand_chacha::ChaCha8Rng| {
            let lag = a.lag_to(b)?;
            let n = (-6..=6).filter(|&n| lag.admits(n)).nth(r.gen_range(0..3))?;
            GroupoidElement::new(a.clone(), n, b.clone()).ok()
        };
        let (Some(a), Some(b), Some(c)) = (mk(&x, &y, &mut r), mk(&y, &z, &mut r), mk(&z, &w, &mut r)) else { return Ok(()) };
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(a.compose(&a.inverse()).unwrap(), GroupoidElement::unit(x.clone()));
        prop_assert_eq!(left.degree(), a.degree() + b.degree() + c.degree());
    }
}

#[test]
fn validated_graphs_contain_a_cycle() {
    let mut r = rng(11);
    let mut accepted = 0;
    for _ in 0..200 {
        let n = r.gen_range(1..=4);
        let m = r.gen_range(1..=7);
        let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let es: Vec<(String, String, String)> =
            (0..m).map(|i| (format!("e{i}"), vs[r.gen_range(0..n)].clone(), vs[r.gen_range(0..n)].clone())).collect();
        let raw = RawGraph::new(&vs, &es);
        let sourceless = vs.iter().all(|v| es.iter().any(|(_, rv, _)| rv == v));
        match Graph::validate(&raw) {
            Ok(g) => {
                assert!(sourceless);
                assert!(!cycles_up_to(&g, n).is_empty());
                accepted += 1;
            }
            Err(Error::NoSourcesViolation(_)) => assert!(!sourceless),
            Err(e) => panic!("{e}"),
        }
    }
    assert!(accepted > 20);
}

#[test]
fn fibonacci_points_are_aperiodic() {
    let cases = [(Graph::rose(2), "a", "b"), (two_cycle_with_loop(), "l", "e.f"), (three_vertex(), "d", "a.b.c")];
    for (g, c1, c2) in cases {
        let x = AperiodicPoint::fibonacci(p(&g, c1), p(&g, c2)).unwrap();
        for period in 1..=8 {
            for offset in 0..=8 {
                assert!(
                    (offset..100).any(|i| x.edge_at(i) != x.edge_at(i + period)),
                    "period {period} from {offset}"
                );
            }
        }
    }
}

#[test]
fn degree_zero_isotropy_is_trivial() {
    for (_, g) in test_graphs() {
        for x in small_points(&g, 4, 3) {
            let lag = x.lag_to(&x).unwrap();
            assert!(lag.admits(0));
            assert_eq!(GroupoidElement::new(x.clone(), 0, x.clone()).unwrap(), GroupoidElement::unit(x.clone()));
            let Point::EvPer(c) = &x else { unreachable!() };
            assert_eq!(x.isotropy_generator(), c.cycle().len() as u64);
        }
    }
    let g = Graph::rose(2);
    let x: Point = AperiodicPoint::fibonacci(p(&g, "a"), p(&g, "b")).unwrap().into();
    assert_eq!(x.isotropy_generator(), 0);
}
