mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use common::*;
use steinberg::bisection::CylSet;
use steinberg::coeff::Gq;
use steinberg::dr::{dr_validate, Sft};
use steinberg::graph::{Graph, RawGraph};
use steinberg::lpa::{reduce_lpa, LpaExpr, LpaSymbol, LpaWord};
use steinberg::point::{AperiodicPoint, GroupoidElement, Point};
use steinberg::rep::{GeneratorAssignment, Matrix};
use steinberg::text::*;
use steinberg::uniqueness::graded_certificate;
use steinberg::Error;

const NAMES: [&str; 12] = ["v", "w", "x0", "node", "a", "b", "e1", "f_2", "loop", "q", "r9", "zz"];

fn random_graph(r: &mut rand_chacha::ChaCha8Rng) -> Graph {
    let mut names = NAMES.to_vec();
    names.shuffle(r);
    let n = r.gen_range(1..=3);
    let m = r.gen_range(n..=n + 4).min(names.len() - n);
    let (vs, es) = names.split_at(n);
    let mut edges: Vec<(&str, &str, &str)> = (0..n).map(|i| (es[i], vs[i], vs[r.gen_range(0..n)])).collect();
    edges.extend((n..m).map(|i| (es[i], vs[r.gen_range(0..n)], vs[r.gen_range(0..n)])));
    edges.shuffle(r);
    Graph::validate(&RawGraph::new(vs, &edges)).unwrap()
}

fn random_matrix(r: &mut rand_chacha::ChaCha8Rng, n: usize) -> Matrix {
    Matrix::from_rows(n, (0..n * n).map(|_| if r.gen_bool(0.4) { Gq::from_int(0) } else { random_coeff(r) }).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn graphs_elements_and_sets(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_graph(&mut r);
        let text = g.to_text();
        let back = parse_graph(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        let c = random_coeff(&mut r);
        prop_assert_eq!(parse_coeff(&c.to_plain_string()).unwrap(), c);
        let f = random_element(&g, &mut r, 4, 3);
        prop_assert_eq!(parse_element(&f.render(&g), &g).unwrap(), f.clone());
        let key = random_key(&g, &mut r, 3);
        prop_assert_eq!(parse_basic(&key.render(&g), &g).unwrap(), key.clone());
        prop_assert_eq!(parse_path(&key.mu().render(&g), &g).unwrap(), key.mu().clone());
        let set = CylSet::new(&g, (0..r.gen_range(0..4)).map(|_| random_key(&g, &mut r, 3)));
        prop_assert_eq!(parse_cylset(&set.render(&g), &g).unwrap(), set);
    }

    #[test]
    fn points_and_elements(seed in any::<u64>(), gi in 0usize..6) {
        let (_, g) = &test_graphs()[gi];
        let mut r = rng(seed);
        let pts = small_points(g, 3, 3);
        let x = pts.choose(&mut r).unwrap();
        prop_assert_eq!(&parse_point(&x.render(g), g, None).unwrap(), x);
        let ys: Vec<&Point> = pts.iter().filter(|y| x.lag_to(y).is_some()).collect();
        let y = *ys.choose(&mut r).unwrap();
        let lag = x.lag_to(y).unwrap();
        let n = (-6..=6).find(|&n| lag.admits(n)).unwrap();
        let gamma = GroupoidElement::new(x.clone(), n, y.clone()).unwrap();
        prop_assert_eq!(parse_groupoid_element(&render_groupoid_element(&gamma, g), g, None).unwrap(), gamma);
    }

    #[test]
    fn aperiodic_points(seed in any::<u64>()) {
        let g = Graph::rose(2);
        let mut r = rng(seed);
        let seeds = parse_seed_cycles("a,b", &g).unwrap();
        let base = AperiodicPoint::fibonacci(seeds.0.clone(), seeds.1.clone()).unwrap().shift(r.gen_range(0..20));
        let head = random_path_from(&g, &mut r, base.range(), 3);
        let x: Point = base.prepend(&head).unwrap().into();
        let back = parse_point(&x.render(&g), &g, Some(&seeds)).unwrap();
        prop_assert_eq!(back.prefix(60), x.prefix(60));
        prop_assert_eq!(back.render(&g), x.render(&g));
    }

    #[test]
    fn certificates_and_representations(seed in any::<u64>(), gi in 0usize..6) {
        let (_, g) = &test_graphs()[gi];
        let mut r = rng(seed);
        let f = random_nonzero_element(g, &mut r, 3, 3);
        let cert = graded_certificate(g, &f).unwrap();
        let back = parse_certificate(&cert.render(g), g).unwrap();
        prop_assert_eq!(back.render(g), cert.render(g));
        prop_assert!(steinberg::uniqueness::verify_certificate(g, &back, &f));
        let dim = r.gen_range(1..=2);
        let mut a = GeneratorAssignment::zeros(g, dim);
        for v in g.vertices() {
            a.set_p(v, random_matrix(&mut r, dim)).unwrap();
        }
        for e in g.edges() {
            a.set_s(e, random_matrix(&mut r, dim)).unwrap();
            a.set_sstar(e, random_matrix(&mut r, dim)).unwrap();
        }
        prop_assert_eq!(parse_rep(&rep_to_text(g, &a), g).unwrap(), a);
    }

    #[test]
    fn shifts_and_leavitt_words(seed in any::<u64>(), gi in 0usize..6) {
        let (_, g) = &test_graphs()[gi];
        let mut r = rng(seed);
        let sft = Sft::edge_shift(g);
        prop_assert!(parse_sft(&sft_to_text(&sft)).unwrap() == sft);
        let words: Vec<Vec<u32>> = g.paths_up_to(3).into_iter().filter(|p| !p.is_empty())
            .map(|p| p.edges().iter().map(|e| e.0).collect()).collect();
        let d = loop {
            let u = words.choose(&mut r).unwrap().clone();
            let v = words.choose(&mut r).unwrap().clone();
            let (k, l) = (r.gen_range(0..=u.len()), r.gen_range(0..=v.len()));
            if let Ok(d) = dr_validate(&sft, vec![u], vec![v], k, l) {
                break d;
            }
        };
        prop_assert_eq!(parse_dr_basic(&d.render(&sft), &sft).unwrap(), d);
        let symbols: Vec<LpaSymbol> = (0..r.gen_range(0..5)).map(|_| match r.gen_range(0..3) {
            0 => LpaSymbol::P(random_vertex(g, &mut r)),
            1 => LpaSymbol::S(steinberg::graph::EdgeId(r.gen_range(0..g.edge_count() as u32))),
            _ => LpaSymbol::SStar(steinberg::graph::EdgeId(r.gen_range(0..g.edge_count() as u32))),
        }).collect();
        let x = LpaExpr::new(vec![LpaWord::new(random_coeff(&mut r), symbols)]);
        let nx = reduce_lpa(g, &x);
        prop_assert_eq!(reduce_lpa(g, &parse_lpa(&x.render(g), g).unwrap()), nx.clone());
        prop_assert_eq!(reduce_lpa(g, &parse_lpa(&nx.render(g), g).unwrap()), nx);
    }
}

#[test]
fn parse_errors_carry_positions() {
    let g = Graph::rose(2);
    assert!(matches!(parse_element("(1)[a|c]", &g), Err(Error::UnknownEdge(_))));
    assert!(matches!(parse_element("(1)[a|", &g), Err(Error::Syntax { .. })));
    assert!(matches!(parse_graph("v v\ne a v w\n"), Err(Error::UnknownVertex(_))));
    assert!(matches!(parse_graph("v v\nv w\ne a v w\n"), Err(Error::NoSourcesViolation(_))));
    assert!(matches!(parse_graph("v v\ne v v v\n"), Err(Error::DuplicateId(_))));
    assert!(matches!(parse_lpa("s_a s_q", &g), Err(Error::UnknownSymbol(_)) | Err(Error::UnknownEdge(_))));
    assert!(parse_element("0", &g).unwrap().is_zero());
    let err = parse_graph("v v\ne a v v\nbogus\n").unwrap_err();
    assert!(err.to_string().contains('3'), "{err}");
}
