use proptest::prelude::*;
use ramsey_core::clique::{find_type_clique, max_mono_clique, OrderType, SearchBudget, TypeOutcome};
use ramsey_core::drc::{drc_extract, BipartiteGraph, DrcParams};
use ramsey_core::ordertype::rpi::{decide, Decision, EnumerationOrder, Shard};
use ramsey_core::weighted_ramsey::{weighted_ramsey_solve, WeightPair};
use ramsey_core::weights::{f_exact, Traversal, WeightSpec, DEFAULT_FEXACT_BUDGET};
use ramsey_core::{density, Color, EdgeColoring, Rng, VertexInterval};
use num_rational::Ratio;

fn coloring(seed: u64, n: usize, q: u32, lo: i64) -> EdgeColoring {
    let mut rng = Rng::new(seed);
    EdgeColoring::from_fn(VertexInterval::with_size(lo, n).unwrap(), q, |_, _| rng.below(q as usize) as Color).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monochromatic_iff_all_pairs_agree(seed in any::<u64>(), n in 1usize..12, q in 1u32..4, mask in any::<u16>()) {
        let c = coloring(seed, n, q, 3);
        let s: Vec<i64> = (0..n).filter(|i| mask >> i & 1 == 1).take(5).map(|i| 3 + i as i64).collect();
        let pairs: Vec<Color> = s.iter().enumerate()
            .flat_map(|(a, &x)| s[a + 1..].iter().map(move |&y| (x, y)))
            .map(|(x, y)| c.color(x, y).unwrap())
            .collect();
        let agree = pairs.windows(2).all(|w| w[0] == w[1]);
        prop_assert_eq!(c.is_monochromatic(&s).unwrap().is_some(), agree);
    }

    #[test]
    fn density_is_exact(lo in -100i64..100, len in 1usize..200, mask in any::<u64>()) {
        let iv = VertexInterval::with_size(lo, len).unwrap();
        let s: Vec<i64> = iv.iter().filter(|v| mask >> (v.rem_euclid(64)) & 1 == 1).collect();
        let d = density(&s, &iv).unwrap();
        prop_assert_eq!(d * Ratio::from_integer(len as u64), Ratio::from_integer(s.len() as u64));
    }

    #[test]
    fn two_colorings_have_half_log_cliques(seed in any::<u64>(), n in 4usize..60) {
        let c = coloring(seed, n, 2, 1);
        let best = (0..2)
            .map(|col| max_mono_clique(&c, col, &SearchBudget::unlimited()).unwrap().clique.order())
            .max()
            .unwrap();
        prop_assert!(best as f64 >= 0.5 * (n as f64).log2());
    }

    #[test]
    fn type_witnesses_reverify(seed in any::<u64>(), n in 3usize..20, pick in 0usize..6) {
        let perms = [vec![1], vec![1, 2], vec![2, 1], vec![1, 2, 3], vec![3, 1, 2], vec![2, 3, 1]];
        let ot = OrderType::new(perms[pick].clone()).unwrap();
        let c = coloring(seed, n, 2, 1);
        for color in 0..2 {
            let a = find_type_clique(&c, color, &ot, &SearchBudget::unlimited()).unwrap();
            let b = find_type_clique(&c, color, &ot, &SearchBudget::unlimited()).unwrap();
            prop_assert_eq!(&a, &b);
            if let TypeOutcome::Found(w) = &a.outcome {
                prop_assert!(w.verify(&c).unwrap());
                prop_assert!(ot.accepts(&w.vertices));
            }
        }
    }

    #[test]
    fn solver_visits_at_most_4n_subproblems(seed in any::<u64>(), n in 1usize..64, c in 0.1f64..3.0) {
        let col = coloring(seed, n, 2, 1);
        let mut rng = Rng::new(seed ^ 1);
        let r: Vec<f64> = (0..n).map(|_| 0.01 + rng.unit()).collect();
        let b: Vec<f64> = (0..n).map(|_| 0.01 + rng.unit()).collect();
        let res = weighted_ramsey_solve(&col, &WeightPair::balanced(r, b, c)).unwrap();
        prop_assert!(res.nodes <= 4 * n as u64);
    }

    #[test]
    fn drc_is_reproducible(seed in any::<u64>(), n1 in 4usize..40, n2 in 4usize..40) {
        let mut rng = Rng::new(seed);
        let g = BipartiteGraph::random(n1, n2, 0.8, &mut rng).unwrap();
        let params = DrcParams { p: Ratio::new(1, 2), s: 2, t: 1, m: 1, n1: n1 as u64, n2: n2 as u64 };
        let run = || drc_extract(&g, &params, &Rng::new(seed), 5, 1 << 20);
        match (run(), run()) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "runs disagree"),
        }
    }
}

#[test]
fn unavoidability_is_monotone_in_n() {
    for pi in [vec![1, 2], vec![2, 1]] {
        let ot = OrderType::new(pi).unwrap();
        let mut seen_unavoidable = false;
        for n in 1..=7 {
            let d = decide(n, 1, &ot, EnumerationOrder::Forward, u64::MAX, Shard::WHOLE).unwrap();
            let unavoidable = d.decision == Decision::Unavoidable;
            assert!(!seen_unavoidable || unavoidable, "n = {n}");
            seen_unavoidable |= unavoidable;
        }
        assert!(seen_unavoidable);
    }
}

#[test]
fn f_exact_respects_the_clique_floor() {
    let w1 = WeightSpec::w1();
    for n in 2..=7i64 {
        let f = f_exact(n, &w1, 2, Traversal::Lexicographic, DEFAULT_FEXACT_BUDGET).unwrap();
        let lightest = 1.0 / (n as f64).log2();
        let floor = (0.5 * ((n - 1) as f64).log2()).ceil().max(1.0);
        assert!(f.value >= floor * lightest - 1e-12, "n = {n}: {} < {}", f.value, floor * lightest);
        assert!(f.value >= 0.5 * w1.vertex_weight(2).unwrap(), "n = {n}: below half the heaviest vertex");
        let heaviest = w1.weight(&f.heaviest).unwrap();
        assert!((heaviest - f.value).abs() < 1e-12);
    }
}

#[test]
fn f_exact_with_eps_weights_stays_bounded() {
    let spec = WeightSpec::iterated_eps(1, 1.0).unwrap();
    let start = spec.domain_start();
    let mut values = Vec::new();
    for n in start + 1..=start + 5 {
        values.push(f_exact(n, &spec, 2, Traversal::Lexicographic, DEFAULT_FEXACT_BUDGET).unwrap().value);
    }
    assert!(values.iter().all(|v| *v <= 4.0), "{values:?}");
    assert!(values.windows(2).all(|w| w[0] <= w[1] + 1e-12), "{values:?}");
}
