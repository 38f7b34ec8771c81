use proptest::prelude::*;

use turanlab::classify::{chain_blowup_embeddable, classify12, degenerate_necessary};
use turanlab::combinatorics::{binomial, subsets_of_size};
use turanlab::construct::{
    build_closed_path_extremal, build_example1, build_example2, build_suspension_tower,
};
use turanlab::embed::{automorphism_count, count_ordered_copies, find_embedding};
use turanlab::extremal::{
    pi_n_branch_bound, pi_n_exhaustive, pi_sequence, ForbiddenFamily, SearchConfig,
};
use turanlab::format::{parse_hypergraph, to_canonical_json};
use turanlab::hypergraph::{complete_r_graph, induced_on, link_graph};
use turanlab::transforms::{blowup, square2, subdivide2, suspend};
use turanlab::verify::square_lemma_holds;
use turanlab::{EdgeTypeSet, Hypergraph, Rational};

/// Graph on `n` vertices from an arbitrary list of masks (zeros dropped).
fn graph_on(n: usize, raw: Vec<u64>) -> Hypergraph {
    let full = (1u64 << n) - 1;
    Hypergraph::from_masks(n, raw.into_iter().map(|m| m & full).filter(|&m| m != 0))
}

fn hypergraph(max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<u64>(), 0..12).prop_map(move |raw| graph_on(n, raw))
    })
}

/// Graph whose edges all have sizes in `r`, with at least one edge of each size.
fn r_graph(
    r: Vec<usize>,
    n_range: std::ops::RangeInclusive<usize>,
) -> impl Strategy<Value = Hypergraph> {
    let top = *r.iter().max().unwrap();
    let lo = (*n_range.start()).max(top);
    (lo..=*n_range.end()).prop_flat_map(move |n| {
        let levels: Vec<Vec<u64>> = r.iter().map(|&k| subsets_of_size(n, k)).collect();
        let picks: Vec<_> = levels
            .iter()
            .map(|l| (0..l.len(), prop::collection::vec(any::<bool>(), l.len())))
            .collect();
        picks.prop_map(move |choice| {
            let mut masks = Vec::new();
            for ((forced, keep), level) in choice.into_iter().zip(&levels) {
                masks.extend(
                    level
                        .iter()
                        .zip(&keep)
                        .enumerate()
                        .filter(|(i, (_, &k))| k || *i == forced)
                        .map(|(_, (&m, _))| m),
                );
            }
            Hypergraph::from_masks(n, masks)
        })
    })
}

fn graph12() -> impl Strategy<Value = Hypergraph> {
    r_graph(vec![1, 2], 2..=5)
}

fn two_uniform(max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = subsets_of_size(n, 2);
        prop::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            Hypergraph::from_masks(
                n,
                pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(&m, _)| m),
            )
        })
    })
}

fn edge_types() -> impl Strategy<Value = Vec<usize>> {
    prop::sample::subsequence(vec![1usize, 2, 3], 1..=3)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..30).prop_map(|(a, b)| Rational::new(a, b))
}

fn pi(n: usize, h: &Hypergraph) -> Rational {
    let fam = ForbiddenFamily::single(h.clone()).unwrap();
    pi_n_branch_bound(n, &fam, &SearchConfig::default())
        .unwrap()
        .value
}

#[test]
fn square_of_complete_graph_is_complete() {
    let two = EdgeTypeSet::new([2]).unwrap();
    for n in 3..=8 {
        let k = complete_r_graph(n, &two).unwrap();
        assert_eq!(square2(&k).unwrap(), k);
    }
}

#[test]
fn lubell_of_complete_graphs() {
    for bits in 1u32..8 {
        let r: Vec<usize> = (1..=3).filter(|k| bits >> (k - 1) & 1 == 1).collect();
        let set = EdgeTypeSet::new(r.iter().copied()).unwrap();
        for n in set.largest()..=12 {
            assert_eq!(complete_r_graph(n, &set).unwrap().lubell(), r.len() as i64);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn canonical_json_round_trips(g in hypergraph(8)) {
        let text = to_canonical_json(&g);
        let back = parse_hypergraph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(to_canonical_json(&back), text);
    }

    #[test]
    fn lubell_is_additive(n in 1usize..7, a in prop::collection::vec(any::<u64>(), 0..10), b in prop::collection::vec(any::<u64>(), 0..10)) {
        let g = graph_on(n, a);
        let h = graph_on(n, b);
        let h = Hypergraph::from_masks(n, h.masks().iter().copied().filter(|&m| !g.has_mask(m)));
        let union = g.with_masks(h.masks().iter().copied());
        prop_assert_eq!(union.lubell(), g.lubell() + h.lubell());
    }

    #[test]
    fn lubell_is_the_mean_over_induced_subsets(g in hypergraph(7), l in 1usize..7) {
        let n = g.vertex_count();
        prop_assume!(l < n && g.edge_types().iter().all(|&k| k <= l));
        let subsets = subsets_of_size(n, l);
        let total: Rational = subsets
            .iter()
            .map(|&m| {
                let keep: Vec<usize> = (0..n).filter(|v| m >> v & 1 == 1).collect();
                induced_on(&g, &keep).unwrap().lubell()
            })
            .sum();
        prop_assert_eq!(total * Rational::new(1, subsets.len() as i64), g.lubell());
    }

    #[test]
    fn link_undoes_suspend(g in hypergraph(7)) {
        let s = suspend(&g, 1).unwrap();
        prop_assert_eq!(link_graph(&s, g.vertex_count()).unwrap(), g);
    }

    #[test]
    fn suspend_shape(g in hypergraph(6), t in 0usize..3) {
        let s = suspend(&g, t).unwrap();
        prop_assert_eq!(s.edge_count(), g.edge_count());
        prop_assert_eq!(s.vertex_count(), g.vertex_count() + t);
        prop_assert_eq!(s.edge_types(), g.edge_types().iter().map(|k| k + t).collect::<Vec<_>>());
    }

    #[test]
    fn blowup_counts(g in hypergraph(4), sizes in prop::collection::vec(1usize..3, 4)) {
        let s = &sizes[..g.vertex_count()];
        let b = blowup(&g, s).unwrap();
        prop_assert_eq!(b.edge_types(), g.edge_types());
        let expected: usize = g.edges().iter().map(|e| e.vertices().iter().map(|&v| s[v]).product::<usize>()).sum();
        prop_assert_eq!(b.edge_count(), expected);
        prop_assert!(find_embedding(&b, &g).is_some());
    }

    #[test]
    fn blowup_is_monotone(g in hypergraph(4), extra in any::<u64>(), sizes in prop::collection::vec(1usize..3, 4)) {
        let n = g.vertex_count();
        let bigger = g.with_masks([extra & ((1u64 << n) - 1)].into_iter().filter(|&m| m != 0));
        let s = &sizes[..n];
        let small = blowup(&g, s).unwrap();
        let large = blowup(&bigger, s).unwrap();
        prop_assert!(small.masks().iter().all(|&m| large.has_mask(m)));
    }

    #[test]
    fn subdivide2_counts(g in hypergraph(6)) {
        let s = subdivide2(&g).unwrap();
        let pairs = g.level_count(2);
        prop_assert_eq!(s.vertex_count(), g.vertex_count() + pairs);
        prop_assert_eq!(s.level_count(2), 2 * pairs);
        for k in (1..=g.vertex_count()).filter(|&k| k != 2) {
            prop_assert_eq!(s.level_count(k), g.level_count(k));
        }
    }

    #[test]
    fn square2_bounds(g in two_uniform(7)) {
        let n = g.vertex_count();
        let sq = square2(&g).unwrap();
        prop_assert!(sq.edge_count() as u128 <= binomial(n, 2).unwrap());
        let lemma = square_lemma_holds(&g).unwrap();
        prop_assert!(lemma.difference <= (n / 2) as i64);
    }

    #[test]
    fn embedding_agrees_with_counting(g in hypergraph(6), h in hypergraph(4)) {
        let count = count_ordered_copies(&g, &h);
        prop_assert_eq!(find_embedding(&g, &h).is_some(), count > 0);
        prop_assert_eq!(count % automorphism_count(&h).unwrap(), 0);
        if let Some(e) = find_embedding(&g, &h) {
            prop_assert!(e.is_valid(&g, &h));
        }
    }

    #[test]
    fn adding_edges_never_loses_copies(g in hypergraph(6), h in hypergraph(3), extra in any::<u64>()) {
        let n = g.vertex_count();
        let more = g.with_masks([extra & ((1u64 << n) - 1)].into_iter().filter(|&m| m != 0));
        prop_assert!(count_ordered_copies(&more, &h) >= count_ordered_copies(&g, &h));
    }

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!(a.clone() - a.clone(), Rational::zero());
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Rational>().unwrap(), a.clone());
        if !b.is_zero() {
            prop_assert_eq!(a.clone() / b.clone() * b.clone(), a);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn oracle_matches_branch_and_bound(r in edge_types(), seed_n in 0usize..3, raw in prop::collection::vec(any::<u64>(), 1..6)) {
        let top = *r.iter().max().unwrap();
        let set = EdgeTypeSet::new(r.iter().copied()).unwrap();
        let n = (top + seed_n).min(match r.as_slice() { [1, 2, 3] => 4, [1, 3] | [2, 3] => 5, _ => 6 });
        // A member using every size in `r`, built from the raw masks.
        let v = top.max(n.min(4));
        let mut masks: Vec<u64> = r.iter().map(|&k| (1u64 << k) - 1).collect();
        masks.extend(raw.iter().map(|m| m & ((1u64 << v) - 1)).filter(|m| set.contains(m.count_ones() as usize)));
        let fam = ForbiddenFamily::single(Hypergraph::from_masks(v, masks)).unwrap();
        let a = pi_n_exhaustive(n, &fam).unwrap();
        let b = pi_n_branch_bound(n, &fam, &SearchConfig::default()).unwrap();
        prop_assert_eq!(&a.value, &b.value);
        prop_assert_eq!(&a.witness, &b.witness);
        prop_assert!(fam.is_free(&b.witness));
        prop_assert_eq!(b.witness.lubell(), b.value);
    }

    #[test]
    fn sequence_is_sandwiched_and_monotone(h in graph12()) {
        let fam = ForbiddenFamily::single(h.clone()).unwrap();
        let seq = pi_sequence(&fam, 2, 6, &SearchConfig::default()).unwrap();
        for w in seq.windows(2) {
            prop_assert!(w[1].1 <= w[0].1);
        }
        for (_, v) in &seq {
            prop_assert!(*v >= 1 && *v <= 2);
        }
        let density = classify12(&h).unwrap().density;
        prop_assert!(seq.iter().all(|(_, v)| *v >= density));
    }

    #[test]
    fn blowup_never_lowers_pi(h in r_graph(vec![1, 2], 2..=3), n in 2usize..6) {
        let b = blowup(&h, &vec![2; h.vertex_count()]).unwrap();
        prop_assert!(pi(n, &h) <= pi(n, &b));
    }

    #[test]
    fn density_lies_in_the_known_set(h in r_graph(vec![1, 2], 2..=7)) {
        let d = classify12(&h).unwrap().density;
        let allowed = [Rational::one(), Rational::new(9, 8), Rational::new(5, 4)];
        let turan = (2..=16).any(|m| d == Rational::from_integer(2) - Rational::new(1, m));
        prop_assert!(allowed.contains(&d) || turan, "density {}", d);
    }

    #[test]
    fn chain_blowup_implies_degenerate_colouring(h in hypergraph(6)) {
        prop_assume!(h.edge_count() > 0);
        if chain_blowup_embeddable(&h).unwrap().is_some() {
            prop_assert!(degenerate_necessary(&h).unwrap());
        }
    }

    #[test]
    fn constructions_are_feasible(n in 4usize..7, k in 1usize..3) {
        let cases = [
            build_example1(n, n / 2).unwrap(),
            build_example2(n).unwrap(),
            build_suspension_tower(n.max(k + 2), k).unwrap(),
        ];
        for r in &cases {
            prop_assert!(r.freeness_checked);
            let target = r.target.clone().unwrap();
            let m = r.graph.vertex_count();
            prop_assert!(r.lubell <= pi(m, &target));
        }
        let cp = build_closed_path_extremal(n).unwrap();
        prop_assert!(cp.freeness_checked);
    }
}
