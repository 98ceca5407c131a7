use proptest::prelude::*;

use oddcore::critical::{critical_difference, find_critical_independent_set, ker};
use oddcore::generators::{labeled_graph, random_almost_bipartite, AlmostBipartiteModel};
use oddcore::independence::{core, corona, enumerate_maximum_independent_sets, independence_number, is_konig_egervary};
use oddcore::matching::{is_mu_critical_edge, matching_from_into, maximum_matching, HallOutcome};
use oddcore::oracle::{
    oracle_alpha, oracle_core_corona_ker, oracle_d_all_subsets, oracle_id, oracle_mu, oracle_omega,
};
use oddcore::structure::{classify, decompose};
use oddcore::workbench::{analyze, check_all, CheckId};
use oddcore::{parse_edge_list, Graph, OracleBounds, VertexSet};

fn bounds() -> OracleBounds {
    OracleBounds::default()
}

/// Labelled graphs on up to `max_n` vertices, any edge set.
fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mask = bits.iter().enumerate().fold(0u64, |m, (i, &b)| m | u64::from(b) << i);
            labeled_graph(n, mask)
        })
    })
}

fn almost_bipartite_graph() -> impl Strategy<Value = Graph> {
    (0usize..3, 0usize..4, 1usize..=4, 0usize..=1, 0.0f64..0.6, any::<u64>()).prop_map(
        |(c, pieces, size, extra, prob, seed)| {
            random_almost_bipartite(&AlmostBipartiteModel {
                cycle_len: 3 + 2 * c,
                pieces,
                piece_size: (1, size),
                cross_edge_prob: prob,
                extra_components: extra,
                seed,
                relabel: true,
            })
            .unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sum_of_alpha_and_mu_is_bounded(g in any_graph(11)) {
        let a = independence_number(&g, &bounds()).unwrap();
        let m = maximum_matching(&g).unwrap().len();
        prop_assert!(g.n() / 2 < a + m && a + m <= g.n());
    }

    #[test]
    fn fast_paths_match_oracles(g in any_graph(11)) {
        let b = bounds();
        let (oc, ok, oker) = oracle_core_corona_ker(&g, &b).unwrap();
        prop_assert_eq!(independence_number(&g, &b).unwrap(), oracle_alpha(&g, &b).unwrap());
        prop_assert_eq!(maximum_matching(&g).unwrap().len(), oracle_mu(&g, &b).unwrap());
        prop_assert_eq!(core(&g, &b).unwrap(), oc);
        prop_assert_eq!(corona(&g, &b).unwrap(), ok);
        prop_assert_eq!(ker(&g, &b).unwrap(), oker);
        let d = critical_difference(&g);
        prop_assert_eq!(d, oracle_d_all_subsets(&g, &b).unwrap());
        prop_assert_eq!(d, oracle_id(&g, &b).unwrap());
    }

    #[test]
    fn core_and_corona_bracket_every_maximum_set(g in any_graph(11)) {
        let b = bounds();
        let omega = oracle_omega(&g, &b).unwrap();
        prop_assert_eq!(&enumerate_maximum_independent_sets(&g, &b).unwrap(), &omega);
        let c = core(&g, &b).unwrap();
        let k = corona(&g, &b).unwrap();
        prop_assert!(omega.iter().all(|s| c.is_subset(s)));
        let union = omega.iter().fold(g.empty_set(), |acc, s| acc.union(s));
        prop_assert_eq!(&union, &k);
        prop_assert!(c.is_subset(&k));
    }

    #[test]
    fn critical_difference_lower_bounds(g in any_graph(11)) {
        let b = bounds();
        let d = critical_difference(&g);
        let gap = independence_number(&g, &b).unwrap() as i64 - maximum_matching(&g).unwrap().len() as i64;
        let c = core(&g, &b).unwrap();
        prop_assert!(gap.max(0) <= d);
        prop_assert!(g.difference(&c) <= d);
        let k = ker(&g, &b).unwrap();
        prop_assert!(k.is_subset(&c));
        if g.is_bipartite() {
            prop_assert_eq!(k, c);
        }
        let witness = find_critical_independent_set(&g, &b).unwrap();
        prop_assert!(g.is_independent(&witness));
        prop_assert_eq!(g.difference(&witness), d);
    }

    #[test]
    fn critical_difference_is_additive(a in any_graph(8), c in any_graph(8)) {
        prop_assert_eq!(
            critical_difference(&a.disjoint_union(&c)),
            critical_difference(&a) + critical_difference(&c)
        );
    }

    #[test]
    fn bipartite_graphs_stay_bipartite_under_deletion(g in any_graph(10), pick in any::<u64>()) {
        if classify(&g).is_bipartite() {
            let v = (pick as usize) % g.n();
            prop_assert!(classify(&g.remove_vertex(v).graph).is_bipartite());
            if g.m() > 0 {
                let e = g.edges()[(pick as usize) % g.m()];
                prop_assert!(classify(&g.remove_edge(e).unwrap()).is_bipartite());
            }
        }
    }

    #[test]
    fn hall_condition_decides_matchability(g in any_graph(10), split in any::<u64>()) {
        // Vertex v goes to a, b or neither according to two bits of `split`.
        let side = |v: usize| (split >> (2 * v)) & 3;
        let a = g.set((0..g.n()).filter(|&v| side(v) == 1));
        let b_set = g.set((0..g.n()).filter(|&v| side(v) == 2));
        let members = a.to_vec();
        let hall = (0u32..1 << members.len()).all(|mask| {
            let x = g.set(members.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v));
            g.neighborhood(&x).intersection(&b_set).len() >= x.len()
        });
        let outcome = matching_from_into(&g, &a, &b_set).unwrap();
        prop_assert_eq!(outcome.exists(), hall);
        match outcome {
            HallOutcome::Saturating(m) => {
                prop_assert!(m.is_valid_in(&g));
                prop_assert!(m.matches_into(&a, &b_set));
            }
            HallOutcome::Violated { witness } => {
                prop_assert!(witness.is_subset(&a));
                prop_assert!(g.neighborhood(&witness).intersection(&b_set).len() < witness.len());
            }
        }
    }

    #[test]
    fn edge_list_round_trip(g in any_graph(11)) {
        prop_assert_eq!(parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn analysis_flags_are_green(g in any_graph(11)) {
        let r = analyze(&g, &bounds());
        prop_assert!(r.unavailable.is_empty(), "{:?}", r.unavailable);
        prop_assert!(r.consistent(), "{:?}", r.consistency);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn almost_bipartite_sum_is_n_or_n_minus_one(g in almost_bipartite_graph()) {
        let a = independence_number(&g, &bounds()).unwrap();
        let m = maximum_matching(&g).unwrap().len();
        prop_assert!(a + m + 1 >= g.n() && a + m <= g.n());
    }

    #[test]
    fn four_ke_predicates_agree(g in almost_bipartite_graph()) {
        let b = OracleBounds::uniform(24);
        let dec = decompose(&g).unwrap();
        let alpha = oracle_alpha(&g, &b).unwrap();
        let ke = is_konig_egervary(&g, &b).unwrap();
        prop_assert_eq!(ke, alpha + oracle_mu(&g, &b).unwrap() == g.n());

        let all_critical = dec.cycle_edges().iter().all(|&e| {
            oracle_alpha(&g.remove_edge(e).unwrap(), &b).unwrap() > alpha
        });
        prop_assert_eq!(ke, !all_critical);

        let anchored = dec.attach.iter().any(|a| {
            let sub = g.induced(&a.piece);
            let local = oracle_core_corona_ker(&sub.graph, &b).unwrap().0;
            sub.lift(&local, g.n()).contains(a.x)
        });
        prop_assert_eq!(ke, anchored);

        let n1 = dec.attachment_vertices(g.n());
        let avoids = oracle_omega(&g, &b).unwrap().iter().any(|s| s.is_disjoint(&n1));
        prop_assert_eq!(!ke, avoids);
    }

    #[test]
    fn mu_critical_cycle_edges_are_never_consecutive(g in almost_bipartite_graph()) {
        let dec = decompose(&g).unwrap();
        let k = dec.cycle.len();
        let critical: Vec<bool> = (0..k)
            .map(|i| is_mu_critical_edge(&g, (dec.cycle[i], dec.cycle[(i + 1) % k])).unwrap())
            .collect();
        for i in 0..k {
            prop_assert!(!(critical[i] && critical[(i + 1) % k]));
        }
        prop_assert!(critical.iter().any(|c| !c));
    }

    #[test]
    fn main_identity_for_non_ke(g in almost_bipartite_graph()) {
        let b = bounds();
        if !is_konig_egervary(&g, &b).unwrap() {
            let gap = independence_number(&g, &b).unwrap() as i64 - maximum_matching(&g).unwrap().len() as i64;
            let c = core(&g, &b).unwrap();
            prop_assert_eq!(critical_difference(&g), gap);
            prop_assert_eq!(g.difference(&c), gap);
        }
    }

    #[test]
    fn every_check_holds(g in almost_bipartite_graph()) {
        let ids: Vec<CheckId> = CheckId::all().collect();
        for r in check_all(&ids, &g, &bounds()) {
            prop_assert!(!r.applicable || r.holds, "{} {}", r.id, r.detail);
        }
    }

    #[test]
    fn decomposition_partitions_the_cycle_component(g in almost_bipartite_graph()) {
        let dec = decompose(&g).unwrap();
        let n = g.n();
        let comp = g.components().into_iter().find(|c| c.contains(dec.cycle[0])).unwrap();
        let mut seen: VertexSet = dec.cycle_set(n);
        let mut pieces: Vec<&VertexSet> = Vec::new();
        for a in &dec.attach {
            let on_cycle = g.set(g.neighbors(a.x).iter().copied()).intersection(&dec.cycle_set(n));
            prop_assert_eq!(on_cycle.to_vec(), vec![a.y]);
            let piece = g.induced(&a.piece).graph;
            prop_assert!(piece.is_connected() && piece.is_bipartite());
            if !pieces.contains(&&a.piece) {
                prop_assert!(seen.is_disjoint(&a.piece));
                seen = seen.union(&a.piece);
                pieces.push(&a.piece);
            }
        }
        prop_assert_eq!(seen, comp);
        for e in dec.cycle_edges() {
            prop_assert!(g.remove_edge(e).unwrap().is_bipartite());
        }
    }
}
