mod common;

use std::collections::BTreeSet;

use common::{random_graph, random_simple_graph};
use lcrank::balance;
use lcrank::count;
use lcrank::cover::{self, Cover};
use lcrank::pebble;
use lcrank::{Element, ElementSet, LoopedGraph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph_strategy(max_n: usize, max_elements: usize) -> impl Strategy<Value = LoopedGraph> {
    any::<u64>().prop_map(move |seed| random_graph(&mut ChaCha8Rng::seed_from_u64(seed), max_n, max_elements))
}

fn circulant(n: usize, jumps: &[usize]) -> LoopedGraph {
    let mut g = LoopedGraph::with_vertices(&lcrank::generators::complete_vertex_names(n)).unwrap();
    for v in 0..n {
        for &j in jumps {
            let w = (v + j) % n;
            if !g.has_edge(v, w) {
                g.add_edge(v, w).unwrap();
            }
        }
    }
    g
}

fn random_subset<R: Rng>(rng: &mut R, g: &LoopedGraph) -> ElementSet {
    g.elements().into_iter().filter(|_| rng.gen_bool(0.5)).collect()
}

/// A random admissible 1-thin cover: random discards, `X_0` spanning the kept
/// loops (plus extras off the discarded loops), one pair per uncovered edge,
/// then random merges that keep thinness.
fn random_cover<R: Rng>(rng: &mut R, g: &LoopedGraph) -> Cover {
    let mut c = Cover::default();
    for id in 0..g.num_loops() {
        if rng.gen_bool(0.3) {
            c.discarded_loops.insert(id);
        }
    }
    let forbidden: BTreeSet<usize> = c.discarded_loops.iter().map(|&id| g.loop_vertex(id)).collect();
    let kept: BTreeSet<usize> =
        (0..g.num_loops()).filter(|id| !c.discarded_loops.contains(id)).map(|id| g.loop_vertex(id)).collect();
    if !kept.is_disjoint(&forbidden) {
        // a vertex with both a kept and a discarded loop: discard all its loops
        for id in 0..g.num_loops() {
            if forbidden.contains(&g.loop_vertex(id)) {
                c.discarded_loops.insert(id);
            }
        }
    }
    let forbidden: BTreeSet<usize> = c.discarded_loops.iter().map(|&id| g.loop_vertex(id)).collect();
    c.looped_member =
        (0..g.num_loops()).filter(|id| !c.discarded_loops.contains(id)).map(|id| g.loop_vertex(id)).collect();
    for v in 0..g.num_vertices() {
        if !forbidden.contains(&v) && rng.gen_bool(0.2) {
            c.looped_member.insert(v);
        }
    }
    for &(u, v) in g.edges() {
        if !(c.looped_member.contains(&u) && c.looped_member.contains(&v)) {
            c.members.push(BTreeSet::from([u, v]));
        }
    }
    for _ in 0..c.members.len() {
        if c.members.len() < 2 {
            break;
        }
        let i = rng.gen_range(0..c.members.len());
        let j = rng.gen_range(0..c.members.len());
        if i == j {
            continue;
        }
        let mut trial = c.clone();
        let merged: BTreeSet<usize> = trial.members[i].union(&trial.members[j]).copied().collect();
        trial.members[i] = merged;
        trial.members.remove(j);
        if cover::is_admissible_thin(g, &trial, 1).unwrap() {
            c = trial;
        }
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn json_round_trip(g in graph_strategy(8, 20)) {
        let canon = g.canonicalize();
        prop_assert_eq!(LoopedGraph::parse(&canon.to_json()).unwrap(), canon.clone());
        prop_assert_eq!(LoopedGraph::parse(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn induced_sets_stay_inside(g in graph_strategy(8, 20), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: BTreeSet<usize> = (0..g.num_vertices()).filter(|_| rng.gen_bool(0.5)).collect();
        let induced = g.induced_edges(&x).unwrap().union(&g.induced_loops(&x).unwrap());
        prop_assert!(induced.support(&g).is_subset(&x));
        for e in induced.iter() {
            prop_assert!(g.contains_element(e));
        }
    }

    #[test]
    fn components_partition_vertices(g in graph_strategy(10, 20)) {
        let comps = g.connected_components();
        let mut owner = vec![usize::MAX; g.num_vertices()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                prop_assert_eq!(owner[v], usize::MAX);
                owner[v] = i;
            }
        }
        prop_assert!(owner.iter().all(|&o| o != usize::MAX));
        for &(u, v) in g.edges() {
            prop_assert_eq!(owner[u], owner[v]);
        }
    }

    #[test]
    fn rank_bounded_by_counts(g in graph_strategy(10, 25)) {
        let r = pebble::rank(&g);
        prop_assert!(r <= g.num_elements().min(2 * g.num_vertices()));
        prop_assert_eq!(r == 2 * g.num_vertices(), pebble::is_rigid(&g));
    }

    #[test]
    fn subset_rank_caps(g in graph_strategy(8, 20), seed in any::<u64>()) {
        let t = random_subset(&mut ChaCha8Rng::seed_from_u64(seed), &g);
        let r = pebble::rank_of_subset(&g, &t).unwrap();
        let n = t.support(&g).len();
        prop_assert!(r <= 2 * n);
        if !t.is_empty() && !t.has_loop() {
            prop_assert!(r <= 2 * n - 3);
        }
    }

    #[test]
    fn random_covers_bound_the_rank(g in graph_strategy(7, 16), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rank = pebble::rank(&g) as i64;
        for _ in 0..5 {
            let c = random_cover(&mut rng, &g);
            prop_assert!(cover::is_admissible_thin(&g, &c, 1).unwrap(), "{:?}", c);
            prop_assert!(c.value() >= rank, "cover {:?} below rank {}", c, rank);
        }
    }

    #[test]
    fn brute_force_certificates_are_consistent(g in graph_strategy(6, 10), seed in any::<u64>()) {
        let t = random_subset(&mut ChaCha8Rng::seed_from_u64(seed), &g);
        let c = count::rank_brute_force_restricted(&g, &t, 12).unwrap();
        c.validate(&g, &t).unwrap();
        for (i, a) in c.parts.iter().enumerate() {
            for b in &c.parts[i + 1..] {
                prop_assert!(a.support(&g).intersection(&b.support(&g)).count() <= 1);
            }
        }
    }

    #[test]
    fn balance_is_monotone_in_k(g in graph_strategy(7, 14), k in 1usize..5) {
        if balance::is_k_balanced(&g, k).balanced {
            prop_assert!(balance::is_k_balanced(&g, k - 1).balanced);
        }
    }

    #[test]
    fn balance_witness_is_genuine(g in graph_strategy(7, 14), k in 0usize..5) {
        let report = balance::is_k_balanced(&g, k);
        prop_assert_eq!(report.balanced, report.witness.is_none());
        if let Some(w) = report.witness {
            prop_assert!(w.removed.len() <= k);
            prop_assert!(w.looped_count < k - w.removed.len());
            let removed: BTreeSet<usize> = w.removed.iter().copied().collect();
            let h = g.delete_vertices(&removed).unwrap();
            let names: Vec<&str> = w.component.iter().map(|&v| g.name(v)).collect();
            let comp = h.vertex_set(&names).unwrap();
            prop_assert!(h.connected_components().iter().any(|c| c.iter().copied().collect::<BTreeSet<_>>() == comp));
            let looped = comp.iter().filter(|&&v| h.loops_at(v).unwrap() > 0).count();
            prop_assert_eq!(looped, w.looped_count);
        }
    }

    #[test]
    fn six_balanced_graphs_are_rigid(n in 8usize..14, extra_edges in 0usize..6, extra_loops in 0usize..4, seed in any::<u64>()) {
        // circulant C_n(1, 2, 3) is 6-connected; six loops on distinct vertices make it 6-balanced
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = circulant(n, &[1, 2, 3]);
        prop_assert_eq!(g.vertex_connectivity(), 6);
        let mut looped: Vec<usize> = (0..n).collect();
        looped.shuffle(&mut rng);
        for &v in &looped[..6] {
            g.add_loop(v).unwrap();
        }
        for _ in 0..extra_loops {
            g.add_loop(rng.gen_range(0..n)).unwrap();
        }
        for _ in 0..extra_edges {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v && !g.has_edge(u, v) {
                g.add_edge(u, v).unwrap();
            }
        }
        prop_assert!(balance::is_k_balanced(&g, 6).balanced);
        prop_assert!(pebble::is_rigid(&g));
        prop_assert!(balance::check_six_balanced_rigid(&g));
    }
}

#[test]
fn loopless_cover_rank_matches_pebble() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let g = random_simple_graph(&mut rng, 7, 12);
        let (value, c) = cover::ly_rank(&g, 12).unwrap();
        assert_eq!(value, pebble::rank(&g));
        assert!(c.looped_member.is_empty());
        assert!(cover::is_admissible_thin(&g, &c, 1).unwrap());
    }
}

#[test]
fn order_invariance_small() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let g = random_graph(&mut rng, 8, 20);
        let want = pebble::rank(&g);
        let mut order: Vec<Element> = g.elements();
        for _ in 0..20 {
            order.shuffle(&mut rng);
            assert_eq!(pebble::basis_in_order(&g, &order).unwrap().rank(), want);
        }
    }
}
