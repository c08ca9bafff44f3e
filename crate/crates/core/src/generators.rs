//! Named example graphs.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::graph::LoopedGraph;

/// Vertex names used by [`complete`]: `a, b, c, ...` up to 26 vertices, `v1..vn` beyond.
pub fn complete_vertex_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (1..=n).map(|i| format!("v{i}")).collect()
    }
}

/// `K_n` with `loops[name]` loops at the named vertex.
pub fn complete(n: usize, loops: &BTreeMap<String, usize>) -> Result<LoopedGraph> {
    let mut g = LoopedGraph::with_vertices(&complete_vertex_names(n))?;
    for u in 0..n {
        for v in (u + 1)..n {
            g.add_edge(u, v)?;
        }
    }
    for (name, &count) in loops {
        for _ in 0..count {
            g.add_loop_by_name(name)?;
        }
    }
    Ok(g)
}

/// `K_n` with one loop on each of the first `looped` vertices.
pub fn complete_with_loops(n: usize, looped: usize) -> Result<LoopedGraph> {
    let names = complete_vertex_names(n);
    let loops = names.into_iter().take(looped).map(|v| (v, 1)).collect();
    complete(n, &loops)
}

/// Left graph of the 3-balanced examples: `K_4` on `u, v, w, z` with loops at `v, w, z`.
pub fn figure1_left() -> LoopedGraph {
    let mut g = LoopedGraph::with_vertices(&["u", "v", "w", "z"]).unwrap();
    for (a, b) in [("v", "u"), ("w", "u"), ("w", "v"), ("z", "u"), ("z", "v"), ("z", "w")] {
        g.add_edge_by_name(a, b).unwrap();
    }
    for v in ["v", "w", "z"] {
        g.add_loop_by_name(v).unwrap();
    }
    g
}

fn add_four_cycle(g: &mut LoopedGraph, [u, v, w, z]: [&str; 4]) {
    for name in [u, v, w, z] {
        g.add_vertex(name).unwrap();
    }
    for (a, b) in [(v, u), (w, v), (z, u), (z, w)] {
        g.add_edge_by_name(a, b).unwrap();
    }
    for name in [u, v, w, z] {
        g.add_loop_by_name(name).unwrap();
    }
}

/// Middle graph: the 4-cycle `u-v-w-z-u` (no `uw`, no `vz`) with one loop per vertex.
pub fn figure1_middle() -> LoopedGraph {
    let mut g = LoopedGraph::new();
    add_four_cycle(&mut g, ["u", "v", "w", "z"]);
    g
}

/// Right graph: two disjoint copies of the middle graph.
pub fn figure1_right() -> LoopedGraph {
    let mut g = LoopedGraph::new();
    add_four_cycle(&mut g, ["u", "v", "w", "z"]);
    add_four_cycle(&mut g, ["x", "y", "t", "s"]);
    g
}

pub const RING_COPIES: usize = 8;
pub const RING_LOOPED_COPY: usize = 2;

pub fn ring_vertex_name(copy: usize, pos: usize) -> String {
    format!("c{copy}_{pos}")
}

/// Inter-copy matching of the ring of `K_5`'s as `((copy, pos), (copy, pos))`.
pub fn ring_matching() -> Vec<((usize, usize), (usize, usize))> {
    let n = RING_COPIES;
    let mut m = Vec::with_capacity(20);
    for i in 0..n {
        m.push((((i + 1) % n, 2), (i, 3)));
    }
    for i in 0..n {
        m.push((((i + 2) % n, 1), (i, 4)));
    }
    for i in 0..n / 2 {
        m.push((((i + 4) % n, 5), (i, 5)));
    }
    m
}

/// The non-rigid 5-balanced graph: eight `K_5` copies `c0..c7` joined by a
/// perfect matching, with one loop on each vertex of copy `c2`.
/// 40 vertices, 100 edges, 5 loops.
pub fn ring_of_k5() -> LoopedGraph {
    let mut g = LoopedGraph::new();
    for c in 0..RING_COPIES {
        for p in 1..=5 {
            g.add_vertex(&ring_vertex_name(c, p)).unwrap();
        }
    }
    for c in 0..RING_COPIES {
        for p in 1..=5 {
            for q in (p + 1)..=5 {
                g.add_edge_by_name(&ring_vertex_name(c, p), &ring_vertex_name(c, q)).unwrap();
            }
        }
    }
    for ((ca, pa), (cb, pb)) in ring_matching() {
        g.add_edge_by_name(&ring_vertex_name(ca, pa), &ring_vertex_name(cb, pb)).unwrap();
    }
    for p in 1..=5 {
        g.add_loop_by_name(&ring_vertex_name(RING_LOOPED_COPY, p)).unwrap();
    }
    g
}

/// Random looped simple graph: `1..=max_n` vertices, `0..=max_elements`
/// elements, with a random share of loops.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, max_n: usize, max_elements: usize) -> LoopedGraph {
    let n = rng.gen_range(1..=max_n.max(1));
    let mut g = LoopedGraph::with_vertices(&complete_vertex_names(n)).unwrap();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let total = rng.gen_range(0..=max_elements);
    let loop_share = rng.gen_range(0.0..0.6);
    for _ in 0..total {
        if rng.gen_bool(loop_share) || pairs.is_empty() {
            g.add_loop(rng.gen_range(0..n)).unwrap();
        } else {
            let (u, v) = pairs.pop().unwrap();
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Random loopless graph on `2..=max_n` vertices.
pub fn random_simple_graph<R: Rng + ?Sized>(rng: &mut R, max_n: usize, max_edges: usize) -> LoopedGraph {
    let n = rng.gen_range(2..=max_n.max(2));
    let mut g = LoopedGraph::with_vertices(&complete_vertex_names(n)).unwrap();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let m = rng.gen_range(0..=max_edges.min(pairs.len()));
    for &(u, v) in &pairs[..m] {
        g.add_edge(u, v).unwrap();
    }
    g
}
