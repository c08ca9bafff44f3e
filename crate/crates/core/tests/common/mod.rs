#![allow(dead_code, unused_imports)]

use lcrank::generators::complete_vertex_names;
pub use lcrank::generators::{random_graph, random_simple_graph};
use lcrank::LoopedGraph;

/// Every looped simple graph on `0..=max_n` labelled vertices with at most
/// `max_elements` elements (edge subsets times loop multiplicity vectors).
pub fn for_each_small_graph(max_n: usize, max_elements: usize, mut visit: impl FnMut(&LoopedGraph)) {
    for n in 0..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let e = mask.count_ones() as usize;
            if e > max_elements {
                continue;
            }
            let mut mult = vec![0usize; n];
            loop {
                let mut g = LoopedGraph::with_vertices(&complete_vertex_names(n)).unwrap();
                for (i, &(u, v)) in pairs.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        g.add_edge(u, v).unwrap();
                    }
                }
                for (v, &k) in mult.iter().enumerate() {
                    for _ in 0..k {
                        g.add_loop(v).unwrap();
                    }
                }
                visit(&g);
                if !next_multiplicity(&mut mult, max_elements - e) {
                    break;
                }
            }
        }
    }
}

/// Next vector of nonnegative entries with sum at most `cap` (odometer order).
fn next_multiplicity(m: &mut [usize], cap: usize) -> bool {
    for i in 0..m.len() {
        m[i] += 1;
        if m.iter().sum::<usize>() <= cap {
            return true;
        }
        m[i] = 0;
    }
    false
}
