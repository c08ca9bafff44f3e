//! `k`-balanced looped graphs: for every `T ⊆ V` with `|T| ≤ k`, every
//! component of `G − T` has at least `k − |T|` distinct vertices with loops.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Element, ElementSet, LoopedGraph, Vertex};
use crate::pebble;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub removed: Vec<Vertex>,
    pub component: Vec<Vertex>,
    pub looped_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceReport {
    pub balanced: bool,
    pub witness: Option<Witness>,
}

/// Scans removal sets by increasing size and stops at the first component
/// short of looped vertices.
pub fn is_k_balanced(g: &LoopedGraph, k: usize) -> BalanceReport {
    let n = g.num_vertices();
    let adj = g.neighbors();
    let mut looped = vec![false; n];
    for &v in g.loops() {
        looped[v] = true;
    }
    let mut scan = ComponentScan::new(n);
    for size in 0..=k.min(n) {
        let need = k - size;
        let mut removed: Vec<Vertex> = (0..size).collect();
        loop {
            if let Some((component, looped_count)) = scan.short_component(&adj, &looped, &removed, need) {
                return BalanceReport {
                    balanced: false,
                    witness: Some(Witness { removed, component, looped_count }),
                };
            }
            if !next_combination(&mut removed, n) {
                break;
            }
        }
    }
    BalanceReport { balanced: true, witness: None }
}

/// Advances `c` to the next `|c|`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in (i + 1)..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

struct ComponentScan {
    mark: Vec<u32>,
    epoch: u32,
    queue: VecDeque<Vertex>,
}

impl ComponentScan {
    fn new(n: usize) -> Self {
        Self { mark: vec![0; n], epoch: 0, queue: VecDeque::new() }
    }

    /// A component of `G − removed` with fewer than `need` looped vertices.
    fn short_component(
        &mut self,
        adj: &[Vec<Vertex>],
        looped: &[bool],
        removed: &[Vertex],
        need: usize,
    ) -> Option<(Vec<Vertex>, usize)> {
        if need == 0 {
            return None;
        }
        self.epoch += 1;
        let epoch = self.epoch;
        for &v in removed {
            self.mark[v] = epoch;
        }
        for s in 0..adj.len() {
            if self.mark[s] == epoch {
                continue;
            }
            self.mark[s] = epoch;
            self.queue.push_back(s);
            let mut comp = vec![s];
            let mut count = usize::from(looped[s]);
            while let Some(u) = self.queue.pop_front() {
                for &w in &adj[u] {
                    if self.mark[w] != epoch {
                        self.mark[w] = epoch;
                        count += usize::from(looped[w]);
                        comp.push(w);
                        self.queue.push_back(w);
                    }
                }
            }
            if count < need {
                comp.sort_unstable();
                return Some((comp, count));
            }
        }
        None
    }
}

/// 6-balanced implies rigid. Returns false only on a counterexample.
pub fn check_six_balanced_rigid(g: &LoopedGraph) -> bool {
    !is_k_balanced(g, 6).balanced || pebble::is_rigid(g)
}

/// Some `size`-element deletion that leaves `g` non-rigid, if any.
pub fn first_nonrigid_deletion(g: &LoopedGraph, size: usize) -> Option<ElementSet> {
    let elements = g.elements();
    let m = elements.len();
    if size > m {
        return None;
    }
    let mut pick: Vec<usize> = (0..size).collect();
    loop {
        let s: ElementSet = pick.iter().map(|&i| elements[i]).collect();
        let h = g.delete_elements(&s).expect("elements of g");
        if !pebble::is_rigid(&h) {
            return Some(s);
        }
        if !next_combination(&mut pick, m) {
            return None;
        }
    }
}

/// Every deletion of three elements from a 6-balanced graph stays rigid.
pub fn check_minus_three_robust(g: &LoopedGraph) -> Result<bool> {
    if !is_k_balanced(g, 6).balanced {
        return Err(Error::Precondition("graph is not 6-balanced".into()));
    }
    Ok(first_nonrigid_deletion(g, 3).is_none())
}

/// Deleting the given loops (by id) from `g`.
pub fn without_loops(g: &LoopedGraph, ids: &[usize]) -> Result<LoopedGraph> {
    let s: ElementSet = ids.iter().map(|&i| Element::Loop(i)).collect();
    g.delete_elements(&s)
}
