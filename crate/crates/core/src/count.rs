//! The count function `f` and exhaustive oracles for the graded count matroid.
//!
//! `f(T) = 2|V(T)| − 3` for a nonempty edge-only `T` and `2|V(T)|` once `T`
//! contains a loop. The matroid induced by `f` has rank
//! `min |T'| + Σ f(T_i)` over discard sets `T'` and partitions of `T ∖ T'`.
//! Everything here is exponential and meant as ground truth for the pebble
//! game at small sizes.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Element, ElementSet, LoopedGraph, Vertex};

/// Default element bound for the partition searches.
pub const DEFAULT_BRUTE_BOUND: usize = 12;
/// Element bound for exhaustive subset enumeration in [`is_independent`].
pub const SUBSET_BOUND: usize = 24;
/// Largest bound the partition searches accept (vertex masks are `u64`).
pub const MAX_BRUTE_BOUND: usize = 32;

/// A minimizing discard set and partition; `rank = |discard| + Σ f(part)`.
///
/// Certificates from [`rank_brute_force_restricted`] keep every loop outside
/// `discard` in `parts[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub discard: ElementSet,
    pub parts: Vec<ElementSet>,
}

impl RankCertificate {
    /// Checks the partition shape against `t` and recomputes the value.
    pub fn validate(&self, g: &LoopedGraph, t: &ElementSet) -> Result<()> {
        let mut seen = self.discard.clone();
        for part in &self.parts {
            if part.is_empty() {
                return Err(Error::MalformedCertificate("empty part".into()));
            }
            for e in part.iter() {
                if !seen.insert(e) {
                    return Err(Error::MalformedCertificate(format!("{e:?} appears twice")));
                }
            }
        }
        if &seen != t {
            return Err(Error::MalformedCertificate(
                "discard set and parts do not partition the queried set".into(),
            ));
        }
        let mut value = self.discard.len() as i64;
        for part in &self.parts {
            value += f_value(g, part)?;
        }
        if value != self.rank as i64 {
            return Err(Error::MalformedCertificate(format!(
                "value {value} differs from stated rank {}",
                self.rank
            )));
        }
        Ok(())
    }
}

/// `f(T)`. Undefined (error) on the empty set.
pub fn f_value(g: &LoopedGraph, t: &ElementSet) -> Result<i64> {
    if t.is_empty() {
        return Err(Error::EmptySet);
    }
    g.check_elements(t)?;
    let n = t.support(g).len() as i64;
    Ok(if t.has_loop() { 2 * n } else { 2 * n - 3 })
}

/// Exhaustive check of both counts on every nonempty subset of `t`:
/// `|T'| ≤ 2|V(T')| − 3` for edge-only `T'`, `|T'| ≤ 2|V(T')|` always.
pub fn is_independent(g: &LoopedGraph, t: &ElementSet) -> Result<bool> {
    g.check_elements(t)?;
    if t.len() > SUBSET_BOUND {
        return Err(Error::BoundExceeded { size: t.len(), bound: SUBSET_BOUND });
    }
    let local = LocalElements::new(g, t);
    Ok(subsets_ok(&local.items, 0, 0, 0, false))
}

fn subsets_ok(items: &[LocalItem], i: usize, count: i64, mask: u64, looped: bool) -> bool {
    if count > 0 {
        let n = mask.count_ones() as i64;
        let cap = if looped { 2 * n } else { 2 * n - 3 };
        if count > cap {
            return false;
        }
    }
    if i == items.len() {
        return true;
    }
    let it = &items[i];
    subsets_ok(items, i + 1, count, mask, looped)
        && subsets_ok(items, i + 1, count + 1, mask | it.mask, looped || it.is_loop)
}

pub fn is_graded_sparse(g: &LoopedGraph) -> Result<bool> {
    is_independent(g, &g.all_elements())
}

/// Graded-sparse with exactly `2|V|` elements.
pub fn is_tight(g: &LoopedGraph) -> Result<bool> {
    if g.num_elements() != 2 * g.num_vertices() {
        return Ok(false);
    }
    is_graded_sparse(g)
}

/// Edmonds' partition minimum over unrestricted discard sets and partitions.
pub fn rank_brute_force(g: &LoopedGraph, t: &ElementSet, bound: usize) -> Result<RankCertificate> {
    PartitionSearch::run(g, t, bound, false)
}

/// The same minimum with the restricted shape: only loops are discarded,
/// only `parts[0]` holds loops, and the supports of any two parts share at
/// most one vertex.
pub fn rank_brute_force_restricted(g: &LoopedGraph, t: &ElementSet, bound: usize) -> Result<RankCertificate> {
    PartitionSearch::run(g, t, bound, true)
}

/// `f(T1) + f(T2) ≥ f(T1 ∪ T2) + f(T1 ∩ T2)`; pairs with empty intersection
/// are skipped (reported as holding).
pub fn check_submodular(g: &LoopedGraph, t1: &ElementSet, t2: &ElementSet) -> Result<bool> {
    let (f1, f2) = (f_value(g, t1)?, f_value(g, t2)?);
    let cap = t1.intersection(t2);
    if cap.is_empty() {
        return Ok(true);
    }
    Ok(f1 + f2 >= f_value(g, &t1.union(t2))? + f_value(g, &cap)?)
}

/// `f(T1 ∪ T2) ≤ f(T1) + f(T2)` whenever the supports share two vertices or
/// both sets contain loops; vacuously true otherwise.
pub fn check_union_lemma(g: &LoopedGraph, t1: &ElementSet, t2: &ElementSet) -> Result<bool> {
    let (f1, f2) = (f_value(g, t1)?, f_value(g, t2)?);
    let shared = t1.support(g).intersection(&t2.support(g)).count();
    if shared < 2 && !(t1.has_loop() && t2.has_loop()) {
        return Ok(true);
    }
    Ok(f_value(g, &t1.union(t2))? <= f1 + f2)
}

#[derive(Debug, Clone, Copy)]
struct LocalItem {
    element: Element,
    mask: u64,
    is_loop: bool,
}

/// Elements of `t` with their supports as bitmasks over `V(T)`.
struct LocalElements {
    items: Vec<LocalItem>,
}

impl LocalElements {
    /// Loops first, then edges; each group in element order.
    fn new(g: &LoopedGraph, t: &ElementSet) -> Self {
        let support: Vec<Vertex> = t.support(g).into_iter().collect();
        assert!(support.len() <= 64, "support too large for u64 masks");
        let bit = |v: Vertex| 1u64 << support.binary_search(&v).expect("vertex in support");
        let mut items: Vec<LocalItem> = t
            .iter()
            .map(|e| match e {
                Element::Edge(i) => {
                    let (u, v) = g.edge(i);
                    LocalItem { element: e, mask: bit(u) | bit(v), is_loop: false }
                }
                Element::Loop(i) => LocalItem { element: e, mask: bit(g.loop_vertex(i)), is_loop: true },
            })
            .collect();
        items.sort_by_key(|it| (!it.is_loop, it.element));
        Self { items }
    }
}

#[derive(Debug, Clone, Copy)]
struct Block {
    mask: u64,
    looped: bool,
}

impl Block {
    fn cost(&self) -> usize {
        let n = 2 * self.mask.count_ones() as usize;
        if self.looped {
            n
        } else {
            n - 3
        }
    }
}

/// Branch and bound over assignments element -> discard | block, blocks in
/// restricted-growth order. Adding an element never lowers a block's `f`, so
/// the running cost bounds every completion from below.
struct PartitionSearch<'a> {
    items: &'a [LocalItem],
    restricted: bool,
    assign: Vec<Option<usize>>,
    blocks: Vec<Block>,
    best: usize,
    best_assign: Vec<Option<usize>>,
}

impl<'a> PartitionSearch<'a> {
    fn run(g: &LoopedGraph, t: &ElementSet, bound: usize, restricted: bool) -> Result<RankCertificate> {
        g.check_elements(t)?;
        let bound = bound.min(MAX_BRUTE_BOUND);
        if t.len() > bound {
            return Err(Error::BoundExceeded { size: t.len(), bound });
        }
        let local = LocalElements::new(g, t);
        let items = &local.items;

        // Any complete assignment beats |T| + 1; the first leaf reached among
        // equal values prefers joining blocks over discarding.
        let mut search = PartitionSearch {
            items,
            restricted,
            assign: vec![None; items.len()],
            blocks: Vec::new(),
            best: items.len() + 1,
            best_assign: Vec::new(),
        };
        search.dfs(0, 0);

        let mut discard = ElementSet::new();
        let mut parts: Vec<ElementSet> = Vec::new();
        for (it, a) in items.iter().zip(&search.best_assign) {
            match *a {
                None => {
                    discard.insert(it.element);
                }
                Some(b) => {
                    if parts.len() <= b {
                        parts.resize_with(b + 1, ElementSet::new);
                    }
                    parts[b].insert(it.element);
                }
            }
        }
        Ok(RankCertificate { rank: search.best, discard, parts })
    }

    fn dfs(&mut self, i: usize, cost: usize) {
        if cost >= self.best {
            return;
        }
        if i == self.items.len() {
            self.best = cost;
            self.best_assign.clone_from(&self.assign);
            return;
        }
        let it = self.items[i];

        // Join an existing block. Loops come first in `items`, so in the
        // restricted search the looped part is always block 0.
        for b in 0..self.blocks.len() {
            if self.restricted && it.is_loop && b != 0 {
                break;
            }
            let old = self.blocks[b];
            let new = Block { mask: old.mask | it.mask, looped: old.looped || it.is_loop };
            if self.restricted && new.mask != old.mask && self.overlaps(b, new.mask) {
                continue;
            }
            self.blocks[b] = new;
            self.assign[i] = Some(b);
            self.dfs(i + 1, cost - old.cost() + new.cost());
            self.blocks[b] = old;
        }

        // Open a new block.
        let opens = !(self.restricted && it.is_loop && !self.blocks.is_empty());
        if opens {
            let new = Block { mask: it.mask, looped: it.is_loop };
            if !(self.restricted && self.overlaps(self.blocks.len(), new.mask)) {
                self.blocks.push(new);
                self.assign[i] = Some(self.blocks.len() - 1);
                self.dfs(i + 1, cost + new.cost());
                self.blocks.pop();
            }
        }

        // Discard.
        if !self.restricted || it.is_loop {
            self.assign[i] = None;
            self.dfs(i + 1, cost + 1);
        }
        self.assign[i] = None;
    }

    fn overlaps(&self, skip: usize, mask: u64) -> bool {
        self.blocks.iter().enumerate().any(|(j, b)| j != skip && (b.mask & mask).count_ones() >= 2)
    }
}

/// Vertex-set form of the two counts: returns some `X ⊆ V` whose induced
/// edges or induced elements exceed their cap, if one exists.
pub fn max_induced_violation(g: &LoopedGraph) -> Option<BTreeSet<Vertex>> {
    let n = g.num_vertices();
    assert!(n <= 20, "vertex enumeration is exponential");
    for mask in 1u32..(1 << n) {
        let x: BTreeSet<Vertex> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let edges = g.induced_edges(&x).ok()?.len() as i64;
        let loops = g.induced_loops(&x).ok()?.len() as i64;
        let k = x.len() as i64;
        if (edges > 0 && edges > 2 * k - 3) || edges + loops > 2 * k {
            return Some(x);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::complete;
    use std::collections::BTreeMap;

    fn k4() -> LoopedGraph {
        complete(4, &BTreeMap::new()).unwrap()
    }

    fn k4_with_loops(n_loops: usize) -> LoopedGraph {
        let mut g = k4();
        for v in 0..n_loops {
            g.add_loop(v).unwrap();
        }
        g
    }

    fn loops_only(count: usize) -> LoopedGraph {
        let mut g = LoopedGraph::with_vertices(&["v"]).unwrap();
        for _ in 0..count {
            g.add_loop(0).unwrap();
        }
        g
    }

    fn edges(ids: &[usize]) -> ElementSet {
        ids.iter().map(|&i| Element::Edge(i)).collect()
    }

    #[test]
    fn f_values() {
        let g = k4_with_loops(1);
        assert_eq!(f_value(&g, &edges(&[0])).unwrap(), 1);
        assert_eq!(f_value(&g, &ElementSet::from_iter([Element::Loop(0)])).unwrap(), 2);
        let all_edges = edges(&[0, 1, 2, 3, 4, 5]);
        assert_eq!(f_value(&g, &all_edges).unwrap(), 5);
        assert_eq!(f_value(&g, &g.all_elements()).unwrap(), 8);
        assert_eq!(f_value(&g, &ElementSet::new()), Err(Error::EmptySet));
    }

    #[test]
    fn independence_examples() {
        assert!(!is_graded_sparse(&k4()).unwrap());
        let g = k4_with_loops(3);
        let g = g.delete_elements(&edges(&[5])).unwrap();
        assert!(is_graded_sparse(&g).unwrap());
        assert!(is_tight(&g).unwrap());
        assert!(!is_graded_sparse(&loops_only(3)).unwrap());
        assert!(!is_tight(&k4_with_loops(3)).unwrap());
        let k2 = complete(2, &BTreeMap::new()).unwrap();
        assert!(is_graded_sparse(&k2).unwrap());
        assert!(!is_tight(&k2).unwrap());
    }

    #[test]
    fn edge_next_to_loop_is_independent() {
        let mut g = complete(2, &BTreeMap::new()).unwrap();
        g.add_loop(0).unwrap();
        assert!(is_graded_sparse(&g).unwrap());
        assert_eq!(rank_brute_force(&g, &g.all_elements(), 12).unwrap().rank, 2);
    }

    #[test]
    fn brute_force_examples() {
        let one = loops_only(1);
        let c = rank_brute_force(&one, &one.all_elements(), 12).unwrap();
        assert_eq!(c.rank, 1);
        assert_eq!(c.discard.len(), 1);
        c.validate(&one, &one.all_elements()).unwrap();

        let g = k4();
        let c = rank_brute_force(&g, &g.all_elements(), 12).unwrap();
        assert_eq!(c.rank, 5);
        c.validate(&g, &g.all_elements()).unwrap();

        let c = rank_brute_force(&g, &ElementSet::new(), 12).unwrap();
        assert_eq!(c.rank, 0);
        assert!(c.parts.is_empty() && c.discard.is_empty());

        let two = loops_only(2);
        let c = rank_brute_force(&two, &two.all_elements(), 12).unwrap();
        assert_eq!(c.rank, 2);
        assert!(c.discard.is_empty());
        assert_eq!(c.parts.len(), 1);

        let g = k4_with_loops(3);
        assert_eq!(rank_brute_force(&g, &g.all_elements(), 12).unwrap().rank, 8);
    }

    #[test]
    fn restricted_matches_examples() {
        for (g, want) in [(loops_only(1), 1), (k4(), 5), (loops_only(2), 2), (k4_with_loops(3), 8)] {
            let t = g.all_elements();
            let c = rank_brute_force_restricted(&g, &t, 12).unwrap();
            assert_eq!(c.rank, want);
            c.validate(&g, &t).unwrap();
            assert!(c.discard.iter().all(Element::is_loop));
            assert!(c.parts.iter().skip(1).all(|p| !p.has_loop()));
        }
    }

    #[test]
    fn bound_is_enforced() {
        let g = complete(6, &BTreeMap::new()).unwrap();
        assert_eq!(
            rank_brute_force(&g, &g.all_elements(), 12),
            Err(Error::BoundExceeded { size: 15, bound: 12 })
        );
        assert_eq!(rank_brute_force(&g, &g.all_elements(), 15).unwrap().rank, 9);
    }

    #[test]
    fn lemma_checks() {
        // triangles abc and bcd inside K4
        let g = k4();
        let abc = g.induced_edges(&BTreeSet::from([0, 1, 2])).unwrap();
        let bcd = g.induced_edges(&BTreeSet::from([1, 2, 3])).unwrap();
        assert!(check_submodular(&g, &abc, &bcd).unwrap());
        assert_eq!(f_value(&g, &abc.union(&bcd)).unwrap(), 5);

        // disjoint intersection is skipped
        let ab = edges(&[g.find_edge(0, 1).unwrap()]);
        let ac = edges(&[g.find_edge(0, 2).unwrap()]);
        assert!(check_submodular(&g, &ab, &ac).unwrap());

        let mut h = complete(2, &BTreeMap::new()).unwrap();
        h.add_loop(0).unwrap();
        h.add_loop(1).unwrap();
        let t1 = ElementSet::from_iter([Element::Loop(0), Element::Edge(0)]);
        let t2 = ElementSet::from_iter([Element::Loop(1), Element::Edge(0)]);
        assert!(check_union_lemma(&h, &t1, &t2).unwrap());
        assert_eq!(f_value(&h, &t1.union(&t2)).unwrap(), 4);
    }

    #[test]
    fn vertex_counting_agrees_on_k4_family() {
        for loops in 0..5 {
            let g = k4_with_loops(loops.min(4));
            assert_eq!(max_induced_violation(&g).is_none(), is_graded_sparse(&g).unwrap());
        }
    }
}
