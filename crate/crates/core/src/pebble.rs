//! Graded pebble game for `(2,0,3)`-graded sparsity.
//!
//! Graded sparsity is the conjunction of two plain count conditions: the
//! edges are `(2,3)`-sparse and all elements together are `(2,0)`-sparse.
//! The state therefore runs two ordinary `(2,l)` pebble games side by side:
//! an edge game (`l = 3`, an edge needs 4 pebbles on its endpoints) over the
//! accepted edges, and a mixed game (`l = 0`, an edge or loop needs 1 pebble)
//! over all accepted elements. An element is independent of the accepted set
//! exactly when every game it belongs to can gather its pebbles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Element, ElementSet, LoopedGraph, Vertex};

/// One `(2, l)` pebble game: two pebbles per vertex, each accepted element
/// is an arc out of the vertex that paid for it. Loops are arcs `v -> v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PebbleGame {
    pebbles: Vec<u8>,
    /// Arc id -> (tail, head).
    arcs: Vec<(Vertex, Vertex)>,
    /// Vertex -> ids of arcs with that tail.
    out: Vec<Vec<usize>>,
}

impl PebbleGame {
    pub fn new(n: usize) -> Self {
        Self { pebbles: vec![2; n], arcs: Vec::new(), out: vec![Vec::new(); n] }
    }

    pub fn pebbles(&self, v: Vertex) -> u8 {
        self.pebbles[v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v].len()
    }

    pub fn total_pebbles(&self) -> usize {
        self.pebbles.iter().map(|&p| p as usize).sum()
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs as (tail, head) in acceptance order.
    pub fn arcs(&self) -> &[(Vertex, Vertex)] {
        &self.arcs
    }

    /// Brings one more pebble to `target` along a reversed directed path,
    /// never taking pebbles from vertices in `held`. Depth-first, neighbours
    /// in arc order.
    fn fetch(&mut self, target: Vertex, held: &[Vertex]) -> bool {
        let n = self.pebbles.len();
        let mut seen = vec![false; n];
        for &h in held {
            seen[h] = true;
        }
        seen[target] = true;
        // (vertex, index into out-list) stack; `via[v]` = arc used to enter v
        let mut via = vec![usize::MAX; n];
        let mut stack = vec![(target, 0usize)];
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next >= self.out[v].len() {
                stack.pop();
                continue;
            }
            let arc = self.out[v][*next];
            *next += 1;
            let w = self.arcs[arc].1;
            if seen[w] {
                continue;
            }
            seen[w] = true;
            via[w] = arc;
            if self.pebbles[w] > 0 {
                self.pebbles[w] -= 1;
                self.pebbles[target] += 1;
                let mut x = w;
                while x != target {
                    let a = via[x];
                    let tail = self.arcs[a].0;
                    self.reverse(a);
                    x = tail;
                }
                return true;
            }
            stack.push((w, 0));
        }
        false
    }

    fn reverse(&mut self, arc: usize) {
        let (t, h) = self.arcs[arc];
        let pos = self.out[t].iter().position(|&a| a == arc).expect("arc in tail list");
        self.out[t].swap_remove(pos);
        self.out[h].push(arc);
        self.arcs[arc] = (h, t);
    }

    /// Gathers at least `need` pebbles on `{u, v}` (or on `u` when `u == v`).
    fn gather(&mut self, u: Vertex, v: Vertex, need: u8) -> bool {
        let held = [u, v];
        loop {
            let have = if u == v { self.pebbles[u] } else { self.pebbles[u] + self.pebbles[v] };
            if have >= need {
                return true;
            }
            let got = (self.pebbles[u] < 2 && self.fetch(u, &held))
                || (u != v && self.pebbles[v] < 2 && self.fetch(v, &held));
            if !got {
                return false;
            }
        }
    }

    /// Pays one pebble from `u` (or `v`) and records the arc.
    fn commit(&mut self, u: Vertex, v: Vertex) {
        let (tail, head) = if self.pebbles[u] > 0 { (u, v) } else { (v, u) };
        assert!(self.pebbles[tail] > 0, "commit without a pebble");
        self.pebbles[tail] -= 1;
        self.out[tail].push(self.arcs.len());
        self.arcs.push((tail, head));
    }
}

/// Which count blocked a rejected element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Blocked {
    /// `|T| ≤ 2|V(T)| − 3` on edges.
    EdgeCount,
    /// `|T| ≤ 2|V(T)|` on edges and loops.
    ElementCount,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PebbleState {
    edge_game: PebbleGame,
    mixed_game: PebbleGame,
    accepted: Vec<Element>,
}

impl PebbleState {
    pub fn new(n: usize) -> Self {
        Self { edge_game: PebbleGame::new(n), mixed_game: PebbleGame::new(n), accepted: Vec::new() }
    }

    pub fn num_vertices(&self) -> usize {
        self.mixed_game.pebbles.len()
    }

    /// The `(2,3)` game on accepted edges.
    pub fn edge_game(&self) -> &PebbleGame {
        &self.edge_game
    }

    /// The `(2,0)` game on all accepted elements.
    pub fn mixed_game(&self) -> &PebbleGame {
        &self.mixed_game
    }

    pub fn accepted(&self) -> &[Element] {
        &self.accepted
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{v}")))
        }
    }

    /// Offers edge `uv`; on rejection the state is left as it was.
    pub fn try_insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<std::result::Result<(), Blocked>> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::Precondition("edge endpoints must differ".into()));
        }
        let saved = (self.edge_game.clone(), self.mixed_game.clone());
        if !self.edge_game.gather(u, v, 4) {
            self.edge_game = saved.0;
            return Ok(Err(Blocked::EdgeCount));
        }
        if !self.mixed_game.gather(u, v, 1) {
            (self.edge_game, self.mixed_game) = saved;
            return Ok(Err(Blocked::ElementCount));
        }
        self.edge_game.commit(u, v);
        self.mixed_game.commit(u, v);
        Ok(Ok(()))
    }

    /// Offers a loop at `v`; on rejection the state is left as it was.
    pub fn try_insert_loop(&mut self, v: Vertex) -> Result<std::result::Result<(), Blocked>> {
        self.check(v)?;
        let saved = self.mixed_game.clone();
        if !self.mixed_game.gather(v, v, 1) {
            self.mixed_game = saved;
            return Ok(Err(Blocked::ElementCount));
        }
        self.mixed_game.commit(v, v);
        Ok(Ok(()))
    }

    /// Offers an element of `g`, recording it when accepted.
    pub fn offer(&mut self, g: &LoopedGraph, e: Element) -> Result<std::result::Result<(), Blocked>> {
        g.check_element(e)?;
        let res = match e {
            Element::Edge(i) => {
                let (u, v) = g.edge(i);
                self.try_insert_edge(u, v)?
            }
            Element::Loop(i) => self.try_insert_loop(g.loop_vertex(i))?,
        };
        if res.is_ok() {
            self.accepted.push(e);
        }
        Ok(res)
    }
}

/// A maximal independent set, with the rejected elements and what blocked them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Basis {
    pub elements: ElementSet,
    pub rejected: Vec<(Element, Blocked)>,
}

impl Basis {
    pub fn rank(&self) -> usize {
        self.elements.len()
    }
}

/// Runs the game over `order` (which must list elements of `g`).
pub fn basis_in_order(g: &LoopedGraph, order: &[Element]) -> Result<Basis> {
    let mut state = PebbleState::new(g.num_vertices());
    let mut rejected = Vec::new();
    for &e in order {
        if let Err(why) = state.offer(g, e)? {
            rejected.push((e, why));
        }
    }
    Ok(Basis { elements: state.accepted.iter().copied().collect(), rejected })
}

/// Basis of `E ∪ L` in file order (edges, then loops).
pub fn basis(g: &LoopedGraph) -> Basis {
    basis_in_order(g, &g.elements()).expect("elements of g are valid")
}

pub fn rank(g: &LoopedGraph) -> usize {
    basis(g).rank()
}

/// Rank of `T`, i.e. of the graph spanned by `T`.
pub fn rank_of_subset(g: &LoopedGraph, t: &ElementSet) -> Result<usize> {
    let order: Vec<Element> = t.iter().collect();
    Ok(basis_in_order(g, &order)?.rank())
}

/// Independent in the graded count matroid.
pub fn is_independent(g: &LoopedGraph, t: &ElementSet) -> Result<bool> {
    Ok(rank_of_subset(g, t)? == t.len())
}

/// Rigid iff the rank reaches `2|V|`.
pub fn is_rigid(g: &LoopedGraph) -> bool {
    rank(g) == 2 * g.num_vertices()
}

/// A spanning `(2,0,3)`-tight subgraph when `g` is rigid: the basis itself.
pub fn tight_spanning_subgraph(g: &LoopedGraph) -> Option<ElementSet> {
    let b = basis(g);
    (b.rank() == 2 * g.num_vertices()).then_some(b.elements)
}
