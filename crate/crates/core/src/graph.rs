//! Looped simple graphs `G = (V, E, L)`.
//!
//! `E` is a simple edge set, `L` a multiset of loops. Every loop carries a
//! stable id (its position in `L`), so that subsets of loops and deletions are
//! unambiguous even when a vertex carries several loops.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a vertex in [`LoopedGraph::names`].
pub type Vertex = usize;

/// A member of `E ∪ L`, by edge index or loop id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Element {
    Edge(usize),
    Loop(usize),
}

impl Element {
    pub fn is_loop(self) -> bool {
        matches!(self, Element::Loop(_))
    }
}

/// A set of elements of one graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementSet(pub BTreeSet<Element>);

impl ElementSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.0.iter().copied()
    }

    pub fn insert(&mut self, e: Element) -> bool {
        self.0.insert(e)
    }

    pub fn contains(&self, e: Element) -> bool {
        self.0.contains(&e)
    }

    pub fn has_loop(&self) -> bool {
        self.0.iter().any(|e| e.is_loop())
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        ElementSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet(self.0.intersection(&other.0).copied().collect())
    }

    /// `V(T)`: the vertices incident with members of the set.
    pub fn support(&self, g: &LoopedGraph) -> BTreeSet<Vertex> {
        let mut out = BTreeSet::new();
        for e in self.iter() {
            match e {
                Element::Edge(i) => {
                    let (u, v) = g.edges[i];
                    out.insert(u);
                    out.insert(v);
                }
                Element::Loop(i) => {
                    out.insert(g.loops[i]);
                }
            }
        }
        out
    }
}

impl FromIterator<Element> for ElementSet {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        ElementSet(iter.into_iter().collect())
    }
}

/// The on-disk JSON form: `{"vertices": [..], "edges": [[u, v], ..], "loops": [v, ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<Vec<String>>,
    #[serde(default)]
    pub loops: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoopedGraph {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    /// Endpoints with `u < v`, in insertion order.
    edges: Vec<(Vertex, Vertex)>,
    edge_index: HashMap<(Vertex, Vertex), usize>,
    /// Loop id -> vertex.
    loops: Vec<Vertex>,
}

impl LoopedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut g = Self::new();
        for n in names {
            g.add_vertex(n.as_ref())?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<Vertex> {
        if name.is_empty() {
            return Err(Error::EmptyVertexName);
        }
        if self.index.contains_key(name) {
            return Err(Error::DuplicateVertex(name.to_string()));
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfEdge(self.names[u].clone()));
        }
        let key = (u.min(v), u.max(v));
        if self.edge_index.contains_key(&key) {
            return Err(Error::DuplicateEdge(self.names[key.0].clone(), self.names[key.1].clone()));
        }
        let id = self.edges.len();
        self.edges.push(key);
        self.edge_index.insert(key, id);
        Ok(id)
    }

    pub fn add_edge_by_name(&mut self, u: &str, v: &str) -> Result<usize> {
        let (u, v) = (self.vertex(u)?, self.vertex(v)?);
        self.add_edge(u, v)
    }

    /// Adds one loop at `v` and returns its loop id.
    pub fn add_loop(&mut self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        self.loops.push(v);
        Ok(self.loops.len() - 1)
    }

    pub fn add_loop_by_name(&mut self, v: &str) -> Result<usize> {
        let v = self.vertex(v)?;
        self.add_loop(v)
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.names.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{v}")))
        }
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<BTreeSet<Vertex>> {
        names.iter().map(|n| self.vertex(n.as_ref())).collect()
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_loops(&self) -> usize {
        self.loops.len()
    }

    pub fn num_elements(&self) -> usize {
        self.edges.len() + self.loops.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> (Vertex, Vertex) {
        self.edges[i]
    }

    pub fn find_edge(&self, u: Vertex, v: Vertex) -> Option<usize> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.find_edge(u, v).is_some()
    }

    /// Loop id -> vertex carrying it.
    pub fn loops(&self) -> &[Vertex] {
        &self.loops
    }

    pub fn loop_vertex(&self, id: usize) -> Vertex {
        self.loops[id]
    }

    /// `E ∪ L` with edges first (by index), then loops (by id).
    pub fn elements(&self) -> Vec<Element> {
        (0..self.edges.len()).map(Element::Edge).chain((0..self.loops.len()).map(Element::Loop)).collect()
    }

    pub fn all_elements(&self) -> ElementSet {
        self.elements().into_iter().collect()
    }

    pub fn contains_element(&self, e: Element) -> bool {
        match e {
            Element::Edge(i) => i < self.edges.len(),
            Element::Loop(i) => i < self.loops.len(),
        }
    }

    pub fn check_element(&self, e: Element) -> Result<()> {
        match e {
            Element::Edge(i) if i >= self.edges.len() => Err(Error::UnknownEdge(i)),
            Element::Loop(i) if i >= self.loops.len() => Err(Error::UnknownLoop(i)),
            _ => Ok(()),
        }
    }

    pub fn check_elements(&self, t: &ElementSet) -> Result<()> {
        t.iter().try_for_each(|e| self.check_element(e))
    }

    /// `l(v)`: number of loops at `v`.
    pub fn loops_at(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.loops.iter().filter(|&&w| w == v).count())
    }

    /// Vertices carrying at least one loop.
    pub fn looped_vertices(&self) -> BTreeSet<Vertex> {
        self.loops.iter().copied().collect()
    }

    /// `E_G(X)`: edges with both endpoints in `X`.
    pub fn induced_edges(&self, x: &BTreeSet<Vertex>) -> Result<ElementSet> {
        x.iter().try_for_each(|&v| self.check_vertex(v))?;
        Ok(self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, (u, v))| x.contains(u) && x.contains(v))
            .map(|(i, _)| Element::Edge(i))
            .collect())
    }

    /// `L_G(X)`: loops whose vertex is in `X`.
    pub fn induced_loops(&self, x: &BTreeSet<Vertex>) -> Result<ElementSet> {
        x.iter().try_for_each(|&v| self.check_vertex(v))?;
        Ok(self
            .loops
            .iter()
            .enumerate()
            .filter(|(_, v)| x.contains(v))
            .map(|(i, _)| Element::Loop(i))
            .collect())
    }

    /// The graph `(V(T), T ∩ E, T ∩ L)` spanned by `t`, vertices in original
    /// order. Loop ids are renumbered in increasing original order.
    pub fn spanned_subgraph(&self, t: &ElementSet) -> Result<LoopedGraph> {
        self.check_elements(t)?;
        let support = t.support(self);
        let mut g = LoopedGraph::new();
        let mut map = HashMap::new();
        for &v in &support {
            map.insert(v, g.add_vertex(&self.names[v])?);
        }
        for e in t.iter() {
            if let Element::Edge(i) = e {
                let (u, v) = self.edges[i];
                g.add_edge(map[&u], map[&v])?;
            }
        }
        for e in t.iter() {
            if let Element::Loop(i) = e {
                g.add_loop(map[&self.loops[i]])?;
            }
        }
        Ok(g)
    }

    /// `G − S`. Remaining edges keep their relative order; remaining loops are
    /// renumbered in increasing original id order.
    pub fn delete_elements(&self, s: &ElementSet) -> Result<LoopedGraph> {
        self.check_elements(s)?;
        let mut g = LoopedGraph::with_vertices(&self.names)?;
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if !s.contains(Element::Edge(i)) {
                g.add_edge(u, v)?;
            }
        }
        for (i, &v) in self.loops.iter().enumerate() {
            if !s.contains(Element::Loop(i)) {
                g.add_loop(v)?;
            }
        }
        Ok(g)
    }

    /// `G − T` for a vertex set `T`: drops the vertices and every incident edge and loop.
    pub fn delete_vertices(&self, t: &BTreeSet<Vertex>) -> Result<LoopedGraph> {
        t.iter().try_for_each(|&v| self.check_vertex(v))?;
        let mut g = LoopedGraph::new();
        let mut map = vec![usize::MAX; self.names.len()];
        for (v, name) in self.names.iter().enumerate() {
            if !t.contains(&v) {
                map[v] = g.add_vertex(name)?;
            }
        }
        for &(u, v) in &self.edges {
            if !t.contains(&u) && !t.contains(&v) {
                g.add_edge(map[u], map[v])?;
            }
        }
        for &v in &self.loops {
            if !t.contains(&v) {
                g.add_loop(map[v])?;
            }
        }
        Ok(g)
    }

    /// Adjacency lists of the underlying simple graph, sorted.
    pub fn neighbors(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.names.len()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Connected components of the underlying simple graph, each sorted,
    /// ordered by their smallest vertex. Loops play no role.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let adj = self.neighbors();
        let mut seen = vec![false; self.names.len()];
        let mut out = Vec::new();
        for s in 0..self.names.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Vertex connectivity of the underlying simple graph. `K_n` has
    /// connectivity `n − 1`; a disconnected graph has 0.
    pub fn vertex_connectivity(&self) -> usize {
        let n = self.names.len();
        if n <= 1 {
            return 0;
        }
        let adj = self.neighbors();
        let mut best = n - 1;
        for s in 0..n {
            for t in (s + 1)..n {
                if self.has_edge(s, t) {
                    continue;
                }
                best = best.min(local_vertex_connectivity(&adj, s, t, best));
                if best == 0 {
                    return 0;
                }
            }
        }
        best
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            vertices: self.names.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| vec![self.names[u].clone(), self.names[v].clone()])
                .collect(),
            loops: self.loops.iter().map(|&v| self.names[v].clone()).collect(),
        }
    }

    pub fn from_doc(doc: &GraphDoc) -> Result<Self> {
        let mut g = LoopedGraph::with_vertices(&doc.vertices)?;
        for pair in &doc.edges {
            let [u, v] = pair.as_slice() else {
                return Err(Error::Malformed(format!(
                    "edge must be a pair of vertex names, got {} entries",
                    pair.len()
                )));
            };
            g.add_edge_by_name(u, v)?;
        }
        for v in &doc.loops {
            g.add_loop_by_name(v)?;
        }
        Ok(g)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("graph document serializes")
    }

    /// Same graph with edges sorted by endpoint index and loops sorted by vertex.
    pub fn canonicalize(&self) -> LoopedGraph {
        let mut g = LoopedGraph::with_vertices(&self.names).expect("names are valid");
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        for (u, v) in edges {
            g.add_edge(u, v).expect("edges are valid");
        }
        let mut loops = self.loops.clone();
        loops.sort_unstable();
        for v in loops {
            g.add_loop(v).expect("loops are valid");
        }
        g
    }

    /// DOT rendering; loops become self-edges labelled `l<id>`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for name in &self.names {
            let _ = writeln!(s, "  {};", dot_id(name));
        }
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "  {} -- {};", dot_id(&self.names[u]), dot_id(&self.names[v]));
        }
        for (i, &v) in self.loops.iter().enumerate() {
            let n = dot_id(&self.names[v]);
            let _ = writeln!(s, "  {n} -- {n} [label=\"l{i}\"];");
        }
        s.push_str("}\n");
        s
    }
}

fn dot_id(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Maximum number of internally vertex-disjoint `s`-`t` paths between two
/// nonadjacent vertices, capped at `cap`. Unit-capacity augmenting paths on
/// the split digraph (`v_in -> v_out` with capacity 1).
fn local_vertex_connectivity(adj: &[Vec<Vertex>], s: Vertex, t: Vertex, cap: usize) -> usize {
    let n = adj.len();
    let v_in = |v: usize| 2 * v;
    let v_out = |v: usize| 2 * v + 1;
    // residual capacities on a sparse arc list
    let mut head: Vec<usize> = Vec::new();
    let mut cap_of: Vec<i32> = Vec::new();
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let mut add_arc = |a: usize, b: usize, c: i32, out_arcs: &mut Vec<Vec<usize>>| {
        out_arcs[a].push(head.len());
        head.push(b);
        cap_of.push(c);
        out_arcs[b].push(head.len());
        head.push(a);
        cap_of.push(0);
    };
    let big = n as i32 + 1;
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        add_arc(v_in(v), v_out(v), c, &mut out_arcs);
    }
    for (u, nbrs) in adj.iter().enumerate() {
        for &w in nbrs {
            add_arc(v_out(u), v_in(w), big, &mut out_arcs);
        }
    }
    let (src, sink) = (v_out(s), v_in(t));
    let mut flow = 0;
    while flow < cap {
        let mut pred = vec![usize::MAX; 2 * n];
        let mut queue = VecDeque::from([src]);
        let mut reached = false;
        'bfs: while let Some(a) = queue.pop_front() {
            for &arc in &out_arcs[a] {
                let b = head[arc];
                if cap_of[arc] > 0 && pred[b] == usize::MAX && b != src {
                    pred[b] = arc;
                    if b == sink {
                        reached = true;
                        break 'bfs;
                    }
                    queue.push_back(b);
                }
            }
        }
        if !reached {
            break;
        }
        let mut x = sink;
        while x != src {
            let arc = pred[x];
            cap_of[arc] -= 1;
            cap_of[arc ^ 1] += 1;
            x = head[arc ^ 1];
        }
        flow += 1;
    }
    flow
}
