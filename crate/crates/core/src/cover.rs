//! Admissible thin covers and their values.
//!
//! A cover of `G − L'` is a looped member `X_0` (possibly empty) plus members
//! `X_1..X_k` with `|X_i| ≥ 2`, such that every edge lies inside some member
//! and every loop outside `L'` lies inside `X_0`. Admissibility also puts
//! every discarded loop outside `X_0`. Its value is
//! `|L'| + 2|X_0| + Σ (2|X_i| − 3)`, and the minimum value over admissible
//! 1-thin covers is the rank of `G`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::count::{rank_brute_force_restricted, RankCertificate};
use crate::error::{Error, Result};
use crate::graph::{Element, LoopedGraph, Vertex};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cover {
    pub discarded_loops: BTreeSet<usize>,
    pub looped_member: BTreeSet<Vertex>,
    pub members: Vec<BTreeSet<Vertex>>,
}

/// JSON form with vertex names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDoc {
    pub discarded_loops: Vec<usize>,
    pub looped_member: Vec<String>,
    pub members: Vec<Vec<String>>,
}

impl Cover {
    /// Members sorted, so equal covers print identically.
    pub fn canonical(mut self) -> Self {
        self.members.sort();
        self
    }

    pub fn value(&self) -> i64 {
        let members: i64 = self.members.iter().map(|x| 2 * x.len() as i64 - 3).sum();
        self.discarded_loops.len() as i64 + 2 * self.looped_member.len() as i64 + members
    }

    pub fn to_doc(&self, g: &LoopedGraph) -> CoverDoc {
        let names = |x: &BTreeSet<Vertex>| x.iter().map(|&v| g.name(v).to_string()).collect();
        CoverDoc {
            discarded_loops: self.discarded_loops.iter().copied().collect(),
            looped_member: names(&self.looped_member),
            members: self.members.iter().map(names).collect(),
        }
    }

    pub fn from_doc(g: &LoopedGraph, doc: &CoverDoc) -> Result<Self> {
        for &l in &doc.discarded_loops {
            g.check_element(Element::Loop(l))?;
        }
        Ok(Cover {
            discarded_loops: doc.discarded_loops.iter().copied().collect(),
            looped_member: g.vertex_set(&doc.looped_member)?,
            members: doc.members.iter().map(|m| g.vertex_set(m)).collect::<Result<_>>()?,
        })
    }
}

/// `val(X)`.
pub fn cover_value(c: &Cover) -> i64 {
    c.value()
}

/// All cover conditions plus `|X_i ∩ X_j| ≤ t` for every pair, `X_0` included.
pub fn is_admissible_thin(g: &LoopedGraph, c: &Cover, t: usize) -> Result<bool> {
    let n = g.num_vertices();
    let check_set = |x: &BTreeSet<Vertex>| match x.iter().find(|&&v| v >= n) {
        Some(v) => Err(Error::UnknownVertex(format!("#{v}"))),
        None => Ok(()),
    };
    check_set(&c.looped_member)?;
    c.members.iter().try_for_each(check_set)?;
    for &l in &c.discarded_loops {
        g.check_element(Element::Loop(l))?;
    }

    if c.members.iter().any(|x| x.len() < 2) {
        return Ok(false);
    }
    let all: Vec<&BTreeSet<Vertex>> = std::iter::once(&c.looped_member).chain(c.members.iter()).collect();
    let covered = g.edges().iter().all(|(u, v)| all.iter().any(|x| x.contains(u) && x.contains(v)));
    if !covered {
        return Ok(false);
    }
    for (id, v) in g.loops().iter().enumerate() {
        let inside = c.looped_member.contains(v);
        if c.discarded_loops.contains(&id) == inside {
            return Ok(false);
        }
    }
    for i in 0..all.len() {
        for j in (i + 1)..all.len() {
            if all[i].intersection(all[j]).count() > t {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Turns a restricted minimizing partition into an admissible 1-thin cover of
/// the same value: `X_i = V(T_i)` when `T_0` holds loops, otherwise an empty
/// looped member with `V(T_0)` appended as an ordinary member.
pub fn cover_from_partition(g: &LoopedGraph, cert: &RankCertificate) -> Result<Cover> {
    cert.validate(g, &g.all_elements())?;
    if !cert.discard.iter().all(Element::is_loop) {
        return Err(Error::MalformedCertificate("discard set holds an edge".into()));
    }
    if cert.parts.iter().skip(1).any(|p| p.has_loop()) {
        return Err(Error::MalformedCertificate("loops outside the first part".into()));
    }
    let discarded_loops = cert
        .discard
        .iter()
        .map(|e| match e {
            Element::Loop(i) => i,
            Element::Edge(_) => unreachable!(),
        })
        .collect();
    let supports = cert.parts.iter().map(|p| p.support(g));
    let cover = match cert.parts.first() {
        Some(first) if first.has_loop() => {
            let mut it = supports;
            let looped_member = it.next().unwrap();
            Cover { discarded_loops, looped_member, members: it.collect() }
        }
        _ => Cover { discarded_loops, looped_member: BTreeSet::new(), members: supports.collect() },
    }
    .canonical();
    if !is_admissible_thin(g, &cover, 1)? {
        return Err(Error::MalformedCertificate("converted cover is not admissible and 1-thin".into()));
    }
    if cover.value() != cert.rank as i64 {
        return Err(Error::MalformedCertificate(format!(
            "cover value {} differs from certificate rank {}",
            cover.value(),
            cert.rank
        )));
    }
    Ok(cover)
}

/// Minimum value over all `L' ⊆ L` and admissible 1-thin covers of `G − L'`,
/// with a cover attaining it.
pub fn min_cover(g: &LoopedGraph, bound: usize) -> Result<(usize, Cover)> {
    let cert = rank_brute_force_restricted(g, &g.all_elements(), bound)?;
    let cover = cover_from_partition(g, &cert)?;
    Ok((cert.rank, cover))
}

/// Minimum over 1-thin covers of a loopless graph with the looped member empty.
pub fn ly_rank(g: &LoopedGraph, bound: usize) -> Result<(usize, Cover)> {
    if g.num_loops() > 0 {
        return Err(Error::HasLoops);
    }
    let (value, cover) = min_cover(g, bound)?;
    debug_assert!(cover.looped_member.is_empty() && cover.discarded_loops.is_empty());
    Ok((value, cover))
}
