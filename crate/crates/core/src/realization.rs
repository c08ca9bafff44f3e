//! Rigidity matrices `R(G, p, q)` over `GF(2^61 − 1)`.
//!
//! Rows: edges in file order, then loops by id. Columns: `(x_v, y_v)` per
//! vertex in file order. An edge row `uv` holds `p(u) − p(v)` under `u` and
//! `p(v) − p(u)` under `v`; a loop row at `v` holds the normal `q(l)` under `v`.
//! Random points in a large prime field stand in for generic coordinates.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Fp, Matrix};
use crate::graph::LoopedGraph;

pub const DEFAULT_TRIALS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    /// Vertex -> position.
    pub p: Vec<(Fp, Fp)>,
    /// Loop id -> normal of the constraining line.
    pub q: Vec<(Fp, Fp)>,
}

impl Realization {
    /// Uniform positions; loop normals uniform over nonzero vectors.
    pub fn random(g: &LoopedGraph, rng: &mut ChaCha8Rng) -> Self {
        let p = (0..g.num_vertices()).map(|_| (Fp::random(rng), Fp::random(rng))).collect();
        let q = (0..g.num_loops())
            .map(|_| loop {
                let n = (Fp::random(rng), Fp::random(rng));
                if n != (Fp::ZERO, Fp::ZERO) {
                    break n;
                }
            })
            .collect();
        Self { p, q }
    }
}

pub fn build_matrix(g: &LoopedGraph, r: &Realization) -> Result<Matrix> {
    if r.p.len() < g.num_vertices() {
        return Err(Error::MissingCoordinate(format!("vertex `{}`", g.name(r.p.len()))));
    }
    if r.q.len() < g.num_loops() {
        return Err(Error::MissingCoordinate(format!("loop {}", r.q.len())));
    }
    let mut m = Matrix::zeros(g.num_elements(), 2 * g.num_vertices());
    for (row, &(u, v)) in g.edges().iter().enumerate() {
        let (dx, dy) = (r.p[u].0 - r.p[v].0, r.p[u].1 - r.p[v].1);
        m.set(row, 2 * u, dx);
        m.set(row, 2 * u + 1, dy);
        m.set(row, 2 * v, -dx);
        m.set(row, 2 * v + 1, -dy);
    }
    for (id, &v) in g.loops().iter().enumerate() {
        let normal = r.q[id];
        if normal == (Fp::ZERO, Fp::ZERO) {
            return Err(Error::ZeroLoopNormal(id));
        }
        let row = g.num_edges() + id;
        m.set(row, 2 * v, normal.0);
        m.set(row, 2 * v + 1, normal.1);
    }
    Ok(m)
}

/// Realization used by trial 0 for `seed`; what `--dump-matrix` prints.
pub fn seeded_realization(g: &LoopedGraph, seed: u64) -> Realization {
    Realization::random(g, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Max over `trials` random realizations of the matrix rank.
pub fn numeric_rank(g: &LoopedGraph, seed: u64, trials: usize) -> Result<usize> {
    if trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..trials {
        let r = Realization::random(g, &mut rng);
        best = best.max(build_matrix(g, &r)?.rank());
    }
    Ok(best)
}

pub fn is_rigid_numeric(g: &LoopedGraph, seed: u64, trials: usize) -> Result<bool> {
    Ok(numeric_rank(g, seed, trials)? == 2 * g.num_vertices())
}

/// Residues as comma-separated rows.
pub fn matrix_csv(m: &Matrix) -> String {
    let (rows, _) = m.shape();
    let mut out = String::new();
    for r in 0..rows {
        let line: Vec<String> = m.row(r).iter().map(|x| x.value().to_string()).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}
