//! Canonical forms for small graphs by individualization and refinement.
//!
//! The search explores every branch of the refinement tree (pruning only
//! exchangeable twin vertices) and keeps the lexicographically smallest
//! encoding, so equal encodings mean isomorphic graphs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

pub const DEFAULT_VERTEX_CAP: usize = 12;

const NO_EDGE: i64 = -1;

/// Vertex count, vertex labels in canonical order, then the upper triangle
/// of the labeled adjacency matrix (`-1` for a non-edge).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm(pub Vec<i64>);

pub fn canonical_form(g: &Graph, cap: usize) -> Result<CanonicalForm> {
    canonical_form_labeled(g, &BTreeMap::new(), &BTreeMap::new(), cap)
}

/// Canonical form respecting vertex and edge labels. Unlisted vertices get
/// label 0 and unlisted edges label 0.
pub fn canonical_form_labeled(
    g: &Graph,
    vertex_labels: &BTreeMap<VertexId, i64>,
    edge_labels: &BTreeMap<Edge, i64>,
    cap: usize,
) -> Result<CanonicalForm> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::VertexCap { cap, count: n });
    }
    let ids: Vec<VertexId> = g.vertices().collect();
    let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut m = vec![vec![NO_EDGE; n]; n];
    let mut nbrs = vec![Vec::new(); n];
    for e in g.edges() {
        let (a, b) = (index[&e.lo()], index[&e.hi()]);
        let l = edge_labels.get(&e).copied().unwrap_or(0);
        m[a][b] = l;
        m[b][a] = l;
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    let labels: Vec<i64> = ids
        .iter()
        .map(|v| vertex_labels.get(v).copied().unwrap_or(0))
        .collect();

    let mut by_label: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        by_label.entry(l).or_default().push(i);
    }
    let cells: Vec<Vec<usize>> = by_label.into_values().collect();

    let ctx = Ctx { m, nbrs, labels };
    let mut best: Option<Vec<i64>> = None;
    ctx.search(cells, &mut best);
    Ok(CanonicalForm(best.unwrap_or_else(|| vec![0])))
}

struct Ctx {
    m: Vec<Vec<i64>>,
    nbrs: Vec<Vec<usize>>,
    labels: Vec<i64>,
}

impl Ctx {
    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        let n = self.m.len();
        loop {
            let mut cell_of = vec![0usize; n];
            for (ci, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = ci;
                }
            }
            let mut next = Vec::with_capacity(cells.len());
            for c in &cells {
                if c.len() == 1 {
                    next.push(c.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<(usize, i64)>, usize)> = c
                    .iter()
                    .map(|&v| {
                        let mut sig: Vec<(usize, i64)> = self.nbrs[v]
                            .iter()
                            .map(|&u| (cell_of[u], self.m[v][u]))
                            .collect();
                        sig.sort_unstable();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut group: Vec<usize> = Vec::new();
                let mut last: Option<&Vec<(usize, i64)>> = None;
                for (sig, v) in &keyed {
                    if last.is_some_and(|l| l != sig) {
                        next.push(std::mem::take(&mut group));
                    }
                    group.push(*v);
                    last = Some(sig);
                }
                next.push(group);
            }
            if next.len() == cells.len() {
                return next;
            }
            cells = next;
        }
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        (0..self.m.len()).all(|u| u == a || u == b || self.m[a][u] == self.m[b][u])
    }

    fn encode(&self, cells: &[Vec<usize>]) -> Vec<i64> {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let n = order.len();
        let mut out = Vec::with_capacity(1 + n + n * n / 2);
        out.push(n as i64);
        out.extend(order.iter().map(|&v| self.labels[v]));
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.m[order[i]][order[j]]);
            }
        }
        out
    }

    fn search(&self, cells: Vec<Vec<usize>>, best: &mut Option<Vec<i64>>) {
        let cells = self.refine(cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let enc = self.encode(&cells);
            if best.as_ref().is_none_or(|b| enc < *b) {
                *best = Some(enc);
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if tried.iter().any(|&t| self.twins(t, v)) {
                continue;
            }
            tried.push(v);
            let mut next = cells.clone();
            let rest: Vec<usize> = cells[target].iter().copied().filter(|&w| w != v).collect();
            next[target] = vec![v];
            next.insert(target + 1, rest);
            self.search(next, best);
        }
    }
}
