//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topocode_core::caterpillar::{odd_graceful_subdivision, CaterpillarSpec};
use topocode_core::graph::Side;
use topocode_core::validators::set_ordered_bipartition;
use topocode_core::{Color, Graph, TotalColoring, VertexId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform labeled tree on `n >= 2` vertices from a random Pruefer code.
pub fn random_tree(rng: &mut impl Rng, n: u32) -> Graph {
    assert!(n >= 2);
    if n == 2 {
        return Graph::path(2);
    }
    let code: Vec<u32> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1u32; n as usize];
    for &c in &code {
        degree[c as usize] += 1;
    }
    let mut edges = Vec::with_capacity(n as usize - 1);
    for &c in &code {
        let leaf = (0..n)
            .find(|&v| degree[v as usize] == 1)
            .expect("a leaf remains");
        edges.push((leaf, c));
        degree[leaf as usize] -= 1;
        degree[c as usize] -= 1;
    }
    let rest: Vec<u32> = (0..n).filter(|&v| degree[v as usize] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(&edges).expect("tree edges are simple")
}

/// Connected graph: a random tree plus `extra` random non-edges.
pub fn random_connected(rng: &mut impl Rng, n: u32, extra: usize) -> Graph {
    let mut g = random_tree(rng, n);
    let mut tries = 0;
    let mut added = 0;
    while added < extra && tries < 200 {
        tries += 1;
        let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
        if a != b && !g.has_edge(VertexId(a), VertexId(b)) {
            g.add_edge(VertexId(a), VertexId(b)).unwrap();
            added += 1;
        }
    }
    g
}

pub fn random_spec(rng: &mut impl Rng, max_spine: usize, max_leaves: usize) -> CaterpillarSpec {
    loop {
        let n = rng.random_range(1..=max_spine);
        let total = rng.random_range(0..=max_leaves);
        let mut counts = vec![0usize; n];
        for _ in 0..total {
            counts[rng.random_range(0..n)] += 1;
        }
        let spec = CaterpillarSpec::new(counts);
        if spec.edge_count() >= 1 {
            return spec;
        }
    }
}

/// Set-ordered graceful labeling of a caterpillar: halve the set-ordered
/// odd-graceful subdivision labeling (X colors are even, Y colors odd).
pub fn graceful_caterpillar(spec: &CaterpillarSpec) -> (Graph, TotalColoring) {
    let (g, f) = odd_graceful_subdivision(spec).unwrap();
    let bip = set_ordered_bipartition(&g, &f).unwrap();
    let vc: BTreeMap<VertexId, Color> = g
        .vertices()
        .map(|v| {
            let c = f.vertex_colors[&v];
            let h = match bip.side_of(v).unwrap() {
                Side::X => c / 2,
                Side::Y => (c + 1) / 2,
            };
            (v, h)
        })
        .collect();
    let c = TotalColoring::from_vertex_colors(&g, vc).unwrap();
    (g, c)
}

/// All partitions of m into parts of size at most k, listed explicitly.
pub fn enumerate_partitions(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, k, &mut Vec::new(), &mut out);
    out
}

/// Isomorphism by trying every vertex bijection.
pub fn isomorphic_brute(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let av: Vec<VertexId> = a.vertices().collect();
    let bv: Vec<VertexId> = b.vertices().collect();
    let n = av.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let adj = |g: &Graph, x: VertexId, y: VertexId| g.has_edge(x, y);
    loop {
        let ok = (0..n)
            .all(|i| (i + 1..n).all(|j| adj(a, av[i], av[j]) == adj(b, bv[perm[i]], bv[perm[j]])));
        if ok {
            return true;
        }
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| perm[i] < perm[i + 1])
        else {
            return false;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

/// Depth-first search for a set-ordered odd-graceful labeling.
pub fn odd_graceful_exists(g: &Graph) -> bool {
    let q = g.edge_count() as Color;
    let order: Vec<VertexId> = {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let start = g.vertices().next().unwrap();
        let mut queue = std::collections::VecDeque::from([start]);
        seen.insert(start);
        while let Some(v) = queue.pop_front() {
            out.push(v);
            for w in g.neighbors(v) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        out
    };
    fn rec(
        g: &Graph,
        q: Color,
        order: &[VertexId],
        i: usize,
        colors: &mut BTreeMap<VertexId, Color>,
        used_e: &mut BTreeSet<Color>,
    ) -> bool {
        if i == order.len() {
            let c = TotalColoring::from_vertex_colors(g, colors.clone()).unwrap();
            return set_ordered_bipartition(g, &c).is_some() && colors.values().any(|&k| k == 0);
        }
        let v = order[i];
        for col in 0..2 * q {
            if colors.values().any(|&k| k == col) {
                continue;
            }
            let diffs: Vec<Color> = g
                .neighbors(v)
                .filter_map(|w| colors.get(&w).map(|&k| (k - col).abs()))
                .collect();
            let distinct: BTreeSet<Color> = diffs.iter().copied().collect();
            if distinct.len() != diffs.len()
                || diffs.iter().any(|d| d % 2 == 0 || used_e.contains(d))
            {
                continue;
            }
            colors.insert(v, col);
            used_e.extend(diffs.iter().copied());
            if rec(g, q, order, i + 1, colors, used_e) {
                return true;
            }
            for d in &diffs {
                used_e.remove(d);
            }
            colors.remove(&v);
        }
        false
    }
    rec(g, q, &order, 0, &mut BTreeMap::new(), &mut BTreeSet::new())
}
