//! Simple undirected graphs and the structural operations used by the
//! constructions: leaf adding and stripping, vertex coinciding, caterpillar
//! and lobster recognition, leaf-degree bookkeeping.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// Unordered vertex pair stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn lo(&self) -> VertexId {
        self.0
    }

    pub fn hi(&self) -> VertexId {
        self.1
    }

    pub fn other(&self, v: VertexId) -> VertexId {
        if v == self.0 {
            self.1
        } else {
            self.0
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0 .0, self.1 .0].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[u32; 2]>::deserialize(d)?;
        Ok(Edge::new(VertexId(a), VertexId(b)))
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<u32>,
    edges: Vec<[u32; 2]>,
}

/// Simple undirected graph over opaque integer ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        Graph::from_parts(
            j.vertices.into_iter().map(VertexId),
            j.edges.into_iter().map(|[a, b]| (VertexId(a), VertexId(b))),
        )
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            vertices: g.vertices().map(|v| v.0).collect(),
            edges: g.edges().map(|e| [e.lo().0, e.hi().0]).collect(),
        }
    }
}

/// Two sides of a bipartite graph, each listed in ascending id order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitionView {
    pub x_side: Vec<VertexId>,
    pub y_side: Vec<VertexId>,
}

impl BipartitionView {
    pub fn swapped(self) -> Self {
        BipartitionView {
            x_side: self.y_side,
            y_side: self.x_side,
        }
    }

    pub fn side_of(&self, v: VertexId) -> Option<Side> {
        if self.x_side.binary_search(&v).is_ok() {
            Some(Side::X)
        } else if self.y_side.binary_search(&v).is_ok() {
            Some(Side::Y)
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph, rejecting loops, duplicate edges and unknown endpoints.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v);
        }
        for (a, b) in edges {
            if !g.contains(a) {
                return Err(Error::UnknownVertex(a));
            }
            if !g.contains(b) {
                return Err(Error::UnknownVertex(b));
            }
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Builds a graph whose vertex set is exactly the edge endpoints.
    pub fn from_edges(edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Graph::new();
        for &(a, b) in edges {
            g.add_vertex(VertexId(a));
            g.add_vertex(VertexId(b));
            g.add_edge(VertexId(a), VertexId(b))?;
        }
        Ok(g)
    }

    pub fn path(n: u32) -> Self {
        let mut g = Graph::new();
        for i in 0..n {
            g.add_vertex(VertexId(i));
            if i > 0 {
                g.add_edge(VertexId(i - 1), VertexId(i))
                    .expect("fresh path edge");
            }
        }
        g
    }

    pub fn cycle(n: u32) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(VertexId(n - 1), VertexId(0))
                .expect("fresh cycle edge");
        }
        g
    }

    pub fn star(leaves: u32) -> Self {
        let mut g = Graph::new();
        g.add_vertex(VertexId(0));
        for i in 1..=leaves {
            g.add_vertex(VertexId(i));
            g.add_edge(VertexId(0), VertexId(i))
                .expect("fresh star edge");
        }
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<Edge> {
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        if !self.contains(a) {
            return Err(Error::UnknownVertex(a));
        }
        if !self.contains(b) {
            return Err(Error::UnknownVertex(b));
        }
        let e = Edge::new(a, b);
        if !self.adj.get_mut(&a).expect("checked").insert(b) {
            return Err(Error::DuplicateEdge(e));
        }
        self.adj.get_mut(&b).expect("checked").insert(a);
        Ok(e)
    }

    pub fn remove_vertex(&mut self, v: VertexId) -> bool {
        let Some(nbrs) = self.adj.remove(&v) else {
            return false;
        };
        for u in nbrs {
            if let Some(s) = self.adj.get_mut(&u) {
                s.remove(&v);
            }
        }
        true
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adj.get(&a).is_some_and(|s| s.contains(&b))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&a, s)| s.range(a..).map(move |&b| Edge::new(a, b)))
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// Smallest id strictly greater than every id in use.
    pub fn next_id(&self) -> u32 {
        self.adj.keys().next_back().map_or(0, |v| v.0 + 1)
    }

    pub fn leaves(&self) -> Vec<VertexId> {
        self.adj
            .iter()
            .filter(|(_, s)| s.len() == 1)
            .map(|(&v, _)| v)
            .collect()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if !seen.insert(v) {
                continue;
            }
            let mut comp = vec![v];
            let mut queue = VecDeque::from([v]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if seen.insert(w) {
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count() + 1 == self.vertex_count()
    }

    pub fn is_path(&self) -> bool {
        self.is_tree() && self.adj.values().all(|s| s.len() <= 2)
    }

    pub fn has_cycle(&self) -> bool {
        self.edge_count() + self.components().len() > self.vertex_count()
    }

    /// Proper 2-coloring; in each component the smallest id lands in X.
    pub fn bipartition(&self) -> Option<BipartitionView> {
        let mut side: BTreeMap<VertexId, Side> = BTreeMap::new();
        for comp in self.components() {
            side.insert(comp[0], Side::X);
            let mut queue = VecDeque::from([comp[0]]);
            while let Some(u) = queue.pop_front() {
                let su = side[&u];
                let flip = if su == Side::X { Side::Y } else { Side::X };
                for w in self.neighbors(u) {
                    match side.get(&w) {
                        Some(&sw) if sw == su => return None,
                        Some(_) => {}
                        None => {
                            side.insert(w, flip);
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        let (x, y): (Vec<_>, Vec<_>) = side.into_iter().partition(|(_, s)| *s == Side::X);
        Some(BipartitionView {
            x_side: x.into_iter().map(|(v, _)| v).collect(),
            y_side: y.into_iter().map(|(v, _)| v).collect(),
        })
    }

    /// Relabels vertices through `map`; ids missing from the map are kept.
    pub fn relabeled(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<Graph> {
        let f = |v: VertexId| map.get(&v).copied().unwrap_or(v);
        Graph::from_parts(
            self.vertices().map(f),
            self.edges().map(|e| (f(e.lo()), f(e.hi()))),
        )
    }

    /// Subgraph induced by the given vertices.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let mut g = Graph::new();
        for &v in keep {
            if self.contains(v) {
                g.add_vertex(v);
            }
        }
        for e in self.edges() {
            if keep.contains(&e.lo()) && keep.contains(&e.hi()) {
                g.add_edge(e.lo(), e.hi()).expect("edge of a simple graph");
            }
        }
        g
    }
}

/// Per-vertex leaf counts for one leaf-adding step.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafPlan {
    pub counts: BTreeMap<VertexId, usize>,
}

impl LeafPlan {
    pub fn new(counts: impl IntoIterator<Item = (VertexId, usize)>) -> Self {
        LeafPlan {
            counts: counts.into_iter().collect(),
        }
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        match self.counts.keys().find(|v| !g.contains(**v)) {
            Some(&v) => Err(Error::UnknownVertex(v)),
            None => Ok(()),
        }
    }
}

/// A new leaf edge: the vertex it hangs on and the fresh leaf vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafEdge {
    pub parent: VertexId,
    pub leaf: VertexId,
}

impl LeafEdge {
    pub fn edge(&self) -> Edge {
        Edge::new(self.parent, self.leaf)
    }
}

/// Adds the planned leaves with fresh ids, in (vertex id, leaf index) order.
pub fn add_leaves(g: &Graph, plan: &LeafPlan) -> Result<(Graph, Vec<LeafEdge>)> {
    plan.validate(g)?;
    let mut out = g.clone();
    let mut next = g.next_id();
    let mut added = Vec::with_capacity(plan.total());
    for (&parent, &count) in &plan.counts {
        for _ in 0..count {
            let leaf = VertexId(next);
            next += 1;
            out.add_vertex(leaf);
            out.add_edge(parent, leaf)?;
            added.push(LeafEdge { parent, leaf });
        }
    }
    Ok((out, added))
}

/// Removes every degree-1 vertex, recording the vertex each leaf hung on.
pub fn strip_leaves(g: &Graph) -> (Graph, BTreeMap<VertexId, VertexId>) {
    let mut removed = BTreeMap::new();
    for leaf in g.leaves() {
        let parent = g.neighbors(leaf).next().expect("leaf has one neighbor");
        removed.insert(leaf, parent);
    }
    let mut out = g.clone();
    for leaf in removed.keys() {
        out.remove_vertex(*leaf);
    }
    (out, removed)
}

/// Disjoint union of `g1` and `g2` with `v2` merged into `v1`.
///
/// Vertices of `g2` other than `v2` receive fresh ids above those of `g1`;
/// the returned map sends each `g2` id to its id in the result.
pub fn vertex_coincide(
    g1: &Graph,
    v1: VertexId,
    g2: &Graph,
    v2: VertexId,
) -> Result<(Graph, BTreeMap<VertexId, VertexId>)> {
    if !g1.contains(v1) {
        return Err(Error::UnknownVertex(v1));
    }
    if !g2.contains(v2) {
        return Err(Error::UnknownVertex(v2));
    }
    let mut map = BTreeMap::new();
    let mut next = g1.next_id();
    for v in g2.vertices() {
        if v == v2 {
            map.insert(v, v1);
        } else {
            map.insert(v, VertexId(next));
            next += 1;
        }
    }
    let mut out = g1.clone();
    for v in g2.vertices() {
        out.add_vertex(map[&v]);
    }
    for e in g2.edges() {
        out.add_edge(map[&e.lo()], map[&e.hi()])?;
    }
    Ok((out, map))
}

/// Merges `v` into `u` inside one graph. The merged vertex keeps the
/// smaller of the two ids. Fails if the merge would create a loop or a
/// multi-edge.
pub fn coincide_within(g: &Graph, u: VertexId, v: VertexId) -> Result<(Graph, VertexId)> {
    if !g.contains(u) {
        return Err(Error::UnknownVertex(u));
    }
    if !g.contains(v) {
        return Err(Error::UnknownVertex(v));
    }
    if u == v {
        return Ok((g.clone(), u));
    }
    if g.has_edge(u, v) {
        return Err(Error::MultiEdge(Edge::new(u, v)));
    }
    if let Some(w) = g.neighbors(u).find(|w| g.has_edge(v, *w)) {
        return Err(Error::MultiEdge(Edge::new(u.min(v), w)));
    }
    let (keep, gone) = (u.min(v), u.max(v));
    let mut out = g.clone();
    let nbrs: Vec<_> = g.neighbors(gone).collect();
    out.remove_vertex(gone);
    for w in nbrs {
        out.add_edge(keep, w)?;
    }
    Ok((out, keep))
}

fn order_path(g: &Graph) -> Vec<VertexId> {
    let ends: Vec<_> = g.vertices().filter(|&v| g.degree(v) <= 1).collect();
    let Some(&start) = ends.first() else {
        return Vec::new();
    };
    let mut order = vec![start];
    let mut prev = None;
    let mut cur = start;
    while let Some(next) = g.neighbors(cur).find(|&w| Some(w) != prev) {
        order.push(next);
        prev = Some(cur);
        cur = next;
    }
    order
}

/// Spine of a caterpillar. A bare path is its own spine; otherwise the
/// spine is the leaf-stripped path. Oriented with the smaller endpoint first.
pub fn spine(g: &Graph) -> Result<Vec<VertexId>> {
    if !g.is_tree() {
        return Err(Error::NotCaterpillar);
    }
    if g.is_path() {
        return Ok(order_path(g));
    }
    let (stripped, _) = strip_leaves(g);
    if !stripped.is_path() {
        return Err(Error::NotCaterpillar);
    }
    Ok(order_path(&stripped))
}

pub fn is_caterpillar(g: &Graph) -> bool {
    spine(g).is_ok()
}

pub fn is_lobster(g: &Graph) -> bool {
    g.is_tree() && (is_caterpillar(g) || is_caterpillar(&strip_leaves(g).0))
}

/// Signed per-spine leaf counts; a negative entry marks a leaf-image-degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LeafDegreeSequence {
    pub values: Vec<i64>,
}

impl LeafDegreeSequence {
    pub fn new(values: Vec<i64>) -> Self {
        LeafDegreeSequence { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn magnitudes(&self) -> Vec<u64> {
        self.values.iter().map(|v| v.unsigned_abs()).collect()
    }
}

/// A caterpillar together with the spine it was built or recognized with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caterpillar {
    pub graph: Graph,
    pub spine: Vec<VertexId>,
}

impl Caterpillar {
    /// Spine ids are `0..n`, leaves follow in spine order.
    pub fn from_leaf_counts(counts: &[usize]) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::Precondition(
                "caterpillar needs at least one spine vertex".into(),
            ));
        }
        let n = counts.len() as u32;
        let mut g = Graph::path(n);
        let mut next = n;
        for (i, &c) in counts.iter().enumerate() {
            for _ in 0..c {
                g.add_vertex(VertexId(next));
                g.add_edge(VertexId(i as u32), VertexId(next))?;
                next += 1;
            }
        }
        Ok(Caterpillar {
            graph: g,
            spine: (0..n).map(VertexId).collect(),
        })
    }

    pub fn from_graph(g: &Graph) -> Result<Self> {
        Ok(Caterpillar {
            spine: spine(g)?,
            graph: g.clone(),
        })
    }

    pub fn leaf_counts(&self) -> Vec<usize> {
        let on_spine: BTreeSet<_> = self.spine.iter().copied().collect();
        self.spine
            .iter()
            .map(|&s| {
                self.graph
                    .neighbors(s)
                    .filter(|w| !on_spine.contains(w))
                    .count()
            })
            .collect()
    }

    pub fn leaf_degree_sequence(&self, negative: Option<&[bool]>) -> Result<LeafDegreeSequence> {
        signed(self.leaf_counts(), negative)
    }
}

fn signed(counts: Vec<usize>, negative: Option<&[bool]>) -> Result<LeafDegreeSequence> {
    if let Some(neg) = negative {
        if neg.len() != counts.len() {
            return Err(Error::LengthMismatch(neg.len(), counts.len()));
        }
    }
    let values = counts
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let c = c as i64;
            if negative.is_some_and(|n| n[i]) {
                -c
            } else {
                c
            }
        })
        .collect();
    Ok(LeafDegreeSequence { values })
}

/// Leaf counts along the recognized spine, with an optional sign overlay.
pub fn leaf_degree_sequence(g: &Graph, negative: Option<&[bool]>) -> Result<LeafDegreeSequence> {
    Caterpillar::from_graph(g)?.leaf_degree_sequence(negative)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplementMode {
    Uniform,
    Permuted,
}

/// Checks |a_i| + |b_w(i)| = M for all i. Uniform mode uses w = identity;
/// permuted mode searches for w. Returns the witness when the check holds.
pub fn check_m_leaf_complement(
    a: &LeafDegreeSequence,
    b: &LeafDegreeSequence,
    m: u64,
    mode: ComplementMode,
) -> Result<Option<Vec<usize>>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let (am, bm) = (a.magnitudes(), b.magnitudes());
    match mode {
        ComplementMode::Uniform => {
            let ok = am.iter().zip(&bm).all(|(x, y)| x + y == m);
            Ok(ok.then(|| (0..a.len()).collect()))
        }
        ComplementMode::Permuted => {
            let mut used = vec![false; bm.len()];
            let mut witness = Vec::with_capacity(am.len());
            for &x in &am {
                let Some(need) = m.checked_sub(x) else {
                    return Ok(None);
                };
                match (0..bm.len()).find(|&j| !used[j] && bm[j] == need) {
                    Some(j) => {
                        used[j] = true;
                        witness.push(j);
                    }
                    None => return Ok(None),
                }
            }
            Ok(Some(witness))
        }
    }
}

/// Caterpillar whose spine carries the positional sum of both leaf counts.
pub fn universal_graph(h: &Caterpillar, t: &Caterpillar) -> Result<Caterpillar> {
    let (a, b) = (h.leaf_counts(), t.leaf_counts());
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let sum: Vec<usize> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    Caterpillar::from_leaf_counts(&sum)
}
