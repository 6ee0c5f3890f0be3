//! Randomly-leaf-adding algorithms.
//!
//! Single-round variants (A to D) take a set-ordered odd-edge W-magic
//! labeling, give the new leaf edges the low odd colors and shift the core
//! edges up by 2m. Continuous variants (E to H) accept any odd-edge W-magic
//! coloring and can be applied round after round. [`color_tree`] strips a
//! tree down to a star and rebuilds it with the continuous variants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use log::debug;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, MagicKind, TotalColoring};
use crate::error::{Error, Result};
use crate::graph::{add_leaves, strip_leaves, Graph, LeafEdge, LeafPlan, VertexId};
use crate::transforms::odd_equivalence_transform;
use crate::validators::{check_w_magic, MagicCertificate};

/// Order in which the continuous variants hand out leaf-edge colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LeafOrder {
    /// Parents by ascending color, leaves of one parent by ascending index.
    Ascending,
    /// Parents by descending color, leaves of one parent by ascending index.
    Descending,
    /// The ascending list shuffled by [`shuffle`] with this seed.
    Random(u64),
}

impl fmt::Display for LeafOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LeafOrder::Ascending => f.write_str("ascending"),
            LeafOrder::Descending => f.write_str("descending"),
            LeafOrder::Random(s) => write!(f, "random({s})"),
        }
    }
}

impl LeafOrder {
    /// Parses `ascending`, `descending` or `random`; `random` takes `seed`.
    pub fn parse(name: &str, seed: u64) -> Result<Self> {
        match name {
            "ascending" => Ok(LeafOrder::Ascending),
            "descending" => Ok(LeafOrder::Descending),
            "random" => Ok(LeafOrder::Random(seed)),
            other => Err(Error::Parse(format!("unknown leaf order {other:?}"))),
        }
    }
}

impl FromStr for LeafOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LeafOrder::parse(s, 0)
    }
}

/// 64-bit linear congruential generator used by [`shuffle`]:
/// `state = state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`,
/// output `state >> 33`.
#[derive(Clone, Debug)]
pub struct Lcg64(u64);

impl Lcg64 {
    pub fn new(seed: u64) -> Self {
        Lcg64(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        self.0 >> 33
    }
}

/// Fisher-Yates from the back: for i = n-1 down to 1 swap i with
/// `next_u64() % (i + 1)`.
pub fn shuffle<T>(items: &mut [T], seed: u64) {
    let mut rng = Lcg64::new(seed);
    for i in (1..items.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        items.swap(i, j);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RlaResult {
    pub graph: Graph,
    pub coloring: TotalColoring,
    pub constant_before: Color,
    pub constant_after: Color,
    /// New leaf edges in (parent id, leaf index) order.
    pub added_leaf_edges: Vec<LeafEdge>,
    pub notes: Vec<String>,
}

fn sorted_by_color(vs: &[VertexId], f: &TotalColoring) -> Vec<VertexId> {
    let mut out = vs.to_vec();
    out.sort_by_key(|v| (f.vertex_colors[v], *v));
    out
}

fn leaves_of(added: &[LeafEdge]) -> BTreeMap<VertexId, Vec<VertexId>> {
    let mut map: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for le in added {
        map.entry(le.parent).or_default().push(le.leaf);
    }
    for v in map.values_mut() {
        v.sort();
    }
    map
}

fn leaf_color(parent: VertexId, value: Color) -> Result<Color> {
    if value < 0 {
        Err(Error::NegativeLeafColor {
            parent,
            color: value,
        })
    } else {
        Ok(value)
    }
}

fn verify(
    g: &Graph,
    c: &TotalColoring,
    kind: MagicKind,
    expected: Color,
) -> Result<MagicCertificate> {
    let cert = check_w_magic(g, c, kind)?;
    if cert.constant != expected || !cert.is_odd_edge {
        return Err(Error::Validation(format!(
            "{kind}: constant {} (expected {expected}), odd-edge {}",
            cert.constant, cert.is_odd_edge
        )));
    }
    Ok(cert)
}

/// One round of RLA-A (graceful-difference), B (edge-difference),
/// C (edge-magic) or D (felicitous-difference).
///
/// D recolors every core vertex and edge by +2m before coloring the leaves,
/// so its core vertex colors shift; A, B and C keep core vertex colors.
pub fn rla_single(
    g: &Graph,
    f: &TotalColoring,
    plan: &LeafPlan,
    kind: MagicKind,
) -> Result<RlaResult> {
    plan.validate(g)?;
    let m = plan.total() as Color;
    if m == 0 {
        return Err(Error::EmptyPlan);
    }
    let cert = check_w_magic(g, f, kind)?;
    if !cert.is_set_ordered || !cert.is_odd_edge {
        return Err(Error::Precondition(format!(
            "input is not a set-ordered odd-edge {kind} labeling"
        )));
    }
    let n = cert.constant;
    let bip = cert
        .bipartition
        .expect("set-ordered certificate carries its bipartition");
    let xs = sorted_by_color(&bip.x_side, f);
    let ys = sorted_by_color(&bip.y_side, f);

    for (e, x, w, y) in f.triples(g)? {
        let sign_ok = match kind {
            MagicKind::GracefulDifference => (x - y).abs() >= w && w >= 1,
            MagicKind::FelicitousDifference => x + y - w >= 0,
            _ => true,
        };
        if !sign_ok {
            return Err(Error::Precondition(format!(
                "edge {e} has the wrong equation sign for {kind}"
            )));
        }
    }

    let (h, added) = add_leaves(g, plan)?;
    let by_parent = leaves_of(&added);
    let rev = |v: &[VertexId]| v.iter().rev().copied().collect::<Vec<_>>();
    let parent_order: Vec<VertexId> = match kind {
        MagicKind::GracefulDifference | MagicKind::EdgeMagic => [rev(&ys), rev(&xs)].concat(),
        MagicKind::EdgeDifference => [xs.clone(), ys.clone()].concat(),
        MagicKind::FelicitousDifference => [xs.clone(), rev(&ys)].concat(),
    };

    let after = match kind {
        MagicKind::GracefulDifference => (n - 2 * m).abs(),
        _ => n + 2 * m,
    };
    let shift_vertices = kind == MagicKind::FelicitousDifference;
    let mut out = TotalColoring::new();
    for v in g.vertices() {
        let c = f.vertex_colors[&v];
        out.vertex_colors
            .insert(v, if shift_vertices { c + 2 * m } else { c });
    }
    for e in g.edges() {
        out.edge_colors.insert(e, f.edge_colors[&e] + 2 * m);
    }
    let mut next: Color = 1;
    for u in parent_order {
        let fu = f.vertex_colors[&u];
        for &leaf in by_parent.get(&u).into_iter().flatten() {
            let e = next;
            next += 2;
            let w = match kind {
                MagicKind::GracefulDifference => after + fu + e,
                MagicKind::EdgeDifference => after + fu - e,
                MagicKind::EdgeMagic => after - fu - e,
                MagicKind::FelicitousDifference => n + e - fu,
            };
            out.vertex_colors.insert(leaf, leaf_color(u, w)?);
            out.edge_colors.insert(crate::graph::Edge::new(u, leaf), e);
        }
    }
    verify(&h, &out, kind, after)?;
    let mut notes = Vec::new();
    if shift_vertices {
        notes.push("core vertices recolored by +2m".into());
    }
    debug!("rla_single {kind}: m={m}, constant {n} -> {after}");
    Ok(RlaResult {
        graph: h,
        coloring: out,
        constant_before: n,
        constant_after: after,
        added_leaf_edges: added,
        notes,
    })
}

/// One round of RLA-E (graceful-difference), F (edge-magic),
/// G (edge-difference) or H (felicitous-difference).
pub fn rla_continuous(
    g: &Graph,
    f: &TotalColoring,
    plan: &LeafPlan,
    kind: MagicKind,
    order: LeafOrder,
) -> Result<RlaResult> {
    plan.validate(g)?;
    if plan.total() == 0 {
        return Err(Error::EmptyPlan);
    }
    let (h, added) = add_leaves(g, plan)?;
    continuous_on(g, f, h, added, kind, order)
}

/// Continuous round where the leaves are already present in `h`.
fn continuous_on(
    g: &Graph,
    f: &TotalColoring,
    h: Graph,
    added: Vec<LeafEdge>,
    kind: MagicKind,
    order: LeafOrder,
) -> Result<RlaResult> {
    let cert = check_w_magic(g, f, kind)?;
    if !cert.is_odd_edge {
        return Err(Error::Precondition(format!(
            "input is not an odd-edge {kind} coloring"
        )));
    }
    if g.bipartition().is_none() {
        return Err(Error::NotBipartite);
    }
    let q = g.edge_count() as Color;
    let m = added.len() as Color;
    let k0 = cert.constant;

    let by_parent = leaves_of(&added);
    let mut parents: Vec<VertexId> = by_parent.keys().copied().collect();
    parents.sort_by_key(|v| (f.vertex_colors[v], *v));
    if order == LeafOrder::Descending {
        parents.reverse();
    }
    let mut sequence: Vec<(VertexId, VertexId)> = parents
        .iter()
        .flat_map(|p| by_parent[p].iter().map(move |&l| (*p, l)))
        .collect();
    if let LeafOrder::Random(seed) = order {
        shuffle(&mut sequence, seed);
    }

    let high_range = matches!(
        kind,
        MagicKind::GracefulDifference | MagicKind::FelicitousDifference
    );
    let after = if high_range { k0 } else { k0 + 2 * m };
    let mut out = f.clone();
    if !high_range {
        for e in g.edges() {
            *out.edge_colors.get_mut(&e).expect("colored") += 2 * m;
        }
    }
    for (j, (u, leaf)) in sequence.into_iter().enumerate() {
        let j = j as Color + 1;
        let e = if high_range {
            2 * q - 1 + 2 * j
        } else {
            2 * j - 1
        };
        let fu = f.vertex_colors[&u];
        let w = match kind {
            MagicKind::GracefulDifference => k0 + fu + e,
            MagicKind::EdgeMagic => after - fu - e,
            MagicKind::EdgeDifference => after + fu - e,
            MagicKind::FelicitousDifference => k0 + e - fu,
        };
        out.vertex_colors.insert(leaf, leaf_color(u, w)?);
        out.edge_colors.insert(crate::graph::Edge::new(u, leaf), e);
    }
    verify(&h, &out, kind, after)?;
    let notes = if kind == MagicKind::GracefulDifference {
        vec!["leaf edges take the high odd range (2q-1)+2j; core colors kept".into()]
    } else {
        Vec::new()
    };
    debug!("rla_continuous {kind} {order}: m={m}, constant {k0} -> {after}");
    Ok(RlaResult {
        graph: h,
        coloring: out,
        constant_before: k0,
        constant_after: after,
        added_leaf_edges: added,
        notes,
    })
}

/// Odd-edge coloring of a star for the given kind. The graceful-difference
/// base is the odd-graceful labeling itself (center 0, leaf j gets 2j-1);
/// the other kinds apply the matching odd-graceful equivalence.
pub fn star_coloring(g: &Graph, center: VertexId, kind: MagicKind) -> Result<TotalColoring> {
    let mut leaves: Vec<VertexId> = g.neighbors(center).collect();
    leaves.sort();
    if leaves.is_empty() || leaves.len() + 1 != g.vertex_count() || leaves.len() != g.edge_count() {
        return Err(Error::Precondition(
            "not a star around the given center".into(),
        ));
    }
    let mut vc = BTreeMap::from([(center, 0)]);
    for (j, &l) in leaves.iter().enumerate() {
        vc.insert(l, 2 * j as Color + 1);
    }
    let base = TotalColoring::from_vertex_colors(g, vc)?;
    match kind {
        MagicKind::GracefulDifference => Ok(base),
        other => Ok(odd_equivalence_transform(g, &base, other)?.coloring),
    }
}

fn is_star(g: &Graph) -> Option<VertexId> {
    if !g.is_tree() || g.edge_count() == 0 {
        return None;
    }
    g.vertices().find(|&v| g.degree(v) == g.edge_count())
}

/// Odd-edge W-magic coloring of any tree with at least one edge.
///
/// Leaves are stripped layer by layer until a star remains; the star gets
/// its base coloring and each layer is re-attached with one continuous
/// round in ascending order.
pub fn color_tree(t: &Graph, kind: MagicKind) -> Result<TotalColoring> {
    if t.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    if !t.is_tree() {
        return Err(Error::NotTree);
    }
    let mut layers: Vec<BTreeMap<VertexId, VertexId>> = Vec::new();
    let mut core = t.clone();
    let center = loop {
        if let Some(c) = is_star(&core) {
            break c;
        }
        let (next, removed) = strip_leaves(&core);
        layers.push(removed);
        core = next;
    };
    let mut coloring = star_coloring(&core, center, kind)?;
    for removed in layers.into_iter().rev() {
        let keep: BTreeSet<VertexId> = core.vertices().chain(removed.keys().copied()).collect();
        let grown = t.induced(&keep);
        let added: Vec<LeafEdge> = removed
            .iter()
            .map(|(&leaf, &parent)| LeafEdge { parent, leaf })
            .collect();
        let r = continuous_on(&core, &coloring, grown, added, kind, LeafOrder::Ascending)?;
        core = r.graph;
        coloring = r.coloring;
    }
    Ok(coloring)
}
