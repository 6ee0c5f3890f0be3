//! Graphic-lattice composition: copies of colored base graphs receive
//! leaves, then chosen equal-colored vertices are coincided into one
//! composite. Also the same-color collapse (lattice homomorphism).

use std::collections::{BTreeMap, BTreeSet};

use log::debug;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, DEFAULT_VERTEX_CAP};
use crate::coloring::{Color, ColoredGraph, MagicKind, TotalColoring};
use crate::error::{Error, Result};
use crate::graph::{coincide_within, Edge, Graph, LeafPlan, VertexId};
use crate::rla::{rla_continuous, LeafOrder};
use crate::validators::{check_w_magic, MagicCertificate};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseMember {
    pub graph: Graph,
    pub coloring: TotalColoring,
    pub certificate: MagicCertificate,
}

/// Pairwise non-isomorphic colored graphs sharing one kind and constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredBase {
    pub kind: MagicKind,
    pub constant: Color,
    pub members: Vec<BaseMember>,
}

impl ColoredBase {
    pub fn new(members: Vec<ColoredGraph>, kind: MagicKind) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Precondition(
                "a base needs at least one member".into(),
            ));
        }
        let mut out = Vec::with_capacity(members.len());
        let mut forms = BTreeSet::new();
        for (i, m) in members.into_iter().enumerate() {
            let certificate = check_w_magic(&m.graph, &m.coloring, kind)?;
            if !m.coloring.vertex_colors.values().any(|&c| c == 0 || c == 1) {
                return Err(Error::Precondition(format!(
                    "member {i} has no vertex colored 0 or 1"
                )));
            }
            if !forms.insert(canonical_form(&m.graph, DEFAULT_VERTEX_CAP)?) {
                return Err(Error::Precondition(format!(
                    "member {i} is isomorphic to an earlier member"
                )));
            }
            out.push(BaseMember {
                graph: m.graph,
                coloring: m.coloring,
                certificate,
            });
        }
        let constant = out[0].certificate.constant;
        if let Some(bad) = out.iter().find(|m| m.certificate.constant != constant) {
            return Err(Error::Validation(format!(
                "members disagree on the constant: {constant} vs {}",
                bad.certificate.constant
            )));
        }
        Ok(ColoredBase {
            kind,
            constant,
            members: out,
        })
    }
}

/// A vertex of one copy: (copy index, vertex id inside that copy).
pub type CopyVertex = (usize, VertexId);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionRecipe {
    /// Copies per base member; copies are numbered member by member.
    pub coefficients: Vec<usize>,
    /// Leaves to add to a copy before coinciding, keyed by copy index.
    #[serde(default)]
    pub leaf_plans: BTreeMap<usize, LeafPlan>,
    #[serde(default = "default_order")]
    pub order: LeafOrder,
    pub coincide: Vec<(CopyVertex, CopyVertex)>,
}

fn default_order() -> LeafOrder {
    LeafOrder::Ascending
}

impl CompositionRecipe {
    /// Base member of every copy.
    pub fn copy_members(&self) -> Vec<usize> {
        self.coefficients
            .iter()
            .enumerate()
            .flat_map(|(k, &a)| std::iter::repeat_n(k, a))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceReport {
    pub copy: usize,
    pub member: usize,
    pub constant: Color,
    pub leaves_added: usize,
    /// Piece vertex id to composite vertex id.
    pub vertex_map: BTreeMap<VertexId, VertexId>,
    /// Composite edges that came from this piece.
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoincideEntry {
    pub a: CopyVertex,
    pub b: CopyVertex,
    pub color: Color,
    pub merged_into: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionReport {
    pub kind: MagicKind,
    pub pieces: Vec<PieceReport>,
    /// Sorted per-piece constants.
    pub constants: Vec<Color>,
    pub coincide_log: Vec<CoincideEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Composite {
    pub graph: Graph,
    pub coloring: TotalColoring,
    pub report: CompositionReport,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut i = i;
        while self.0[i] != r {
            let next = self.0[i];
            self.0[i] = r;
            i = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Leaf-adds each copy by its plan, then coincides the recipe's vertex
/// pairs. Every pair of pieces must share a vertex color.
pub fn larvc_compose(base: &ColoredBase, recipe: &CompositionRecipe) -> Result<Composite> {
    if recipe.coefficients.len() != base.members.len() {
        return Err(Error::LengthMismatch(
            recipe.coefficients.len(),
            base.members.len(),
        ));
    }
    let members = recipe.copy_members();
    if members.is_empty() {
        return Err(Error::Precondition(
            "coefficients must sum to at least 1".into(),
        ));
    }
    if let Some(&c) = recipe.leaf_plans.keys().find(|&&c| c >= members.len()) {
        return Err(Error::Precondition(format!(
            "leaf plan for missing copy {c}"
        )));
    }

    // Leaf-adding step.
    let mut pieces: Vec<(Graph, TotalColoring, Color, usize)> = Vec::with_capacity(members.len());
    for (copy, &k) in members.iter().enumerate() {
        let m = &base.members[k];
        match recipe.leaf_plans.get(&copy).filter(|p| p.total() > 0) {
            Some(plan) => {
                let r = rla_continuous(&m.graph, &m.coloring, plan, base.kind, recipe.order)?;
                pieces.push((r.graph, r.coloring, r.constant_after, plan.total()));
            }
            None => pieces.push((
                m.graph.clone(),
                m.coloring.clone(),
                m.certificate.constant,
                0,
            )),
        }
    }

    // Every pair of pieces shares a vertex color.
    let color_sets: Vec<BTreeSet<Color>> = pieces
        .iter()
        .map(|(_, c, _, _)| c.vertex_colors.values().copied().collect())
        .collect();
    for i in 0..color_sets.len() {
        for j in i + 1..color_sets.len() {
            if color_sets[i].is_disjoint(&color_sets[j]) {
                return Err(Error::Precondition(format!(
                    "pieces {i} and {j} share no vertex color"
                )));
            }
        }
    }

    // Global slot per (copy, vertex).
    let mut slot: BTreeMap<CopyVertex, usize> = BTreeMap::new();
    let mut slot_color = Vec::new();
    for (copy, (g, c, _, _)) in pieces.iter().enumerate() {
        for v in g.vertices() {
            slot.insert((copy, v), slot_color.len());
            slot_color.push(c.vertex(v)?);
        }
    }
    let mut uf = UnionFind((0..slot_color.len()).collect());
    for &(a, b) in &recipe.coincide {
        let sa = *slot.get(&a).ok_or(Error::UnknownVertex(a.1))?;
        let sb = *slot.get(&b).ok_or(Error::UnknownVertex(b.1))?;
        if slot_color[sa] != slot_color[sb] {
            return Err(Error::ColorMismatch(slot_color[sa], slot_color[sb]));
        }
        uf.union(sa, sb);
    }

    // Compact ids in slot order.
    let mut root_id: BTreeMap<usize, VertexId> = BTreeMap::new();
    let mut graph = Graph::new();
    let mut coloring = TotalColoring::new();
    let mut id_of = vec![VertexId(0); slot_color.len()];
    for s in 0..slot_color.len() {
        let r = uf.find(s);
        let next = VertexId(root_id.len() as u32);
        let id = *root_id.entry(r).or_insert(next);
        id_of[s] = id;
        if graph.add_vertex(id) {
            coloring.vertex_colors.insert(id, slot_color[s]);
        }
    }

    let mut reports = Vec::with_capacity(pieces.len());
    for (copy, (g, c, constant, leaves)) in pieces.iter().enumerate() {
        let vertex_map: BTreeMap<VertexId, VertexId> =
            g.vertices().map(|v| (v, id_of[slot[&(copy, v)]])).collect();
        let mut edges = Vec::with_capacity(g.edge_count());
        for e in g.edges() {
            let (a, b) = (vertex_map[&e.lo()], vertex_map[&e.hi()]);
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            if graph.has_edge(a, b) {
                return Err(Error::MultiEdge(Edge::new(a, b)));
            }
            let ne = graph.add_edge(a, b)?;
            coloring.edge_colors.insert(ne, c.edge(e)?);
            edges.push(ne);
        }
        reports.push(PieceReport {
            copy,
            member: members[copy],
            constant: *constant,
            leaves_added: *leaves,
            vertex_map,
            edges,
        });
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let coincide_log = recipe
        .coincide
        .iter()
        .map(|&(a, b)| CoincideEntry {
            a,
            b,
            color: slot_color[slot[&a]],
            merged_into: id_of[slot[&a]],
        })
        .collect();
    let mut constants: Vec<Color> = reports.iter().map(|p| p.constant).collect();
    constants.sort_unstable();
    debug!(
        "larvc_compose: {} pieces, {} vertices, {} edges",
        reports.len(),
        graph.vertex_count(),
        graph.edge_count()
    );
    Ok(Composite {
        graph,
        coloring,
        report: CompositionReport {
            kind: base.kind,
            pieces: reports,
            constants,
            coincide_log,
        },
    })
}

/// Every edge of every piece satisfies the kind's equation with that
/// piece's constant.
pub fn check_piecewise(c: &Composite) -> Result<()> {
    let kind = c.report.kind;
    for p in &c.report.pieces {
        for &e in &p.edges {
            let value = kind.value(
                c.coloring.vertex(e.lo())?,
                c.coloring.edge(e)?,
                c.coloring.vertex(e.hi())?,
            );
            if value != p.constant {
                return Err(Error::ConstantMismatch {
                    edge: e,
                    values: vec![p.constant, value],
                });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionMode {
    Linear,
    Nonlinear,
}

/// Composition with a shape requirement. Linear: every used member is a
/// tree and the coincide pairs form a chain with exactly one pair between
/// copies i and i+1, so the composite is a tree. Nonlinear: some used
/// member is not a tree.
pub fn construction_compose(
    base: &ColoredBase,
    recipe: &CompositionRecipe,
    mode: ConstructionMode,
) -> Result<Composite> {
    let used: Vec<&BaseMember> = recipe
        .coefficients
        .iter()
        .zip(&base.members)
        .filter(|(&a, _)| a > 0)
        .map(|(_, m)| m)
        .collect();
    match mode {
        ConstructionMode::Linear => {
            if used.iter().any(|m| !m.graph.is_tree()) {
                return Err(Error::Precondition(
                    "linear construction needs tree members".into(),
                ));
            }
            let copies = recipe.copy_members().len();
            let mut links: Vec<(usize, usize)> = recipe
                .coincide
                .iter()
                .map(|&((a, _), (b, _))| (a.min(b), a.max(b)))
                .collect();
            links.sort_unstable();
            let chain: Vec<(usize, usize)> = (1..copies).map(|i| (i - 1, i)).collect();
            if links != chain {
                return Err(Error::Precondition(
                    "linear construction coincides copy i with copy i+1 exactly once".into(),
                ));
            }
        }
        ConstructionMode::Nonlinear => {
            if used.iter().all(|m| m.graph.is_tree()) {
                return Err(Error::Precondition(
                    "nonlinear construction needs a non-tree member".into(),
                ));
            }
        }
    }
    larvc_compose(base, recipe)
}

/// Same-color collapse result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collapse {
    pub graph: Graph,
    pub coloring: TotalColoring,
    /// Input vertex id to output vertex id.
    pub vertex_map: BTreeMap<VertexId, VertexId>,
}

/// Merges equal-colored vertices until no merge is possible without a loop
/// or a multi-edge. The smallest eligible (color, u, v) goes first. Edge
/// colors ride along with their edges.
pub fn collapse_same_colors(g: &Graph, c: &TotalColoring) -> Result<Collapse> {
    c.restrict(g)?;
    let mut graph = g.clone();
    let mut coloring = c.restrict(g)?;
    let mut vertex_map: BTreeMap<VertexId, VertexId> = g.vertices().map(|v| (v, v)).collect();
    loop {
        let mut by_color: BTreeMap<Color, Vec<VertexId>> = BTreeMap::new();
        for v in graph.vertices() {
            by_color.entry(coloring.vertex(v)?).or_default().push(v);
        }
        let eligible = |u: VertexId, v: VertexId| {
            !graph.has_edge(u, v) && !graph.neighbors(u).any(|w| graph.has_edge(v, w))
        };
        let pick = by_color.values().find_map(|vs| {
            vs.iter().enumerate().find_map(|(i, &u)| {
                vs[i + 1..]
                    .iter()
                    .find(|&&v| eligible(u, v))
                    .map(|&v| (u, v))
            })
        });
        let Some((u, v)) = pick else {
            break;
        };
        let (next, kept) = coincide_within(&graph, u, v)?;
        let gone = if kept == u { v } else { u };
        let remap = |x: VertexId| if x == gone { kept } else { x };
        coloring = TotalColoring {
            vertex_colors: coloring
                .vertex_colors
                .into_iter()
                .filter(|&(x, _)| x != gone)
                .collect(),
            edge_colors: coloring
                .edge_colors
                .into_iter()
                .map(|(e, col)| (Edge::new(remap(e.lo()), remap(e.hi())), col))
                .collect(),
        };
        for target in vertex_map.values_mut() {
            *target = remap(*target);
        }
        graph = next;
    }
    Ok(Collapse {
        graph,
        coloring,
        vertex_map,
    })
}
