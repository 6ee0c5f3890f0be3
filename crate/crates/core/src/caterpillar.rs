//! Set-ordered odd-graceful labelings of caterpillars by spine subdivision,
//! leaf topological vectors and their integer combinations.

use std::collections::BTreeMap;

use log::trace;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, MagicKind, TotalColoring};
use crate::error::{Error, Result};
use crate::graph::{Caterpillar, Graph, VertexId};
use crate::transforms::odd_equivalence_transform;
use crate::validators::{check_odd_graceful, MagicCertificate};

/// Leaf counts m_1..m_n along the spine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CaterpillarSpec {
    pub leaf_counts: Vec<usize>,
}

impl CaterpillarSpec {
    pub fn new(leaf_counts: Vec<usize>) -> Self {
        CaterpillarSpec { leaf_counts }
    }

    pub fn spine_len(&self) -> usize {
        self.leaf_counts.len()
    }

    pub fn total_leaves(&self) -> usize {
        self.leaf_counts.iter().sum()
    }

    pub fn edge_count(&self) -> usize {
        (self.total_leaves() + self.spine_len()).saturating_sub(1)
    }

    /// Spine ids `0..n`, then the leaves of each spine vertex in spine order.
    pub fn build(&self) -> Result<Caterpillar> {
        Caterpillar::from_leaf_counts(&self.leaf_counts)
    }
}

/// Vertex placed so far with its color, side and (for leaves) parent.
#[derive(Clone, Copy)]
struct Placed {
    id: VertexId,
    color: Color,
    on_y: bool,
    parent: Option<VertexId>,
}

/// Graph and coloring of the partial caterpillar: placed vertices, the
/// current spine vertex and its active leaves under temporary ids.
fn snapshot(
    placed: &[Placed],
    cur: Placed,
    active: &[Color],
    first_tmp: u32,
) -> Result<(Graph, TotalColoring)> {
    let mut g = Graph::new();
    let mut colors = BTreeMap::new();
    let mut edges = Vec::new();
    for p in placed.iter().chain(std::iter::once(&cur)) {
        g.add_vertex(p.id);
        colors.insert(p.id, p.color);
        if let Some(parent) = p.parent {
            edges.push((parent, p.id));
        }
    }
    for (i, &c) in active.iter().enumerate() {
        let id = VertexId(first_tmp + i as u32);
        g.add_vertex(id);
        colors.insert(id, c);
        edges.push((cur.id, id));
    }
    for (a, b) in edges {
        g.add_edge(a, b)?;
    }
    let c = TotalColoring::from_vertex_colors(&g, colors)?;
    Ok((g, c))
}

fn self_check(g: &Graph, c: &TotalColoring, round: usize) -> Result<()> {
    if g.edge_count() == 0 {
        return Ok(());
    }
    let report = check_odd_graceful(g, c, true)?;
    if !report.valid || !report.is_labeling || !report.is_set_ordered {
        return Err(Error::Validation(format!(
            "subdivision round {round} is not a set-ordered odd-graceful labeling: {}",
            report
                .failure
                .unwrap_or_else(|| "vertex colors repeat".into())
        )));
    }
    Ok(())
}

/// Builds the caterpillar of `spec` with a set-ordered odd-graceful labeling.
///
/// Start from the star on u_1 carrying all m leaves (center 0, leaf j gets
/// 2j-1). Round k keeps the m_k highest-indexed active leaves on u_k and
/// moves the other r' leaves to a new spine vertex u_{k+1}. Frozen Y-side
/// colors go up by 2 first, which frees the odd edge color 2r+1. The moved
/// leaves take edges 2r'-1..1, the new spine edge 2r'+1 and the kept leaves
/// 2r'+3..2r+1. Every round is checked before the next one starts.
pub fn odd_graceful_subdivision(spec: &CaterpillarSpec) -> Result<(Graph, TotalColoring)> {
    let n = spec.spine_len();
    if n == 0 {
        return Err(Error::Precondition("caterpillar spec is empty".into()));
    }
    if spec.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let cat = spec.build()?;
    let mut leaf_ids: Vec<Vec<VertexId>> = Vec::with_capacity(n);
    let mut next = n as u32;
    for &m in &spec.leaf_counts {
        leaf_ids.push((next..next + m as u32).map(VertexId).collect());
        next += m as u32;
    }
    let first_tmp = next;

    let mut placed: Vec<Placed> = Vec::new();
    let mut cur = Placed {
        id: VertexId(0),
        color: 0,
        on_y: false,
        parent: None,
    };
    let mut active: Vec<Color> = (1..=spec.total_leaves() as Color)
        .map(|j| 2 * j - 1)
        .collect();
    let (g, c) = snapshot(&placed, cur, &active, first_tmp)?;
    self_check(&g, &c, 0)?;

    #[allow(clippy::needless_range_loop)]
    for k in 0..n - 1 {
        for p in placed.iter_mut().filter(|p| p.on_y) {
            p.color += 2;
        }
        if cur.on_y {
            cur.color += 2;
        }
        let r = active.len() as Color;
        let mk = spec.leaf_counts[k] as Color;
        let rp = r - mk;
        let sign: Color = if cur.on_y { -1 } else { 1 };
        for (i, &id) in leaf_ids[k].iter().enumerate() {
            let edge = 2 * (rp + i as Color + 1) + 1;
            placed.push(Placed {
                id,
                color: cur.color + sign * edge,
                on_y: !cur.on_y,
                parent: Some(cur.id),
            });
        }
        let next_spine = Placed {
            id: VertexId(k as u32 + 1),
            color: cur.color + sign * (2 * rp + 1),
            on_y: !cur.on_y,
            parent: Some(cur.id),
        };
        active = (1..=rp)
            .map(|p| next_spine.color - sign * (2 * (rp - p) + 1))
            .collect();
        placed.push(cur);
        cur = next_spine;
        trace!(
            "subdivision round {}: u_{} colored {}, {} active leaves",
            k + 1,
            k + 2,
            cur.color,
            rp
        );
        let (g, c) = snapshot(&placed, cur, &active, first_tmp)?;
        self_check(&g, &c, k + 1)?;
    }

    debug_assert_eq!(active.len(), spec.leaf_counts[n - 1]);
    let mut colors: BTreeMap<VertexId, Color> = placed.iter().map(|p| (p.id, p.color)).collect();
    colors.insert(cur.id, cur.color);
    for (&id, &c) in leaf_ids[n - 1].iter().zip(&active) {
        colors.insert(id, c);
    }
    let coloring = TotalColoring::from_vertex_colors(&cat.graph, colors)?;
    self_check(&cat.graph, &coloring, n)?;
    Ok((cat.graph, coloring))
}

/// The subdivision labeling pushed through the odd-graceful equivalence for
/// each of the four kinds.
pub fn caterpillar_all_magic(
    spec: &CaterpillarSpec,
) -> Result<BTreeMap<MagicKind, (TotalColoring, MagicCertificate)>> {
    let (g, f) = odd_graceful_subdivision(spec)?;
    let mut out = BTreeMap::new();
    for kind in MagicKind::ALL {
        let t = odd_equivalence_transform(&g, &f, kind)?;
        let cert = t.certificate.ok_or_else(|| {
            Error::Validation(format!("{kind} transform returned no certificate"))
        })?;
        out.insert(kind, (t.coloring, cert));
    }
    Ok(out)
}

/// Signed per-spine leaf counts of a caterpillar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LeafTopologicalVector {
    pub entries: Vec<i64>,
}

impl LeafTopologicalVector {
    pub fn new(entries: Vec<i64>) -> Self {
        LeafTopologicalVector { entries }
    }
}

/// Leaf counts along the spine; `negative[i]` flips the sign of entry i.
pub fn leaf_topological_vector(
    g: &Graph,
    negative: Option<&[bool]>,
) -> Result<LeafTopologicalVector> {
    let seq = Caterpillar::from_graph(g)?.leaf_degree_sequence(negative)?;
    Ok(LeafTopologicalVector {
        entries: seq.values,
    })
}

/// Integer combination sum of coeffs[k] * base[k].
pub fn vector_lattice_combine(
    base: &[LeafTopologicalVector],
    coeffs: &[i64],
) -> Result<LeafTopologicalVector> {
    if base.len() != coeffs.len() {
        return Err(Error::LengthMismatch(base.len(), coeffs.len()));
    }
    if coeffs.iter().sum::<i64>() < 1 {
        return Err(Error::Precondition(
            "coefficients must sum to at least 1".into(),
        ));
    }
    let len = base.first().map_or(0, |v| v.entries.len());
    if let Some(bad) = base.iter().find(|v| v.entries.len() != len) {
        return Err(Error::LengthMismatch(len, bad.entries.len()));
    }
    let mut out = vec![0i64; len];
    for (v, &a) in base.iter().zip(coeffs) {
        for (o, &x) in out.iter_mut().zip(&v.entries) {
            *o = x
                .checked_mul(a)
                .and_then(|t| o.checked_add(t))
                .ok_or(Error::Overflow("vector combination"))?;
        }
    }
    Ok(LeafTopologicalVector { entries: out })
}
