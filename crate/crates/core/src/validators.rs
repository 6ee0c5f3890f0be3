//! Verdicts for the labeling and coloring classes: odd-graceful, the four
//! W-magic families, strongly (perfect-matching) variants, twin pairs,
//! edge-matching pairs, matrix teams and derived colorings.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::coloring::{odd_range, Color, MagicKind, TotalColoring};
use crate::error::{Error, Result};
use crate::graph::{BipartitionView, Edge, Graph};
use crate::topcode::TopcodeMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MagicCertificate {
    pub kind: MagicKind,
    pub constant: Color,
    pub is_labeling: bool,
    pub is_set_ordered: bool,
    pub is_odd_edge: bool,
    pub bipartition: Option<BipartitionView>,
}

fn require_connected_with_edges(g: &Graph) -> Result<()> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Common value of the kind's equation over all edges. Works on
/// disconnected graphs; reports every distinct value on disagreement.
pub fn equation_constant(g: &Graph, c: &TotalColoring, kind: MagicKind) -> Result<Color> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    c.check_covers(g)?;
    let mut first: Option<Color> = None;
    let mut bad: Option<Edge> = None;
    let mut values = BTreeSet::new();
    for (e, x, w, y) in c.triples(g)? {
        let val = kind.value(x, w, y);
        values.insert(val);
        match first {
            None => first = Some(val),
            Some(k) if k != val && bad.is_none() => bad = Some(e),
            _ => {}
        }
    }
    match bad {
        Some(edge) => Err(Error::ConstantMismatch {
            edge,
            values: values.into_iter().collect(),
        }),
        None => Ok(first.expect("at least one edge")),
    }
}

pub fn is_labeling(g: &Graph, c: &TotalColoring) -> bool {
    let colors: BTreeSet<_> = g
        .vertices()
        .filter_map(|v| c.vertex_colors.get(&v))
        .collect();
    colors.len() == g.vertex_count()
}

/// Edge colors are exactly 1, 3, ..., 2q-1.
pub fn is_odd_edge(g: &Graph, c: &TotalColoring) -> bool {
    let mut colors: Vec<Color> = g
        .edges()
        .filter_map(|e| c.edge_colors.get(&e).copied())
        .collect();
    colors.sort_unstable();
    colors == odd_range(g.edge_count())
}

/// A bipartition (X, Y) with max f(X) < min f(Y), if one exists.
///
/// Each component may be oriented independently, so this also handles
/// disconnected graphs by scanning thresholds.
pub fn set_ordered_bipartition(g: &Graph, c: &TotalColoring) -> Option<BipartitionView> {
    let bip = g.bipartition()?;
    let color = |v| c.vertex_colors.get(&v).copied();
    let comps = g.components();
    let mut thresholds: Vec<Color> = g.vertices().filter_map(color).collect();
    thresholds.sort_unstable();
    thresholds.dedup();
    'outer: for &t in &thresholds {
        let mut x = Vec::new();
        let mut y = Vec::new();
        for comp in &comps {
            let (a, b): (Vec<_>, Vec<_>) = comp
                .iter()
                .partition(|v| bip.x_side.binary_search(v).is_ok());
            let low = |s: &[_]| s.iter().all(|&v| color(v).is_some_and(|k| k <= t));
            let high = |s: &[_]| s.iter().all(|&v| color(v).is_some_and(|k| k > t));
            if low(&a) && high(&b) {
                x.extend(a);
                y.extend(b);
            } else if low(&b) && high(&a) {
                x.extend(b);
                y.extend(a);
            } else {
                continue 'outer;
            }
        }
        if x.is_empty() || y.is_empty() {
            continue;
        }
        x.sort();
        y.sort();
        return Some(BipartitionView {
            x_side: x,
            y_side: y,
        });
    }
    None
}

/// Checks one of the four W-magic families on a connected graph.
pub fn check_w_magic(g: &Graph, c: &TotalColoring, kind: MagicKind) -> Result<MagicCertificate> {
    require_connected_with_edges(g)?;
    let constant = equation_constant(g, c, kind)?;
    if constant < 0
        || (constant == 0 && matches!(kind, MagicKind::EdgeMagic | MagicKind::EdgeDifference))
    {
        return Err(Error::Validation(format!(
            "{kind} constant must be positive, got {constant}"
        )));
    }
    let order = set_ordered_bipartition(g, c);
    Ok(MagicCertificate {
        kind,
        constant,
        is_labeling: is_labeling(g, c),
        is_set_ordered: order.is_some(),
        is_odd_edge: is_odd_edge(g, c),
        bipartition: order.or_else(|| g.bipartition()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GracefulReport {
    pub valid: bool,
    pub is_labeling: bool,
    pub is_set_ordered: bool,
    pub bipartition: Option<BipartitionView>,
    pub failure: Option<String>,
}

fn odd_graceful_failure(g: &Graph, c: &TotalColoring) -> Result<Option<String>> {
    let q = g.edge_count() as Color;
    let colors: Vec<Color> = g.vertices().map(|v| c.vertex(v)).collect::<Result<_>>()?;
    if colors.iter().any(|&k| k > 2 * q - 1) {
        return Ok(Some(format!("vertex color exceeds {}", 2 * q - 1)));
    }
    if colors.iter().min() != Some(&0) {
        return Ok(Some("minimum vertex color is not 0".into()));
    }
    for (e, x, w, y) in c.triples(g)? {
        if w != (x - y).abs() {
            return Ok(Some(format!(
                "edge {e} colored {w}, endpoints differ by {}",
                (x - y).abs()
            )));
        }
    }
    if !is_odd_edge(g, c) {
        return Ok(Some(format!("edge colors are not [1,{}]^o", 2 * q - 1)));
    }
    Ok(None)
}

pub fn check_odd_graceful(
    g: &Graph,
    c: &TotalColoring,
    require_set_ordered: bool,
) -> Result<GracefulReport> {
    require_connected_with_edges(g)?;
    c.check_covers(g)?;
    let failure = odd_graceful_failure(g, c)?;
    Ok(graceful_report(g, c, failure, require_set_ordered))
}

/// Graceful labeling: distinct vertex colors in [0, q], edge colors
/// |f(u) - f(v)| forming [1, q].
pub fn check_graceful(
    g: &Graph,
    c: &TotalColoring,
    require_set_ordered: bool,
) -> Result<GracefulReport> {
    require_connected_with_edges(g)?;
    c.check_covers(g)?;
    let q = g.edge_count() as Color;
    let mut failure = None;
    if !is_labeling(g, c) {
        failure = Some("vertex colors are not distinct".to_string());
    } else if g.vertices().any(|v| c.vertex_colors[&v] > q) {
        failure = Some(format!("vertex color exceeds {q}"));
    } else if let Some((e, ..)) = c
        .triples(g)?
        .into_iter()
        .find(|&(_, x, w, y)| w != (x - y).abs())
    {
        failure = Some(format!(
            "edge {e} is not colored by its endpoint difference"
        ));
    } else {
        let mut es: Vec<Color> = g.edges().map(|e| c.edge_colors[&e]).collect();
        es.sort_unstable();
        if es != (1..=q).collect::<Vec<_>>() {
            failure = Some(format!("edge colors are not [1,{q}]"));
        }
    }
    Ok(graceful_report(g, c, failure, require_set_ordered))
}

fn graceful_report(
    g: &Graph,
    c: &TotalColoring,
    mut failure: Option<String>,
    require_set_ordered: bool,
) -> GracefulReport {
    let order = set_ordered_bipartition(g, c);
    if failure.is_none() && require_set_ordered && order.is_none() {
        failure = Some("no set-ordered bipartition".into());
    }
    GracefulReport {
        valid: failure.is_none(),
        is_labeling: is_labeling(g, c),
        is_set_ordered: order.is_some(),
        bipartition: order.or_else(|| g.bipartition()),
        failure,
    }
}

/// Base family for the strongly variants and twin checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColoringClass {
    OddGraceful,
    Magic(MagicKind),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongReport {
    pub class: ColoringClass,
    pub odd_edge: bool,
    /// Magic constant of the base class (0 for odd-graceful).
    pub constant: Color,
    /// Common matching-edge vertex sum.
    pub matching_sum: Color,
}

/// Set-ordered strongly variants on a tree with a perfect matching.
///
/// `odd_edge` selects the odd family: vertex colors in [0, 2p-3] and edge
/// colors [1, 2p-3]^o; otherwise vertex colors in [0, p-1] and edges [1, p-1].
/// Every variant requires a labeling with minimum vertex color 0 and a
/// set-ordered bipartition. Odd-graceful is always the odd family.
pub fn check_strongly(
    g: &Graph,
    c: &TotalColoring,
    matching: &[Edge],
    class: ColoringClass,
    odd_edge: bool,
) -> Result<StrongReport> {
    if !g.is_tree() {
        return Err(Error::NotTree);
    }
    check_perfect_matching(g, matching)?;
    c.check_covers(g)?;
    let odd_edge = odd_edge || class == ColoringClass::OddGraceful;
    let p = g.vertex_count() as Color;
    let q = g.edge_count();

    let constant = match class {
        ColoringClass::OddGraceful => {
            let r = check_odd_graceful(g, c, true)?;
            if let Some(f) = r.failure {
                return Err(Error::Validation(f));
            }
            0
        }
        ColoringClass::Magic(kind) => {
            let cert = check_w_magic(g, c, kind)?;
            let top = if odd_edge { 2 * p - 3 } else { p - 1 };
            let colors: Vec<Color> = g.vertices().map(|v| c.vertex(v)).collect::<Result<_>>()?;
            if colors.iter().min() != Some(&0) || colors.iter().any(|&k| k > top) {
                return Err(Error::Validation(format!(
                    "vertex colors not within [0,{top}] with minimum 0"
                )));
            }
            let edges_ok = if odd_edge {
                cert.is_odd_edge
            } else {
                let mut es: Vec<Color> = c.triples(g)?.into_iter().map(|t| t.2).collect();
                es.sort_unstable();
                es == (1..=q as Color).collect::<Vec<_>>()
            };
            if !edges_ok {
                return Err(Error::Validation("edge color set out of range".into()));
            }
            if !cert.is_set_ordered {
                return Err(Error::Validation("no set-ordered bipartition".into()));
            }
            cert.constant
        }
    };
    if !is_labeling(g, c) {
        return Err(Error::Validation("vertex colors are not distinct".into()));
    }

    let mut sum = None;
    for &e in matching {
        let s = c.vertex(e.lo())? + c.vertex(e.hi())?;
        match sum {
            None => sum = Some(s),
            Some(k) if k != s => {
                return Err(Error::MatchingSum {
                    edge: e,
                    found: s,
                    expected: k,
                })
            }
            _ => {}
        }
    }
    Ok(StrongReport {
        class,
        odd_edge,
        constant,
        matching_sum: sum.expect("perfect matching of a tree is non-empty"),
    })
}

fn check_perfect_matching(g: &Graph, matching: &[Edge]) -> Result<()> {
    let mut covered = BTreeSet::new();
    for &e in matching {
        if !g.has_edge(e.lo(), e.hi()) {
            return Err(Error::NotPerfectMatching(format!("{e} is not an edge")));
        }
        if !covered.insert(e.lo()) || !covered.insert(e.hi()) {
            return Err(Error::NotPerfectMatching(format!("{e} shares an endpoint")));
        }
    }
    if covered.len() != g.vertex_count() {
        return Err(Error::NotPerfectMatching("some vertex is unmatched".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwinReport {
    pub constant_f: Color,
    pub constant_t: Color,
    pub union_set: Vec<Color>,
    pub perfect: bool,
}

fn twin_side_constant(
    g: &Graph,
    c: &TotalColoring,
    class: ColoringClass,
    q: usize,
) -> Result<Color> {
    let kind = match class {
        ColoringClass::OddGraceful => MagicKind::GracefulDifference,
        ColoringClass::Magic(k) => k,
    };
    let k = equation_constant(g, c, kind)?;
    if class == ColoringClass::OddGraceful && k != 0 {
        return Err(Error::Validation(
            "edge colors are not endpoint differences".into(),
        ));
    }
    if !is_odd_edge(g, c) {
        return Err(Error::Validation(format!(
            "edge colors are not [1,{}]^o",
            2 * q - 1
        )));
    }
    Ok(k)
}

/// Twin pair check. Either side may be disconnected: a twin side realized
/// from a Topcode-matrix need not be connected.
pub fn check_twin(
    gf: &Graph,
    cf: &TotalColoring,
    gt: &Graph,
    ct: &TotalColoring,
    class: ColoringClass,
) -> Result<TwinReport> {
    let q = gf.edge_count();
    if q != gt.edge_count() {
        return Err(Error::LengthMismatch(q, gt.edge_count()));
    }
    let constant_f = twin_side_constant(gf, cf, class, q)?;
    let constant_t = twin_side_constant(gt, ct, class, q)?;
    let union: BTreeSet<Color> = gf
        .vertices()
        .map(|v| cf.vertex(v))
        .chain(gt.vertices().map(|v| ct.vertex(v)))
        .collect::<Result<_>>()?;
    let top = 2 * q as Color;
    if union.iter().any(|&k| k < 0 || k > top) {
        return Err(Error::Validation(format!("vertex colors leave [0,{top}]")));
    }
    let perfect = union.len() as Color == top + 1;
    Ok(TwinReport {
        constant_f,
        constant_t,
        union_set: union.into_iter().collect(),
        perfect,
    })
}

/// cA(e) + cH(e) = S on every edge.
pub fn check_edge_matching(g: &Graph, ca: &TotalColoring, ch: &TotalColoring, s: Color) -> bool {
    g.edges()
        .all(|e| match (ca.edge_colors.get(&e), ch.edge_colors.get(&e)) {
            (Some(a), Some(b)) => a + b == s,
            _ => false,
        })
}

/// Every matrix: vertex entries in [0, M], odd e-entries forming
/// [1, 2n-1]^o, one shared equation constant per matrix.
pub fn check_matrix_team(matrices: &[TopcodeMatrix], kind: MagicKind, m: Color) -> Result<bool> {
    let Some(first) = matrices.first() else {
        return Ok(true);
    };
    let n = first.len();
    for t in matrices {
        if t.len() != n {
            return Err(Error::LengthMismatch(n, t.len()));
        }
    }
    Ok(matrices.iter().all(|t| {
        let in_range = t.x.iter().chain(&t.y).all(|&v| (0..=m).contains(&v));
        let mut es = t.e.clone();
        es.sort_unstable();
        let values: BTreeSet<Color> = t.columns().map(|(x, e, y)| kind.value(x, e, y)).collect();
        in_range && es == odd_range(n) && values.len() == 1
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivedMode {
    VeSeparate,
    Mixed,
}

fn sorted<I: IntoIterator<Item = Color>>(it: I) -> Vec<Color> {
    let mut v: Vec<Color> = it.into_iter().collect();
    v.sort_unstable();
    v
}

/// Derived-coloring conditions for a rearrangement of a base coloring.
///
/// With eq(a, b, w) the kind's equation on vertex colors a, b and edge
/// color w, and c the base constant: in ve-separate mode every edge color
/// w has two distinct vertices with eq(a, b, w) = c, and every vertex has
/// a second vertex and an edge completing such a triple. Mixed mode pools
/// all elements: each element takes part, as a vertex-role or edge-role
/// entry, in a triple with two other elements.
pub fn check_derived_coloring(
    g: &Graph,
    base: &TotalColoring,
    candidate: &TotalColoring,
    kind: MagicKind,
    mode: DerivedMode,
) -> Result<bool> {
    let c = equation_constant(g, base, kind)?;
    candidate.check_covers(g)?;
    let bv = sorted(g.vertices().map(|v| base.vertex_colors[&v]));
    let be = sorted(g.edges().map(|e| base.edge_colors[&e]));
    let cv: Vec<Color> = g.vertices().map(|v| candidate.vertex_colors[&v]).collect();
    let ce: Vec<Color> = g.edges().map(|e| candidate.edge_colors[&e]).collect();
    let eq = |a: Color, b: Color, w: Color| kind.value(a, w, b) == c;
    match mode {
        DerivedMode::VeSeparate => {
            if bv != sorted(cv.iter().copied()) || be != sorted(ce.iter().copied()) {
                return Err(Error::Validation(
                    "candidate is not a rearrangement of the base colors".into(),
                ));
            }
            let n = cv.len();
            let edges_ok = ce
                .iter()
                .all(|&w| (0..n).any(|i| (0..n).any(|j| i != j && eq(cv[i], cv[j], w))));
            let verts_ok =
                (0..n).all(|i| (0..n).any(|j| j != i && ce.iter().any(|&w| eq(cv[i], cv[j], w))));
            Ok(edges_ok && verts_ok)
        }
        DerivedMode::Mixed => {
            let all: Vec<Color> = cv.iter().chain(&ce).copied().collect();
            if sorted(bv.iter().chain(&be).copied()) != sorted(all.iter().copied()) {
                return Err(Error::Validation(
                    "candidate is not a rearrangement of the base colors".into(),
                ));
            }
            let n = all.len();
            Ok((0..n).all(|z| {
                (0..n).any(|x| {
                    x != z
                        && (0..n).any(|y| {
                            y != z
                                && y != x
                                && (eq(all[z], all[x], all[y]) || eq(all[y], all[x], all[z]))
                        })
                })
            }))
        }
    }
}

/// Per-kind map from vertex id to color used in quick lookups.
pub fn color_map(g: &Graph, c: &TotalColoring) -> Result<BTreeMap<crate::graph::VertexId, Color>> {
    g.vertices().map(|v| Ok((v, c.vertex(v)?))).collect()
}
