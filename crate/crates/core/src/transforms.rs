//! Constructive transforms between labeling classes: the set-dual family
//! on set-ordered graceful labelings, the odd-graceful equivalences onto
//! the four W-magic kinds, and the +1 twin construction.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, MagicKind, TotalColoring};
use crate::error::{Error, Result};
use crate::graph::{BipartitionView, Graph, Side, VertexId};
use crate::validators::{check_graceful, check_odd_graceful, check_w_magic, MagicCertificate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformKind {
    Dual,
    DualStar,
    SetXY,
    SetXYStar,
    SetX,
    SetXStar,
    SetY,
    SetYStar,
    OddEquiv(MagicKind),
}

impl TransformKind {
    pub const SET_DUAL: [TransformKind; 8] = [
        TransformKind::Dual,
        TransformKind::DualStar,
        TransformKind::SetXY,
        TransformKind::SetXYStar,
        TransformKind::SetX,
        TransformKind::SetXStar,
        TransformKind::SetY,
        TransformKind::SetYStar,
    ];

    pub fn name(self) -> String {
        match self {
            TransformKind::Dual => "dual".into(),
            TransformKind::DualStar => "dual-star".into(),
            TransformKind::SetXY => "set-xy".into(),
            TransformKind::SetXYStar => "set-xy-star".into(),
            TransformKind::SetX => "set-x".into(),
            TransformKind::SetXStar => "set-x-star".into(),
            TransformKind::SetY => "set-y".into(),
            TransformKind::SetYStar => "set-y-star".into(),
            TransformKind::OddEquiv(k) => format!("odd-{k}"),
        }
    }
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for TransformKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(k) = s.strip_prefix("odd-") {
            return Ok(TransformKind::OddEquiv(k.parse()?));
        }
        TransformKind::SET_DUAL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown transform {s:?}")))
    }
}

/// Class a transform output is claimed to belong to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResultClass {
    /// Set-ordered graceful labeling.
    Graceful,
    Magic(MagicKind),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformOutput {
    pub coloring: TotalColoring,
    pub class: ResultClass,
    /// Constant predicted by the transform's formula.
    pub predicted_constant: Color,
    /// Whether the output passed its claimed class.
    pub verified: bool,
    /// Validator certificate for magic classes.
    pub certificate: Option<MagicCertificate>,
    pub note: Option<String>,
}

struct Sides {
    bip: BipartitionView,
    min_x: Color,
    max_x: Color,
    min_y: Color,
    max_y: Color,
}

fn sides(f: &TotalColoring, bip: BipartitionView) -> Sides {
    let xs = bip.x_side.iter().map(|v| f.vertex_colors[v]);
    let ys = bip.y_side.iter().map(|v| f.vertex_colors[v]);
    Sides {
        min_x: xs.clone().min().unwrap_or(0),
        max_x: xs.max().unwrap_or(0),
        min_y: ys.clone().min().unwrap_or(0),
        max_y: ys.max().unwrap_or(0),
        bip,
    }
}

fn map_vertices(
    g: &Graph,
    f: &TotalColoring,
    s: &Sides,
    rule: impl Fn(Side, Color) -> Color,
) -> BTreeMap<VertexId, Color> {
    g.vertices()
        .map(|v| {
            let side = s.bip.side_of(v).expect("bipartition covers every vertex");
            (v, rule(side, f.vertex_colors[&v]))
        })
        .collect()
}

fn map_edges(
    g: &Graph,
    f: &TotalColoring,
    rule: impl Fn(Color) -> Color,
) -> BTreeMap<crate::graph::Edge, Color> {
    g.edges().map(|e| (e, rule(f.edge_colors[&e]))).collect()
}

fn finish(
    g: &Graph,
    coloring: TotalColoring,
    class: ResultClass,
    predicted_constant: Color,
    note: Option<String>,
) -> Result<TransformOutput> {
    coloring.check_covers(g)?;
    let (verified, certificate) = match class {
        ResultClass::Graceful => (check_graceful(g, &coloring, true)?.valid, None),
        ResultClass::Magic(kind) => match check_w_magic(g, &coloring, kind) {
            Ok(cert) => (cert.constant == predicted_constant, Some(cert)),
            Err(e) if e.is_validation() => (false, None),
            Err(e) => return Err(e),
        },
    };
    Ok(TransformOutput {
        coloring,
        class,
        predicted_constant,
        verified,
        certificate,
        note,
    })
}

/// One of the eight set-dual transforms of a set-ordered graceful labeling.
///
/// Every output except a `SetXY` with gap min f(Y) - max f(X) other than 1
/// is verified against its claimed class before returning; a failed
/// self-check is an error. The `SetXY` exception is returned unverified with
/// a note.
pub fn set_dual_transform(
    g: &Graph,
    f: &TotalColoring,
    kind: TransformKind,
) -> Result<TransformOutput> {
    let report = check_graceful(g, f, true)?;
    if !report.valid {
        return Err(Error::Precondition(format!(
            "input is not a set-ordered graceful labeling: {}",
            report.failure.unwrap_or_default()
        )));
    }
    let q = g.edge_count() as Color;
    let s = sides(f, report.bipartition.expect("set-ordered"));
    let (sum_x, sum_y) = (s.max_x + s.min_x, s.max_y + s.min_y);
    let flip_xy = |side, c| match side {
        Side::X => sum_x - c,
        Side::Y => sum_y - c,
    };
    let star = |e: Color| q + 1 - e;
    let (coloring, class, constant) = match kind {
        TransformKind::Dual => {
            let vc = map_vertices(g, f, &s, |_, c| q - c);
            (
                TotalColoring {
                    vertex_colors: vc,
                    edge_colors: f.edge_colors.clone(),
                },
                ResultClass::Graceful,
                0,
            )
        }
        TransformKind::DualStar => {
            let vc = map_vertices(g, f, &s, |_, c| q - c);
            let ec = map_edges(g, f, star);
            (
                TotalColoring {
                    vertex_colors: vc,
                    edge_colors: ec,
                },
                ResultClass::Magic(MagicKind::EdgeDifference),
                q + 1,
            )
        }
        TransformKind::SetXY => {
            let vc = map_vertices(g, f, &s, flip_xy);
            (
                TotalColoring::from_vertex_colors(g, vc)?,
                ResultClass::Graceful,
                0,
            )
        }
        TransformKind::SetXYStar => {
            let vc = map_vertices(g, f, &s, flip_xy);
            let ec = map_edges(g, f, star);
            (
                TotalColoring {
                    vertex_colors: vc,
                    edge_colors: ec,
                },
                ResultClass::Magic(MagicKind::GracefulDifference),
                s.min_y - s.max_x - 1,
            )
        }
        TransformKind::SetX | TransformKind::SetXStar => {
            let vc = map_vertices(
                g,
                f,
                &s,
                |side, c| if side == Side::X { s.max_x - c } else { c },
            );
            if kind == TransformKind::SetX {
                (
                    TotalColoring {
                        vertex_colors: vc,
                        edge_colors: f.edge_colors.clone(),
                    },
                    ResultClass::Magic(MagicKind::FelicitousDifference),
                    s.max_x,
                )
            } else {
                (
                    TotalColoring {
                        vertex_colors: vc,
                        edge_colors: map_edges(g, f, star),
                    },
                    ResultClass::Magic(MagicKind::EdgeMagic),
                    q + 1 + s.max_x,
                )
            }
        }
        TransformKind::SetY | TransformKind::SetYStar => {
            let vc = map_vertices(
                g,
                f,
                &s,
                |side, c| if side == Side::Y { q + s.min_y - c } else { c },
            );
            if kind == TransformKind::SetY {
                (
                    TotalColoring {
                        vertex_colors: vc,
                        edge_colors: f.edge_colors.clone(),
                    },
                    ResultClass::Magic(MagicKind::EdgeMagic),
                    q + s.min_y,
                )
            } else {
                (
                    TotalColoring {
                        vertex_colors: vc,
                        edge_colors: map_edges(g, f, star),
                    },
                    ResultClass::Magic(MagicKind::FelicitousDifference),
                    s.min_y - 1,
                )
            }
        }
        TransformKind::OddEquiv(_) => {
            return Err(Error::Precondition(
                "odd equivalences take an odd-graceful input".into(),
            ))
        }
    };
    let gap = s.min_y - s.max_x;
    let note = (kind == TransformKind::SetXY && gap != 1)
        .then(|| format!("gap min f(Y) - max f(X) = {gap}; graceful only guaranteed for gap 1"));
    let out = finish(g, coloring, class, constant, note)?;
    if !out.verified && out.note.is_none() {
        return Err(Error::Validation(format!(
            "{kind} output failed its class check"
        )));
    }
    Ok(out)
}

/// Maps a set-ordered odd-graceful labeling onto the target W-magic kind.
pub fn odd_equivalence_transform(
    g: &Graph,
    f: &TotalColoring,
    target: MagicKind,
) -> Result<TransformOutput> {
    let report = check_odd_graceful(g, f, true)?;
    if !report.valid {
        return Err(Error::Precondition(format!(
            "input is not a set-ordered odd-graceful labeling: {}",
            report.failure.unwrap_or_default()
        )));
    }
    let q = g.edge_count() as Color;
    let s = sides(f, report.bipartition.expect("set-ordered"));
    let reflect_edge = |e: Color| 2 * q - e;
    let (vc, ec, constant) = match target {
        MagicKind::EdgeDifference => (
            map_vertices(g, f, &s, |_, c| 2 * q - 1 - c),
            map_edges(g, f, reflect_edge),
            2 * q,
        ),
        MagicKind::GracefulDifference => (
            map_vertices(g, f, &s, |side, c| match side {
                Side::X => s.max_x - c,
                Side::Y => 2 * q - 1 + s.min_y - c,
            }),
            map_edges(g, f, reflect_edge),
            s.min_y - s.max_x - 1,
        ),
        MagicKind::FelicitousDifference => (
            map_vertices(
                g,
                f,
                &s,
                |side, c| if side == Side::X { s.max_x - c } else { c },
            ),
            f.edge_colors.clone(),
            s.max_x,
        ),
        MagicKind::EdgeMagic => (
            map_vertices(
                g,
                f,
                &s,
                |side, c| if side == Side::X { s.max_x - c } else { c },
            ),
            map_edges(g, f, reflect_edge),
            2 * q + s.max_x,
        ),
    };
    let coloring = TotalColoring {
        vertex_colors: vc,
        edge_colors: ec,
    };
    let out = finish(g, coloring, ResultClass::Magic(target), constant, None)?;
    let cert = out.certificate.as_ref();
    if !out.verified || !cert.is_some_and(|c| c.is_set_ordered && c.is_odd_edge) {
        return Err(Error::Validation(format!(
            "odd-{target} output failed its class check"
        )));
    }
    Ok(out)
}

/// Copy of `g` with every vertex color shifted by +1, edge colors kept.
pub fn twin_from(g: &Graph, f: &TotalColoring) -> Result<(Graph, TotalColoring)> {
    let cert = check_w_magic(g, f, MagicKind::GracefulDifference)?;
    let q = g.edge_count() as Color;
    if !cert.is_odd_edge {
        return Err(Error::Precondition("input is not odd-edge".into()));
    }
    if g.vertices()
        .any(|v| !(0..2 * q).contains(&f.vertex_colors[&v]))
    {
        return Err(Error::Precondition(format!(
            "vertex colors leave [0,{}]",
            2 * q - 1
        )));
    }
    let twin = TotalColoring {
        vertex_colors: f.vertex_colors.iter().map(|(&v, &c)| (v, c + 1)).collect(),
        edge_colors: f.edge_colors.clone(),
    };
    Ok((g.clone(), twin))
}

/// Convenience wrapper dispatching on the transform kind.
pub fn apply(g: &Graph, f: &TotalColoring, kind: TransformKind) -> Result<TransformOutput> {
    match kind {
        TransformKind::OddEquiv(k) => odd_equivalence_transform(g, f, k),
        other => set_dual_transform(g, f, other),
    }
}
