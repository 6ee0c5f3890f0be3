//! Total colorings and the four W-magic equation families.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

pub type Color = i64;

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    vertex_colors: BTreeMap<VertexId, Color>,
    edge_colors: Vec<(u32, u32, Color)>,
}

/// Integer colors on the vertices and edges of a graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "ColoringJson", into = "ColoringJson")]
pub struct TotalColoring {
    pub vertex_colors: BTreeMap<VertexId, Color>,
    pub edge_colors: BTreeMap<Edge, Color>,
}

impl From<ColoringJson> for TotalColoring {
    fn from(j: ColoringJson) -> Self {
        TotalColoring {
            vertex_colors: j.vertex_colors,
            edge_colors: j
                .edge_colors
                .into_iter()
                .map(|(a, b, c)| (Edge::new(VertexId(a), VertexId(b)), c))
                .collect(),
        }
    }
}

impl From<TotalColoring> for ColoringJson {
    fn from(c: TotalColoring) -> Self {
        ColoringJson {
            vertex_colors: c.vertex_colors,
            edge_colors: c
                .edge_colors
                .into_iter()
                .map(|(e, c)| (e.lo().0, e.hi().0, c))
                .collect(),
        }
    }
}

impl TotalColoring {
    pub fn new() -> Self {
        Self::default()
    }

    /// Colors every edge with |f(u) - f(v)|.
    pub fn from_vertex_colors(g: &Graph, vertex_colors: BTreeMap<VertexId, Color>) -> Result<Self> {
        let mut edge_colors = BTreeMap::new();
        for e in g.edges() {
            let a = *vertex_colors
                .get(&e.lo())
                .ok_or(Error::UncoloredVertex(e.lo()))?;
            let b = *vertex_colors
                .get(&e.hi())
                .ok_or(Error::UncoloredVertex(e.hi()))?;
            edge_colors.insert(e, (a - b).abs());
        }
        Ok(TotalColoring {
            vertex_colors,
            edge_colors,
        })
    }

    pub fn vertex(&self, v: VertexId) -> Result<Color> {
        self.vertex_colors
            .get(&v)
            .copied()
            .ok_or(Error::UncoloredVertex(v))
    }

    pub fn edge(&self, e: Edge) -> Result<Color> {
        self.edge_colors
            .get(&e)
            .copied()
            .ok_or(Error::UncoloredEdge(e))
    }

    /// Every element of `g` colored with a non-negative integer.
    pub fn check_covers(&self, g: &Graph) -> Result<()> {
        for v in g.vertices() {
            let c = self.vertex(v)?;
            if c < 0 {
                return Err(Error::NegativeColor(c));
            }
        }
        for e in g.edges() {
            let c = self.edge(e)?;
            if c < 0 {
                return Err(Error::NegativeColor(c));
            }
        }
        Ok(())
    }

    /// Restriction to the vertices and edges of `g`.
    pub fn restrict(&self, g: &Graph) -> Result<TotalColoring> {
        let mut out = TotalColoring::new();
        for v in g.vertices() {
            out.vertex_colors.insert(v, self.vertex(v)?);
        }
        for e in g.edges() {
            out.edge_colors.insert(e, self.edge(e)?);
        }
        Ok(out)
    }

    pub fn relabeled(&self, map: &BTreeMap<VertexId, VertexId>) -> TotalColoring {
        let f = |v: VertexId| map.get(&v).copied().unwrap_or(v);
        TotalColoring {
            vertex_colors: self
                .vertex_colors
                .iter()
                .map(|(&v, &c)| (f(v), c))
                .collect(),
            edge_colors: self
                .edge_colors
                .iter()
                .map(|(e, &c)| (Edge::new(f(e.lo()), f(e.hi())), c))
                .collect(),
        }
    }

    /// (x, e, y) per edge of `g`, x and y being the endpoint colors.
    pub fn triples(&self, g: &Graph) -> Result<Vec<(Edge, Color, Color, Color)>> {
        g.edges()
            .map(|e| Ok((e, self.vertex(e.lo())?, self.edge(e)?, self.vertex(e.hi())?)))
            .collect()
    }
}

/// A graph together with a total coloring of it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredGraph {
    pub graph: Graph,
    pub coloring: TotalColoring,
}

impl ColoredGraph {
    pub fn new(graph: Graph, coloring: TotalColoring) -> Self {
        ColoredGraph { graph, coloring }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MagicKind {
    EdgeMagic,
    EdgeDifference,
    FelicitousDifference,
    GracefulDifference,
}

impl MagicKind {
    pub const ALL: [MagicKind; 4] = [
        MagicKind::EdgeMagic,
        MagicKind::EdgeDifference,
        MagicKind::FelicitousDifference,
        MagicKind::GracefulDifference,
    ];

    /// Left-hand side of the kind's per-edge equation.
    pub fn value(self, x: Color, e: Color, y: Color) -> Color {
        match self {
            MagicKind::EdgeMagic => x + e + y,
            MagicKind::EdgeDifference => e + (x - y).abs(),
            MagicKind::FelicitousDifference => (x + y - e).abs(),
            MagicKind::GracefulDifference => ((x - y).abs() - e).abs(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MagicKind::EdgeMagic => "edge-magic",
            MagicKind::EdgeDifference => "edge-difference",
            MagicKind::FelicitousDifference => "felicitous-difference",
            MagicKind::GracefulDifference => "graceful-difference",
        }
    }
}

impl fmt::Display for MagicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MagicKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MagicKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown kind {s:?}")))
    }
}

/// The odd set [1, 2q-1]^o as a sorted list.
pub fn odd_range(q: usize) -> Vec<Color> {
    (1..=q as Color).map(|i| 2 * i - 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_format() {
        let g = Graph::path(2);
        let c = TotalColoring::from_vertex_colors(
            &g,
            BTreeMap::from([(VertexId(0), 0), (VertexId(1), 1)]),
        )
        .unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"vertex_colors":{"0":0,"1":1},"edge_colors":[[0,1,1]]}"#
        );
        assert_eq!(serde_json::from_str::<TotalColoring>(&s).unwrap(), c);
    }

    #[test]
    fn kind_values() {
        assert_eq!(MagicKind::EdgeMagic.value(0, 3, 1), 4);
        assert_eq!(MagicKind::EdgeDifference.value(3, 1, 0), 4);
        assert_eq!(MagicKind::FelicitousDifference.value(0, 1, 1), 0);
        assert_eq!(MagicKind::GracefulDifference.value(0, 3, 3), 0);
        for k in MagicKind::ALL {
            assert_eq!(k.name().parse::<MagicKind>().unwrap(), k);
        }
    }

    #[test]
    fn covers_detects_gaps() {
        let g = Graph::path(2);
        let mut c = TotalColoring::new();
        c.vertex_colors.insert(VertexId(0), 0);
        assert_eq!(c.check_covers(&g), Err(Error::UncoloredVertex(VertexId(1))));
        c.vertex_colors.insert(VertexId(1), -1);
        assert_eq!(c.check_covers(&g), Err(Error::NegativeColor(-1)));
    }
}
