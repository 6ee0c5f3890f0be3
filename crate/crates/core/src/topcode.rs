//! Topcode-matrices: extraction from colored graphs, small-scale
//! realization back into graphs, and number-based strings.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use log::debug;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::batch;
use crate::canon::{canonical_form_labeled, DEFAULT_VERTEX_CAP};
use crate::coloring::{Color, MagicKind, TotalColoring};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

/// Largest number of slot assignments [`realize_matrix`] will enumerate.
pub const REALIZE_SEARCH_LIMIT: u64 = 50_000_000;

/// A 3 x q matrix of (x, e, y) columns, one per edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TopcodeMatrix {
    pub x: Vec<Color>,
    pub e: Vec<Color>,
    pub y: Vec<Color>,
}

impl TopcodeMatrix {
    pub fn new(x: Vec<Color>, e: Vec<Color>, y: Vec<Color>) -> Result<Self> {
        if x.len() != e.len() || e.len() != y.len() {
            return Err(Error::LengthMismatch(x.len(), y.len().max(e.len())));
        }
        if let Some(&bad) = x.iter().chain(&e).chain(&y).find(|&&v| v < 0) {
            return Err(Error::NegativeColor(bad));
        }
        Ok(TopcodeMatrix { x, e, y })
    }

    pub fn from_columns(cols: impl IntoIterator<Item = (Color, Color, Color)>) -> Result<Self> {
        let (mut x, mut e, mut y) = (Vec::new(), Vec::new(), Vec::new());
        for (a, b, c) in cols {
            x.push(a);
            e.push(b);
            y.push(c);
        }
        TopcodeMatrix::new(x, e, y)
    }

    pub fn len(&self) -> usize {
        self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e.is_empty()
    }

    pub fn columns(&self) -> impl Iterator<Item = (Color, Color, Color)> + '_ {
        (0..self.len()).map(|i| (self.x[i], self.e[i], self.y[i]))
    }

    /// Columns oriented with x <= y and sorted by (e, x, y). Two matrices
    /// describe the same colored edge multiset iff their canonical forms match.
    pub fn canonical(&self) -> TopcodeMatrix {
        let mut cols: Vec<(Color, Color, Color)> = self
            .columns()
            .map(|(x, e, y)| (x.min(y), e, x.max(y)))
            .collect();
        cols.sort_by_key(|&(x, e, y)| (e, x, y));
        TopcodeMatrix::from_columns(cols).expect("entries already validated")
    }

    /// The 3q entries row by row: x row, e row, y row.
    pub fn entries(&self) -> Vec<Color> {
        self.x
            .iter()
            .chain(&self.e)
            .chain(&self.y)
            .copied()
            .collect()
    }

    /// Sorted distinct vertex colors.
    pub fn vertex_colors(&self) -> Vec<Color> {
        let set: BTreeSet<Color> = self.x.iter().chain(&self.y).copied().collect();
        set.into_iter().collect()
    }

    /// Relations e = theta(x, y) that hold column-wise: "difference" for
    /// e = |x - y|, and each W-magic kind whose value is the same on every
    /// column.
    pub fn relations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.is_empty() {
            return out;
        }
        if self.columns().all(|(x, e, y)| e == (x - y).abs()) {
            out.push("difference".to_string());
        }
        for kind in MagicKind::ALL {
            let values: BTreeSet<Color> = self
                .columns()
                .map(|(x, e, y)| kind.value(x, e, y))
                .collect();
            if values.len() == 1 {
                out.push(kind.name().to_string());
            }
        }
        out
    }

    pub fn is_evaluated(&self) -> bool {
        !self.relations().is_empty()
    }

    /// First 8 bytes of the SHA-256 of the text form, in hex.
    pub fn id(&self) -> String {
        let digest = Sha256::digest(self.to_string().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for TopcodeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in [&self.x, &self.e, &self.y].into_iter().enumerate() {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            if i > 0 {
                f.write_str("\n")?;
            }
            f.write_str(&line.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for TopcodeMatrix {
    type Err = Error;

    /// Three whitespace-separated integer rows; blank lines are skipped.
    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<Vec<Color>> = s
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|t| {
                        t.parse::<Color>()
                            .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let [x, e, y]: [Vec<Color>; 3] = rows
            .try_into()
            .map_err(|r: Vec<_>| Error::Parse(format!("expected 3 rows, found {}", r.len())))?;
        TopcodeMatrix::new(x, e, y)
    }
}

/// One column per edge: (smaller endpoint color, edge color, larger
/// endpoint color), columns sorted by edge color.
pub fn to_topcode_matrix(g: &Graph, c: &TotalColoring) -> Result<TopcodeMatrix> {
    let mut cols = Vec::with_capacity(g.edge_count());
    for (_, a, e, b) in c.triples(g)? {
        cols.push((a.min(b), e, a.max(b)));
    }
    cols.sort_by_key(|&(x, e, y)| (e, x, y));
    TopcodeMatrix::from_columns(cols)
}

/// All set partitions of `n` items as restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur[i] = b;
            rec(i + 1, max.max(b), cur, out);
        }
    }
    if n == 0 {
        out.push(Vec::new());
    } else {
        rec(1, 0, &mut cur, &mut out);
    }
    out
}

/// Endpoint slot 2i is column i's x, slot 2i+1 its y.
struct ColorClass {
    color: Color,
    slots: Vec<usize>,
    partitions: Vec<Vec<usize>>,
}

fn build_realization(
    m: &TopcodeMatrix,
    classes: &[ColorClass],
    mut index: u64,
    cap: usize,
) -> Option<(Graph, TotalColoring)> {
    let q = m.len();
    let mut slot_vertex = vec![0u32; 2 * q];
    let mut vertex_color: Vec<Color> = Vec::new();
    for class in classes {
        let radix = class.partitions.len() as u64;
        let rgs = &class.partitions[(index % radix) as usize];
        index /= radix;
        let base = vertex_color.len() as u32;
        let blocks = rgs.iter().max().map_or(0, |b| b + 1);
        vertex_color.extend(std::iter::repeat_n(class.color, blocks));
        if vertex_color.len() > cap {
            return None;
        }
        for (&slot, &block) in class.slots.iter().zip(rgs) {
            slot_vertex[slot] = base + block as u32;
        }
    }
    // Renumber by first appearance across columns so ids are stable.
    let mut renumber: BTreeMap<u32, u32> = BTreeMap::new();
    for &v in &slot_vertex {
        let next = renumber.len() as u32;
        renumber.entry(v).or_insert(next);
    }
    let mut g = Graph::new();
    let mut vc = BTreeMap::new();
    for (&old, &new) in &renumber {
        g.add_vertex(VertexId(new));
        vc.insert(VertexId(new), vertex_color[old as usize]);
    }
    let mut ec = BTreeMap::new();
    for i in 0..q {
        let a = VertexId(renumber[&slot_vertex[2 * i]]);
        let b = VertexId(renumber[&slot_vertex[2 * i + 1]]);
        if a == b || g.has_edge(a, b) {
            return None;
        }
        g.add_edge(a, b).ok()?;
        ec.insert(Edge::new(a, b), m.e[i]);
    }
    if !g.is_connected() {
        return None;
    }
    Some((
        g,
        TotalColoring {
            vertex_colors: vc,
            edge_colors: ec,
        },
    ))
}

/// Every simple connected graph, up to colored isomorphism, whose coloring
/// reproduces `m`: endpoint slots of equal color are identified in every
/// consistent way. Results are ordered by the search order.
pub fn realize_matrix(m: &TopcodeMatrix, cap: usize) -> Result<Vec<(Graph, TotalColoring)>> {
    if cap > DEFAULT_VERTEX_CAP {
        return Err(Error::VertexCap {
            cap: DEFAULT_VERTEX_CAP,
            count: cap,
        });
    }
    let distinct = m.vertex_colors().len();
    if distinct > cap {
        return Err(Error::VertexCap {
            cap,
            count: distinct,
        });
    }
    let mut by_color: BTreeMap<Color, Vec<usize>> = BTreeMap::new();
    for (i, (x, _, y)) in m.columns().enumerate() {
        by_color.entry(x).or_default().push(2 * i);
        by_color.entry(y).or_default().push(2 * i + 1);
    }
    let mut total: u64 = 1;
    let mut classes = Vec::with_capacity(by_color.len());
    for (color, slots) in by_color {
        let partitions = set_partitions(slots.len());
        total = total
            .checked_mul(partitions.len() as u64)
            .filter(|&t| t <= REALIZE_SEARCH_LIMIT)
            .ok_or_else(|| Error::Precondition("realization search space too large".into()))?;
        classes.push(ColorClass {
            color,
            slots,
            partitions,
        });
    }
    debug!(
        "realize_matrix: {total} slot assignments over {} colors",
        classes.len()
    );
    let found = batch::filter_map_range(total, |i| build_realization(m, &classes, i, cap));
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (g, c) in found {
        let form = canonical_form_labeled(&g, &c.vertex_colors, &c.edge_colors, cap)?;
        if seen.insert(form) {
            out.push((g, c));
        }
    }
    Ok(out)
}

/// One vertex per distinct color (ids by ascending color), one edge per
/// column. The result may be disconnected.
pub fn realize_merged(m: &TopcodeMatrix) -> Result<(Graph, TotalColoring)> {
    let colors = m.vertex_colors();
    let id: BTreeMap<Color, VertexId> = colors
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, VertexId(i as u32)))
        .collect();
    let mut g = Graph::from_parts(id.values().copied(), [])?;
    let mut ec = BTreeMap::new();
    for (x, e, y) in m.columns() {
        let (a, b) = (id[&x], id[&y]);
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        let edge = Edge::new(a, b);
        if g.has_edge(a, b) {
            return Err(Error::MultiEdge(edge));
        }
        g.add_edge(a, b)?;
        ec.insert(edge, e);
    }
    let vc = id.iter().map(|(&c, &v)| (v, c)).collect();
    Ok((
        g,
        TotalColoring {
            vertex_colors: vc,
            edge_colors: ec,
        },
    ))
}

/// Decimal string serde for big integers.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10)
            .ok_or_else(|| serde::de::Error::custom("not a decimal integer"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub matrix_id: String,
    #[serde(with = "decimal")]
    pub perm_index: BigUint,
    /// Rule shared by a twin pair; modeled as the permutation index.
    #[serde(with = "decimal")]
    pub rule: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberString {
    pub digits: String,
    pub provenance: Provenance,
    /// Permutation indices yielding the same digits by swapping equal
    /// entries: the product of multiplicity factorials.
    #[serde(with = "decimal")]
    pub equal_entry_collisions: BigUint,
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Number of orderings of the 3q entries, (3q)!.
pub fn string_count(m: &TopcodeMatrix) -> BigUint {
    factorial(3 * m.len())
}

/// Lehmer-code unranking: index 0 is the identity.
pub fn unrank_permutation(n: usize, index: &BigUint) -> Result<Vec<usize>> {
    if *index >= factorial(n) {
        return Err(Error::IndexOutOfRange);
    }
    let mut pool: Vec<usize> = (0..n).collect();
    let mut rest = index.clone();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let f = factorial(n - 1 - i);
        let d = (&rest / &f).to_usize().expect("digit below n");
        rest %= &f;
        out.push(pool.remove(d));
    }
    Ok(out)
}

/// Concatenates the row-major entries of `m` in the order given by
/// permutation `perm_index`.
pub fn emit_string(m: &TopcodeMatrix, perm_index: &BigUint) -> Result<NumberString> {
    let entries = m.entries();
    let perm = unrank_permutation(entries.len(), perm_index)?;
    let digits: String = perm.iter().map(|&i| entries[i].to_string()).collect();
    let mut mult: BTreeMap<Color, usize> = BTreeMap::new();
    for &v in &entries {
        *mult.entry(v).or_default() += 1;
    }
    let collisions = mult
        .values()
        .fold(BigUint::one(), |acc, &k| acc * factorial(k));
    Ok(NumberString {
        digits,
        provenance: Provenance {
            matrix_id: m.id(),
            perm_index: perm_index.clone(),
            rule: perm_index.clone(),
        },
        equal_entry_collisions: collisions,
    })
}

/// True when the digits of `s` are exactly what `m` emits under `rule`.
pub fn rederives(m: &TopcodeMatrix, s: &NumberString, rule: &BigUint) -> bool {
    emit_string(m, rule).is_ok_and(|t| t.digits == s.digits && s.provenance.rule == *rule)
}

impl NumberString {
    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digit_values(&self) -> impl Iterator<Item = u8> + '_ {
        self.digits.bytes().map(|b| b - b'0')
    }
}
