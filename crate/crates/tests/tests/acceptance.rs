//! Acceptance suite: one PASS/FAIL line per criterion, exact integer
//! comparisons throughout. Runs without the libtest harness so every line
//! is printed; exits non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::IndexedRandom;
use rand::{Rng, RngCore};
use topocode_core::canon::canonical_form_labeled;
use topocode_core::caterpillar::{
    caterpillar_all_magic, odd_graceful_subdivision, CaterpillarSpec,
};
use topocode_core::coloring::{odd_range, ColoredGraph};
use topocode_core::counting::{a_leaf_count, partition_a, partition_n};
use topocode_core::fixtures;
use topocode_core::graph::LeafPlan;
use topocode_core::lattice::{
    check_piecewise, collapse_same_colors, larvc_compose, ColoredBase, CompositionRecipe,
};
use topocode_core::rla::{color_tree, rla_continuous, rla_single, LeafOrder};
use topocode_core::topcode::{
    emit_string, realize_matrix, realize_merged, to_topcode_matrix, NumberString,
};
use topocode_core::transforms::{odd_equivalence_transform, set_dual_transform, TransformKind};
use topocode_core::validators::{
    check_graceful, check_odd_graceful, check_twin, check_w_magic, ColoringClass,
};
use topocode_core::vault::{authenticate, vault_decrypt, vault_encrypt, AuthBundle};
use topocode_core::{Color, Error, Graph, MagicKind, TotalColoring, VertexId};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn edge_colors_sorted(c: &TotalColoring) -> Vec<Color> {
    let mut v: Vec<Color> = c.edge_colors.values().copied().collect();
    v.sort_unstable();
    v
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    if t > limit {
        Err(format!("took {t:?}, limit {limit:?}"))
    } else {
        Ok(t)
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let b1 = fixtures::b1_matrix();
    let b10 = fixtures::b10_matrix();
    let (g1, c1) = realize_merged(&b1).map_err(|e| e.to_string())?;
    let r1 = check_odd_graceful(&g1, &c1, false).map_err(|e| e.to_string())?;
    ensure!(r1.valid, "B1 is not odd-graceful: {:?}", r1.failure);
    ensure!(
        edge_colors_sorted(&c1) == odd_range(10),
        "B1 edge set differs"
    );
    let v1: Vec<Color> = c1.vertex_colors.values().copied().collect();
    ensure!(v1 == fixtures::B1_VERTEX_COLORS, "B1 vertex colors {v1:?}");
    ensure!(
        to_topcode_matrix(&g1, &c1).map_err(|e| e.to_string())? == b1.canonical(),
        "B1 does not re-extract to its matrix"
    );

    // B10 realizes as a disconnected twin side: check it column by column.
    ensure!(
        b10.columns().all(|(x, e, y)| e == (x - y).abs()),
        "B10 has a column with e != |x - y|"
    );
    let mut e10 = b10.e.clone();
    e10.sort_unstable();
    ensure!(e10 == odd_range(10), "B10 edge set differs");
    let (g10, c10) = realize_merged(&b10).map_err(|e| e.to_string())?;
    let twin =
        check_twin(&g1, &c1, &g10, &c10, ColoringClass::OddGraceful).map_err(|e| e.to_string())?;
    ensure!(
        twin.union_set == (0..=20).collect::<Vec<_>>(),
        "union {:?}",
        twin.union_set
    );
    ensure!(twin.perfect, "perfect flag false");
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!(
        "B1 and B10 odd-graceful on [1,19]^o, union [0,20], perfect twin ({t:?})"
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = common::rng(2);
    for case in 0..200 {
        let spec = common::random_spec(&mut rng, 12, 20);
        let (g, f) = odd_graceful_subdivision(&spec).map_err(|e| format!("{spec:?}: {e}"))?;
        let rep = check_odd_graceful(&g, &f, true).map_err(|e| e.to_string())?;
        ensure!(
            rep.valid && rep.is_set_ordered && rep.is_labeling,
            "case {case} {spec:?}: not set-ordered"
        );
        let bip = rep.bipartition.unwrap();
        let q = g.edge_count() as Color;
        let max_x = bip.x_side.iter().map(|v| f.vertex_colors[v]).max().unwrap();
        let min_y = bip.y_side.iter().map(|v| f.vertex_colors[v]).min().unwrap();
        let all = caterpillar_all_magic(&spec).map_err(|e| e.to_string())?;
        let expect = [
            (MagicKind::EdgeDifference, 2 * q),
            (MagicKind::GracefulDifference, min_y - max_x - 1),
            (MagicKind::FelicitousDifference, max_x),
            (MagicKind::EdgeMagic, 2 * q + max_x),
        ];
        for (kind, k) in expect {
            let (c, cert) = &all[&kind];
            ensure!(
                cert.constant == k,
                "case {case} {spec:?} {kind}: constant {} != {k}",
                cert.constant
            );
            let again = check_w_magic(&g, c, kind).map_err(|e| e.to_string())?;
            ensure!(
                again.constant == k && again.is_odd_edge && again.is_set_ordered,
                "case {case} {kind}: recheck"
            );
        }
    }
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!(
        "200 caterpillars, four exact constants each ({t:?})"
    ))
}

/// Set-ordered odd-edge labeling of the given kind on a random caterpillar.
fn random_labeling(rng: &mut impl Rng, kind: MagicKind) -> (Graph, TotalColoring) {
    let spec = common::random_spec(rng, 6, 10);
    let (g, f) = odd_graceful_subdivision(&spec).unwrap();
    let out = odd_equivalence_transform(&g, &f, kind).unwrap();
    (g, out.coloring)
}

fn random_plan(rng: &mut impl Rng, g: &Graph, max_m: usize) -> LeafPlan {
    let vs: Vec<VertexId> = g.vertices().collect();
    let m = rng.random_range(1..=max_m);
    let mut counts = BTreeMap::new();
    for _ in 0..m {
        *counts.entry(*vs.choose(rng).unwrap()).or_insert(0) += 1;
    }
    LeafPlan { counts }
}

fn criterion_3() -> Outcome {
    let mut rng = common::rng(3);
    let mut rejected = BTreeMap::new();
    for kind in MagicKind::ALL {
        let mut done = 0;
        while done < 100 {
            let (g, f) = random_labeling(&mut rng, kind);
            let plan = random_plan(&mut rng, &g, 15);
            let n = check_w_magic(&g, &f, kind).unwrap().constant;
            let r = match rla_single(&g, &f, &plan, kind) {
                Ok(r) => r,
                Err(Error::NegativeLeafColor { .. }) => {
                    *rejected.entry(kind).or_insert(0usize) += 1;
                    continue;
                }
                Err(e) => return Err(format!("{kind}: {e}")),
            };
            let m = plan.total() as Color;
            let expect = match kind {
                MagicKind::GracefulDifference => (n - 2 * m).abs(),
                _ => n + 2 * m,
            };
            let cert = check_w_magic(&r.graph, &r.coloring, kind).map_err(|e| e.to_string())?;
            ensure!(
                cert.constant == expect && r.constant_after == expect,
                "{kind}: constant {} != {expect}",
                cert.constant
            );
            let q = g.edge_count();
            ensure!(
                edge_colors_sorted(&r.coloring) == odd_range(q + m as usize),
                "{kind}: edge set"
            );
            for e in g.edges() {
                ensure!(
                    r.coloring.edge_colors[&e] == f.edge_colors[&e] + 2 * m,
                    "{kind}: core edge {e} not shifted"
                );
            }
            done += 1;
        }
    }
    let note = if rejected.is_empty() {
        String::new()
    } else {
        let parts: Vec<String> = rejected.iter().map(|(k, n)| format!("{k} {n}")).collect();
        format!(
            "; plans resampled after a negative leaf color: {}",
            parts.join(", ")
        )
    };
    Ok(format!(
        "4 x 100 single rounds, exact constants and edge sets{note}"
    ))
}

fn criterion_4() -> Outcome {
    let mut rng = common::rng(4);
    let mut rounds = 0;
    for kind in MagicKind::ALL {
        for order_name in ["ascending", "descending", "random"] {
            for _ in 0..10 {
                let order = LeafOrder::parse(order_name, rng.next_u64()).unwrap();
                let n = rng.random_range(2..=12);
                let mut g = common::random_tree(&mut rng, n);
                let mut c = color_tree(&g, kind).map_err(|e| e.to_string())?;
                let mut k = check_w_magic(&g, &c, kind).unwrap().constant;
                for _ in 0..3 {
                    let plan = random_plan(&mut rng, &g, 6);
                    let m = plan.total() as Color;
                    let r = rla_continuous(&g, &c, &plan, kind, order)
                        .map_err(|e| format!("{kind} {order}: {e}"))?;
                    let expect = match kind {
                        MagicKind::EdgeMagic | MagicKind::EdgeDifference => k + 2 * m,
                        _ => k,
                    };
                    let cert =
                        check_w_magic(&r.graph, &r.coloring, kind).map_err(|e| e.to_string())?;
                    ensure!(
                        cert.constant == expect,
                        "{kind} {order}: constant {} != {expect}",
                        cert.constant
                    );
                    ensure!(cert.is_odd_edge, "{kind} {order}: not odd-edge");
                    for v in g.vertices() {
                        ensure!(
                            r.coloring.vertex_colors[&v] == c.vertex_colors[&v],
                            "{kind}: core vertex moved"
                        );
                    }
                    (g, c, k) = (r.graph, r.coloring, expect);
                    rounds += 1;
                }
            }
        }
    }
    Ok(format!("{rounds} continuous rounds over 3 orders; +2m for edge-magic/edge-difference, fixed otherwise"))
}

fn criterion_5() -> Outcome {
    let mut rng = common::rng(5);
    for i in 0..100 {
        let n = rng.random_range(2..=18);
        let t = common::random_tree(&mut rng, n);
        for kind in MagicKind::ALL {
            let c = color_tree(&t, kind).map_err(|e| format!("tree {i} {kind}: {e}"))?;
            let cert = check_w_magic(&t, &c, kind).map_err(|e| format!("tree {i} {kind}: {e}"))?;
            ensure!(cert.is_odd_edge, "tree {i} {kind}: not odd-edge");
            c.check_covers(&t).map_err(|e| e.to_string())?;
        }
    }
    Ok("100 random trees, all four kinds valid and odd-edge".into())
}

fn criterion_6() -> Outcome {
    let mut rng = common::rng(6);
    for i in 0..100 {
        let spec = common::random_spec(&mut rng, 8, 12);
        let (g, f) = common::graceful_caterpillar(&spec);
        let rep = check_graceful(&g, &f, true).map_err(|e| e.to_string())?;
        ensure!(
            rep.valid,
            "case {i}: generated labeling is not set-ordered graceful"
        );
        let q = g.edge_count() as Color;
        let t = |k| {
            set_dual_transform(&g, &f, k)
                .map(|o| o.coloring)
                .map_err(|e| e.to_string())
        };
        let (dual, dual_star) = (t(TransformKind::Dual)?, t(TransformKind::DualStar)?);
        for v in g.vertices() {
            ensure!(
                f.vertex_colors[&v] + dual.vertex_colors[&v] == q,
                "case {i}: vertex sum at {v}"
            );
        }
        for e in g.edges() {
            ensure!(
                f.edge_colors[&e] + dual_star.edge_colors[&e] == q + 1,
                "case {i}: edge sum at {e}"
            );
        }
        for (a, b) in [
            (TransformKind::SetX, TransformKind::SetXStar),
            (TransformKind::SetY, TransformKind::SetYStar),
        ] {
            let (h, hs) = (t(a)?, t(b)?);
            for e in g.edges() {
                ensure!(
                    h.edge_colors[&e] + hs.edge_colors[&e] == q + 1,
                    "case {i}: {a}/{b} edge sum at {e}"
                );
            }
        }
        let twice =
            set_dual_transform(&g, &dual, TransformKind::Dual).map_err(|e| e.to_string())?;
        ensure!(twice.coloring == f, "case {i}: dual is not an involution");
    }
    Ok("100 graceful caterpillars: vertex sums q, edge sums q+1, dual involution".into())
}

fn criterion_7_partitions() -> Outcome {
    for m in 0..=30 {
        for k in 0..=m + 2 {
            let brute = common::enumerate_partitions(m, k).len() as u128;
            let a = partition_a(m, k).map_err(|e| e.to_string())?;
            ensure!(a == brute, "A({m},{k}) = {a}, enumeration gives {brute}");
        }
        if m >= 1 {
            let sum: u128 = (1..=m).map(|k| partition_n(m, k).unwrap()).sum();
            ensure!(
                sum == partition_a(m, m).unwrap(),
                "sum of n({m},k) differs from A({m},{m})"
            );
        }
    }
    for p in 1..=10 {
        for m in 1..=10 {
            let r = a_leaf_count(p, m).map_err(|e| e.to_string())?;
            ensure!(r.k_exceeds_p == (m > p), "A_leaf({p},{m}) flag k > p wrong");
        }
    }
    Ok("A(m,k) matches enumeration for m <= 30, sum of n(m,k) = A(m,m), k > p flagged".into())
}

fn criterion_7_a_leaf_forms() -> Outcome {
    let mut disagreements = Vec::new();
    for p in 1..=10 {
        for m in 1..=p {
            let r = a_leaf_count(p, m).map_err(|e| e.to_string())?;
            if r.falling != r.simplified {
                disagreements.push(format!("p={p} m={m}: {} vs {}", r.falling, r.simplified));
            }
        }
    }
    ensure!(
        disagreements.is_empty(),
        "falling-factorial and simplified A_leaf forms disagree with k <= p in {} cases, first {}",
        disagreements.len(),
        disagreements[0]
    );
    Ok("A_leaf forms agree for every k <= p".into())
}

fn random_colored_graph(rng: &mut impl Rng) -> (Graph, TotalColoring) {
    loop {
        let n = rng.random_range(2..=7u32);
        let extra = rng.random_range(0..=3);
        let g = common::random_connected(rng, n, extra);
        if g.edge_count() > 8 {
            continue;
        }
        let mut pool: Vec<Color> = (0..=16).collect();
        let mut vc = BTreeMap::new();
        for v in g.vertices() {
            let i = rng.random_range(0..pool.len());
            vc.insert(v, pool.swap_remove(i));
        }
        let mut c = TotalColoring::from_vertex_colors(&g, vc).unwrap();
        for col in c.edge_colors.values_mut() {
            *col = rng.random_range(1..=20);
        }
        return (g, c);
    }
}

fn tampered_bundles(b: &AuthBundle) -> Vec<(String, AuthBundle)> {
    let mut out = Vec::new();
    for side in ["public", "private"] {
        let cg = |x: &AuthBundle| -> ColoredGraph {
            if side == "public" {
                x.public.clone()
            } else {
                x.private.clone()
            }
        };
        let put = |x: &mut AuthBundle, v: ColoredGraph| {
            if side == "public" {
                x.public = v
            } else {
                x.private = v
            }
        };
        let base = cg(b);
        for (&v, &old) in &base.coloring.vertex_colors {
            for new in 0..=21 {
                if new != old {
                    let mut t = b.clone();
                    let mut s = base.clone();
                    s.coloring.vertex_colors.insert(v, new);
                    put(&mut t, s);
                    out.push((format!("{side} vertex {v} -> {new}"), t));
                }
            }
        }
        for (&e, &old) in &base.coloring.edge_colors {
            for new in 0..=21 {
                if new != old {
                    let mut t = b.clone();
                    let mut s = base.clone();
                    s.coloring.edge_colors.insert(e, new);
                    put(&mut t, s);
                    out.push((format!("{side} edge {e} -> {new}"), t));
                }
            }
        }
    }
    for rule in 1u32..=6 {
        let mut t = b.clone();
        t.rule = BigUint::from(rule);
        out.push((format!("rule -> {rule}"), t));
    }
    out
}

fn criterion_8() -> Outcome {
    let mut rng = common::rng(8);
    let mut realizations = 0;
    for i in 0..150 {
        let (g, c) = random_colored_graph(&mut rng);
        let m = to_topcode_matrix(&g, &c).map_err(|e| e.to_string())?;
        let found = realize_matrix(&m, 12).map_err(|e| format!("graph {i}: {e}"))?;
        let own = canonical_form_labeled(&g, &c.vertex_colors, &c.edge_colors, 12).unwrap();
        let mut hit = false;
        for (h, hc) in &found {
            ensure!(
                to_topcode_matrix(h, hc).unwrap() == m,
                "graph {i}: a realization re-extracts differently"
            );
            hit |=
                canonical_form_labeled(h, &hc.vertex_colors, &hc.edge_colors, 12).unwrap() == own;
        }
        ensure!(
            hit,
            "graph {i}: the source graph is not among its realizations"
        );
        realizations += found.len();
    }

    let bundle = fixtures::auth_bundle().map_err(|e| e.to_string())?;
    for len in [0usize, 1, 7, 64, 1000] {
        let data: Vec<u8> = (0..len).map(|_| rng.random()).collect();
        let sealed = vault_encrypt(&data, &bundle).map_err(|e| e.to_string())?;
        let opened =
            vault_decrypt(&sealed, &bundle.private, bundle.class).map_err(|e| e.to_string())?;
        ensure!(opened == data, "vault round trip failed for {len} bytes");
    }

    let (s_pub, s_priv) = bundle.strings().map_err(|e| e.to_string())?;
    ensure!(
        authenticate(&bundle, &s_pub, &s_priv).accepted,
        "fixture does not authenticate"
    );
    let mut tampers = 0;
    for (what, t) in tampered_bundles(&bundle) {
        ensure!(
            !authenticate(&t, &s_pub, &s_priv).accepted,
            "tamper accepted: {what}"
        );
        tampers += 1;
    }
    let digit_tamper = |s: &NumberString, i: usize| {
        let mut t = s.clone();
        let mut bytes = t.digits.into_bytes();
        bytes[i] = if bytes[i] == b'9' { b'0' } else { bytes[i] + 1 };
        t.digits = String::from_utf8(bytes).unwrap();
        t
    };
    for i in 0..s_pub.digits.len() {
        ensure!(
            !authenticate(&bundle, &digit_tamper(&s_pub, i), &s_priv).accepted,
            "public digit {i} tamper accepted"
        );
        tampers += 1;
    }
    for i in 0..s_priv.digits.len() {
        ensure!(
            !authenticate(&bundle, &s_pub, &digit_tamper(&s_priv, i)).accepted,
            "private digit {i} tamper accepted"
        );
        tampers += 1;
    }
    let other_rule = emit_string(&bundle.private_matrix().unwrap(), &BigUint::from(1u32)).unwrap();
    ensure!(
        !authenticate(&bundle, &s_pub, &other_rule).accepted,
        "string under another rule accepted"
    );
    Ok(format!(
        "150 graphs round-trip ({realizations} realizations), vault round-trips, {} single-field tampers rejected",
        tampers + 1
    ))
}

fn gd_base() -> ColoredBase {
    let members = [vec![1], vec![2], vec![1, 1]]
        .into_iter()
        .map(|s| {
            let (g, c) = odd_graceful_subdivision(&CaterpillarSpec::new(s)).unwrap();
            ColoredGraph::new(g, c)
        })
        .collect();
    ColoredBase::new(members, MagicKind::GracefulDifference).unwrap()
}

fn criterion_9() -> Outcome {
    let base = gd_base();
    let kind = base.kind;
    let mut rng = common::rng(9);
    for case in 0..50 {
        let coefficients: Vec<usize> = loop {
            let c: Vec<usize> = (0..3).map(|_| rng.random_range(0..=2)).collect();
            if (1..=5).contains(&c.iter().sum::<usize>()) {
                break c;
            }
        };
        let recipe0 = CompositionRecipe {
            coefficients: coefficients.clone(),
            leaf_plans: BTreeMap::new(),
            order: LeafOrder::parse(
                ["ascending", "descending", "random"]
                    .choose(&mut rng)
                    .unwrap(),
                rng.next_u64(),
            )
            .unwrap(),
            coincide: Vec::new(),
        };
        let copies = recipe0.copy_members();
        let mut leaf_plans = BTreeMap::new();
        let mut pieces = Vec::new();
        for (copy, &k) in copies.iter().enumerate() {
            let m = &base.members[k];
            if rng.random_bool(0.5) {
                let plan = random_plan(&mut rng, &m.graph, 4);
                let r = rla_continuous(&m.graph, &m.coloring, &plan, kind, recipe0.order).unwrap();
                leaf_plans.insert(copy, plan);
                pieces.push(r.coloring);
            } else {
                pieces.push(m.coloring.clone());
            }
        }
        let mut coincide = Vec::new();
        for i in 1..pieces.len() {
            let j = rng.random_range(0..i);
            let by_color = |c: &TotalColoring| -> BTreeMap<Color, VertexId> {
                c.vertex_colors.iter().map(|(&v, &k)| (k, v)).collect()
            };
            let (ci, cj) = (by_color(&pieces[i]), by_color(&pieces[j]));
            let shared: Vec<Color> = ci.keys().filter(|k| cj.contains_key(k)).copied().collect();
            let color = *shared.choose(&mut rng).unwrap();
            coincide.push(((j, cj[&color]), (i, ci[&color])));
        }
        let recipe = CompositionRecipe {
            leaf_plans,
            coincide,
            ..recipe0
        };
        let out = larvc_compose(&base, &recipe).map_err(|e| format!("case {case}: {e}"))?;
        check_piecewise(&out).map_err(|e| format!("case {case}: {e}"))?;
        for p in &out.report.pieces {
            let keep: BTreeSet<VertexId> = p.vertex_map.values().copied().collect();
            let piece = out.graph.induced(&keep);
            ensure!(
                piece.edge_count() == p.edges.len(),
                "case {case}: piece {} picked up extra edges",
                p.copy
            );
            let cert = check_w_magic(&piece, &out.coloring.restrict(&piece).unwrap(), kind)
                .map_err(|e| e.to_string())?;
            ensure!(
                cert.constant == p.constant,
                "case {case}: piece {} constant",
                p.copy
            );
        }

        let col = collapse_same_colors(&out.graph, &out.coloring).map_err(|e| e.to_string())?;
        ensure!(
            col.graph.edge_count() == out.graph.edge_count(),
            "case {case}: collapse lost edges"
        );
        for e in out.graph.edges() {
            let (a, b) = (col.vertex_map[&e.lo()], col.vertex_map[&e.hi()]);
            let ne = topocode_core::Edge::new(a, b);
            let before = out.coloring.edge_colors[&e];
            ensure!(
                col.coloring.edge_colors.get(&ne) == Some(&before),
                "case {case}: edge color changed at {e}"
            );
            let v0 = kind.value(
                out.coloring.vertex_colors[&e.lo()],
                before,
                out.coloring.vertex_colors[&e.hi()],
            );
            let v1 = kind.value(
                col.coloring.vertex_colors[&a],
                before,
                col.coloring.vertex_colors[&b],
            );
            ensure!(v0 == v1, "case {case}: equation value changed at {e}");
        }
    }
    Ok("50 compositions over a 3-member base validate piecewise; collapse keeps edge colors and values".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 golden fixtures", criterion_1),
        ("2 odd-graceful equivalence suite", criterion_2),
        ("3 single-round leaf adding", criterion_3),
        ("4 continuous leaf adding", criterion_4),
        ("5 tree colorings", criterion_5),
        ("6 set-dual matchings", criterion_6),
        ("7 partition counts", criterion_7_partitions),
        ("7 A_leaf form agreement", criterion_7_a_leaf_forms),
        ("8 codec", criterion_8),
        ("9 lattice", criterion_9),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance check(s) failed");
        std::process::exit(1);
    }
}
