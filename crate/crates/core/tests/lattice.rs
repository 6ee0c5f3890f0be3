//! Graphic-lattice compositions over a small graceful-difference base.

mod common;

use std::collections::BTreeMap;

use topocode_core::caterpillar::{odd_graceful_subdivision, CaterpillarSpec};
use topocode_core::lattice::{
    check_piecewise, collapse_same_colors, construction_compose, larvc_compose, ColoredBase,
    CompositionRecipe, ConstructionMode,
};
use topocode_core::rla::LeafOrder;
use topocode_core::{Color, ColoredGraph, MagicKind, VertexId};

fn base() -> ColoredBase {
    let members = [vec![1], vec![2], vec![1, 1]]
        .into_iter()
        .map(|s| {
            let (g, c) = odd_graceful_subdivision(&CaterpillarSpec::new(s)).unwrap();
            ColoredGraph::new(g, c)
        })
        .collect();
    ColoredBase::new(members, MagicKind::GracefulDifference).unwrap()
}

fn vertex_of(base: &ColoredBase, member: usize, color: Color) -> VertexId {
    let c = &base.members[member].coloring;
    *c.vertex_colors.iter().find(|(_, &k)| k == color).unwrap().0
}

fn chain_recipe(base: &ColoredBase) -> CompositionRecipe {
    // copies: 0 -> member 0, 1 -> member 1, 2 -> member 2; glue on color 0
    let coincide = (1..3)
        .map(|i| {
            (
                (i - 1, vertex_of(base, i - 1, 0)),
                (i, vertex_of(base, i, 0)),
            )
        })
        .collect();
    CompositionRecipe {
        coefficients: vec![1, 1, 1],
        leaf_plans: BTreeMap::new(),
        order: LeafOrder::Ascending,
        coincide,
    }
}

#[test]
fn linear_chain_of_trees_is_a_tree() {
    let base = base();
    let out = construction_compose(&base, &chain_recipe(&base), ConstructionMode::Linear).unwrap();
    assert!(out.graph.is_tree());
    let q: usize = base.members.iter().map(|m| m.graph.edge_count()).sum();
    assert_eq!(out.graph.edge_count(), q);
    check_piecewise(&out).unwrap();
    assert_eq!(out.report.constants, vec![0, 0, 0]);
}

#[test]
fn nonlinear_mode_refuses_an_all_tree_base() {
    let base = base();
    assert!(
        construction_compose(&base, &chain_recipe(&base), ConstructionMode::Nonlinear).is_err()
    );
}

#[test]
fn collapse_of_a_star_composite_merges_repeated_colors() {
    let base = base();
    // two copies of the 2-leaf star glued at color 0 share no other vertex,
    // so their leaf colors repeat in the composite
    let recipe = CompositionRecipe {
        coefficients: vec![0, 2, 0],
        leaf_plans: BTreeMap::new(),
        order: LeafOrder::Ascending,
        coincide: vec![((0, vertex_of(&base, 1, 0)), (1, vertex_of(&base, 1, 0)))],
    };
    let out = larvc_compose(&base, &recipe).unwrap();
    assert_eq!(out.graph.vertex_count(), 5);
    let col = collapse_same_colors(&out.graph, &out.coloring).unwrap();
    assert!(col.graph.vertex_count() <= out.graph.vertex_count());
    let distinct: std::collections::BTreeSet<Color> =
        out.coloring.vertex_colors.values().copied().collect();
    assert!(col.graph.vertex_count() >= distinct.len());
    for e in out.graph.edges() {
        let ne = topocode_core::Edge::new(col.vertex_map[&e.lo()], col.vertex_map[&e.hi()]);
        assert_eq!(col.coloring.edge_colors[&ne], out.coloring.edge_colors[&e]);
    }
}
