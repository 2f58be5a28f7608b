//! Built-in example graphs used by tests, the CLI and `verify all`.

use std::collections::BTreeMap;

use crate::graph::{MultiGraph, WeightedGraph};
use crate::label::{EdgeLabel, VertexId};

fn letter(i: usize) -> String {
    char::from(b'a' + u8::try_from(i).expect("small index")).to_string()
}

/// Two vertices `u`, `v` joined by edge `e`.
pub fn single_edge() -> MultiGraph {
    MultiGraph::from_edges(&[("e", "u", "v")]).expect("valid fixture")
}

/// Cycle on `v1..vn`; edge `a` joins `v1 v2`, `b` joins `v2 v3`, and so on.
pub fn cycle(n: usize) -> MultiGraph {
    assert!((2..=26).contains(&n), "cycle length out of range");
    MultiGraph::new(
        (1..=n).map(|i| VertexId::new(format!("v{i}"))),
        (0..n).map(|i| {
            (
                EdgeLabel::new(letter(i)),
                VertexId::new(format!("v{}", i + 1)),
                VertexId::new(format!("v{}", (i + 1) % n + 1)),
            )
        }),
    )
    .expect("valid fixture")
}

pub fn triangle() -> MultiGraph {
    cycle(3)
}

/// `n` parallel edges `a, b, ...` between `u` and `v`.
pub fn theta(n: usize) -> MultiGraph {
    assert!((1..=26).contains(&n), "theta size out of range");
    MultiGraph::new(
        [VertexId::new("u"), VertexId::new("v")],
        (0..n).map(|i| (EdgeLabel::new(letter(i)), VertexId::new("u"), VertexId::new("v"))),
    )
    .expect("valid fixture")
}

/// Triangle `a b d` with the side `b d` doubled: `e3 = ab`, `e4 = ad`, `e1, e2 = bd`.
pub fn figure1() -> MultiGraph {
    MultiGraph::from_edges(&[
        ("e1", "b", "d"),
        ("e2", "b", "d"),
        ("e3", "a", "b"),
        ("e4", "a", "d"),
    ])
    .expect("valid fixture")
}

/// Two loops `l1`, `l2` joined by the edge `bridge`.
pub fn dumbbell() -> MultiGraph {
    MultiGraph::from_edges(&[("l1", "u", "u"), ("bridge", "u", "v"), ("l2", "v", "v")])
        .expect("valid fixture")
}

/// Named unweighted graphs of the built-in corpus.
pub fn graphs() -> Vec<(&'static str, MultiGraph)> {
    vec![
        ("single_edge", single_edge()),
        ("cycle2", cycle(2)),
        ("cycle3", cycle(3)),
        ("cycle4", cycle(4)),
        ("theta3", theta(3)),
        ("theta4", theta(4)),
        ("figure1", figure1()),
        ("dumbbell", dumbbell()),
    ]
}

pub fn by_name(name: &str) -> Option<MultiGraph> {
    graphs()
        .into_iter()
        .chain(genus2().into_iter().map(|(n, g)| (n, g.graph().clone())))
        .find(|(n, _)| *n == name)
        .map(|(_, g)| g)
}

/// A corpus graph with its weights; unweighted corpus graphs get weight 0.
pub fn weighted_by_name(name: &str) -> Option<WeightedGraph> {
    genus2()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, g)| g)
        .or_else(|| by_name(name).map(WeightedGraph::unweighted))
}

/// Every corpus name, unweighted graphs first.
pub fn names() -> Vec<&'static str> {
    graphs()
        .into_iter()
        .map(|(n, _)| n)
        .chain(genus2().into_iter().map(|(n, _)| n))
        .collect()
}

fn weighted(edges: &[(&str, &str, &str)], weights: &[(&str, u32)]) -> WeightedGraph {
    let vertices: Vec<VertexId> = weights.iter().map(|(v, _)| VertexId::new(v)).collect();
    let graph = MultiGraph::new(
        vertices,
        edges
            .iter()
            .map(|(l, u, v)| (EdgeLabel::new(l), VertexId::new(u), VertexId::new(v))),
    )
    .expect("valid fixture");
    let weights: BTreeMap<VertexId, u32> =
        weights.iter().map(|(v, w)| (VertexId::new(v), *w)).collect();
    WeightedGraph::new(graph, weights).expect("valid fixture")
}

/// The seven stable weighted graphs of genus 2, one per isomorphism class.
pub fn genus2() -> Vec<(&'static str, WeightedGraph)> {
    vec![
        (
            "g2_theta",
            weighted(&[("a", "u", "v"), ("b", "u", "v"), ("c", "u", "v")], &[("u", 0), ("v", 0)]),
        ),
        (
            "g2_dumbbell",
            weighted(
                &[("l1", "u", "u"), ("bridge", "u", "v"), ("l2", "v", "v")],
                &[("u", 0), ("v", 0)],
            ),
        ),
        (
            "g2_figure_eight",
            weighted(&[("l1", "v", "v"), ("l2", "v", "v")], &[("v", 0)]),
        ),
        (
            "g2_loop_and_bridge",
            weighted(&[("l", "u", "u"), ("bridge", "u", "v")], &[("u", 0), ("v", 1)]),
        ),
        ("g2_weighted_loop", weighted(&[("l", "v", "v")], &[("v", 1)])),
        (
            "g2_two_weighted",
            weighted(&[("bridge", "u", "v")], &[("u", 1), ("v", 1)]),
        ),
        ("g2_point", weighted(&[], &[("v", 2)])),
    ]
}
