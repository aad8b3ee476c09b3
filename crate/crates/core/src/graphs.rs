//! Constructors for the standard graphs used as fixtures: the ADE diagrams in
//! their usual drawings, and a few small non-rational examples.

use crate::lattice::{Edge, VertexData, WeightedDualGraph};

fn build(vertices: Vec<VertexData>, edges: Vec<Edge>) -> WeightedDualGraph {
    WeightedDualGraph::new(vertices, edges).expect("fixture graph is valid")
}

fn path_edges(n: usize) -> Vec<Edge> {
    (1..n).map(|i| Edge::new(i - 1, i)).collect()
}

/// Chain of `n` rational (-2)-curves.
pub fn a_n(n: usize) -> WeightedDualGraph {
    assert!(n >= 1);
    build(vec![VertexData::rational(-2); n], path_edges(n))
}

/// Chain `v0..v(n-2)` with a pendant vertex (index `n-1`) on `v1`.
pub fn d_n(n: usize) -> WeightedDualGraph {
    assert!(n >= 4);
    let mut edges = path_edges(n - 1);
    edges.push(Edge::new(1, n - 1));
    build(vec![VertexData::rational(-2); n], edges)
}

/// Chain of `len` with a pendant (last index) on chain vertex `at`.
fn chain_with_pendant(len: usize, at: usize) -> WeightedDualGraph {
    let mut edges = path_edges(len);
    edges.push(Edge::new(at, len));
    build(vec![VertexData::rational(-2); len + 1], edges)
}

pub fn e6() -> WeightedDualGraph {
    chain_with_pendant(5, 2)
}

pub fn e7() -> WeightedDualGraph {
    chain_with_pendant(6, 2)
}

pub fn e8() -> WeightedDualGraph {
    chain_with_pendant(7, 2)
}

/// Every A_n and D_n with `n <= max_n`, then E6, E7, E8.
pub fn ade_family(max_n: usize) -> Vec<WeightedDualGraph> {
    let mut out: Vec<_> = (1..=max_n).map(a_n).collect();
    out.extend((4..=max_n).map(d_n));
    out.extend([e6(), e7(), e8()]);
    out
}

/// One vertex.
pub fn single(weight: i64, genus: u32) -> WeightedDualGraph {
    build(vec![VertexData::new(weight, genus)], vec![])
}

/// Path `B1 - A - B2` of (-2)-curves with `A` (index 1) of genus one.
pub fn b1_a_b2() -> WeightedDualGraph {
    let names = vec!["B1".to_string(), "A".to_string(), "B2".to_string()];
    let vertices = vec![VertexData::rational(-2), VertexData::new(-2, 1), VertexData::rational(-2)];
    WeightedDualGraph::from_parts(names, vertices, path_edges(3), true).expect("fixture graph is valid")
}

/// Elliptic (-1)-curve `A` (index 0) meeting a rational (-2)-curve.
pub fn elliptic_minus_one_with_tail() -> WeightedDualGraph {
    build(vec![VertexData::new(-1, 1), VertexData::rational(-2)], vec![Edge::new(0, 1)])
}
