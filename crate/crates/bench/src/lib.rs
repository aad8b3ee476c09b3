//! Graphs used as benchmark workloads.

use resgraph::lattice::{Edge, VertexData, WeightedDualGraph};

/// Chain of `n` rational (-2)-curves closed off by a genus-`g` curve of
/// weight `w` at one end.
pub fn tailed_chain(n: usize, w: i64, g: u32) -> WeightedDualGraph {
    let mut vertices = vec![VertexData::new(w, g)];
    vertices.extend(std::iter::repeat_n(VertexData::rational(-2), n));
    let edges = (0..n).map(|i| Edge::new(i, i + 1)).collect();
    WeightedDualGraph::new(vertices, edges).expect("tailed chain is negative definite")
}

/// Special vertex of genus `g` with `arms` chains of length `len` attached.
pub fn star(arms: usize, len: usize, w: i64, g: u32) -> WeightedDualGraph {
    let mut vertices = vec![VertexData::new(w, g)];
    let mut edges = Vec::new();
    for _ in 0..arms {
        let first = vertices.len();
        vertices.extend(std::iter::repeat_n(VertexData::rational(-2), len));
        edges.push(Edge::new(0, first));
        edges.extend((first..first + len - 1).map(|i| Edge::new(i, i + 1)));
    }
    WeightedDualGraph::new(vertices, edges).expect("star is negative definite")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_are_valid() {
        assert_eq!(tailed_chain(20, -3, 1).len(), 21);
        assert_eq!(star(3, 4, -4, 2).len(), 13);
        assert_eq!(star(3, 2, -3, 3).len(), 7);
        assert_eq!(star(4, 6, -5, 2).len(), 25);
    }
}
