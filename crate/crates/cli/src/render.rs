//! Text helpers shared by the command reports.

use std::fmt::Write;

use resgraph::{Cycle, WeightedDualGraph};

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn joined<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Coefficients in vertex order.
pub fn cycle(c: &Cycle) -> String {
    joined(c.coeffs())
}

/// `name:coefficient` pairs over the given vertices.
pub fn on_vertices(g: &WeightedDualGraph, c: &Cycle, verts: &[usize]) -> String {
    joined(verts.iter().map(|&v| format!("{}:{}", g.name(v), c.get(v))))
}

/// Splits the vertices into the longest leading run that forms a chain in
/// file order and the remaining ones.
pub fn chain_layout(g: &WeightedDualGraph) -> (Vec<usize>, Vec<usize>) {
    let n = g.len();
    let mut k = 1;
    while k < n && g.entry(k - 1, k) != 0 {
        k += 1;
    }
    ((0..k).collect(), (k..n).collect())
}

/// `2 4 6 5 4 3 2 | branch 3` for E8 written as a chain plus a pendant.
pub fn layout_line(g: &WeightedDualGraph, z: &Cycle) -> String {
    let (chain, rest) = chain_layout(g);
    let mut s = joined(chain.iter().map(|&v| z.get(v)));
    if !rest.is_empty() {
        let _ = write!(s, " | branch {}", joined(rest.iter().map(|&v| z.get(v))));
    }
    s
}

pub fn vertices_line(g: &WeightedDualGraph) -> String {
    format!("vertices: {}\n", joined(g.names()))
}
