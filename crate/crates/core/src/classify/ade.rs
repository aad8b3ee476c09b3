//! Structural recognition of ADE diagrams among induced subgraphs.

use std::fmt;

use serde::Serialize;

use crate::lattice::WeightedDualGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AdeType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeType::A(n) => write!(f, "A{n}"),
            AdeType::D(n) => write!(f, "D{n}"),
            AdeType::E6 => f.write_str("E6"),
            AdeType::E7 => f.write_str("E7"),
            AdeType::E8 => f.write_str("E8"),
        }
    }
}

/// A recognised diagram together with a vertex layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdeShape {
    /// Vertices in path order, starting from the end with the smaller index.
    A { path: Vec<usize> },
    /// A vertex of degree three with its arms, each listed outward from the
    /// fork, sorted by length (ties by first vertex).
    Forked { ty: AdeType, fork: usize, arms: [Vec<usize>; 3] },
}

impl AdeShape {
    pub fn ty(&self) -> AdeType {
        match self {
            AdeShape::A { path } => AdeType::A(path.len()),
            AdeShape::Forked { ty, .. } => *ty,
        }
    }
}

/// Recognises the subgraph induced by `verts` as a Dynkin diagram of type
/// A, D or E. Requires smooth rational (-2)-curves, simple edges and a tree.
pub fn recognize(g: &WeightedDualGraph, verts: &[usize]) -> Option<AdeShape> {
    if verts.is_empty() {
        return None;
    }
    let inside = |v: usize| verts.contains(&v);
    if verts.iter().any(|&v| !g.vertex(v).is_rational_minus_two()) {
        return None;
    }
    let mut edge_count = 0;
    for &v in verts {
        for &(u, m) in g.neighbors(v) {
            if inside(u) {
                if m != 1 {
                    return None;
                }
                edge_count += 1;
            }
        }
    }
    // Each edge was seen from both ends.
    if edge_count / 2 != verts.len() - 1 {
        return None;
    }
    let mut mask = vec![false; g.len()];
    for &v in verts {
        mask[v] = true;
    }
    if !g.is_connected_on(&mask) {
        return None;
    }
    let nbrs = |v: usize| -> Vec<usize> {
        g.neighbors(v).iter().map(|&(u, _)| u).filter(|&u| inside(u)).collect()
    };
    let deg: Vec<(usize, usize)> = verts.iter().map(|&v| (v, nbrs(v).len())).collect();
    let forks: Vec<usize> = deg.iter().filter(|(_, d)| *d >= 3).map(|(v, _)| *v).collect();
    if deg.iter().any(|(_, d)| *d > 3) || forks.len() > 1 {
        return None;
    }
    let walk = |from: usize, first: usize| -> Vec<usize> {
        let mut out = vec![first];
        let (mut prev, mut cur) = (from, first);
        loop {
            let next: Vec<usize> = nbrs(cur).into_iter().filter(|&u| u != prev).collect();
            match next.as_slice() {
                [u] => {
                    out.push(*u);
                    prev = cur;
                    cur = *u;
                }
                _ => return out,
            }
        }
    };
    if forks.is_empty() {
        let start = deg.iter().filter(|(_, d)| *d <= 1).map(|(v, _)| *v).min().expect("a path has an end");
        let mut path = vec![start];
        if let Some(&first) = nbrs(start).first() {
            path.extend(walk(start, first));
        }
        return Some(AdeShape::A { path });
    }
    let fork = forks[0];
    let mut arms: Vec<Vec<usize>> = nbrs(fork).into_iter().map(|u| walk(fork, u)).collect();
    arms.sort_by_key(|a| (a.len(), a[0]));
    let lens = (arms[0].len(), arms[1].len(), arms[2].len());
    let ty = match lens {
        (1, 1, c) => AdeType::D(c + 3),
        (1, 2, 2) => AdeType::E6,
        (1, 2, 3) => AdeType::E7,
        (1, 2, 4) => AdeType::E8,
        _ => return None,
    };
    let arms: [Vec<usize>; 3] = arms.try_into().expect("three arms");
    Some(AdeShape::Forked { ty, fork, arms })
}
