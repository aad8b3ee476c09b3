//! Weighted dual graphs, the intersection form they induce, and integer and
//! rational cycles on them.
//!
//! A [`WeightedDualGraph`] is immutable once built. Vertex `i` stands for the
//! exceptional curve `E_i`; its weight is the self-intersection `E_i^2`, and
//! the off-diagonal entries of the intersection matrix are the total edge
//! multiplicities.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexData {
    /// Self-intersection `E^2`, at most -1.
    pub weight: i64,
    pub genus: u32,
    /// Degree of the conductor (nodes and cusps counted with weight).
    pub conductor: u32,
}

impl VertexData {
    pub fn new(weight: i64, genus: u32) -> Self {
        VertexData { weight, genus, conductor: 0 }
    }

    pub fn rational(weight: i64) -> Self {
        VertexData::new(weight, 0)
    }

    /// Smooth rational curve of self-intersection -2.
    pub fn is_rational_minus_two(&self) -> bool {
        self.weight == -2 && self.genus == 0 && self.conductor == 0
    }

    /// `K.E` by adjunction.
    pub fn canonical_degree(&self) -> i64 {
        -self.weight + 2 * self.genus as i64 + 2 * self.conductor as i64 - 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub multiplicity: u32,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        Edge { a, b, multiplicity: 1 }
    }

    pub fn with_multiplicity(a: usize, b: usize, multiplicity: u32) -> Self {
        Edge { a, b, multiplicity }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDualGraph {
    names: Vec<String>,
    vertices: Vec<VertexData>,
    edges: Vec<Edge>,
    matrix: Vec<i64>,
    k: Vec<i64>,
    neighbors: Vec<Vec<(usize, i64)>>,
}

impl WeightedDualGraph {
    /// Builds and fully validates a graph, including negative definiteness.
    pub fn new(vertices: Vec<VertexData>, edges: Vec<Edge>) -> Result<Self> {
        let names = (0..vertices.len()).map(|i| format!("E{}", i + 1)).collect();
        Self::from_parts(names, vertices, edges, true)
    }

    /// Builds a graph, checking everything except negative definiteness.
    pub fn new_unchecked_definiteness(vertices: Vec<VertexData>, edges: Vec<Edge>) -> Result<Self> {
        let names = (0..vertices.len()).map(|i| format!("E{}", i + 1)).collect();
        Self::from_parts(names, vertices, edges, false)
    }

    pub fn from_parts(
        names: Vec<String>,
        vertices: Vec<VertexData>,
        edges: Vec<Edge>,
        check_definite: bool,
    ) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        if names.len() != n {
            return Err(Error::InvalidGraph(format!(
                "{} names given for {} vertices",
                names.len(),
                n
            )));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.weight > -1 {
                return Err(Error::InvalidGraph(format!(
                    "vertex {} has weight {}; weights must be <= -1",
                    names[i], v.weight
                )));
            }
        }
        let mut matrix = vec![0i64; n * n];
        for (i, v) in vertices.iter().enumerate() {
            matrix[i * n + i] = v.weight;
        }
        for e in &edges {
            if e.a >= n || e.b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge endpoint {} out of range",
                    e.a.max(e.b)
                )));
            }
            if e.a == e.b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {}", names[e.a])));
            }
            if e.multiplicity == 0 {
                return Err(Error::InvalidGraph(format!(
                    "edge {}-{} has multiplicity 0",
                    names[e.a], names[e.b]
                )));
            }
            matrix[e.a * n + e.b] += e.multiplicity as i64;
            matrix[e.b * n + e.a] += e.multiplicity as i64;
        }
        let neighbors: Vec<Vec<(usize, i64)>> = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i && matrix[i * n + j] != 0)
                    .map(|j| (j, matrix[i * n + j]))
                    .collect()
            })
            .collect();
        let k = vertices.iter().map(VertexData::canonical_degree).collect();
        let g = WeightedDualGraph { names, vertices, edges, matrix, k, neighbors };
        if !g.is_connected_on(&vec![true; n]) {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        if check_definite && !g.is_negative_definite() {
            return Err(Error::NotNegativeDefinite);
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[VertexData] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &VertexData {
        &self.vertices[i]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Row-major intersection matrix.
    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i * self.len() + j]
    }

    /// Neighbours of `i` with their total edge multiplicity.
    pub fn neighbors(&self, i: usize) -> &[(usize, i64)] {
        &self.neighbors[i]
    }

    /// Adjunction values `K.E_i`.
    pub fn canonical_degrees(&self) -> &[i64] {
        &self.k
    }

    /// `E_i . c`.
    #[inline]
    pub fn degree_on(&self, c: &Cycle, i: usize) -> i64 {
        let n = self.len();
        let row = &self.matrix[i * n..(i + 1) * n];
        row.iter().zip(&c.0).map(|(m, x)| m * x).sum()
    }

    /// The vector `(E_i . c)_i`.
    pub fn degrees(&self, c: &Cycle) -> Vec<i64> {
        (0..self.len()).map(|i| self.degree_on(c, i)).collect()
    }

    /// No smooth rational (-1)-curves.
    pub fn is_minimal(&self) -> bool {
        !self
            .vertices
            .iter()
            .any(|v| v.weight == -1 && v.genus == 0 && v.conductor == 0)
    }

    pub fn is_negative_definite(&self) -> bool {
        exact::is_negative_definite(self.len(), &self.matrix)
    }

    /// Negative definiteness of the principal submatrix on `support`.
    pub fn is_negative_definite_on(&self, support: &[usize]) -> bool {
        let sub = self.submatrix(support);
        exact::is_negative_definite(support.len(), &sub)
    }

    pub(crate) fn submatrix(&self, support: &[usize]) -> Vec<i64> {
        let mut sub = Vec::with_capacity(support.len() * support.len());
        for &i in support {
            for &j in support {
                sub.push(self.entry(i, j));
            }
        }
        sub
    }

    /// Whether the vertices flagged in `mask` induce a connected subgraph.
    /// An empty mask is not connected.
    pub fn is_connected_on(&self, mask: &[bool]) -> bool {
        let comps = self.components_on(mask);
        comps.len() == 1
    }

    /// Connected components of the subgraph induced by `mask`, each sorted,
    /// listed in order of their smallest vertex.
    pub fn components_on(&self, mask: &[bool]) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if !mask[s] || seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(u, _) in &self.neighbors[v] {
                    if mask[u] && !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub(crate) fn check_dim(&self, c: &Cycle) -> Result<()> {
        if c.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: c.len() });
        }
        Ok(())
    }
}

/// An integer cycle `sum d_i E_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle(pub Vec<i64>);

impl Cycle {
    pub fn zero(n: usize) -> Self {
        Cycle(vec![0; n])
    }

    /// The reduced cycle `E_i`.
    pub fn vertex(n: usize, i: usize) -> Self {
        let mut c = Cycle::zero(n);
        c.0[i] = 1;
        c
    }

    /// Reduced cycle on the given vertices.
    pub fn reduced(n: usize, support: &[usize]) -> Self {
        let mut c = Cycle::zero(n);
        for &i in support {
            c.0[i] = 1;
        }
        c
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] != 0).collect()
    }

    pub fn support_mask(&self) -> Vec<bool> {
        self.0.iter().map(|&x| x != 0).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// All coefficients non-negative and not all zero.
    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&x| x >= 0) && !self.is_zero()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Cycle) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self <= other` and `self != other`.
    pub fn lt(&self, other: &Cycle) -> bool {
        self.le(other) && self != other
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn max_coefficient(&self) -> i64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn scaled(&self, k: i64) -> Cycle {
        Cycle(self.0.iter().map(|x| x * k).collect())
    }

    /// Keeps coefficients on `mask`, zeroes the rest.
    pub fn restricted(&self, mask: &[bool]) -> Cycle {
        Cycle(self.0.iter().zip(mask).map(|(&x, &m)| if m { x } else { 0 }).collect())
    }

    pub fn componentwise_min(&self, other: &Cycle) -> Cycle {
        Cycle(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Add for &Cycle {
    type Output = Cycle;
    fn add(self, rhs: &Cycle) -> Cycle {
        assert_eq!(self.len(), rhs.len(), "cycle dimension mismatch");
        Cycle(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Cycle {
    type Output = Cycle;
    fn sub(self, rhs: &Cycle) -> Cycle {
        assert_eq!(self.len(), rhs.len(), "cycle dimension mismatch");
        Cycle(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<&Cycle> for i64 {
    type Output = Cycle;
    fn mul(self, rhs: &Cycle) -> Cycle {
        rhs.scaled(self)
    }
}

/// A cycle with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalCycle(pub Vec<BigRational>);

impl RationalCycle {
    pub fn from_cycle(c: &Cycle) -> Self {
        RationalCycle(c.0.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|q| q.is_integer())
    }

    /// The integer cycle, when every coefficient is an integer that fits.
    pub fn to_cycle(&self) -> Option<Cycle> {
        self.0
            .iter()
            .map(|q| if q.is_integer() { q.to_integer().to_i64() } else { None })
            .collect::<Option<Vec<_>>>()
            .map(Cycle)
    }

    pub fn scaled(&self, q: &BigRational) -> RationalCycle {
        RationalCycle(self.0.iter().map(|x| x * q).collect())
    }

    /// If `self = q * other` for a single rational `q`, returns it.
    /// A zero `other` only divides the zero cycle (with `q = 0`).
    pub fn ratio_to(&self, other: &Cycle) -> Option<BigRational> {
        let mut ratio: Option<BigRational> = None;
        for (a, &b) in self.0.iter().zip(&other.0) {
            if b == 0 {
                if !a.is_zero() {
                    return None;
                }
                continue;
            }
            let r = a / BigRational::from_integer(b.into());
            match &ratio {
                None => ratio = Some(r),
                Some(q) if *q == r => {}
                Some(_) => return None,
            }
        }
        match ratio {
            Some(q) => Some(q),
            None if self.0.iter().all(Zero::is_zero) => Some(BigRational::zero()),
            None => None,
        }
    }

    /// Coefficients rendered as `p` or `p/q`.
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for RationalCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

/// The bilinear form `a^T M b`.
pub fn intersect(g: &WeightedDualGraph, a: &Cycle, b: &Cycle) -> Result<i64> {
    g.check_dim(a)?;
    g.check_dim(b)?;
    let n = g.len();
    let mut acc: i128 = 0;
    for i in 0..n {
        if a.0[i] == 0 {
            continue;
        }
        let mut row: i128 = 0;
        for j in 0..n {
            row += g.entry(i, j) as i128 * b.0[j] as i128;
        }
        acc = acc.checked_add(a.0[i] as i128 * row).ok_or(Error::Overflow)?;
    }
    i64::try_from(acc).map_err(|_| Error::Overflow)
}

/// `a . a` without dimension checks, for internal hot paths.
#[inline]
pub(crate) fn self_intersection(g: &WeightedDualGraph, a: &Cycle) -> i64 {
    (0..g.len()).filter(|&i| a.0[i] != 0).map(|i| a.0[i] * g.degree_on(a, i)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Definiteness {
    /// All pivots of symmetric elimination without row exchanges are negative.
    NegativeDefinite { pivots: Vec<BigRational> },
    /// `witness^T M witness = value >= 0` with `witness != 0`.
    NotNegativeDefinite { witness: Cycle, value: i64 },
}

impl Definiteness {
    pub fn is_negative_definite(&self) -> bool {
        matches!(self, Definiteness::NegativeDefinite { .. })
    }
}

/// Exact negative-definiteness test with a certificate either way.
pub fn check_negative_definite(g: &WeightedDualGraph) -> Definiteness {
    let n = g.len();
    let minors = exact::leading_minors_big(n, g.matrix());
    let mut pivots = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for (k, d) in minors.iter().enumerate() {
        let pivot = BigRational::new(d.clone(), prev.clone());
        if !pivot.is_negative() {
            let witness = nonnegative_witness(g, k);
            let value = intersect(g, &witness, &witness).expect("witness fits in i64");
            return Definiteness::NotNegativeDefinite { witness, value };
        }
        pivots.push(pivot);
        prev = d.clone();
    }
    Definiteness::NegativeDefinite { pivots }
}

/// Given that the leading `k`×`k` block is negative definite and the next pivot
/// is non-negative, returns an integer vector `v` supported on the first `k+1`
/// coordinates with `v^T M v` equal to a positive multiple of that pivot.
fn nonnegative_witness(g: &WeightedDualGraph, k: usize) -> Cycle {
    let n = g.len();
    let mut v = vec![BigRational::zero(); k + 1];
    v[k] = BigRational::one();
    if k > 0 {
        // Solve M[0..k,0..k] u = -M[0..k,k]; set v = (u, 1).
        let idx: Vec<usize> = (0..k).collect();
        let block = g.submatrix(&idx);
        let rhs: Vec<i64> = (0..k).map(|i| -g.entry(i, k)).collect();
        let (num, det) = exact::solve_big(k, &block, &rhs).expect("leading block is definite");
        for i in 0..k {
            v[i] = BigRational::new(num[i].clone(), det.clone());
        }
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut coeffs = vec![0i64; n];
    for i in 0..=k {
        let scaled = &v[i] * BigRational::from_integer(lcm.clone());
        coeffs[i] = scaled.to_integer().to_i64().expect("witness coefficient fits in i64");
    }
    Cycle(coeffs)
}

/// Whether `c . E_i <= 0` for every `i` in the support of `d` (that is,
/// whether `-c` is nef on `d`).
pub fn is_anti_nef_on(g: &WeightedDualGraph, c: &Cycle, d: &Cycle) -> Result<bool> {
    g.check_dim(c)?;
    g.check_dim(d)?;
    Ok(d.support().into_iter().all(|i| g.degree_on(c, i) <= 0))
}

/// Whether `c . E_i = 0` for every `i` in the support of `d`.
pub fn is_numerically_trivial_on(g: &WeightedDualGraph, c: &Cycle, d: &Cycle) -> Result<bool> {
    g.check_dim(c)?;
    g.check_dim(d)?;
    Ok(d.support().into_iter().all(|i| g.degree_on(c, i) == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs;

    #[test]
    fn a2_self_intersection_of_reduced_cycle() {
        let g = graphs::a_n(2);
        let z = Cycle(vec![1, 1]);
        assert_eq!(intersect(&g, &z, &z).unwrap(), -2);
    }

    #[test]
    fn zero_cycle_pairs_to_zero() {
        let g = graphs::e8();
        let b = Cycle((1..=8).collect());
        assert_eq!(intersect(&g, &Cycle::zero(8), &b).unwrap(), 0);
    }

    #[test]
    fn e8_fundamental_cycle_square() {
        let g = graphs::e8();
        let z = Cycle(vec![2, 4, 6, 5, 4, 3, 2, 3]);
        // Direct evaluation of z^T M z from the matrix entries.
        let n = 8;
        let mut direct = 0;
        for i in 0..n {
            for j in 0..n {
                direct += z.0[i] * g.entry(i, j) * z.0[j];
            }
        }
        assert_eq!(direct, -2);
        assert_eq!(intersect(&g, &z, &z).unwrap(), -2);
    }

    #[test]
    fn dimension_mismatch_is_an_input_error() {
        let g = graphs::a_n(2);
        let err = intersect(&g, &Cycle(vec![1]), &Cycle(vec![1, 1])).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 1 });
    }

    #[test]
    fn single_vertex_pivot() {
        let g = WeightedDualGraph::new(vec![VertexData::rational(-2)], vec![]).unwrap();
        match check_negative_definite(&g) {
            Definiteness::NegativeDefinite { pivots } => {
                assert_eq!(pivots, vec![BigRational::from_integer((-2).into())]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn double_edge_between_minus_one_curves_is_indefinite() {
        let g = WeightedDualGraph::new_unchecked_definiteness(
            vec![VertexData::rational(-1), VertexData::rational(-1)],
            vec![Edge::with_multiplicity(0, 1, 2)],
        )
        .unwrap();
        match check_negative_definite(&g) {
            Definiteness::NotNegativeDefinite { witness, value } => {
                assert!(value >= 0);
                assert_eq!(intersect(&g, &witness, &witness).unwrap(), value);
                // The witness found by elimination is (2,1)-like; (1,1) also works.
                assert!(!witness.is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }
        let v = Cycle(vec![1, 1]);
        assert_eq!(intersect(&g, &v, &v).unwrap(), 2);
        assert_eq!(
            WeightedDualGraph::new(g.vertices().to_vec(), g.edges().to_vec()).unwrap_err(),
            Error::NotNegativeDefinite
        );
    }

    #[test]
    fn ade_graphs_are_negative_definite() {
        for g in graphs::ade_family(10) {
            assert!(check_negative_definite(&g).is_negative_definite());
        }
    }

    #[test]
    fn construction_rejects_bad_input() {
        let v = vec![VertexData::rational(-2), VertexData::rational(-2)];
        assert!(WeightedDualGraph::new(v.clone(), vec![]).is_err()); // disconnected
        assert!(WeightedDualGraph::new(v.clone(), vec![Edge::new(0, 0)]).is_err());
        assert!(WeightedDualGraph::new(v.clone(), vec![Edge::with_multiplicity(0, 1, 0)]).is_err());
        assert!(WeightedDualGraph::new(vec![VertexData::rational(0)], vec![]).is_err());
        assert!(WeightedDualGraph::new(vec![], vec![]).is_err());
    }

    #[test]
    fn anti_nef_and_trivial_checks() {
        let g = graphs::a_n(2);
        let z = Cycle(vec![1, 1]);
        assert!(is_anti_nef_on(&g, &z, &z).unwrap());
        assert!(g.degrees(&z).iter().all(|&d| d == -1));
        assert!(is_numerically_trivial_on(&g, &Cycle::zero(2), &z).unwrap());

        let t = graphs::b1_a_b2();
        let z = Cycle(vec![1, 1, 1]);
        let a = Cycle::vertex(3, 1);
        assert!(is_numerically_trivial_on(&t, &z, &a).unwrap());
        assert!(!is_numerically_trivial_on(&t, &z, &z).unwrap());
    }
}
