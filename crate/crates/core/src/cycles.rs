//! Fundamental cycles, chain-connected cycles, minimal models and the
//! chain-connected component decomposition.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genus;
use crate::lattice::{self, Cycle, WeightedDualGraph};

/// Default cap on the number of subcycles an exhaustive check may visit.
pub const DEFAULT_SUBCYCLE_BUDGET: u64 = 1_000_000;

/// A Laufer computation sequence `E_start = Z_1 < Z_2 < ... < Z_l = Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComputationSequence {
    pub start: usize,
    /// Vertex added at each step after the start.
    pub steps: Vec<usize>,
    pub cycles: Vec<Cycle>,
}

fn normalize_support(g: &WeightedDualGraph, support: &[usize]) -> Result<Vec<bool>> {
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    let mut mask = vec![false; g.len()];
    for &i in support {
        if i >= g.len() {
            return Err(Error::InvalidGraph(format!("vertex index {i} out of range")));
        }
        mask[i] = true;
    }
    if !g.is_connected_on(&mask) {
        return Err(Error::DisconnectedSupport);
    }
    Ok(mask)
}

/// Fundamental cycle on a connected support, with the computation sequence
/// that produced it. Starts at the lowest index and always adds the
/// lowest-index vertex meeting the current cycle positively.
pub fn fundamental_cycle(
    g: &WeightedDualGraph,
    support: &[usize],
) -> Result<(Cycle, ComputationSequence)> {
    let mask = normalize_support(g, support)?;
    let idx: Vec<usize> = (0..g.len()).filter(|&i| mask[i]).collect();
    if !g.is_negative_definite_on(&idx) {
        return Err(Error::NotNegativeDefinite);
    }
    let start = idx[0];
    let mut seq = ComputationSequence { start, steps: Vec::new(), cycles: Vec::new() };
    let z = laufer(g, &mask, start, |c, step| {
        if let Some(v) = step {
            seq.steps.push(v);
        }
        seq.cycles.push(c.clone());
    })?;
    Ok((z, seq))
}

/// Fundamental cycle of the whole graph.
pub fn fundamental_cycle_full(g: &WeightedDualGraph) -> Result<Cycle> {
    let all: Vec<usize> = (0..g.len()).collect();
    fundamental_cycle(g, &all).map(|(z, _)| z)
}

/// Laufer's algorithm on a connected support already known to be
/// negative definite. `observe` sees every intermediate cycle.
pub(crate) fn laufer(
    g: &WeightedDualGraph,
    mask: &[bool],
    start: usize,
    mut observe: impl FnMut(&Cycle, Option<usize>),
) -> Result<Cycle> {
    let n = g.len();
    let mut z = Cycle::vertex(n, start);
    let mut y: Vec<i64> = (0..n).map(|i| g.entry(i, start)).collect();
    observe(&z, None);
    // Every coefficient of a fundamental cycle is bounded well below this on
    // any graph that fits in memory; hitting it means bad input slipped through.
    let mut guard: u64 = 0;
    loop {
        let Some(v) = (0..n).find(|&i| mask[i] && y[i] > 0) else {
            return Ok(z);
        };
        z.0[v] += 1;
        for (i, yi) in y.iter_mut().enumerate() {
            *yi += g.entry(i, v);
        }
        observe(&z, Some(v));
        guard += 1;
        if guard > 100_000_000 {
            return Err(Error::BudgetExceeded {
                budget: guard,
                what: "computation sequence steps".into(),
            });
        }
    }
}

/// Fundamental cycle on `mask` without the definiteness and connectivity checks.
pub(crate) fn fundamental_cycle_on(g: &WeightedDualGraph, mask: &[bool]) -> Cycle {
    let start = mask.iter().position(|&b| b).expect("non-empty support");
    laufer(g, mask, start, |_, _| {}).expect("definite support terminates")
}

/// All cycles `C` with `0 <= C <= d`, in mixed-radix order starting from 0.
pub struct Subcycles {
    bound: Vec<i64>,
    current: Option<Vec<i64>>,
}

impl Iterator for Subcycles {
    type Item = Cycle;

    fn next(&mut self) -> Option<Cycle> {
        let cur = self.current.as_mut()?;
        let out = Cycle(cur.clone());
        let mut i = 0;
        loop {
            if i == cur.len() {
                self.current = None;
                break;
            }
            if cur[i] < self.bound[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// Iterates over every `0 <= C <= d`, including both ends.
pub fn subcycles(d: &Cycle) -> Subcycles {
    Subcycles { bound: d.0.clone(), current: Some(vec![0; d.len()]) }
}

/// Number of cycles `0 <= C <= d`, saturating.
pub fn subcycle_count(d: &Cycle) -> u64 {
    d.0.iter().fold(1u64, |acc, &x| acc.saturating_mul((x.max(0) as u64).saturating_add(1)))
}

fn check_budget(d: &Cycle, budget: u64) -> Result<()> {
    let count = subcycle_count(d);
    if count > budget {
        return Err(Error::BudgetExceeded {
            budget,
            what: format!(
                "{count} subcycles; the fundamental cycle of a support is always \
                 chain-connected, as is any subcycle of a chain-connected cycle of equal genus"
            ),
        });
    }
    Ok(())
}

/// Whether every proper subcycle `0 < C < d` meets some component of `d - C`
/// positively. Exhaustive over subcycles.
pub fn is_chain_connected(g: &WeightedDualGraph, d: &Cycle, budget: u64) -> Result<bool> {
    g.check_dim(d)?;
    if d.0.iter().any(|&x| x < 0) || d.is_zero() {
        return Err(Error::NotEffective);
    }
    if !g.is_connected_on(&d.support_mask()) {
        return Err(Error::DisconnectedSupport);
    }
    check_budget(d, budget)?;
    Ok(chain_connected_unchecked(g, d))
}

pub(crate) fn chain_connected_unchecked(g: &WeightedDualGraph, d: &Cycle) -> bool {
    for c in subcycles(d) {
        if c.is_zero() || c == *d {
            continue;
        }
        let escapes = (0..g.len()).any(|i| c.0[i] < d.0[i] && g.degree_on(&c, i) > 0);
        if !escapes {
            return false;
        }
    }
    true
}

/// A component that can be dropped from `d` without changing `p_a`: a smooth
/// rational curve `E <= d` with `E.(d - E) = 1`.
fn is_minus_one_curve(g: &WeightedDualGraph, d: &Cycle, i: usize) -> bool {
    let v = g.vertex(i);
    d.0[i] > 0 && v.genus == 0 && v.conductor == 0 && g.degree_on(d, i) - v.weight == 1
}

/// Minimal model of a chain-connected cycle of positive arithmetic genus.
/// Repeatedly removes the lowest-index `(-1)_D`-curve.
pub fn minimal_model(g: &WeightedDualGraph, d: &Cycle) -> Result<Cycle> {
    let order: Vec<usize> = (0..g.len()).collect();
    minimal_model_by_order(g, d, &order)
}

/// As [`minimal_model`], preferring curves earlier in `order`.
pub fn minimal_model_by_order(g: &WeightedDualGraph, d: &Cycle, order: &[usize]) -> Result<Cycle> {
    g.check_dim(d)?;
    let p = genus::pa(g, d)?;
    if p <= 0 {
        return Err(Error::Domain(format!(
            "minimal model needs positive arithmetic genus, got {p}"
        )));
    }
    let mut cur = d.clone();
    while let Some(&i) = order.iter().find(|&&i| is_minus_one_curve(g, &cur, i)) {
        cur.0[i] -= 1;
    }
    debug_assert_eq!(genus::pa_raw(g, &cur), p);
    Ok(cur)
}

/// `D = sum m_i D_i` with the nesting and nefness conditions of the
/// chain-connected component decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainDecomposition {
    pub parts: Vec<(Cycle, u32)>,
}

/// Checks the four decomposition conditions: exact sum; `-D_i` nef on `D_j`
/// for `i < j`; `-D_i` nef on `D_i` when `m_i >= 2`; nested or disjoint.
pub fn verify_decomposition(
    g: &WeightedDualGraph,
    d: &Cycle,
    dec: &ChainDecomposition,
) -> std::result::Result<(), String> {
    let mut sum = Cycle::zero(g.len());
    for (p, m) in &dec.parts {
        if !p.is_effective() {
            return Err(format!("part {p} is not effective"));
        }
        if *m == 0 {
            return Err("zero multiplicity".into());
        }
        if !chain_connected_unchecked(g, p) || !g.is_connected_on(&p.support_mask()) {
            return Err(format!("part {p} is not chain-connected"));
        }
        sum = &sum + &p.scaled(*m as i64);
    }
    if sum != *d {
        return Err(format!("parts sum to {sum}, expected {d}"));
    }
    for (i, (di, mi)) in dec.parts.iter().enumerate() {
        if *mi >= 2 && !anti_nef_on(g, di, di) {
            return Err(format!("part {i} has multiplicity {mi} but -D_{i} is not nef on itself"));
        }
        for (j, (dj, _)) in dec.parts.iter().enumerate().skip(i + 1) {
            if !anti_nef_on(g, di, dj) {
                return Err(format!("-D_{i} is not nef on D_{j}"));
            }
            if !(dj.lt(di) || disjoint(di, dj)) {
                return Err(format!("D_{i} and D_{j} are neither nested nor disjoint"));
            }
        }
    }
    Ok(())
}

fn anti_nef_on(g: &WeightedDualGraph, c: &Cycle, d: &Cycle) -> bool {
    (0..g.len()).all(|i| d.0[i] == 0 || g.degree_on(c, i) <= 0)
}

fn disjoint(a: &Cycle, b: &Cycle) -> bool {
    a.0.iter().zip(&b.0).all(|(x, y)| *x == 0 || *y == 0)
}

/// Chain-connected component decomposition by depth-first search over
/// chain-connected subcycles, largest first. The result is verified before
/// it is returned.
pub fn decompose(g: &WeightedDualGraph, d: &Cycle, budget: u64) -> Result<ChainDecomposition> {
    g.check_dim(d)?;
    if !d.is_effective() {
        return Err(Error::NotEffective);
    }
    check_budget(d, budget)?;
    let mut nodes = 0u64;
    let mut parts = Vec::new();
    if search(g, d, &mut parts, &mut nodes, budget) {
        let dec = ChainDecomposition { parts };
        verify_decomposition(g, d, &dec).map_err(Error::Invariant)?;
        Ok(dec)
    } else if nodes > budget {
        Err(Error::BudgetExceeded { budget, what: "decomposition search nodes".into() })
    } else {
        Err(Error::Invariant(format!("no chain-connected decomposition of {d} found")))
    }
}

fn search(
    g: &WeightedDualGraph,
    rest: &Cycle,
    parts: &mut Vec<(Cycle, u32)>,
    nodes: &mut u64,
    budget: u64,
) -> bool {
    if rest.is_zero() {
        return true;
    }
    let mut candidates: Vec<Cycle> = subcycles(rest)
        .filter(|c| !c.is_zero())
        .filter(|c| {
            parts.iter().all(|(p, _)| anti_nef_on(g, p, c) && (c.lt(p) || disjoint(p, c)))
        })
        .filter(|c| g.is_connected_on(&c.support_mask()) && chain_connected_unchecked(g, c))
        .collect();
    candidates.sort_by(|a, b| b.total().cmp(&a.total()).then_with(|| b.cmp(a)));
    for c in candidates {
        let max_m = (0..g.len())
            .filter(|&i| c.0[i] > 0)
            .map(|i| rest.0[i] / c.0[i])
            .min()
            .unwrap_or(0);
        let self_nef = anti_nef_on(g, &c, &c);
        for m in (1..=max_m).rev() {
            if m >= 2 && !self_nef {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return false;
            }
            parts.push((c.clone(), m as u32));
            let next = rest - &c.scaled(m);
            if search(g, &next, parts, nodes, budget) {
                return true;
            }
            parts.pop();
        }
    }
    false
}

/// Componentwise minimum of all effective cycles with full support that are
/// anti-nef on the whole graph, with coefficients up to `cap`. An oracle for
/// the fundamental cycle on small graphs.
pub fn anti_nef_minimum(g: &WeightedDualGraph, cap: i64) -> Option<Cycle> {
    let n = g.len();
    let ones = Cycle(vec![1; n]);
    let top = Cycle(vec![cap; n]);
    let mut best: Option<Cycle> = None;
    let mut c = ones.clone();
    loop {
        if lattice::is_anti_nef_on(g, &c, &ones).unwrap_or(false) {
            best = Some(match best {
                None => c.clone(),
                Some(b) => b.componentwise_min(&c),
            });
        }
        let mut i = 0;
        while i < n && c.0[i] == top.0[i] {
            c.0[i] = 1;
            i += 1;
        }
        if i == n {
            return best;
        }
        c.0[i] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs;
    use crate::lattice::{Edge, VertexData};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn full(g: &WeightedDualGraph) -> Vec<usize> {
        (0..g.len()).collect()
    }

    #[test]
    fn chains_have_reduced_fundamental_cycle() {
        for n in 1..=10 {
            let g = graphs::a_n(n);
            assert_eq!(fundamental_cycle_full(&g).unwrap(), Cycle(vec![1; n]));
        }
    }

    #[test]
    fn e8_fundamental_cycle() {
        let (z, seq) = fundamental_cycle(&graphs::e8(), &full(&graphs::e8())).unwrap();
        assert_eq!(z, Cycle(vec![2, 4, 6, 5, 4, 3, 2, 3]));
        assert_eq!(seq.start, 0);
        assert_eq!(seq.cycles.len(), seq.steps.len() + 1);
        assert_eq!(seq.cycles.last(), Some(&z));
        assert_eq!(z.total() as usize, seq.cycles.len());
    }

    #[test]
    fn computation_sequence_steps_meet_positively() {
        let g = graphs::e7();
        let (_, seq) = fundamental_cycle(&g, &full(&g)).unwrap();
        for (prev, &v) in seq.cycles.iter().zip(&seq.steps) {
            assert!(g.degree_on(prev, v) > 0);
        }
    }

    #[test]
    fn single_vertex_is_its_own_fundamental_cycle() {
        for w in -5..=-1 {
            assert_eq!(fundamental_cycle_full(&graphs::single(w, 3)).unwrap(), Cycle(vec![1]));
        }
    }

    #[test]
    fn subsupport_fundamental_cycle() {
        // D6 minus the far chain end is D5.
        let g = graphs::d_n(6);
        let (z, _) = fundamental_cycle(&g, &[0, 1, 2, 3, 5]).unwrap();
        assert_eq!(z, Cycle(vec![1, 2, 2, 1, 0, 1]));
    }

    #[test]
    fn support_errors() {
        let g = graphs::a_n(3);
        assert_eq!(fundamental_cycle(&g, &[]).unwrap_err(), Error::EmptySupport);
        assert_eq!(fundamental_cycle(&g, &[0, 2]).unwrap_err(), Error::DisconnectedSupport);
        let bad = WeightedDualGraph::new_unchecked_definiteness(
            vec![VertexData::rational(-1), VertexData::rational(-1)],
            vec![Edge::with_multiplicity(0, 1, 2)],
        )
        .unwrap();
        assert_eq!(fundamental_cycle(&bad, &[0, 1]).unwrap_err(), Error::NotNegativeDefinite);
    }

    #[test]
    fn laufer_agrees_with_anti_nef_minimum_on_ade() {
        for g in graphs::ade_family(6) {
            assert_eq!(Some(fundamental_cycle_full(&g).unwrap()), anti_nef_minimum(&g, 6));
        }
    }

    #[test]
    fn start_vertex_does_not_matter() {
        for g in graphs::ade_family(7).into_iter().chain([graphs::b1_a_b2()]) {
            let mask = vec![true; g.len()];
            let z = fundamental_cycle_full(&g).unwrap();
            for s in 0..g.len() {
                assert_eq!(laufer(&g, &mask, s, |_, _| {}).unwrap(), z);
            }
        }
    }

    #[test]
    fn chain_connectedness_examples() {
        let a2 = graphs::a_n(2);
        let b = DEFAULT_SUBCYCLE_BUDGET;
        assert!(is_chain_connected(&a2, &Cycle(vec![1, 1]), b).unwrap());
        assert!(is_chain_connected(&a2, &Cycle(vec![1, 0]), b).unwrap());
        // C = (1,1) leaves E1, and C.E1 = -1.
        assert!(!is_chain_connected(&a2, &Cycle(vec![2, 1]), b).unwrap());
        assert!(!is_chain_connected(&a2, &Cycle(vec![2, 2]), b).unwrap());
        assert!(!is_chain_connected(&a2, &Cycle(vec![2, 0]), b).unwrap());
        for g in graphs::ade_family(8) {
            let z = fundamental_cycle_full(&g).unwrap();
            assert!(is_chain_connected(&g, &z, b).unwrap());
        }
    }

    #[test]
    fn chain_connectedness_budget() {
        let g = graphs::e8();
        let z = fundamental_cycle_full(&g).unwrap();
        let err = is_chain_connected(&g, &z, 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 10, .. }));
    }

    #[test]
    fn minimal_model_examples() {
        assert_eq!(minimal_model(&graphs::single(-2, 1), &Cycle(vec![1])).unwrap(), Cycle(vec![1]));
        let g = graphs::b1_a_b2();
        assert_eq!(minimal_model(&g, &Cycle(vec![1, 1, 1])).unwrap(), Cycle(vec![0, 1, 0]));
        assert_eq!(minimal_model(&graphs::single(-1, 1), &Cycle(vec![1])).unwrap(), Cycle(vec![1]));
        let err = minimal_model(&graphs::a_n(3), &Cycle(vec![1, 1, 1])).unwrap_err();
        assert_eq!(err.kind(), crate::error::ErrorKind::Domain);
    }

    #[test]
    fn minimal_model_is_order_independent() {
        // Elliptic vertex in the middle of an E8-like tree of (-2)-curves.
        let mut v = vec![VertexData::rational(-2); 8];
        v[2] = VertexData::new(-2, 1);
        let mut edges: Vec<Edge> = (1..7).map(|i| Edge::new(i - 1, i)).collect();
        edges.push(Edge::new(2, 7));
        let g = WeightedDualGraph::new(v, edges).unwrap();
        let z = fundamental_cycle_full(&g).unwrap();
        let reference = minimal_model(&g, &z).unwrap();
        assert!(chain_connected_unchecked(&g, &reference));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut order: Vec<usize> = (0..g.len()).collect();
        for _ in 0..10 {
            order.shuffle(&mut rng);
            assert_eq!(minimal_model_by_order(&g, &z, &order).unwrap(), reference);
        }
    }

    #[test]
    fn decompose_fundamental_cycle_is_trivial() {
        let g = graphs::e6();
        let z = fundamental_cycle_full(&g).unwrap();
        let dec = decompose(&g, &z, DEFAULT_SUBCYCLE_BUDGET).unwrap();
        assert_eq!(dec.parts, vec![(z, 1)]);
    }

    #[test]
    fn decompose_multiple_of_elliptic_vertex() {
        let g = graphs::single(-2, 1);
        let dec = decompose(&g, &Cycle(vec![2]), DEFAULT_SUBCYCLE_BUDGET).unwrap();
        assert_eq!(dec.parts, vec![(Cycle(vec![1]), 2)]);
    }

    #[test]
    fn decompose_fundamental_plus_special() {
        let g = graphs::b1_a_b2();
        let dec = decompose(&g, &Cycle(vec![1, 2, 1]), DEFAULT_SUBCYCLE_BUDGET).unwrap();
        assert_eq!(dec.parts, vec![(Cycle(vec![1, 1, 1]), 1), (Cycle(vec![0, 1, 0]), 1)]);
    }

    #[test]
    fn decompose_round_trips_on_small_cycles() {
        let g = graphs::b1_a_b2();
        for d in subcycles(&Cycle(vec![2, 3, 2])).filter(|c| !c.is_zero()) {
            let dec = decompose(&g, &d, DEFAULT_SUBCYCLE_BUDGET).unwrap();
            let sum = dec.parts.iter().fold(Cycle::zero(3), |acc, (p, m)| &acc + &p.scaled(*m as i64));
            assert_eq!(sum, d);
        }
    }

    #[test]
    fn subcycle_iteration_counts() {
        let d = Cycle(vec![2, 0, 1]);
        assert_eq!(subcycles(&d).count() as u64, subcycle_count(&d));
        assert_eq!(subcycle_count(&d), 6);
    }
}
