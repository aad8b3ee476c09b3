//! Exhaustive enumeration of small graphs up to isomorphism, and the runs
//! that verify every check or oracle on them.
//!
//! Two families are generated:
//!
//! * small graphs with every vertex labelled freely from given weight and
//!   genus sets, used for the oracle comparisons;
//! * graphs with one special vertex `A` (index 0) and all other vertices
//!   smooth rational (-2)-curves, used for the theorem checks. Removing `A`
//!   must leave a negative definite graph of (-2)-curves with multiplicities
//!   at most 2, which is a disjoint union of ADE diagrams, so these graphs
//!   are built from ADE forests plus the multiplicities of the edges to `A`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::Analysis;
use crate::cycles;
use crate::error::{Error, Result};
use crate::exact;
use crate::format;
use crate::genus;
use crate::graphs;
use crate::lattice::{self, Edge, VertexData, WeightedDualGraph};
use crate::oracle::{brute, pamax, verify};
use crate::report::{CheckId, TheoremReport, Verdict};
use crate::yau;

/// Largest graph size the special-vertex enumeration accepts.
pub const DEFAULT_MAX_VERTICES: usize = 8;
/// Largest graph size for the freely labelled family.
pub const SMALL_FAMILY_CAP: usize = 6;
/// Witnesses kept per check in a summary.
pub const WITNESS_LIMIT: usize = 25;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

/// A graph shape with weights: size, weights, and the full multiplicity
/// matrix (zero diagonal).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Skeleton {
    weights: Vec<i64>,
    mult: Vec<u32>,
}

impl Skeleton {
    fn len(&self) -> usize {
        self.weights.len()
    }

    /// Vertex `i` of the result is vertex `p[i]` of `self`.
    fn permuted(&self, p: &[usize]) -> Skeleton {
        let n = self.len();
        let mut mult = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                mult[i * n + j] = self.mult[p[i] * n + p[j]];
            }
        }
        Skeleton { weights: p.iter().map(|&i| self.weights[i]).collect(), mult }
    }

    fn canonical(&self, perms: &[Vec<usize>]) -> Skeleton {
        perms.iter().map(|p| self.permuted(p)).min().expect("at least one permutation")
    }

    fn matrix(&self) -> Vec<i64> {
        let n = self.len();
        let mut m: Vec<i64> = self.mult.iter().map(|&x| x as i64).collect();
        for i in 0..n {
            m[i * n + i] = self.weights[i];
        }
        m
    }

    fn automorphisms(&self, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
        perms.iter().filter(|p| self.permuted(p) == *self).cloned().collect()
    }

    fn graph(&self, genera: &[u32]) -> WeightedDualGraph {
        let n = self.len();
        let vertices = (0..n).map(|i| VertexData::new(self.weights[i], genera[i])).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.mult[i * n + j] > 0 {
                    edges.push(Edge::with_multiplicity(i, j, self.mult[i * n + j]));
                }
            }
        }
        WeightedDualGraph::new(vertices, edges).expect("enumerated skeletons are valid")
    }
}

/// Connected negative definite skeletons with at most `max_vertices`
/// vertices, one per isomorphism class, in a fixed order.
///
/// Every connected graph has a vertex whose removal leaves it connected, and
/// negative definiteness passes to induced subgraphs, so each class on `n`
/// vertices arises by adding a vertex to a class on `n - 1` vertices.
fn skeletons(max_vertices: usize, weights: &[i64], max_mult: u32) -> Vec<Skeleton> {
    let mut all = Vec::new();
    let mut level: BTreeSet<Skeleton> =
        weights.iter().map(|&w| Skeleton { weights: vec![w], mult: vec![0] }).collect();
    for n in 2..=max_vertices {
        all.extend(level.iter().cloned());
        let perms = permutations(n);
        let prev: Vec<Skeleton> = level.into_iter().collect();
        level = prev
            .par_iter()
            .flat_map_iter(|s| {
                let mut found = BTreeSet::new();
                for &w in weights {
                    for links in (0..n - 1).map(|_| 0..=max_mult).multi_cartesian_product() {
                        if links.iter().all(|&x| x == 0) {
                            continue;
                        }
                        let mut mult = vec![0; n * n];
                        for i in 0..n - 1 {
                            for j in 0..n - 1 {
                                mult[i * n + j] = s.mult[i * (n - 1) + j];
                            }
                            mult[i * n + n - 1] = links[i];
                            mult[(n - 1) * n + i] = links[i];
                        }
                        let mut ws = s.weights.clone();
                        ws.push(w);
                        let cand = Skeleton { weights: ws, mult };
                        if exact::is_negative_definite(n, &cand.matrix()) {
                            found.insert(cand.canonical(&perms));
                        }
                    }
                }
                found
            })
            .collect();
    }
    all.extend(level);
    all
}

/// Genus vectors up to the automorphisms of `s`: those lexicographically
/// smallest in their orbit.
fn genus_labelings(s: &Skeleton, genera: &[u32], perms: &[Vec<usize>]) -> Vec<Vec<u32>> {
    let aut = s.automorphisms(perms);
    (0..s.len())
        .map(|_| genera.iter().copied())
        .multi_cartesian_product()
        .filter(|g| aut.iter().all(|p| p.iter().map(|&i| g[i]).collect::<Vec<_>>() >= *g))
        .collect()
}

fn check_small_family(max_vertices: usize, weights: &[i64], genera: &[u32]) -> Result<()> {
    if max_vertices == 0 || max_vertices > SMALL_FAMILY_CAP {
        return Err(Error::InvalidArgument(format!(
            "max_vertices must be between 1 and {SMALL_FAMILY_CAP}, got {max_vertices}"
        )));
    }
    if weights.is_empty() || genera.is_empty() {
        return Err(Error::InvalidArgument("weight and genus sets must be non-empty".into()));
    }
    if let Some(w) = weights.iter().find(|&&w| w > -1) {
        return Err(Error::InvalidArgument(format!("weight {w} is above -1")));
    }
    Ok(())
}

/// Every connected negative definite graph with at most `max_vertices`
/// vertices, weights from `weights`, genera from `genera` and edge
/// multiplicities up to `max_mult`, up to isomorphism.
pub fn small_graphs(
    max_vertices: usize,
    weights: &[i64],
    genera: &[u32],
    max_mult: u32,
) -> Result<Vec<WeightedDualGraph>> {
    check_small_family(max_vertices, weights, genera)?;
    let mut out = Vec::new();
    for s in skeletons(max_vertices, &sorted(weights), max_mult) {
        let perms = permutations(s.len());
        for g in genus_labelings(&s, &sorted(genera), &perms) {
            out.push(s.graph(&g));
        }
    }
    Ok(out)
}

fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort();
    v.dedup();
    v
}

/// A graph together with what went wrong on it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Witness {
    pub check: String,
    /// The graph in the text format, ready to be saved as a reproducer.
    pub graph: String,
    pub detail: String,
}

/// Sorts and keeps at most [`WITNESS_LIMIT`] witnesses per check.
fn trim(mut ws: Vec<Witness>) -> Vec<Witness> {
    ws.sort();
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    ws.retain(|w| {
        let c = seen.entry(w.check.clone()).or_default();
        *c += 1;
        *c <= WITNESS_LIMIT
    });
    ws
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OracleSummary {
    pub max_vertices: usize,
    pub weights: Vec<i64>,
    pub genera: Vec<u32>,
    pub max_multiplicity: u32,
    /// Isomorphism classes of weighted graphs, ignoring genera.
    pub skeletons: u64,
    pub graphs: u64,
    pub positive_genus: u64,
    pub fundamental_cycles_compared: u64,
    pub minimal_models_compared: u64,
    pub tyurina_components_compared: u64,
    pub mismatches: u64,
    pub witnesses: Vec<Witness>,
}

impl OracleSummary {
    fn merge(mut self, o: OracleSummary) -> OracleSummary {
        self.skeletons += o.skeletons;
        self.graphs += o.graphs;
        self.positive_genus += o.positive_genus;
        self.fundamental_cycles_compared += o.fundamental_cycles_compared;
        self.minimal_models_compared += o.minimal_models_compared;
        self.tyurina_components_compared += o.tyurina_components_compared;
        self.mismatches += o.mismatches;
        self.witnesses.extend(o.witnesses);
        self
    }

    fn mismatch(&mut self, check: &str, g: &WeightedDualGraph, detail: String) {
        self.mismatches += 1;
        self.witnesses.push(Witness { check: check.into(), graph: format::to_text(g), detail });
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "oracle comparison: max_vertices={} weights={:?} genera={:?} max_multiplicity={}",
            self.max_vertices, self.weights, self.genera, self.max_multiplicity
        )
        .unwrap();
        writeln!(
            out,
            "graphs: skeletons={} labelled={} positive_genus={}",
            self.skeletons, self.graphs, self.positive_genus
        )
        .unwrap();
        writeln!(
            out,
            "compared: fundamental_cycles={} minimal_models={} tyurina_components={}",
            self.fundamental_cycles_compared, self.minimal_models_compared, self.tyurina_components_compared
        )
        .unwrap();
        writeln!(out, "mismatches: {}", self.mismatches).unwrap();
        write_witnesses(&mut out, &self.witnesses);
        out
    }
}

fn write_witnesses(out: &mut String, ws: &[Witness]) {
    for w in ws {
        writeln!(out, "--- {}: {}", w.check, w.detail).unwrap();
        for line in w.graph.lines() {
            writeln!(out, "    {line}").unwrap();
        }
    }
}

fn compare_genus_labelled(g: &WeightedDualGraph, s: &mut OracleSummary) {
    s.graphs += 1;
    let z = match cycles::fundamental_cycle_full(g) {
        Ok(z) => z,
        Err(e) => return s.mismatch("fundamental-cycle", g, e.to_string()),
    };
    if genus::pa_raw(g, &z) <= 0 {
        return;
    }
    s.positive_genus += 1;
    let y = match yau::yau_sequence_from(g, z.clone()) {
        Ok(y) => y,
        Err(e) => return s.mismatch("yau-sequence", g, e.to_string()),
    };
    for d in &y.sequence {
        s.minimal_models_compared += 1;
        let oracle = brute::minimal_model_level_set(g, d).ok().flatten();
        let fast = cycles::minimal_model(g, d).ok();
        if oracle.is_none() || oracle != fast {
            s.mismatch("minimal-model", g, format!("of {d}: oracle {oracle:?}, computed {fast:?}"));
        }
    }
    for pair in y.sequence.windows(2) {
        s.tyurina_components_compared += 1;
        let oracle = brute::tyurina_level_set(g, &pair[0]).ok().flatten();
        if oracle.as_ref() != Some(&pair[1]) {
            s.mismatch("tyurina-component", g, format!("of {}: oracle {oracle:?}, computed {}", pair[0], pair[1]));
        }
    }
    let last = y.last();
    if lattice::intersect(g, last, &y.z_min).map_or(true, |v| v >= 0) {
        s.mismatch("tyurina-component", g, format!("sequence stopped at {last} with D_m . Z_min >= 0"));
    }
}

/// Compares the fast algorithms with the exhaustive oracles on every graph of
/// the freely labelled family: fundamental cycles against the anti-nef
/// minimum, and, for positive fundamental genus, minimal models and Tyurina
/// components along the Yau sequence against subcycle searches.
pub fn oracle_equivalence(
    max_vertices: usize,
    weights: &[i64],
    genera: &[u32],
    max_mult: u32,
) -> Result<OracleSummary> {
    check_small_family(max_vertices, weights, genera)?;
    let (weights, genera) = (sorted(weights), sorted(genera));
    let skel = skeletons(max_vertices, &weights, max_mult);
    let perm_table: Vec<Vec<Vec<usize>>> = (0..=max_vertices).map(permutations).collect();
    let mut total = skel
        .par_iter()
        .map(|sk| {
            let mut s = OracleSummary { skeletons: 1, ..Default::default() };
            let rational = sk.graph(&vec![0; sk.len()]);
            let fast = cycles::fundamental_cycle_full(&rational).ok();
            // The computed cycle only bounds the search box; any anti-nef
            // cycle in the box below it would show up as a smaller minimum.
            let oracle = fast.as_ref().and_then(|z| brute::anti_nef_minimum_in(&rational, z));
            s.fundamental_cycles_compared += 1;
            if oracle.is_none() || oracle != fast {
                s.mismatch("fundamental-cycle", &rational, format!("oracle {oracle:?}, computed {fast:?}"));
            }
            for labels in genus_labelings(sk, &genera, &perm_table[sk.len()]) {
                compare_genus_labelled(&sk.graph(&labels), &mut s);
            }
            s
        })
        .reduce(OracleSummary::default, OracleSummary::merge);
    total.max_vertices = max_vertices;
    total.weights = weights;
    total.genera = genera;
    total.max_multiplicity = max_mult;
    total.witnesses = trim(total.witnesses);
    Ok(total)
}

/// An ADE forest: components in a fixed order, relabelled consecutively.
struct Forest {
    size: usize,
    edges: Vec<(usize, usize)>,
    component: Vec<usize>,
    components: usize,
    automorphisms: Vec<Vec<usize>>,
}

fn ade_components(max: usize) -> Vec<WeightedDualGraph> {
    graphs::ade_family(max).into_iter().filter(|g| g.len() <= max).collect()
}

/// Multisets of indices into `parts` (as non-decreasing index lists) with
/// total size at most `budget`.
fn multisets(sizes: &[usize], from: usize, budget: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(current.clone());
    for i in from..sizes.len() {
        if sizes[i] <= budget {
            current.push(i);
            multisets(sizes, i, budget - sizes[i], current, out);
            current.pop();
        }
    }
}

fn forests(max_size: usize) -> Vec<Forest> {
    let parts = ade_components(max_size);
    let sizes: Vec<usize> = parts.iter().map(|g| g.len()).collect();
    let mut choices = Vec::new();
    multisets(&sizes, 0, max_size, &mut Vec::new(), &mut choices);
    let perm_table: Vec<Vec<Vec<usize>>> = (0..=max_size).map(permutations).collect();
    choices
        .into_par_iter()
        .map(|choice| {
            let mut edges = Vec::new();
            let mut component = Vec::new();
            for (c, &i) in choice.iter().enumerate() {
                let base = component.len();
                edges.extend(parts[i].edges().iter().map(|e| (base + e.a, base + e.b)));
                component.extend(std::iter::repeat_n(c, parts[i].len()));
            }
            let size = component.len();
            let adjacent: BTreeSet<(usize, usize)> =
                edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
            let automorphisms = perm_table[size]
                .iter()
                .filter(|p| edges.iter().all(|&(a, b)| adjacent.contains(&(p[a], p[b]))))
                .cloned()
                .collect();
            Forest { size, edges, component, components: choice.len(), automorphisms }
        })
        .collect()
}

/// Multiplicities of the edges from `A` to each forest vertex, one per orbit
/// of the forest's automorphisms, touching every component.
fn attachments(f: &Forest) -> Vec<Vec<u32>> {
    (0..f.size)
        .map(|_| 0..=2u32)
        .multi_cartesian_product()
        .filter(|a| {
            let mut touched = vec![false; f.components];
            for (v, &m) in a.iter().enumerate() {
                touched[f.component[v]] |= m > 0;
            }
            touched.iter().all(|&t| t)
        })
        .filter(|a| f.automorphisms.iter().all(|p| p.iter().map(|&i| a[i]).collect::<Vec<_>>() >= *a))
        .collect()
}

fn special_graph(f: &Forest, attach: &[u32], special: VertexData) -> Result<WeightedDualGraph> {
    let mut names = vec!["A".to_string()];
    names.extend((1..=f.size).map(|i| format!("B{i}")));
    let mut vertices = vec![special];
    vertices.extend(std::iter::repeat_n(VertexData::rational(-2), f.size));
    let mut edges: Vec<Edge> = attach
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(v, &m)| Edge::with_multiplicity(0, v + 1, m))
        .collect();
    edges.extend(f.edges.iter().map(|&(a, b)| Edge::new(a + 1, b + 1)));
    WeightedDualGraph::from_parts(names, vertices, edges, false)
}

/// Every connected graph with at most `max_vertices` vertices consisting of
/// one special vertex `A` (index 0, named `A`) with data from `specials` and
/// smooth rational (-2)-curves otherwise, edge multiplicities at most 2,
/// that is negative definite. One graph per isomorphism class.
pub fn special_graphs(max_vertices: usize, specials: &[VertexData]) -> Result<Vec<WeightedDualGraph>> {
    let mut out = Vec::new();
    for_each_special_graph(max_vertices, specials, |g| out.push(g.clone()))?;
    Ok(out)
}

fn check_specials(max_vertices: usize, specials: &[VertexData]) -> Result<()> {
    if max_vertices == 0 || max_vertices > DEFAULT_MAX_VERTICES {
        return Err(Error::InvalidArgument(format!(
            "max_vertices must be between 1 and {DEFAULT_MAX_VERTICES}, got {max_vertices}"
        )));
    }
    for v in specials {
        if v.weight > -1 {
            return Err(Error::InvalidArgument(format!("special weight {} is above -1", v.weight)));
        }
        if v.is_rational_minus_two() {
            return Err(Error::InvalidArgument("the special vertex cannot be a rational (-2)-curve".into()));
        }
    }
    Ok(())
}

fn for_each_special_graph(
    max_vertices: usize,
    specials: &[VertexData],
    mut f: impl FnMut(&WeightedDualGraph),
) -> Result<u64> {
    check_specials(max_vertices, specials)?;
    let mut candidates = 0;
    for forest in forests(max_vertices - 1) {
        for attach in attachments(&forest) {
            for &s in specials {
                candidates += 1;
                let g = special_graph(&forest, &attach, s)?;
                if g.is_negative_definite() {
                    f(&g);
                }
            }
        }
    }
    Ok(candidates)
}

/// The special vertex data for given weight and genus sets, skipping
/// rational (-2)- and (-1)-curves.
pub fn special_vertices(weights: &[i64], genera: &[u32]) -> Vec<VertexData> {
    let mut out = Vec::new();
    for &w in &sorted(weights) {
        for &g in &sorted(genera) {
            let v = VertexData::new(w, g);
            if !v.is_rational_minus_two() && !(w == -1 && g == 0) {
                out.push(v);
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct VerdictCounts {
    pub pass: u64,
    pub fail: u64,
    pub not_applicable: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CaseCount {
    pub case: u8,
    pub graphs: u64,
    /// Graphs whose tables allow `D_m = Z_min`.
    pub admissible: u64,
    /// Graphs with `D_m = Z_min`.
    pub dm_is_zmin: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationSummary {
    pub max_vertices: usize,
    pub special_weights: Vec<i64>,
    pub special_genera: Vec<u32>,
    /// Connected graphs generated before the definiteness filter.
    pub candidates: u64,
    pub negative_definite: u64,
    pub positive_genus: u64,
    pub checks: BTreeMap<CheckId, VerdictCounts>,
    pub cases: Vec<CaseCount>,
    pub unmatched: u64,
    pub blocking_failures: u64,
    pub advisory_failures: u64,
    /// Computations that returned an error.
    pub errors: u64,
    pub witnesses: Vec<Witness>,
}

impl EnumerationSummary {
    fn merge(mut self, o: EnumerationSummary) -> EnumerationSummary {
        self.candidates += o.candidates;
        self.negative_definite += o.negative_definite;
        self.positive_genus += o.positive_genus;
        for (k, v) in o.checks {
            let e = self.checks.entry(k).or_default();
            e.pass += v.pass;
            e.fail += v.fail;
            e.not_applicable += v.not_applicable;
        }
        for c in o.cases {
            match self.cases.iter_mut().find(|x| x.case == c.case) {
                Some(x) => {
                    x.graphs += c.graphs;
                    x.admissible += c.admissible;
                    x.dm_is_zmin += c.dm_is_zmin;
                }
                None => self.cases.push(c),
            }
        }
        self.unmatched += o.unmatched;
        self.blocking_failures += o.blocking_failures;
        self.advisory_failures += o.advisory_failures;
        self.errors += o.errors;
        self.witnesses.extend(o.witnesses);
        self
    }

    pub fn counts(&self, id: CheckId) -> VerdictCounts {
        self.checks.get(&id).copied().unwrap_or_default()
    }

    fn record(&mut self, g: &WeightedDualGraph, r: &verify::GraphReport) {
        for t in &r.reports {
            let e = self.checks.entry(t.check).or_default();
            match t.verdict {
                Verdict::Pass => e.pass += 1,
                Verdict::Fail => e.fail += 1,
                Verdict::NotApplicable => e.not_applicable += 1,
            }
            if t.verdict == Verdict::Fail {
                if t.advisory {
                    self.advisory_failures += 1;
                } else {
                    self.blocking_failures += 1;
                }
                if t.check == CheckId::Classification {
                    self.unmatched += 1;
                }
                self.witnesses.push(Witness {
                    check: t.check.as_str().into(),
                    graph: format::to_text(g),
                    detail: describe(t),
                });
            }
        }
        let matched = r.classification.as_ref().and_then(|c| {
            let m = c.template.as_ref()?.matched()?;
            Some((m.case_number, c.tables.as_ref()?))
        });
        if let Some((case, tables)) = matched {
            let dm_is_zmin = tables.dm_computed == tables.zmin_computed;
            let i = match self.cases.iter().position(|c| c.case == case) {
                Some(i) => i,
                None => {
                    self.cases.push(CaseCount { case, ..Default::default() });
                    self.cases.len() - 1
                }
            };
            let c = &mut self.cases[i];
            c.graphs += 1;
            c.admissible += tables.admissible as u64;
            c.dm_is_zmin += dm_is_zmin as u64;
        }
    }

    fn error(&mut self, g: &WeightedDualGraph, e: &Error) {
        self.errors += 1;
        self.witnesses.push(Witness { check: "error".into(), graph: format::to_text(g), detail: e.to_string() });
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "enumeration: max_vertices={} special_weights={:?} special_genera={:?}",
            self.max_vertices, self.special_weights, self.special_genera
        )
        .unwrap();
        writeln!(
            out,
            "graphs: candidates={} negative_definite={} positive_genus={}",
            self.candidates, self.negative_definite, self.positive_genus
        )
        .unwrap();
        writeln!(out, "{:<24} {:>9} {:>9} {:>9}", "check", "pass", "fail", "n/a").unwrap();
        for id in CheckId::ALL {
            let c = self.counts(id);
            let mark = if id.is_advisory() { " (advisory)" } else { "" };
            writeln!(out, "{:<24} {:>9} {:>9} {:>9}{mark}", id.as_str(), c.pass, c.fail, c.not_applicable).unwrap();
        }
        for c in &self.cases {
            writeln!(
                out,
                "case {}: graphs={} admissible={} dm_is_zmin={}",
                c.case, c.graphs, c.admissible, c.dm_is_zmin
            )
            .unwrap();
        }
        writeln!(out, "unmatched: {}", self.unmatched).unwrap();
        writeln!(out, "blocking failures: {}", self.blocking_failures).unwrap();
        writeln!(out, "advisory failures: {}", self.advisory_failures).unwrap();
        writeln!(out, "errors: {}", self.errors).unwrap();
        write_witnesses(&mut out, &self.witnesses);
        out
    }
}

fn describe(t: &TheoremReport) -> String {
    let show = |q: &Option<crate::report::Quantity>| q.as_ref().map_or("none".to_string(), |q| q.to_string());
    let mut s = format!("predicted {}, computed {}", show(&t.predicted), show(&t.computed));
    for i in &t.info {
        s.push_str("; ");
        s.push_str(i);
    }
    s
}

fn verify_one(g: &WeightedDualGraph, s: &mut EnumerationSummary) {
    s.negative_definite += 1;
    let run = || -> Result<verify::GraphReport> {
        let a = Analysis::new(g)?;
        let pa = if a.fundamental_genus > 0 && (1..=3).contains(&a.degree) {
            Some(pamax::pa_max(g, None)?)
        } else {
            None
        };
        verify::run_checks_with(g, &a, pa)
    };
    match run() {
        Ok(r) => {
            if r.fundamental_genus > 0 {
                s.positive_genus += 1;
            }
            s.record(g, &r);
        }
        Err(e) => s.error(g, &e),
    }
}

fn finish(mut s: EnumerationSummary) -> EnumerationSummary {
    s.cases.sort_by_key(|c| c.case);
    s.witnesses = trim(s.witnesses);
    s
}

/// Runs every check on each graph and tallies the verdicts.
pub fn verify_graphs(graphs: &[WeightedDualGraph]) -> EnumerationSummary {
    let s = graphs
        .par_iter()
        .map(|g| {
            let mut s = EnumerationSummary { candidates: 1, ..Default::default() };
            verify_one(g, &mut s);
            s
        })
        .reduce(EnumerationSummary::default, EnumerationSummary::merge);
    finish(s)
}

/// Enumerates the special-vertex family up to `max_vertices` (at most
/// [`DEFAULT_MAX_VERTICES`]) and runs every check on each graph.
pub fn enumerate_and_verify(
    max_vertices: usize,
    special_weights: &[i64],
    special_genera: &[u32],
) -> Result<EnumerationSummary> {
    let specials = special_vertices(special_weights, special_genera);
    check_specials(max_vertices, &specials)?;
    let work: Vec<(Forest, Vec<Vec<u32>>)> = forests(max_vertices - 1)
        .into_iter()
        .map(|f| {
            let a = attachments(&f);
            (f, a)
        })
        .collect();
    let items: Vec<(&Forest, &Vec<u32>)> =
        work.iter().flat_map(|(f, atts)| atts.iter().map(move |a| (f, a))).collect();
    let s = items
        .par_iter()
        .map(|&(f, attach)| {
            let mut s = EnumerationSummary::default();
            for &v in &specials {
                s.candidates += 1;
                match special_graph(f, attach, v) {
                    Ok(g) if g.is_negative_definite() => verify_one(&g, &mut s),
                    Ok(_) => {}
                    Err(e) => s.errors += u64::from(!matches!(e, Error::NotNegativeDefinite)),
                }
            }
            s
        })
        .reduce(EnumerationSummary::default, EnumerationSummary::merge);
    let mut s = finish(s);
    s.max_vertices = max_vertices;
    s.special_weights = sorted(special_weights);
    s.special_genera = sorted(special_genera);
    Ok(s)
}

/// Count of graphs [`special_graphs`] yields, without building reports.
pub fn count_special_graphs(max_vertices: usize, specials: &[VertexData]) -> Result<(u64, u64)> {
    let mut kept = 0;
    let candidates = for_each_special_graph(max_vertices, specials, |_| kept += 1)?;
    Ok((candidates, kept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::fundamental_cycle_full;

    /// Smallest relabelling of (weights, genera, matrix); equal exactly for
    /// isomorphic graphs.
    fn canonical_key(g: &WeightedDualGraph) -> Vec<i64> {
        let n = g.len();
        (0..n)
            .permutations(n)
            .map(|p| {
                let mut key: Vec<i64> = p.iter().map(|&i| g.vertex(i).genus as i64).collect();
                for &i in &p {
                    for &j in &p {
                        key.push(g.entry(i, j));
                    }
                }
                key
            })
            .min()
            .unwrap()
    }

    #[test]
    fn single_vertices() {
        let gs = small_graphs(1, &[-2, -3], &[0, 1], 2).unwrap();
        assert_eq!(gs.len(), 4);
    }

    #[test]
    fn two_vertex_classes() {
        // Weights {-2,-3}, multiplicity 1 or 2: every pair is definite except
        // two (-2)-curves joined by a double edge, which has determinant 0.
        let gs = small_graphs(2, &[-2, -3], &[0], 2).unwrap();
        assert_eq!(gs.iter().filter(|g| g.len() == 2).count(), 5);
    }

    #[test]
    fn rational_minus_two_trees_are_ade() {
        // Connected definite graphs of rational (-2)-curves on n vertices:
        // A_n, plus D_n for n >= 4, plus E_n for n = 6.
        let gs = small_graphs(6, &[-2], &[0], 2).unwrap();
        let count = |n| gs.iter().filter(|g| g.len() == n).count();
        assert_eq!((count(1), count(2), count(3), count(4), count(5), count(6)), (1, 1, 1, 2, 2, 3));
    }

    #[test]
    fn small_graphs_are_pairwise_non_isomorphic() {
        let gs = small_graphs(4, &[-2, -3], &[0, 1], 2).unwrap();
        let keys: BTreeSet<Vec<i64>> = gs.iter().map(canonical_key).collect();
        assert_eq!(keys.len(), gs.len());
        for g in &gs {
            assert!(g.is_negative_definite());
            assert!(fundamental_cycle_full(g).is_ok());
        }
    }

    #[test]
    fn forests_up_to_three() {
        let fs = forests(3);
        // {}, A1, A2, A3, A1+A1, A1+A2, A1+A1+A1.
        assert_eq!(fs.len(), 7);
    }

    #[test]
    fn attachments_respect_symmetry() {
        let f = forests(2).into_iter().find(|f| f.components == 1 && f.size == 2).unwrap();
        // A2: (a, b) up to swapping, not both zero: 01 02 11 12 22.
        assert_eq!(attachments(&f).len(), 5);
    }

    #[test]
    fn special_family_contains_the_elliptic_path() {
        let gs = special_graphs(3, &[VertexData::new(-2, 1)]).unwrap();
        let target = canonical_key(&graphs::b1_a_b2());
        assert!(gs.iter().any(|g| canonical_key(g) == target));
        let keys: BTreeSet<Vec<i64>> = gs.iter().map(canonical_key).collect();
        assert_eq!(keys.len(), gs.len());
    }

    #[test]
    fn special_family_size_one() {
        let specials = special_vertices(&[-1, -2, -3], &[0, 1]);
        assert_eq!(specials.len(), 4);
        let gs = special_graphs(1, &specials).unwrap();
        assert_eq!(gs.len(), 4);
    }

    #[test]
    fn rejects_out_of_range_sizes() {
        let err = enumerate_and_verify(9, &[-2], &[1]).unwrap_err();
        assert_eq!(err.kind(), crate::error::ErrorKind::Input);
        assert!(small_graphs(7, &[-2], &[0], 2).is_err());
    }

    #[test]
    fn three_vertex_run_passes() {
        let s = enumerate_and_verify(3, &[-2], &[1]).unwrap();
        assert_eq!(s.blocking_failures, 0, "{}", s.to_text());
        assert_eq!(s.errors, 0);
        assert!(s.counts(CheckId::DegreeTwoGenus).pass > 0);
        assert!(s.cases.iter().any(|c| c.case == 1));
    }

    #[test]
    fn oracle_run_on_tiny_family() {
        let s = oracle_equivalence(3, &[-2, -3], &[0, 1], 2).unwrap();
        assert_eq!(s.mismatches, 0, "{}", s.to_text());
        assert!(s.tyurina_components_compared > 0);
    }

    #[test]
    fn summaries_are_deterministic() {
        let a = enumerate_and_verify(4, &[-1, -2, -3], &[1, 2]).unwrap();
        let b = enumerate_and_verify(4, &[-3, -2, -1], &[2, 1]).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
