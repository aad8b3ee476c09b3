//! Essential irreducibility, the branches at the special vertex, and template
//! matching of `Gamma'` for degree-two singularities.

pub mod ade;
pub mod templates;

use serde::Serialize;

use crate::cycles;
use crate::error::{Error, Result};
use crate::genus;
use crate::lattice::{Cycle, WeightedDualGraph};
use crate::yau::YauData;

pub use ade::{AdeShape, AdeType};
pub use templates::TemplateCase;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EssentialIrreducibility {
    pub holds: bool,
    /// The unique component of `Z` that is not a smooth rational (-2)-curve.
    pub special_vertex: Option<usize>,
    /// Its coefficient in `Z`.
    pub k: Option<i64>,
}

/// Whether `Z` has exactly one component that is not a smooth rational
/// (-2)-curve. Needs positive fundamental genus.
pub fn essential_irreducibility(g: &WeightedDualGraph) -> Result<EssentialIrreducibility> {
    let z = cycles::fundamental_cycle_full(g)?;
    let p = genus::pa(g, &z)?;
    if p <= 0 {
        return Err(Error::Domain(format!(
            "essential irreducibility needs positive fundamental genus, got {p}"
        )));
    }
    Ok(essential_irreducibility_of(g, &z))
}

pub(crate) fn essential_irreducibility_of(g: &WeightedDualGraph, z: &Cycle) -> EssentialIrreducibility {
    let special: Vec<usize> = z
        .support()
        .into_iter()
        .filter(|&i| !g.vertex(i).is_rational_minus_two())
        .collect();
    match special.as_slice() {
        [a] => EssentialIrreducibility { holds: true, special_vertex: Some(*a), k: Some(z.0[*a]) },
        _ => EssentialIrreducibility { holds: false, special_vertex: None, k: None },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub vertices: Vec<usize>,
    pub ade: Option<AdeType>,
    pub negative_definite: bool,
    /// `(Z restricted to the branch) . Z`.
    pub z_dot: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TemplateMatch {
    pub case: TemplateCase,
    pub case_number: u8,
    pub m_prime: Option<usize>,
    pub n_prime: Option<usize>,
    pub k_prime: Option<usize>,
    pub z_pattern: Cycle,
    pub dm_table: Cycle,
    pub zmin_table: Cycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum MatchOutcome {
    Matched(TemplateMatch),
    Unmatched { reason: String },
}

impl MatchOutcome {
    pub fn matched(&self) -> Option<&TemplateMatch> {
        match self {
            MatchOutcome::Matched(m) => Some(m),
            MatchOutcome::Unmatched { .. } => None,
        }
    }
}

/// Table values for `D_m` and `Z_min` on `Gamma'`, next to the computed ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableCheck {
    pub dm_table: Cycle,
    pub zmin_table: Cycle,
    /// Whether the tables allow `D_m = Z_min` on `Gamma'`.
    pub admissible: bool,
    pub dm_computed: Cycle,
    pub zmin_computed: Cycle,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationResult {
    pub special_vertex: usize,
    pub k: i64,
    pub branches: Vec<Branch>,
    /// Indices into `branches` of those meeting `Z` negatively.
    pub negative_set: Vec<usize>,
    /// `A` together with the negative branches, sorted.
    pub gamma_prime: Vec<usize>,
    /// For `m > 1`: whether the negative branches are exactly those meeting
    /// `Z - D_m`.
    pub negative_branches_meet_tail: Option<bool>,
    pub all_branches_ade: bool,
    pub template: Option<MatchOutcome>,
    pub tables: Option<TableCheck>,
}

impl ClassificationResult {
    pub fn gamma_prime_mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.gamma_prime {
            m[v] = true;
        }
        m
    }
}

/// Deletes `A`, splits the rest into branches, and collects those on which
/// `Z` is negative.
pub fn extract_gamma_prime(
    g: &WeightedDualGraph,
    ei: &EssentialIrreducibility,
    yau: &YauData,
) -> Result<ClassificationResult> {
    let (Some(a), Some(k), true) = (ei.special_vertex, ei.k, ei.holds) else {
        return Err(Error::Domain("fundamental cycle is not essentially irreducible".into()));
    };
    let z = &yau.sequence[0];
    let mut rest = vec![true; g.len()];
    rest[a] = false;
    let degrees = g.degrees(z);
    let branches: Vec<Branch> = g
        .components_on(&rest)
        .into_iter()
        .map(|vertices| {
            let z_dot = vertices.iter().map(|&v| z.0[v] * degrees[v]).sum();
            Branch {
                ade: ade::recognize(g, &vertices).map(|s| s.ty()),
                negative_definite: g.is_negative_definite_on(&vertices),
                z_dot,
                vertices,
            }
        })
        .collect();
    let negative_set: Vec<usize> = (0..branches.len()).filter(|&i| branches[i].z_dot < 0).collect();
    let mut gamma_prime = vec![a];
    for &i in &negative_set {
        gamma_prime.extend(&branches[i].vertices);
    }
    gamma_prime.sort_unstable();
    let negative_branches_meet_tail = (yau.length > 1).then(|| {
        let tail = z - yau.last();
        let meeting: Vec<usize> = (0..branches.len())
            .filter(|&i| branches[i].vertices.iter().any(|&v| tail.0[v] != 0))
            .collect();
        meeting == negative_set
    });
    let all_branches_ade = branches.iter().all(|b| b.ade.is_some() && b.negative_definite);
    Ok(ClassificationResult {
        special_vertex: a,
        k,
        branches,
        negative_set,
        gamma_prime,
        negative_branches_meet_tail,
        all_branches_ade,
        template: None,
        tables: None,
    })
}

/// Matches `Gamma'` and `Z` on it against the eight templates. Only
/// meaningful when the Yau sequence has length at least two.
pub fn match_template(
    g: &WeightedDualGraph,
    cr: &ClassificationResult,
    yau: &YauData,
) -> Result<MatchOutcome> {
    Ok(match_all(g, cr, yau)?.0)
}

fn match_all(
    g: &WeightedDualGraph,
    cr: &ClassificationResult,
    yau: &YauData,
) -> Result<(MatchOutcome, Vec<templates::Candidate>)> {
    if yau.length < 2 {
        return Err(Error::Domain("template matching needs a Yau sequence of length > 1".into()));
    }
    let a = cr.special_vertex;
    let z = &yau.sequence[0];
    let mut shapes = Vec::new();
    for &i in &cr.negative_set {
        match ade::recognize(g, &cr.branches[i].vertices) {
            Some(s) => shapes.push(s),
            None => {
                let reason = format!("branch {i} is not an ADE diagram");
                return Ok((MatchOutcome::Unmatched { reason }, Vec::new()));
            }
        }
    }
    let in_gamma = cr.gamma_prime_mask(g.len());
    let mut attach: Vec<(usize, i64)> =
        g.neighbors(a).iter().copied().filter(|&(u, _)| in_gamma[u]).collect();
    attach.sort_unstable();
    let hits: Vec<templates::Candidate> = templates::candidates(a, &shapes)
        .into_iter()
        .filter(|c| c.attach == attach && c.z.iter().all(|&(v, x)| z.0[v] == x))
        .collect();
    let mut cases: Vec<TemplateCase> = hits.iter().map(|c| c.case).collect();
    cases.sort();
    cases.dedup();
    let outcome = match cases.as_slice() {
        [] => MatchOutcome::Unmatched {
            reason: format!(
                "no template fits branches [{}]",
                shapes.iter().map(|s| s.ty().to_string()).collect::<Vec<_>>().join(", ")
            ),
        },
        [_] => {
            let c = &hits[0];
            let n = g.len();
            MatchOutcome::Matched(TemplateMatch {
                case: c.case,
                case_number: c.case.number(),
                m_prime: c.m_prime,
                n_prime: c.n_prime,
                k_prime: c.k_prime,
                z_pattern: templates::to_cycle(n, &c.z),
                dm_table: templates::to_cycle(n, &c.dm),
                zmin_table: templates::to_cycle(n, &c.zmin),
            })
        }
        many => MatchOutcome::Unmatched {
            reason: format!("ambiguous: {} templates fit", many.len()),
        },
    };
    Ok((outcome, hits))
}

/// Compares the template tables with the computed `D_m` and `Z_min` on
/// `Gamma'`. When several placements of the matched template fit (a symmetry
/// of `Gamma'`), agreement with any of them counts.
pub fn template_tables(
    g: &WeightedDualGraph,
    cr: &ClassificationResult,
    yau: &YauData,
) -> Result<TableCheck> {
    let (outcome, hits) = match_all(g, cr, yau)?;
    let Some(m) = outcome.matched() else {
        return Err(Error::Domain("Gamma' matches no template".into()));
    };
    let n = g.len();
    let mask = cr.gamma_prime_mask(n);
    let dm_computed = yau.last().restricted(&mask);
    let zmin_computed = yau.z_min.restricted(&mask);
    let fitting = hits.iter().find(|c| {
        templates::to_cycle(n, &c.dm) == dm_computed && templates::to_cycle(n, &c.zmin) == zmin_computed
    });
    let (dm_table, zmin_table) = match fitting {
        Some(c) => (templates::to_cycle(n, &c.dm), templates::to_cycle(n, &c.zmin)),
        None => (m.dm_table.clone(), m.zmin_table.clone()),
    };
    Ok(TableCheck {
        admissible: dm_table == zmin_table,
        agrees: fitting.is_some(),
        dm_table,
        zmin_table,
        dm_computed,
        zmin_computed,
    })
}

/// Full pipeline: essential irreducibility, branches, and for `m > 1` the
/// template match and tables.
pub fn classify(g: &WeightedDualGraph, yau: &YauData) -> Result<ClassificationResult> {
    let ei = essential_irreducibility_of(g, &yau.sequence[0]);
    let mut cr = extract_gamma_prime(g, &ei, yau)?;
    if yau.length > 1 {
        let outcome = match_template(g, &cr, yau)?;
        if outcome.matched().is_some() {
            cr.tables = Some(template_tables(g, &cr, yau)?);
        }
        cr.template = Some(outcome);
    }
    Ok(cr)
}
