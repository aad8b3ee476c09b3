//! Three-valued check reports shared by the theorem checks and the harness.

use std::fmt;

use serde::Serialize;

use crate::lattice::{Cycle, RationalCycle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

/// Every identity or property the harness evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    /// `p_a(Y) = m(p_f - 1) + 1`.
    YauGenus,
    /// Elliptic, numerically Gorenstein, minimal: `Y = Z_K`.
    EllipticYauCanonical,
    /// Degree one, essentially irreducible: `Z_K = (2 p_f - 1) Y`.
    DegreeOneCanonical,
    /// Degree two, essentially irreducible, `D_m = Z_min`: `Z_K = p_f Y`.
    DegreeTwoCanonical,
    /// Essentially irreducible, `K.A + Z^2 >= 0`, `D_m = Z_min`:
    /// `Z_K = ((2 - 2 p_f)/Z^2 + 1) Y`.
    GeneralCanonical,
    /// Degree one, essentially irreducible: `p_a(V) = p(p-1)m/2 + 1`.
    DegreeOneGenus,
    /// Degree one: `p_a(V) >= p(p-1)m/2 + 1`.
    DegreeOneGenusBound,
    /// Degree two, essentially irreducible, `D_m = Z_min`: `p_a(V) = [p^2/4] m + 1`.
    DegreeTwoGenus,
    /// Degree two or three, essentially irreducible, `m = 1`, `Z = Z_min`:
    /// `p_a(V) = p_a(([(p-1)/d] + 1) Z)`.
    MultipleOfZGenus,
    /// Degree two, essentially irreducible: `m = 1` or `Z - D_m` is on (-2)-curves.
    YauTail,
    /// Under the previous hypotheses with `m > 1`: `D_i^2 = Z^2`.
    YauSelfIntersection,
    /// Branches at the special vertex are ADE, and for `m > 1` the negative
    /// branches are exactly those meeting `Z - D_m`.
    BranchStructure,
    /// `Gamma'` with `Z` restricted matches one of the eight templates.
    Classification,
    /// Template tables for `D_m` and `Z_min` agree with the computed cycles.
    ClassificationTables,
}

impl CheckId {
    pub const ALL: [CheckId; 14] = [
        CheckId::YauGenus,
        CheckId::EllipticYauCanonical,
        CheckId::DegreeOneCanonical,
        CheckId::DegreeTwoCanonical,
        CheckId::GeneralCanonical,
        CheckId::DegreeOneGenus,
        CheckId::DegreeOneGenusBound,
        CheckId::DegreeTwoGenus,
        CheckId::MultipleOfZGenus,
        CheckId::YauTail,
        CheckId::YauSelfIntersection,
        CheckId::BranchStructure,
        CheckId::Classification,
        CheckId::ClassificationTables,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckId::YauGenus => "yau-genus",
            CheckId::EllipticYauCanonical => "elliptic-yau-canonical",
            CheckId::DegreeOneCanonical => "degree-one-canonical",
            CheckId::DegreeTwoCanonical => "degree-two-canonical",
            CheckId::GeneralCanonical => "general-canonical",
            CheckId::DegreeOneGenus => "degree-one-genus",
            CheckId::DegreeOneGenusBound => "degree-one-genus-bound",
            CheckId::DegreeTwoGenus => "degree-two-genus",
            CheckId::MultipleOfZGenus => "multiple-of-z-genus",
            CheckId::YauTail => "yau-tail",
            CheckId::YauSelfIntersection => "yau-self-intersection",
            CheckId::BranchStructure => "branch-structure",
            CheckId::Classification => "classification",
            CheckId::ClassificationTables => "classification-tables",
        }
    }

    /// Failures of advisory checks are reported for review but do not fail a run.
    pub fn is_advisory(&self) -> bool {
        matches!(self, CheckId::GeneralCanonical)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Quantity {
    Integer(i64),
    Cycle(Vec<String>),
    Flag(bool),
    Text(String),
}

impl Quantity {
    pub fn cycle(c: &Cycle) -> Self {
        Quantity::Cycle(c.0.iter().map(|x| x.to_string()).collect())
    }

    pub fn rational(c: &RationalCycle) -> Self {
        Quantity::Cycle(c.to_strings())
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Integer(v) => write!(f, "{v}"),
            Quantity::Cycle(c) => write!(f, "({})", c.join(",")),
            Quantity::Flag(b) => write!(f, "{b}"),
            Quantity::Text(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub check: CheckId,
    pub hypotheses: Vec<Hypothesis>,
    pub predicted: Option<Quantity>,
    pub computed: Option<Quantity>,
    pub verdict: Verdict,
    pub advisory: bool,
    pub info: Vec<String>,
}

impl TheoremReport {
    /// Not applicable if any hypothesis fails; otherwise pass exactly when
    /// `predicted == computed`.
    pub fn new(
        check: CheckId,
        hypotheses: Vec<(&str, bool)>,
        predicted: Option<Quantity>,
        computed: Option<Quantity>,
    ) -> Self {
        let hypotheses: Vec<Hypothesis> = hypotheses
            .into_iter()
            .map(|(name, holds)| Hypothesis { name: name.to_string(), holds })
            .collect();
        let verdict = if hypotheses.iter().any(|h| !h.holds) {
            Verdict::NotApplicable
        } else if predicted.is_some() && predicted == computed {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        TheoremReport {
            check,
            hypotheses,
            predicted,
            computed,
            verdict,
            advisory: check.is_advisory(),
            info: Vec::new(),
        }
    }

    /// Hypotheses only, nothing to compare.
    pub fn not_applicable(check: CheckId, hypotheses: Vec<(&str, bool)>) -> Self {
        debug_assert!(hypotheses.iter().any(|(_, h)| !h));
        TheoremReport::new(check, hypotheses, None, None)
    }

    pub fn with_info(mut self, line: impl Into<String>) -> Self {
        self.info.push(line.into());
        self
    }

    /// A failing verdict on a non-advisory check.
    pub fn is_blocking_failure(&self) -> bool {
        self.verdict == Verdict::Fail && !self.advisory
    }
}
