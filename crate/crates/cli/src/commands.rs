//! One function per subcommand. Each builds a serializable report and writes
//! it either as JSON or as `label = value` text lines.

use std::fmt::Write;
use std::fs;

use serde::Serialize;

use resgraph::classify::MatchOutcome;
use resgraph::lattice::format_rational;
use resgraph::oracle::enumerate::{self, Witness};
use resgraph::report::Hypothesis;
use resgraph::{
    chi, intersect, pa, Analysis, CheckId, Cycle, KVector, PaMaxResult, TheoremReport, Verdict,
    WeightedDualGraph,
};

use crate::render::{self, yes_no};
use crate::{EnumerateArgs, Failure};

fn emit_json<T: Serialize>(report: &T, out: &mut String) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(report).map_err(|e| Failure::Input(e.to_string()))?;
    out.push_str(&s);
    out.push('\n');
    Ok(())
}

#[derive(Serialize)]
struct FundamentalReport<'a> {
    command: &'static str,
    vertices: &'a [String],
    z: Cycle,
    chain: Vec<i64>,
    branch: Vec<i64>,
    z_squared: i64,
    fundamental_genus: i64,
    chi: i64,
}

pub fn fundamental(g: &WeightedDualGraph, json: bool, out: &mut String) -> Result<(), Failure> {
    let z = resgraph::fundamental_cycle_full(g)?;
    let (chain, rest) = render::chain_layout(g);
    let r = FundamentalReport {
        command: "fundamental",
        vertices: g.names(),
        chain: chain.iter().map(|&v| z.get(v)).collect(),
        branch: rest.iter().map(|&v| z.get(v)).collect(),
        z_squared: intersect(g, &z, &z)?,
        fundamental_genus: pa(g, &z)?,
        chi: chi(g, &z)?,
        z,
    };
    if json {
        return emit_json(&r, out);
    }
    out.push_str(&render::vertices_line(g));
    let _ = writeln!(out, "Z = {}", render::layout_line(g, &r.z));
    let _ = writeln!(out, "Z^2 = {}", r.z_squared);
    let _ = writeln!(out, "p_a(Z) = {}", r.fundamental_genus);
    let _ = writeln!(out, "chi(Z) = {}", r.chi);
    Ok(())
}

#[derive(Serialize)]
struct GenusReport<'a> {
    command: &'static str,
    vertices: &'a [String],
    z: Cycle,
    degree: i64,
    fundamental_genus: i64,
    k_dot_z: i64,
    minimal: bool,
    essentially_irreducible: Option<bool>,
    special_vertex: Option<String>,
    special_coefficient: Option<i64>,
}

pub fn genus(g: &WeightedDualGraph, json: bool, out: &mut String) -> Result<(), Failure> {
    let z = resgraph::fundamental_cycle_full(g)?;
    let p = pa(g, &z)?;
    let ei = if p > 0 { Some(resgraph::essential_irreducibility(g)?) } else { None };
    let special = ei.as_ref().and_then(|e| e.special_vertex);
    let r = GenusReport {
        command: "genus",
        vertices: g.names(),
        degree: -intersect(g, &z, &z)?,
        fundamental_genus: p,
        k_dot_z: KVector::of(g).dot(&z),
        minimal: g.is_minimal(),
        essentially_irreducible: ei.as_ref().map(|e| e.holds),
        special_vertex: special.map(|v| g.name(v).to_string()),
        special_coefficient: ei.as_ref().and_then(|e| e.k),
        z,
    };
    if json {
        return emit_json(&r, out);
    }
    out.push_str(&render::vertices_line(g));
    let _ = writeln!(out, "Z = {}", render::cycle(&r.z));
    let _ = writeln!(out, "degree = {}", r.degree);
    let _ = writeln!(out, "p_f = {}", r.fundamental_genus);
    let _ = writeln!(out, "K.Z = {}", r.k_dot_z);
    let _ = writeln!(out, "minimal = {}", yes_no(r.minimal));
    match (r.essentially_irreducible, &r.special_vertex, r.special_coefficient) {
        (None, ..) => out.push_str("essentially irreducible = n/a\n"),
        (Some(true), Some(a), Some(k)) => {
            let _ = writeln!(out, "essentially irreducible = yes\nspecial vertex = {a}\nspecial coefficient = {k}");
        }
        (Some(h), ..) => {
            let _ = writeln!(out, "essentially irreducible = {}", yes_no(h));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct YauTerm {
    cycle: Cycle,
    self_intersection: i64,
}

#[derive(Serialize)]
struct YauReport<'a> {
    command: &'static str,
    vertices: &'a [String],
    fundamental_genus: i64,
    z_min: Cycle,
    length: usize,
    sequence: Vec<YauTerm>,
    yau_cycle: Cycle,
    yau_genus: i64,
    predicted_yau_genus: i64,
    dm_is_zmin: bool,
}

pub fn yau(g: &WeightedDualGraph, json: bool, out: &mut String) -> Result<(), Failure> {
    let y = resgraph::yau_sequence(g)?;
    let (lhs, rhs) = y.genus_identity(g)?;
    let sequence = y
        .sequence
        .iter()
        .map(|d| Ok(YauTerm { cycle: d.clone(), self_intersection: intersect(g, d, d)? }))
        .collect::<Result<Vec<_>, resgraph::Error>>()?;
    let r = YauReport {
        command: "yau",
        vertices: g.names(),
        fundamental_genus: y.fundamental_genus,
        dm_is_zmin: *y.last() == y.z_min,
        z_min: y.z_min,
        length: y.length,
        sequence,
        yau_cycle: y.yau_cycle,
        yau_genus: lhs,
        predicted_yau_genus: rhs,
    };
    if json {
        return emit_json(&r, out);
    }
    out.push_str(&render::vertices_line(g));
    let _ = writeln!(out, "p_f = {}", r.fundamental_genus);
    let _ = writeln!(out, "Z_min = {}", render::cycle(&r.z_min));
    let _ = writeln!(out, "m = {}", r.length);
    for (i, t) in r.sequence.iter().enumerate() {
        let _ = writeln!(out, "D_{} = {}  (self-intersection {})", i + 1, render::cycle(&t.cycle), t.self_intersection);
    }
    let _ = writeln!(out, "Y = {}", render::cycle(&r.yau_cycle));
    let _ = writeln!(out, "p_a(Y) = {}", r.yau_genus);
    let _ = writeln!(out, "m(p_f-1)+1 = {}", r.predicted_yau_genus);
    let _ = writeln!(out, "D_m = Z_min: {}", yes_no(r.dm_is_zmin));
    Ok(())
}

#[derive(Serialize)]
struct CanonicalReport<'a> {
    command: &'static str,
    vertices: &'a [String],
    z_k: Vec<String>,
    numerically_gorenstein: bool,
    yau_cycle: Option<Cycle>,
    /// `q` with `Z_K = q Y`, when the fundamental genus is positive and such
    /// a `q` exists.
    yau_multiple: Option<String>,
}

pub fn canonical(g: &WeightedDualGraph, json: bool, out: &mut String) -> Result<(), Failure> {
    let c = resgraph::canonical_cycle(g)?;
    let p = resgraph::genus::fundamental_genus(g)?;
    let yau_cycle = if p > 0 { Some(resgraph::yau_sequence(g)?.yau_cycle) } else { None };
    let yau_multiple = yau_cycle.as_ref().and_then(|y| c.z_k.ratio_to(y)).map(|q| format_rational(&q));
    let r = CanonicalReport {
        command: "canonical",
        vertices: g.names(),
        z_k: c.z_k.to_strings(),
        numerically_gorenstein: c.is_numerically_gorenstein,
        yau_cycle,
        yau_multiple,
    };
    if json {
        return emit_json(&r, out);
    }
    out.push_str(&render::vertices_line(g));
    let _ = writeln!(out, "Z_K = {}", render::joined(&r.z_k));
    let _ = writeln!(out, "numerically Gorenstein = {}", yes_no(r.numerically_gorenstein));
    if let Some(y) = &r.yau_cycle {
        let _ = writeln!(out, "Y = {}", render::cycle(y));
        let _ = writeln!(out, "Z_K / Y = {}", r.yau_multiple.as_deref().unwrap_or("none"));
    }
    Ok(())
}

#[derive(Serialize)]
struct BranchReport {
    vertices: Vec<String>,
    ade: Option<String>,
    z_dot: i64,
    negative: bool,
}

#[derive(Serialize)]
struct TemplateReport {
    case: u8,
    m_prime: Option<usize>,
    n_prime: Option<usize>,
    k_prime: Option<usize>,
    z_pattern: Cycle,
    dm_table: Cycle,
    zmin_table: Cycle,
    dm_computed: Cycle,
    zmin_computed: Cycle,
    admissible: bool,
    tables_agree: bool,
}

#[derive(Serialize)]
struct ClassifyReport<'a> {
    command: &'static str,
    vertices: &'a [String],
    special_vertex: String,
    special_coefficient: i64,
    length: usize,
    branches: Vec<BranchReport>,
    gamma_prime: Vec<String>,
    negative_branches_meet_tail: Option<bool>,
    template: Option<TemplateReport>,
    unmatched: Option<String>,
}

pub fn classify(g: &WeightedDualGraph, json: bool, out: &mut String) -> Result<(), Failure> {
    let a = Analysis::new(g)?;
    let (Some(y), true) = (&a.yau, a.essentially_irreducible()) else {
        return Err(Failure::Input(
            "classification needs positive fundamental genus and an essentially irreducible Z".into(),
        ));
    };
    if a.degree != 2 {
        return Err(Failure::Input(format!("classification needs degree 2, got {}", a.degree)));
    }
    let cr = resgraph::classify(g, y)?;
    let names = |vs: &[usize]| vs.iter().map(|&v| g.name(v).to_string()).collect::<Vec<_>>();
    let branches = cr
        .branches
        .iter()
        .enumerate()
        .map(|(i, b)| BranchReport {
            vertices: names(&b.vertices),
            ade: b.ade.map(|t| t.to_string()),
            z_dot: b.z_dot,
            negative: cr.negative_set.contains(&i),
        })
        .collect();
    let (template, unmatched) = match &cr.template {
        None => (None, None),
        Some(MatchOutcome::Unmatched { reason }) => (None, Some(reason.clone())),
        Some(MatchOutcome::Matched(m)) => {
            let t = cr.tables.as_ref().expect("tables accompany a match");
            let report = TemplateReport {
                case: m.case_number,
                m_prime: m.m_prime,
                n_prime: m.n_prime,
                k_prime: m.k_prime,
                z_pattern: m.z_pattern.clone(),
                dm_table: t.dm_table.clone(),
                zmin_table: t.zmin_table.clone(),
                dm_computed: t.dm_computed.clone(),
                zmin_computed: t.zmin_computed.clone(),
                admissible: t.admissible,
                tables_agree: t.agrees,
            };
            (Some(report), None)
        }
    };
    if let Some(reason) = &unmatched {
        eprintln!("warning: Gamma' matches no template: {reason}");
    }
    let r = ClassifyReport {
        command: "classify",
        vertices: g.names(),
        special_vertex: g.name(cr.special_vertex).to_string(),
        special_coefficient: cr.k,
        length: y.length,
        branches,
        gamma_prime: names(&cr.gamma_prime),
        negative_branches_meet_tail: cr.negative_branches_meet_tail,
        template,
        unmatched,
    };
    if json {
        return emit_json(&r, out);
    }
    out.push_str(&render::vertices_line(g));
    let _ = writeln!(out, "special vertex = {}", r.special_vertex);
    let _ = writeln!(out, "special coefficient = {}", r.special_coefficient);
    let _ = writeln!(out, "m = {}", r.length);
    for b in &r.branches {
        let _ = writeln!(
            out,
            "branch {}: type {}, Z|branch . Z = {}{}",
            render::joined(&b.vertices),
            b.ade.as_deref().unwrap_or("non-ADE"),
            b.z_dot,
            if b.negative { ", negative" } else { "" }
        );
    }
    let _ = writeln!(out, "Gamma' = {}", render::joined(&r.gamma_prime));
    if let Some(h) = r.negative_branches_meet_tail {
        let _ = writeln!(out, "negative branches meet Z - D_m: {}", yes_no(h));
    }
    if let Some(t) = &r.template {
        let params = [("m'", t.m_prime), ("n'", t.n_prime), ("k'", t.k_prime)]
            .iter()
            .filter_map(|(k, v)| v.map(|v| format!(" {k}={v}")))
            .collect::<String>();
        let _ = writeln!(out, "case = {}{params}", t.case);
        let gp = &cr.gamma_prime;
        let _ = writeln!(out, "Z on Gamma' = {}", render::on_vertices(g, &t.z_pattern, gp));
        let _ = writeln!(out, "D_m table = {}", render::on_vertices(g, &t.dm_table, gp));
        let _ = writeln!(out, "D_m computed = {}", render::on_vertices(g, &t.dm_computed, gp));
        let _ = writeln!(out, "Z_min table = {}", render::on_vertices(g, &t.zmin_table, gp));
        let _ = writeln!(out, "Z_min computed = {}", render::on_vertices(g, &t.zmin_computed, gp));
        let _ = writeln!(out, "admissible = {}", yes_no(t.admissible));
        let _ = writeln!(out, "tables agree = {}", yes_no(t.tables_agree));
    } else if let Some(reason) = &r.unmatched {
        let _ = writeln!(out, "case = unmatched ({reason})");
    } else {
        out.push_str("case = none (m = 1)\n");
    }
    Ok(())
}

#[derive(Serialize)]
struct PaMaxReport<'a> {
    command: &'static str,
    vertices: &'a [String],
    #[serde(flatten)]
    result: PaMaxResult,
}

pub fn pa_max(g: &WeightedDualGraph, bound: Option<i64>, json: bool, out: &mut String) -> Result<(), Failure> {
    if bound.is_some_and(|b| b < 1) {
        return Err(Failure::Input("--bound must be at least 1".into()));
    }
    let r = PaMaxReport { command: "pa-max", vertices: g.names(), result: resgraph::pa_max(g, bound)? };
    if json {
        return emit_json(&r, out);
    }
    out.push_str(&render::vertices_line(g));
    let _ = writeln!(out, "p_a(V) = {}", r.result.value);
    let _ = writeln!(out, "maximizer = {}", render::cycle(&r.result.maximizer));
    let _ = writeln!(out, "box bound = {}", r.result.box_bound);
    let _ = writeln!(out, "boundary clear = {}", yes_no(r.result.boundary_clear));
    Ok(())
}

/// `A`, `B` and `C` name the three headline identities; anything else must be
/// a check name.
fn parse_check(s: &str) -> Result<CheckId, Failure> {
    match s {
        "A" | "a" => Ok(CheckId::DegreeTwoCanonical),
        "B" | "b" => Ok(CheckId::DegreeOneGenus),
        "C" | "c" => Ok(CheckId::DegreeTwoGenus),
        _ => CheckId::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| {
            let names: Vec<&str> = CheckId::ALL.iter().map(|c| c.as_str()).collect();
            Failure::Input(format!("unknown check {s:?}; expected A, B, C or one of {}", names.join(", ")))
        }),
    }
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    command: &'static str,
    vertices: &'a [String],
    z: &'a Cycle,
    degree: i64,
    fundamental_genus: i64,
    length: Option<usize>,
    pa_max: Option<i64>,
    reports: Vec<&'a TheoremReport>,
    passed: bool,
}

fn hypotheses_line(hs: &[Hypothesis]) -> String {
    hs.iter().map(|h| format!("{}={}", h.name, yes_no(h.holds))).collect::<Vec<_>>().join(", ")
}

pub fn verify(g: &WeightedDualGraph, theorems: &[String], json: bool, out: &mut String) -> Result<(), Failure> {
    let mut selected = theorems.iter().map(|s| parse_check(s)).collect::<Result<Vec<_>, _>>()?;
    if selected.is_empty() {
        selected = CheckId::ALL.to_vec();
    }
    let gr = resgraph::run_all_checks(g)?;
    let reports: Vec<&TheoremReport> = gr.reports.iter().filter(|r| selected.contains(&r.check)).collect();
    let passed = !reports.iter().any(|r| r.is_blocking_failure());
    let r = VerifyReport {
        command: "verify",
        vertices: g.names(),
        z: &gr.z,
        degree: gr.degree,
        fundamental_genus: gr.fundamental_genus,
        length: gr.length,
        pa_max: gr.pa_max.as_ref().map(|p| p.value),
        reports,
        passed,
    };
    if json {
        emit_json(&r, out)?;
    } else {
        write_verify_text(g, &r, out);
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn write_verify_text(g: &WeightedDualGraph, r: &VerifyReport, out: &mut String) {
    out.push_str(&render::vertices_line(g));
    let _ = writeln!(out, "Z = {}", render::cycle(r.z));
    let _ = writeln!(out, "degree = {}", r.degree);
    let _ = writeln!(out, "p_f = {}", r.fundamental_genus);
    if let Some(m) = r.length {
        let _ = writeln!(out, "m = {m}");
    }
    if let Some(v) = r.pa_max {
        let _ = writeln!(out, "p_a(V) = {v}");
    }
    let mut tally = [0usize; 3];
    for t in &r.reports {
        let verdict = match (t.verdict, t.advisory) {
            (Verdict::Fail, true) => "fail (advisory)".to_string(),
            (v, _) => v.to_string(),
        };
        tally[t.verdict as usize] += 1;
        let _ = writeln!(out, "{}: {verdict}", t.check);
        let _ = writeln!(out, "  hypotheses: {}", hypotheses_line(&t.hypotheses));
        if t.verdict != Verdict::NotApplicable {
            if let Some(p) = &t.predicted {
                let _ = writeln!(out, "  predicted = {p}");
            }
            if let Some(c) = &t.computed {
                let _ = writeln!(out, "  computed = {c}");
            }
            for line in &t.info {
                let _ = writeln!(out, "  {line}");
            }
        }
    }
    let _ = writeln!(out, "summary: {} pass, {} fail, {} not applicable", tally[0], tally[1], tally[2]);
}

fn write_reproducers(args: &EnumerateArgs, witnesses: &[Witness]) -> Result<(), Failure> {
    let Some(dir) = &args.reproducers else {
        return Ok(());
    };
    fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    for (i, w) in witnesses.iter().enumerate() {
        let path = dir.join(format!("{:03}-{}.graph", i + 1, w.check));
        let body = format!("# {}: {}\n{}", w.check, w.detail, w.graph);
        fs::write(&path, body).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct Tagged<T: Serialize> {
    command: &'static str,
    mode: &'static str,
    #[serde(flatten)]
    summary: T,
}

pub fn enumerate(args: &EnumerateArgs, out: &mut String) -> Result<(), Failure> {
    let or = |v: &[i64], d: &[i64]| if v.is_empty() { d.to_vec() } else { v.to_vec() };
    let org = |v: &[u32], d: &[u32]| if v.is_empty() { d.to_vec() } else { v.to_vec() };
    let failed = if args.oracle {
        let n = args.max_vertices.unwrap_or(5);
        let weights = or(&args.weights, &[-2, -3, -4]);
        let genera = org(&args.genera, &[0, 1, 2]);
        let s = enumerate::oracle_equivalence(n, &weights, &genera, args.max_mult)?;
        write_reproducers(args, &s.witnesses)?;
        let failed = s.mismatches > 0;
        if args.json {
            emit_json(&Tagged { command: "enumerate", mode: "oracle", summary: s }, out)?;
        } else {
            out.push_str(&s.to_text());
        }
        failed
    } else {
        let n = args.max_vertices.unwrap_or(enumerate::DEFAULT_MAX_VERTICES);
        let weights = or(&args.weights, &[-6, -5, -4, -3, -2, -1]);
        let genera = org(&args.genera, &[0, 1, 2, 3]);
        let s = enumerate::enumerate_and_verify(n, &weights, &genera)?;
        write_reproducers(args, &s.witnesses)?;
        let failed = s.blocking_failures > 0 || s.errors > 0;
        if args.json {
            emit_json(&Tagged { command: "enumerate", mode: "checks", summary: s }, out)?;
        } else {
            out.push_str(&s.to_text());
        }
        failed
    };
    if failed {
        Err(Failure::Check)
    } else {
        Ok(())
    }
}
