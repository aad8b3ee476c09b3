//! Graph file formats and DOT export.
//!
//! The text format is line oriented; statements are separated by newlines or
//! `;`, and `#` starts a comment:
//!
//! ```text
//! vertex A weight=-2 genus=1
//! vertex B1 weight=-2 ; vertex B2 weight=-2
//! edge A B1
//! edge A B2 mult=1
//! ```
//!
//! The JSON format carries the same data:
//! `{"vertices": [{"name": "A", "weight": -2, "genus": 1}], "edges": [{"a": "A", "b": "B1", "mult": 1}]}`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Edge, VertexData, WeightedDualGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Format {
    /// JSON if the first non-blank character is `{`.
    pub fn detect(input: &str) -> Format {
        if input.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Text
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonVertex {
    name: String,
    weight: i64,
    #[serde(default, skip_serializing_if = "is_zero")]
    genus: u32,
    #[serde(default, skip_serializing_if = "is_zero")]
    conductor: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonEdge {
    a: String,
    b: String,
    #[serde(default = "one")]
    mult: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    vertices: Vec<JsonVertex>,
    #[serde(default)]
    edges: Vec<JsonEdge>,
}

fn is_zero(v: &u32) -> bool {
    *v == 0
}

fn one() -> u32 {
    1
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column, message: message.into() }
}

/// Collects vertices and edges by name before building the graph.
#[derive(Default)]
struct Builder {
    names: Vec<String>,
    index: HashMap<String, usize>,
    vertices: Vec<VertexData>,
    edges: Vec<Edge>,
}

impl Builder {
    fn vertex(&mut self, name: &str, v: VertexData) -> std::result::Result<(), String> {
        if self.index.contains_key(name) {
            return Err(format!("vertex {name} is declared twice"));
        }
        self.index.insert(name.to_string(), self.names.len());
        self.names.push(name.to_string());
        self.vertices.push(v);
        Ok(())
    }

    fn edge(&mut self, a: &str, b: &str, mult: u32) -> std::result::Result<(), String> {
        let look = |n: &str| self.index.get(n).copied().ok_or_else(|| format!("unknown vertex {n}"));
        let (ia, ib) = (look(a)?, look(b)?);
        self.edges.push(Edge::with_multiplicity(ia, ib, mult));
        Ok(())
    }

    fn build(self, check_definite: bool) -> Result<WeightedDualGraph> {
        WeightedDualGraph::from_parts(self.names, self.vertices, self.edges, check_definite)
    }
}

/// A token with its 1-based column.
fn tokens(stmt: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in stmt.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((offset + s + 1, &stmt[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((offset + s + 1, &stmt[s..]));
    }
    out
}

fn parse_value<T: std::str::FromStr>(line: usize, col: usize, key: &str, raw: &str) -> Result<T> {
    raw.parse()
        .map_err(|_| syntax(line, col, format!("{key} expects an integer, got {raw:?}")))
}

pub fn parse_text(input: &str, check_definite: bool) -> Result<WeightedDualGraph> {
    let mut b = Builder::default();
    let mut statements = 0;
    for (ln, raw_line) in input.lines().enumerate() {
        let line = ln + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        let mut offset = 0;
        for stmt in content.split(';') {
            let toks = tokens(stmt, offset);
            offset += stmt.len() + 1;
            let Some(&(col, keyword)) = toks.first() else { continue };
            statements += 1;
            match keyword {
                "vertex" => {
                    let Some(&(ncol, name)) = toks.get(1) else {
                        return Err(syntax(line, col, "vertex needs a name"));
                    };
                    if name.contains('=') {
                        return Err(syntax(line, ncol, "vertex needs a name before its attributes"));
                    }
                    let (mut weight, mut genus, mut conductor) = (None, 0u32, 0u32);
                    for &(kcol, kv) in &toks[2..] {
                        let Some((key, value)) = kv.split_once('=') else {
                            return Err(syntax(line, kcol, format!("expected key=value, got {kv:?}")));
                        };
                        let vcol = kcol + key.len() + 1;
                        match key {
                            "weight" => weight = Some(parse_value::<i64>(line, vcol, key, value)?),
                            "genus" => genus = parse_value(line, vcol, key, value)?,
                            "conductor" => conductor = parse_value(line, vcol, key, value)?,
                            _ => return Err(syntax(line, kcol, format!("unknown key {key:?}"))),
                        }
                    }
                    let Some(weight) = weight else {
                        return Err(syntax(line, col, format!("vertex {name} has no weight")));
                    };
                    b.vertex(name, VertexData { weight, genus, conductor })
                        .map_err(|m| syntax(line, ncol, m))?;
                }
                "edge" => {
                    let (Some(&(acol, a)), Some(&(bcol, bname))) = (toks.get(1), toks.get(2)) else {
                        return Err(syntax(line, col, "edge needs two vertex names"));
                    };
                    let mut mult = 1u32;
                    for &(kcol, kv) in &toks[3..] {
                        match kv.split_once('=') {
                            Some(("mult", value)) => mult = parse_value(line, kcol + 5, "mult", value)?,
                            Some((key, _)) => return Err(syntax(line, kcol, format!("unknown key {key:?}"))),
                            None => return Err(syntax(line, kcol, format!("expected key=value, got {kv:?}"))),
                        }
                    }
                    b.edge(a, bname, mult).map_err(|m| {
                        let c = if b.index.contains_key(a) { bcol } else { acol };
                        syntax(line, c, m)
                    })?;
                }
                other => return Err(syntax(line, col, format!("unknown statement {other:?}"))),
            }
        }
    }
    if statements == 0 {
        return Err(syntax(1, 1, "no vertices"));
    }
    b.build(check_definite)
}

pub fn parse_json(input: &str, check_definite: bool) -> Result<WeightedDualGraph> {
    let jg: JsonGraph = serde_json::from_str(input)
        .map_err(|e| syntax(e.line(), e.column(), e.to_string()))?;
    let mut b = Builder::default();
    for v in &jg.vertices {
        b.vertex(&v.name, VertexData { weight: v.weight, genus: v.genus, conductor: v.conductor })
            .map_err(Error::InvalidGraph)?;
    }
    for e in &jg.edges {
        b.edge(&e.a, &e.b, e.mult).map_err(Error::InvalidGraph)?;
    }
    b.build(check_definite)
}

/// Parses either format, chosen by [`Format::detect`].
pub fn parse_graph(input: &str, check_definite: bool) -> Result<WeightedDualGraph> {
    match Format::detect(input) {
        Format::Text => parse_text(input, check_definite),
        Format::Json => parse_json(input, check_definite),
    }
}

/// Text form; parses back to the same graph.
pub fn to_text(g: &WeightedDualGraph) -> String {
    let mut out = String::new();
    for (i, v) in g.vertices().iter().enumerate() {
        write!(out, "vertex {} weight={}", g.name(i), v.weight).unwrap();
        if v.genus != 0 {
            write!(out, " genus={}", v.genus).unwrap();
        }
        if v.conductor != 0 {
            write!(out, " conductor={}", v.conductor).unwrap();
        }
        out.push('\n');
    }
    for e in g.edges() {
        write!(out, "edge {} {}", g.name(e.a), g.name(e.b)).unwrap();
        if e.multiplicity != 1 {
            write!(out, " mult={}", e.multiplicity).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn to_json(g: &WeightedDualGraph) -> String {
    let jg = JsonGraph {
        vertices: g
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| JsonVertex {
                name: g.name(i).to_string(),
                weight: v.weight,
                genus: v.genus,
                conductor: v.conductor,
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| JsonEdge { a: g.name(e.a).to_string(), b: g.name(e.b).to_string(), mult: e.multiplicity })
            .collect(),
    };
    serde_json::to_string_pretty(&jg).expect("graph serializes")
}

/// Graphviz rendering; vertices labelled with weight and genus, multiple
/// edges drawn once with their multiplicity.
pub fn to_dot(g: &WeightedDualGraph) -> String {
    let mut out = String::from("graph resolution {\n  node [shape=circle];\n");
    for (i, v) in g.vertices().iter().enumerate() {
        let mut label = format!("{}\\n{}", g.name(i), v.weight);
        if v.genus != 0 {
            write!(label, " [g={}]", v.genus).unwrap();
        }
        if v.conductor != 0 {
            write!(label, " [d={}]", v.conductor).unwrap();
        }
        writeln!(out, "  n{i} [label=\"{label}\"];").unwrap();
    }
    for e in g.edges() {
        if e.multiplicity == 1 {
            writeln!(out, "  n{} -- n{};", e.a, e.b).unwrap();
        } else {
            writeln!(out, "  n{} -- n{} [label=\"{}\", penwidth=2];", e.a, e.b, e.multiplicity).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
