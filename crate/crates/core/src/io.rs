//! Text formats for posets, monomial ideals and arrangements, plus Hasse
//! diagram rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Hyperplane};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational};
use crate::monomial::{minimalize, parse_monomial, Monomial, MonomialIdeal};
use crate::poset::{Label, Poset};

/// On-disk poset document: elements plus any generating set of relations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub elements: Vec<String>,
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
}

impl PosetDocument {
    /// Canonical document: sorted elements and the covering relations.
    pub fn from_poset(p: &Poset) -> Self {
        PosetDocument {
            elements: p.labels().iter().map(|l| l.to_string()).collect(),
            relations: p
                .covering_relations()
                .into_iter()
                .map(|c| [c.lower.to_string(), c.upper.to_string()])
                .collect(),
        }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        Poset::from_relations(
            self.elements.iter().map(|e| Label::new(e.clone())),
            self.relations.iter().map(|[a, b]| (a, b)),
        )
    }
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    let doc: PosetDocument = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    doc.to_poset()
}

pub fn write_poset(p: &Poset) -> String {
    let mut out = serde_json::to_string_pretty(&PosetDocument::from_poset(p))
        .expect("poset documents always serialize");
    out.push('\n');
    out
}

/// Content lines with their 1-based line numbers, skipping blanks and `#`
/// comments.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        (!line.trim().is_empty()).then_some((i + 1, line))
    })
}

/// Whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Parses a monomial ideal: a line of variable names, then one generator per
/// line, written either as an exponent vector (`3 2 1 0`) or as a product
/// (`a^3*b^2*c`).
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    let mut lines = content_lines(text);
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "missing variable line"))?;
    let vars: Vec<String> = tokens(header).iter().map(|(_, t)| t.to_string()).collect();
    for (col, t) in tokens(header) {
        if !t.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(Error::parse(1, col, format!("bad variable name `{t}`")));
        }
    }
    let mut gens = Vec::new();
    for (line_no, line) in lines {
        let toks = tokens(line);
        let as_vector: Option<Vec<u32>> = (toks.len() == vars.len())
            .then(|| toks.iter().map(|(_, t)| t.parse().ok()).collect())
            .flatten();
        let mono = match as_vector {
            Some(exps) => Monomial::new(exps),
            None => parse_monomial(&vars, line).map_err(|e| match e {
                Error::Parse {
                    column, message, ..
                } => Error::parse(line_no, column, message),
                other => other,
            })?,
        };
        gens.push(mono);
    }
    if gens.is_empty() {
        return Err(Error::parse(1, 1, "ideal has no generators"));
    }
    minimalize(vars, gens)
}

pub fn write_ideal(ideal: &MonomialIdeal) -> String {
    let mut out = ideal.variables().join(" ");
    out.push('\n');
    for g in ideal.generator_labels() {
        out.push_str(&g);
        out.push('\n');
    }
    out
}

/// Parses an arrangement: the ambient dimension `n`, then one hyperplane per
/// line as `a1 … an c` meaning `a·x + c = 0`.
pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let mut lines = content_lines(text);
    let (dim_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "missing dimension line"))?;
    let head = tokens(header);
    let dim: usize = match head.as_slice() {
        [(_, t)] => t
            .parse()
            .map_err(|_| Error::parse(dim_line, head[0].0, "dimension must be an integer"))?,
        _ => return Err(Error::parse(dim_line, 1, "expected a single dimension")),
    };
    let mut hyperplanes = Vec::new();
    for (line_no, line) in lines {
        let toks = tokens(line);
        if toks.len() != dim + 1 {
            return Err(Error::parse(
                line_no,
                1,
                format!("expected {} coefficients, found {}", dim + 1, toks.len()),
            ));
        }
        let mut values = Vec::with_capacity(dim + 1);
        for (col, t) in toks {
            values.push(
                parse_rational(t)
                    .ok_or_else(|| Error::parse(line_no, col, format!("bad rational `{t}`")))?,
            );
        }
        let constant = values.pop().expect("dim + 1 ≥ 1 values");
        hyperplanes.push(Hyperplane::new(values, constant));
    }
    Arrangement::new(dim, hyperplanes)
}

pub fn write_arrangement(a: &Arrangement) -> String {
    let mut out = format!("{}\n", a.dim());
    for h in a.hyperplanes() {
        let row: Vec<String> = h.row().iter().map(format_rational).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Dot,
    Tikz,
}

/// Node coordinates: one row per height, evenly spaced and centred.
fn layout(p: &Poset) -> Vec<(f64, f64)> {
    let heights = p.heights();
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for (i, &h) in heights.iter().enumerate() {
        if rows.len() <= h {
            rows.resize(h + 1, Vec::new());
        }
        rows[h].push(i);
    }
    let mut pos = vec![(0.0, 0.0); p.len()];
    for (h, row) in rows.iter().enumerate() {
        let offset = (row.len() as f64 - 1.0) / 2.0;
        for (k, &i) in row.iter().enumerate() {
            pos[i] = ((k as f64 - offset) * 1.5, h as f64 * 1.5);
        }
    }
    pos
}

/// Renders the Hasse diagram of `p`; edges are exactly the covering pairs.
pub fn export_hasse(p: &Poset, format: RenderFormat) -> String {
    match format {
        RenderFormat::Dot => export_dot(p),
        RenderFormat::Tikz => export_tikz(p),
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn export_dot(p: &Poset) -> String {
    let pos = layout(p);
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for (i, label) in p.labels().iter().enumerate() {
        let (x, y) = pos[i];
        let _ = writeln!(
            out,
            "  n{i} [label=\"{}\", pos=\"{x:.2},{y:.2}!\"];",
            dot_escape(label.as_str())
        );
    }
    for row in p.rank_partition() {
        let ids: Vec<String> = row
            .iter()
            .map(|l| format!("n{};", p.index_of(l.as_str()).expect("own label")))
            .collect();
        let _ = writeln!(out, "  {{ rank=same; {} }}", ids.join(" "));
    }
    for (lo, hi) in p.cover_indices() {
        let _ = writeln!(out, "  n{lo} -> n{hi};");
    }
    out.push_str("}\n");
    out
}

fn tex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '\\' => out.push_str("\\textbackslash{}"),
            '{' | '}' | '_' | '#' | '$' | '%' | '&' => {
                out.push('\\');
                out.push(ch);
            }
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            _ => out.push(ch),
        }
    }
    out
}

fn export_tikz(p: &Poset) -> String {
    let pos = layout(p);
    let mut out = String::from(
        "\\begin{tikzpicture}[scale=1, vertices/.style={draw, fill=black, circle, inner sep=0pt}]\n",
    );
    for (i, label) in p.labels().iter().enumerate() {
        let (x, y) = pos[i];
        let _ = writeln!(
            out,
            "  \\node [vertices, label=right:{{\\texttt{{{}}}}}] ({i}) at ({x:.2},{y:.2}){{}};",
            tex_escape(label.as_str())
        );
    }
    let edges: Vec<String> = p
        .cover_indices()
        .into_iter()
        .map(|(lo, hi)| format!("{lo}/{hi}"))
        .collect();
    if !edges.is_empty() {
        let _ = writeln!(
            out,
            "  \\foreach \\to/\\from in {{{}}} \\draw [-] (\\to)--(\\from);",
            edges.join(", ")
        );
    }
    out.push_str("\\end{tikzpicture}\n");
    out
}
