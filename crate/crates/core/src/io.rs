//! Plain-text instance and solution files.
//!
//! An instance file has a header `n m k`, then `m` edge lines `u v` and `k`
//! pair lines `s t`. Vertices are 0-indexed decimals separated by single
//! spaces. Lines starting with `#` and blank lines are skipped.
//!
//! A solution file lists one path per line as space-separated vertices.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{Instance, Solution};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Numbered content lines: comments and blank lines dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Splits a line into exactly `want` decimal fields.
fn fields(line_no: usize, line: &str, want: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(want);
    let mut column = 1;
    for tok in line.split(' ') {
        if tok.is_empty() {
            return Err(parse_err(line_no, column, "expected a single space between fields"));
        }
        if !tok.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_err(line_no, column, format!("not a non-negative integer: {tok:?}")));
        }
        let value = tok.parse().map_err(|_| parse_err(line_no, column, format!("integer too large: {tok}")))?;
        out.push(value);
        column += tok.len() + 1;
    }
    if out.len() != want {
        return Err(parse_err(line_no, 1, format!("expected {want} fields, found {}", out.len())));
    }
    Ok(out)
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, 1, "missing header line `n m k`"))?;
    let h = fields(hl, header, 3)?;
    let (n, m, k) = (h[0], h[1], h[2]);
    let mut g = Graph::empty(n);
    let mut last_line = hl;
    for _ in 0..m {
        let (ln, line) = lines.next().ok_or_else(|| parse_err(last_line + 1, 1, format!("expected {m} edge lines")))?;
        last_line = ln;
        let e = fields(ln, line, 2)?;
        let (u, v) = (e[0], e[1]);
        if u >= n || v >= n {
            return Err(parse_err(ln, 1, format!("edge endpoint out of range for n={n}")));
        }
        if u == v {
            return Err(parse_err(ln, 1, format!("self-loop at {u}")));
        }
        if g.has_edge(u, v) {
            return Err(parse_err(ln, 1, format!("duplicate edge {u} {v}")));
        }
        g.add_edge(u, v)?;
    }
    let mut pairs = Vec::with_capacity(k);
    for _ in 0..k {
        let (ln, line) = lines.next().ok_or_else(|| parse_err(last_line + 1, 1, format!("expected {k} pair lines")))?;
        last_line = ln;
        let p = fields(ln, line, 2)?;
        if p[0] >= n || p[1] >= n {
            return Err(parse_err(ln, 1, format!("terminal out of range for n={n}")));
        }
        pairs.push((p[0], p[1]));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, 1, "unexpected trailing content"));
    }
    let inst = Instance::new(g, pairs);
    inst.validate()?;
    Ok(inst)
}

/// Canonical text: edges sorted with `u < v`, pairs in their given order.
pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {}", inst.g.n(), inst.g.m(), inst.k());
    for (u, v) in inst.g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    for &(s, t) in &inst.pairs {
        let _ = writeln!(out, "{s} {t}");
    }
    out
}

/// Reads a graph file: an instance file whose pairs are ignored.
pub fn parse_graph(text: &str) -> Result<Graph> {
    Ok(parse_instance(text)?.g)
}

pub fn serialize_graph(g: &Graph) -> String {
    serialize_instance(&Instance::new(g.clone(), Vec::new()))
}

pub fn parse_solution(text: &str) -> Result<Solution> {
    let mut paths = Vec::new();
    for (ln, line) in content_lines(text) {
        let count = line.split(' ').count();
        paths.push(fields(ln, line, count)?);
    }
    Ok(Solution { paths })
}

pub fn serialize_solution(sol: &Solution) -> String {
    let mut out = String::new();
    for p in &sol.paths {
        let _ = writeln!(out, "{}", p.iter().map(usize::to_string).collect::<Vec<_>>().join(" "));
    }
    out
}

/// Parses a comma-separated vertex list such as `0,2,4`.
pub fn parse_vertex_list(text: &str) -> Result<Vec<usize>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .enumerate()
        .map(|(i, tok)| tok.trim().parse().map_err(|_| parse_err(1, i + 1, format!("not a vertex: {tok:?}"))))
        .collect()
}
