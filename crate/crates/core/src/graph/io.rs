//! Edge-list and DIMACS text formats.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with 0-based
//! endpoints. DIMACS: `p edge n m` followed by `e u v` lines with 1-based
//! endpoints; `c` lines are comments. Serialization is canonical (edges as
//! `u < v`, sorted lexicographically).

use std::fmt::Write;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dimacs,
}

/// A parsed graph plus the original label of each internal vertex.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub labels: Vec<usize>,
    pub format: Format,
}

impl ParsedGraph {
    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    /// Translates an original label back to the internal vertex index.
    pub fn vertex(&self, label: usize) -> Option<usize> {
        match self.format {
            Format::EdgeList => (label < self.graph.n()).then_some(label),
            Format::Dimacs => label.checked_sub(1).filter(|&v| v < self.graph.n()),
        }
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#') && !l.starts_with('c'))
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| perr(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| perr(line, format!("invalid {what} `{tok}`")))
}

/// Detects the format from the first content line.
pub fn detect(text: &str) -> Format {
    match content_lines(text).next() {
        Some((_, l)) if l.starts_with('p') => Format::Dimacs,
        _ => Format::EdgeList,
    }
}

pub fn parse(text: &str) -> Result<ParsedGraph> {
    match detect(text) {
        Format::EdgeList => parse_edge_list(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

pub fn parse_edge_list(text: &str) -> Result<ParsedGraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| perr(1, "missing `n m` header"))?;
    let mut toks = header.split_whitespace();
    let n = number(toks.next(), hline, "vertex count")?;
    let m = number(toks.next(), hline, "edge count")?;
    if toks.next().is_some() {
        return Err(perr(hline, "trailing tokens in header"));
    }
    let mut edges = Vec::with_capacity(m);
    for (ln, l) in lines {
        let mut toks = l.split_whitespace();
        let u = number(toks.next(), ln, "endpoint")?;
        let v = number(toks.next(), ln, "endpoint")?;
        if toks.next().is_some() {
            return Err(perr(ln, "expected exactly two endpoints"));
        }
        check_edge(ln, u, v, n)?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(perr(hline, format!("header declares {m} edges, found {}", edges.len())));
    }
    Ok(ParsedGraph { graph: Graph::from_edge_list(n, &edges)?, labels: (0..n).collect(), format: Format::EdgeList })
}

pub fn parse_dimacs(text: &str) -> Result<ParsedGraph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    for (ln, l) in content_lines(text) {
        let mut toks = l.split_whitespace();
        match toks.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(perr(ln, "duplicate problem line"));
                }
                match toks.next() {
                    Some("edge") | Some("col") => {}
                    other => return Err(perr(ln, format!("unsupported problem type {other:?}"))),
                }
                let n = number(toks.next(), ln, "vertex count")?;
                let m = number(toks.next(), ln, "edge count")?;
                header = Some((ln, n, m));
            }
            Some("e") => {
                let (_, n, _) = header.ok_or_else(|| perr(ln, "edge before problem line"))?;
                let u = number(toks.next(), ln, "endpoint")?;
                let v = number(toks.next(), ln, "endpoint")?;
                if u == 0 || v == 0 {
                    return Err(perr(ln, "DIMACS endpoints are 1-based"));
                }
                check_edge(ln, u - 1, v - 1, n)?;
                edges.push((u - 1, v - 1));
            }
            _ => return Err(perr(ln, format!("unrecognized line `{l}`"))),
        }
    }
    let (hline, n, m) = header.ok_or_else(|| perr(1, "missing `p edge n m` line"))?;
    if edges.len() != m {
        return Err(perr(hline, format!("problem line declares {m} edges, found {}", edges.len())));
    }
    Ok(ParsedGraph { graph: Graph::from_edge_list(n, &edges)?, labels: (1..=n).collect(), format: Format::Dimacs })
}

fn check_edge(line: usize, u: usize, v: usize, n: usize) -> Result<()> {
    if u >= n || v >= n {
        return Err(perr(line, format!("endpoint out of range for n = {n}")));
    }
    if u == v {
        return Err(perr(line, format!("self-loop at {u}")));
    }
    Ok(())
}

/// Canonical edge-list text.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn to_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn serialize(g: &Graph, format: Format) -> String {
    match format {
        Format::EdgeList => to_edge_list(g),
        Format::Dimacs => to_dimacs(g),
    }
}
