//! File formats: the graph format (`p n m` header, 1-indexed `e u v` lines,
//! `c` comments), the pattern grammar, and the reduction input formats.

use sfc_core::{Graph, Pattern};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    General(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn line_err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Line {
        line,
        msg: msg.into(),
    }
}

/// Parses the graph format. Vertices are 1-indexed in files and 0-indexed in
/// memory; duplicate edges, self-loops and out-of-range endpoints are
/// rejected with their line number.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut n: Option<usize> = None;
    let mut declared_m = 0usize;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        match tok[0] {
            "p" => {
                if n.is_some() {
                    return Err(line_err(line_no, "duplicate header"));
                }
                if tok.len() != 3 {
                    return Err(line_err(line_no, format!("malformed header `{line}`")));
                }
                let nv = tok[1]
                    .parse::<usize>()
                    .map_err(|_| line_err(line_no, format!("bad vertex count `{}`", tok[1])))?;
                declared_m = tok[2]
                    .parse::<usize>()
                    .map_err(|_| line_err(line_no, format!("bad edge count `{}`", tok[2])))?;
                n = Some(nv);
            }
            "e" => {
                let n = n.ok_or_else(|| line_err(line_no, "edge before header"))?;
                if tok.len() != 3 {
                    return Err(line_err(line_no, format!("malformed edge `{line}`")));
                }
                let u = tok[1]
                    .parse::<usize>()
                    .map_err(|_| line_err(line_no, format!("bad endpoint `{}`", tok[1])))?;
                let v = tok[2]
                    .parse::<usize>()
                    .map_err(|_| line_err(line_no, format!("bad endpoint `{}`", tok[2])))?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(line_err(
                        line_no,
                        format!("endpoint out of range 1..={n} in `{line}`"),
                    ));
                }
                if u == v {
                    return Err(line_err(line_no, format!("self-loop at vertex {u}")));
                }
                let key = (u.min(v), u.max(v));
                if !seen.insert(key) {
                    return Err(line_err(line_no, format!("duplicate edge {u} {v}")));
                }
                edges.push((u - 1, v - 1));
            }
            _ => {
                return Err(line_err(line_no, format!("unrecognized line `{line}`")));
            }
        }
    }
    let n = n.ok_or_else(|| FormatError::General("missing `p <n> <m>` header".into()))?;
    if edges.len() != declared_m {
        return Err(FormatError::General(format!(
            "header declares {declared_m} edges, found {}",
            edges.len()
        )));
    }
    Graph::from_edges(n, edges).map_err(|e| FormatError::General(e.to_string()))
}

/// Serializes a graph in the same format (sorted edges, 1-indexed).
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.m());
    for e in g.edges() {
        out.push_str(&format!("e {} {}\n", e.u + 1, e.v + 1));
    }
    out
}

pub fn read_graph(path: &Path) -> Result<Graph, FormatError> {
    parse_graph(&std::fs::read_to_string(path)?)
}

/// Pattern grammar: `P3`, `pK1:<p>`, `qK2:<q>`, `pK1qK2:<p>,<q>`,
/// `K1t:<t>`, or `file:<path>` in the graph format.
pub fn parse_pattern(spec: &str) -> Result<Pattern, FormatError> {
    let bad = |msg: String| FormatError::General(msg);
    let from_core =
        |r: sfc_core::Result<Pattern>| r.map_err(|e| FormatError::General(e.to_string()));
    if spec == "P3" {
        return Ok(Pattern::p3());
    }
    if let Some(rest) = spec.strip_prefix("pK1qK2:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err(bad(format!("expected pK1qK2:<p>,<q>, got `{spec}`")));
        }
        let p = parts[0]
            .parse::<usize>()
            .map_err(|_| bad(format!("bad p in `{spec}`")))?;
        let q = parts[1]
            .parse::<usize>()
            .map_err(|_| bad(format!("bad q in `{spec}`")))?;
        return from_core(Pattern::pk1_qk2(p, q));
    }
    if let Some(p) = spec.strip_prefix("pK1:") {
        let p = p
            .parse::<usize>()
            .map_err(|_| bad(format!("bad p in `{spec}`")))?;
        return from_core(Pattern::pk1(p));
    }
    if let Some(q) = spec.strip_prefix("qK2:") {
        let q = q
            .parse::<usize>()
            .map_err(|_| bad(format!("bad q in `{spec}`")))?;
        return from_core(Pattern::qk2(q));
    }
    if let Some(t) = spec.strip_prefix("K1t:") {
        let t = t
            .parse::<usize>()
            .map_err(|_| bad(format!("bad t in `{spec}`")))?;
        return from_core(Pattern::new(Graph::star(t)));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let g = read_graph(Path::new(path))?;
        return from_core(Pattern::new(g));
    }
    Err(bad(format!("unrecognized pattern `{spec}`")))
}

/// Set packing format: `t p k` header, then p lines of element ids.
pub fn parse_set_packing(
    text: &str,
) -> Result<sfc_core::reductions::SetPackingInstance, FormatError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('c')
    });
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| FormatError::General("empty set-packing file".into()))?;
    let tok: Vec<&str> = header.split_whitespace().collect();
    if tok.len() != 3 {
        return Err(line_err(
            line_no + 1,
            format!("expected `t p k`, got `{header}`"),
        ));
    }
    let parse = |s: &str, ln: usize| {
        s.parse::<usize>()
            .map_err(|_| line_err(ln, format!("bad number `{s}`")))
    };
    let t = parse(tok[0], line_no + 1)?;
    let p = parse(tok[1], line_no + 1)?;
    let k = parse(tok[2], line_no + 1)?;
    let mut sets = Vec::with_capacity(p);
    for (ln, line) in lines {
        let set: Result<Vec<usize>, FormatError> =
            line.split_whitespace().map(|s| parse(s, ln + 1)).collect();
        sets.push(set?);
    }
    if sets.len() != p {
        return Err(FormatError::General(format!(
            "expected {p} sets, found {}",
            sets.len()
        )));
    }
    sfc_core::reductions::SetPackingInstance::new(t, sets, k)
        .map_err(|e| FormatError::General(e.to_string()))
}

/// X3C format: `q m` header, then m lines of three element ids (0-based,
/// below 3q).
pub fn parse_x3c(text: &str) -> Result<sfc_core::reductions::X3cInstance, FormatError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('c')
    });
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| FormatError::General("empty x3c file".into()))?;
    let tok: Vec<&str> = header.split_whitespace().collect();
    if tok.len() != 2 {
        return Err(line_err(
            line_no + 1,
            format!("expected `q m`, got `{header}`"),
        ));
    }
    let parse = |s: &str, ln: usize| {
        s.parse::<usize>()
            .map_err(|_| line_err(ln, format!("bad number `{s}`")))
    };
    let q = parse(tok[0], line_no + 1)?;
    let m = parse(tok[1], line_no + 1)?;
    let mut triplets = Vec::with_capacity(m);
    for (ln, line) in lines {
        let vals: Result<Vec<usize>, FormatError> =
            line.split_whitespace().map(|s| parse(s, ln + 1)).collect();
        let vals = vals?;
        if vals.len() != 3 {
            return Err(line_err(
                ln + 1,
                format!("triplet needs 3 elements: `{line}`"),
            ));
        }
        triplets.push([vals[0], vals[1], vals[2]]);
    }
    if triplets.len() != m {
        return Err(FormatError::General(format!(
            "expected {m} triplets, found {}",
            triplets.len()
        )));
    }
    sfc_core::reductions::X3cInstance::new(q, triplets)
        .map_err(|e| FormatError::General(e.to_string()))
}
