//! Algorithms parameterized by the number of weak edges l = |E(G)| - k:
//! a depth-bounded branching over edge deletions and a compression to
//! d-hitting-set over the pattern copies of the host graph.

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph};
use crate::pattern::{enumerate_f_graphs, host_candidates, Pattern};
use crate::report::SolveReport;
use std::collections::BTreeSet;

/// Bounded search tree: find an F-graph of the current strong set (all
/// remaining edges), branch on deleting each of its edges, depth at most `l`.
/// The F-graph test is always against the original host graph.
pub fn solve_weak_branching(g: &Graph, f: &Pattern, l: usize) -> SolveReport {
    const ALG: &str = "weak-branch";
    assert!(f.edge_count() >= 1, "pattern must have an edge");
    let mut seen: std::collections::HashSet<Vec<Edge>> = std::collections::HashSet::new();
    let mut nodes = 0u64;
    let mut deleted: Vec<Edge> = Vec::new();

    fn rec(
        g: &Graph,
        f: &Pattern,
        budget: usize,
        deleted: &mut Vec<Edge>,
        seen: &mut std::collections::HashSet<Vec<Edge>>,
        nodes: &mut u64,
    ) -> bool {
        *nodes += 1;
        let mut key = deleted.clone();
        key.sort_unstable();
        if !seen.insert(key) {
            return false; // a permutation of these deletions was expanded
        }
        let strong: EdgeSet = g
            .edges()
            .iter()
            .filter(|e| !deleted.contains(e))
            .copied()
            .collect();
        // lexicographically smallest violating vertex set
        let witnesses = enumerate_f_graphs(g, &strong, f, None);
        let Some(first) = witnesses.first() else {
            return true; // closure satisfied
        };
        if budget == 0 {
            return false;
        }
        // branch on each strong edge inside the violating set
        let verts = &first.vertices;
        let mut branch_edges = Vec::new();
        for (i, &a) in verts.iter().enumerate() {
            for &b in &verts[i + 1..] {
                if g.has_edge(a, b) {
                    let e = Edge::new(a, b);
                    debug_assert!(strong.contains(&e), "violating set has all edges strong");
                    branch_edges.push(e);
                }
            }
        }
        debug_assert_eq!(branch_edges.len(), f.edge_count());
        for e in branch_edges {
            deleted.push(e);
            if rec(g, f, budget - 1, deleted, seen, nodes) {
                return true;
            }
            deleted.pop();
        }
        false
    }

    let found = rec(g, f, l, &mut deleted, &mut seen, &mut nodes);
    let mut report = if found {
        let strong: EdgeSet = g
            .edges()
            .iter()
            .filter(|e| !deleted.contains(e))
            .copied()
            .collect();
        SolveReport::yes(ALG, strong).with_trace(format!(
            "deleted {} of at most {} edges",
            deleted.len(),
            l
        ))
    } else {
        SolveReport::no(ALG).with_trace(format!("search tree of depth {l} exhausted"))
    };
    report.stats.nodes = nodes;
    report
}

/// A d-hitting-set instance over the edges of a host graph: each set is the
/// edge set of one induced pattern copy, and a hitting set of weak edges
/// breaks every potential violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingSetInstance {
    /// Universe, the host graph's edges in lexicographic order.
    pub universe: Vec<Edge>,
    /// Sets of universe indices, each of size `d`, deduplicated and sorted.
    pub sets: Vec<Vec<usize>>,
    /// Edges per set, |E(F)|.
    pub d: usize,
    /// Deletion budget l.
    pub budget: usize,
}

/// Enumerates every induced copy of the pattern in `g` (host side only) and
/// emits its edge set. Hitting all of them with weak edges is equivalent to
/// the closure: a violation needs all edges of some copy strong, and deleting
/// an edge of a copy never creates a copy that was not already present.
pub fn compress_to_hitting_set(g: &Graph, f: &Pattern, budget: usize) -> HittingSetInstance {
    assert!(f.edge_count() >= 1, "pattern must have an edge");
    let universe: Vec<Edge> = g.edges().to_vec();
    let index: std::collections::HashMap<Edge, usize> =
        universe.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for w in host_candidates(g, f) {
        let mut set = Vec::with_capacity(f.edge_count());
        for (i, &a) in w.vertices.iter().enumerate() {
            for &b in &w.vertices[i + 1..] {
                if g.has_edge(a, b) {
                    set.push(index[&Edge::new(a, b)]);
                }
            }
        }
        debug_assert_eq!(set.len(), f.edge_count());
        set.sort_unstable();
        sets.insert(set);
    }
    HittingSetInstance {
        universe,
        sets: sets.into_iter().collect(),
        d: f.edge_count(),
        budget,
    }
}

/// Exact bounded search tree for the hitting set: branch over the elements of
/// the first unhit set, depth at most the budget.
pub fn solve_hitting_set(inst: &HittingSetInstance) -> Option<Vec<usize>> {
    fn rec(inst: &HittingSetInstance, chosen: &mut Vec<usize>, budget: usize) -> bool {
        let unhit = inst
            .sets
            .iter()
            .find(|s| !s.iter().any(|e| chosen.contains(e)));
        let Some(set) = unhit else {
            return true;
        };
        if budget == 0 {
            return false;
        }
        for &e in set {
            chosen.push(e);
            if rec(inst, chosen, budget - 1) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    rec(inst, &mut chosen, inst.budget).then(|| {
        chosen.sort_unstable();
        chosen.dedup();
        chosen
    })
}

/// Full pipeline: compress, solve, and translate the hitting set back into a
/// strong edge set report.
pub fn solve_weak_hitting(g: &Graph, f: &Pattern, l: usize) -> SolveReport {
    const ALG: &str = "hitting-set";
    let inst = compress_to_hitting_set(g, f, l);
    let q = inst.sets.len();
    match solve_hitting_set(&inst) {
        Some(hit) => {
            let weak: EdgeSet = hit.iter().map(|&i| inst.universe[i]).collect();
            let strong = EdgeSet::full(g).difference(&weak);
            SolveReport::yes(ALG, strong)
                .with_trace(format!("{q} sets, hit by {} weak edges", hit.len()))
        }
        None => {
            SolveReport::no(ALG).with_trace(format!("{q} sets admit no hitting set of size {l}"))
        }
    }
}

impl HittingSetInstance {
    /// Text format: header `u <universe> s <sets> d <d> l <budget>`, then one
    /// line per set listing edge indices.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "u {} s {} d {} l {}\n",
            self.universe.len(),
            self.sets.len(),
            self.d,
            self.budget
        );
        for set in &self.sets {
            let line: Vec<String> = set.iter().map(|i| i.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text format; the universe is reconstructed as abstract
    /// indices (edges are not recoverable from the file alone).
    pub fn parse_sets(text: &str) -> Result<(usize, Vec<Vec<usize>>, usize, usize)> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::MalformedInstance("empty hitting-set file".into()))?;
        let tok: Vec<&str> = header.split_whitespace().collect();
        if tok.len() != 8 || tok[0] != "u" || tok[2] != "s" || tok[4] != "d" || tok[6] != "l" {
            return Err(Error::MalformedInstance(format!(
                "bad hitting-set header: {header}"
            )));
        }
        let parse = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::MalformedInstance(format!("bad number {s}")))
        };
        let (u, s, d, l) = (
            parse(tok[1])?,
            parse(tok[3])?,
            parse(tok[5])?,
            parse(tok[7])?,
        );
        let mut sets = Vec::with_capacity(s);
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let set: Result<Vec<usize>> = line.split_whitespace().map(parse).collect();
            let set = set?;
            if set.len() != d || set.iter().any(|&e| e >= u) {
                return Err(Error::MalformedInstance(format!("bad set line: {line}")));
            }
            sets.push(set);
        }
        if sets.len() != s {
            return Err(Error::MalformedInstance(format!(
                "expected {s} sets, found {}",
                sets.len()
            )));
        }
        Ok((u, sets, d, l))
    }
}
