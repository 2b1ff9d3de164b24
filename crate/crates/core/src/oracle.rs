//! Ground-truth exact solver: branch and bound over edge subsets.
//!
//! Every specialized algorithm in the suite is validated against this one.
//! The search rests on two facts. First, feasibility is downward closed: a
//! subset of a feasible strong set is feasible, so a branch whose strong set
//! already contains an F-graph is dead. Second, only vertex sets `S` with
//! `G[S] ≅ F` can ever violate the closure, and such an `S` is violated
//! exactly when all of its `G`-edges are strong; the candidates can therefore
//! be enumerated once, up front.

use crate::graph::{EdgeSet, Graph};
use crate::pattern::{host_candidates, Pattern};
use crate::report::{Decision, SolveReport, SolveStats};
use std::time::Instant;

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Decides whether `g` has a spanning subgraph with at least `k` strong edges
/// satisfying the F-closure. Exact; returns `Inconclusive` only when the node
/// budget runs out.
pub fn solve_exact(g: &Graph, f: &Pattern, k: usize, budget: u64) -> SolveReport {
    let start = Instant::now();
    let mut report = solve_exact_inner(g, f, k, budget);
    report.stats.millis = start.elapsed().as_millis();
    report
}

fn solve_exact_inner(g: &Graph, f: &Pattern, k: usize, budget: u64) -> SolveReport {
    const ALG: &str = "oracle";
    if k > g.m() {
        return SolveReport::no(ALG).with_trace(format!("k={k} exceeds m={}", g.m()));
    }
    let cands = host_candidates(g, f);
    if f.edge_count() == 0 {
        // An edgeless pattern is violated by vertex sets alone; the strong
        // set is irrelevant.
        return if cands.is_empty() {
            SolveReport::yes(ALG, first_k_edges(g, k))
                .with_trace("edgeless pattern, no induced copy in g".to_string())
        } else {
            SolveReport::no(ALG).with_trace(format!(
                "edgeless pattern induced at {:?}",
                cands[0].vertices
            ))
        };
    }
    if cands.is_empty() {
        return SolveReport::yes(ALG, first_k_edges(g, k))
            .with_trace("no candidate violation sets in g".to_string());
    }

    let mut search = Search::new(g, f, &cands, k, budget);
    let outcome = search.run();
    let mut report = match outcome {
        Outcome::Yes(witness) => SolveReport::yes(ALG, witness),
        Outcome::No => SolveReport::no(ALG),
        Outcome::Budget => {
            SolveReport::inconclusive(ALG).with_trace(format!("node budget {budget} exhausted"))
        }
    };
    report.stats = SolveStats {
        nodes: search.nodes,
        rules_fired: 0,
        millis: 0,
    };
    report
        .trace
        .insert(0, format!("{} candidate sets", cands.len()));
    report
}

/// Maximum feasible number of strong edges, by binary search over `k`.
pub fn optimum(g: &Graph, f: &Pattern, budget: u64) -> SolveReport {
    const ALG: &str = "oracle-optimum";
    let start = Instant::now();
    let mut nodes = 0u64;
    if f.edge_count() == 0 {
        let cands = host_candidates(g, f);
        let mut report = if cands.is_empty() {
            let mut r = SolveReport::yes(ALG, EdgeSet::full(g));
            r.optimum = Some(g.m());
            r
        } else {
            SolveReport::no(ALG).with_trace("no spanning subgraph is feasible".to_string())
        };
        report.stats.millis = start.elapsed().as_millis();
        return report;
    }
    // k = 0 is always feasible for patterns with edges.
    let mut lo = 0usize;
    let mut best_witness = EdgeSet::new();
    let mut hi = g.m();
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        let sub = solve_exact(g, f, mid, budget);
        nodes += sub.stats.nodes;
        match sub.decision {
            Decision::Yes => {
                best_witness = sub.witness.expect("yes carries a witness");
                lo = mid;
            }
            Decision::No => hi = mid - 1,
            Decision::Inconclusive => {
                let mut r = SolveReport::inconclusive(ALG).with_trace(format!(
                    "budget exhausted at k={mid}; optimum in [{lo}, {hi}]"
                ));
                r.stats = SolveStats {
                    nodes,
                    rules_fired: 0,
                    millis: start.elapsed().as_millis(),
                };
                return r;
            }
        }
    }
    let mut report = SolveReport::yes(ALG, best_witness);
    report.optimum = Some(lo);
    report.stats = SolveStats {
        nodes,
        rules_fired: 0,
        millis: start.elapsed().as_millis(),
    };
    report
}

fn first_k_edges(g: &Graph, k: usize) -> EdgeSet {
    g.edges().iter().take(k).copied().collect()
}

enum Outcome {
    Yes(EdgeSet),
    No,
    Budget,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum EdgeState {
    Undecided,
    Strong,
    Weak,
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    cand_edges: Vec<Vec<u32>>,
    edge_cands: Vec<Vec<u32>>,
    strong_cnt: Vec<u32>,
    weak_cnt: Vec<u32>,
    /// Per edge: number of not-yet-satisfied candidates it appears in.
    active: Vec<u32>,
    state: Vec<EdgeState>,
    strong_total: usize,
    undecided: usize,
    unsatisfied: usize,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(
        g: &'a Graph,
        _f: &Pattern,
        cands: &[crate::pattern::FGraphWitness],
        k: usize,
        budget: u64,
    ) -> Search<'a> {
        let m = g.m();
        let edge_index: std::collections::HashMap<(usize, usize), u32> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| ((e.u, e.v), i as u32))
            .collect();
        let mut cand_edges = Vec::with_capacity(cands.len());
        let mut edge_cands = vec![Vec::new(); m];
        for w in cands {
            let mut es = Vec::new();
            for (i, &a) in w.vertices.iter().enumerate() {
                for &b in &w.vertices[i + 1..] {
                    if g.has_edge(a, b) {
                        es.push(edge_index[&(a.min(b), a.max(b))]);
                    }
                }
            }
            let ci = cand_edges.len() as u32;
            for &e in &es {
                edge_cands[e as usize].push(ci);
            }
            cand_edges.push(es);
        }
        let active: Vec<u32> = edge_cands.iter().map(|v| v.len() as u32).collect();
        let unsatisfied = cand_edges.len();
        Search {
            g,
            k,
            strong_cnt: vec![0; cand_edges.len()],
            weak_cnt: vec![0; cand_edges.len()],
            cand_edges,
            edge_cands,
            active,
            state: vec![EdgeState::Undecided; m],
            strong_total: 0,
            undecided: m,
            unsatisfied,
            nodes: 0,
            budget,
        }
    }

    fn run(&mut self) -> Outcome {
        self.rec()
    }

    fn rec(&mut self) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Outcome::Budget;
        }
        if self.strong_total >= self.k {
            return Outcome::Yes(self.collect_witness(0));
        }
        if self.strong_total + self.undecided < self.k {
            return Outcome::No;
        }
        if self.unsatisfied == 0 {
            // Every candidate already has a weak edge; all remaining edges
            // may be strong.
            return Outcome::Yes(self.collect_witness(self.k - self.strong_total));
        }
        let e = self.pick_edge();

        // strong branch first: feasibility is downward closed, so witnesses
        // are found near the top of the include-first tree
        if self.can_strong(e) {
            self.set_strong(e);
            match self.rec() {
                Outcome::No => {}
                out => {
                    self.unset_strong(e);
                    return out;
                }
            }
            self.unset_strong(e);
        }

        self.set_weak(e);
        let out = self.rec();
        self.unset_weak(e);
        out
    }

    /// Undecided edge appearing in the most unsatisfied candidates.
    fn pick_edge(&self) -> usize {
        let mut best = usize::MAX;
        let mut best_score = 0u32;
        for e in 0..self.state.len() {
            if self.state[e] == EdgeState::Undecided
                && (best == usize::MAX || self.active[e] > best_score)
            {
                best = e;
                best_score = self.active[e];
            }
        }
        debug_assert_ne!(best, usize::MAX);
        best
    }

    fn can_strong(&self, e: usize) -> bool {
        // Adding e as strong must not complete any candidate.
        self.edge_cands[e].iter().all(|&c| {
            let c = c as usize;
            self.weak_cnt[c] > 0 || self.strong_cnt[c] + 1 < self.cand_edges[c].len() as u32
        })
    }

    fn set_strong(&mut self, e: usize) {
        self.state[e] = EdgeState::Strong;
        self.strong_total += 1;
        self.undecided -= 1;
        for i in 0..self.edge_cands[e].len() {
            let c = self.edge_cands[e][i] as usize;
            self.strong_cnt[c] += 1;
        }
    }

    fn unset_strong(&mut self, e: usize) {
        self.state[e] = EdgeState::Undecided;
        self.strong_total -= 1;
        self.undecided += 1;
        for i in 0..self.edge_cands[e].len() {
            let c = self.edge_cands[e][i] as usize;
            self.strong_cnt[c] -= 1;
        }
    }

    fn set_weak(&mut self, e: usize) {
        self.state[e] = EdgeState::Weak;
        self.undecided -= 1;
        for i in 0..self.edge_cands[e].len() {
            let c = self.edge_cands[e][i] as usize;
            self.weak_cnt[c] += 1;
            if self.weak_cnt[c] == 1 {
                self.unsatisfied -= 1;
                for j in 0..self.cand_edges[c].len() {
                    let other = self.cand_edges[c][j] as usize;
                    self.active[other] -= 1;
                }
            }
        }
    }

    fn unset_weak(&mut self, e: usize) {
        self.state[e] = EdgeState::Undecided;
        self.undecided += 1;
        for i in 0..self.edge_cands[e].len() {
            let c = self.edge_cands[e][i] as usize;
            if self.weak_cnt[c] == 1 {
                self.unsatisfied += 1;
                for j in 0..self.cand_edges[c].len() {
                    let other = self.cand_edges[c][j] as usize;
                    self.active[other] += 1;
                }
            }
            self.weak_cnt[c] -= 1;
        }
    }

    fn collect_witness(&self, extra: usize) -> EdgeSet {
        let mut witness = EdgeSet::new();
        let mut extra = extra;
        for (i, e) in self.g.edges().iter().enumerate() {
            match self.state[i] {
                EdgeState::Strong => {
                    witness.insert(*e);
                }
                EdgeState::Undecided if extra > 0 => {
                    witness.insert(*e);
                    extra -= 1;
                }
                _ => {}
            }
        }
        witness
    }
}
