//! Pattern classification, small-graph isomorphism, and the closure check.
//!
//! The central notion: given a host graph `G`, a strong edge set `H` and a
//! pattern `F`, a vertex set `S` is an *F-graph* when the subgraph of `H`
//! induced on `S` and the subgraph of `G` induced on `S` are both isomorphic
//! to `F`. A strong edge set satisfies the F-closure exactly when no F-graph
//! exists.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};

/// Largest pattern the exact isomorphism machinery accepts.
pub const MAX_PATTERN_VERTICES: usize = 10;

/// Structural class of a pattern, following the component census.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternClass {
    /// p isolated vertices, no edges (p >= 1).
    Pk1 { p: usize },
    /// p isolated vertices plus a single edge (p >= 0).
    Pk1K2 { p: usize },
    /// p isolated vertices plus q >= 2 disjoint edges.
    Pk1Qk2 { p: usize, q: usize },
    /// Some component has at least 3 vertices.
    BigComponent,
}

/// A small pattern graph together with its classification.
#[derive(Clone, Debug)]
pub struct Pattern {
    graph: Graph,
    class: PatternClass,
    isolated: usize,
    k2_components: usize,
}

impl Pattern {
    /// Classifies `f` by its component structure. Errors on empty or
    /// oversized patterns.
    pub fn new(f: Graph) -> Result<Pattern> {
        if f.n() == 0 {
            return Err(Error::EmptyPattern);
        }
        if f.n() > MAX_PATTERN_VERTICES {
            return Err(Error::PatternTooLarge(f.n(), MAX_PATTERN_VERTICES));
        }
        let mut isolated = 0;
        let mut k2 = 0;
        let mut big = false;
        for comp in f.components() {
            match comp.len() {
                1 => isolated += 1,
                2 => k2 += 1,
                _ => big = true,
            }
        }
        let class = if big {
            PatternClass::BigComponent
        } else if k2 == 0 {
            PatternClass::Pk1 { p: isolated }
        } else if k2 == 1 {
            PatternClass::Pk1K2 { p: isolated }
        } else {
            PatternClass::Pk1Qk2 { p: isolated, q: k2 }
        };
        Ok(Pattern {
            graph: f,
            class,
            isolated,
            k2_components: k2,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn class(&self) -> PatternClass {
        self.class
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.n()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.m()
    }

    pub fn isolated_count(&self) -> usize {
        self.isolated
    }

    pub fn k2_count(&self) -> usize {
        self.k2_components
    }

    // Named constructors for the patterns used throughout the suite.

    pub fn p3() -> Pattern {
        Pattern::new(Graph::path(3)).unwrap()
    }

    pub fn path(n: usize) -> Pattern {
        Pattern::new(Graph::path(n)).unwrap()
    }

    pub fn complete(n: usize) -> Pattern {
        Pattern::new(Graph::complete(n)).unwrap()
    }

    pub fn star(t: usize) -> Pattern {
        Pattern::new(Graph::star(t)).unwrap()
    }

    pub fn pk1(p: usize) -> Result<Pattern> {
        Pattern::new(Graph::empty(p))
    }

    pub fn qk2(q: usize) -> Result<Pattern> {
        Pattern::new(Graph::matching_graph(q))
    }

    pub fn pk1_qk2(p: usize, q: usize) -> Result<Pattern> {
        Pattern::new(Graph::matching_graph(q).disjoint_union(&Graph::empty(p)))
    }

    pub fn pk1_k2(p: usize) -> Result<Pattern> {
        Pattern::pk1_qk2(p, 1)
    }
}

/// Witness vertex set of an F-graph: the strong subgraph and the host graph
/// both induce the pattern on it. Stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FGraphWitness {
    pub vertices: Vec<usize>,
}

/// Exact isomorphism for graphs of at most `MAX_PATTERN_VERTICES` vertices:
/// plain backtracking over vertex maps with degree pruning.
pub fn isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    for g in [a, b] {
        if g.n() > MAX_PATTERN_VERTICES {
            return Err(Error::PatternTooLarge(g.n(), MAX_PATTERN_VERTICES));
        }
    }
    Ok(isomorphic_small(a, b))
}

pub(crate) fn isomorphic_small(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let mut map = vec![usize::MAX; a.n()];
    let mut used = vec![false; b.n()];
    extend_iso(a, b, 0, &mut map, &mut used)
}

fn extend_iso(a: &Graph, b: &Graph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if v == a.n() {
        return true;
    }
    'cand: for w in 0..b.n() {
        if used[w] || a.degree(v) != b.degree(w) {
            continue;
        }
        for (u, &mu) in map.iter().enumerate().take(v) {
            if a.has_edge(u, v) != b.has_edge(mu, w) {
                continue 'cand;
            }
        }
        map[v] = w;
        used[w] = true;
        if extend_iso(a, b, v + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Enumerates F-graphs of `(g, h)`: vertex sets `S` with `H[S] ≅ F` and
/// `G[S] ≅ F`, deduplicated and sorted. Returns at most `limit` witnesses
/// (`None` = all).
///
/// Strategy: extend partial maps of `f` into the spanning subgraph given by
/// `h` as an induced embedding, then keep the image set iff `g` has no edge
/// inside it beyond the `h`-edges (given `H[S] ≅ F`, that equality of edge
/// sets is equivalent to `G[S] ≅ F`).
pub fn enumerate_f_graphs(
    g: &Graph,
    h: &EdgeSet,
    f: &Pattern,
    limit: Option<usize>,
) -> Vec<FGraphWitness> {
    debug_assert!(h.is_subset_of_graph(g));
    if f.vertex_count() > g.n() || limit == Some(0) {
        return Vec::new();
    }
    let fg = f.graph();
    // h as adjacency bitsets for O(1) induced checks
    let h_graph = h.spanning_subgraph(g);

    // Map pattern vertices in a fixed order: non-isolated by decreasing
    // degree, then the isolated tail. Isolated pattern vertices are mutually
    // interchangeable, so their images are forced to be increasing.
    let mut order: Vec<usize> = (0..fg.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(fg.degree(v)), v));
    let isolated_from = order
        .iter()
        .position(|&v| fg.degree(v) == 0)
        .unwrap_or(order.len());

    let mut found: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    let mut image = vec![usize::MAX; fg.n()];
    let mut used = BitSet::new(g.n());

    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &Graph,
        h_graph: &Graph,
        fg: &Graph,
        order: &[usize],
        isolated_from: usize,
        depth: usize,
        image: &mut [usize],
        used: &mut BitSet,
        found: &mut std::collections::BTreeSet<Vec<usize>>,
        limit: Option<usize>,
    ) -> bool {
        if let Some(l) = limit {
            if found.len() >= l {
                return true;
            }
        }
        if depth == order.len() {
            let mut set: Vec<usize> = image.to_vec();
            set.sort_unstable();
            // G-induced filter: every g-edge inside the image must be an
            // h-edge; the embedding already matched the h-side exactly.
            let img = BitSet::from_iter(g.n(), set.iter().copied());
            if g.edges_inside(&img) == h_graph.edges_inside(&img) {
                found.insert(set);
            }
            return false;
        }
        let fv = order[depth];
        // For the interchangeable isolated tail, force increasing images.
        let min_img = if depth > isolated_from {
            image[order[depth - 1]] + 1
        } else {
            0
        };
        'cand: for gv in min_img..g.n() {
            if used.contains(gv) {
                continue;
            }
            if h_graph.degree(gv) < fg.degree(fv) {
                continue;
            }
            for &fu in order.iter().take(depth) {
                if fg.has_edge(fu, fv) != h_graph.has_edge(image[fu], gv) {
                    continue 'cand;
                }
            }
            image[fv] = gv;
            used.insert(gv);
            let stop = rec(
                g,
                h_graph,
                fg,
                order,
                isolated_from,
                depth + 1,
                image,
                used,
                found,
                limit,
            );
            used.remove(gv);
            image[fv] = usize::MAX;
            if stop {
                return true;
            }
        }
        false
    }

    rec(
        g,
        &h_graph,
        fg,
        &order,
        isolated_from,
        0,
        &mut image,
        &mut used,
        &mut found,
        limit,
    );

    found
        .into_iter()
        .map(|vertices| FGraphWitness { vertices })
        .collect()
}

/// True iff the spanning subgraph given by `h` satisfies the F-closure.
pub fn satisfies_closure(g: &Graph, h: &EdgeSet, f: &Pattern) -> bool {
    enumerate_f_graphs(g, h, f, Some(1)).is_empty()
}

/// All vertex sets `S` of `g` with `G[S] ≅ F`; these are the only candidate
/// violation sets any strong edge set can have. Equals the F-graphs of
/// `(g, E(g))`.
pub fn host_candidates(g: &Graph, f: &Pattern) -> Vec<FGraphWitness> {
    enumerate_f_graphs(g, &EdgeSet::full(g), f, None)
}
