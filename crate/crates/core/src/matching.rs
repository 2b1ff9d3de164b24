//! Maximum matching in general graphs via Edmonds' blossom algorithm, the
//! greedy maximal matching used by the kernels, and the small induced-matching
//! search on edge subsets.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph, Matching};

const UNMATCHED: usize = usize::MAX;

/// Maximum-cardinality matching by repeated augmenting-path search with
/// blossom contraction. O(n^3); the search is BFS-based with the usual
/// base/parent arrays.
pub fn max_matching(g: &Graph) -> Matching {
    let n = g.n();
    let mut mate = vec![UNMATCHED; n];

    // Greedy warm start keeps the number of augmenting phases small.
    for e in g.edges() {
        if mate[e.u] == UNMATCHED && mate[e.v] == UNMATCHED {
            mate[e.u] = e.v;
            mate[e.v] = e.u;
        }
    }

    for root in 0..n {
        if mate[root] != UNMATCHED {
            continue;
        }
        augment_from(g, root, &mut mate);
    }

    let mut edges = EdgeSet::new();
    for (v, &partner) in mate.iter().enumerate() {
        if partner != UNMATCHED && v < partner {
            edges.insert(Edge::new(v, partner));
        }
    }
    Matching::new(n, edges)
}

/// Maximum matching size.
pub fn matching_number(g: &Graph) -> usize {
    max_matching(g).len()
}

fn augment_from(g: &Graph, root: usize, mate: &mut [usize]) {
    let n = g.n();
    let mut parent = vec![UNMATCHED; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut in_queue = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(root);
    in_queue[root] = true;

    let finish = |v: usize, mate: &mut [usize], parent: &[usize]| {
        // Flip matched/unmatched edges along the alternating path to the root.
        let mut v = v;
        while v != UNMATCHED {
            let pv = parent[v];
            let ppv = mate[pv];
            mate[v] = pv;
            mate[pv] = v;
            v = ppv;
        }
    };

    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v).iter() {
            if base[v] == base[w] || mate[v] == w {
                continue;
            }
            if w == root || (mate[w] != UNMATCHED && parent[mate[w]] != UNMATCHED) {
                // Odd cycle: contract the blossom at the common base.
                let b = lowest_common_base(v, w, &base, &parent, mate);
                let mut path = vec![false; g.n()];
                mark_blossom_path(v, b, w, &mut path, &base, &mut parent, mate);
                mark_blossom_path(w, b, v, &mut path, &base, &mut parent, mate);
                for u in 0..n {
                    if path[base[u]] {
                        base[u] = b;
                        if !in_queue[u] {
                            in_queue[u] = true;
                            queue.push_back(u);
                        }
                    }
                }
            } else if parent[w] == UNMATCHED {
                parent[w] = v;
                if mate[w] == UNMATCHED {
                    finish(w, mate, &parent);
                    return;
                }
                let mw = mate[w];
                if !in_queue[mw] {
                    in_queue[mw] = true;
                    queue.push_back(mw);
                }
            }
        }
    }
}

fn lowest_common_base(
    v: usize,
    w: usize,
    base: &[usize],
    parent: &[usize],
    mate: &[usize],
) -> usize {
    let mut seen = vec![false; base.len()];
    let mut a = v;
    loop {
        a = base[a];
        seen[a] = true;
        if mate[a] == UNMATCHED {
            break;
        }
        a = parent[mate[a]];
    }
    let mut b = w;
    loop {
        b = base[b];
        if seen[b] {
            return b;
        }
        b = parent[mate[b]];
    }
}

fn mark_blossom_path(
    mut v: usize,
    b: usize,
    mut child: usize,
    path: &mut [bool],
    base: &[usize],
    parent: &mut [usize],
    mate: &[usize],
) {
    // Parent pointers are rewritten so the eventual augmentation can walk
    // through the contracted blossom.
    while base[v] != b {
        path[base[v]] = true;
        path[base[mate[v]]] = true;
        parent[v] = child;
        child = mate[v];
        v = parent[mate[v]];
    }
}

/// Inclusion-maximal matching, scanning edges in the given order (defaults to
/// the graph's lexicographic edge order). Deterministic given the order.
pub fn maximal_matching_greedy(g: &Graph, order: Option<&[Edge]>) -> Matching {
    let default = g.edges();
    let order = order.unwrap_or(default);
    let mut covered = BitSet::new(g.n());
    let mut edges = EdgeSet::new();
    for e in order {
        debug_assert!(g.has_edge(e.u, e.v));
        if !covered.contains(e.u) && !covered.contains(e.v) {
            covered.insert(e.u);
            covered.insert(e.v);
            edges.insert(*e);
        }
    }
    Matching::new(g.n(), edges)
}

/// Maximum number of edges of `within` forming an induced matching in `g`:
/// chosen edges are pairwise disjoint and no edge of `g` joins endpoints of
/// two distinct chosen edges. Guarded to 25 edges; solved as a maximum
/// independent set in the conflict graph over `within`.
pub fn max_induced_matching(g: &Graph, within: &EdgeSet) -> Result<usize> {
    const GUARD: usize = 25;
    let edges = within.to_vec();
    if edges.len() > GUARD {
        return Err(Error::ResourceGuard {
            what: "induced-matching edge set",
            got: edges.len(),
            limit: GUARD,
        });
    }
    debug_assert!(within.is_subset_of_graph(g));
    Ok(max_induced_matching_slice(g, &edges))
}

/// Unguarded worker over an edge slice; callers keep the slice small.
pub(crate) fn max_induced_matching_slice(g: &Graph, edges: &[Edge]) -> usize {
    let k = edges.len();
    assert!(k <= 32);
    let mut conflict = vec![0u32; k];
    for i in 0..k {
        for j in i + 1..k {
            if edges_conflict(g, edges[i], edges[j]) {
                conflict[i] |= 1 << j;
                conflict[j] |= 1 << i;
            }
        }
    }
    let mut best = 0;
    mis(
        &conflict,
        if k == 32 { u32::MAX } else { (1u32 << k) - 1 },
        0,
        &mut best,
    );
    best
}

fn edges_conflict(g: &Graph, a: Edge, b: Edge) -> bool {
    if a.touches(b.u) || a.touches(b.v) {
        return true;
    }
    g.has_edge(a.u, b.u) || g.has_edge(a.u, b.v) || g.has_edge(a.v, b.u) || g.has_edge(a.v, b.v)
}

fn mis(conflict: &[u32], avail: u32, size: usize, best: &mut usize) {
    if size + avail.count_ones() as usize <= *best {
        return;
    }
    if avail == 0 {
        *best = (*best).max(size);
        return;
    }
    let v = avail.trailing_zeros() as usize;
    // include v
    mis(conflict, avail & !(1 << v) & !conflict[v], size + 1, best);
    // exclude v
    mis(conflict, avail & !(1 << v), size, best);
}
