//! Simple undirected graphs with bitset adjacency, plus the edge-set and
//! matching types shared by every solver.
//!
//! Graphs are immutable after construction; every "mutation" builds a new
//! graph. Vertex deletion compacts ids and returns the relabeling map so
//! kernels keep dense bitset rows.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// An undirected edge, stored with `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Edge {
        assert_ne!(a, b, "self-loop");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn other(&self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }
}

impl std::fmt::Debug for Edge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BitSet>,
    edges: Vec<Edge>, // sorted lexicographically
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            adj: vec![BitSet::new(n); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph, rejecting self-loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a},{b}) out of range for n={n}"
                )));
            }
            let e = Edge::new(a, b);
            if !set.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge {e:?}")));
            }
            g.adj[a].insert(b);
            g.adj[b].insert(a);
        }
        g.edges = set.into_iter().collect();
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a].contains(b)
    }

    /// Number of edges with both endpoints in `set`.
    pub fn edges_inside(&self, set: &BitSet) -> usize {
        set.iter()
            .map(|v| self.adj[v].intersection_count(set))
            .sum::<usize>()
            / 2
    }

    /// New graph with the given edge removed.
    pub fn without_edge(&self, e: Edge) -> Graph {
        assert!(self.has_edge(e.u, e.v));
        let mut g = self.clone();
        g.adj[e.u].remove(e.v);
        g.adj[e.v].remove(e.u);
        g.edges.retain(|&f| f != e);
        g
    }

    /// New graph with an added edge (builder-style copy).
    pub fn with_edge(&self, a: usize, b: usize) -> Result<Graph> {
        let mut edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        edges.push((a, b));
        Graph::from_edges(self.n, edges)
    }

    /// Deletes the given vertices, compacting ids. Returns the new graph and
    /// the relabeling map `new id -> old id`.
    pub fn remove_vertices(&self, del: &BitSet) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|v| !del.contains(*v)).collect();
        self.induced_by_order(&keep)
    }

    /// Induced subgraph on `set`, vertices relabeled in increasing order of
    /// old id. Returns the relabeling map `new id -> old id`.
    pub fn induced(&self, set: &BitSet) -> (Graph, Vec<usize>) {
        self.induced_by_order(&set.to_vec())
    }

    fn induced_by_order(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut old_to_new = vec![usize::MAX; self.n];
        for (new, &old) in keep.iter().enumerate() {
            old_to_new[old] = new;
        }
        let edges = self.edges.iter().filter_map(|e| {
            let (a, b) = (old_to_new[e.u], old_to_new[e.v]);
            (a != usize::MAX && b != usize::MAX).then_some((a, b))
        });
        let g = Graph::from_edges(keep.len(), edges).expect("induced subgraph is valid");
        (g, keep.to_vec())
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self
            .edges
            .iter()
            .map(|e| (e.u, e.v))
            .chain(other.edges.iter().map(|e| (e.u + shift, e.v + shift)));
        Graph::from_edges(self.n + other.n, edges).expect("union of valid graphs is valid")
    }

    /// Connected components as sorted vertex lists, ordered by minimum vertex id.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = BitSet::new(self.n);
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = vec![s];
            let mut stack = vec![s];
            seen.insert(s);
            while let Some(v) = stack.pop() {
                for w in self.adj[v].iter() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Degeneracy by repeated minimum-degree peeling.
    pub fn degeneracy(&self) -> usize {
        let n = self.n;
        if n == 0 {
            return 0;
        }
        let mut deg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut removed = BitSet::new(n);
        let mut best = 0;
        for _ in 0..n {
            let v = (0..n)
                .filter(|v| !removed.contains(*v))
                .min_by_key(|&v| (deg[v], v))
                .unwrap();
            best = best.max(deg[v]);
            removed.insert(v);
            for w in self.adj[v].iter() {
                if !removed.contains(w) {
                    deg[w] -= 1;
                }
            }
        }
        best
    }

    /// Partitions vertices into false-twin classes: `u` and `v` share a class
    /// iff N(u) = N(v). Equal open neighborhoods imply non-adjacency, so no
    /// separate check is needed. Classes are ordered by minimum member.
    pub fn false_twin_classes(&self) -> Vec<Vec<usize>> {
        let mut map: std::collections::BTreeMap<&BitSet, Vec<usize>> =
            std::collections::BTreeMap::new();
        for v in 0..self.n {
            map.entry(&self.adj[v]).or_default().push(v);
        }
        let mut classes: Vec<Vec<usize>> = map.into_values().collect();
        classes.sort_unstable_by_key(|c| c[0]);
        classes
    }

    // ---- convenience constructors used across tests and generators ----

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    /// Star K_{1,t}: center 0, leaves 1..=t.
    pub fn star(t: usize) -> Graph {
        Graph::from_edges(t + 1, (1..=t).map(|i| (0, i))).unwrap()
    }

    /// Disjoint union of `q` edges.
    pub fn matching_graph(q: usize) -> Graph {
        Graph::from_edges(2 * q, (0..q).map(|i| (2 * i, 2 * i + 1))).unwrap()
    }

    pub fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5)); // outer cycle
            e.push((i, i + 5)); // spokes
            e.push((i + 5, (i + 2) % 5 + 5)); // inner pentagram
        }
        Graph::from_edges(10, e).unwrap()
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, {:?})", self.n, self.m(), self.edges)
    }
}

/// A subset of the edges of some host graph. Iteration order is sorted, so
/// every consumer is deterministic.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct EdgeSet {
    edges: BTreeSet<Edge>,
}

impl EdgeSet {
    pub fn new() -> EdgeSet {
        EdgeSet::default()
    }

    pub fn from_edges<I: IntoIterator<Item = Edge>>(iter: I) -> EdgeSet {
        EdgeSet {
            edges: iter.into_iter().collect(),
        }
    }

    /// All edges of the host graph.
    pub fn full(g: &Graph) -> EdgeSet {
        EdgeSet::from_edges(g.edges().iter().copied())
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.edges.insert(e)
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        self.edges.remove(e)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn contains_pair(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&Edge::new(a, b))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    pub fn to_vec(&self) -> Vec<Edge> {
        self.edges.iter().copied().collect()
    }

    pub fn is_subset_of_graph(&self, g: &Graph) -> bool {
        self.edges.iter().all(|e| g.has_edge(e.u, e.v))
    }

    /// Vertices covered by at least one member edge.
    pub fn covered(&self, n: usize) -> BitSet {
        let mut s = BitSet::new(n);
        for e in &self.edges {
            s.insert(e.u);
            s.insert(e.v);
        }
        s
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        EdgeSet {
            edges: self.edges.difference(&other.edges).copied().collect(),
        }
    }

    /// The spanning subgraph of `g` whose edges are exactly this set.
    pub fn spanning_subgraph(&self, g: &Graph) -> Graph {
        debug_assert!(self.is_subset_of_graph(g));
        Graph::from_edges(g.n(), self.edges.iter().map(|e| (e.u, e.v)))
            .expect("edge subset of a valid graph is valid")
    }

    /// Relabels every edge through `map` (new id -> old id semantics are up
    /// to the caller; this simply applies `map[v]` to each endpoint).
    pub fn relabeled(&self, map: &[usize]) -> EdgeSet {
        EdgeSet::from_edges(self.edges.iter().map(|e| Edge::new(map[e.u], map[e.v])))
    }
}

impl std::fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.edges.iter()).finish()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet::from_edges(iter)
    }
}

/// A matching: edges sharing no endpoint, plus the covered vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    edges: EdgeSet,
    covered: BitSet,
}

impl Matching {
    pub fn new(n: usize, edges: EdgeSet) -> Matching {
        let mut covered = BitSet::new(n);
        for e in edges.iter() {
            assert!(
                !covered.contains(e.u) && !covered.contains(e.v),
                "edges {edges:?} are not a matching"
            );
            covered.insert(e.u);
            covered.insert(e.v);
        }
        Matching { edges, covered }
    }

    pub fn empty(n: usize) -> Matching {
        Matching::new(n, EdgeSet::new())
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn covered(&self) -> &BitSet {
        &self.covered
    }

    pub fn covers(&self, v: usize) -> bool {
        self.covered.contains(v)
    }
}
