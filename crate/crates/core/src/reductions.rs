//! Executable hardness constructions, used as instance generators and as
//! equivalence fixtures against the oracle: a split-graph construction from
//! set packing, a planar construction from exact cover by 3-sets, and the
//! double-star construction from independent set.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::planarity::is_planar;
use std::collections::BTreeSet;

/// Set packing input: universe {1..t}, subsets, target number of pairwise
/// disjoint subsets.
#[derive(Clone, Debug)]
pub struct SetPackingInstance {
    pub universe: usize,
    pub sets: Vec<Vec<usize>>,
    pub k: usize,
}

impl SetPackingInstance {
    pub fn new(universe: usize, sets: Vec<Vec<usize>>, k: usize) -> Result<SetPackingInstance> {
        for s in &sets {
            if s.is_empty() {
                return Err(Error::MalformedInstance("empty set in packing".into()));
            }
            let dedup: BTreeSet<usize> = s.iter().copied().collect();
            if dedup.len() != s.len() || s.iter().any(|&e| e == 0 || e > universe) {
                return Err(Error::MalformedInstance(format!(
                    "set {s:?} invalid over universe 1..={universe}"
                )));
            }
        }
        Ok(SetPackingInstance { universe, sets, k })
    }

    /// Brute-force decision: are there k pairwise disjoint sets?
    pub fn has_packing(&self) -> bool {
        fn rec(sets: &[Vec<usize>], from: usize, used: u64, left: usize) -> bool {
            if left == 0 {
                return true;
            }
            for i in from..sets.len() {
                let mask: u64 = sets[i].iter().map(|&e| 1u64 << e).sum();
                if used & mask == 0 && rec(sets, i + 1, used | mask, left - 1) {
                    return true;
                }
            }
            false
        }
        rec(&self.sets, 0, 0, self.k)
    }

    /// Adds one universe element contained in no set: flips the parity of
    /// k+t without changing packability.
    pub fn padded(&self) -> SetPackingInstance {
        SetPackingInstance {
            universe: self.universe + 1,
            sets: self.sets.clone(),
            k: self.k,
        }
    }
}

/// Vertex blocks of the generated split graph.
#[derive(Clone, Debug)]
pub struct SplitLayout {
    pub u: Vec<usize>,
    pub y: Vec<usize>,
    pub x: Vec<usize>,
    pub w: Vec<usize>,
}

/// Builds the split graph with clique U ∪ Y and independent set W ∪ X from a
/// set packing instance, together with the triadic-closure target
/// k' = |E(U ∪ Y)| + (k + t)/2. Requires k + t even (the matching step of
/// the equivalence pairs leftover Y-vertices); pad the universe otherwise.
pub fn gen_split_from_set_packing(
    inst: &SetPackingInstance,
) -> Result<(Graph, usize, SplitLayout)> {
    let t = inst.universe;
    let p = inst.sets.len();
    if !(inst.k + t).is_multiple_of(2) {
        return Err(Error::Parity { k: inst.k, t });
    }
    // vertex layout: U = 0..t, Y = t..2t, X = 2t..3t, W = 3t..3t+p
    let u_block: Vec<usize> = (0..t).collect();
    let y_block: Vec<usize> = (t..2 * t).collect();
    let x_block: Vec<usize> = (2 * t..3 * t).collect();
    let w_block: Vec<usize> = (3 * t..3 * t + p).collect();
    let n = 3 * t + p;
    let mut edges = Vec::new();
    // clique on U ∪ Y
    let clique: Vec<usize> = u_block.iter().chain(&y_block).copied().collect();
    for (i, &a) in clique.iter().enumerate() {
        for &b in &clique[i + 1..] {
            edges.push((a, b));
        }
    }
    // w_i adjacent to (U ∪ Y) minus its set
    for (i, set) in inst.sets.iter().enumerate() {
        let w = w_block[i];
        for &a in &clique {
            let in_set = a < t && set.contains(&(a + 1));
            if !in_set {
                edges.push((w, a));
            }
        }
    }
    // x_i adjacent to (U ∪ Y) minus y_i; y_i adjacent to (W ∪ X) minus x_i
    // (the latter follows from the w-edges above plus these x-edges)
    for i in 0..t {
        for &a in &clique {
            if a != y_block[i] {
                edges.push((x_block[i], a));
            }
        }
    }
    let g = Graph::from_edges(n, edges)?;
    let clique_edges = 2 * t * (2 * t - 1) / 2;
    let k_prime = clique_edges + (inst.k + t) / 2;
    let layout = SplitLayout {
        u: u_block,
        y: y_block,
        x: x_block,
        w: w_block,
    };
    debug_assert!(is_split(&g, &layout));
    Ok((g, k_prime, layout))
}

/// Checks the split partition: U ∪ Y a clique, W ∪ X independent.
pub fn is_split(g: &Graph, layout: &SplitLayout) -> bool {
    let clique: Vec<usize> = layout.u.iter().chain(&layout.y).copied().collect();
    for (i, &a) in clique.iter().enumerate() {
        for &b in &clique[i + 1..] {
            if !g.has_edge(a, b) {
                return false;
            }
        }
    }
    let indep: Vec<usize> = layout.w.iter().chain(&layout.x).copied().collect();
    for (i, &a) in indep.iter().enumerate() {
        for &b in &indep[i + 1..] {
            if g.has_edge(a, b) {
                return false;
            }
        }
    }
    true
}

/// Exact cover by 3-sets over 3q elements with a planar incidence graph.
#[derive(Clone, Debug)]
pub struct X3cInstance {
    pub q: usize,
    pub triplets: Vec<[usize; 3]>,
}

impl X3cInstance {
    pub fn new(q: usize, triplets: Vec<[usize; 3]>) -> Result<X3cInstance> {
        for t in &triplets {
            let dedup: BTreeSet<usize> = t.iter().copied().collect();
            if dedup.len() != 3 || t.iter().any(|&e| e >= 3 * q) {
                return Err(Error::MalformedInstance(format!(
                    "triplet {t:?} must have 3 distinct elements below {}",
                    3 * q
                )));
            }
        }
        if triplets.len() < q {
            return Err(Error::MalformedInstance(format!(
                "{} triplets cannot cover {} elements",
                triplets.len(),
                3 * q
            )));
        }
        Ok(X3cInstance { q, triplets })
    }

    /// Element/triplet incidence graph (elements 0..3q, triplets after).
    pub fn incidence_graph(&self) -> Graph {
        let q3 = 3 * self.q;
        let edges = self
            .triplets
            .iter()
            .enumerate()
            .flat_map(|(i, t)| t.iter().map(move |&e| (e, q3 + i)));
        Graph::from_edges(q3 + self.triplets.len(), edges).expect("incidence edges valid")
    }

    /// Brute force: does an exact cover exist?
    pub fn has_exact_cover(&self) -> bool {
        fn rec(triplets: &[[usize; 3]], from: usize, covered: u64, all: u64) -> bool {
            if covered == all {
                return true;
            }
            for i in from..triplets.len() {
                let mask: u64 = triplets[i].iter().map(|&e| 1u64 << e).sum();
                if covered & mask == 0 && rec(triplets, i + 1, covered | mask, all) {
                    return true;
                }
            }
            false
        }
        let all = (1u64 << (3 * self.q)) - 1;
        rec(&self.triplets, 0, 0, all)
    }
}

/// Per-triplet layout of the planar gadget.
#[derive(Clone, Debug)]
pub struct TripletGadget {
    /// Middle triangle vertices, one per element of the triplet.
    pub middle: [usize; 3],
    /// For each element position: (a, b) of the inner/outer triangles.
    pub twins: [(usize, usize); 3],
}

/// Replaces each triplet by a middle triangle plus, per element, two twin
/// vertices forming an inner triangle with the middle vertex and an outer
/// triangle with the element vertex. Returns the graph, the strong-edge
/// target 9m + 3q, and the gadget layout. The output is checked planar
/// whenever the incidence graph is.
pub fn gen_planar_from_x3c(inst: &X3cInstance) -> Result<(Graph, usize, Vec<TripletGadget>)> {
    let q3 = 3 * inst.q;
    let m = inst.triplets.len();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut gadgets = Vec::new();
    let mut next = q3;
    for t in &inst.triplets {
        let middle = [next, next + 1, next + 2];
        next += 3;
        edges.push((middle[0], middle[1]));
        edges.push((middle[0], middle[2]));
        edges.push((middle[1], middle[2]));
        let mut twins = [(0, 0); 3];
        for (pos, &elem) in t.iter().enumerate() {
            let (a, b) = (next, next + 1);
            next += 2;
            twins[pos] = (a, b);
            // inner triangle {middle, a, b}
            edges.push((middle[pos], a));
            edges.push((middle[pos], b));
            edges.push((a, b));
            // outer triangle {a, b, element}
            edges.push((a, elem));
            edges.push((b, elem));
        }
        gadgets.push(TripletGadget { middle, twins });
    }
    let g = Graph::from_edges(next, edges)?;
    if is_planar(&inst.incidence_graph()) && !is_planar(&g) {
        return Err(Error::MalformedInstance(
            "gadget output is not planar although the incidence graph is".into(),
        ));
    }
    Ok((g, 9 * m + 3 * inst.q, gadgets))
}

/// Double-star construction: the disjoint union of `g` with two stars
/// K_{1,p} whose centers are joined. The resulting (pK1+K2)-closure instance
/// with k = 1 is a yes iff `g` has no independent set of size p.
pub fn gen_pk1k2_from_independent_set(g: &Graph, p: usize) -> Graph {
    assert!(p >= 1);
    let q = double_star(p);
    g.disjoint_union(&q)
}

fn double_star(p: usize) -> Graph {
    // centers 0 and 1; leaves 2..2+p for the first, 2+p..2+2p for the second
    let mut edges = vec![(0usize, 1usize)];
    for l in 0..p {
        edges.push((0, 2 + l));
        edges.push((1, 2 + p + l));
    }
    Graph::from_edges(2 * p + 2, edges).unwrap()
}

/// All true-twin pairs of a graph: adjacent vertices with equal closed
/// neighborhoods.
pub fn true_twin_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for e in g.edges() {
        let mut nu = g.neighbors(e.u).clone();
        nu.insert(e.u);
        let mut nv = g.neighbors(e.v).clone();
        nv.insert(e.v);
        if nu == nv {
            out.push((e.u, e.v));
        }
    }
    out
}

/// The twin property every optimal triadic-closure solution satisfies: twins
/// are strong to each other and strong to exactly the same neighbors.
pub fn twin_property_holds(g: &Graph, witness: &crate::graph::EdgeSet) -> bool {
    for (a, b) in true_twin_pairs(g) {
        if !witness.contains_pair(a, b) {
            return false;
        }
        let mut shared = g.neighbors(a).clone();
        shared.intersect_with(g.neighbors(b));
        for u in shared.iter() {
            if witness.contains_pair(a.min(u), a.max(u))
                != witness.contains_pair(b.min(u), b.max(u))
            {
                return false;
            }
        }
    }
    true
}
