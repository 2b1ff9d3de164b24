//! Above-guarantee algorithms, parameterized by r = k - mu(G): strong triadic
//! closure on graphs of maximum degree 4, and strong K_{1,t}-closure for
//! stars. A matching is always feasible for these patterns, so mu(G) strong
//! edges come for free and only the surplus r is searched for.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSet, Graph};
use crate::matching::{matching_number, max_matching};
use crate::pattern::{satisfies_closure, Pattern};
use crate::report::SolveReport;
use std::collections::BTreeSet;

/// Greedy core of the degree-4 triadic-closure algorithm: a vertex set X and
/// edge set A such that A plus a maximum matching of G-X is a disjoint union
/// of complete graphs on at most 4 vertices.
#[derive(Clone, Debug)]
pub struct GreedyCore {
    pub x: BitSet,
    pub a: EdgeSet,
    /// K4 extractions performed.
    pub k4_steps: usize,
    /// Matching-slack triangle extractions performed.
    pub triangle_steps: usize,
}

/// Builds the core: absorb K4s of G-X while any exist, then triangles T with
/// mu(G-X) < 3 + mu(G-X-T), repeating until neither applies.
pub fn stc_greedy_core(g: &Graph) -> GreedyCore {
    let mut x = BitSet::new(g.n());
    let mut a = EdgeSet::new();
    let mut k4_steps = 0;
    let mut triangle_steps = 0;
    loop {
        if let Some(q) = find_k4_outside(g, &x) {
            for &v in &q {
                x.insert(v);
            }
            for (i, &u) in q.iter().enumerate() {
                for &v in &q[i + 1..] {
                    a.insert(Edge::new(u, v));
                }
            }
            k4_steps += 1;
            continue;
        }
        let (rest, _) = g.remove_vertices(&x);
        let mu_rest = matching_number(&rest);
        let mut fired = false;
        for tri in triangles_outside(g, &x) {
            let mut del = x.clone();
            for &v in &tri {
                del.insert(v);
            }
            let (smaller, _) = g.remove_vertices(&del);
            if mu_rest < 3 + matching_number(&smaller) {
                for &v in &tri {
                    x.insert(v);
                }
                a.insert(Edge::new(tri[0], tri[1]));
                a.insert(Edge::new(tri[0], tri[2]));
                a.insert(Edge::new(tri[1], tri[2]));
                triangle_steps += 1;
                fired = true;
                break;
            }
        }
        if !fired {
            return GreedyCore {
                x,
                a,
                k4_steps,
                triangle_steps,
            };
        }
    }
}

fn find_k4_outside(g: &Graph, x: &BitSet) -> Option<[usize; 4]> {
    for e in g.edges() {
        if x.contains(e.u) || x.contains(e.v) {
            continue;
        }
        let mut common = g.neighbors(e.u).clone();
        common.intersect_with(g.neighbors(e.v));
        common.difference_with(x);
        let cands: Vec<usize> = common.iter().filter(|&w| w > e.v).collect();
        for (i, &w) in cands.iter().enumerate() {
            for &z in &cands[i + 1..] {
                if g.has_edge(w, z) {
                    return Some([e.u, e.v, w, z]);
                }
            }
        }
    }
    None
}

/// Triangles of G-X, each sorted, listed in lexicographic order.
pub fn triangles_outside(g: &Graph, x: &BitSet) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for e in g.edges() {
        if x.contains(e.u) || x.contains(e.v) {
            continue;
        }
        let mut common = g.neighbors(e.u).clone();
        common.intersect_with(g.neighbors(e.v));
        common.difference_with(x);
        for w in common.iter() {
            if w > e.v {
                out.push([e.u, e.v, w]);
            }
        }
    }
    out
}

/// Classification of the triangles of G-X used by the reduction rules.
#[derive(Clone, Debug, Default)]
pub struct TriangleInventory {
    /// Distance at most 1 from X (some vertex has a neighbor in X).
    pub near: Vec<[usize; 3]>,
    /// Distance at least 2, intersecting no other triangle.
    pub isolated_far: Vec<[usize; 3]>,
    /// Distance at least 2, sharing an edge with a near triangle.
    pub far_with_near_partner: Vec<[usize; 3]>,
    /// Pairs of distance->=2 triangles sharing an edge.
    pub far_pairs: Vec<([usize; 3], [usize; 3])>,
}

/// Classifies triangles of G-X. Panics if the structural guarantees of the
/// K4-free degree-4 core are violated (intersections must be single shared
/// edges, with no third triangle involved).
pub fn classify_triangles(g: &Graph, x: &BitSet) -> TriangleInventory {
    let tris = triangles_outside(g, x);
    let is_near = |t: &[usize; 3]| t.iter().any(|&v| g.neighbors(v).intersection_count(x) > 0);
    let mut inv = TriangleInventory::default();
    for (i, t) in tris.iter().enumerate() {
        let partners: Vec<usize> = (0..tris.len())
            .filter(|&j| j != i && tris[j].iter().any(|v| t.contains(v)))
            .collect();
        assert!(
            partners.len() <= 1,
            "triangle {t:?} intersects more than one other triangle"
        );
        if let Some(&j) = partners.first() {
            let shared: Vec<usize> = t.iter().copied().filter(|v| tris[j].contains(v)).collect();
            assert_eq!(
                shared.len(),
                2,
                "triangles {t:?}/{:?} share a vertex, not an edge",
                tris[j]
            );
        }
        if is_near(t) {
            inv.near.push(*t);
            continue;
        }
        match partners.first() {
            None => inv.isolated_far.push(*t),
            Some(&j) if is_near(&tris[j]) => inv.far_with_near_partner.push(*t),
            Some(&j) => {
                if i < j {
                    inv.far_pairs.push((*t, tris[j]));
                }
            }
        }
    }
    inv
}

/// Lifting record for one contracted far pair: triangles in original ids plus
/// the private vertices (the ones in exactly one of the two triangles).
#[derive(Clone, Debug)]
struct PairLift {
    t1_orig: [usize; 3],
    t2_orig: [usize; 3],
    priv1_orig: usize,
    priv2_orig: usize,
}

struct Contraction {
    graph: Graph,
    /// For surviving vertices: new id -> previous id. Pair vertices map to
    /// usize::MAX here.
    survivor_map: Vec<usize>,
    /// ĝ id of each pair vertex, aligned with `lifts`.
    pair_vertex: Vec<usize>,
    lifts: Vec<PairLift>,
}

/// Rule: replace each far pair {T1, T2} by a single vertex adjacent to the
/// neighbors of the private vertices; adjacency between two pair vertices
/// requires an edge between their private vertices.
fn contract_far_pairs(
    g: &Graph,
    pairs: &[([usize; 3], [usize; 3])],
    to_orig: &[usize],
) -> Contraction {
    let mut in_pair = BitSet::new(g.n());
    for (t1, t2) in pairs {
        let union: BTreeSet<usize> = t1.iter().chain(t2.iter()).copied().collect();
        assert_eq!(union.len(), 4, "a far pair spans exactly four vertices");
        for v in union {
            assert!(!in_pair.contains(v), "distinct far pairs must be disjoint");
            in_pair.insert(v);
        }
    }
    let survivors: Vec<usize> = (0..g.n()).filter(|&v| !in_pair.contains(v)).collect();
    let mut old_to_new = vec![usize::MAX; g.n()];
    for (new, &old) in survivors.iter().enumerate() {
        old_to_new[old] = new;
    }
    let n_new = survivors.len() + pairs.len();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|e| !in_pair.contains(e.u) && !in_pair.contains(e.v))
        .map(|e| (old_to_new[e.u], old_to_new[e.v]))
        .collect();

    let mut lifts = Vec::new();
    let mut pair_vertex = Vec::new();
    let privates: Vec<(usize, usize)> = pairs
        .iter()
        .map(|(t1, t2)| {
            let p1 = *t1.iter().find(|v| !t2.contains(v)).unwrap();
            let p2 = *t2.iter().find(|v| !t1.contains(v)).unwrap();
            (p1, p2)
        })
        .collect();
    for (idx, ((t1, t2), &(p1, p2))) in pairs.iter().zip(&privates).enumerate() {
        let u = survivors.len() + idx;
        pair_vertex.push(u);
        lifts.push(PairLift {
            t1_orig: t1.map(|v| to_orig[v]),
            t2_orig: t2.map(|v| to_orig[v]),
            priv1_orig: to_orig[p1],
            priv2_orig: to_orig[p2],
        });
        // neighbors of the private vertices among survivors
        let mut nb = g.neighbors(p1).clone();
        nb.union_with(g.neighbors(p2));
        for w in nb.iter() {
            if !in_pair.contains(w) {
                edges.push((u, old_to_new[w]));
            }
        }
        // adjacency to later pair vertices through private-private edges
        for (jdx, &(q1, q2)) in privates.iter().enumerate().skip(idx + 1) {
            let joined = g.has_edge(p1, q1)
                || g.has_edge(p1, q2)
                || g.has_edge(p2, q1)
                || g.has_edge(p2, q2);
            if joined {
                edges.push((u, survivors.len() + jdx));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let graph = Graph::from_edges(n_new, edges).expect("contraction emits a valid graph");
    let survivor_map: Vec<usize> = survivors
        .iter()
        .map(|&old| to_orig[old])
        .chain(std::iter::repeat_n(usize::MAX, pairs.len()))
        .collect();
    Contraction {
        graph,
        survivor_map,
        pair_vertex,
        lifts,
    }
}

/// Strong triadic closure on graphs of maximum degree at most 4,
/// parameterized above the maximum matching.
pub fn solve_stc_maxdeg4(g: &Graph, k: usize, budget: u64) -> Result<SolveReport> {
    const ALG: &str = "stc-deg4";
    if g.max_degree() > 4 {
        return Err(Error::UnsupportedInput(format!(
            "maximum degree {} exceeds 4",
            g.max_degree()
        )));
    }
    let f = Pattern::p3();
    if k > g.m() {
        return Ok(SolveReport::no(ALG).with_trace(format!("k={k} exceeds m={}", g.m())));
    }
    let mu = max_matching(g);
    if mu.len() >= k {
        let witness: EdgeSet = mu.edges().iter().take(k).copied().collect();
        return Ok(SolveReport::yes(ALG, witness).with_trace("matching already reaches k"));
    }
    let r = k - mu.len();

    let core = stc_greedy_core(g);
    let (rest, rest_map) = g.remove_vertices(&core.x);
    let m_rest = max_matching(&rest).edges().relabeled(&rest_map);
    let h0 = core.a.union(&m_rest);
    if h0.len() >= k {
        assert!(satisfies_closure(g, &h0, &f));
        return Ok(SolveReport::yes(ALG, h0).with_trace(format!(
            "greedy core: {} K4s, {} triangles",
            core.k4_steps, core.triangle_steps
        )));
    }
    // From the core accounting: if the early yes did not fire then
    // 2p + q < r, the core is small, and its neighborhood is small.
    assert!(2 * core.k4_steps + core.triangle_steps < r);
    assert!(core.x.len() < 4 * r, "|X| must stay below 4r");
    for v in core.x.iter() {
        assert!(
            g.neighbors(v).intersection_count(&core.x) >= 2,
            "core vertex {v} lacks two core neighbors"
        );
    }
    let mut nx = BitSet::new(g.n());
    for v in core.x.iter() {
        nx.union_with(g.neighbors(v));
    }
    nx.difference_with(&core.x);
    assert!(nx.len() <= 8 * r, "|N(X)| must stay within 8r");

    let near = classify_triangles(g, &core.x).near;
    assert!(
        near.len() <= 16 * r,
        "near triangle count must stay within 16r"
    );

    // Branch over the sets of near triangles included in the solution
    // (pairwise disjoint), then reduce and finish each branch.
    let mut nodes = 0u64;
    let mut chosen: Vec<usize> = Vec::new();
    let out = branch_near(g, &core.x, &near, 0, &mut chosen, k, &f, budget, &mut nodes);
    let mut report = match out {
        BranchOutcome::Yes(witness) => {
            assert!(witness.len() >= k);
            assert!(satisfies_closure(g, &witness, &f));
            SolveReport::yes(ALG, witness)
        }
        BranchOutcome::No => SolveReport::no(ALG),
        BranchOutcome::Budget => {
            SolveReport::inconclusive(ALG).with_trace(format!("budget {budget} exhausted"))
        }
    };
    report.stats.nodes = nodes;
    report.trace.push(format!(
        "core |X|={}, {} near triangles, r={r}",
        core.x.len(),
        near.len()
    ));
    Ok(report)
}

enum BranchOutcome {
    Yes(EdgeSet),
    No,
    Budget,
}

#[allow(clippy::too_many_arguments)]
fn branch_near(
    g: &Graph,
    x: &BitSet,
    near: &[[usize; 3]],
    idx: usize,
    chosen: &mut Vec<usize>,
    k: usize,
    f: &Pattern,
    budget: u64,
    nodes: &mut u64,
) -> BranchOutcome {
    if idx == near.len() {
        let picked: Vec<[usize; 3]> = chosen.iter().map(|&i| near[i]).collect();
        return finish_branch(g, x, &picked, k, f, budget, nodes);
    }
    // skip triangle idx
    match branch_near(g, x, near, idx + 1, chosen, k, f, budget, nodes) {
        BranchOutcome::No => {}
        out => return out,
    }
    // take triangle idx if disjoint from the current choice
    let t = near[idx];
    let disjoint = chosen
        .iter()
        .all(|&j| near[j].iter().all(|v| !t.contains(v)));
    if disjoint {
        chosen.push(idx);
        let out = branch_near(g, x, near, idx + 1, chosen, k, f, budget, nodes);
        chosen.pop();
        match out {
            BranchOutcome::No => {}
            out => return out,
        }
    }
    BranchOutcome::No
}

/// One branch: delete the chosen near triangles, force in the isolated and
/// near-partnered far triangles, contract far pairs, then enumerate strong
/// sets incident to X and finish with a maximum matching.
#[allow(clippy::too_many_arguments)]
fn finish_branch(
    g: &Graph,
    x: &BitSet,
    picked_near: &[[usize; 3]],
    k: usize,
    f: &Pattern,
    budget: u64,
    nodes: &mut u64,
) -> BranchOutcome {
    *nodes += 1;
    if *nodes > budget {
        return BranchOutcome::Budget;
    }
    let mut cur = g.clone();
    let mut to_orig: Vec<usize> = (0..g.n()).collect();
    let mut included: Vec<[usize; 3]> = Vec::new(); // original ids
    let mut k_left = k as i64;

    // delete the chosen near triangles
    {
        let mut del = BitSet::new(cur.n());
        for t in picked_near {
            included.push(*t);
            for &v in t {
                del.insert(v);
            }
        }
        k_left -= 3 * picked_near.len() as i64;
        let (next, step) = cur.remove_vertices(&del);
        to_orig = step.into_iter().map(|m| to_orig[m]).collect();
        cur = next;
    }

    // isolated far triangles are in every triangle-maximal regular solution;
    // far triangles partnered with a (non-chosen) near triangle likewise,
    // since the sought solution avoids near triangles
    for stage in 0..2 {
        let x_cur = remap_set(x, &to_orig, cur.n());
        let inv = classify_triangles(&cur, &x_cur);
        let forced = if stage == 0 {
            inv.isolated_far
        } else {
            inv.far_with_near_partner
        };
        if forced.is_empty() {
            continue;
        }
        let mut del = BitSet::new(cur.n());
        for t in &forced {
            included.push(t.map(|v| to_orig[v]));
            for &v in t {
                del.insert(v);
            }
        }
        k_left -= 3 * forced.len() as i64;
        let (next, step) = cur.remove_vertices(&del);
        to_orig = step.into_iter().map(|m| to_orig[m]).collect();
        cur = next;
    }

    // contract the remaining far pairs
    let x_cur = remap_set(x, &to_orig, cur.n());
    let pairs = classify_triangles(&cur, &x_cur).far_pairs;
    k_left -= 3 * pairs.len() as i64;
    let contraction = contract_far_pairs(&cur, &pairs, &to_orig);
    let ghat = &contraction.graph;
    let x_hat: BitSet = BitSet::from_iter(
        ghat.n(),
        (0..ghat.n()).filter(|&v| {
            contraction.survivor_map[v] != usize::MAX && x.contains(contraction.survivor_map[v])
        }),
    );
    // pair vertices are far from X, hence never adjacent to it
    for &u in &contraction.pair_vertex {
        assert_eq!(ghat.neighbors(u).intersection_count(&x_hat), 0);
    }

    let k_hat = k_left.max(0) as usize;
    // enumerate strong sets over the edges incident to X
    let cands: Vec<Edge> = ghat
        .edges()
        .iter()
        .filter(|e| x_hat.contains(e.u) || x_hat.contains(e.v))
        .copied()
        .collect();
    let mut s: Vec<Edge> = Vec::new();
    enumerate_s(
        g,
        ghat,
        &x_hat,
        &cands,
        0,
        &mut s,
        k_hat,
        &contraction,
        &included,
        k,
        f,
        budget,
        nodes,
    )
}

fn remap_set(orig_set: &BitSet, to_orig: &[usize], n_cur: usize) -> BitSet {
    BitSet::from_iter(n_cur, (0..n_cur).filter(|&v| orig_set.contains(to_orig[v])))
}

#[allow(clippy::too_many_arguments)]
fn enumerate_s(
    g: &Graph,
    ghat: &Graph,
    x_hat: &BitSet,
    cands: &[Edge],
    idx: usize,
    s: &mut Vec<Edge>,
    k_hat: usize,
    contraction: &Contraction,
    included: &[[usize; 3]],
    k: usize,
    f: &Pattern,
    budget: u64,
    nodes: &mut u64,
) -> BranchOutcome {
    *nodes += 1;
    if *nodes > budget {
        return BranchOutcome::Budget;
    }
    if idx == cands.len() {
        return evaluate_s(g, ghat, x_hat, s, k_hat, contraction, included, k, f);
    }
    // exclude first: matching-only solutions sit at the first leaf
    match enumerate_s(
        g,
        ghat,
        x_hat,
        cands,
        idx + 1,
        s,
        k_hat,
        contraction,
        included,
        k,
        f,
        budget,
        nodes,
    ) {
        BranchOutcome::No => {}
        out => return out,
    }
    let e = cands[idx];
    if s.len() < k_hat && p3_compatible(ghat, s, e) {
        s.push(e);
        let out = enumerate_s(
            g,
            ghat,
            x_hat,
            cands,
            idx + 1,
            s,
            k_hat,
            contraction,
            included,
            k,
            f,
            budget,
            nodes,
        );
        s.pop();
        match out {
            BranchOutcome::No => {}
            out => return out,
        }
    }
    BranchOutcome::No
}

/// Adding `e` to the strong set `s` must not build a strong P3 whose closing
/// edge is missing from the graph.
fn p3_compatible(ghat: &Graph, s: &[Edge], e: Edge) -> bool {
    for &o in s {
        let shared = if o.touches(e.u) {
            Some((e.u, o.other(e.u), e.v))
        } else if o.touches(e.v) {
            Some((e.v, o.other(e.v), e.u))
        } else {
            None
        };
        if let Some((_, a, b)) = shared {
            if a != b && !ghat.has_edge(a, b) {
                return false;
            }
        }
    }
    true
}

#[allow(clippy::too_many_arguments)]
fn evaluate_s(
    g: &Graph,
    ghat: &Graph,
    x_hat: &BitSet,
    s: &[Edge],
    k_hat: usize,
    contraction: &Contraction,
    included: &[[usize; 3]],
    k: usize,
    f: &Pattern,
) -> BranchOutcome {
    // Rule: drop R-edges that would close a strong P3 through X with a
    // non-edge, then take a maximum matching of what is left.
    let s_set: EdgeSet = s.iter().copied().collect();
    let r_edges: Vec<(usize, usize)> = ghat
        .edges()
        .iter()
        .filter(|e| !x_hat.contains(e.u) && !x_hat.contains(e.v))
        .filter(|e| {
            for z in x_hat.iter() {
                if s_set.contains_pair(e.u.min(z), e.u.max(z)) && !ghat.has_edge(e.v, z) {
                    return false;
                }
                if s_set.contains_pair(e.v.min(z), e.v.max(z)) && !ghat.has_edge(e.u, z) {
                    return false;
                }
            }
            true
        })
        .map(|e| (e.u, e.v))
        .collect();
    let r_graph = Graph::from_edges(ghat.n(), r_edges).expect("subset of ghat");
    let matching = max_matching(&r_graph);
    if s.len() + matching.len() < k_hat {
        return BranchOutcome::No;
    }
    let hhat: EdgeSet = s_set.union(matching.edges());
    debug_assert!(satisfies_closure(ghat, &hhat, f));

    // Lift back to the original graph.
    let mut witness = EdgeSet::new();
    let insert_triangle = |w: &mut EdgeSet, t: [usize; 3]| {
        w.insert(Edge::new(t[0], t[1]));
        w.insert(Edge::new(t[0], t[2]));
        w.insert(Edge::new(t[1], t[2]));
    };
    for t in included {
        insert_triangle(&mut witness, *t);
    }
    let mut pair_touched = vec![false; contraction.lifts.len()];
    for e in hhat.iter() {
        let pu = contraction.pair_vertex.iter().position(|&p| p == e.u);
        let pv = contraction.pair_vertex.iter().position(|&p| p == e.v);
        match (pu, pv) {
            (None, None) => {
                witness.insert(Edge::new(
                    contraction.survivor_map[e.u],
                    contraction.survivor_map[e.v],
                ));
            }
            (Some(p), None) | (None, Some(p)) => {
                // one strong edge between a pair vertex and a survivor: lift
                // it through whichever private vertex carries the edge, and
                // take the other triangle of the pair whole
                let other = if pu.is_some() { e.v } else { e.u };
                assert!(!pair_touched[p], "pair vertex carries two strong edges");
                pair_touched[p] = true;
                let w_orig = contraction.survivor_map[other];
                let lift = &contraction.lifts[p];
                let (x_priv, other_tri) = if g.has_edge(lift.priv1_orig, w_orig) {
                    (lift.priv1_orig, lift.t2_orig)
                } else {
                    assert!(g.has_edge(lift.priv2_orig, w_orig));
                    (lift.priv2_orig, lift.t1_orig)
                };
                witness.insert(Edge::new(x_priv, w_orig));
                insert_triangle(&mut witness, other_tri);
            }
            (Some(p), Some(q)) => {
                let lp = &contraction.lifts[p];
                let lq = &contraction.lifts[q];
                let mut found = None;
                'outer: for &a in &[lp.priv1_orig, lp.priv2_orig] {
                    for &b in &[lq.priv1_orig, lq.priv2_orig] {
                        if g.has_edge(a, b) {
                            found = Some((a, b));
                            break 'outer;
                        }
                    }
                }
                let (a, b) = found.expect("pair-pair edge lifts through private vertices");
                witness.insert(Edge::new(a, b));
                let tp = if a == lp.priv1_orig {
                    lp.t2_orig
                } else {
                    lp.t1_orig
                };
                let tq = if b == lq.priv1_orig {
                    lq.t2_orig
                } else {
                    lq.t1_orig
                };
                insert_triangle(&mut witness, tp);
                insert_triangle(&mut witness, tq);
                assert!(!pair_touched[p] && !pair_touched[q]);
                pair_touched[p] = true;
                pair_touched[q] = true;
            }
        }
    }
    // pairs untouched by the solution contribute their first triangle
    for (p, lift) in contraction.lifts.iter().enumerate() {
        if !pair_touched[p] {
            insert_triangle(&mut witness, lift.t1_orig);
        }
    }
    if witness.len() < k {
        // Accounting should make this impossible; fail loudly if not.
        panic!(
            "lifted witness has {} edges, expected at least {k}",
            witness.len()
        );
    }
    BranchOutcome::Yes(witness)
}

// ---------------------------------------------------------------------------
// Strong K_{1,t}-closure above the matching (star patterns)
// ---------------------------------------------------------------------------

/// Core construction for the star algorithm.
#[derive(Clone, Debug)]
pub struct StarCore {
    pub x: BitSet,
    pub a: EdgeSet,
    pub applications: usize,
}

/// Strong K_{1,t}-closure for t >= 3, parameterized above the matching.
pub fn solve_star_above_matching(
    g: &Graph,
    t: usize,
    k: usize,
    budget: u64,
) -> Result<SolveReport> {
    const ALG: &str = "star-above-matching";
    if t < 3 {
        return Err(Error::UnsupportedInput(format!(
            "star parameter t={t} must be at least 3"
        )));
    }
    let f = Pattern::new(Graph::star(t))?;
    if k > g.m() {
        return Ok(SolveReport::no(ALG).with_trace(format!("k={k} exceeds m={}", g.m())));
    }
    if k < t {
        let witness: EdgeSet = g.edges().iter().take(k).copied().collect();
        return Ok(SolveReport::yes(ALG, witness)
            .with_trace(format!("k={k} below |E(F)|={t}: any k edges work")));
    }
    let mu = max_matching(g);
    if mu.len() >= k {
        let witness: EdgeSet = mu.edges().iter().take(k).copied().collect();
        return Ok(SolveReport::yes(ALG, witness).with_trace("matching already reaches k"));
    }
    let r = k - mu.len();

    // Greedy core, recomputing the matching after every application: absorb
    // an uncovered vertex next to a matched edge, or two matched edges whose
    // four endpoints do not induce 2K2.
    let mut x = BitSet::new(g.n());
    let mut a = EdgeSet::new();
    let mut applications = 0usize;
    let m_final: EdgeSet;
    loop {
        let (rest, map) = g.remove_vertices(&x);
        let m = max_matching(&rest);
        let m_orig = m.edges().relabeled(&map);
        if a.len() + m.len() >= k {
            let witness = a.union(&m_orig);
            assert!(satisfies_closure(g, &witness, &f));
            return Ok(SolveReport::yes(ALG, witness).with_trace(format!(
                "greedy core reached k after {applications} applications"
            )));
        }
        if let Some(triple) = star_step1(&rest, &m) {
            absorb(g, &map, &triple, &mut x, &mut a);
            applications += 1;
            continue;
        }
        if let Some(quad) = star_step2(&rest, &m) {
            absorb(g, &map, &quad, &mut x, &mut a);
            applications += 1;
            continue;
        }
        m_final = m_orig;
        break;
    }
    assert!(
        applications < r,
        "r or more applications force an early yes"
    );
    assert!(x.len() < 4 * r);
    // the residual matching is induced in g
    let m_edges: Vec<Edge> = m_final.to_vec();
    for (i, &e1) in m_edges.iter().enumerate() {
        for &e2 in &m_edges[i + 1..] {
            for (p, q) in [(e1.u, e2.u), (e1.u, e2.v), (e1.v, e2.u), (e1.v, e2.v)] {
                assert!(!g.has_edge(p, q), "residual matching must be induced");
            }
        }
    }

    // Rule: delete one edge from any oversized class of matching edges with
    // identical neighborhoods in X, decreasing k.
    let threshold = (2 * t - 2) * 4 * r + 1;
    let reduction = rule7_reduce(g, m_edges, &x, threshold);
    let cur = &reduction.graph;
    let cur_k = k - reduction.deleted.len();

    // Final stage: enumerate strong edges incident to X (inside X freely,
    // X->rest capped at 2t-2 per X-vertex), then add matching edges greedily.
    let cands: Vec<Edge> = cur
        .edges()
        .iter()
        .filter(|e| x.contains(e.u) || x.contains(e.v))
        .copied()
        .collect();
    let mut nodes = 0u64;
    let mut s: Vec<Edge> = Vec::new();
    let out = star_enumerate(
        cur,
        &x,
        t,
        &cands,
        0,
        &mut s,
        cur_k,
        &reduction.m_edges,
        budget,
        &mut nodes,
    );
    let mut report = match out {
        BranchOutcome::Yes(reduced_witness) => {
            let witness = lift_rule7(g, &reduction, reduced_witness, &x);
            assert!(witness.len() >= k);
            assert!(satisfies_closure(g, &witness, &f));
            SolveReport::yes(ALG, witness)
        }
        BranchOutcome::No => SolveReport::no(ALG),
        BranchOutcome::Budget => {
            SolveReport::inconclusive(ALG).with_trace(format!("budget {budget} exhausted"))
        }
    };
    report.stats.nodes = nodes;
    report.stats.rules_fired = reduction.deleted.len() as u64;
    report.trace.push(format!(
        "core |X|={}, {} applications, {} residual matching edges, {} rule deletions, r={r}",
        x.len(),
        applications,
        reduction.m_edges.len(),
        reduction.deleted.len()
    ));
    Ok(report)
}

fn absorb(g: &Graph, map: &[usize], verts: &[usize], x: &mut BitSet, a: &mut EdgeSet) {
    let orig: Vec<usize> = verts.iter().map(|&v| map[v]).collect();
    for &v in &orig {
        x.insert(v);
    }
    for (i, &u) in orig.iter().enumerate() {
        for &v in &orig[i + 1..] {
            if g.has_edge(u, v) {
                a.insert(Edge::new(u, v));
            }
        }
    }
}

/// Uncovered vertex adjacent to a matched edge; returns [v, x, y] in the
/// current (post-deletion) ids.
fn star_step1(rest: &Graph, m: &crate::graph::Matching) -> Option<Vec<usize>> {
    for v in 0..rest.n() {
        if m.covers(v) {
            continue;
        }
        for e in m.edges().iter() {
            if rest.has_edge(v, e.u) || rest.has_edge(v, e.v) {
                return Some(vec![v, e.u, e.v]);
            }
        }
    }
    None
}

/// Two matched edges whose endpoints do not induce 2K2 (some cross edge).
fn star_step2(rest: &Graph, m: &crate::graph::Matching) -> Option<Vec<usize>> {
    let edges: Vec<Edge> = m.edges().to_vec();
    for (i, &e1) in edges.iter().enumerate() {
        for &e2 in &edges[i + 1..] {
            let cross = rest.has_edge(e1.u, e2.u)
                || rest.has_edge(e1.u, e2.v)
                || rest.has_edge(e1.v, e2.u)
                || rest.has_edge(e1.v, e2.v);
            if cross {
                return Some(vec![e1.u, e1.v, e2.u, e2.v]);
            }
        }
    }
    None
}

struct Rule7Reduction {
    graph: Graph,
    /// Residual matching edges surviving the reduction.
    m_edges: Vec<Edge>,
    /// Deleted edges with their class keys, in deletion order.
    deleted: Vec<(Edge, ClassKey)>,
}

type ClassKey = (Vec<usize>, Vec<usize>);

fn class_key(g: &Graph, x: &BitSet, e: Edge) -> ClassKey {
    let nu: Vec<usize> = g.neighbors(e.u).iter().filter(|v| x.contains(*v)).collect();
    let nv: Vec<usize> = g.neighbors(e.v).iter().filter(|v| x.contains(*v)).collect();
    if nu <= nv {
        (nu, nv)
    } else {
        (nv, nu)
    }
}

fn rule7_reduce(g: &Graph, m_edges: Vec<Edge>, x: &BitSet, threshold: usize) -> Rule7Reduction {
    let mut graph = g.clone();
    let mut m_edges = m_edges;
    let mut deleted = Vec::new();
    loop {
        let mut classes: std::collections::BTreeMap<ClassKey, Vec<Edge>> =
            std::collections::BTreeMap::new();
        for &e in &m_edges {
            classes.entry(class_key(&graph, x, e)).or_default().push(e);
        }
        let oversized = classes.into_iter().find(|(_, v)| v.len() >= threshold);
        let Some((key, edges)) = oversized else {
            break;
        };
        let victim = *edges.last().unwrap();
        graph = graph.without_edge(victim);
        m_edges.retain(|&e| e != victim);
        deleted.push((victim, key));
    }
    Rule7Reduction {
        graph,
        m_edges,
        deleted,
    }
}

/// Re-inserts one deleted matching edge per reduction step: by the class
/// counting, some class mate has both endpoints free of strong edges, and an
/// edge between two strong-degree-0 endpoints can never complete a star.
fn lift_rule7(g: &Graph, reduction: &Rule7Reduction, mut witness: EdgeSet, x: &BitSet) -> EdgeSet {
    for (deleted_edge, key) in reduction.deleted.iter().rev() {
        let covered = witness.covered(g.n());
        // candidates: same-class edges still in g, unused, endpoints free
        let candidate = g
            .edges()
            .iter()
            .filter(|e| !witness.contains(e))
            .filter(|e| !covered.contains(e.u) && !covered.contains(e.v))
            .find(|e| class_key(g, x, **e) == *key || **e == *deleted_edge);
        let e = candidate.unwrap_or_else(|| {
            panic!("no class mate available to lift deleted edge {deleted_edge:?}")
        });
        witness.insert(*e);
    }
    witness
}

#[allow(clippy::too_many_arguments)]
fn star_enumerate(
    cur: &Graph,
    x: &BitSet,
    t: usize,
    cands: &[Edge],
    idx: usize,
    s: &mut Vec<Edge>,
    k_cur: usize,
    m_edges: &[Edge],
    budget: u64,
    nodes: &mut u64,
) -> BranchOutcome {
    *nodes += 1;
    if *nodes > budget {
        return BranchOutcome::Budget;
    }
    if idx == cands.len() {
        return star_evaluate(cur, t, s, k_cur, m_edges);
    }
    match star_enumerate(cur, x, t, cands, idx + 1, s, k_cur, m_edges, budget, nodes) {
        BranchOutcome::No => {}
        out => return out,
    }
    let e = cands[idx];
    if s.len() < k_cur && star_cap_ok(cur, x, t, s, e) && star_compatible(cur, t, s, e) {
        s.push(e);
        let out = star_enumerate(cur, x, t, cands, idx + 1, s, k_cur, m_edges, budget, nodes);
        s.pop();
        match out {
            BranchOutcome::No => {}
            out => return out,
        }
    }
    BranchOutcome::No
}

/// Every X-vertex may keep at most 2t-2 strong edges into the rest of the
/// graph; more would assemble a strong induced star.
fn star_cap_ok(_cur: &Graph, x: &BitSet, t: usize, s: &[Edge], e: Edge) -> bool {
    let cap = 2 * t - 2;
    for v in [e.u, e.v] {
        if x.contains(v) {
            let other = e.other(v);
            if !x.contains(other) {
                let out_deg = s
                    .iter()
                    .filter(|o| o.touches(v) && !x.contains(o.other(v)))
                    .count();
                if out_deg + 1 > cap {
                    return false;
                }
            }
        }
    }
    true
}

/// Adding `e` must not complete an induced K_{1,t} among the strong edges
/// that is also induced in the graph.
fn star_compatible(cur: &Graph, t: usize, s: &[Edge], e: Edge) -> bool {
    for center in [e.u, e.v] {
        let mut leaves: Vec<usize> = s
            .iter()
            .filter(|o| o.touches(center))
            .map(|o| o.other(center))
            .collect();
        leaves.push(e.other(center));
        leaves.sort_unstable();
        leaves.dedup();
        if has_independent_t_subset(cur, &leaves, t, e.other(center)) {
            return false;
        }
    }
    true
}

/// Is there a t-subset of `leaves`, containing `must`, pairwise non-adjacent
/// in `cur`? Small exhaustive search; leaf lists stay tiny.
fn has_independent_t_subset(cur: &Graph, leaves: &[usize], t: usize, must: usize) -> bool {
    if leaves.len() < t {
        return false;
    }
    let rest: Vec<usize> = leaves.iter().copied().filter(|&v| v != must).collect();
    let mut chosen = vec![must];
    fn rec(cur: &Graph, rest: &[usize], from: usize, chosen: &mut Vec<usize>, t: usize) -> bool {
        if chosen.len() == t {
            return true;
        }
        for i in from..rest.len() {
            let v = rest[i];
            if chosen.iter().all(|&u| !cur.has_edge(u, v)) {
                chosen.push(v);
                if rec(cur, rest, i + 1, chosen, t) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    rec(cur, &rest, 0, &mut chosen, t)
}

fn star_evaluate(
    cur: &Graph,
    t: usize,
    s: &[Edge],
    k_cur: usize,
    m_edges: &[Edge],
) -> BranchOutcome {
    // Matching edges are addable independently: a new star must be centered
    // at one of the edge's endpoints, and no other matching edge can touch
    // those endpoints.
    let mut witness: EdgeSet = s.iter().copied().collect();
    let mut count = s.len();
    for &e in m_edges {
        if star_compatible(cur, t, s, e) {
            witness.insert(e);
            count += 1;
        }
    }
    if count >= k_cur {
        BranchOutcome::Yes(witness)
    } else {
        BranchOutcome::No
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::oracle::{solve_exact, DEFAULT_NODE_BUDGET};
    use crate::report::Decision;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const B: u64 = DEFAULT_NODE_BUDGET;

    #[test]
    fn stc_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(
            solve_stc_maxdeg4(&c5, 2, B).unwrap().decision,
            Decision::Yes
        );
        assert_eq!(solve_stc_maxdeg4(&c5, 3, B).unwrap().decision, Decision::No);
        let k4 = Graph::complete(4);
        assert_eq!(
            solve_stc_maxdeg4(&k4, 6, B).unwrap().decision,
            Decision::Yes
        );
        let pet = Graph::petersen();
        assert_eq!(
            solve_stc_maxdeg4(&pet, 5, B).unwrap().decision,
            Decision::Yes
        );
        assert_eq!(
            solve_stc_maxdeg4(&pet, 6, B).unwrap().decision,
            Decision::No
        );
        assert!(solve_stc_maxdeg4(&Graph::star(5), 1, B).is_err());
    }

    #[test]
    fn greedy_core_is_closure_sound() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xC04E);
        let f = Pattern::p3();
        for trial in 0..60 {
            let n = 6 + trial % 5;
            let m = (n * 3 / 2).min(n * 4 / 2);
            let Ok(g) = gen::max_deg(n, 4, m, rng.gen()) else {
                continue;
            };
            let core = stc_greedy_core(&g);
            let (rest, map) = g.remove_vertices(&core.x);
            let m_rest = max_matching(&rest).edges().relabeled(&map);
            let h = core.a.union(&m_rest);
            assert!(
                satisfies_closure(&g, &h, &f),
                "core union broke closure on {g:?}"
            );
            // triangles of G-X carry no matching edge and are fully covered
            let m_inner = max_matching(&rest);
            for tri in triangles_outside(&rest, &BitSet::new(rest.n())) {
                for (i, &u) in tri.iter().enumerate() {
                    assert!(m_inner.covers(u));
                    for &v in &tri[i + 1..] {
                        assert!(!m_inner.edges().contains_pair(u, v));
                    }
                }
            }
        }
    }

    /// Diamond with a pendant at each vertex: survives the greedy core and
    /// produces exactly one far pair.
    fn diamond_with_pendants() -> Graph {
        Graph::from_edges(
            8,
            [
                (0, 1),
                (0, 2),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (1, 5),
                (2, 6),
                (3, 7),
            ],
        )
        .unwrap()
    }

    #[test]
    fn far_pair_contraction_preserves_oracle_decision() {
        let f = Pattern::p3();
        let mut rng = ChaCha8Rng::seed_from_u64(0x9A16);
        let mut tested = 0;
        for trial in 0..120 {
            if tested >= 100 {
                break;
            }
            let base = diamond_with_pendants();
            // triangle-free filler keeps the pair the only triangles
            let filler = Graph::path(2 + trial % 4);
            let g = base.disjoint_union(&filler);
            let core = stc_greedy_core(&g);
            assert!(core.x.is_empty(), "core must stay empty on {g:?}");
            let inv = classify_triangles(&g, &core.x);
            assert_eq!(inv.far_pairs.len(), 1);
            assert!(inv.near.is_empty() && inv.isolated_far.is_empty());
            let to_orig: Vec<usize> = (0..g.n()).collect();
            let contraction = contract_far_pairs(&g, &inv.far_pairs, &to_orig);
            let k = 3 + (rng.gen::<u64>() % 4) as usize;
            let want = solve_exact(&g, &f, k, B).decision;
            let got = solve_exact(&contraction.graph, &f, k.saturating_sub(3), B).decision;
            assert_eq!(want, got, "contraction changed the instance {g:?} k={k}");
            tested += 1;
        }
        assert!(tested >= 100);
    }

    #[test]
    fn stc_agrees_with_oracle_on_degree4_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x57C);
        let f = Pattern::p3();
        for trial in 0..40 {
            let n = 6 + trial % 4;
            let m = n + trial % 4;
            let Ok(g) = gen::max_deg_connected(n, 4, m, rng.gen()) else {
                continue;
            };
            let mu = matching_number(&g);
            for k in mu..=(mu + 3).min(g.m()) {
                let want = solve_exact(&g, &f, k, B).decision;
                let got = solve_stc_maxdeg4(&g, k, B).unwrap().decision;
                assert_eq!(want, got, "g={g:?} k={k}");
            }
        }
    }

    #[test]
    fn star_examples() {
        let s3 = Graph::star(3);
        assert_eq!(
            solve_star_above_matching(&s3, 3, 2, B).unwrap().decision,
            Decision::Yes
        );
        assert_eq!(
            solve_star_above_matching(&s3, 3, 3, B).unwrap().decision,
            Decision::No
        );
        let k4 = Graph::complete(4);
        assert_eq!(
            solve_star_above_matching(&k4, 3, 6, B).unwrap().decision,
            Decision::Yes
        );
        let s4 = Graph::star(4);
        assert_eq!(
            solve_star_above_matching(&s4, 3, 3, B).unwrap().decision,
            Decision::No
        );
        assert!(solve_star_above_matching(&s3, 2, 1, B).is_err());
    }

    #[test]
    fn star_agrees_with_oracle_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x57A6);
        for trial in 0..40 {
            let n = 5 + trial % 5;
            let g = gen::gnp(n, 0.35, rng.gen());
            let mu = matching_number(&g);
            let f = Pattern::star(3);
            for k in mu..=(mu + 3).min(g.m()) {
                let want = solve_exact(&g, &f, k, B).decision;
                let got = solve_star_above_matching(&g, 3, k, B).unwrap().decision;
                assert_eq!(want, got, "g={g:?} k={k}");
            }
        }
    }

    /// K4 bridged to two edge-sharing triangles, every outer vertex pendant-
    /// protected: the first triangle is near X, its partner is far, so the
    /// far-with-near-partner deletion rule fires inside the empty-choice
    /// branch and the near triangle drives the subset branching.
    #[test]
    fn near_branching_and_far_partner_rule() {
        let g = Graph::from_edges(
            12,
            [
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3), // K4
                (3, 4),
                (4, 5),
                (4, 6),
                (5, 6), // near triangle
                (5, 7),
                (6, 7), // far partner sharing edge 5-6
                (4, 8),
                (5, 9),
                (6, 10),
                (7, 11), // pendant protection
            ],
        )
        .unwrap();
        assert!(g.max_degree() <= 4);
        let core = stc_greedy_core(&g);
        assert_eq!(
            core.x.to_vec(),
            vec![0, 1, 2, 3],
            "only the K4 joins the core"
        );
        let inv = classify_triangles(&g, &core.x);
        assert_eq!(inv.near.len(), 1);
        assert_eq!(inv.far_with_near_partner.len(), 1);
        let f = Pattern::p3();
        let mu = matching_number(&g);
        for k in mu..=(mu + 3).min(g.m()) {
            let want = solve_exact(&g, &f, k, B).decision;
            let got = solve_stc_maxdeg4(&g, k, B).unwrap().decision;
            assert_eq!(want, got, "k={k}");
        }
    }

    #[test]
    fn rule7_fires_and_preserves_decisions_on_matching_classes() {
        // 17K2 with k = mu+1 = 18: one class of 17 identical matching edges,
        // threshold (2t-2)*4r+1 = 17 at t=3, r=1.
        let g = Graph::matching_graph(17);
        let f = Pattern::star(3);
        let k = 18;
        let r = k - 17;
        let x = BitSet::new(g.n());
        let m_edges: Vec<Edge> = g.edges().to_vec();
        let red = rule7_reduce(&g, m_edges, &x, (2 * 3 - 2) * 4 * r + 1);
        assert!(!red.deleted.is_empty(), "rule must fire on the big class");
        // each deletion preserves the oracle decision at k-1
        let mut cur = g.clone();
        let mut kk = k;
        for (e, _) in &red.deleted {
            let before = solve_exact(&cur, &f, kk, B).decision;
            cur = cur.without_edge(*e);
            kk -= 1;
            let after = solve_exact(&cur, &f, kk, B).decision;
            assert_eq!(before, after);
        }
        // and the full solver agrees with the oracle on the original
        assert_eq!(
            solve_star_above_matching(&g, 3, k, B).unwrap().decision,
            solve_exact(&g, &f, k, B).decision
        );
        assert_eq!(
            solve_star_above_matching(&g, 3, 17, B).unwrap().decision,
            Decision::Yes
        );
    }

    #[test]
    fn rule7_lift_restores_deleted_edges() {
        // Reduce 17K2 by one class edge, solve the reduced instance at its
        // own optimum, and lift: the exchange must re-insert an edge with
        // strong-free endpoints and keep the closure intact.
        let g = Graph::matching_graph(17);
        let f = Pattern::star(3);
        let x = BitSet::new(g.n());
        let red = rule7_reduce(&g, g.edges().to_vec(), &x, 17);
        assert_eq!(red.deleted.len(), 1);
        let reduced_witness: EdgeSet = red.graph.edges().iter().copied().collect();
        assert!(satisfies_closure(&red.graph, &reduced_witness, &f));
        let lifted = lift_rule7(&g, &red, reduced_witness, &x);
        assert_eq!(lifted.len(), 17);
        assert!(satisfies_closure(&g, &lifted, &f));
    }
}
