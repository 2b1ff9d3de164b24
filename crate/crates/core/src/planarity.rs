//! Planarity testing by incremental face embedding (Demoucron, Malgrange,
//! Pertuiset): a graph is planar iff each biconnected block is, and a block
//! is embedded face by face, always placing a fragment that fits in only one
//! face first.

use crate::bitset::BitSet;
use crate::graph::{Edge, Graph};
use std::collections::BTreeSet;

pub fn is_planar(g: &Graph) -> bool {
    biconnected_blocks(g)
        .iter()
        .all(|block| block_planar(block))
}

/// Edge sets of the biconnected blocks (Tarjan lowpoint DFS).
fn biconnected_blocks(g: &Graph) -> Vec<Vec<Edge>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        timer: usize,
        stack: Vec<Edge>,
        blocks: Vec<Vec<Edge>>,
    }
    fn dfs(s: &mut State, v: usize, parent: usize) {
        s.disc[v] = s.timer;
        s.low[v] = s.timer;
        s.timer += 1;
        for w in s.g.neighbors(v).to_vec() {
            if w == parent {
                continue;
            }
            if s.disc[w] == usize::MAX {
                s.stack.push(Edge::new(v, w));
                dfs(s, w, v);
                s.low[v] = s.low[v].min(s.low[w]);
                if s.low[w] >= s.disc[v] {
                    // v separates the subtree of w: pop its block
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == Edge::new(v, w) {
                            break;
                        }
                    }
                    s.blocks.push(block);
                }
            } else if s.disc[w] < s.disc[v] {
                s.stack.push(Edge::new(v, w));
                s.low[v] = s.low[v].min(s.disc[w]);
            }
        }
    }
    let mut s = State {
        g,
        disc: vec![usize::MAX; g.n()],
        low: vec![0; g.n()],
        timer: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for root in 0..g.n() {
        if s.disc[root] == usize::MAX {
            dfs(&mut s, root, usize::MAX);
            debug_assert!(s.stack.is_empty());
        }
    }
    s.blocks
}

fn block_planar(block: &[Edge]) -> bool {
    let verts: BTreeSet<usize> = block.iter().flat_map(|e| [e.u, e.v]).collect();
    let n = verts.len();
    let m = block.len();
    if n <= 4 || m <= 8 {
        // every graph on at most 4 vertices is planar; with m <= 8 a K5 or
        // K3,3 subdivision cannot exist (they need 9+ edges)
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    // relabel the block compactly
    let ids: Vec<usize> = verts.iter().copied().collect();
    let to_local: std::collections::HashMap<usize, usize> =
        ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let h = Graph::from_edges(n, block.iter().map(|e| (to_local[&e.u], to_local[&e.v])))
        .expect("block is a valid subgraph");
    dmp(&h)
}

/// Demoucron embedding of a biconnected graph.
fn dmp(g: &Graph) -> bool {
    let n = g.n();
    // initial cycle via DFS back edge
    let cycle = find_cycle(g).expect("biconnected block with >4 vertices has a cycle");
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.clone()];
    let mut embedded_v = BitSet::from_iter(n, cycle.iter().copied());
    let mut embedded_e: BTreeSet<Edge> = cycle
        .iter()
        .zip(cycle.iter().cycle().skip(1))
        .take(cycle.len())
        .map(|(&a, &b)| Edge::new(a, b))
        .collect();

    while embedded_e.len() < g.m() {
        // fragments: chords between embedded vertices, and components of the
        // non-embedded vertices with their attachment edges
        let mut fragments: Vec<(Vec<usize>, Vec<usize>)> = Vec::new(); // (attachments, interior component)
        for e in g.edges() {
            if embedded_e.contains(e) {
                continue;
            }
            if embedded_v.contains(e.u) && embedded_v.contains(e.v) {
                fragments.push((vec![e.u, e.v], vec![]));
            }
        }
        let mut seen = embedded_v.clone();
        for s in 0..n {
            if seen.contains(s) {
                continue;
            }
            // flood one non-embedded component
            let mut comp = vec![s];
            let mut stack = vec![s];
            seen.insert(s);
            while let Some(v) = stack.pop() {
                for w in g.neighbors(v).iter() {
                    if !seen.contains(w) && !embedded_v.contains(w) {
                        seen.insert(w);
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            let mut attach: BTreeSet<usize> = BTreeSet::new();
            for &v in &comp {
                for w in g.neighbors(v).iter() {
                    if embedded_v.contains(w) {
                        attach.insert(w);
                    }
                }
            }
            fragments.push((attach.into_iter().collect(), comp));
        }
        if fragments.is_empty() {
            return true; // nothing left but already-embedded edges
        }
        // admissible faces per fragment
        let admissible: Vec<Vec<usize>> = fragments
            .iter()
            .map(|(attach, _)| {
                faces
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| attach.iter().all(|a| f.contains(a)))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        if admissible.iter().any(|a| a.is_empty()) {
            return false;
        }
        let pick = admissible.iter().position(|a| a.len() == 1).unwrap_or(0);
        let face_idx = admissible[pick][0];
        let (attach, comp) = &fragments[pick];
        // an alpha-path between two attachments through the fragment
        let path = alpha_path(g, attach, comp);
        embed_path(&mut faces, face_idx, &path);
        for w in &path {
            embedded_v.insert(*w);
        }
        for (a, b) in path.iter().zip(path.iter().skip(1)) {
            embedded_e.insert(Edge::new(*a, *b));
        }
    }
    true
}

fn find_cycle(g: &Graph) -> Option<Vec<usize>> {
    fn dfs(
        g: &Graph,
        v: usize,
        p: usize,
        parent: &mut [usize],
        seen: &mut BitSet,
    ) -> Option<Vec<usize>> {
        seen.insert(v);
        parent[v] = p;
        for w in g.neighbors(v).iter() {
            if w == p {
                continue;
            }
            if seen.contains(w) {
                // back edge v->w: walk parents from v to w
                let mut cyc = vec![v];
                let mut cur = v;
                while cur != w {
                    cur = parent[cur];
                    cyc.push(cur);
                }
                return Some(cyc);
            }
            if let Some(c) = dfs(g, w, v, parent, seen) {
                return Some(c);
            }
        }
        None
    }
    let mut parent = vec![usize::MAX; g.n()];
    let mut seen = BitSet::new(g.n());
    for root in 0..g.n() {
        if !seen.contains(root) {
            if let Some(c) = dfs(g, root, usize::MAX, &mut parent, &mut seen) {
                return Some(c);
            }
        }
    }
    None
}

/// Path between two distinct attachment vertices whose interior lies in the
/// fragment's component.
fn alpha_path(g: &Graph, attach: &[usize], comp: &[usize]) -> Vec<usize> {
    assert!(
        attach.len() >= 2,
        "a fragment of a biconnected graph has 2+ attachments"
    );
    if comp.is_empty() {
        return vec![attach[0], attach[1]];
    }
    let inside: BTreeSet<usize> = comp.iter().copied().collect();
    let start = attach[0];
    // BFS from start through interior vertices to another attachment
    let mut prev: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    let mut queue = std::collections::VecDeque::new();
    for w in g.neighbors(start).iter() {
        if inside.contains(&w) && !prev.contains_key(&w) {
            prev.insert(w, start);
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for w in g.neighbors(v).iter() {
            if w != start && attach.contains(&w) {
                // reconstruct
                let mut path = vec![w, v];
                let mut cur = v;
                while cur != start {
                    cur = prev[&cur];
                    path.push(cur);
                }
                path.reverse();
                return path;
            }
            if inside.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment must connect two attachments")
}

fn embed_path(faces: &mut Vec<Vec<usize>>, face_idx: usize, path: &[usize]) {
    let face = faces.swap_remove(face_idx);
    let a = path[0];
    let b = *path.last().unwrap();
    let mut i = face.iter().position(|&v| v == a).unwrap();
    let mut j = face.iter().position(|&v| v == b).unwrap();
    let mut path = path.to_vec();
    if i > j {
        std::mem::swap(&mut i, &mut j);
        path.reverse();
    }
    let interior: Vec<usize> = path[1..path.len() - 1].to_vec();
    // first face: a .. b along the face, then the path walked back
    let mut f1: Vec<usize> = face[i..=j].to_vec();
    f1.extend(interior.iter().rev());
    // second face: b .. end, start .. a, then the path forward
    let mut f2: Vec<usize> = face[j..].to_vec();
    f2.extend(&face[..=i]);
    f2.dedup();
    if f2.first() == f2.last() && f2.len() > 1 {
        f2.pop();
    }
    f2.extend(interior.iter());
    faces.push(f1);
    faces.push(f2);
}
