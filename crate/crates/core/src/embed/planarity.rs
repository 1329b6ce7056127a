//! Planarity testing by path addition, with Kuratowski certificates.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::Embedding;
use crate::error::invalid;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// Edge set of a subdivision of K5 or K3,3 contained in the input graph.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct KuratowskiCertificate {
    pub kind: KuratowskiKind,
    /// Edge ids of the input graph, ascending.
    pub edges: Vec<usize>,
    /// Vertices of degree at least three in the subdivision.
    pub branch_vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Planarity {
    Planar(Embedding),
    NonPlanar(KuratowskiCertificate),
}

/// Tests a multigraph for planarity. Parallel edges are allowed, loops are
/// not. Disconnected graphs are embedded component by component; the
/// returned rotation places every component on its own sphere.
pub fn test_planarity(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Planarity> {
    for (e, &(u, v)) in edges.iter().enumerate() {
        if u >= vertex_count || v >= vertex_count {
            return Err(invalid!("edge {e} = ({u}, {v}) is out of range"));
        }
        if u == v {
            return Err(invalid!("edge {e} is a loop at vertex {u}"));
        }
    }
    let active = vec![true; edges.len()];
    match embed_multigraph(vertex_count, edges, &active) {
        Some(rotation) => Ok(Planarity::Planar(Embedding::from_rotation(vertex_count, edges.to_vec(), rotation)?)),
        None => Ok(Planarity::NonPlanar(certificate(vertex_count, edges))),
    }
}

/// Rotation over the darts of the active edges, or `None` if not planar.
fn embed_multigraph(vertex_count: usize, edges: &[(usize, usize)], active: &[bool]) -> Option<Vec<Vec<usize>>> {
    // Subdivide every parallel copy after the first.
    let mut simple: Vec<(usize, usize)> = Vec::new();
    let mut first: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    // For each input edge: simple dart at its tail and at its head.
    let mut ends: Vec<Option<(usize, usize)>> = vec![None; edges.len()];
    let mut total = vertex_count;
    for (e, &(u, v)) in edges.iter().enumerate() {
        if !active[e] {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if first.contains_key(&key) {
            let s = total;
            total += 1;
            let a = simple.len();
            simple.push((u, s));
            simple.push((s, v));
            ends[e] = Some((2 * a, 2 * (a + 1) + 1));
        } else {
            first.insert(key, simple.len());
            ends[e] = Some((2 * simple.len(), 2 * simple.len() + 1));
            simple.push((u, v));
        }
    }
    let rot = embed_simple(total, &simple)?;
    let mut back = vec![usize::MAX; 2 * simple.len()];
    for (e, end) in ends.iter().enumerate() {
        if let Some((a, b)) = *end {
            back[a] = 2 * e;
            back[b] = 2 * e + 1;
        }
    }
    Some(rot.into_iter().take(vertex_count).map(|r| r.into_iter().map(|d| back[d]).collect()).collect())
}

struct Graph {
    adj: Vec<Vec<(usize, usize)>>, // (neighbor, edge)
    edges: Vec<(usize, usize)>,
}

impl Graph {
    fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); vertex_count];
        for (e, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        Graph { adj, edges: edges.to_vec() }
    }

    fn dart(&self, e: usize, from: usize) -> usize {
        if self.edges[e].0 == from {
            2 * e
        } else {
            2 * e + 1
        }
    }
}

/// Biconnected blocks as edge lists.
fn blocks(g: &Graph) -> Vec<Vec<usize>> {
    struct State<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<usize>,
        out: Vec<Vec<usize>>,
    }
    fn dfs(s: &mut State, v: usize, parent_edge: usize) {
        s.disc[v] = s.time;
        s.low[v] = s.time;
        s.time += 1;
        for i in 0..s.g.adj[v].len() {
            let (w, e) = s.g.adj[v][i];
            if e == parent_edge {
                continue;
            }
            if s.disc[w] == usize::MAX {
                s.stack.push(e);
                dfs(s, w, e);
                s.low[v] = s.low[v].min(s.low[w]);
                if s.low[w] >= s.disc[v] {
                    let mut block = Vec::new();
                    while let Some(x) = s.stack.pop() {
                        block.push(x);
                        if x == e {
                            break;
                        }
                    }
                    s.out.push(block);
                }
            } else if s.disc[w] < s.disc[v] {
                s.stack.push(e);
                s.low[v] = s.low[v].min(s.disc[w]);
            }
        }
    }
    let n = g.adj.len();
    let mut s = State { g, disc: vec![usize::MAX; n], low: vec![0; n], time: 0, stack: Vec::new(), out: Vec::new() };
    for v in 0..n {
        if s.disc[v] == usize::MAX {
            dfs(&mut s, v, usize::MAX);
        }
    }
    s.out
}

fn embed_simple(vertex_count: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let g = Graph::new(vertex_count, edges);
    let mut rotation = vec![Vec::new(); vertex_count];
    for block in blocks(&g) {
        if block.len() == 1 {
            let e = block[0];
            let (u, v) = edges[e];
            rotation[u].push(2 * e);
            rotation[v].push(2 * e + 1);
            continue;
        }
        let local = embed_block(&g, &block)?;
        for (v, darts) in local {
            rotation[v].extend(darts);
        }
    }
    Some(rotation)
}

/// Path-addition embedding of one biconnected block with a cycle.
/// Returns the rotation at each block vertex.
fn embed_block(g: &Graph, block: &[usize]) -> Option<BTreeMap<usize, Vec<usize>>> {
    let mut in_block = BTreeMap::new();
    for &e in block {
        in_block.insert(e, ());
    }
    let ladj = |v: usize| g.adj[v].iter().copied().filter(|(_, e)| in_block.contains_key(e));
    let n = g.adj.len();
    let mut in_h = vec![false; n];
    let mut edge_in_h: BTreeMap<usize, bool> = block.iter().map(|&e| (e, false)).collect();

    // Initial cycle by DFS from an endpoint of the first block edge.
    let start = g.edges[block[0]].0;
    let cycle = find_cycle(start, &ladj, n)?;
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_h[a] = true;
        let e = ladj(a).find(|&(w, _)| w == b).unwrap().1;
        edge_in_h.insert(e, true);
    }
    let mut rev_cycle = cycle.clone();
    rev_cycle.reverse();
    let mut faces: Vec<Vec<usize>> = vec![cycle, rev_cycle];

    loop {
        let fragments = fragments(g, block, &in_h, &edge_in_h, &ladj);
        if fragments.is_empty() {
            break;
        }
        let mut choice: Option<(usize, usize)> = None;
        for (i, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.iter().all(|a| faces[f].contains(a)))
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((i, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, admissible[0]));
                    }
                }
            }
        }
        let (fi, face) = choice.unwrap();
        let path = fragments[fi].path.clone();
        for w in path.windows(2) {
            in_h[w[0]] = true;
            in_h[w[1]] = true;
            let e = ladj(w[0]).find(|&(x, e)| x == w[1] && !edge_in_h[&e]).unwrap().1;
            edge_in_h.insert(e, true);
        }
        let f = &faces[face];
        let a = path[0];
        let b = *path.last().unwrap();
        let ia = f.iter().position(|&x| x == a).unwrap();
        let rotated: Vec<usize> = (0..f.len()).map(|k| f[(ia + k) % f.len()]).collect();
        let ib = rotated.iter().position(|&x| x == b).unwrap();
        let interior = &path[1..path.len() - 1];
        let mut f1: Vec<usize> = rotated[..=ib].to_vec();
        f1.extend(interior.iter().rev());
        let mut f2: Vec<usize> = rotated[ib..].to_vec();
        f2.push(a);
        f2.extend(interior.iter());
        faces[face] = f1;
        faces.push(f2);
    }

    // succ_u(u -> x) = u -> v for consecutive x, u, v on a face.
    let mut succ: BTreeMap<usize, usize> = BTreeMap::new();
    let dart_to = |u: usize, v: usize| {
        let e = ladj(u).find(|&(w, _)| w == v).unwrap().1;
        g.dart(e, u)
    };
    for f in &faces {
        let k = f.len();
        for i in 0..k {
            let x = f[(i + k - 1) % k];
            let u = f[i];
            let v = f[(i + 1) % k];
            succ.insert(dart_to(u, x), dart_to(u, v));
        }
    }
    let mut out = BTreeMap::new();
    let verts: Vec<usize> = {
        let mut vs: Vec<usize> = block.iter().flat_map(|&e| [g.edges[e].0, g.edges[e].1]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    };
    for v in verts {
        let first = ladj(v).next().map(|(_, e)| g.dart(e, v)).unwrap();
        let mut cyc = vec![first];
        let mut d = succ[&first];
        while d != first {
            cyc.push(d);
            d = succ[&d];
        }
        if cyc.len() != ladj(v).count() {
            return None;
        }
        out.insert(v, cyc);
    }
    Some(out)
}

fn find_cycle<I: Iterator<Item = (usize, usize)>>(start: usize, ladj: &impl Fn(usize) -> I, n: usize) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(start, 0usize)];
    depth[start] = 0;
    // Iterative DFS that stops at the first back edge.
    let mut iters: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    iters.insert(start, ladj(start).collect());
    while let Some(&(v, i)) = stack.last() {
        let nbrs = iters.get(&v).unwrap();
        if i >= nbrs.len() {
            stack.pop();
            continue;
        }
        stack.last_mut().unwrap().1 += 1;
        let (w, e) = nbrs[i];
        if e == parent_edge[v] {
            continue;
        }
        if depth[w] == usize::MAX {
            depth[w] = depth[v] + 1;
            parent[w] = v;
            parent_edge[w] = e;
            iters.insert(w, ladj(w).collect());
            stack.push((w, 0));
        } else if depth[w] < depth[v] {
            let mut cyc = vec![v];
            let mut x = v;
            while x != w {
                x = parent[x];
                cyc.push(x);
            }
            cyc.reverse();
            return Some(cyc);
        }
    }
    None
}

struct Fragment {
    attachments: Vec<usize>,
    path: Vec<usize>,
}

fn fragments<I: Iterator<Item = (usize, usize)>>(
    g: &Graph,
    block: &[usize],
    in_h: &[bool],
    edge_in_h: &BTreeMap<usize, bool>,
    ladj: &impl Fn(usize) -> I,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &e in block {
        let (u, v) = g.edges[e];
        if !edge_in_h[&e] && in_h[u] && in_h[v] {
            out.push(Fragment { attachments: vec![u, v], path: vec![u, v] });
        }
    }
    let n = g.adj.len();
    let mut comp = vec![usize::MAX; n];
    let mut verts: Vec<usize> = block.iter().flat_map(|&e| [g.edges[e].0, g.edges[e].1]).collect();
    verts.sort_unstable();
    verts.dedup();
    let mut ncomp = 0;
    for &s in &verts {
        if in_h[s] || comp[s] != usize::MAX {
            continue;
        }
        let mut members = vec![s];
        comp[s] = ncomp;
        let mut attachments = Vec::new();
        let mut i = 0;
        while i < members.len() {
            let v = members[i];
            i += 1;
            for (w, _) in ladj(v) {
                if in_h[w] {
                    if !attachments.contains(&w) {
                        attachments.push(w);
                    }
                } else if comp[w] == usize::MAX {
                    comp[w] = ncomp;
                    members.push(w);
                }
            }
        }
        attachments.sort_unstable();
        let a = attachments[0];
        // BFS from a through this component to another attachment.
        let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
        let mut queue = alloc::collections::VecDeque::new();
        for (w, _) in ladj(a) {
            if !in_h[w] && comp[w] == ncomp && !prev.contains_key(&w) {
                prev.insert(w, a);
                queue.push_back(w);
            }
        }
        let mut path = Vec::new();
        'search: while let Some(v) = queue.pop_front() {
            for (w, _) in ladj(v) {
                if in_h[w] && w != a {
                    path.push(w);
                    let mut x = v;
                    while x != a {
                        path.push(x);
                        x = prev[&x];
                    }
                    path.push(a);
                    path.reverse();
                    break 'search;
                }
                if !in_h[w] && !prev.contains_key(&w) {
                    prev.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment { attachments, path });
        ncomp += 1;
    }
    out
}

/// Minimal non-planar subgraph by greedy edge deletion, classified as a
/// subdivision of K5 or K3,3.
fn certificate(vertex_count: usize, edges: &[(usize, usize)]) -> KuratowskiCertificate {
    let mut active = vec![true; edges.len()];
    for e in 0..edges.len() {
        active[e] = false;
        if embed_multigraph(vertex_count, edges, &active).is_some() {
            active[e] = true;
        }
    }
    let mut degree = vec![0usize; vertex_count];
    for (e, &(u, v)) in edges.iter().enumerate() {
        if active[e] {
            degree[u] += 1;
            degree[v] += 1;
        }
    }
    let branch_vertices: Vec<usize> = (0..vertex_count).filter(|&v| degree[v] >= 3).collect();
    let kind = if branch_vertices.len() == 5 && branch_vertices.iter().all(|&v| degree[v] == 4) {
        KuratowskiKind::K5
    } else {
        debug_assert!(branch_vertices.len() == 6 && branch_vertices.iter().all(|&v| degree[v] == 3));
        KuratowskiKind::K33
    };
    KuratowskiCertificate { kind, edges: (0..edges.len()).filter(|&e| active[e]).collect(), branch_vertices }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
    }

    #[test]
    fn k4_is_planar() {
        let Planarity::Planar(e) = test_planarity(4, &complete(4)).unwrap() else { panic!() };
        assert_eq!(e.faces().len(), 4);
        assert_eq!(e.genus(), 0);
    }

    #[test]
    fn k5_certificate() {
        let Planarity::NonPlanar(c) = test_planarity(5, &complete(5)).unwrap() else { panic!() };
        assert_eq!(c.kind, KuratowskiKind::K5);
        assert_eq!(c.edges.len(), 10);
    }

    #[test]
    fn k33_certificate() {
        let edges: Vec<_> = (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect();
        let Planarity::NonPlanar(c) = test_planarity(6, &edges).unwrap() else { panic!() };
        assert_eq!(c.kind, KuratowskiKind::K33);
        assert_eq!(c.edges.len(), 9);
    }

    #[test]
    fn parallel_edges_and_bridges() {
        let edges = [(0, 1), (0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (0, 1)];
        let Planarity::Planar(e) = test_planarity(6, &edges).unwrap() else { panic!() };
        assert_eq!(e.genus(), 0);
        assert_eq!(e.rotation(5).len(), 0);
    }

    #[test]
    fn loops_rejected() {
        assert!(test_planarity(2, &[(0, 0)]).is_err());
    }
}
