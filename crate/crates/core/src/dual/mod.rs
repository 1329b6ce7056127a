//! The planar dual of a check graph and its complete 3-graphs.

mod singular;
pub(crate) mod tree;

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::check::{BitTarget, CheckGraph, IdentificationMap};
use crate::error::{contract, invalid};
use crate::Result;

pub use singular::{find_singular_nodes, SingularNodes, SingularPattern};
pub use tree::{all_realizations, enumerate_realizations, recurrence_table, tree_params, RecurrenceTable, Realization, TreeParams};

/// Dual of a maximal planar check graph. Vertex `f` is face `f` of the
/// check graph and dual edge `e` crosses check-graph edge `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
    corners: Vec<[usize; 3]>,
}

/// Two dual vertices joined by more than one edge.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ParallelEdges {
    pub faces: (usize, usize),
    pub edges: Vec<usize>,
}

/// Builds the dual; each vertex lists its neighbors in the order of its
/// face's darts.
pub fn build_dual(cg: &CheckGraph) -> Result<DualGraph> {
    let faces = cg.faces();
    if faces.iter().any(|f| f.len() != 3) {
        return Err(contract!("dual needs a triangulated check graph"));
    }
    let edges: Vec<(usize, usize)> = (0..cg.edge_count()).map(|e| cg.edge_faces(e)).collect();
    let adj: Vec<Vec<(usize, usize)>> = faces
        .iter()
        .map(|f| f.darts.iter().map(|&d| (cg.face_of_dart(d ^ 1), d >> 1)).collect())
        .collect();
    let corners = (0..faces.len()).map(|f| cg.face_corners(f)).collect();
    let d = DualGraph { edges, adj, corners };
    debug_assert!(d.adj.iter().all(|a| a.len() == 3));
    Ok(d)
}

impl DualGraph {
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// `(neighbor, edge)` pairs around `f`.
    pub fn neighbors(&self, f: usize) -> &[(usize, usize)] {
        &self.adj[f]
    }

    /// Corner checks of the face behind dual vertex `f`.
    pub fn corners(&self, f: usize) -> [usize; 3] {
        self.corners[f]
    }

    /// Checks touching any face in `u`.
    pub fn check_set(&self, u: &[usize]) -> BTreeSet<usize> {
        u.iter().flat_map(|&f| self.corners[f]).collect()
    }

    /// Dual edges with both ends in `u`, ascending.
    pub fn induced_edges(&self, u: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = u.iter().copied().collect();
        (0..self.edges.len()).filter(|&e| set.contains(&self.edges[e].0) && set.contains(&self.edges[e].1)).collect()
    }

    /// Cycle-space dimension `|E(U)| - |U| + 1` of a connected vertex set.
    pub fn cycle_count(&self, u: &[usize]) -> usize {
        (self.induced_edges(u).len() + 1).saturating_sub(u.len())
    }

    pub fn is_connected_set(&self, u: &[usize]) -> bool {
        let Some(&first) = u.first() else { return true };
        let set: BTreeSet<usize> = u.iter().copied().collect();
        let mut seen = BTreeSet::from([first]);
        let mut stack = vec![first];
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adj[v] {
                if set.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == set.len()
    }

    /// Length of a shortest cycle; parallel edges give 2. `None` when the
    /// graph is a forest.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut via = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(w, e) in &self.adj[v] {
                    if e == via[v] {
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        via[w] = e;
                        queue.push_back(w);
                    } else {
                        let len = dist[v] + dist[w] + 1;
                        if best.is_none_or(|b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    /// First pair of faces (ascending) joined by two or more dual edges.
    pub fn detect_multi_edges(&self) -> Option<ParallelEdges> {
        let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            by_pair.entry((a.min(b), a.max(b))).or_default().push(e);
        }
        by_pair.into_iter().find(|(_, es)| es.len() > 1).map(|(faces, edges)| ParallelEdges { faces, edges })
    }

    /// Two degree-3 bits identified with faces joined by parallel dual
    /// edges; such bits have the same neighborhood.
    pub fn duplicate_face_bits(&self, ident: &IdentificationMap) -> Option<(usize, usize)> {
        let pe = self.detect_multi_edges()?;
        let a = ident.face_owner(pe.faces.0)?;
        let b = ident.face_owner(pe.faces.1)?;
        let deg3 = |x: usize| matches!(ident.target(x), BitTarget::Face(_));
        (deg3(a) && deg3(b)).then_some((a.min(b), a.max(b)))
    }

    /// All connected vertex sets of size `1..=max_size`, each sorted, in
    /// ascending order.
    pub fn connected_sets(&self, max_size: usize) -> Vec<Vec<usize>> {
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: BTreeSet<Vec<usize>> = (0..self.vertex_count()).map(|v| vec![v]).collect();
        for _ in 0..max_size {
            let mut next = BTreeSet::new();
            for set in &frontier {
                for &v in set {
                    for &(w, _) in &self.adj[v] {
                        if !set.contains(&w) {
                            let mut s = set.clone();
                            s.push(w);
                            s.sort_unstable();
                            next.insert(s);
                        }
                    }
                }
            }
            out.extend(core::mem::take(&mut frontier));
            frontier = next;
        }
        out.into_iter().collect()
    }

    /// Orders a connected proper subset so that every prefix is connected
    /// and each new vertex has one or two neighbors in its prefix.
    pub fn order_nodes(&self, u: &[usize]) -> Result<Vec<usize>> {
        let set: BTreeSet<usize> = u.iter().copied().collect();
        if set.is_empty() || set.len() >= self.vertex_count() || set.iter().any(|&v| v >= self.vertex_count()) {
            return Err(invalid!("node ordering needs a nonempty proper subset of the dual"));
        }
        let list: Vec<usize> = set.iter().copied().collect();
        if !self.is_connected_set(&list) {
            return Err(invalid!("node set is not connected"));
        }
        let mut removed = Vec::new();
        if self.peel(&mut set.clone(), &mut removed) {
            removed.reverse();
            Ok(removed)
        } else {
            Err(contract!("no valid ordering exists for {list:?}"))
        }
    }

    fn peel(&self, set: &mut BTreeSet<usize>, removed: &mut Vec<usize>) -> bool {
        if set.len() == 1 {
            removed.push(*set.iter().next().unwrap());
            return true;
        }
        let candidates: Vec<usize> = set.iter().copied().collect();
        for v in candidates {
            let deg = self.adj[v].iter().filter(|(w, _)| set.contains(w)).count();
            if !(1..=2).contains(&deg) {
                continue;
            }
            set.remove(&v);
            let rest: Vec<usize> = set.iter().copied().collect();
            if self.is_connected_set(&rest) {
                removed.push(v);
                if self.peel(set, removed) {
                    return true;
                }
                removed.pop();
            }
            set.insert(v);
        }
        false
    }
}
