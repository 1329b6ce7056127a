//! Complete 3-trees, their realizations in the dual, and recurrence
//! numbers of cycle-creating edges.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::DualGraph;
use crate::check::OccupancyTable;
use crate::error::invalid;
use crate::{Error, Result};

/// Shape of a complete 3-tree on `p` nodes: `p = 3·2^(l-1) - 2 + z` with
/// `0 <= z < 3·2^(l-1)`, height `h`, and `t = C(3·2^(l-1), z)` labelled
/// realizations per root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TreeParams {
    pub p: usize,
    pub l: usize,
    pub z: usize,
    pub h: usize,
    pub t: u64,
}

impl TreeParams {
    /// Nodes in one binary branch down to level `l`: `2^l - 1`.
    pub fn branch_nodes(l: usize) -> usize {
        (1 << l) - 1
    }

    /// Nodes of a full complete 3-tree through level `l`: `3·2^l - 2`.
    pub fn nodes_through_level(l: usize) -> usize {
        3 * (1 << l) - 2
    }

    /// Nodes available at level `l >= 1`: `3·2^(l-1)`.
    pub fn level_width(l: usize) -> usize {
        3 * (1 << (l - 1))
    }

    /// Smallest dual girth for which every root has exactly `t`
    /// realizations: `2h + 1`.
    pub fn required_girth(&self) -> usize {
        2 * self.h + 1
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn tree_params(p: usize) -> Result<TreeParams> {
    if p == 0 {
        return Err(invalid!("complete 3-trees need p >= 1"));
    }
    if p == 1 {
        return Ok(TreeParams { p, l: 1, z: 0, h: 0, t: 1 });
    }
    let mut l = 1;
    while p >= TreeParams::nodes_through_level(l) {
        l += 1;
    }
    let z = p - TreeParams::nodes_through_level(l - 1);
    let h = if z == 0 { l - 1 } else { l };
    let t = binomial(TreeParams::level_width(l) as u64, z as u64);
    Ok(TreeParams { p, l, z, h, t })
}

/// One complete 3-graph: a labelled complete 3-tree rooted at `root` plus
/// the remaining edges its vertex set induces.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Realization {
    pub root: usize,
    /// Vertex set, ascending.
    pub vertices: Vec<usize>,
    /// Depth of each vertex in `vertices`, same order.
    pub depths: Vec<usize>,
    pub tree_edges: Vec<usize>,
    pub cycle_edges: Vec<usize>,
}

impl Realization {
    pub fn cycle_count(&self) -> usize {
        self.cycle_edges.len()
    }
}

pub(crate) fn check_girth(params: &TreeParams, girth: Option<usize>) -> Result<()> {
    let required = params.required_girth();
    match girth {
        Some(g) if g < required => Err(Error::Girth { girth: Some(g), required, p: params.p }),
        _ => Ok(()),
    }
}

/// The `t(p)` realizations rooted at `root`, in lexicographic order of the
/// chosen last-level children.
pub fn enumerate_realizations(d: &DualGraph, root: usize, p: usize) -> Result<Vec<Realization>> {
    let params = tree_params(p)?;
    check_girth(&params, d.girth())?;
    Ok(realizations_at(d, root, &params))
}

/// Realizations for every root, roots ascending.
pub fn all_realizations(d: &DualGraph, p: usize) -> Result<Vec<Realization>> {
    let params = tree_params(p)?;
    check_girth(&params, d.girth())?;
    Ok((0..d.vertex_count()).flat_map(|r| realizations_at(d, r, &params)).collect())
}

pub(crate) fn realizations_at(d: &DualGraph, root: usize, params: &TreeParams) -> Vec<Realization> {
    // Ball of radius l - 1 as a BFS tree.
    let mut depth: BTreeMap<usize, usize> = BTreeMap::from([(root, 0)]);
    let mut parent_edge: BTreeMap<usize, usize> = BTreeMap::new();
    let mut layer = vec![root];
    let mut tree_edges = Vec::new();
    for lvl in 1..params.l {
        let mut next = Vec::new();
        for &v in &layer {
            for &(w, e) in d.neighbors(v) {
                if parent_edge.get(&v) == Some(&e) || depth.contains_key(&w) {
                    continue;
                }
                depth.insert(w, lvl);
                parent_edge.insert(w, e);
                tree_edges.push(e);
                next.push(w);
            }
        }
        layer = next;
    }
    let candidates: Vec<(usize, usize)> = if params.z == 0 {
        Vec::new()
    } else {
        let pe = &parent_edge;
        layer
            .iter()
            .flat_map(|&v| d.neighbors(v).iter().copied().filter(move |&(_, e)| pe.get(&v) != Some(&e)))
            .collect()
    };
    let build = |chosen: &[(usize, usize)]| {
        let mut depth = depth.clone();
        let mut tree = tree_edges.clone();
        for &(w, e) in chosen {
            depth.insert(w, params.l);
            tree.push(e);
        }
        let vertices: Vec<usize> = depth.keys().copied().collect();
        let tree_set: BTreeSet<usize> = tree.iter().copied().collect();
        let cycle_edges: Vec<usize> = d.induced_edges(&vertices).into_iter().filter(|e| !tree_set.contains(e)).collect();
        debug_assert!(cycle_edges.iter().all(|&e| {
            let (a, b) = d.edge_endpoints(e);
            depth[&a] == params.h && depth[&b] == params.h
        }));
        tree.sort_unstable();
        Realization { root, depths: vertices.iter().map(|v| depth[v]).collect(), vertices, tree_edges: tree, cycle_edges }
    };
    if params.z == 0 {
        return vec![build(&[])];
    }
    let mut out = Vec::new();
    let k = params.z;
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let chosen: Vec<(usize, usize)> = idx.iter().map(|&i| candidates[i]).collect();
        out.push(build(&chosen));
        // Next k-combination of candidate indices.
        let mut i = k;
        while i > 0 && idx[i - 1] == candidates.len() - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Recurrence numbers of the cycle-creating edges for complete 3-graphs on
/// `p` nodes, split by whether a degree-2 bit occupies the edge.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RecurrenceTable {
    pub p: usize,
    /// Total recurrence number per dual edge.
    pub r: Vec<u64>,
    /// Recurrence number per (root, edge), nonzero entries only.
    pub per_root: BTreeMap<(usize, usize), u64>,
    /// Edges with positive recurrence number.
    pub cycle_edges: Vec<usize>,
    pub occupied: Vec<usize>,
    pub unoccupied: Vec<usize>,
}

impl RecurrenceTable {
    pub fn total(&self) -> u64 {
        self.r.iter().sum()
    }

    pub fn unoccupied_total(&self) -> u64 {
        self.unoccupied.iter().map(|&e| self.r[e]).sum()
    }
}

pub fn recurrence_table(d: &DualGraph, p: usize, occ: &OccupancyTable) -> Result<RecurrenceTable> {
    let all = all_realizations(d, p)?;
    Ok(recurrence_from(d, p, &all, occ))
}

pub(crate) fn recurrence_from(d: &DualGraph, p: usize, all: &[Realization], occ: &OccupancyTable) -> RecurrenceTable {
    let mut r = vec![0u64; d.edge_count()];
    let mut per_root: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for real in all {
        for &e in &real.cycle_edges {
            r[e] += 1;
            *per_root.entry((real.root, e)).or_default() += 1;
        }
    }
    let cycle_edges: Vec<usize> = (0..r.len()).filter(|&e| r[e] > 0).collect();
    let (occupied, unoccupied) = cycle_edges.iter().partition(|&&e| occ.is_edge_occupied(e));
    RecurrenceTable { p, r, per_root, cycle_edges, occupied, unoccupied }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let rows = [(2, 1, 1, 1, 3), (3, 1, 2, 1, 3), (4, 2, 0, 1, 1), (5, 2, 1, 2, 6), (8, 2, 4, 2, 15), (10, 3, 0, 2, 1)];
        for (p, l, z, h, t) in rows {
            assert_eq!(tree_params(p).unwrap(), TreeParams { p, l, z, h, t }, "p = {p}");
        }
        assert_eq!(tree_params(1).unwrap().t, 1);
        assert!(tree_params(0).is_err());
    }

    #[test]
    fn node_counts() {
        assert_eq!(TreeParams::branch_nodes(3), 7);
        assert_eq!(TreeParams::nodes_through_level(2), 10);
        for p in 1..40 {
            let tp = tree_params(p).unwrap();
            assert_eq!(TreeParams::nodes_through_level(tp.l - 1) + tp.z, p);
            assert!(tp.z < TreeParams::level_width(tp.l));
        }
    }
}
