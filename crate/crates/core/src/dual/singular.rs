//! Singular degree-1 bits: those sitting on an interior check of a K4
//! whose outer face is closed by two parallel edges.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::check::{CheckGraph, OccupancyTable};

/// Four faces around two adjacent degree-3 checks `u`, `v` whose other
/// neighbors `x`, `y` are joined by two different edges.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SingularPattern {
    pub interior: (usize, usize),
    pub boundary: (usize, usize),
    /// The four faces, ascending.
    pub faces: Vec<usize>,
    /// The two parallel boundary edges.
    pub boundary_edges: (usize, usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SingularNodes {
    pub patterns: Vec<SingularPattern>,
    /// Degree-1 bits on an interior check of some pattern, ascending.
    pub bits: Vec<usize>,
}

impl SingularNodes {
    pub fn count(&self) -> usize {
        self.bits.len()
    }
}

/// Scans the check graph for every singular pattern and collects the
/// degree-1 bits occupying its interior checks.
pub fn find_singular_nodes(cg: &CheckGraph, occ: &OccupancyTable) -> SingularNodes {
    let emb = cg.embedding();
    let mut patterns = Vec::new();
    for e in 0..cg.edge_count() {
        let (u, v) = cg.edge_endpoints(e);
        let (u, v) = (u.min(v), u.max(v));
        if emb.degree(u) != 3 || emb.degree(v) != 3 {
            continue;
        }
        let nu: BTreeSet<usize> = emb.rotation(u).iter().map(|&d| emb.head(d)).collect();
        let nv: BTreeSet<usize> = emb.rotation(v).iter().map(|&d| emb.head(d)).collect();
        if nu.len() != 3 || nv.len() != 3 {
            continue;
        }
        let xu: Vec<usize> = nu.iter().copied().filter(|&w| w != v).collect();
        let xv: Vec<usize> = nv.iter().copied().filter(|&w| w != u).collect();
        if xu.len() != 2 || xu != xv {
            continue;
        }
        let (x, y) = (xu[0], xu[1]);
        let faces: BTreeSet<usize> = cg.faces_at(u).into_iter().chain(cg.faces_at(v)).collect();
        if faces.len() != 4 {
            continue;
        }
        // The faces (u, x, y) and (v, x, y) must use different x-y edges.
        let xy_edge = |w: usize| -> Option<usize> {
            let f = cg.faces_at(w).into_iter().find(|&f| cg.face_corners(f).contains(&x) && cg.face_corners(f).contains(&y))?;
            cg.face_edges(f).into_iter().find(|&e| {
                let (a, b) = cg.edge_endpoints(e);
                (a == x && b == y) || (a == y && b == x)
            })
        };
        let (Some(ex), Some(ey)) = (xy_edge(u), xy_edge(v)) else { continue };
        if ex == ey {
            continue;
        }
        patterns.push(SingularPattern {
            interior: (u, v),
            boundary: (x, y),
            faces: faces.into_iter().collect(),
            boundary_edges: (ex.min(ey), ex.max(ey)),
        });
    }
    let bits: BTreeSet<usize> = patterns
        .iter()
        .flat_map(|p| [p.interior.0, p.interior.1])
        .flat_map(|c| occ.node_bits.get(&c).into_iter().flatten().copied())
        .collect();
    SingularNodes { patterns, bits: bits.into_iter().collect() }
}
