//! Check graphs, check inverses and the degree-changing rewrites between
//! a Tanner graph and its check inverse.

mod build;
mod inverse;
mod transform;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::embed::{Embedding, Face};
use crate::error::contract;
use crate::Result;

pub use build::{build_check_graph, same_check_graph, verify_identification};
pub use inverse::{build_check_inverse, CheckInverse};
pub use transform::{apply_step, neighborhood_profile, transform_sequence, PlacedGraph, StepKind, TransformStep};



/// Where a check-graph edge came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum EdgeOrigin {
    /// Joins consecutive neighbors of this bit.
    Bit(usize),
    /// Connects two otherwise separate components.
    Join,
    /// Added to make the graph maximal planar.
    Triangulation,
}

/// What a bit node is identified with in the check graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum BitTarget {
    /// Degree 0.
    Isolated,
    /// Degree 1: its check.
    Vertex(usize),
    /// Degree 2: a check-graph edge joining its two checks.
    Edge(usize),
    /// Degree 3: a face on its three checks.
    Face(usize),
    /// Degree `λ > 3`: `λ - 2` edge-connected faces, ascending.
    Fan(Vec<usize>),
}

impl BitTarget {
    /// Faces the bit occupies.
    pub fn faces(&self) -> &[usize] {
        match self {
            BitTarget::Face(f) => core::slice::from_ref(f),
            BitTarget::Fan(fs) => fs,
            _ => &[],
        }
    }
}

/// A maximal planar multigraph on the check nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckGraph {
    embedding: Embedding,
    origin: Vec<EdgeOrigin>,
    faces: Vec<Face>,
    face_of: Vec<usize>,
}

impl CheckGraph {
    /// Wraps a triangulated embedding; every face must have length three
    /// and the edge count must be `3m - 6`.
    pub fn from_embedding(embedding: Embedding, origin: Vec<EdgeOrigin>) -> Result<Self> {
        let m = embedding.vertex_count();
        if origin.len() != embedding.edge_count() {
            return Err(contract!("{} edge origins for {} edges", origin.len(), embedding.edge_count()));
        }
        if m < 3 || embedding.edge_count() != 3 * m - 6 {
            return Err(contract!("check graph on {m} vertices has {} edges", embedding.edge_count()));
        }
        let faces = embedding.faces();
        if faces.iter().any(|f| f.len() != 3) || faces.len() != 2 * m - 4 || !embedding.is_planar_embedding() {
            return Err(contract!("check graph is not a planar triangulation"));
        }
        let face_of = embedding.face_of_darts(&faces);
        Ok(CheckGraph { embedding, origin, faces, face_of })
    }

    pub fn m(&self) -> usize {
        self.embedding.vertex_count()
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn origin(&self, e: usize) -> EdgeOrigin {
        self.origin[e]
    }

    pub fn origins(&self) -> &[EdgeOrigin] {
        &self.origin
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.embedding.edge_count()
    }

    pub fn face_of_dart(&self, d: usize) -> usize {
        self.face_of[d]
    }

    /// The two faces on either side of edge `e`: `(face(2e), face(2e+1))`.
    pub fn edge_faces(&self, e: usize) -> (usize, usize) {
        (self.face_of[2 * e], self.face_of[2 * e + 1])
    }

    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        self.embedding.edges()[e]
    }

    /// Corner checks of face `f`, ascending.
    pub fn face_corners(&self, f: usize) -> [usize; 3] {
        let mut c = [0; 3];
        for (i, &d) in self.faces[f].darts.iter().enumerate() {
            c[i] = self.embedding.tail(d);
        }
        c.sort_unstable();
        c
    }

    /// Edges of face `f` in tracing order.
    pub fn face_edges(&self, f: usize) -> [usize; 3] {
        let d = &self.faces[f].darts;
        [d[0] >> 1, d[1] >> 1, d[2] >> 1]
    }

    /// Faces around check `c`.
    pub fn faces_at(&self, c: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.embedding.rotation(c).iter().map(|&d| self.face_of[d]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Union of the corners of `faces`.
    pub fn corner_union(&self, faces: &[usize]) -> BTreeSet<usize> {
        faces.iter().flat_map(|&f| self.face_corners(f)).collect()
    }

    /// True when `faces` are connected through shared edges.
    pub fn faces_edge_connected(&self, faces: &[usize]) -> bool {
        let Some(&first) = faces.first() else { return true };
        let set: BTreeSet<usize> = faces.iter().copied().collect();
        let mut seen = BTreeSet::from([first]);
        let mut stack = vec![first];
        while let Some(f) = stack.pop() {
            for e in self.face_edges(f) {
                let (a, b) = self.edge_faces(e);
                let g = if a == f { b } else { a };
                if set.contains(&g) && seen.insert(g) {
                    stack.push(g);
                }
            }
        }
        seen.len() == set.len()
    }
}

/// Per-bit identification with check-graph elements.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct IdentificationMap {
    targets: Vec<BitTarget>,
    face_owner: Vec<Option<usize>>,
}

impl IdentificationMap {
    /// Builds the map, checking that no face is claimed twice.
    pub fn new(targets: Vec<BitTarget>, face_count: usize) -> Result<Self> {
        let mut face_owner = vec![None; face_count];
        for (b, t) in targets.iter().enumerate() {
            for &f in t.faces() {
                if f >= face_count {
                    return Err(contract!("bit {b} claims unknown face {f}"));
                }
                if let Some(o) = face_owner[f] {
                    return Err(contract!("face {f} is claimed by bits {o} and {b}"));
                }
                face_owner[f] = Some(b);
            }
        }
        Ok(IdentificationMap { targets, face_owner })
    }

    pub fn target(&self, b: usize) -> &BitTarget {
        &self.targets[b]
    }

    pub fn targets(&self) -> &[BitTarget] {
        &self.targets
    }

    /// The bit identified with face `f`, if any.
    pub fn face_owner(&self, f: usize) -> Option<usize> {
        self.face_owner[f]
    }

    /// Faces no bit is identified with.
    pub fn empty_faces(&self) -> Vec<usize> {
        (0..self.face_owner.len()).filter(|&f| self.face_owner[f].is_none()).collect()
    }

    /// Degree-2 and degree-1 bit counts per edge and per check.
    pub fn occupancy(&self) -> OccupancyTable {
        let mut occ = OccupancyTable::default();
        for (b, t) in self.targets.iter().enumerate() {
            match t {
                BitTarget::Edge(e) => occ.edge_bits.entry(*e).or_default().push(b),
                BitTarget::Vertex(c) => occ.node_bits.entry(*c).or_default().push(b),
                _ => {}
            }
        }
        occ
    }
}

/// Check-graph edges carrying degree-2 bits and checks carrying degree-1
/// bits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OccupancyTable {
    pub edge_bits: BTreeMap<usize, Vec<usize>>,
    pub node_bits: BTreeMap<usize, Vec<usize>>,
}

impl OccupancyTable {
    pub fn is_edge_occupied(&self, e: usize) -> bool {
        self.edge_bits.contains_key(&e)
    }

    pub fn is_node_occupied(&self, c: usize) -> bool {
        self.node_bits.contains_key(&c)
    }

    pub fn occupied_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.edge_bits.keys().copied()
    }

    pub fn occupied_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.node_bits.keys().copied()
    }
}

/// Result of [`build_check_graph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckGraphBuild {
    pub check_graph: CheckGraph,
    pub identification: IdentificationMap,
    pub occupancy: OccupancyTable,
}
