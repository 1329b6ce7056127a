//! Combinatorial embeddings of multigraphs as rotation systems.
//!
//! Edge `e` from `u` to `v` contributes dart `2e` (`u -> v`) and dart
//! `2e + 1` (`v -> u`); the reverse of dart `d` is `d ^ 1`. The rotation at
//! a vertex is the cyclic order of the darts leaving it. Faces are traced
//! with `next(d) = succ_{head(d)}(rev(d))`.

mod planarity;
mod triangulate;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::invalid;
use crate::Result;

pub use planarity::{test_planarity, KuratowskiCertificate, KuratowskiKind, Planarity};
pub use triangulate::Triangulation;

#[inline]
pub fn rev(d: usize) -> usize {
    d ^ 1
}

#[inline]
pub fn edge_of(d: usize) -> usize {
    d >> 1
}

/// One face: its darts in tracing order.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Face {
    pub id: usize,
    pub darts: Vec<usize>,
    pub is_outer: bool,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

/// A multigraph together with a rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    rotation: Vec<Vec<usize>>,
}

impl Embedding {
    /// Validates that `rotation[v]` is a permutation of the darts leaving `v`.
    pub fn from_rotation(vertex_count: usize, edges: Vec<(usize, usize)>, rotation: Vec<Vec<usize>>) -> Result<Self> {
        if rotation.len() != vertex_count {
            return Err(invalid!("rotation lists {} vertices, expected {vertex_count}", rotation.len()));
        }
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(invalid!("edge {e} = ({u}, {v}) is out of range"));
            }
            if u == v {
                return Err(invalid!("edge {e} is a loop at {u}"));
            }
        }
        let mut seen = vec![false; 2 * edges.len()];
        for (v, darts) in rotation.iter().enumerate() {
            for &d in darts {
                if d >= seen.len() {
                    return Err(invalid!("dart {d} at vertex {v} does not exist"));
                }
                if seen[d] {
                    return Err(invalid!("dart {d} appears twice in the rotation"));
                }
                seen[d] = true;
                let tail = if d % 2 == 0 { edges[d / 2].0 } else { edges[d / 2].1 };
                if tail != v {
                    return Err(invalid!("dart {d} leaves vertex {tail}, not {v}"));
                }
            }
        }
        if let Some(d) = seen.iter().position(|&s| !s) {
            return Err(invalid!("dart {d} is missing from the rotation"));
        }
        Ok(Embedding { vertex_count, edges, rotation })
    }

    /// Rotation in which every vertex lists its darts by edge id. Usually
    /// not planar; useful as a starting point.
    pub fn with_edge_order(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut rotation = vec![Vec::new(); vertex_count];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(invalid!("edge {e} = ({u}, {v}) is out of range"));
            }
            rotation[u].push(2 * e);
            rotation[v].push(2 * e + 1);
        }
        Self::from_rotation(vertex_count, edges, rotation)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn tail(&self, d: usize) -> usize {
        let (u, v) = self.edges[d >> 1];
        if d & 1 == 0 {
            u
        } else {
            v
        }
    }

    pub fn head(&self, d: usize) -> usize {
        self.tail(d ^ 1)
    }

    fn position(&self, d: usize) -> usize {
        let v = self.tail(d);
        self.rotation[v].iter().position(|&x| x == d).expect("dart is in its tail rotation")
    }

    /// Next dart after `d` in the rotation at `tail(d)`.
    pub fn succ(&self, d: usize) -> usize {
        let rot = &self.rotation[self.tail(d)];
        rot[(self.position(d) + 1) % rot.len()]
    }

    /// Previous dart before `d` in the rotation at `tail(d)`.
    pub fn pred(&self, d: usize) -> usize {
        let rot = &self.rotation[self.tail(d)];
        rot[(self.position(d) + rot.len() - 1) % rot.len()]
    }

    /// Face-tracing successor.
    pub fn next_in_face(&self, d: usize) -> usize {
        self.succ(d ^ 1)
    }

    /// All faces, numbered by their smallest dart. The longest face (lowest
    /// id on ties) carries the outer flag.
    pub fn faces(&self) -> Vec<Face> {
        let succ = self.succ_table();
        let mut done = vec![false; 2 * self.edges.len()];
        let mut faces = Vec::new();
        for start in 0..done.len() {
            if done[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            while !done[d] {
                done[d] = true;
                darts.push(d);
                d = succ[d ^ 1];
            }
            faces.push(Face { id: faces.len(), darts, is_outer: false });
        }
        if let Some(outer) = faces.iter().enumerate().max_by_key(|(i, f)| (f.len(), usize::MAX - i)).map(|(i, _)| i) {
            faces[outer].is_outer = true;
        }
        faces
    }

    fn succ_table(&self) -> Vec<usize> {
        let mut succ = vec![0; 2 * self.edges.len()];
        for rot in &self.rotation {
            for (i, &d) in rot.iter().enumerate() {
                succ[d] = rot[(i + 1) % rot.len()];
            }
        }
        succ
    }

    /// `face_of[d]` for every dart, given `faces()`.
    pub fn face_of_darts(&self, faces: &[Face]) -> Vec<usize> {
        let mut out = vec![usize::MAX; 2 * self.edges.len()];
        for f in faces {
            for &d in &f.darts {
                out[d] = f.id;
            }
        }
        out
    }

    /// Vertices of each face, in tracing order (tails of its darts).
    pub fn face_vertices(&self, face: &Face) -> Vec<usize> {
        face.darts.iter().map(|&d| self.tail(d)).collect()
    }

    /// Connected components as a component index per vertex, and the count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.vertex_count];
        let mut count = 0;
        for s in 0..self.vertex_count {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &d in &self.rotation[v] {
                    let w = self.head(d);
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// Euler genus `(2C - V + E - F) / 2`, counting one face per isolated
    /// vertex. Zero exactly when the rotation is planar.
    pub fn genus(&self) -> usize {
        let (_, c) = self.components();
        let isolated = (0..self.vertex_count).filter(|&v| self.rotation[v].is_empty()).count();
        let f = self.faces().len() + isolated;
        (2 * c + self.edges.len() - self.vertex_count - f) / 2
    }

    pub fn is_planar_embedding(&self) -> bool {
        self.genus() == 0
    }

    /// Edge ids joining `u` and `v`, ascending.
    pub fn edges_between(&self, u: usize, v: usize) -> Vec<usize> {
        self.rotation[u].iter().filter(|&&d| self.head(d) == v).map(|&d| d >> 1).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rotation[u].iter().any(|&d| self.head(d) == v)
    }

    /// Adds isolated vertices.
    pub fn add_vertices(&mut self, count: usize) {
        self.vertex_count += count;
        self.rotation.resize(self.vertex_count, Vec::new());
    }

    /// New edge `u -> w` whose dart `u -> w` is placed immediately before
    /// dart `before_u` at `u` and whose reverse is placed immediately before
    /// `before_w` at `w`. A `None` anchor is only allowed at an isolated
    /// vertex. When `before_u` and `before_w` lie in one face this splits
    /// it in two; when they lie in faces of different components the two
    /// faces merge.
    pub fn insert_edge(&mut self, u: usize, before_u: Option<usize>, w: usize, before_w: Option<usize>) -> Result<usize> {
        if u == w {
            return Err(invalid!("cannot insert a loop at {u}"));
        }
        let anchor_ok = |emb: &Embedding, v: usize, a: Option<usize>| match a {
            Some(d) => d < 2 * emb.edges.len() && emb.tail(d) == v,
            None => emb.rotation[v].is_empty(),
        };
        if !anchor_ok(self, u, before_u) || !anchor_ok(self, w, before_w) {
            return Err(invalid!("bad anchors for new edge ({u}, {w})"));
        }
        let e = self.edges.len();
        self.edges.push((u, w));
        self.place(2 * e, u, before_u);
        self.place(2 * e + 1, w, before_w);
        Ok(e)
    }

    fn place(&mut self, dart: usize, v: usize, before: Option<usize>) {
        match before {
            Some(b) => {
                let i = self.rotation[v].iter().position(|&x| x == b).expect("anchor at vertex");
                self.rotation[v].insert(i, dart);
            }
            None => self.rotation[v].push(dart),
        }
    }

    /// Places dart `dart` (already owned by this embedding's edge list)
    /// immediately after `after` in its rotation.
    fn place_after(&mut self, dart: usize, v: usize, after: usize) {
        let i = self.rotation[v].iter().position(|&x| x == after).expect("anchor at vertex");
        self.rotation[v].insert(i + 1, dart);
    }

    /// New edge `u -> w` splitting the face that contains dart `a` (leaving
    /// `u`) and dart `b` (leaving `w`). The face on the side of the new dart
    /// `u -> w` continues with `b`.
    pub fn split_face(&mut self, a: usize, b: usize) -> Result<usize> {
        let u = self.tail(a);
        let w = self.tail(b);
        self.insert_edge(u, Some(a), w, Some(b))
    }

    /// Inserts a new edge `u -> w` with `u -> w` right after `after_u` at `u`
    /// and `w -> u` right after `after_w` at `w`.
    pub fn insert_edge_after(&mut self, u: usize, after_u: usize, w: usize, after_w: usize) -> Result<usize> {
        if u == w || self.tail(after_u) != u || self.tail(after_w) != w {
            return Err(invalid!("bad anchors for new edge ({u}, {w})"));
        }
        let e = self.edges.len();
        self.edges.push((u, w));
        self.place_after(2 * e, u, after_u);
        self.place_after(2 * e + 1, w, after_w);
        Ok(e)
    }

    /// Subgraph keeping the edges with `keep[e]` and renaming vertices via
    /// `vertex_map` (dropped vertices map to `None`; their edges must be
    /// dropped too). Returns the new embedding and the old-to-new edge map.
    pub fn restrict(&self, keep: &[bool], vertex_map: &[Option<usize>], vertex_count: usize) -> Result<(Embedding, Vec<Option<usize>>)> {
        let mut edge_map = vec![None; self.edges.len()];
        let mut edges = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if !keep[e] {
                continue;
            }
            let (Some(nu), Some(nv)) = (vertex_map[u], vertex_map[v]) else {
                return Err(invalid!("kept edge {e} touches a dropped vertex"));
            };
            edge_map[e] = Some(edges.len());
            edges.push((nu, nv));
        }
        let mut rotation = vec![Vec::new(); vertex_count];
        for (v, rot) in self.rotation.iter().enumerate() {
            let Some(nv) = vertex_map[v] else { continue };
            if !rotation[nv].is_empty() {
                return Err(invalid!("two vertices map to {nv}"));
            }
            rotation[nv] = rot.iter().filter_map(|&d| edge_map[d >> 1].map(|ne| 2 * ne + (d & 1))).collect();
        }
        Ok((Embedding::from_rotation(vertex_count, edges, rotation)?, edge_map))
    }

    /// Removes the given edges, keeping all vertices.
    pub fn without_edges(&self, remove: &[usize]) -> (Embedding, Vec<Option<usize>>) {
        let mut keep = vec![true; self.edges.len()];
        for &e in remove {
            keep[e] = false;
        }
        let map: Vec<Option<usize>> = (0..self.vertex_count).map(Some).collect();
        self.restrict(&keep, &map, self.vertex_count).expect("identity vertex map")
    }

    /// Replaces edge `e` of a triangulation by the other diagonal of the
    /// quadrilateral formed by its two faces. Returns `false` and leaves the
    /// embedding unchanged when the flip would create a loop or a parallel
    /// edge, or when the two faces are not triangles.
    pub fn flip_edge(&mut self, e: usize) -> bool {
        let d = 2 * e;
        let (f1, f2) = (self.trace(d), self.trace(d ^ 1));
        if f1.len() != 3 || f2.len() != 3 {
            return false;
        }
        // f1 = u->v, v->x, x->u ; f2 = v->u, u->y, y->v
        let x = self.head(f1[1]);
        let y = self.head(f2[1]);
        if x == y || self.has_edge(x, y) {
            return false;
        }
        let (u, v) = self.edges[e];
        self.rotation[u].retain(|&t| t != d);
        self.rotation[v].retain(|&t| t != (d ^ 1));
        // The merged face is u->y, y->v, v->x, x->u. New dart x->y goes
        // before x->u; its reverse before y->v.
        let before_x = f1[2];
        let before_y = f2[2];
        self.edges[e] = (x, y);
        self.place(d, x, Some(before_x));
        self.place(d ^ 1, y, Some(before_y));
        true
    }

    /// Darts of the face containing `d`, starting at `d`.
    pub fn trace(&self, d: usize) -> Vec<usize> {
        let mut out = vec![d];
        let mut cur = self.next_in_face(d);
        while cur != d {
            out.push(cur);
            cur = self.next_in_face(cur);
        }
        out
    }

    /// The cyclic sequence of neighbors around each vertex.
    pub fn neighbor_cycles(&self) -> Vec<Vec<usize>> {
        self.rotation.iter().map(|rot| rot.iter().map(|&d| self.head(d)).collect()).collect()
    }
}

/// Rotates a cyclic sequence so that its smallest element comes first.
pub fn canonical_cycle<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    if seq.is_empty() {
        return Vec::new();
    }
    let n = seq.len();
    let best = (0..n)
        .min_by(|&a, &b| {
            let ka = (0..n).map(|i| &seq[(a + i) % n]);
            let kb = (0..n).map(|i| &seq[(b + i) % n]);
            ka.cmp(kb)
        })
        .unwrap();
    (0..n).map(|i| seq[(best + i) % n].clone()).collect()
}

/// True when both embeddings have the same vertex count and the same
/// cyclic neighbor sequence at every vertex. Edge ids are ignored.
pub fn same_rotation_up_to_edge_ids(a: &Embedding, b: &Embedding) -> bool {
    a.vertex_count == b.vertex_count
        && a.neighbor_cycles().iter().zip(b.neighbor_cycles()).all(|(x, y)| canonical_cycle(x) == canonical_cycle(&y))
}
