//! Deterministic triangulation of planar embeddings.

use alloc::vec::Vec;

use super::Embedding;
use crate::error::invalid;
use crate::Result;

/// Edges added by a triangulation, each with the id of the face (in the
/// input's [`Embedding::faces`] numbering) that it subdivides.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Triangulation {
    pub added: Vec<(usize, usize)>,
}

impl Embedding {
    /// Triangulates every face longer than three, in place.
    ///
    /// Faces are processed in id order. A face is cut by ears
    /// `(v_i, v_{i+1}, v_{i+2})` whose apex `v_i` is chosen by increasing
    /// (vertex id, boundary position); an ear is skipped if its chord would
    /// be a loop, or a parallel edge while some other ear avoids one. Faces
    /// for which `skip(face_id)` holds are left alone.
    pub fn triangulate_faces(&mut self, skip: impl Fn(usize) -> bool) -> Result<Triangulation> {
        if self.vertex_count() < 3 {
            return Err(invalid!("triangulation needs at least 3 vertices, got {}", self.vertex_count()));
        }
        if !self.is_connected() {
            return Err(invalid!("triangulation needs a connected embedding"));
        }
        let faces = self.faces();
        let mut added = Vec::new();
        for face in &faces {
            if face.len() <= 3 || skip(face.id) {
                continue;
            }
            // Track the face by one of its darts that stays in the
            // non-triangle remainder after each cut.
            let mut anchor = face.darts[0];
            loop {
                let darts = self.trace(anchor);
                if darts.len() <= 3 {
                    break;
                }
                let verts: Vec<usize> = darts.iter().map(|&d| self.tail(d)).collect();
                let k = verts.len();
                let mut order: Vec<usize> = (0..k).collect();
                order.sort_by_key(|&i| (verts[i], i));
                let valid = |i: usize| verts[i] != verts[(i + 2) % k];
                let simple = order.iter().copied().find(|&i| valid(i) && !self.has_edge(verts[i], verts[(i + 2) % k]));
                let Some(i) = simple.or_else(|| order.iter().copied().find(|&i| valid(i))) else {
                    return Err(invalid!("face {} cannot be triangulated without loops", face.id));
                };
                let a = darts[i];
                let b = darts[(i + 2) % k];
                let e = self.split_face(a, b)?;
                added.push((e, face.id));
                // The new dart u->w lies in the remainder.
                anchor = 2 * e;
            }
        }
        Ok(Triangulation { added })
    }

    /// Triangulates all faces; see [`Embedding::triangulate_faces`].
    pub fn triangulate_maximal(&self) -> Result<(Embedding, Triangulation)> {
        let mut out = self.clone();
        let t = out.triangulate_faces(|_| false)?;
        Ok((out, t))
    }
}
