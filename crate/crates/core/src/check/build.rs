//! Construction of the check graph from an embedded Tanner graph.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{BitTarget, CheckGraph, CheckGraphBuild, EdgeOrigin, IdentificationMap};
use crate::embed::{canonical_cycle, Embedding};
use crate::error::contract;
use crate::{Error, Result, TannerGraph};

/// What locates a bit in the check graph while it is being built.
#[derive(Clone, Copy)]
enum Marker {
    None,
    Vertex(usize),
    /// An edge, held as one of its darts.
    Edge(usize),
    /// The face containing this dart.
    Face(usize),
}

/// Builds the check graph of `g` under the embedding `emb`.
///
/// For every bit of degree `λ ≥ 2` the neighbors `c_0, ..., c_{λ-1}` in the
/// rotation at the bit (starting from its lowest edge id) are joined by edges
/// `c_i c_{i+1}` drawn around the bit; a degree-2 bit gets a single edge.
/// Whenever two parallel edges bound an empty face of length two the later
/// one is dropped. Separate components are joined through faces that no bit
/// occupies, and every remaining long face is triangulated.
pub fn build_check_graph(g: &TannerGraph, emb: &Embedding) -> Result<CheckGraphBuild> {
    let (n, m) = (g.n(), g.m());
    if m < 3 {
        return Err(Error::UnsupportedSize { checks: m, required: 3 });
    }
    g.validate_embedding(emb)?;

    // Step 1: edges around each bit, drawn inside the combined embedding.
    let mut comb = emb.clone();
    let tanner_edges = emb.edge_count();
    let mut markers = vec![Marker::None; n];
    let mut origin = Vec::new();
    for b in 0..n {
        let rot = emb.rotation(b);
        let lambda = rot.len();
        match lambda {
            0 => continue,
            1 => {
                markers[b] = Marker::Vertex(g.bit_neighbors(b)[0]);
                continue;
            }
            _ => {}
        }
        let start = (0..lambda).min_by_key(|&i| rot[i]).unwrap();
        let darts: Vec<usize> = (0..lambda).map(|i| rot[(start + i) % lambda]).collect();
        let count = if lambda == 2 { 1 } else { lambda };
        for i in 0..count {
            let (di, dj) = (darts[i], darts[(i + 1) % lambda]);
            let (u, w) = (comb.head(di), comb.head(dj));
            let after = comb.succ(dj ^ 1);
            let e = comb.insert_edge(u, Some(di ^ 1), w, Some(after))?;
            origin.push(EdgeOrigin::Bit(b));
            if i == 0 {
                markers[b] = if lambda == 2 { Marker::Edge(2 * e) } else { Marker::Face(2 * e + 1) };
            }
        }
    }

    // Drop the Tanner edges and the bit vertices.
    let keep: Vec<bool> = (0..comb.edge_count()).map(|e| e >= tanner_edges).collect();
    let vmap: Vec<Option<usize>> = (0..n + m).map(|v| v.checked_sub(n)).collect();
    let (mut cg, emap) = comb.restrict(&keep, &vmap, m)?;
    remap_markers(&mut markers, &emap);

    // Step 2: drop the later edge of every empty 2-face.
    loop {
        let faces = cg.faces();
        let Some(face) = faces.iter().find(|f| f.len() == 2 && (f.darts[0] >> 1) != (f.darts[1] >> 1)) else {
            break;
        };
        let (x, y) = if face.darts[0] >> 1 < face.darts[1] >> 1 {
            (face.darts[0], face.darts[1])
        } else {
            (face.darts[1], face.darts[0])
        };
        for mk in markers.iter_mut() {
            match mk {
                Marker::Face(d) if *d == (y ^ 1) => *d = x,
                Marker::Face(d) if *d == y => return Err(contract!("a bit face collapsed to length two")),
                Marker::Edge(d) if (*d >> 1) == (y >> 1) => *d = x,
                _ => {}
            }
        }
        origin.remove(y >> 1);
        let (next, emap) = cg.without_edges(&[y >> 1]);
        cg = next;
        remap_markers(&mut markers, &emap);
    }

    // Join separate components through unoccupied faces.
    let protected = |cg: &Embedding, markers: &[Marker]| -> BTreeSet<usize> {
        let faces = cg.faces();
        let face_of = cg.face_of_darts(&faces);
        markers
            .iter()
            .filter_map(|mk| match mk {
                Marker::Face(d) => Some(face_of[*d]),
                _ => None,
            })
            .collect()
    };
    loop {
        let (comp, count) = cg.components();
        if count <= 1 {
            break;
        }
        let other = comp.iter().position(|&c| c != comp[0]).unwrap();
        let claimed = protected(&cg, &markers);
        let faces = cg.faces();
        let free_face = |root: usize| -> Result<Option<usize>> {
            if cg.degree(root) == 0 {
                return Ok(None);
            }
            faces
                .iter()
                .find(|f| comp[cg.tail(f.darts[0])] == comp[root] && !claimed.contains(&f.id))
                .map(|f| Some(f.darts[0]))
                .ok_or_else(|| contract!("every face of a check-graph component is occupied by a bit; components cannot be joined"))
        };
        let a = free_face(0)?;
        let b = free_face(other)?;
        let u = a.map_or(0, |d| cg.tail(d));
        let w = b.map_or(other, |d| cg.tail(d));
        cg.insert_edge(u, a, w, b)?;
        origin.push(EdgeOrigin::Join);
    }

    // Step 3: triangulate, remembering which pre-triangulation face each
    // new face came from.
    let before = cg.faces();
    let before_of = cg.face_of_darts(&before);
    let old_darts = 2 * cg.edge_count();
    let tri = cg.triangulate_faces(|_| false)?;
    origin.resize(cg.edge_count(), EdgeOrigin::Triangulation);
    let mut chord_origin = vec![usize::MAX; cg.edge_count()];
    for &(e, f) in &tri.added {
        chord_origin[e] = f;
    }
    let check_graph = CheckGraph::from_embedding(cg, origin)?;
    let piece_origin: Vec<usize> = check_graph
        .faces()
        .iter()
        .map(|f| {
            let d = f.darts[0];
            if d < old_darts {
                before_of[d]
            } else {
                chord_origin[d >> 1]
            }
        })
        .collect();

    let targets: Vec<BitTarget> = markers
        .iter()
        .enumerate()
        .map(|(b, mk)| match *mk {
            Marker::None => BitTarget::Isolated,
            Marker::Vertex(c) => BitTarget::Vertex(c),
            Marker::Edge(d) => BitTarget::Edge(d >> 1),
            Marker::Face(d) => {
                let src = before_of[d];
                let pieces: Vec<usize> = (0..piece_origin.len()).filter(|&f| piece_origin[f] == src).collect();
                if g.bit_degree(b) == 3 {
                    BitTarget::Face(pieces[0])
                } else {
                    BitTarget::Fan(pieces)
                }
            }
        })
        .collect();
    let identification = IdentificationMap::new(targets, check_graph.face_count())?;
    verify_identification(g, &check_graph, &identification)?;
    let occupancy = identification.occupancy();
    Ok(CheckGraphBuild { check_graph, identification, occupancy })
}

fn remap_markers(markers: &mut [Marker], emap: &[Option<usize>]) {
    for mk in markers.iter_mut() {
        match mk {
            Marker::Edge(d) | Marker::Face(d) => {
                *d = 2 * emap[*d >> 1].expect("marker edge survives") + (*d & 1);
            }
            _ => {}
        }
    }
}

/// Checks that every bit's target matches its neighborhood: a face on its
/// three checks, an edge between its two checks, its single check, or a
/// connected fan of `λ - 2` faces covering exactly its checks.
pub fn verify_identification(g: &TannerGraph, cg: &CheckGraph, ident: &IdentificationMap) -> Result<()> {
    if ident.targets().len() != g.n() {
        return Err(contract!("identification covers {} bits, graph has {}", ident.targets().len(), g.n()));
    }
    for b in 0..g.n() {
        let nb: BTreeSet<usize> = g.bit_neighbors(b).iter().copied().collect();
        let ok = match ident.target(b) {
            BitTarget::Isolated => nb.is_empty(),
            BitTarget::Vertex(c) => nb.len() == 1 && nb.contains(c),
            BitTarget::Edge(e) => {
                let (u, v) = cg.edge_endpoints(*e);
                nb.len() == 2 && nb.contains(&u) && nb.contains(&v)
            }
            BitTarget::Face(f) => nb.len() == 3 && cg.corner_union(&[*f]) == nb,
            BitTarget::Fan(fs) => {
                nb.len() > 3 && fs.len() == nb.len() - 2 && cg.corner_union(fs) == nb && cg.faces_edge_connected(fs)
            }
        };
        if !ok {
            return Err(contract!("bit {} is identified with {:?}, which does not match its checks", g.bit_label(b), ident.target(b)));
        }
    }
    Ok(())
}

/// True when the two check graphs have the same cyclic neighbor order at
/// every check.
pub fn same_check_graph(a: &CheckGraph, b: &CheckGraph) -> bool {
    let (x, y) = (a.embedding().neighbor_cycles(), b.embedding().neighbor_cycles());
    x.len() == y.len() && x.iter().zip(&y).all(|(p, q)| canonical_cycle(p) == canonical_cycle(q))
}
