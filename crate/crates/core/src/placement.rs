//! Drawing a Tanner graph from a check graph and an identification.
//!
//! Given a check graph and, for every bit, the element it is identified
//! with, this module produces a planar embedding of the Tanner graph whose
//! rebuilt check graph uses the same faces. Face and fan bits sit inside
//! their region, degree-2 bits hug their edge and degree-1 bits hang off
//! their check.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::check::{BitTarget, CheckGraph};
use crate::embed::Embedding;
use crate::error::{contract, invalid};
use crate::{Result, TannerGraph};

/// Planar embedding of `g` (bits first, then checks) in which each bit is
/// drawn at its target in `cg`.
pub fn embed_placement(g: &TannerGraph, cg: &CheckGraph, targets: &[BitTarget]) -> Result<Embedding> {
    let (n, m) = (g.n(), g.m());
    if targets.len() != n || cg.m() != m {
        return Err(invalid!("placement does not match the graph sizes"));
    }
    let emb = cg.embedding();

    // Remove edges interior to fans so that each fan is a single face.
    let mut fan_of_face = vec![usize::MAX; cg.face_count()];
    for (b, t) in targets.iter().enumerate() {
        if let BitTarget::Fan(fs) = t {
            for &f in fs {
                fan_of_face[f] = b;
            }
        }
    }
    let interior: Vec<usize> = (0..cg.edge_count())
        .filter(|&e| {
            let (a, b) = cg.edge_faces(e);
            fan_of_face[a] != usize::MAX && fan_of_face[a] == fan_of_face[b]
        })
        .collect();
    let (reduced, emap) = emb.without_edges(&interior);
    let map_dart = |d: usize| emap[d >> 1].map(|e| 2 * e + (d & 1));
    let faces = reduced.faces();
    let face_of = reduced.face_of_darts(&faces);

    // Darts of the Tanner graph by (bit, check).
    let mut dart_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (k, &(b, c)) in g.edges().iter().enumerate() {
        dart_of.insert((b, c), 2 * k);
    }
    let tanner_dart = |b: usize, c: usize| -> Result<usize> {
        dart_of.get(&(b, c)).copied().ok_or_else(|| invalid!("bit {} is not adjacent to check {}", g.bit_label(b), g.check_label(c)))
    };

    // Items inserted in the corner after each reduced dart, with sort keys.
    let mut gaps: BTreeMap<usize, Vec<((u8, i64), usize)>> = BTreeMap::new();
    // Items at checks with no reduced darts.
    let mut lone: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut bit_rotation: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut hug_count: BTreeMap<usize, i64> = BTreeMap::new();

    for (b, t) in targets.iter().enumerate() {
        let expected = match t {
            BitTarget::Isolated => Vec::new(),
            BitTarget::Vertex(c) => vec![*c],
            BitTarget::Edge(e) => {
                let (u, v) = cg.edge_endpoints(*e);
                let mut x = vec![u, v];
                x.sort_unstable();
                x
            }
            BitTarget::Face(_) | BitTarget::Fan(_) => cg.corner_union(t.faces()).into_iter().collect(),
        };
        if expected != g.neighborhood(b) {
            return Err(invalid!("bit {} does not match its placement {:?}", g.bit_label(b), t));
        }
        match t {
            BitTarget::Isolated => {}
            BitTarget::Vertex(c) => {
                let d = tanner_dart(b, *c)? ^ 1;
                match reduced.rotation(*c).first() {
                    Some(&x) => gaps.entry(x).or_default().push(((1, b as i64), d)),
                    None => lone.entry(*c).or_default().push(d),
                }
                bit_rotation[b].push(d ^ 1);
            }
            BitTarget::Edge(e) => {
                let Some(x_to_a) = map_dart(2 * e) else {
                    return Err(invalid!("degree-2 bit {} sits on an edge inside a fan", g.bit_label(b)));
                };
                let (x, a) = (reduced.tail(x_to_a), reduced.head(x_to_a));
                let k = hug_count.entry(x_to_a).or_insert(0);
                *k += 1;
                let k = *k;
                gaps.entry(x_to_a ^ 1).or_default().push(((0, k), tanner_dart(b, a)? ^ 1));
                gaps.entry(reduced.pred(x_to_a)).or_default().push(((3, -k), tanner_dart(b, x)? ^ 1));
                bit_rotation[b] = vec![tanner_dart(b, a)?, tanner_dart(b, x)?];
            }
            BitTarget::Face(_) | BitTarget::Fan(_) => {
                let f0 = t.faces()[0];
                let Some(seed) = cg.faces()[f0].darts.iter().find_map(|&d| map_dart(d)) else {
                    return Err(contract!("fan of bit {} has no boundary", g.bit_label(b)));
                };
                let region = &faces[face_of[seed]];
                let k = region.darts.len();
                for i in 0..k {
                    let prev = region.darts[(i + k - 1) % k];
                    let v = reduced.tail(region.darts[i]);
                    gaps.entry(prev ^ 1).or_default().push(((2, 0), tanner_dart(b, v)? ^ 1));
                }
                bit_rotation[b] = region.darts.iter().rev().map(|&d| tanner_dart(b, reduced.tail(d))).collect::<Result<_>>()?;
            }
        }
    }

    let mut rotation: Vec<Vec<usize>> = bit_rotation;
    for c in 0..m {
        let mut rot = Vec::new();
        for &d in reduced.rotation(c) {
            if let Some(items) = gaps.get_mut(&d) {
                items.sort();
                rot.extend(items.iter().map(|&(_, x)| x));
            }
        }
        if let Some(items) = lone.get(&c) {
            rot.extend(items.iter().copied());
        }
        rotation.push(rot);
    }
    let out = Embedding::from_rotation(n + m, g.vertex_edges(), rotation)?;
    if !out.is_planar_embedding() {
        return Err(contract!("placement produced an embedding of genus {}", out.genus()));
    }
    Ok(out)
}
