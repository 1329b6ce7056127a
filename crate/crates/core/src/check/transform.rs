//! Degree-shrinking and degree-expansion rewrites over a fixed check graph.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::{BitTarget, CheckGraph, CheckInverse, IdentificationMap};
use crate::error::contract;
use crate::{Error, Result, TannerGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum StepKind {
    Ds1,
    Ds2,
    De,
}

/// One rewrite. Bits are named by label.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum TransformStep {
    /// Remove the degree-3 bit on `face`; add a degree-1 bit at `check`.
    Ds1 { removed: String, face: usize, added: String, check: usize },
    /// Remove the degree-3 bit on `face`; add a degree-2 bit on `edge`.
    Ds2 { removed: String, face: usize, added: String, edge: usize },
    /// Grow the degree-3 bit `bit` into the empty faces `consumed`.
    De { bit: String, consumed: Vec<usize>, factor: usize },
}

impl TransformStep {
    pub fn kind(&self) -> StepKind {
        match self {
            TransformStep::Ds1 { .. } => StepKind::Ds1,
            TransformStep::Ds2 { .. } => StepKind::Ds2,
            TransformStep::De { .. } => StepKind::De,
        }
    }
}

/// A Tanner graph described by what each bit is identified with in a
/// fixed check graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlacedGraph {
    labels: Vec<String>,
    check_labels: Vec<String>,
    targets: Vec<BitTarget>,
}

impl PlacedGraph {
    pub fn new(g: &TannerGraph, targets: Vec<BitTarget>) -> Self {
        PlacedGraph { labels: g.bit_labels().to_vec(), check_labels: g.check_labels().to_vec(), targets }
    }

    pub fn from_check_inverse(inv: &CheckInverse) -> Self {
        Self::new(&inv.graph, inv.targets.clone())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn targets(&self) -> &[BitTarget] {
        &self.targets
    }

    pub fn bit(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Sorted check neighborhood of bit `b`.
    pub fn neighborhood(&self, cg: &CheckGraph, b: usize) -> Vec<usize> {
        match &self.targets[b] {
            BitTarget::Isolated => Vec::new(),
            BitTarget::Vertex(c) => alloc::vec![*c],
            BitTarget::Edge(e) => {
                let (u, v) = cg.edge_endpoints(*e);
                alloc::vec![u.min(v), u.max(v)]
            }
            t => cg.corner_union(t.faces()).into_iter().collect(),
        }
    }

    /// The Tanner graph, each bit joined to its checks in ascending order.
    pub fn to_tanner(&self, cg: &CheckGraph) -> Result<TannerGraph> {
        let edges = (0..self.labels.len()).flat_map(|b| self.neighborhood(cg, b).into_iter().map(move |c| (b, c))).collect();
        TannerGraph::with_labels(self.labels.clone(), self.check_labels.clone(), edges)
    }

    /// Sorted list of all bit neighborhoods.
    pub fn neighborhood_profile(&self, cg: &CheckGraph) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = (0..self.labels.len()).map(|b| self.neighborhood(cg, b)).collect();
        v.sort();
        v
    }

    fn occupied_faces(&self) -> BTreeSet<usize> {
        self.targets.iter().flat_map(|t| t.faces().iter().copied()).collect()
    }

    fn fan_interior(&self, cg: &CheckGraph, e: usize) -> bool {
        let (a, b) = cg.edge_faces(e);
        self.targets.iter().any(|t| matches!(t, BitTarget::Fan(fs) if fs.contains(&a) && fs.contains(&b)))
    }
}

/// Sorted neighborhoods of every bit of `g`.
pub fn neighborhood_profile(g: &TannerGraph) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = (0..g.n()).map(|b| g.neighborhood(b)).collect();
    v.sort();
    v
}

fn step_err(msg: String) -> Error {
    Error::InvalidStep(msg)
}

/// Applies one rewrite. The check graph is unchanged by every step.
pub fn apply_step(h: &PlacedGraph, step: &TransformStep, cg: &CheckGraph) -> Result<PlacedGraph> {
    let mut out = h.clone();
    match step {
        TransformStep::Ds1 { removed, face, added, .. } | TransformStep::Ds2 { removed, face, added, .. } => {
            let b = h.bit(removed).ok_or_else(|| step_err(alloc::format!("no bit {removed}")))?;
            if h.targets[b] != BitTarget::Face(*face) {
                return Err(step_err(alloc::format!("bit {removed} is not a degree-3 bit on face {face}")));
            }
            if h.bit(added).is_some() {
                return Err(step_err(alloc::format!("bit {added} already exists")));
            }
            let target = match step {
                TransformStep::Ds1 { check, .. } => {
                    if *check >= cg.m() {
                        return Err(step_err(alloc::format!("no check {check}")));
                    }
                    BitTarget::Vertex(*check)
                }
                TransformStep::Ds2 { edge, .. } => {
                    if *edge >= cg.edge_count() {
                        return Err(step_err(alloc::format!("no check-graph edge {edge}")));
                    }
                    if h.fan_interior(cg, *edge) {
                        return Err(step_err(alloc::format!("edge {edge} lies inside a fan")));
                    }
                    BitTarget::Edge(*edge)
                }
                TransformStep::De { .. } => unreachable!(),
            };
            out.labels.remove(b);
            out.targets.remove(b);
            out.labels.push(added.clone());
            out.targets.push(target);
        }
        TransformStep::De { bit, consumed, factor } => {
            let b = h.bit(bit).ok_or_else(|| step_err(alloc::format!("no bit {bit}")))?;
            let BitTarget::Face(f0) = h.targets[b] else {
                return Err(step_err(alloc::format!("bit {bit} is not a degree-3 bit")));
            };
            if consumed.len() != *factor || *factor == 0 {
                return Err(step_err(alloc::format!("expansion factor {factor} with {} faces", consumed.len())));
            }
            let occupied = h.occupied_faces();
            let mut all: Vec<usize> = consumed.clone();
            all.push(f0);
            all.sort_unstable();
            all.dedup();
            if all.len() != factor + 1 || consumed.iter().any(|f| *f >= cg.face_count() || occupied.contains(f)) {
                return Err(step_err(alloc::format!("faces {consumed:?} are not distinct empty faces")));
            }
            if !cg.faces_edge_connected(&all) || cg.corner_union(&all).len() != factor + 3 {
                return Err(step_err(alloc::format!("faces {all:?} do not form a fan")));
            }
            out.targets[b] = BitTarget::Fan(all);
        }
    }
    Ok(out)
}

/// Rewrites carrying the check inverse back to `g` over the shared check
/// graph.
///
/// The degree-1/2 bits of `g` that the inverse dropped are restored in id
/// order, first onto faces that are empty in `g`, then onto the extra faces
/// of fan bits. Steps for empty faces come first; then, for each fan bit in
/// order of (expansion factor, id), its face-freeing steps followed by the
/// expansion.
pub fn transform_sequence(inverse: &CheckInverse, g: &TannerGraph, cg: &CheckGraph, ident: &IdentificationMap) -> Result<Vec<TransformStep>> {
    let faces = cg.face_count();
    if inverse.graph.n() != g.n() || inverse.targets.len() != g.n() || inverse.retained.len() + faces != g.n() {
        return Err(contract!("inverse does not belong to this graph"));
    }
    let kept: BTreeSet<usize> = inverse.retained.iter().copied().collect();
    let dropped: Vec<usize> = (0..g.n()).filter(|&b| matches!(g.bit_degree(b), 1 | 2) && !kept.contains(&b)).collect();

    let mut fans: Vec<(usize, usize, &[usize])> = Vec::new();
    for b in 0..g.n() {
        if let BitTarget::Fan(fs) = ident.target(b) {
            fans.push((fs.len() - 1, b, fs));
        }
    }
    fans.sort();
    let empty = ident.empty_faces();
    let slots: Vec<usize> = empty.iter().copied().chain(fans.iter().flat_map(|(_, _, fs)| fs[1..].iter().copied())).collect();
    if slots.len() != dropped.len() {
        return Err(contract!("{} faces to free but {} bits to restore", slots.len(), dropped.len()));
    }
    let face_label = |f: usize| inverse.graph.bit_label(f);
    let ds = |slot: usize| -> Result<TransformStep> {
        let f = slots[slot];
        let b = dropped[slot];
        let removed = String::from(face_label(f));
        let added = String::from(g.bit_label(b));
        match ident.target(b) {
            BitTarget::Vertex(c) => Ok(TransformStep::Ds1 { removed, face: f, added, check: *c }),
            BitTarget::Edge(e) => Ok(TransformStep::Ds2 { removed, face: f, added, edge: *e }),
            t => Err(contract!("dropped bit {} has target {t:?}", g.bit_label(b))),
        }
    };
    let mut steps = Vec::new();
    for slot in 0..empty.len() {
        steps.push(ds(slot)?);
    }
    let mut slot = empty.len();
    for (x, _, fs) in &fans {
        for _ in 0..*x {
            steps.push(ds(slot)?);
            slot += 1;
        }
        steps.push(TransformStep::De { bit: String::from(face_label(fs[0])), consumed: fs[1..].to_vec(), factor: *x });
    }
    Ok(steps)
}
