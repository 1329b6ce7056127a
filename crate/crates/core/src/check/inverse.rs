//! The check inverse: a graph of maximum bit degree three sharing the
//! check graph.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{BitTarget, CheckGraph, IdentificationMap};
use crate::embed::Embedding;
use crate::error::invalid;
use crate::placement::embed_placement;
use crate::{Error, Ratio, Result, TannerGraph};

/// A check inverse together with its drawing over the shared check graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckInverse {
    pub graph: TannerGraph,
    pub targets: Vec<BitTarget>,
    pub embedding: Embedding,
    /// Ids in the original graph of the retained degree-1 and degree-2 bits,
    /// in the order they appear after the face bits.
    pub retained: Vec<usize>,
}

/// One degree-3 bit per face of `cg` (labelled `f1`, `f2`, ... in face
/// order), followed by the lowest-id degree-1 and degree-2 bits of `g`,
/// `n - (2m - 4)` of them, attached as in `g`.
pub fn build_check_inverse(g: &TannerGraph, cg: &CheckGraph, ident: &IdentificationMap) -> Result<CheckInverse> {
    let n = g.n();
    if g.design_rate() <= Ratio::new(1, 2) {
        return Err(Error::UnsupportedRate(format!("check inverse needs design rate above 1/2, got {}", g.design_rate())));
    }
    if !g.bits_of_degree(0).is_empty() {
        return Err(invalid!("check inverse is undefined with degree-0 bits"));
    }
    let faces = cg.face_count();
    let wanted = n - faces;
    let low: Vec<usize> = (0..n).filter(|&b| matches!(g.bit_degree(b), 1 | 2)).collect();
    if low.len() < wanted {
        return Err(invalid!("only {} degree-1/2 bits, {wanted} needed", low.len()));
    }
    let retained: Vec<usize> = low[..wanted].to_vec();

    let taken: BTreeSet<&str> = retained.iter().map(|&b| g.bit_label(b)).collect();
    let mut labels: Vec<String> = Vec::with_capacity(n);
    let mut edges = Vec::new();
    let mut targets = Vec::with_capacity(n);
    for f in 0..faces {
        let mut label = format!("f{}", f + 1);
        while taken.contains(label.as_str()) {
            label.push('\'');
        }
        labels.push(label);
        for c in cg.face_corners(f) {
            edges.push((f, c));
        }
        targets.push(BitTarget::Face(f));
    }
    for (i, &b) in retained.iter().enumerate() {
        labels.push(String::from(g.bit_label(b)));
        for &c in g.bit_neighbors(b) {
            edges.push((faces + i, c));
        }
        targets.push(ident.target(b).clone());
    }
    let graph = TannerGraph::with_labels(labels, g.check_labels().to_vec(), edges)?;
    let embedding = embed_placement(&graph, cg, &targets)?;
    Ok(CheckInverse { graph, targets, embedding, retained })
}
