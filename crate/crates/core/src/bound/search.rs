//! Searches for check sets that induce more bits than they contain.

use alloc::vec;
use alloc::vec::Vec;

use crate::check::{CheckGraph, OccupancyTable};
use crate::dual::{find_singular_nodes, tree_params, DualGraph};
use crate::dual::tree::{check_girth, realizations_at};
use crate::error::contract;
use crate::gf2::{self, FULL_ENUMERATION_MAX_DIM};
use crate::{BitVector, Result, TannerGraph};

/// A codeword-supporting set of dual vertices and what it induces.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FoundSet {
    /// Root of the realization, when the set came from one.
    pub root: Option<usize>,
    pub faces: Vec<usize>,
    pub checks: Vec<usize>,
    pub induced: Vec<usize>,
}

impl FoundSet {
    fn from_faces(g: &TannerGraph, dual: &DualGraph, root: Option<usize>, faces: Vec<usize>) -> Self {
        let checks: Vec<usize> = dual.check_set(&faces).into_iter().collect();
        let mut inside = vec![false; g.m()];
        for &c in &checks {
            inside[c] = true;
        }
        let induced = g.induced_by_mask(&inside);
        FoundSet { root, faces, checks, induced }
    }

    pub fn is_supporting(&self) -> bool {
        self.induced.len() > self.checks.len()
    }
}

/// Lightest nonzero codeword supported on `cols` that satisfies the checks
/// `rows` (and hence every check, when `cols` are induced by `rows`).
pub(crate) fn lightest_on(g: &TannerGraph, rows: &[usize], cols: &[usize]) -> Option<BitVector> {
    let h = g.parity_check_matrix();
    let mut cols = cols.to_vec();
    let mut basis = h.select(rows, &cols).kernel_basis();
    if basis.len() > FULL_ENUMERATION_MAX_DIM {
        cols.truncate(rows.len() + 1);
        basis = h.select(rows, &cols).kernel_basis();
    }
    let local = if basis.len() > FULL_ENUMERATION_MAX_DIM { basis.swap_remove(0) } else { gf2::min_weight_in_span(&basis)? };
    Some(BitVector::from_support(g.n(), local.support().into_iter().map(|i| cols[i])))
}

/// Scans every complete 3-graph on `p` nodes (roots ascending, then
/// realizations in enumeration order) and returns the first whose check set
/// induces more bits than it has checks.
pub fn find_codeword_supporting(g: &TannerGraph, dual: &DualGraph, p: usize) -> Result<Option<FoundSet>> {
    let params = tree_params(p)?;
    check_girth(&params, dual.girth())?;
    let mut inside = vec![false; g.m()];
    for root in 0..dual.vertex_count() {
        for r in realizations_at(dual, root, &params) {
            inside.iter_mut().for_each(|x| *x = false);
            let mut count = 0;
            for &f in &r.vertices {
                for c in dual.corners(f) {
                    if !inside[c] {
                        inside[c] = true;
                        count += 1;
                    }
                }
            }
            if g.induced_count_by_mask(&inside) > count {
                let mut faces = r.vertices.clone();
                faces.sort_unstable();
                return Ok(Some(FoundSet::from_faces(g, dual, Some(root), faces)));
            }
        }
    }
    Ok(None)
}

/// Checks the four-face set of every singular pattern, the configuration
/// that guarantees a codeword-supporting set on four nodes when the
/// recurrence surplus is too small.
pub fn scan_singular_patterns(g: &TannerGraph, cg: &CheckGraph, dual: &DualGraph, occ: &OccupancyTable) -> Option<FoundSet> {
    find_singular_nodes(cg, occ)
        .patterns
        .into_iter()
        .map(|pat| FoundSet::from_faces(g, dual, None, pat.faces))
        .find(FoundSet::is_supporting)
}

/// First connected dual vertex set of size at most `max_size` (in
/// [`DualGraph::connected_sets`] order) that is codeword-supporting.
pub fn scan_connected_sets(g: &TannerGraph, dual: &DualGraph, max_size: usize) -> Option<FoundSet> {
    dual.connected_sets(max_size)
        .into_iter()
        .map(|u| FoundSet::from_faces(g, dual, None, u))
        .find(FoundSet::is_supporting)
}

/// Face-averaging at rate 7/8 and above.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PreludeResult {
    /// `w_i = |I(V^c(f_i))|` for every face.
    pub weights: Vec<usize>,
    /// The first face of maximum weight.
    pub face: usize,
    pub checks: Vec<usize>,
    pub induced: Vec<usize>,
    /// Lightest codeword on the face's checks, when it has at least four
    /// induced bits.
    pub codeword: Option<BitVector>,
}

impl PreludeResult {
    pub fn max_weight(&self) -> usize {
        self.weights[self.face]
    }

    /// Five induced bits on three checks force a codeword of weight at most
    /// three.
    pub fn certifies_three(&self) -> bool {
        self.codeword.as_ref().is_some_and(|x| x.weight() <= 3)
    }
}

/// Finds the face whose three checks induce the most bits. Every bit of
/// degree at most three is induced by some face, so `Σ w_i ≥ n` and one
/// face carries at least `n / (2m - 4)` bits.
pub fn prelude_bound(g: &TannerGraph, cg: &CheckGraph) -> Result<PreludeResult> {
    if g.max_bit_degree() > 3 {
        return Err(contract!("face averaging needs maximum bit degree 3, found {}", g.max_bit_degree()));
    }
    let mut weights = Vec::with_capacity(cg.face_count());
    let mut inside = vec![false; g.m()];
    for f in 0..cg.face_count() {
        let corners = cg.face_corners(f);
        for c in corners {
            inside[c] = true;
        }
        weights.push(g.induced_count_by_mask(&inside));
        for c in corners {
            inside[c] = false;
        }
    }
    let best = weights.iter().copied().max().unwrap_or(0);
    let face = weights.iter().position(|&w| w == best).unwrap_or(0);
    let checks = cg.face_corners(face).to_vec();
    let induced = g.induced_bits(&checks)?;
    let codeword = if induced.len() > checks.len() {
        // Five columns on three rows already give a codeword of weight <= 3.
        let cols: Vec<usize> = induced.iter().copied().take(5).collect();
        lightest_on(g, &checks, &cols)
    } else {
        None
    };
    Ok(PreludeResult { weights, face, checks, induced, codeword })
}
