//! End-to-end bound certification for one planar Tanner graph.

use alloc::string::String;
use alloc::vec::Vec;

use super::counting::{compute_y, YBreakdown};
use super::search::{find_codeword_supporting, prelude_bound, scan_connected_sets, scan_singular_patterns, FoundSet, PreludeResult};
use super::{bound_for_p, p_of_rate, x_term, SINGULAR_P};
use crate::check::{build_check_graph, build_check_inverse, CheckGraphBuild};
use crate::dual::{build_dual, tree_params, DualGraph, ParallelEdges};
use crate::embed::{test_planarity, Embedding, Planarity};
use crate::gf2;
use crate::{BitVector, Error, Ratio, Result, TannerGraph};

/// Largest number of weight-limited candidate supports the last-resort
/// search may visit.
const EXHAUSTIVE_BUDGET: u128 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum BoundStatus {
    Certified,
    /// The rate is below 9/16; no bound is claimed.
    OutOfScope,
    /// In range, but no verified witness was produced.
    NotCertifiable,
}

/// How the witness was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum WitnessPath {
    /// A bit with no checks is a codeword on its own.
    DegreeZero,
    /// Two bits with the same neighborhood.
    DuplicateBits,
    /// The heaviest face at rate 7/8 and above.
    Prelude,
    /// A complete 3-graph on `p` nodes.
    Realization,
    /// The four faces of a singular pattern.
    SingularPattern,
    /// Some other connected set of at most `p` faces.
    ConnectedSet,
    /// A weight-limited search over all supports.
    Exhaustive,
    /// The full check set, for graphs with fewer than three checks.
    AllChecks,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Witness {
    pub faces: Vec<usize>,
    pub checks: Vec<usize>,
    pub codeword: BitVector,
    pub weight: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Diagnostics {
    pub girth: Option<usize>,
    pub required_girth: Option<usize>,
    pub parallel_dual_edges: Option<ParallelEdges>,
    pub x: Option<Ratio>,
    pub y: Option<YBreakdown>,
    pub singular: Option<usize>,
    pub prelude: Option<PreludeResult>,
    /// Face weights of the check inverse at rate 7/8 and above, when the
    /// graph itself has bits of degree above three.
    pub inverse_prelude: Option<PreludeResult>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub design_rate: Ratio,
    pub true_rate: Ratio,
    pub p: Option<usize>,
    /// The claimed `d ≤ bound`; set only when certified.
    pub bound: Option<usize>,
    /// `p + 3` from the rate, whether or not certified.
    pub rate_bound: Option<usize>,
    pub status: BoundStatus,
    pub certified: bool,
    pub path: Option<WitnessPath>,
    /// The witness set is not a complete 3-graph.
    pub outside_family: bool,
    pub witness: Option<Witness>,
    pub reason: Option<String>,
    pub diagnostics: Diagnostics,
}

impl BoundReport {
    /// Re-checks the witness against the parity-check matrix.
    pub fn witness_is_valid(&self, g: &TannerGraph) -> bool {
        match (&self.witness, self.bound) {
            (Some(w), Some(b)) => {
                let wt = w.codeword.weight();
                wt > 0 && wt <= b && wt == w.weight && w.codeword.len() == g.n() && g.parity_check_matrix().mul_vec(&w.codeword).is_zero()
            }
            _ => !self.certified,
        }
    }
}

/// Finds a planar embedding and certifies a bound.
pub fn certify_graph(g: &TannerGraph) -> Result<BoundReport> {
    let emb = g.planar_embedding()?;
    certify_bound(g, &emb)
}

/// Runs the whole pipeline: degree-0 and duplicate-bit shortcuts, then the
/// rate-dependent search, and accepts only witnesses that satisfy every
/// check with weight at most the bound.
pub fn certify_bound(g: &TannerGraph, emb: &Embedding) -> Result<BoundReport> {
    if let Err(e) = g.validate_embedding(emb) {
        if let Planarity::NonPlanar(cert) = test_planarity(g.n() + g.m(), &g.vertex_edges())? {
            return Err(Error::NonPlanar(cert));
        }
        return Err(e);
    }
    let summary = g.code_summary(false)?;
    let design_rate = g.design_rate();
    let p = p_of_rate(design_rate).ok();
    let mut report = BoundReport {
        n: g.n(),
        m: g.m(),
        design_rate,
        true_rate: summary.true_rate,
        p,
        bound: None,
        rate_bound: p.map(bound_for_p),
        status: BoundStatus::NotCertifiable,
        certified: false,
        path: None,
        outside_family: false,
        witness: None,
        reason: None,
        diagnostics: Diagnostics::default(),
    };

    if let Some(b) = (0..g.n()).find(|&b| g.bit_degree(b) == 0) {
        let x = BitVector::from_support(g.n(), [b]);
        accept(&mut report, g, 1, WitnessPath::DegreeZero, Vec::new(), Vec::new(), x, true);
        return Ok(report);
    }
    if let Some((a, b)) = g.duplicate_bits() {
        let x = BitVector::from_support(g.n(), [a, b]);
        accept(&mut report, g, 2, WitnessPath::DuplicateBits, Vec::new(), g.neighborhood(a), x, true);
        return Ok(report);
    }
    if design_rate < Ratio::new(9, 16) {
        report.status = BoundStatus::OutOfScope;
        report.reason = Some(alloc::format!("design rate {design_rate} is below 9/16"));
        return Ok(report);
    }
    let p = p.expect("rate above 1/2");
    let bound = bound_for_p(p);
    if g.m() < 3 {
        let checks: Vec<usize> = (0..g.m()).collect();
        let x = g.extract_low_weight_codeword(&checks)?;
        accept(&mut report, g, bound, WitnessPath::AllChecks, Vec::new(), checks, x, true);
        return Ok(report);
    }

    let CheckGraphBuild { check_graph: cg, identification: ident, .. } = build_check_graph(g, emb)?;
    let dual = build_dual(&cg)?;
    let girth = dual.girth();
    report.diagnostics.girth = girth;
    report.diagnostics.parallel_dual_edges = dual.detect_multi_edges();
    let occ = ident.occupancy();

    if p == 0 {
        if g.max_bit_degree() <= 3 {
            let pre = prelude_bound(g, &cg)?;
            if pre.certifies_three() {
                let x = pre.codeword.clone().expect("certified prelude has a codeword");
                accept(&mut report, g, bound, WitnessPath::Prelude, alloc::vec![pre.face], pre.checks.clone(), x, true);
            }
            report.diagnostics.prelude = Some(pre);
        } else {
            match build_check_inverse(g, &cg, &ident) {
                Ok(inv) => report.diagnostics.inverse_prelude = prelude_bound(&inv.graph, &cg).ok(),
                Err(e) => report.diagnostics.notes.push(alloc::format!("check inverse unavailable: {e}")),
            }
            if let Some((faces, checks, x)) = light_face(g, &dual, bound) {
                accept(&mut report, g, bound, WitnessPath::Prelude, faces, checks, x, true);
            }
        }
        if !report.certified {
            fallback(&mut report, g, &dual, bound, 1);
        }
        return Ok(report);
    }

    let params = tree_params(p)?;
    let required = params.required_girth();
    report.diagnostics.required_girth = Some(required);
    report.diagnostics.x = Some(x_term(g.n(), g.m(), p)?);
    let girth_ok = girth.is_some_and(|gi| gi >= required);
    if !girth_ok && p > SINGULAR_P {
        report.reason = Some(match girth {
            Some(gi) => alloc::format!("dual girth {gi} is below {required}, needed for p = {p}"),
            None => alloc::format!("dual is acyclic; girth {required} needed for p = {p}"),
        });
        return Ok(report);
    }
    if girth_ok {
        report.diagnostics.y = compute_y(g, &cg, &ident, &dual, p).ok();
        report.diagnostics.singular = report.diagnostics.y.as_ref().map(|y| y.singular);
        if let Some(found) = find_codeword_supporting(g, &dual, p)? {
            try_found(&mut report, g, bound, WitnessPath::Realization, found, true);
        }
    } else {
        report.diagnostics.notes.push(String::from("dual has parallel edges; complete 3-graphs skipped"));
    }
    if !report.certified && p == SINGULAR_P {
        if let Some(found) = scan_singular_patterns(g, &cg, &dual, &occ) {
            try_found(&mut report, g, bound, WitnessPath::SingularPattern, found, true);
        }
    }
    if !report.certified {
        fallback(&mut report, g, &dual, bound, p);
    }
    Ok(report)
}

fn light_face(g: &TannerGraph, dual: &DualGraph, bound: usize) -> Option<(Vec<usize>, Vec<usize>, BitVector)> {
    for f in 0..dual.vertex_count() {
        let checks: Vec<usize> = dual.corners(f).to_vec();
        let induced = g.induced_bits(&checks).ok()?;
        if induced.is_empty() {
            continue;
        }
        if let Some(x) = super::search::lightest_on(g, &checks, &induced) {
            if x.weight() <= bound {
                return Some((alloc::vec![f], checks, x));
            }
        }
    }
    None
}

fn fallback(report: &mut BoundReport, g: &TannerGraph, dual: &DualGraph, bound: usize, max_faces: usize) {
    if let Some(found) = scan_connected_sets(g, dual, max_faces) {
        try_found(report, g, bound, WitnessPath::ConnectedSet, found, false);
    }
    if report.certified {
        return;
    }
    let budget: u128 = (1..=bound.min(g.n())).map(|w| binomial(g.n() as u128, w as u128)).sum();
    if budget > EXHAUSTIVE_BUDGET {
        report.reason = Some(alloc::format!("no witness among structured sets; exhaustive search over {budget} supports skipped"));
        return;
    }
    match gf2::min_weight_codeword_bounded(&g.parity_check_matrix(), bound) {
        Some(x) => accept(report, g, bound, WitnessPath::Exhaustive, Vec::new(), Vec::new(), x, false),
        None => report.reason = Some(alloc::format!("no codeword of weight at most {bound}")),
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn try_found(report: &mut BoundReport, g: &TannerGraph, bound: usize, path: WitnessPath, found: FoundSet, in_family: bool) {
    match g.extract_low_weight_codeword(&found.checks) {
        Ok(x) => accept(report, g, bound, path, found.faces, found.checks, x, in_family),
        Err(e) => report.diagnostics.notes.push(alloc::format!("extraction failed for {path:?}: {e}")),
    }
}

#[allow(clippy::too_many_arguments)]
fn accept(report: &mut BoundReport, g: &TannerGraph, bound: usize, path: WitnessPath, faces: Vec<usize>, checks: Vec<usize>, x: BitVector, in_family: bool) {
    let weight = x.weight();
    if weight == 0 || weight > bound || !g.parity_check_matrix().mul_vec(&x).is_zero() {
        report.diagnostics.notes.push(alloc::format!("{path:?} witness of weight {weight} rejected"));
        return;
    }
    report.status = BoundStatus::Certified;
    report.certified = true;
    report.bound = Some(bound);
    report.path = Some(path);
    report.outside_family = !in_family;
    report.reason = None;
    report.witness = Some(Witness { faces, checks, codeword: x, weight });
}
