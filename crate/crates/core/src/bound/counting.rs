//! Realization counts: how many complete 3-graphs see each bit, and the
//! summed excess of induced bits over checks.

use alloc::vec;
use alloc::vec::Vec;

use super::{theta_count, x_term, SINGULAR_P};
use crate::check::{BitTarget, CheckGraph, IdentificationMap};
use crate::dual::{all_realizations, recurrence_table, tree_params, find_singular_nodes, DualGraph, Realization};
use crate::{Ratio, Result, TannerGraph};

/// Face-membership masks of a list of realizations.
pub(crate) struct Masks {
    pub faces: Vec<Vec<bool>>,
    pub checks: Vec<Vec<bool>>,
}

impl Masks {
    pub fn new(dual: &DualGraph, m: usize, reals: &[Realization]) -> Self {
        let mut faces = Vec::with_capacity(reals.len());
        let mut checks = Vec::with_capacity(reals.len());
        for r in reals {
            let mut f = vec![false; dual.vertex_count()];
            let mut c = vec![false; m];
            for &v in &r.vertices {
                f[v] = true;
                for x in dual.corners(v) {
                    c[x] = true;
                }
            }
            faces.push(f);
            checks.push(c);
        }
        Masks { faces, checks }
    }
}

/// True when a bit with this target is counted for the face set `in_u`:
/// its face (all of its fan) lies in the set, an endpoint face of its edge
/// does, or some face around its check does.
pub(crate) fn identified_in(cg: &CheckGraph, target: &BitTarget, in_u: &[bool]) -> bool {
    match target {
        BitTarget::Isolated => true,
        BitTarget::Vertex(c) => cg.embedding().rotation(*c).iter().any(|&d| in_u[cg.face_of_dart(d)]),
        BitTarget::Edge(e) => {
            let (a, b) = cg.edge_faces(*e);
            in_u[a] || in_u[b]
        }
        BitTarget::Face(f) => in_u[*f],
        BitTarget::Fan(fs) => fs.iter().all(|&f| in_u[f]),
    }
}

/// Number of realizations (over all roots) that count a bit with this
/// target.
pub(crate) fn q_of_target(cg: &CheckGraph, target: &BitTarget, masks: &Masks) -> u64 {
    masks.faces.iter().filter(|m| identified_in(cg, target, m)).count() as u64
}

/// Number of complete 3-graphs on `p` nodes that count bit `b` of the
/// identification: a degree-3 bit is counted when its face is in the
/// set, a degree-2 bit when either face of its edge is, a degree-1 bit when
/// any face around its check is.
pub fn q_of_bit(b: usize, cg: &CheckGraph, ident: &IdentificationMap, dual: &DualGraph, p: usize) -> Result<u64> {
    let reals = all_realizations(dual, p)?;
    let masks = Masks::new(dual, cg.m(), &reals);
    Ok(q_of_target(cg, ident.target(b), &masks))
}

/// Sums over every complete 3-graph `U` on `p` nodes (all roots, all
/// realizations) together with their closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct YBreakdown {
    pub p: usize,
    pub t: u64,
    pub realizations: usize,
    /// Counted degree-1, degree-2, degree-3 and higher-degree bits, summed
    /// over realizations.
    pub eta1: u64,
    pub eta2: u64,
    pub eta3: u64,
    pub eta_high: u64,
    /// `eta1 + eta2 + eta3 + eta_high` (plus degree-0 bits).
    pub w_sum: u64,
    /// Sum of `|I(V^c_U)|`, the bits truly induced by each check set.
    pub w_induced_sum: u64,
    /// Sum of `|V^c_U|`.
    pub vc_sum: u64,
    /// Sum of `c(U)`.
    pub cycle_sum: u64,
    /// `w_sum - vc_sum`.
    pub y: i64,
    /// `w_induced_sum - vc_sum`; never below `y`.
    pub y_induced: i64,
    /// `(2m - 4) p t` evaluated with the number of degree-3 bits.
    pub eta3_formula: u64,
    /// `|V_2| θ(p) - Σ r(e)` over the edges of degree-2 bits.
    pub eta2_formula: i64,
    /// `|V_1| θ(p) - s_G` (the singular correction applies at `p = 4`).
    pub eta1_lower: i64,
    /// Rate-driven term `θ(p)(n - (2m - 4)) - 2t(2m - 4)`.
    pub x: Ratio,
    pub recurrence_total: u64,
    pub unoccupied_recurrence: u64,
    pub singular: usize,
    /// `x + Σ_{unoccupied} r - s_G`, a lower bound on `y` for graphs of
    /// maximum bit degree three with distinct bit neighborhoods.
    pub y_lower: Ratio,
}

/// The summed excess `Y = Σ_U (W_U - |V^c_U|)` over complete 3-graphs on
/// `p` nodes, counted directly and by closed forms.
pub fn compute_y(g: &TannerGraph, cg: &CheckGraph, ident: &IdentificationMap, dual: &DualGraph, p: usize) -> Result<YBreakdown> {
    let params = tree_params(p)?;
    let reals = all_realizations(dual, p)?;
    let masks = Masks::new(dual, g.m(), &reals);
    let occ = ident.occupancy();
    let rec = recurrence_table(dual, p, &occ)?;
    let singular = find_singular_nodes(cg, &occ);

    let mut eta = [0u64; 4];
    let mut w_induced_sum = 0u64;
    let mut vc_sum = 0u64;
    let mut cycle_sum = 0u64;
    let mut deg0 = 0u64;
    for (i, r) in reals.iter().enumerate() {
        vc_sum += masks.checks[i].iter().filter(|&&x| x).count() as u64;
        w_induced_sum += g.induced_count_by_mask(&masks.checks[i]) as u64;
        cycle_sum += r.cycle_count() as u64;
        for b in 0..g.n() {
            if identified_in(cg, ident.target(b), &masks.faces[i]) {
                match g.bit_degree(b) {
                    0 => deg0 += 1,
                    1 => eta[0] += 1,
                    2 => eta[1] += 1,
                    3 => eta[2] += 1,
                    _ => eta[3] += 1,
                }
            }
        }
    }
    let w_sum = eta.iter().sum::<u64>() + deg0;
    let th = theta_count(p)?;
    let t = params.t;
    let n1 = g.bits_of_degree(1).len() as i64;
    let n2 = g.bits_of_degree(2).len() as i64;
    let n3 = g.bits_of_degree(3).len() as u64;
    let r_on_deg2: u64 = g
        .bits_of_degree(2)
        .iter()
        .filter_map(|&b| match ident.target(b) {
            BitTarget::Edge(e) => Some(rec.r[*e]),
            _ => None,
        })
        .sum();
    let s = if p == SINGULAR_P { singular.count() as i64 } else { 0 };
    let x = x_term(g.n(), g.m(), p)?;
    let y_lower = x + Ratio::from_int(rec.unoccupied_total() as i128) - Ratio::from_int(s as i128);
    Ok(YBreakdown {
        p,
        t,
        realizations: reals.len(),
        eta1: eta[0],
        eta2: eta[1],
        eta3: eta[2],
        eta_high: eta[3],
        w_sum,
        w_induced_sum,
        vc_sum,
        cycle_sum,
        y: w_sum as i64 - vc_sum as i64,
        y_induced: w_induced_sum as i64 - vc_sum as i64,
        eta3_formula: n3 * p as u64 * t,
        eta2_formula: n2 * th as i64 - r_on_deg2 as i64,
        eta1_lower: n1 * th as i64 - s,
        x,
        recurrence_total: rec.total(),
        unoccupied_recurrence: rec.unoccupied_total(),
        singular: singular.count(),
        y_lower,
    })
}
