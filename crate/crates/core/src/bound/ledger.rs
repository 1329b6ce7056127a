//! Per-step change of the realization sum while rewriting the check
//! inverse back into the original graph.

use alloc::vec::Vec;

use super::counting::{q_of_target, Masks};
use super::{alpha_lower, delta, delta_de_lower, SINGULAR_P};
use crate::check::{apply_step, CheckGraph, PlacedGraph, StepKind, TransformStep};
use crate::dual::{all_realizations, find_singular_nodes, tree_params, DualGraph};
use crate::dual::tree::recurrence_from;
use crate::{Ratio, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DeltaEntry {
    pub index: usize,
    pub kind: StepKind,
    /// Change of the summed counted bits, measured by recounting.
    pub measured: i64,
    /// Closed-form value: exact for DS2, a lower bound otherwise.
    pub analytic: Ratio,
    pub exact: bool,
    /// For DE steps: realizations containing the whole fan, and the
    /// closed-form lower bound on that number.
    pub alpha: Option<u64>,
    pub alpha_lower: Option<Ratio>,
    /// For DE steps: measured and closed-form change over the expansion and
    /// the DS steps that freed its faces.
    pub block_measured: Option<i64>,
    pub block_lower: Option<Ratio>,
}

impl DeltaEntry {
    pub fn holds(&self) -> bool {
        let m = Ratio::from_int(self.measured as i128);
        let step_ok = if self.exact { m == self.analytic } else { m >= self.analytic };
        let alpha_ok = match (self.alpha, self.alpha_lower) {
            (Some(a), Some(l)) => Ratio::from_int(a as i128) >= l,
            _ => true,
        };
        let block_ok = match (self.block_measured, self.block_lower) {
            (Some(b), Some(l)) => Ratio::from_int(b as i128) >= l,
            _ => true,
        };
        step_ok && alpha_ok && block_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DeltaLedger {
    pub p: usize,
    pub entries: Vec<DeltaEntry>,
    /// Summed counted bits before the first and after the last step.
    pub w_start: u64,
    pub w_end: u64,
}

impl DeltaLedger {
    pub fn total_measured(&self) -> i64 {
        self.entries.iter().map(|e| e.measured).sum()
    }

    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(DeltaEntry::holds)
    }
}

fn w_sum(h: &PlacedGraph, cg: &CheckGraph, masks: &Masks) -> u64 {
    h.targets().iter().map(|t| q_of_target(cg, t, masks)).sum()
}

/// Replays `steps` from `start`, recording the measured change of the
/// summed counted bits next to its closed form. The check sets do not
/// change, so this is also the change of `Y`.
pub fn delta_ledger(start: &PlacedGraph, steps: &[TransformStep], cg: &CheckGraph, dual: &DualGraph, p: usize) -> Result<DeltaLedger> {
    let params = tree_params(p)?;
    let reals = all_realizations(dual, p)?;
    let masks = Masks::new(dual, cg.m(), &reals);
    let d = delta(p)?;
    let pt = Ratio::from_int((p as u64 * params.t) as i128);

    let mut h = start.clone();
    let w_start = w_sum(&h, cg, &masks);
    // Recurrence numbers and singular checks depend only on the check graph.
    let occ = crate::check::OccupancyTable::default();
    let rec = recurrence_from(dual, p, &reals, &occ);
    let singular_checks: Vec<usize> = if p == SINGULAR_P {
        find_singular_nodes(cg, &occ).patterns.iter().flat_map(|s| [s.interior.0, s.interior.1]).collect()
    } else {
        Vec::new()
    };

    let mut entries = Vec::with_capacity(steps.len());
    let mut w = w_start;
    // Recurrence or singular correction of each DS step.
    let mut corrections: Vec<Ratio> = Vec::with_capacity(steps.len());
    for (index, step) in steps.iter().enumerate() {
        let next = apply_step(&h, step, cg)?;
        let w_next = w_sum(&next, cg, &masks);
        let measured = w_next as i64 - w as i64;
        let mut entry = DeltaEntry {
            index,
            kind: step.kind(),
            measured,
            analytic: Ratio::ZERO,
            exact: false,
            alpha: None,
            alpha_lower: None,
            block_measured: None,
            block_lower: None,
        };
        match step {
            TransformStep::Ds2 { edge, .. } => {
                let r = Ratio::from_int(rec.r[*edge] as i128);
                entry.analytic = d - r;
                entry.exact = true;
                corrections.push(r);
            }
            TransformStep::Ds1 { check, .. } => {
                let s = Ratio::from_int(singular_checks.contains(check) as i128);
                entry.analytic = d - s;
                corrections.push(s);
            }
            TransformStep::De { bit, factor, .. } => {
                let b = next.bit(bit).expect("expanded bit exists");
                let alpha = q_of_target(cg, &next.targets()[b], &masks);
                let al = alpha_lower(*factor, p)?;
                entry.analytic = al - pt;
                entry.alpha = Some(alpha);
                entry.alpha_lower = Some(al);
                // The expansion is preceded by the DS steps freeing its faces.
                let from = index.checked_sub(*factor).filter(|&i| entries[i..].iter().all(|e: &DeltaEntry| e.kind != StepKind::De));
                if let Some(from) = from {
                    let freed: i64 = entries[from..].iter().map(|e| e.measured).sum();
                    let corr = corrections[from..].iter().fold(Ratio::ZERO, |a, &b| a + b);
                    entry.block_measured = Some(freed + measured);
                    entry.block_lower = Some(delta_de_lower(*factor, p)? - corr);
                }
                corrections.push(Ratio::ZERO);
            }
        }
        entries.push(entry);
        h = next;
        w = w_next;
    }
    Ok(DeltaLedger { p, entries, w_start, w_end: w })
}
