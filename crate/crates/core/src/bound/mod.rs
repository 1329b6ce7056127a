//! Rate-driven distance bounds: the closed forms, the codeword-supporting
//! search and the end-to-end certification.

mod certify;
mod counting;
mod ledger;
mod search;

pub use certify::{certify_bound, certify_graph, BoundReport, BoundStatus, Diagnostics, Witness, WitnessPath};
pub use counting::{compute_y, q_of_bit, YBreakdown};
pub use ledger::{delta_ledger, DeltaEntry, DeltaLedger};
pub use search::{find_codeword_supporting, prelude_bound, scan_connected_sets, scan_singular_patterns, FoundSet, PreludeResult};

use crate::dual::tree_params;
use crate::error::contract;
use crate::{Error, Ratio, Result};

/// The only `p` at which singular degree-1 bits lose a realization.
pub const SINGULAR_P: usize = 4;

/// `⌈(7 - 8R) / (2(2R - 1))⌉`, clamped at zero.
pub fn p_of_rate(rate: Ratio) -> Result<usize> {
    let half = Ratio::new(1, 2);
    if rate <= half {
        return Err(Error::UnsupportedRate(alloc::format!("R = {rate} is not above 1/2")));
    }
    let two = Ratio::from_int(2);
    let v = (Ratio::from_int(7) - Ratio::from_int(8) * rate) / (two * (two * rate - Ratio::ONE));
    Ok(v.ceil().max(0) as usize)
}

/// The distance bound `p + 3`; also 3 at `p = 0`.
pub fn bound_for_p(p: usize) -> usize {
    p + 3
}

/// Bound implied by a design rate.
pub fn bound_for_rate(rate: Ratio) -> Result<usize> {
    p_of_rate(rate).map(bound_for_p)
}

fn t_of(p: usize) -> Result<Ratio> {
    Ok(Ratio::from_int(tree_params(p)?.t as i128))
}

/// `θ(p) = (4p/3 + 2/3) t(p)`: the number of realizations that contain at
/// least one of two adjacent faces, with the shared-edge chords added back.
pub fn theta(p: usize) -> Result<Ratio> {
    let v = Ratio::new(4 * p as i128 + 2, 3) * t_of(p)?;
    if !v.is_integer() {
        return Err(contract!("θ({p}) = {v} is not an integer"));
    }
    Ok(v)
}

/// Integer value of [`theta`].
pub fn theta_count(p: usize) -> Result<u64> {
    Ok(theta(p)?.numer() as u64)
}

/// `δ = (p/3 + 2/3) t(p)`, the gain of one DS step before corrections.
pub fn delta(p: usize) -> Result<Ratio> {
    Ok(Ratio::new(p as i128 + 2, 3) * t_of(p)?)
}

/// Lower bound on `α_1 = q` of the new degree-1 bit left by DE(1).
pub fn alpha1_lower(p: usize) -> Result<Ratio> {
    Ok(Ratio::new(2 * p as i128 - 2, 3) * t_of(p)?)
}

/// Lower bound on `α_2` for the degree-2 bit left by DE(2).
pub fn alpha2_lower(p: usize) -> Result<Ratio> {
    let z = tree_params(p)?.z as i128;
    Ok((Ratio::new(p as i128, 2) - Ratio::new(z, 6) - Ratio::ONE) * t_of(p)?)
}

/// Lower bound on `α_x`; zero for `x ≥ 3`.
pub fn alpha_lower(x: usize, p: usize) -> Result<Ratio> {
    match x {
        1 => alpha1_lower(p),
        2 => alpha2_lower(p),
        _ => Ok(Ratio::ZERO),
    }
}

/// `δ_DE(x) = xδ - p t(p) + α_x` with `α_x` at its lower bound.
pub fn delta_de_lower(x: usize, p: usize) -> Result<Ratio> {
    Ok(Ratio::from_int(x as i128) * delta(p)? - Ratio::from_int(p as i128) * t_of(p)? + alpha_lower(x, p)?)
}

/// `X = θ(p)(n - (2m - 4)) - 2t(p)(2m - 4)`, the part of `Y` fixed by the
/// rate.
pub fn x_term(n: usize, m: usize, p: usize) -> Result<Ratio> {
    let faces = Ratio::from_int(2 * m as i128 - 4);
    Ok(theta(p)? * (Ratio::from_int(n as i128) - faces) - Ratio::from_int(2) * t_of(p)? * faces)
}
