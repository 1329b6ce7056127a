//! Minimum distance against the rate bound over random ensembles, one CSV
//! row per rate.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use planar_codes_core::bound::{bound_for_p, certify_bound, p_of_rate, BoundStatus, WitnessPath};
use planar_codes_core::{BitVector, Ratio, TannerGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::generate::{generate_one, DegreeProfile, EnsembleSpec};

pub const CSV_HEADER: [&str; 7] = ["R", "p", "bound", "count", "max_d", "violations", "avg_ms"];

/// Environment variable that sets the number of worker threads.
pub const WORKERS_ENV: &str = "PLANAR_CODES_WORKERS";

/// Rates `a:b:step` (inclusive, exact rationals) or a comma-separated list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateGrid(pub Vec<Ratio>);

impl FromStr for RateGrid {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(RateGrid(Vec::new()));
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [a, b, step] => {
                let (a, b, step): (Ratio, Ratio, Ratio) = (a.parse()?, b.parse()?, step.parse()?);
                ensure!(step > Ratio::ZERO, "rate step must be positive");
                let mut out = Vec::new();
                let mut r = a;
                while r <= b {
                    out.push(r);
                    r = r + step;
                }
                Ok(RateGrid(out))
            }
            [_] => Ok(RateGrid(s.split(',').map(|t| t.parse::<Ratio>().map_err(anyhow::Error::from)).collect::<Result<_>>()?)),
            _ => bail!("rates must be `a:b:step` or a comma-separated list"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub rates: Vec<Ratio>,
    pub per_rate: usize,
    pub m_range: (usize, usize),
    pub seed: u64,
    /// Largest bit count; keeps the oracle exact.
    pub max_n: usize,
    /// Write `NA` instead of wall-clock timings, so equal inputs give equal
    /// bytes.
    pub deterministic: bool,
}

/// One graph of the sweep.
#[derive(Clone, Debug)]
pub struct GraphOutcome {
    pub rate: Ratio,
    pub index: usize,
    pub m: usize,
    pub n: usize,
    pub distance: usize,
    pub status: BoundStatus,
    pub certified_bound: Option<usize>,
    pub path: Option<WitnessPath>,
    pub witness_valid: bool,
    pub witness: Option<BitVector>,
    pub simple_dual: bool,
    pub graph: TannerGraph,
    pub millis: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub rate: Ratio,
    pub p: Option<usize>,
    /// `p + 3`; `None` below 9/16, where nothing is claimed.
    pub bound: Option<usize>,
    pub count: usize,
    pub max_d: Option<usize>,
    pub violations: usize,
    pub avg_ms: Option<f64>,
}

pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub outcomes: Vec<GraphOutcome>,
}

/// `(m, n)` with `1 - m/n = rate` exactly, `m` in range and `n ≤ max_n`.
pub fn sizes_for_rate(rate: Ratio, m_range: (usize, usize), max_n: usize) -> Vec<(usize, usize)> {
    let slack = Ratio::ONE - rate;
    if slack <= Ratio::ZERO {
        return Vec::new();
    }
    (m_range.0.max(4)..=m_range.1)
        .filter_map(|m| {
            let n = Ratio::from_int(m as i128) / slack;
            n.to_integer().map(|n| (m, n as usize))
        })
        .filter(|&(_, n)| n <= max_n)
        .collect()
}

/// A random degree profile with `n` bits on `m` checks, spreading bits over
/// distinct faces, edges and checks as long as there is room.
pub fn random_profile(m: usize, n: usize, rng: &mut ChaCha8Rng) -> DegreeProfile {
    let (faces, edges) = (2 * m - 4, 3 * m - 6);
    let high = if faces >= 4 && n >= 2 && rng.gen_bool(0.25) { vec![4] } else { Vec::new() };
    let free_faces = faces - 2 * high.len();
    let rest = n - high.len();
    let mut three = rng.gen_range(0..=free_faces.min(rest));
    let mut two = rng.gen_range(0..=edges.min(rest - three));
    let mut one = rest - three - two;
    if one > m {
        let shift = (one - m).min(edges - two);
        two += shift;
        one -= shift;
    }
    if one > m {
        let shift = (one - m).min(free_faces - three);
        three += shift;
        one -= shift;
    }
    DegreeProfile { one, two, three, high }
}

fn worker_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let k: usize = v.parse().with_context(|| format!("{WORKERS_ENV} must be a positive integer"))?;
        ensure!(k > 0, "{WORKERS_ENV} must be positive");
        b = b.num_threads(k);
    }
    Ok(b.build()?)
}

fn run_one(cfg: &SweepConfig, ri: usize, rate: Ratio, sizes: &[(usize, usize)], index: usize) -> Result<GraphOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(((ri as u64) << 32) | index as u64);
    let (m, n) = sizes[rng.gen_range(0..sizes.len())];
    let profile = random_profile(m, n, &mut rng);
    let spec = EnsembleSpec { m, target_rate: Some(rate), degree_profile: profile, seed: rng.gen(), count: 1 };
    let gen = generate_one(&spec, 0)?;
    let g = &gen.graph;
    let start = Instant::now();
    let report = certify_bound(g, &gen.embedding)?;
    let distance = g.min_distance_oracle(None)?.context("oracle found no codeword within its cap")?;
    let millis = start.elapsed().as_secs_f64() * 1e3;
    Ok(GraphOutcome {
        rate,
        index,
        m,
        n,
        distance,
        status: report.status,
        certified_bound: report.bound,
        path: report.path,
        witness_valid: report.witness_is_valid(g),
        witness: report.witness.map(|w| w.codeword),
        simple_dual: report.diagnostics.parallel_dual_edges.is_none(),
        graph: gen.graph,
        millis,
    })
}

/// Runs the sweep; rows and outcomes come out ordered by (rate, index)
/// whatever the thread schedule.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepResult> {
    let pool = worker_pool()?;
    let mut rows = Vec::with_capacity(cfg.rates.len());
    let mut outcomes = Vec::new();
    for (ri, &rate) in cfg.rates.iter().enumerate() {
        let p = p_of_rate(rate).ok();
        let bound = p.filter(|_| rate >= Ratio::new(9, 16)).map(bound_for_p);
        let sizes = sizes_for_rate(rate, cfg.m_range, cfg.max_n);
        if sizes.is_empty() {
            log::warn!("rate {rate}: no check count in {}..={} gives an integer n <= {}; skipped", cfg.m_range.0, cfg.m_range.1, cfg.max_n);
        }
        let results: Vec<Result<GraphOutcome>> = if sizes.is_empty() {
            Vec::new()
        } else {
            pool.install(|| (0..cfg.per_rate).into_par_iter().map(|i| run_one(cfg, ri, rate, &sizes, i)).collect())
        };
        let mut here = Vec::with_capacity(results.len());
        for r in results {
            match r {
                Ok(o) => here.push(o),
                Err(e) => log::warn!("rate {rate}: graph skipped: {e:#}"),
            }
        }
        let violations = bound.map_or(0, |b| here.iter().filter(|o| o.distance > b || o.certified_bound.is_some_and(|c| o.distance > c)).count());
        let avg_ms = (!cfg.deterministic && !here.is_empty()).then(|| here.iter().map(|o| o.millis).sum::<f64>() / here.len() as f64);
        rows.push(SweepRow { rate, p, bound, count: here.len(), max_d: here.iter().map(|o| o.distance).max(), violations, avg_ms });
        outcomes.extend(here);
    }
    Ok(SweepResult { rows, outcomes })
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    let na = || String::from("NA");
    for r in rows {
        w.write_record([
            r.rate.to_string(),
            r.p.map_or_else(na, |p| p.to_string()),
            r.bound.map_or_else(|| String::from("uncertified"), |b| b.to_string()),
            r.count.to_string(),
            r.max_d.map_or_else(na, |d| d.to_string()),
            if r.bound.is_some() { r.violations.to_string() } else { na() },
            r.avg_ms.map_or_else(na, |t| format!("{t:.3}")),
        ])?;
    }
    w.flush()?;
    Ok(())
}
