//! Random planar Tanner graphs built by placing bits on a random
//! triangulation of the checks.

use std::collections::BTreeSet;

use anyhow::{bail, ensure, Context, Result};
use planar_codes_core::check::{build_check_graph, same_check_graph, BitTarget, CheckGraph, EdgeOrigin};
use planar_codes_core::embed::{test_planarity, Embedding, Planarity};
use planar_codes_core::placement::embed_placement;
use planar_codes_core::{Ratio, TannerGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::doc::{GraphDocument, Provenance};

/// Edge flips per edge of the starting triangulation.
pub const FLIPS_PER_EDGE: usize = 10;

/// How many bits of each degree to place. `high` lists the degrees of the
/// bits above three, each drawn on a fan of `degree - 2` faces.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeProfile {
    #[serde(default)]
    pub one: usize,
    #[serde(default)]
    pub two: usize,
    #[serde(default)]
    pub three: usize,
    #[serde(default)]
    pub high: Vec<usize>,
}

impl DegreeProfile {
    pub fn bit_count(&self) -> usize {
        self.one + self.two + self.three + self.high.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleSpec {
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_rate: Option<Ratio>,
    pub degree_profile: DegreeProfile,
    pub seed: u64,
    pub count: usize,
}

impl EnsembleSpec {
    pub fn n(&self) -> usize {
        self.degree_profile.bit_count()
    }

    pub fn validate(&self) -> Result<()> {
        let (m, p) = (self.m, &self.degree_profile);
        ensure!(m >= 4, "at least 4 checks are needed, got {m}");
        ensure!(self.n() > 0, "the degree profile places no bits");
        let faces = 2 * m - 4;
        ensure!(p.three <= faces, "{} degree-3 bits exceed the 2m - 4 = {faces} faces", p.three);
        ensure!(p.high.iter().all(|&d| d > 3 && d <= m), "high degrees must lie in 4..={m}");
        let fan_faces: usize = p.high.iter().map(|d| d - 2).sum();
        ensure!(p.three + fan_faces <= faces, "degree-3 bits and fans need {} faces, only {faces} exist", p.three + fan_faces);
        if let Some(r) = self.target_rate {
            let implied = Ratio::ONE - Ratio::new(m as i128, self.n() as i128);
            ensure!(implied == r, "profile gives n = {} and rate {implied}, not the target {r}", self.n());
        }
        Ok(())
    }
}

pub struct GeneratedGraph {
    pub index: usize,
    pub graph: TannerGraph,
    pub embedding: Embedding,
    /// The check graph rebuilt from `embedding`; equal to the placement's
    /// triangulation edge for edge.
    pub check_graph: CheckGraph,
    pub targets: Vec<BitTarget>,
    pub document: GraphDocument,
}

/// `count` graphs, each from its own ChaCha8 stream of `seed`.
pub fn generate(spec: &EnsembleSpec) -> Result<Vec<GeneratedGraph>> {
    spec.validate()?;
    (0..spec.count).map(|i| generate_one(spec, i)).collect()
}

/// The `index`-th graph of the ensemble.
pub fn generate_one(spec: &EnsembleSpec, index: usize) -> Result<GeneratedGraph> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(index as u64);
    // A few redraws cover the rare fan that cannot grow.
    let mut last = None;
    for _ in 0..16 {
        match attempt(spec, &mut rng) {
            Ok((g, cg, targets)) => return finish(spec, index, g, cg, targets),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt")).with_context(|| format!("graph {index} of seed {}", spec.seed))
}

/// A bipyramid over a path of `m - 2` checks (K4 for `m = 4`), then
/// `10 E` random flips.
pub fn random_triangulation(m: usize, rng: &mut ChaCha8Rng) -> Result<Embedding> {
    ensure!(m >= 4, "triangulation needs at least 4 vertices");
    let ring: Vec<usize> = (1..m - 1).collect();
    let mut edges = Vec::new();
    for (i, &v) in ring.iter().enumerate() {
        edges.push((0, v));
        edges.push((v, m - 1));
        let w = ring[(i + 1) % ring.len()];
        if ring.len() > 2 || i == 0 {
            edges.push((v.min(w), v.max(w)));
        }
    }
    if m == 4 {
        edges.push((0, m - 1));
    }
    let Planarity::Planar(mut emb) = test_planarity(m, &edges)? else { bail!("bipyramid is planar") };
    ensure!(emb.edge_count() == 3 * m - 6, "starting triangulation has {} edges", emb.edge_count());
    for _ in 0..FLIPS_PER_EDGE * emb.edge_count() {
        let e = rng.gen_range(0..emb.edge_count());
        emb.flip_edge(e);
    }
    Ok(emb)
}

fn attempt(spec: &EnsembleSpec, rng: &mut ChaCha8Rng) -> Result<(TannerGraph, CheckGraph, Vec<BitTarget>)> {
    let m = spec.m;
    let emb = random_triangulation(m, rng)?;
    let e = emb.edge_count();
    let cg = CheckGraph::from_embedding(emb, vec![EdgeOrigin::Triangulation; e])?;
    let p = &spec.degree_profile;

    let mut free: BTreeSet<usize> = (0..cg.face_count()).collect();
    let mut fan_chords: BTreeSet<usize> = BTreeSet::new();
    let mut targets = Vec::with_capacity(spec.n());
    for &deg in &p.high {
        let fan = grow_fan(&cg, &free, deg - 2, rng).with_context(|| format!("no room for a degree-{deg} fan"))?;
        for &f in &fan {
            free.remove(&f);
        }
        for a in 0..fan.len() {
            for b in a + 1..fan.len() {
                let ea: BTreeSet<usize> = cg.face_edges(fan[a]).into_iter().collect();
                fan_chords.extend(cg.face_edges(fan[b]).into_iter().filter(|x| ea.contains(x)));
            }
        }
        targets.push(BitTarget::Fan(fan));
    }
    let mut faces: Vec<usize> = free.into_iter().collect();
    faces.shuffle(rng);
    ensure!(faces.len() >= p.three, "not enough free faces");
    targets.extend(faces[..p.three].iter().map(|&f| BitTarget::Face(f)));
    let edges: Vec<usize> = (0..cg.edge_count()).filter(|e| !fan_chords.contains(e)).collect();
    targets.extend(spread(&edges, p.two, rng).into_iter().map(BitTarget::Edge));
    let checks: Vec<usize> = (0..m).collect();
    targets.extend(spread(&checks, p.one, rng).into_iter().map(BitTarget::Vertex));
    targets.shuffle(rng);

    let mut tanner_edges = Vec::new();
    for (b, t) in targets.iter().enumerate() {
        let nbrs: BTreeSet<usize> = match t {
            BitTarget::Vertex(c) => BTreeSet::from([*c]),
            BitTarget::Edge(e) => {
                let (u, v) = cg.edge_endpoints(*e);
                BTreeSet::from([u, v])
            }
            t => cg.corner_union(t.faces()),
        };
        tanner_edges.extend(nbrs.into_iter().map(|c| (b, c)));
    }
    let g = TannerGraph::new(targets.len(), m, tanner_edges)?;
    Ok((g, cg, targets))
}

/// `count` items, distinct while the pool lasts, then repeating in a fresh
/// random order.
fn spread(pool: &[usize], count: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count && !pool.is_empty() {
        let mut round = pool.to_vec();
        round.shuffle(rng);
        out.extend(round.into_iter().take(count - out.len()));
    }
    out
}

/// `size` free faces forming a triangulated polygon: each added face shares
/// an edge with the fan and brings one new corner.
fn grow_fan(cg: &CheckGraph, free: &BTreeSet<usize>, size: usize, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    let starts: Vec<usize> = free.iter().copied().collect();
    for _ in 0..32 {
        let mut fan = vec![*starts.choose(rng)?];
        let mut corners = cg.corner_union(&fan);
        while fan.len() < size {
            let mut options = Vec::new();
            for &f in &fan {
                for e in cg.face_edges(f) {
                    let (a, b) = cg.edge_faces(e);
                    let g = if a == f { b } else { a };
                    if free.contains(&g) && !fan.contains(&g) && cg.face_corners(g).iter().filter(|c| !corners.contains(c)).count() == 1 {
                        options.push(g);
                    }
                }
            }
            let Some(&g) = options.choose(rng) else { break };
            fan.push(g);
            corners = cg.corner_union(&fan);
        }
        if fan.len() == size {
            fan.sort_unstable();
            return Some(fan);
        }
    }
    None
}

/// Draws the Tanner graph at its targets, rebuilds the check graph from that
/// drawing (which re-triangulates faces no bit pins down), and redraws on the
/// rebuilt check graph so that the output reproduces it exactly.
fn finish(spec: &EnsembleSpec, index: usize, g: TannerGraph, seed_cg: CheckGraph, targets: Vec<BitTarget>) -> Result<GeneratedGraph> {
    let first = embed_placement(&g, &seed_cg, &targets)?;
    let canonical = build_check_graph(&g, &first)?;
    let targets = canonical.identification.targets().to_vec();
    let embedding = embed_placement(&g, &canonical.check_graph, &targets)?;
    let rebuilt = build_check_graph(&g, &embedding)?;
    ensure!(same_check_graph(&canonical.check_graph, &rebuilt.check_graph), "placement does not reproduce its check graph");
    let provenance = Provenance {
        generator: String::from("planar-codes/flip-walk"),
        seed: spec.seed,
        index,
        params: serde_json::json!({
            "m": spec.m,
            "degree_profile": spec.degree_profile,
            "flips_per_edge": FLIPS_PER_EDGE,
            "start": "bipyramid",
        }),
    };
    let document = GraphDocument::from_graph(&g, Some(&embedding), Some(provenance));
    Ok(GeneratedGraph { index, graph: g, embedding, check_graph: rebuilt.check_graph, targets: rebuilt.identification.targets().to_vec(), document })
}
