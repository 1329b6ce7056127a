//! One-line JSON documents holding a Tanner graph and, optionally, its
//! rotation system.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use planar_codes_core::embed::Embedding;
use planar_codes_core::TannerGraph;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

/// Where a generated graph came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub seed: u64,
    pub index: usize,
    pub params: serde_json::Value,
}

/// A Tanner graph on disk. Bits and checks keep their declared order; edge
/// `k` joins `edges[k][0]` (a bit) and `edges[k][1]` (a check). The
/// rotation maps each vertex (bits first, then checks) to its dart cycle,
/// where edge `k` owns darts `2k` (bit to check) and `2k + 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub format_version: u32,
    pub bits: Vec<String>,
    pub checks: Vec<String>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<BTreeMap<usize, Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl GraphDocument {
    pub fn from_graph(g: &TannerGraph, emb: Option<&Embedding>, provenance: Option<Provenance>) -> Self {
        GraphDocument {
            format_version: FORMAT_VERSION,
            bits: g.bit_labels().to_vec(),
            checks: g.check_labels().to_vec(),
            edges: g.edges().iter().map(|&(b, c)| [b, c]).collect(),
            rotation: emb.map(|e| e.rotations().iter().cloned().enumerate().collect()),
            provenance,
        }
    }

    pub fn graph(&self) -> Result<TannerGraph> {
        if self.format_version != FORMAT_VERSION {
            bail!("unsupported format version {}", self.format_version);
        }
        let edges = self.edges.iter().map(|&[b, c]| (b, c)).collect();
        Ok(TannerGraph::with_labels(self.bits.clone(), self.checks.clone(), edges)?)
    }

    /// The stored rotation system as an embedding of the Tanner graph,
    /// checked for planarity.
    pub fn embedding(&self, g: &TannerGraph) -> Result<Option<Embedding>> {
        let Some(rot) = &self.rotation else { return Ok(None) };
        let count = g.n() + g.m();
        if rot.len() != count || rot.keys().enumerate().any(|(i, &k)| i != k) {
            bail!("rotation must list every vertex 0..{count} exactly once");
        }
        let emb = Embedding::from_rotation(count, g.vertex_edges(), rot.values().cloned().collect())?;
        g.validate_embedding(&emb)?;
        Ok(Some(emb))
    }

    /// The graph and an embedding: the stored one, or one found by the
    /// planarity test.
    pub fn graph_and_embedding(&self) -> Result<(TannerGraph, Embedding)> {
        let g = self.graph()?;
        let emb = match self.embedding(&g)? {
            Some(e) => e,
            None => g.planar_embedding()?,
        };
        Ok((g, emb))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let first = lines.next().context("empty graph document")?;
        if lines.next().is_some() {
            bail!("a graph document holds exactly one JSON line");
        }
        Ok(serde_json::from_str(first)?)
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render()).with_context(|| format!("writing {}", path.display()))
    }
}
