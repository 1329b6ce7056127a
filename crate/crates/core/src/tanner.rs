//! Tanner graphs and the codeword-supporting criterion.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{contract, invalid};
use crate::gf2::{self, BitMatrix, BitVector, FULL_ENUMERATION_MAX_DIM};
use crate::embed::{test_planarity, Embedding, Planarity};
use crate::{Error, Ratio, Result};

/// Weight cap used by the minimum-distance oracle when the code is too
/// large to enumerate. Every bound this crate certifies is at most 7.
pub const DEFAULT_WEIGHT_CAP: usize = 8;

/// Bipartite graph of bit nodes `0..n` and check nodes `0..m`.
///
/// Edge `k` joins `edges()[k].0` (a bit) to `edges()[k].1` (a check). Edge
/// ids are stable and are used as dart ids by [`crate::embed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    bit_labels: Vec<String>,
    check_labels: Vec<String>,
    edges: Vec<(usize, usize)>,
    bit_adj: Vec<Vec<usize>>,
    check_adj: Vec<Vec<usize>>,
    bit_edges: Vec<Vec<usize>>,
}

/// Sizes, rank, rates and optionally the minimum distance of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CodeSummary {
    pub n: usize,
    pub m: usize,
    pub rank: usize,
    pub design_rate: Ratio,
    pub true_rate: Ratio,
    pub min_distance: Option<usize>,
}

impl TannerGraph {
    /// Graph with default labels `b0..`, `c0..`.
    pub fn new(n: usize, m: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let bits = (0..n).map(|i| format!("b{i}")).collect();
        let checks = (0..m).map(|i| format!("c{i}")).collect();
        Self::with_labels(bits, checks, edges)
    }

    pub fn with_labels(
        bit_labels: Vec<String>,
        check_labels: Vec<String>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = bit_labels.len();
        let m = check_labels.len();
        if n == 0 || m == 0 {
            return Err(invalid!("a Tanner graph needs at least one bit and one check node"));
        }
        let mut bit_adj = vec![Vec::new(); n];
        let mut check_adj = vec![Vec::new(); m];
        let mut bit_edges = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        for (k, &(b, c)) in edges.iter().enumerate() {
            if b >= n || c >= m {
                return Err(invalid!("edge {k} = ({b}, {c}) is out of range"));
            }
            if !seen.insert((b, c)) {
                return Err(invalid!("duplicate edge ({}, {})", bit_labels[b], check_labels[c]));
            }
            bit_adj[b].push(c);
            check_adj[c].push(b);
            bit_edges[b].push(k);
        }
        Ok(TannerGraph { bit_labels, check_labels, edges, bit_adj, check_adj, bit_edges })
    }

    /// Graph whose parity-check matrix is `h` (rows are checks).
    pub fn from_parity_check(h: &BitMatrix) -> Result<Self> {
        let edges = (0..h.col_count())
            .flat_map(|b| (0..h.row_count()).filter(move |&c| h.get(c, b)).map(move |c| (b, c)))
            .collect();
        Self::new(h.col_count(), h.row_count(), edges)
    }

    pub fn n(&self) -> usize {
        self.bit_labels.len()
    }

    pub fn m(&self) -> usize {
        self.check_labels.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn bit_labels(&self) -> &[String] {
        &self.bit_labels
    }

    pub fn check_labels(&self) -> &[String] {
        &self.check_labels
    }

    pub fn bit_label(&self, b: usize) -> &str {
        &self.bit_labels[b]
    }

    pub fn check_label(&self, c: usize) -> &str {
        &self.check_labels[c]
    }

    pub fn bit_by_label(&self, label: &str) -> Option<usize> {
        self.bit_labels.iter().position(|l| l == label)
    }

    pub fn check_by_label(&self, label: &str) -> Option<usize> {
        self.check_labels.iter().position(|l| l == label)
    }

    /// Checks adjacent to bit `b`, in edge order.
    pub fn bit_neighbors(&self, b: usize) -> &[usize] {
        &self.bit_adj[b]
    }

    /// Ids of the edges at bit `b`, in edge order.
    pub fn bit_edges(&self, b: usize) -> &[usize] {
        &self.bit_edges[b]
    }

    pub fn check_neighbors(&self, c: usize) -> &[usize] {
        &self.check_adj[c]
    }

    pub fn bit_degree(&self, b: usize) -> usize {
        self.bit_adj[b].len()
    }

    pub fn max_bit_degree(&self) -> usize {
        self.bit_adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Bits of the given degree, ascending.
    pub fn bits_of_degree(&self, degree: usize) -> Vec<usize> {
        (0..self.n()).filter(|&b| self.bit_degree(b) == degree).collect()
    }

    /// Sorted check neighborhood of bit `b`.
    pub fn neighborhood(&self, b: usize) -> Vec<usize> {
        let mut v = self.bit_adj[b].clone();
        v.sort_unstable();
        v
    }

    /// Design rate `1 - m/n`.
    pub fn design_rate(&self) -> Ratio {
        Ratio::ONE - Ratio::new(self.m() as i128, self.n() as i128)
    }

    /// Union of the check neighborhoods of `bits`.
    pub fn neighbors(&self, bits: &[usize]) -> Result<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for &b in bits {
            if b >= self.n() {
                return Err(invalid!("unknown bit node {b}"));
            }
            out.extend(self.bit_adj[b].iter().copied());
        }
        Ok(out)
    }

    /// Bits whose whole neighborhood lies inside `checks`, ascending.
    /// Degree-0 bits are always included.
    pub fn induced_bits(&self, checks: &[usize]) -> Result<Vec<usize>> {
        let mut inside = vec![false; self.m()];
        for &c in checks {
            if c >= self.m() {
                return Err(invalid!("unknown check node {c}"));
            }
            inside[c] = true;
        }
        Ok(self.induced_by_mask(&inside))
    }

    pub(crate) fn induced_by_mask(&self, inside: &[bool]) -> Vec<usize> {
        (0..self.n()).filter(|&b| self.bit_adj[b].iter().all(|&c| inside[c])).collect()
    }

    pub(crate) fn induced_count_by_mask(&self, inside: &[bool]) -> usize {
        self.bit_adj.iter().filter(|adj| adj.iter().all(|&c| inside[c])).count()
    }

    /// True when `checks` induces more bits than it has checks.
    pub fn is_codeword_supporting(&self, checks: &[usize]) -> Result<bool> {
        let distinct: BTreeSet<usize> = checks.iter().copied().collect();
        Ok(self.induced_bits(checks)?.len() > distinct.len())
    }

    /// The `m x n` parity-check matrix.
    pub fn parity_check_matrix(&self) -> BitMatrix {
        let mut h = BitMatrix::zeros(self.m(), self.n());
        for &(b, c) in &self.edges {
            h.set(c, b, true);
        }
        h
    }

    /// Nonzero codeword supported on the bits induced by a codeword-supporting
    /// check set, of weight at most `|checks| + 1`.
    pub fn extract_low_weight_codeword(&self, checks: &[usize]) -> Result<BitVector> {
        let rows: Vec<usize> = checks.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let induced = self.induced_bits(&rows)?;
        if induced.len() <= rows.len() {
            return Err(contract!(
                "check set of size {} induces only {} bits and is not codeword-supporting",
                rows.len(),
                induced.len()
            ));
        }
        let h = self.parity_check_matrix();
        let mut cols = induced;
        let mut basis = h.select(&rows, &cols).kernel_basis();
        if basis.len() > FULL_ENUMERATION_MAX_DIM {
            // Any |checks|+1 columns are already dependent.
            cols.truncate(rows.len() + 1);
            basis = h.select(&rows, &cols).kernel_basis();
        }
        let local = if basis.len() > FULL_ENUMERATION_MAX_DIM {
            basis.swap_remove(0)
        } else {
            gf2::min_weight_in_span(&basis).ok_or_else(|| contract!("restricted null space is empty"))?
        };
        let x = BitVector::from_support(self.n(), local.support().into_iter().map(|i| cols[i]));
        debug_assert!(h.mul_vec(&x).is_zero());
        Ok(x)
    }

    /// A minimum-weight nonzero codeword. Exact when the dimension is at
    /// most 24; otherwise the lightest codeword of weight at most
    /// `weight_cap` (default 8), or `None` when there is none.
    pub fn min_weight_codeword(&self, weight_cap: Option<usize>) -> Result<Option<BitVector>> {
        let h = self.parity_check_matrix();
        let basis = h.kernel_basis();
        if basis.is_empty() {
            return Err(Error::TrivialCode);
        }
        if basis.len() <= FULL_ENUMERATION_MAX_DIM {
            return Ok(gf2::min_weight_in_span(&basis));
        }
        Ok(gf2::min_weight_codeword_bounded(&h, weight_cap.unwrap_or(DEFAULT_WEIGHT_CAP)))
    }

    /// Minimum distance, see [`TannerGraph::min_weight_codeword`].
    pub fn min_distance_oracle(&self, weight_cap: Option<usize>) -> Result<Option<usize>> {
        Ok(self.min_weight_codeword(weight_cap)?.map(|x| x.weight()))
    }

    pub fn code_summary(&self, with_distance: bool) -> Result<CodeSummary> {
        let rank = self.parity_check_matrix().rank();
        let n = self.n() as i128;
        let min_distance = if with_distance { self.min_distance_oracle(None)? } else { None };
        Ok(CodeSummary {
            n: self.n(),
            m: self.m(),
            rank,
            design_rate: self.design_rate(),
            true_rate: Ratio::ONE - Ratio::new(rank as i128, n),
            min_distance,
        })
    }

    /// Two bits with identical check neighborhoods, lowest pair first.
    pub fn duplicate_bits(&self) -> Option<(usize, usize)> {
        let mut seen: alloc::collections::BTreeMap<Vec<usize>, usize> = Default::default();
        for b in 0..self.n() {
            if let Some(&a) = seen.get(&self.neighborhood(b)) {
                return Some((a, b));
            }
            seen.insert(self.neighborhood(b), b);
        }
        None
    }
}

impl TannerGraph {
    /// Vertex id of check `c` in a Tanner-graph embedding, where bits come
    /// first and checks follow.
    pub fn check_vertex(&self, c: usize) -> usize {
        self.n() + c
    }

    /// Edge list of the Tanner graph as a graph on `n + m` vertices; edge
    /// `k` runs from its bit to its check.
    pub fn vertex_edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(b, c)| (b, self.n() + c)).collect()
    }

    /// A planar embedding found by the planarity test.
    pub fn planar_embedding(&self) -> Result<Embedding> {
        match test_planarity(self.n() + self.m(), &self.vertex_edges())? {
            Planarity::Planar(e) => Ok(e),
            Planarity::NonPlanar(cert) => Err(Error::NonPlanar(cert)),
        }
    }

    /// Checks that `emb` is a planar embedding of this graph with matching
    /// edge ids.
    pub fn validate_embedding(&self, emb: &Embedding) -> Result<()> {
        if emb.vertex_count() != self.n() + self.m() || emb.edges() != self.vertex_edges().as_slice() {
            return Err(invalid!("embedding does not match the Tanner graph"));
        }
        if !emb.is_planar_embedding() {
            return Err(invalid!("embedding has genus {}", emb.genus()));
        }
        Ok(())
    }
}
