//! Hypergraphs over a small vertex universe, exhaustive partition search,
//! and the trimming operation that makes every edge own a private vertex.
//!
//! A partition of size `s` is a set `D` of `s` vertices together with a set
//! `P` of edges such that every vertex of `D` lies in exactly one edge of `P`.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Vertex universes are capped so edges fit in one machine word pair.
pub const MAX_VERTICES: usize = 128;

/// Edges larger than this are rejected by the exhaustive partition search.
pub const MAX_EDGES_EXHAUSTIVE: usize = 30;

#[derive(Debug, Error)]
pub enum HypergraphError {
    #[error("vertex universe of size {0} exceeds the supported maximum {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for universe of size {vertex_count}")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("duplicate edge at positions {first} and {second}")]
    DuplicateEdge { first: usize, second: usize },
    #[error("edge index {index} out of range ({edge_count} edges)")]
    EdgeIndexOutOfRange { index: usize, edge_count: usize },
    #[error("{edge_count} edges exceed the exhaustive-search cap {MAX_EDGES_EXHAUSTIVE}")]
    TooManyEdges { edge_count: usize },
    #[error("operation requires a hypergraph without isolated vertices; found {0:?}")]
    IsolatedInput(VertexSet),
}

// ---------------------------------------------------------------------------
// VertexSet
// ---------------------------------------------------------------------------

/// A set of vertices stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet(u128);

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        let mut s = VertexSet(0);
        for v in vertices {
            s.insert(v);
        }
        s
    }
}

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_VERTICES);
        self.0 |= 1u128 << v;
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn minus(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

// ---------------------------------------------------------------------------
// Hypergraph
// ---------------------------------------------------------------------------

/// A hypergraph on vertices `0..vertex_count` with an ordered list of
/// pairwise-distinct edges.
#[derive(Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<VertexSet>,
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Hypergraph({} vertices, edges {:?})",
            self.vertex_count, self.edges
        )
    }
}

impl Hypergraph {
    pub fn new(vertex_count: usize, edges: Vec<VertexSet>) -> Result<Self, HypergraphError> {
        if vertex_count > MAX_VERTICES {
            return Err(HypergraphError::TooManyVertices(vertex_count));
        }
        let universe = if vertex_count == MAX_VERTICES {
            u128::MAX
        } else {
            (1u128 << vertex_count) - 1
        };
        for edge in &edges {
            if edge.bits() & !universe != 0 {
                let bad = VertexSet(edge.bits() & !universe);
                return Err(HypergraphError::VertexOutOfRange {
                    vertex: bad.iter().next().unwrap(),
                    vertex_count,
                });
            }
        }
        for (i, a) in edges.iter().enumerate() {
            for (j, b) in edges.iter().enumerate().skip(i + 1) {
                if a == b {
                    return Err(HypergraphError::DuplicateEdge {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(Hypergraph {
            vertex_count,
            edges,
        })
    }

    pub fn from_vertex_lists(
        vertex_count: usize,
        lists: &[Vec<usize>],
    ) -> Result<Self, HypergraphError> {
        for list in lists {
            for &v in list {
                if v >= vertex_count {
                    return Err(HypergraphError::VertexOutOfRange {
                        vertex: v,
                        vertex_count,
                    });
                }
            }
        }
        Self::new(
            vertex_count,
            lists
                .iter()
                .map(|l| VertexSet::from_iter(l.iter().copied()))
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    /// Vertices contained in no edge.
    pub fn isolated_vertices(&self) -> VertexSet {
        let mut covered = VertexSet::EMPTY;
        for e in &self.edges {
            covered = covered.union(*e);
        }
        let universe = VertexSet::from_iter(0..self.vertex_count);
        universe.minus(covered)
    }

    /// Vertices covered by exactly one of the selected edges. The selection
    /// is a set: repeated indices count once. The empty selection yields the
    /// empty set.
    pub fn exactly_once_set(&self, edge_indices: &[usize]) -> Result<VertexSet, HypergraphError> {
        let mut selection = std::collections::BTreeSet::new();
        for &i in edge_indices {
            if i >= self.edges.len() {
                return Err(HypergraphError::EdgeIndexOutOfRange {
                    index: i,
                    edge_count: self.edges.len(),
                });
            }
            selection.insert(i);
        }
        let mut once = VertexSet::EMPTY;
        let mut multi = VertexSet::EMPTY;
        for i in selection {
            let edge = self.edges[i];
            multi = multi.union(once.intersection(edge));
            once = once.union(edge).minus(multi);
        }
        Ok(once)
    }

    fn exactly_once_mask(&self, selection: u32) -> VertexSet {
        let mut once = VertexSet::EMPTY;
        let mut multi = VertexSet::EMPTY;
        let mut bits = selection;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let edge = self.edges[i];
            multi = multi.union(once.intersection(edge));
            once = once.union(edge).minus(multi);
        }
        once
    }

    /// Size of the largest partition, with a witness attaining it, by
    /// exhausting all `2^edge_count` edge selections. Any partition's vertex
    /// set is contained in the exactly-once set of its edge selection, so the
    /// maximum over selections of the full exactly-once set is the answer.
    pub fn max_partition(&self) -> Result<(usize, PartitionWitness), HypergraphError> {
        if self.edges.len() > MAX_EDGES_EXHAUSTIVE {
            return Err(HypergraphError::TooManyEdges {
                edge_count: self.edges.len(),
            });
        }
        let mut best = PartitionWitness {
            d: VertexSet::EMPTY,
            p: Vec::new(),
        };
        let mut best_size = 0usize;
        for selection in 0..(1u32 << self.edges.len()) {
            let once = self.exactly_once_mask(selection);
            if once.len() > best_size {
                best_size = once.len();
                best = PartitionWitness {
                    d: once,
                    p: (0..self.edges.len())
                        .filter(|i| selection >> i & 1 == 1)
                        .collect(),
                };
            }
        }
        Ok((best_size, best))
    }

    /// True when the largest partition has size at most `n`. Equivalent to
    /// `max_partition().0 <= n` but exits on the first oversized selection.
    pub fn partition_free_above(&self, n: usize) -> Result<bool, HypergraphError> {
        if self.edges.len() > MAX_EDGES_EXHAUSTIVE {
            return Err(HypergraphError::TooManyEdges {
                edge_count: self.edges.len(),
            });
        }
        for selection in 0..(1u32 << self.edges.len()) {
            if self.exactly_once_mask(selection).len() > n {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Deletes edges, largest first and restarting after every deletion, as
    /// long as a deletion creates no isolated vertex. The result keeps the
    /// surviving edges in their original order and is economical: deleting
    /// any one of its edges would isolate some vertex.
    pub fn trim_economical(&self) -> Result<Hypergraph, HypergraphError> {
        let isolated = self.isolated_vertices();
        if !isolated.is_empty() {
            return Err(HypergraphError::IsolatedInput(isolated));
        }
        let mut kept: Vec<(usize, VertexSet)> = self.edges.iter().copied().enumerate().collect();
        'restart: loop {
            let mut order: Vec<usize> = (0..kept.len()).collect();
            order.sort_by_key(|&i| (std::cmp::Reverse(kept[i].1.len()), kept[i].0));
            for &candidate in &order {
                let mut covered = VertexSet::EMPTY;
                for (j, (_, e)) in kept.iter().enumerate() {
                    if j != candidate {
                        covered = covered.union(*e);
                    }
                }
                let union_all = covered.union(kept[candidate].1);
                if union_all == covered {
                    kept.remove(candidate);
                    continue 'restart;
                }
            }
            break;
        }
        kept.sort_by_key(|(orig, _)| *orig);
        Hypergraph::new(
            self.vertex_count,
            kept.into_iter().map(|(_, e)| e).collect(),
        )
    }

    /// No isolated vertices, and every edge owns a vertex of degree one.
    pub fn is_economical(&self) -> bool {
        if !self.isolated_vertices().is_empty() {
            return false;
        }
        let degrees = self.degree_vector();
        self.edges.iter().all(|e| e.iter().any(|v| degrees[v] == 1))
    }

    fn degree_vector(&self) -> Vec<usize> {
        let mut degrees = vec![0usize; self.vertex_count];
        for e in &self.edges {
            for v in e.iter() {
                degrees[v] += 1;
            }
        }
        degrees
    }

    /// Per-vertex degrees plus the degree-class summary.
    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees = self.degree_vector();
        let mut class_sizes: BTreeMap<usize, usize> = BTreeMap::new();
        for &d in &degrees {
            *class_sizes.entry(d).or_insert(0) += 1;
        }
        DegreeProfile {
            degrees,
            class_sizes,
        }
    }
}

// ---------------------------------------------------------------------------
// PartitionWitness, DegreeProfile
// ---------------------------------------------------------------------------

/// A vertex set `D` and edge-index set `P` certifying a partition of size
/// `|D|`: every vertex of `D` lies in exactly one edge indexed by `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionWitness {
    pub d: VertexSet,
    pub p: Vec<usize>,
}

impl PartitionWitness {
    pub fn size(&self) -> usize {
        self.d.len()
    }

    /// Re-derives the exactly-once set of `P` and checks `D` against it.
    pub fn validate(&self, h: &Hypergraph) -> bool {
        match h.exactly_once_set(&self.p) {
            Ok(once) => self.d.is_subset_of(once),
            Err(_) => false,
        }
    }
}

/// Degrees of every vertex; `class_sizes[k]` counts the vertices of degree
/// `k` (the map `k -> |D_k|`, including `k = 0` for isolated vertices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub class_sizes: BTreeMap<usize, usize>,
}

impl DegreeProfile {
    /// `m_k = k * |D_k|` for every degree class `k >= 1`.
    pub fn weighted_classes(&self) -> BTreeMap<usize, usize> {
        self.class_sizes
            .iter()
            .filter(|(k, _)| **k >= 1)
            .map(|(k, d)| (*k, k * d))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// JSON forms
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    vertices: usize,
    edges: Vec<Vec<usize>>,
}

impl Serialize for Hypergraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        HypergraphJson {
            vertices: self.vertex_count,
            edges: self.edges.iter().map(|e| e.to_vec()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Hypergraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = HypergraphJson::deserialize(deserializer)?;
        Hypergraph::from_vertex_lists(raw.vertices, &raw.edges).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    size: usize,
    #[serde(rename = "D")]
    d: Vec<usize>,
    #[serde(rename = "P")]
    p: Vec<usize>,
}

impl Serialize for PartitionWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        WitnessJson {
            size: self.size(),
            d: self.d.to_vec(),
            p: self.p.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PartitionWitness {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = WitnessJson::deserialize(deserializer)?;
        let d = VertexSet::from_iter(raw.d);
        if d.len() != raw.size {
            return Err(D::Error::custom("witness size disagrees with |D|"));
        }
        Ok(PartitionWitness { d, p: raw.p })
    }
}
