//! Four-node motif kernel: induced edge masks and motif classification.
//!
//! A quad (four distinct nodes in sorted order) induces a subgraph whose
//! six potential edges are packed into a 6-bit mask using the canonical
//! pair order `(01, 02, 03, 12, 13, 23)` over quad positions. The mask is
//! classified into one of six connected motif types or the disconnected
//! sentinel. Classification uses (connectivity, edge count, degree
//! sequence), which uniquely determines the isomorphism class for
//! undirected graphs on four nodes, and is precomputed into a 64-entry
//! table so the census loop is branch-free.

use crate::error::{CoreError, Result};
use crate::graph::DailyGraph;

/// Canonical ordering of the six node pairs of a quad, by position.
pub const PAIR_ORDER: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Motif classes for induced four-node subgraphs.
///
/// The numeric values follow the project-wide taxonomy: 1 is the complete
/// graph K4 and 6 the star; 0 marks any quad with a node disconnected
/// from the rest of its induced subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum MotifType {
    /// At least one node is disconnected from its induced subgraph.
    Disconnected = 0,
    /// K4: all six edges present.
    Complete = 1,
    /// K4 minus one edge.
    Diamond = 2,
    /// Four-node cycle.
    Cycle = 3,
    /// Triangle plus a pendant edge.
    Paw = 4,
    /// Four-node path (chain).
    Path = 5,
    /// Hub-and-spoke: one node connected to the other three.
    Star = 6,
}

impl MotifType {
    pub const ALL: [MotifType; 7] = [
        MotifType::Disconnected,
        MotifType::Complete,
        MotifType::Diamond,
        MotifType::Cycle,
        MotifType::Paw,
        MotifType::Path,
        MotifType::Star,
    ];

    /// Connected motif types 1..6.
    pub const CONNECTED: [MotifType; 6] = [
        MotifType::Complete,
        MotifType::Diamond,
        MotifType::Cycle,
        MotifType::Paw,
        MotifType::Path,
        MotifType::Star,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// Inverse of [`MotifType::index`]; panics for indices above 6.
    pub fn from_index(i: usize) -> MotifType {
        MotifType::ALL[i]
    }

    /// Number of edges each connected motif has; `None` for the sentinel.
    pub fn edge_count(self) -> Option<u8> {
        match self {
            MotifType::Disconnected => None,
            MotifType::Complete => Some(6),
            MotifType::Diamond => Some(5),
            MotifType::Cycle | MotifType::Paw => Some(4),
            MotifType::Path | MotifType::Star => Some(3),
        }
    }

    /// Whether the motif contains a three-node cycle.
    pub fn has_triangle(self) -> bool {
        matches!(
            self,
            MotifType::Complete | MotifType::Diamond | MotifType::Paw
        )
    }
}

impl core::fmt::Display for MotifType {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", *self as u8)
    }
}

/// Four distinct zone ids in strictly increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quad {
    nodes: [u32; 4],
}

impl Quad {
    /// Build a quad, sorting the ids; fails on duplicates.
    pub fn new(mut nodes: [u32; 4]) -> Result<Quad> {
        nodes.sort_unstable();
        if nodes[0] == nodes[1] || nodes[1] == nodes[2] || nodes[2] == nodes[3] {
            return Err(CoreError::InvalidConfig {
                reason: alloc::format!("quad nodes not distinct: {:?}", nodes),
            });
        }
        Ok(Quad { nodes })
    }

    /// Caller guarantees strictly increasing order.
    #[inline]
    pub fn from_sorted(nodes: [u32; 4]) -> Quad {
        debug_assert!(nodes[0] < nodes[1] && nodes[1] < nodes[2] && nodes[2] < nodes[3]);
        Quad { nodes }
    }

    #[inline]
    pub fn nodes(&self) -> [u32; 4] {
        self.nodes
    }
}

/// Induced subgraph of a quad: presence bits and weights for the six
/// canonical pairs. `weights[i] > 0` iff bit `i` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEdgeMask {
    pub bits: u8,
    pub weights: [f64; 6],
}

impl QuadEdgeMask {
    #[inline]
    pub fn edge_count(&self) -> u32 {
        (self.bits as u32).count_ones()
    }
}

/// Presence bits of the induced subgraph on `quad`, no weight lookup.
#[inline]
pub fn mask_bits(graph: &DailyGraph, quad: &Quad) -> u8 {
    let n = quad.nodes();
    let mut bits = 0u8;
    let mut i = 0;
    while i < 6 {
        let (a, b) = PAIR_ORDER[i];
        if graph.has_edge(n[a], n[b]) {
            bits |= 1 << i;
        }
        i += 1;
    }
    bits
}

/// Induced mask with edge weights copied from the graph.
pub fn induced_mask(graph: &DailyGraph, quad: &Quad) -> QuadEdgeMask {
    let n = quad.nodes();
    let mut bits = 0u8;
    let mut weights = [0.0f64; 6];
    for (i, &(a, b)) in PAIR_ORDER.iter().enumerate() {
        if let Some(w) = graph.weight(n[a], n[b]) {
            bits |= 1 << i;
            weights[i] = w;
        }
    }
    QuadEdgeMask { bits, weights }
}

const fn classify_raw(bits: u8) -> MotifType {
    let mut deg = [0u8; 4];
    let mut edges = 0u8;
    let mut i = 0;
    while i < 6 {
        if bits & (1 << i) != 0 {
            let (a, b) = PAIR_ORDER[i];
            deg[a] += 1;
            deg[b] += 1;
            edges += 1;
        }
        i += 1;
    }
    // Sort the four degrees descending with a fixed compare-swap network.
    let mut d = deg;
    let mut j = 0;
    while j < 4 {
        let mut k = 0;
        while k + 1 < 4 {
            if d[k] < d[k + 1] {
                let t = d[k];
                d[k] = d[k + 1];
                d[k + 1] = t;
            }
            k += 1;
        }
        j += 1;
    }
    match edges {
        6 => MotifType::Complete,
        5 => MotifType::Diamond,
        4 => {
            if d[0] == 2 {
                MotifType::Cycle
            } else {
                MotifType::Paw
            }
        }
        3 => {
            if d[3] == 0 {
                // triangle plus isolated node
                MotifType::Disconnected
            } else if d[0] == 3 {
                MotifType::Star
            } else {
                MotifType::Path
            }
        }
        _ => MotifType::Disconnected,
    }
}

const fn build_table() -> [MotifType; 64] {
    let mut table = [MotifType::Disconnected; 64];
    let mut m = 0;
    while m < 64 {
        table[m] = classify_raw(m as u8);
        m += 1;
    }
    table
}

/// Lookup table over all 64 edge masks; used by the census hot loop.
pub const CLASSIFY_TABLE: [MotifType; 64] = build_table();

/// Classify a 6-bit induced edge mask.
#[inline]
pub fn classify_bits(bits: u8) -> MotifType {
    CLASSIFY_TABLE[(bits & 0x3f) as usize]
}

/// Classify an induced mask.
#[inline]
pub fn classify(mask: &QuadEdgeMask) -> MotifType {
    classify_bits(mask.bits)
}

/// The full mask-to-type table.
pub fn classify_table() -> &'static [MotifType; 64] {
    &CLASSIFY_TABLE
}
