//! Ribbon structures on trivalent graphs and the signed action of graph
//! automorphisms on the vector space spanned by the edges.
//!
//! An automorphism `a` sends the basis vector of edge `e` to `±` the vector
//! of `a(e)`. The sign is `+1` when `a` preserves the cyclic order at both
//! ends of `e` or reverses it at both ends, `-1` otherwise. A loop has a
//! single vertex, counted as both ends, so loops always get `+1`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{GraphMorphism, StableGraph};
use crate::{Error, Result};

mod mobius;
mod tangent;

pub use mobius::{mobius_normalize, MobiusTransform, ProjectivePoint};
pub use tangent::{tangential_base_point, Chart, EdgeCoordinate, TangentialBasePoint};

/// A cyclic order on the three half-edges at every vertex, stored as the
/// successor of each half-edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RibbonStructure {
    successor: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrientationEffect {
    Preserved,
    Reversed,
}

/// A signed permutation matrix indexed by the graph's edges in canonical
/// order; entry `[a(e)][e]` holds the sign of edge `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedEdgeMatrix {
    pub edges: Vec<(usize, usize)>,
    pub entries: Vec<Vec<i8>>,
}

fn require_trivalent(g: &StableGraph) -> Result<()> {
    match (0..g.vertex_count()).find(|&v| g.valence(v) != 3) {
        Some(v) => Err(Error::NotTrivalent(g.vertex_name(v).into())),
        None => Ok(()),
    }
}

impl RibbonStructure {
    /// From the cyclic order `h1 -> h2 -> h3 -> h1` at every vertex, indexed
    /// by vertex.
    pub fn from_cyclic_orders(g: &StableGraph, orders: &[[usize; 3]]) -> Result<Self> {
        require_trivalent(g)?;
        if orders.len() != g.vertex_count() {
            return Err(Error::RibbonMismatch(format!(
                "{} cyclic orders for {} vertices",
                orders.len(),
                g.vertex_count()
            )));
        }
        let mut successor = vec![usize::MAX; g.half_edge_count()];
        for (v, order) in orders.iter().enumerate() {
            let mut sorted = *order;
            sorted.sort_unstable();
            if sorted != g.half_edges_at(v) {
                return Err(Error::RibbonMismatch(format!(
                    "order at vertex {} is not a cycle on its half-edges",
                    g.vertex_name(v)
                )));
            }
            for i in 0..3 {
                successor[order[i]] = order[(i + 1) % 3];
            }
        }
        Ok(RibbonStructure { successor })
    }

    pub fn successor(&self, h: usize) -> usize {
        self.successor[h]
    }

    /// The cyclic order at `v`, starting from its smallest half-edge.
    pub fn cyclic_order(&self, g: &StableGraph, v: usize) -> [usize; 3] {
        let first = g.half_edges_at(v)[0];
        let second = self.successor[first];
        [first, second, self.successor[second]]
    }

    /// The opposite cyclic order at every vertex.
    pub fn reversed(&self) -> Self {
        let mut successor = vec![0; self.successor.len()];
        for (h, &s) in self.successor.iter().enumerate() {
            successor[s] = h;
        }
        RibbonStructure { successor }
    }

    /// True iff this structure is a valid ribbon structure on `g`.
    pub fn fits(&self, g: &StableGraph) -> bool {
        self.successor.len() == g.half_edge_count()
            && (0..g.vertex_count()).all(|v| {
                let at = g.half_edges_at(v);
                at.len() == 3 && {
                    let order = self.cyclic_order(g, v);
                    let mut sorted = order;
                    sorted.sort_unstable();
                    sorted == at && self.successor[order[2]] == order[0]
                }
            })
    }
}

/// The `2^V` ribbon structures of a trivalent graph.
///
/// At each vertex with half-edges `a < b < c` the two orders are `a -> b ->
/// c` (listed first) and `a -> c -> b`; vertex `0` varies slowest.
pub fn enumerate_ribbons(g: &StableGraph) -> Result<Vec<RibbonStructure>> {
    require_trivalent(g)?;
    let nv = g.vertex_count();
    (0..1usize << nv)
        .map(|bits| {
            let orders: Vec<[usize; 3]> = (0..nv)
                .map(|v| {
                    let at = g.half_edges_at(v);
                    if bits >> (nv - 1 - v) & 1 == 0 {
                        [at[0], at[1], at[2]]
                    } else {
                        [at[0], at[2], at[1]]
                    }
                })
                .collect();
            RibbonStructure::from_cyclic_orders(g, &orders)
        })
        .collect()
}

/// Whether pushing the cyclic order at `v` through `a` gives the cyclic
/// order at `a(v)`.
pub fn vertex_orientation_effect(
    g: &StableGraph,
    a: &GraphMorphism,
    r: &RibbonStructure,
    v: usize,
) -> OrientationEffect {
    let h = g.half_edges_at(v)[0];
    if a.f1[r.successor(h)] == r.successor(a.f1[h]) {
        OrientationEffect::Preserved
    } else {
        OrientationEffect::Reversed
    }
}

/// Sign of the edge with index `edge` (in [`StableGraph::edges`] order).
pub fn edge_sign(g: &StableGraph, a: &GraphMorphism, r: &RibbonStructure, edge: usize) -> i8 {
    let (h, k) = g.edges()[edge];
    sign_between(g, a, r, h, k)
}

fn sign_between(g: &StableGraph, a: &GraphMorphism, r: &RibbonStructure, h: usize, k: usize) -> i8 {
    let ends = [g.vertex_of(h), g.vertex_of(k)];
    let [x, y] = ends.map(|v| vertex_orientation_effect(g, a, r, v));
    if x == y {
        1
    } else {
        -1
    }
}

pub fn rep_matrix(g: &StableGraph, a: &GraphMorphism, r: &RibbonStructure) -> SignedEdgeMatrix {
    let edges = g.edges();
    let mut entries = vec![vec![0i8; edges.len()]; edges.len()];
    for (col, &(h, k)) in edges.iter().enumerate() {
        let row = g.edge_index(a.f1[h]).expect("automorphisms map edges to edges");
        entries[row][col] = sign_between(g, a, r, h, k);
    }
    SignedEdgeMatrix { edges, entries }
}

impl SignedEdgeMatrix {
    pub fn identity(edges: Vec<(usize, usize)>) -> Self {
        let n = edges.len();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| (i == j) as i8).collect())
            .collect();
        SignedEdgeMatrix { edges, entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.entries[i][k] * other.entries[k][j]).sum())
                    .collect()
            })
            .collect();
        SignedEdgeMatrix {
            edges: self.edges.clone(),
            entries,
        }
    }

    /// Exactly one nonzero entry, equal to `±1`, in every row and column.
    pub fn is_signed_permutation(&self) -> bool {
        let n = self.dim();
        let ok = |line: &mut dyn Iterator<Item = i8>| {
            let mut nonzero = 0;
            for x in line {
                match x {
                    0 => {}
                    1 | -1 => nonzero += 1,
                    _ => return false,
                }
            }
            nonzero == 1
        };
        self.entries.iter().all(|row| row.len() == n)
            && (0..n).all(|i| ok(&mut self.entries[i].iter().copied()))
            && (0..n).all(|j| ok(&mut (0..n).map(|i| self.entries[i][j])))
    }
}
