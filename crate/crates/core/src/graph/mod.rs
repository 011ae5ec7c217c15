//! Stable graphs as half-edge sextuples `(F, V, j, d, g, c)`.
//!
//! Half-edges and vertices are dense indices `0..F` and `0..V`; the original
//! ids are kept as names so documents round-trip. Edges are the two-element
//! orbits `{h, j(h)}` of the involution and legs are its fixed points, each
//! carrying a label in `1..=n`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

mod canon;
mod enumerate;
mod iso;

pub use canon::{canonical_form, CanonicalKey};
pub use enumerate::enumerate_max_degenerate;
pub use iso::{find_isomorphisms, refine_colors};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StableGraph {
    half_edge_names: Vec<String>,
    vertex_names: Vec<String>,
    involution: Vec<usize>,
    incidence: Vec<usize>,
    genus: Vec<u32>,
    legs: Vec<Option<u32>>,
    // derived
    at_vertex: Vec<Vec<usize>>,
}

/// Counts attached to a graph; `total_genus = first_betti + sum of genera`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub legs: usize,
    pub first_betti: i64,
    pub total_genus: i64,
    pub valences: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub stable: bool,
    pub maximally_degenerate: bool,
}

/// A pair of bijections `f1: F -> F'` and `f0: V -> V'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphMorphism {
    pub f1: Vec<usize>,
    pub f0: Vec<usize>,
}

impl StableGraph {
    /// Builds and validates a graph.
    ///
    /// `legs[h]` is the label of half-edge `h` when it is a leg, `None`
    /// otherwise.
    pub fn new(
        half_edge_names: Vec<String>,
        vertices: Vec<(String, u32)>,
        involution: Vec<usize>,
        incidence: Vec<usize>,
        legs: Vec<Option<u32>>,
    ) -> Result<Self> {
        let (vertex_names, genus) = vertices.into_iter().unzip();
        let graph = Self::assemble(half_edge_names, vertex_names, genus, involution, incidence, legs)?;
        graph.validate()?;
        Ok(graph)
    }

    /// Like [`StableGraph::new`] with ids `0..F` and `0..V` as names.
    pub fn from_indices(
        genus: Vec<u32>,
        involution: Vec<usize>,
        incidence: Vec<usize>,
        legs: Vec<Option<u32>>,
    ) -> Result<Self> {
        let half_edges = (0..involution.len()).map(|i| i.to_string()).collect();
        let vertices = genus
            .into_iter()
            .enumerate()
            .map(|(i, g)| (i.to_string(), g))
            .collect();
        Self::new(half_edges, vertices, involution, incidence, legs)
    }

    /// Builds a graph from vertex genera, edges as vertex pairs and the
    /// vertex carrying each leg (leg `i` gets label `i + 1`).
    ///
    /// Edge `k` becomes half-edges `2k` (at its first vertex) and `2k + 1`;
    /// legs are numbered after all edges.
    pub fn from_edges(genus: &[u32], edges: &[(usize, usize)], leg_vertices: &[usize]) -> Result<Self> {
        let mut involution = Vec::new();
        let mut incidence = Vec::new();
        let mut legs = Vec::new();
        for (k, &(u, v)) in edges.iter().enumerate() {
            involution.extend([2 * k + 1, 2 * k]);
            incidence.extend([u, v]);
            legs.extend([None, None]);
        }
        for (i, &v) in leg_vertices.iter().enumerate() {
            involution.push(involution.len());
            incidence.push(v);
            legs.push(Some(i as u32 + 1));
        }
        Self::from_indices(genus.to_vec(), involution, incidence, legs)
    }

    fn assemble(
        half_edge_names: Vec<String>,
        vertex_names: Vec<String>,
        genus: Vec<u32>,
        involution: Vec<usize>,
        incidence: Vec<usize>,
        legs: Vec<Option<u32>>,
    ) -> Result<Self> {
        let f = half_edge_names.len();
        if involution.len() != f || incidence.len() != f || legs.len() != f {
            return Err(Error::MalformedGraph(
                "half-edge tables have different lengths".into(),
            ));
        }
        if vertex_names.is_empty() {
            return Err(Error::MalformedGraph("no vertices".into()));
        }
        for names in [&half_edge_names, &vertex_names] {
            let distinct: BTreeSet<_> = names.iter().collect();
            if distinct.len() != names.len() {
                return Err(Error::MalformedGraph("duplicate ids".into()));
            }
        }
        if let Some(h) = (0..f).find(|&h| incidence[h] >= vertex_names.len()) {
            return Err(Error::MalformedGraph(format!(
                "half-edge {} is attached to an unknown vertex",
                half_edge_names[h]
            )));
        }
        if let Some(h) = (0..f).find(|&h| involution[h] >= f) {
            return Err(Error::NotInvolution(half_edge_names[h].clone()));
        }
        let mut at_vertex = vec![Vec::new(); vertex_names.len()];
        for (h, &v) in incidence.iter().enumerate() {
            at_vertex[v].push(h);
        }
        Ok(StableGraph {
            half_edge_names,
            vertex_names,
            involution,
            incidence,
            genus,
            legs,
            at_vertex,
        })
    }

    /// Checks `j∘j = id`, that `c` is a bijection onto `1..=n` and that the
    /// graph is connected.
    pub fn validate(&self) -> Result<()> {
        for h in 0..self.half_edge_count() {
            if self.involution[self.involution[h]] != h {
                return Err(Error::NotInvolution(self.half_edge_names[h].clone()));
            }
        }
        let mut labels = Vec::new();
        for h in 0..self.half_edge_count() {
            match (self.is_leg(h), self.legs[h]) {
                (true, Some(label)) => labels.push(label),
                (true, None) => {
                    return Err(Error::LegLabelNotBijective(format!(
                        "leg {} has no label",
                        self.half_edge_names[h]
                    )))
                }
                (false, Some(_)) => {
                    return Err(Error::LegLabelNotBijective(format!(
                        "half-edge {} is not a leg but carries a label",
                        self.half_edge_names[h]
                    )))
                }
                (false, None) => {}
            }
        }
        labels.sort_unstable();
        if labels.iter().enumerate().any(|(i, &l)| l as usize != i + 1) {
            return Err(Error::LegLabelNotBijective(format!("labels {labels:?}")));
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &h in &self.at_vertex[v] {
                let w = self.incidence[self.involution[h]];
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn half_edge_count(&self) -> usize {
        self.involution.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn involution(&self, h: usize) -> usize {
        self.involution[h]
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.incidence[h]
    }

    pub fn genus(&self, v: usize) -> u32 {
        self.genus[v]
    }

    pub fn leg_label(&self, h: usize) -> Option<u32> {
        self.legs[h]
    }

    pub fn is_leg(&self, h: usize) -> bool {
        self.involution[h] == h
    }

    /// Half-edges at `v`, in increasing index order.
    pub fn half_edges_at(&self, v: usize) -> &[usize] {
        &self.at_vertex[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.at_vertex[v].len()
    }

    pub fn half_edge_name(&self, h: usize) -> &str {
        &self.half_edge_names[h]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn half_edge_index(&self, name: &str) -> Option<usize> {
        self.half_edge_names.iter().position(|n| n == name)
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|n| n == name)
    }

    /// Edges as `(h, j(h))` with `h < j(h)`, ordered by `h`. This is the
    /// canonical edge order used for edge-indexed data.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.half_edge_count())
            .filter(|&h| h < self.involution[h])
            .map(|h| (h, self.involution[h]))
            .collect()
    }

    /// Position of the edge containing `h` in [`StableGraph::edges`].
    pub fn edge_index(&self, h: usize) -> Option<usize> {
        if self.is_leg(h) {
            return None;
        }
        let lo = h.min(self.involution[h]);
        Some((0..lo).filter(|&x| x < self.involution[x]).count())
    }

    /// Legs ordered by label.
    pub fn legs(&self) -> Vec<usize> {
        let mut legs: Vec<usize> = (0..self.half_edge_count()).filter(|&h| self.is_leg(h)).collect();
        legs.sort_by_key(|&h| self.legs[h]);
        legs
    }

    pub fn stats(&self) -> GraphStats {
        let edges = self.edges().len();
        let legs = self.half_edge_count() - 2 * edges;
        let first_betti = edges as i64 - self.vertex_count() as i64 + 1;
        GraphStats {
            vertices: self.vertex_count(),
            edges,
            legs,
            first_betti,
            total_genus: first_betti + self.genus.iter().map(|&g| g as i64).sum::<i64>(),
            valences: (0..self.vertex_count()).map(|v| self.valence(v)).collect(),
        }
    }

    /// Stable iff `2 g(v) - 2 + valence(v) > 0` at every vertex; maximally
    /// degenerate iff moreover every vertex has genus 0 and valence 3.
    pub fn classify(&self) -> Classification {
        let stable = (0..self.vertex_count())
            .all(|v| 2 * self.genus[v] as i64 - 2 + self.valence(v) as i64 > 0);
        let trivalent_rational =
            (0..self.vertex_count()).all(|v| self.genus[v] == 0 && self.valence(v) == 3);
        Classification {
            stable,
            maximally_degenerate: stable && trivalent_rational,
        }
    }
}

impl GraphMorphism {
    pub fn identity(g: &StableGraph) -> Self {
        GraphMorphism {
            f1: (0..g.half_edge_count()).collect(),
            f0: (0..g.vertex_count()).collect(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        GraphMorphism {
            f1: other.f1.iter().map(|&h| self.f1[h]).collect(),
            f0: other.f0.iter().map(|&v| self.f0[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let invert = |f: &[usize]| {
            let mut inv = vec![0; f.len()];
            for (x, &y) in f.iter().enumerate() {
                inv[y] = x;
            }
            inv
        };
        GraphMorphism {
            f1: invert(&self.f1),
            f0: invert(&self.f0),
        }
    }

    /// Checks literally that this is a morphism `g -> h`: both maps are
    /// bijections, `f1 j = j' f1`, `f0 d = d' f1`, `g = g' f0`, `c = c' f1`.
    pub fn is_morphism(&self, g: &StableGraph, h: &StableGraph) -> bool {
        let bijective = |f: &[usize], n: usize, m: usize| {
            if f.len() != n || n != m {
                return false;
            }
            let mut hit = vec![false; m];
            f.iter().all(|&y| y < m && !core::mem::replace(&mut hit[y], true))
        };
        if !bijective(&self.f1, g.half_edge_count(), h.half_edge_count())
            || !bijective(&self.f0, g.vertex_count(), h.vertex_count())
        {
            return false;
        }
        (0..g.half_edge_count()).all(|x| {
            self.f1[g.involution(x)] == h.involution(self.f1[x])
                && self.f0[g.vertex_of(x)] == h.vertex_of(self.f1[x])
                && g.leg_label(x) == h.leg_label(self.f1[x])
        }) && (0..g.vertex_count()).all(|v| g.genus(v) == h.genus(self.f0[v]))
    }
}

pub fn validate_graph(g: &StableGraph) -> Result<()> {
    g.validate()
}

pub fn graph_stats(g: &StableGraph) -> GraphStats {
    g.stats()
}

pub fn classify(g: &StableGraph) -> Classification {
    g.classify()
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::StableGraph;

    /// One genus-0 vertex with a loop and leg 1.
    pub fn one_loop() -> StableGraph {
        StableGraph::from_edges(&[0], &[(0, 0)], &[0]).unwrap()
    }

    /// Two genus-0 vertices joined by three edges.
    pub fn theta() -> StableGraph {
        StableGraph::from_edges(&[0, 0], &[(0, 1), (0, 1), (0, 1)], &[]).unwrap()
    }

    /// Two loops joined by a bridge; edges in order (loop, bridge, loop).
    pub fn dumbbell() -> StableGraph {
        StableGraph::from_edges(&[0, 0], &[(0, 0), (0, 1), (1, 1)], &[]).unwrap()
    }

    /// Legs 1, 2 on one vertex, legs 3, 4 on the other.
    pub fn four_legs() -> StableGraph {
        StableGraph::from_edges(&[0, 0], &[(0, 1)], &[0, 0, 1, 1]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn validate_examples() {
        // one vertex, half-edges {a, b, l}, j = (a b), l a leg labelled 1
        let g = StableGraph::new(
            vec!["a".into(), "b".into(), "l".into()],
            vec![("v".into(), 0)],
            vec![1, 0, 2],
            vec![0, 0, 0],
            vec![None, None, Some(1)],
        );
        assert!(g.is_ok());

        let cycle = StableGraph::from_indices(vec![0], vec![1, 2, 0], vec![0, 0, 0], vec![None; 3]);
        assert!(matches!(cycle, Err(Error::NotInvolution(_))));

        let apart = StableGraph::from_indices(vec![0, 0], vec![1, 0, 3, 2], vec![0, 0, 1, 1], vec![None; 4]);
        assert_eq!(apart, Err(Error::Disconnected));
    }

    #[test]
    fn leg_labels_must_be_bijective() {
        let gap = StableGraph::from_indices(vec![0], vec![0, 1], vec![0, 0], vec![Some(1), Some(3)]);
        assert!(matches!(gap, Err(Error::LegLabelNotBijective(_))));
        let twice = StableGraph::from_indices(vec![0], vec![0, 1], vec![0, 0], vec![Some(1), Some(1)]);
        assert!(matches!(twice, Err(Error::LegLabelNotBijective(_))));
        let unlabeled = StableGraph::from_indices(vec![0], vec![0], vec![0], vec![None]);
        assert!(matches!(unlabeled, Err(Error::LegLabelNotBijective(_))));
        let labeled_edge =
            StableGraph::from_indices(vec![0], vec![1, 0], vec![0, 0], vec![Some(1), None]);
        assert!(matches!(labeled_edge, Err(Error::LegLabelNotBijective(_))));
    }

    #[test]
    fn malformed_tables() {
        let bad = StableGraph::from_indices(vec![0], vec![0], vec![3], vec![Some(1)]);
        assert!(matches!(bad, Err(Error::MalformedGraph(_))));
        let none = StableGraph::from_indices(vec![], vec![], vec![], vec![]);
        assert!(matches!(none, Err(Error::MalformedGraph(_))));
    }

    #[test]
    fn stats_examples() {
        let s = one_loop().stats();
        assert_eq!((s.vertices, s.edges, s.legs, s.first_betti, s.total_genus), (1, 1, 1, 1, 1));
        let s = theta().stats();
        assert_eq!((s.vertices, s.edges, s.legs, s.first_betti, s.total_genus), (2, 3, 0, 2, 2));
        assert_eq!(s.valences, [3, 3]);
        let s = four_legs().stats();
        assert_eq!((s.vertices, s.edges, s.legs, s.first_betti, s.total_genus), (2, 1, 4, 0, 0));
        let g = StableGraph::from_edges(&[2, 1], &[(0, 1)], &[]).unwrap();
        assert_eq!(g.stats().total_genus, 3);
    }

    #[test]
    fn classify_examples() {
        let c = theta().classify();
        assert!(c.stable && c.maximally_degenerate);
        let lonely = StableGraph::from_edges(&[1], &[], &[]).unwrap();
        assert!(!lonely.classify().stable);
        let two_legs = StableGraph::from_edges(&[0], &[], &[0, 0]).unwrap();
        assert!(!two_legs.classify().stable);
        let high_genus = StableGraph::from_edges(&[1, 0], &[(0, 1)], &[1, 1]).unwrap();
        assert_eq!(
            high_genus.classify(),
            Classification {
                stable: true,
                maximally_degenerate: false
            }
        );
    }

    #[test]
    fn edges_in_canonical_order() {
        let g = dumbbell();
        assert_eq!(g.edges(), [(0, 1), (2, 3), (4, 5)]);
        assert_eq!(g.edge_index(3), Some(1));
        assert_eq!(g.edge_index(5), Some(2));
        assert_eq!(four_legs().legs(), [2, 3, 4, 5]);
    }

    #[test]
    fn morphism_algebra() {
        let g = theta();
        let id = GraphMorphism::identity(&g);
        assert!(id.is_morphism(&g, &g));
        let swap = GraphMorphism {
            f1: vec![1, 0, 3, 2, 5, 4],
            f0: vec![1, 0],
        };
        assert!(swap.is_morphism(&g, &g));
        assert_eq!(swap.compose(&swap), id);
        assert_eq!(swap.inverse(), swap);
        let broken = GraphMorphism {
            f1: vec![1, 0, 3, 2, 5, 4],
            f0: vec![0, 1],
        };
        assert!(!broken.is_morphism(&g, &g));
    }
}
