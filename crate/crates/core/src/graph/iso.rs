//! Color refinement on half-edges and the isomorphism search.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{GraphMorphism, StableGraph};

/// Stable half-edge colors for each graph, computed on their disjoint union
/// so colors are comparable across graphs.
///
/// The initial color of `h` records whether it is a leg, its label, the
/// genus and valence of its vertex, whether it lies on a loop and how many
/// edges run parallel to it. Each round adds the color of `j(h)` and
/// the multiset of colors at the vertex of `h`. Color values are ranks of
/// sorted signatures, hence invariant under isomorphism.
pub fn refine_colors(graphs: &[&StableGraph]) -> Vec<Vec<u32>> {
    let mut colors: Vec<Vec<u32>> = Vec::with_capacity(graphs.len());
    let mut signatures: Vec<Vec<Vec<u64>>> = graphs
        .iter()
        .map(|g| {
            (0..g.half_edge_count())
                .map(|h| {
                    let v = g.vertex_of(h);
                    let w = g.vertex_of(g.involution(h));
                    let parallel = g
                        .half_edges_at(v)
                        .iter()
                        .filter(|&&x| !g.is_leg(x) && g.vertex_of(g.involution(x)) == w)
                        .count();
                    vec![
                        g.is_leg(h) as u64,
                        g.leg_label(h).unwrap_or(0) as u64,
                        g.genus(v) as u64,
                        g.valence(v) as u64,
                        (!g.is_leg(h) && v == w) as u64,
                        parallel as u64,
                    ]
                })
                .collect()
        })
        .collect();
    let mut classes = 0;
    loop {
        let ranks: BTreeMap<&Vec<u64>, u32> = {
            let mut all: Vec<&Vec<u64>> = signatures.iter().flatten().collect();
            all.sort();
            all.dedup();
            all.into_iter().enumerate().map(|(i, s)| (s, i as u32)).collect()
        };
        colors.clear();
        colors.extend(
            signatures
                .iter()
                .map(|sigs| sigs.iter().map(|s| ranks[s]).collect::<Vec<_>>()),
        );
        if ranks.len() == classes {
            return colors;
        }
        classes = ranks.len();
        signatures = graphs
            .iter()
            .zip(&colors)
            .map(|(g, c)| {
                (0..g.half_edge_count())
                    .map(|h| {
                        let mut around: Vec<u64> = g
                            .half_edges_at(g.vertex_of(h))
                            .iter()
                            .map(|&x| c[x] as u64)
                            .collect();
                        around.sort_unstable();
                        let mut sig = vec![c[h] as u64, c[g.involution(h)] as u64];
                        sig.extend(around);
                        sig
                    })
                    .collect()
            })
            .collect();
    }
}

/// Every morphism `g -> h`, ordered lexicographically by the half-edge map.
///
/// For `g = h` this is the automorphism group, identity included. Leg labels
/// are preserved, so automorphisms never permute legs.
pub fn find_isomorphisms(g: &StableGraph, h: &StableGraph) -> Vec<GraphMorphism> {
    if g.half_edge_count() != h.half_edge_count() || g.vertex_count() != h.vertex_count() {
        return Vec::new();
    }
    let colors = refine_colors(&[g, h]);
    let (cg, ch) = (&colors[0], &colors[1]);
    let mut histogram_g = cg.clone();
    let mut histogram_h = ch.clone();
    histogram_g.sort_unstable();
    histogram_h.sort_unstable();
    if histogram_g != histogram_h {
        return Vec::new();
    }
    let mut search = Search {
        g,
        h,
        cg,
        ch,
        order: traversal_order(g),
        f1: vec![None; g.half_edge_count()],
        used1: vec![false; h.half_edge_count()],
        f0: vec![None; g.vertex_count()],
        used0: vec![false; h.vertex_count()],
        found: Vec::new(),
    };
    search.extend(0);
    search.found
}

/// Half-edges grouped by vertex, vertices in breadth-first order from `0`.
fn traversal_order(g: &StableGraph) -> Vec<usize> {
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = alloc::collections::VecDeque::from([0usize]);
    seen[0] = true;
    let mut order = Vec::with_capacity(g.half_edge_count());
    while let Some(v) = queue.pop_front() {
        for &x in g.half_edges_at(v) {
            order.push(x);
            let w = g.vertex_of(g.involution(x));
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    order
}

struct Search<'a> {
    g: &'a StableGraph,
    h: &'a StableGraph,
    cg: &'a [u32],
    ch: &'a [u32],
    order: Vec<usize>,
    f1: Vec<Option<usize>>,
    used1: Vec<bool>,
    f0: Vec<Option<usize>>,
    used0: Vec<bool>,
    found: Vec<GraphMorphism>,
}

enum Undo {
    Half(usize),
    Vertex(usize),
}

impl Search<'_> {
    fn extend(&mut self, mut pos: usize) {
        while pos < self.order.len() && self.f1[self.order[pos]].is_some() {
            pos += 1;
        }
        if pos == self.order.len() {
            self.finish_vertices(0);
            return;
        }
        let x = self.order[pos];
        let candidates: Vec<usize> = match self.f0[self.g.vertex_of(x)] {
            Some(w) => self.h.half_edges_at(w).to_vec(),
            None => (0..self.h.half_edge_count()).collect(),
        };
        for y in candidates {
            if self.used1[y] || self.cg[x] != self.ch[y] {
                continue;
            }
            let mut log = Vec::new();
            if self.assign(x, y, &mut log) {
                self.extend(pos + 1);
            }
            self.undo(log);
        }
    }

    /// Vertices without half-edges (only a lone vertex can have none).
    fn finish_vertices(&mut self, from: usize) {
        let Some(v) = (from..self.g.vertex_count()).find(|&v| self.f0[v].is_none()) else {
            let morphism = GraphMorphism {
                f1: self.f1.iter().map(|x| x.expect("complete")).collect(),
                f0: self.f0.iter().map(|x| x.expect("complete")).collect(),
            };
            if morphism.is_morphism(self.g, self.h) {
                self.found.push(morphism);
            }
            return;
        };
        for w in 0..self.h.vertex_count() {
            if !self.used0[w]
                && self.h.valence(w) == 0
                && self.h.genus(w) == self.g.genus(v)
            {
                self.f0[v] = Some(w);
                self.used0[w] = true;
                self.finish_vertices(v + 1);
                self.f0[v] = None;
                self.used0[w] = false;
            }
        }
    }

    fn map_vertex(&mut self, v: usize, w: usize, log: &mut Vec<Undo>) -> bool {
        match self.f0[v] {
            Some(existing) => existing == w,
            None => {
                if self.used0[w] || self.g.genus(v) != self.h.genus(w) {
                    return false;
                }
                self.f0[v] = Some(w);
                self.used0[w] = true;
                log.push(Undo::Vertex(v));
                true
            }
        }
    }

    fn map_half(&mut self, x: usize, y: usize, log: &mut Vec<Undo>) -> bool {
        match self.f1[x] {
            Some(existing) => existing == y,
            None => {
                if self.used1[y] || self.cg[x] != self.ch[y] {
                    return false;
                }
                self.f1[x] = Some(y);
                self.used1[y] = true;
                log.push(Undo::Half(x));
                self.map_vertex(self.g.vertex_of(x), self.h.vertex_of(y), log)
            }
        }
    }

    /// Maps `x -> y` and the forced `j(x) -> j'(y)`.
    fn assign(&mut self, x: usize, y: usize, log: &mut Vec<Undo>) -> bool {
        if self.g.is_leg(x) != self.h.is_leg(y) {
            return false;
        }
        self.map_half(x, y, log)
            && self.map_half(self.g.involution(x), self.h.involution(y), log)
    }

    fn undo(&mut self, log: Vec<Undo>) {
        for step in log.into_iter().rev() {
            match step {
                Undo::Half(x) => {
                    let y = self.f1[x].take().expect("logged");
                    self.used1[y] = false;
                }
                Undo::Vertex(v) => {
                    let w = self.f0[v].take().expect("logged");
                    self.used0[w] = false;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn automorphism_group_orders() {
        for (g, order) in [(theta(), 12), (one_loop(), 2), (four_legs(), 1), (dumbbell(), 8)] {
            let auts = find_isomorphisms(&g, &g);
            assert_eq!(auts.len(), order);
            assert_eq!(auts[0], GraphMorphism::identity(&g));
        }
    }

    #[test]
    fn non_isomorphic_pairs() {
        assert!(find_isomorphisms(&theta(), &dumbbell()).is_empty());
        let other_split = StableGraph::from_edges(&[0, 0], &[(0, 1)], &[0, 1, 0, 1]).unwrap();
        assert!(find_isomorphisms(&four_legs(), &other_split).is_empty());
        let relabeled = StableGraph::from_edges(&[0, 0], &[(1, 0)], &[1, 1, 0, 0]).unwrap();
        assert_eq!(find_isomorphisms(&four_legs(), &relabeled).len(), 1);
    }

    #[test]
    fn lone_vertex() {
        let a = StableGraph::from_edges(&[2], &[], &[]).unwrap();
        let b = StableGraph::from_edges(&[3], &[], &[]).unwrap();
        assert_eq!(find_isomorphisms(&a, &a).len(), 1);
        assert!(find_isomorphisms(&a, &b).is_empty());
    }

    #[test]
    fn refinement_separates_theta_from_dumbbell() {
        let colors = refine_colors(&[&theta(), &dumbbell()]);
        let mut a = colors[0].clone();
        let mut b = colors[1].clone();
        a.sort();
        b.sort();
        assert_ne!(a, b);
    }
}
