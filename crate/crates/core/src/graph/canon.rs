//! Canonical labeling.
//!
//! Vertices are numbered breadth-first; at each vertex the half-edges are
//! sorted by refined color and then by the number of their partner when the
//! partner is already numbered. Remaining ties, and the choice of start
//! vertex among those with the smallest signature, are branched over. The
//! smallest encoding over all branches is the canonical one. All sort keys
//! are isomorphism invariant, so isomorphic graphs explore the same set of
//! encodings.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::iso::refine_colors;
use super::{GraphMorphism, StableGraph};

/// Complete isomorphism invariant: the flattened canonical tables.
pub type CanonicalKey = Vec<u64>;

/// The canonical relabeling of `g` and the morphism `g -> canonical`.
///
/// Canonical ids are `0..F` and `0..V`.
pub fn canonical_form(g: &StableGraph) -> (StableGraph, GraphMorphism) {
    let (key, morphism) = canonical_labeling(g);
    (rebuild(g, &key, &morphism), morphism)
}

/// Just the canonical key, for deduplication.
pub(crate) fn canonical_key(g: &StableGraph) -> CanonicalKey {
    canonical_labeling(g).0
}

fn canonical_labeling(g: &StableGraph) -> (CanonicalKey, GraphMorphism) {
    let colors = refine_colors(&[g]).remove(0);
    let vertex_signature = |v: usize| {
        let mut s: Vec<u32> = g.half_edges_at(v).iter().map(|&h| colors[h]).collect();
        s.sort_unstable();
        (g.genus(v), s)
    };
    let best_signature = (0..g.vertex_count()).map(vertex_signature).min().expect("vertices");
    let mut best: Option<(CanonicalKey, GraphMorphism)> = None;
    for start in 0..g.vertex_count() {
        if vertex_signature(start) != best_signature {
            continue;
        }
        let mut state = State {
            vertex_number: vec![None; g.vertex_count()],
            half_number: vec![None; g.half_edge_count()],
            queue: VecDeque::from([start]),
            next_vertex: 1,
            next_half: 0,
        };
        state.vertex_number[start] = Some(0);
        explore(g, &colors, state, &mut best);
    }
    best.expect("at least one labeling")
}

#[derive(Clone)]
struct State {
    vertex_number: Vec<Option<usize>>,
    half_number: Vec<Option<usize>>,
    queue: VecDeque<usize>,
    next_vertex: usize,
    next_half: usize,
}

fn explore(
    g: &StableGraph,
    colors: &[u32],
    mut state: State,
    best: &mut Option<(CanonicalKey, GraphMorphism)>,
) {
    let Some(v) = state.queue.pop_front() else {
        let morphism = GraphMorphism {
            f1: state.half_number.iter().map(|x| x.expect("connected")).collect(),
            f0: state.vertex_number.iter().map(|x| x.expect("connected")).collect(),
        };
        let key = encode(g, &morphism);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            *best = Some((key, morphism));
        }
        return;
    };
    let key_of = |h: usize| {
        let partner = state.half_number[g.involution(h)].unwrap_or(usize::MAX);
        (colors[h], partner)
    };
    let mut local: Vec<usize> = g.half_edges_at(v).to_vec();
    local.sort_by_key(|&h| key_of(h));
    let groups: Vec<Vec<usize>> = local
        .chunk_by(|&a, &b| key_of(a) == key_of(b))
        .map(<[usize]>::to_vec)
        .collect();
    for_each_arrangement(&groups, &mut |ordering| {
        let mut next = state.clone();
        for &h in ordering {
            next.half_number[h] = Some(next.next_half);
            next.next_half += 1;
            let w = g.vertex_of(g.involution(h));
            if next.vertex_number[w].is_none() {
                next.vertex_number[w] = Some(next.next_vertex);
                next.next_vertex += 1;
                next.queue.push_back(w);
            }
        }
        explore(g, colors, next, best);
    });
}

/// Calls `f` with every concatenation of permutations of the groups.
fn for_each_arrangement(groups: &[Vec<usize>], f: &mut dyn FnMut(&[usize])) {
    fn go(groups: &[Vec<usize>], prefix: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        let Some((first, rest)) = groups.split_first() else {
            f(prefix);
            return;
        };
        let mut items = first.clone();
        permute(&mut items, 0, &mut |perm| {
            let len = prefix.len();
            prefix.extend_from_slice(perm);
            go(rest, prefix, f);
            prefix.truncate(len);
        });
    }
    go(groups, &mut Vec::new(), f);
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// `[V, F, genus by new vertex.., (vertex, partner, label) by new half-edge..]`.
fn encode(g: &StableGraph, m: &GraphMorphism) -> CanonicalKey {
    let (nv, nf) = (g.vertex_count(), g.half_edge_count());
    let mut genus = vec![0u64; nv];
    for v in 0..nv {
        genus[m.f0[v]] = g.genus(v) as u64;
    }
    let mut halves = vec![[0u64; 3]; nf];
    for h in 0..nf {
        halves[m.f1[h]] = [
            m.f0[g.vertex_of(h)] as u64,
            m.f1[g.involution(h)] as u64,
            g.leg_label(h).unwrap_or(0) as u64,
        ];
    }
    let mut key = vec![nv as u64, nf as u64];
    key.extend(genus);
    key.extend(halves.into_iter().flatten());
    key
}

fn rebuild(g: &StableGraph, key: &CanonicalKey, m: &GraphMorphism) -> StableGraph {
    let (nv, nf) = (g.vertex_count(), g.half_edge_count());
    let genus = key[2..2 + nv].iter().map(|&x| x as u32).collect();
    let mut involution = vec![0; nf];
    let mut incidence = vec![0; nf];
    let mut legs = vec![None; nf];
    for h in 0..nf {
        involution[m.f1[h]] = m.f1[g.involution(h)];
        incidence[m.f1[h]] = m.f0[g.vertex_of(h)];
        legs[m.f1[h]] = g.leg_label(h);
    }
    StableGraph::from_indices(genus, involution, incidence, legs)
        .expect("relabeling preserves validity")
}
