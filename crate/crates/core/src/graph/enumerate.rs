//! Maximally degenerate graphs of genus `g` with `n` labelled legs.
//!
//! Such a graph has `2g - 2 + n` trivalent genus-0 vertices. Half-edge slots
//! `3v, 3v + 1, 3v + 2` belong to vertex `v`; legs are placed first, then the
//! remaining slots are paired off. Free slots of a vertex are filled in
//! order, and of the vertices nothing has touched yet only the first is ever
//! chosen, since untouched vertices are interchangeable. What survives this
//! pruning is deduplicated by canonical form.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::canon::{canonical_form, canonical_key, CanonicalKey};
use super::StableGraph;
use crate::{Error, Result};

/// One graph per isomorphism class, in increasing canonical-key order, each
/// given in its canonical labeling.
pub fn enumerate_max_degenerate(genus: u32, legs: u32) -> Result<Vec<StableGraph>> {
    let euler = 2 * genus as i64 - 2 + legs as i64;
    if euler <= 0 {
        return Err(Error::UnstablePair { genus, legs });
    }
    let vertices = euler as usize;
    let mut builder = Builder {
        used: vec![0; vertices],
        involution: vec![usize::MAX; 3 * vertices],
        labels: vec![None; 3 * vertices],
        found: BTreeMap::new(),
    };
    builder.place_leg(1, legs);
    Ok(builder.found.into_values().collect())
}

struct Builder {
    used: Vec<usize>,
    involution: Vec<usize>,
    labels: Vec<Option<u32>>,
    found: BTreeMap<CanonicalKey, StableGraph>,
}

impl Builder {
    /// Vertices a new half-edge may go to: touched ones with room, plus the
    /// first untouched one.
    fn targets(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.used.len())
            .filter(|&v| self.used[v] > 0 && self.used[v] < 3)
            .collect();
        if let Some(v) = (0..self.used.len()).find(|&v| self.used[v] == 0) {
            out.push(v);
        }
        out.sort_unstable();
        out
    }

    fn take_slot(&mut self, v: usize) -> usize {
        let slot = 3 * v + self.used[v];
        self.used[v] += 1;
        slot
    }

    fn place_leg(&mut self, label: u32, legs: u32) {
        if label > legs {
            self.pair_next();
            return;
        }
        for v in self.targets() {
            let slot = self.take_slot(v);
            self.involution[slot] = slot;
            self.labels[slot] = Some(label);
            self.place_leg(label + 1, legs);
            self.labels[slot] = None;
            self.involution[slot] = usize::MAX;
            self.used[v] -= 1;
        }
    }

    fn pair_next(&mut self) {
        let Some(v) = (0..self.used.len()).find(|&v| self.used[v] < 3) else {
            self.record();
            return;
        };
        let slot = self.take_slot(v);
        for w in self.targets() {
            let partner = self.take_slot(w);
            self.involution[slot] = partner;
            self.involution[partner] = slot;
            self.pair_next();
            self.involution[partner] = usize::MAX;
            self.involution[slot] = usize::MAX;
            self.used[w] -= 1;
        }
        self.used[v] -= 1;
    }

    fn record(&mut self) {
        let incidence = (0..self.involution.len()).map(|h| h / 3).collect();
        let Ok(graph) = StableGraph::from_indices(
            vec![0; self.used.len()],
            self.involution.clone(),
            incidence,
            self.labels.clone(),
        ) else {
            // disconnected
            return;
        };
        let key = canonical_key(&graph);
        self.found
            .entry(key)
            .or_insert_with(|| canonical_form(&graph).0);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_max_degenerate(0, 3).unwrap().len(), 1);
        assert_eq!(enumerate_max_degenerate(0, 4).unwrap().len(), 3);
        assert_eq!(enumerate_max_degenerate(1, 1).unwrap().len(), 1);
        assert_eq!(enumerate_max_degenerate(2, 0).unwrap().len(), 2);
    }

    #[test]
    fn unstable_pairs_are_rejected() {
        for (g, n) in [(0, 0), (0, 1), (0, 2), (1, 0)] {
            assert_eq!(
                enumerate_max_degenerate(g, n),
                Err(Error::UnstablePair { genus: g, legs: n })
            );
        }
    }
}
