mod common {
    pub mod oracle;
}

use std::collections::BTreeSet;

use common::oracle::{automorphisms, max_degenerate_classes, Shape, FAMILIES};
use tanbase_core::graph::{canonical_form, enumerate_max_degenerate, find_isomorphisms};

#[test]
fn oracle_counts() {
    let counts: Vec<usize> = FAMILIES
        .iter()
        .map(|&(g, n)| max_degenerate_classes(g, n).len())
        .collect();
    assert_eq!(counts, [1, 3, 15, 105, 1, 2, 7, 2]);
}

#[test]
fn enumeration_matches_oracle() {
    for (genus, legs) in FAMILIES {
        let graphs = enumerate_max_degenerate(genus, legs).unwrap();
        let found: BTreeSet<Shape> = graphs.iter().map(|g| Shape::from_graph(g).canonical()).collect();
        assert_eq!(found.len(), graphs.len(), "duplicate classes for ({genus},{legs})");
        assert_eq!(found, max_degenerate_classes(genus, legs), "({genus},{legs})");
        for g in &graphs {
            let s = g.stats();
            assert_eq!(s.edges as u32, 3 * genus + legs - 3);
            assert_eq!(s.vertices as u32, 2 * genus + legs - 2);
        }
    }
}

#[test]
fn automorphism_orders_match_oracle() {
    for (genus, legs) in FAMILIES {
        for g in enumerate_max_degenerate(genus, legs).unwrap() {
            let fast: BTreeSet<_> = find_isomorphisms(&g, &g).into_iter().collect();
            let slow: BTreeSet<_> = automorphisms(&g).into_iter().collect();
            assert_eq!(fast, slow);
        }
    }
}

#[test]
fn automorphism_group_axioms() {
    for (genus, legs) in FAMILIES {
        for g in enumerate_max_degenerate(genus, legs).unwrap() {
            let group: BTreeSet<_> = find_isomorphisms(&g, &g).into_iter().collect();
            let id = tanbase_core::GraphMorphism::identity(&g);
            assert!(group.contains(&id));
            for a in &group {
                assert!(group.contains(&a.inverse()));
                assert_eq!(a.compose(&a.inverse()), id);
                for b in &group {
                    assert!(group.contains(&a.compose(b)));
                }
            }
        }
    }
}

#[test]
fn relabeled_oracle_graphs_share_canonical_form() {
    for (genus, legs) in [(1, 3), (2, 0), (0, 5)] {
        for shape in max_degenerate_classes(genus, legs) {
            let g = shape.to_graph();
            let reversed = Shape {
                leg_vertices: shape.leg_vertices.iter().map(|v| shape.multiplicity.len() - 1 - v).collect(),
                multiplicity: shape.multiplicity.iter().rev().map(|r| r.iter().rev().copied().collect()).collect(),
            }
            .to_graph();
            assert_eq!(canonical_form(&g).0, canonical_form(&reversed).0);
        }
    }
}
