use std::path::PathBuf;

use tanbase::codec::{graph_from_json, graph_to_json, graph_to_json_pretty, ribbon_from_json, ribbon_to_json};
use tanbase_core::graph::{enumerate_max_degenerate, find_isomorphisms};
use tanbase_core::ribbon::enumerate_ribbons;
use tanbase_core::{Error, StableGraph};

fn doc(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn round_trip_enumerated_graphs() {
    for (g, n) in [(0, 5), (1, 3), (2, 0)] {
        for graph in enumerate_max_degenerate(g, n).unwrap() {
            assert_eq!(graph_from_json(&graph_to_json(&graph)).unwrap(), graph);
            assert_eq!(graph_from_json(&graph_to_json_pretty(&graph)).unwrap(), graph);
        }
    }
}

#[test]
fn named_ids_round_trip() {
    let theta = graph_from_json(&doc("theta.json")).unwrap();
    assert_eq!(theta.half_edge_name(3), "b1");
    assert_eq!(graph_from_json(&graph_to_json(&theta)).unwrap(), theta);
    assert_eq!(find_isomorphisms(&theta, &theta).len(), 12);
}

#[test]
fn example_documents_validate() {
    let one_loop = graph_from_json(&doc("one_loop.json")).unwrap();
    assert!(one_loop.validate().is_ok());
    assert_eq!(one_loop.stats().first_betti, 1);
    assert_eq!(one_loop.leg_label(one_loop.half_edge_index("p").unwrap()), Some(1));
    for name in ["dumbbell.json", "four_legs.json"] {
        assert!(graph_from_json(&doc(name)).is_ok(), "{name}");
    }
}

#[test]
fn unknown_field_is_a_syntax_error() {
    let text = doc("one_loop.json").replacen('{', "{\"colour\": 1, ", 1);
    assert!(matches!(graph_from_json(&text), Err(Error::SyntaxError { .. })));
    let text = doc("one_loop.json").replace("\"genus\": 0", "\"genus\": 0, \"weight\": 2");
    assert!(matches!(graph_from_json(&text), Err(Error::SyntaxError { .. })));
    assert!(matches!(graph_from_json("{"), Err(Error::SyntaxError { .. })));
}

#[test]
fn structural_errors() {
    let base = doc("one_loop.json");
    let broken = base.replace("[[\"a\", \"b\"], [\"p\"]]", "[[\"a\", \"b\"], [\"b\", \"p\"]]");
    assert!(matches!(graph_from_json(&broken), Err(Error::NotInvolution(_))));
    let broken = base.replace("{\"p\": 1}", "{\"p\": 2}");
    assert!(matches!(graph_from_json(&broken), Err(Error::LegLabelNotBijective(_))));
    let broken = base.replace("\"p\": \"v\"}", "\"p\": \"w\"}");
    assert!(matches!(graph_from_json(&broken), Err(Error::MalformedGraph(_))));
}

#[test]
fn ribbon_documents() {
    let theta = graph_from_json(&doc("theta.json")).unwrap();
    let r = ribbon_from_json(&theta, &doc("theta_ribbon.json")).unwrap();
    assert_eq!(r.successor(theta.half_edge_index("a1").unwrap()), theta.half_edge_index("a2").unwrap());
    for r in enumerate_ribbons(&theta).unwrap() {
        assert_eq!(ribbon_from_json(&theta, &ribbon_to_json(&theta, &r)).unwrap(), r);
    }
    let bad = r#"{"A": ["a1", "a2", "b1"], "B": ["b1", "b2", "b3"]}"#;
    assert!(matches!(ribbon_from_json(&theta, bad), Err(Error::RibbonMismatch(_))));
    let missing = r#"{"A": ["a1", "a2", "a3"]}"#;
    assert!(matches!(ribbon_from_json(&theta, missing), Err(Error::RibbonMismatch(_))));
}

#[test]
fn integer_ids_print_as_integers() {
    let g = StableGraph::from_edges(&[0], &[(0, 0)], &[0]).unwrap();
    assert_eq!(
        graph_to_json(&g),
        r#"{"half_edges":[0,1,2],"vertices":[{"id":0,"genus":0}],"involution":[[0,1],[2]],"incidence":{"0":0,"1":0,"2":0},"leg_labels":{"2":1}}"#
    );
}
