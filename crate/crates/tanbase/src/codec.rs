//! JSON documents for graphs and ribbon structures.
//!
//! A graph document lists `half_edges`, `vertices` (`{id, genus}`), the
//! `involution` as pairs (a leg is a one-element list), the `incidence` map
//! from half-edge to vertex and the `leg_labels` map. Ids may be integers
//! or strings. A ribbon document maps each vertex id to its three
//! half-edges in cyclic order.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use tanbase_core::{Error, Result, RibbonStructure, StableGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Id {
    Int(u64),
    Name(String),
}

impl Id {
    fn new(name: &str) -> Id {
        match name.parse::<u64>() {
            Ok(n) if n.to_string() == name => Id::Int(n),
            _ => Id::Name(name.to_owned()),
        }
    }
}

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Id::Int(n) => write!(f, "{n}"),
            Id::Name(s) => f.write_str(s),
        }
    }
}

/// A map written in insertion order.
#[derive(Debug)]
struct Ordered<V>(Vec<(String, V)>);

impl<V: Serialize> Serialize for Ordered<V> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    id: Id,
    genus: u32,
}

#[derive(Debug, Serialize)]
struct GraphOut {
    half_edges: Vec<Id>,
    vertices: Vec<VertexDoc>,
    involution: Vec<Vec<Id>>,
    incidence: Ordered<Id>,
    leg_labels: Ordered<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphIn {
    half_edges: Vec<Id>,
    vertices: Vec<VertexDoc>,
    involution: Vec<Vec<Id>>,
    incidence: BTreeMap<String, Id>,
    #[serde(default)]
    leg_labels: BTreeMap<String, u32>,
}

fn syntax(err: serde_json::Error) -> Error {
    Error::SyntaxError {
        position: err.column(),
        message: err.to_string(),
    }
}

fn malformed(msg: String) -> Error {
    Error::MalformedGraph(msg)
}

fn graph_out(g: &StableGraph) -> GraphOut {
    let he = |h: usize| Id::new(g.half_edge_name(h));
    let vx = |v: usize| Id::new(g.vertex_name(v));
    let mut involution = Vec::new();
    for h in 0..g.half_edge_count() {
        let k = g.involution(h);
        if h == k {
            involution.push(vec![he(h)]);
        } else if h < k {
            involution.push(vec![he(h), he(k)]);
        }
    }
    GraphOut {
        half_edges: (0..g.half_edge_count()).map(he).collect(),
        vertices: (0..g.vertex_count())
            .map(|v| VertexDoc {
                id: vx(v),
                genus: g.genus(v),
            })
            .collect(),
        involution,
        incidence: Ordered(
            (0..g.half_edge_count())
                .map(|h| (g.half_edge_name(h).to_owned(), vx(g.vertex_of(h))))
                .collect(),
        ),
        leg_labels: Ordered(
            g.legs()
                .into_iter()
                .map(|h| (g.half_edge_name(h).to_owned(), g.leg_label(h).unwrap()))
                .collect(),
        ),
    }
}

/// One-line JSON.
pub fn graph_to_json(g: &StableGraph) -> String {
    serde_json::to_string(&graph_out(g)).expect("serializable")
}

pub fn graph_to_json_pretty(g: &StableGraph) -> String {
    serde_json::to_string_pretty(&graph_out(g)).expect("serializable")
}

pub fn graph_to_value(g: &StableGraph) -> serde_json::Value {
    serde_json::to_value(graph_out(g)).expect("serializable")
}

/// Parses and validates a graph document.
pub fn graph_from_json(text: &str) -> Result<StableGraph> {
    let doc: GraphIn = serde_json::from_str(text).map_err(syntax)?;
    let names: Vec<String> = doc.half_edges.iter().map(Id::to_string).collect();
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    if index.len() != names.len() {
        return Err(malformed("duplicate half-edge id".into()));
    }
    let vertices: Vec<(String, u32)> = doc.vertices.iter().map(|v| (v.id.to_string(), v.genus)).collect();
    let vindex: BTreeMap<&str, usize> =
        vertices.iter().enumerate().map(|(i, (n, _))| (n.as_str(), i)).collect();
    if vindex.len() != vertices.len() {
        return Err(malformed("duplicate vertex id".into()));
    }
    let lookup = |id: &str| index.get(id).copied().ok_or_else(|| malformed(format!("unknown half-edge {id}")));

    let mut involution = vec![usize::MAX; names.len()];
    for pair in &doc.involution {
        let ids = pair.iter().map(|id| lookup(&id.to_string())).collect::<Result<Vec<_>>>()?;
        let (a, b) = match ids[..] {
            [a] => (a, a),
            [a, b] => (a, b),
            _ => return Err(malformed("involution entries have one or two ids".into())),
        };
        for (x, y) in [(a, b), (b, a)] {
            if involution[x] != usize::MAX && involution[x] != y {
                return Err(Error::NotInvolution(names[x].clone()));
            }
            involution[x] = y;
        }
    }
    if let Some(h) = involution.iter().position(|&x| x == usize::MAX) {
        return Err(Error::NotInvolution(names[h].clone()));
    }

    let mut incidence = vec![usize::MAX; names.len()];
    for (h, v) in &doc.incidence {
        let v = v.to_string();
        incidence[lookup(h)?] = *vindex
            .get(v.as_str())
            .ok_or_else(|| malformed(format!("unknown vertex {v}")))?;
    }
    if let Some(h) = incidence.iter().position(|&x| x == usize::MAX) {
        return Err(malformed(format!("half-edge {} has no vertex", names[h])));
    }

    let mut legs = vec![None; names.len()];
    for (h, &label) in &doc.leg_labels {
        legs[lookup(h)?] = Some(label);
    }
    StableGraph::new(names, vertices, involution, incidence, legs)
}

/// `{vertex: [h1, h2, h3]}`, read as the cycle `h1 -> h2 -> h3 -> h1`.
pub fn ribbon_to_json(g: &StableGraph, r: &RibbonStructure) -> String {
    serde_json::to_string(&ribbon_out(g, r)).expect("serializable")
}

pub fn ribbon_to_value(g: &StableGraph, r: &RibbonStructure) -> serde_json::Value {
    serde_json::to_value(ribbon_out(g, r)).expect("serializable")
}

fn ribbon_out(g: &StableGraph, r: &RibbonStructure) -> Ordered<Vec<Id>> {
    Ordered(
        (0..g.vertex_count())
            .map(|v| {
                let order = r.cyclic_order(g, v).map(|h| Id::new(g.half_edge_name(h)));
                (g.vertex_name(v).to_owned(), order.to_vec())
            })
            .collect(),
    )
}

pub fn ribbon_from_json(g: &StableGraph, text: &str) -> Result<RibbonStructure> {
    let doc: BTreeMap<String, Vec<Id>> = serde_json::from_str(text).map_err(syntax)?;
    let mismatch = |msg: String| Error::RibbonMismatch(msg);
    let mut orders = vec![None; g.vertex_count()];
    for (v, hs) in &doc {
        let v = g.vertex_index(v).ok_or_else(|| mismatch(format!("unknown vertex {v}")))?;
        let hs = hs
            .iter()
            .map(|h| {
                let h = h.to_string();
                g.half_edge_index(&h).ok_or_else(|| mismatch(format!("unknown half-edge {h}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let order: [usize; 3] = hs
            .try_into()
            .map_err(|_| mismatch(format!("vertex {} needs three half-edges", g.vertex_name(v))))?;
        orders[v] = Some(order);
    }
    let orders = orders
        .into_iter()
        .enumerate()
        .map(|(v, o)| o.ok_or_else(|| mismatch(format!("no order at vertex {}", g.vertex_name(v)))))
        .collect::<Result<Vec<_>>>()?;
    RibbonStructure::from_cyclic_orders(g, &orders)
}
