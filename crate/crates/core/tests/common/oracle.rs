//! Slow reference implementations used to check the graph algorithms.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use tanbase_core::graph::GraphMorphism;
use tanbase_core::StableGraph;

/// A trivalent genus-0 multigraph: the vertex of every leg (leg `k` has
/// label `k + 1`) and the symmetric edge multiplicity matrix, loops on the
/// diagonal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Shape {
    pub leg_vertices: Vec<usize>,
    pub multiplicity: Vec<Vec<u32>>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

impl Shape {
    pub fn from_graph(g: &StableGraph) -> Shape {
        let nv = g.vertex_count();
        let mut multiplicity = vec![vec![0; nv]; nv];
        for (h, k) in g.edges() {
            let (a, b) = (g.vertex_of(h), g.vertex_of(k));
            multiplicity[a][b] += 1;
            if a != b {
                multiplicity[b][a] += 1;
            }
        }
        let leg_vertices = g.legs().into_iter().map(|h| g.vertex_of(h)).collect();
        Shape {
            leg_vertices,
            multiplicity,
        }
    }

    fn relabeled(&self, sigma: &[usize]) -> Shape {
        let nv = sigma.len();
        let mut multiplicity = vec![vec![0; nv]; nv];
        for i in 0..nv {
            for j in 0..nv {
                multiplicity[sigma[i]][sigma[j]] = self.multiplicity[i][j];
            }
        }
        Shape {
            leg_vertices: self.leg_vertices.iter().map(|&v| sigma[v]).collect(),
            multiplicity,
        }
    }

    /// Least relabeling over all vertex permutations.
    pub fn canonical(&self) -> Shape {
        permutations(self.multiplicity.len())
            .iter()
            .map(|s| self.relabeled(s))
            .min()
            .unwrap()
    }

    fn connected(&self) -> bool {
        let nv = self.multiplicity.len();
        let mut seen = vec![false; nv];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..nv {
                if self.multiplicity[v][w] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn to_graph(&self) -> StableGraph {
        let nv = self.multiplicity.len();
        let mut edges = Vec::new();
        for i in 0..nv {
            for j in i..nv {
                for _ in 0..self.multiplicity[i][j] {
                    edges.push((i, j));
                }
            }
        }
        StableGraph::from_edges(&vec![0; nv], &edges, &self.leg_vertices).unwrap()
    }
}

fn fill(
    pairs: &[(usize, usize)],
    at: usize,
    remaining: &mut Vec<u32>,
    m: &mut Vec<Vec<u32>>,
    out: &mut Vec<Vec<Vec<u32>>>,
) {
    if at == pairs.len() {
        if remaining.iter().all(|&r| r == 0) {
            out.push(m.clone());
        }
        return;
    }
    let (i, j) = pairs[at];
    for k in 0..=3 {
        let fits = if i == j {
            2 * k <= remaining[i]
        } else {
            k <= remaining[i] && k <= remaining[j]
        };
        if !fits {
            break;
        }
        if i == j {
            remaining[i] -= 2 * k;
        } else {
            remaining[i] -= k;
            remaining[j] -= k;
        }
        m[i][j] = k;
        m[j][i] = k;
        fill(pairs, at + 1, remaining, m, out);
        if i == j {
            remaining[i] += 2 * k;
        } else {
            remaining[i] += k;
            remaining[j] += k;
        }
    }
    m[i][j] = 0;
    m[j][i] = 0;
}

/// Isomorphism classes of connected trivalent graphs with `2g - 2 + n`
/// genus-0 vertices and `n` labeled legs.
pub fn max_degenerate_classes(genus: u32, legs: u32) -> BTreeSet<Shape> {
    let nv = (2 * genus + legs) as usize - 2;
    let n = legs as usize;
    let mut pairs = Vec::new();
    for i in 0..nv {
        for j in i..nv {
            pairs.push((i, j));
        }
    }
    let mut classes = BTreeSet::new();
    for code in 0..nv.pow(n as u32) {
        let leg_vertices: Vec<usize> = (0..n).map(|k| code / nv.pow(k as u32) % nv).collect();
        let mut remaining = vec![3u32; nv];
        for &v in &leg_vertices {
            remaining[v] = remaining[v].saturating_sub(1);
        }
        if (0..nv).any(|v| leg_vertices.iter().filter(|&&w| w == v).count() > 3) {
            continue;
        }
        let mut matrices = Vec::new();
        fill(&pairs, 0, &mut remaining, &mut vec![vec![0; nv]; nv], &mut matrices);
        for multiplicity in matrices {
            let shape = Shape {
                leg_vertices: leg_vertices.clone(),
                multiplicity,
            };
            if shape.connected() {
                classes.insert(shape.canonical());
            }
        }
    }
    classes
}

fn local_bijections(from: &[usize], to: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if from.len() != to.len() {
        return vec![];
    }
    permutations(from.len())
        .into_iter()
        .map(|p| from.iter().zip(&p).map(|(&h, &i)| (h, to[i])).collect())
        .collect()
}

/// Every automorphism, by trying each vertex bijection together with each
/// bijection between the half-edges at corresponding vertices.
pub fn automorphisms(g: &StableGraph) -> Vec<GraphMorphism> {
    let nv = g.vertex_count();
    let mut out = Vec::new();
    for f0 in permutations(nv) {
        let mut partial: Vec<Vec<(usize, usize)>> = vec![vec![]];
        for v in 0..nv {
            let choices = local_bijections(g.half_edges_at(v), g.half_edges_at(f0[v]));
            partial = partial
                .iter()
                .flat_map(|p| {
                    choices.iter().map(move |c| {
                        let mut q = p.clone();
                        q.extend_from_slice(c);
                        q
                    })
                })
                .collect();
        }
        for pairs in partial {
            let mut f1 = vec![0; g.half_edge_count()];
            for (h, k) in pairs {
                f1[h] = k;
            }
            let a = GraphMorphism { f1, f0: f0.clone() };
            if a.is_morphism(g, g) {
                out.push(a);
            }
        }
    }
    out
}

pub const FAMILIES: [(u32, u32); 8] = [(0, 3), (0, 4), (0, 5), (0, 6), (1, 1), (1, 2), (1, 3), (2, 0)];
