//! Coordinates of the tangential base point attached to a ribbon structure
//! on a maximally degenerate graph.
//!
//! Each vertex is a projective line with three special points, one per
//! half-edge. The chart of a half-edge `h` puts `h` at `0`, its successor at
//! `+1` and the remaining one at `-1`. An edge `{h, k}` is a node
//! `u v = eps` where `u` and `v` are the chart coordinates of `h` and `k`.

use alloc::vec::Vec;

use super::RibbonStructure;
use crate::graph::StableGraph;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chart {
    pub half_edge: usize,
    pub zero: usize,
    pub plus_one: usize,
    pub minus_one: usize,
}

impl Chart {
    /// The value the chart assigns to the special point of `h`, if `h` sits
    /// on the same vertex.
    pub fn role(&self, h: usize) -> Option<i8> {
        if h == self.zero {
            Some(0)
        } else if h == self.plus_one {
            Some(1)
        } else if h == self.minus_one {
            Some(-1)
        } else {
            None
        }
    }
}

/// The smoothing parameter `eps` of one edge, with `u` the chart coordinate
/// of half-edge `edge.0` and `v` that of `edge.1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeCoordinate {
    pub index: usize,
    pub edge: (usize, usize),
    pub u: usize,
    pub v: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentialBasePoint {
    pub coordinates: Vec<EdgeCoordinate>,
    /// One chart per half-edge, legs included.
    pub charts: Vec<Chart>,
    /// The boundary divisor as the hyperplanes `eps_i = 0`, by coordinate
    /// index.
    pub hyperplanes: Vec<usize>,
}

impl TangentialBasePoint {
    pub fn dimension(&self) -> usize {
        self.coordinates.len()
    }

    pub fn chart(&self, h: usize) -> &Chart {
        &self.charts[h]
    }
}

pub fn tangential_base_point(g: &StableGraph, r: &RibbonStructure) -> Result<TangentialBasePoint> {
    if !g.classify().maximally_degenerate {
        return Err(Error::NotMaxDegenerate);
    }
    if !r.fits(g) {
        return Err(Error::RibbonMismatch(
            "ribbon structure does not belong to this graph".into(),
        ));
    }
    let coordinates: Vec<_> = g
        .edges()
        .into_iter()
        .enumerate()
        .map(|(index, (h, k))| EdgeCoordinate {
            index,
            edge: (h, k),
            u: h,
            v: k,
        })
        .collect();
    let charts = (0..g.half_edge_count())
        .map(|h| {
            let next = r.successor(h);
            Chart {
                half_edge: h,
                zero: h,
                plus_one: next,
                minus_one: r.successor(next),
            }
        })
        .collect();
    let hyperplanes = (0..coordinates.len()).collect();
    Ok(TangentialBasePoint {
        coordinates,
        charts,
        hyperplanes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_max_degenerate, fixtures};
    use crate::ribbon::enumerate_ribbons;

    #[test]
    fn dimensions() {
        for (g, expected) in [(fixtures::one_loop(), 1), (fixtures::theta(), 3)] {
            for r in enumerate_ribbons(&g).unwrap() {
                let t = tangential_base_point(&g, &r).unwrap();
                assert_eq!(t.dimension(), expected);
                assert_eq!(t.hyperplanes.len(), expected);
                assert_eq!(t.charts.len(), g.half_edge_count());
            }
        }
    }

    #[test]
    fn chart_roles_follow_cyclic_order() {
        let g = fixtures::four_legs();
        let r = &enumerate_ribbons(&g).unwrap()[0];
        let t = tangential_base_point(&g, r).unwrap();
        for v in 0..g.vertex_count() {
            let [a, b, c] = r.cyclic_order(&g, v);
            let chart = t.chart(a);
            assert_eq!((chart.role(a), chart.role(b), chart.role(c)), (Some(0), Some(1), Some(-1)));
        }
    }

    #[test]
    fn node_parameters_are_zero_roles() {
        for (genus, legs) in [(0, 5), (1, 2), (2, 0)] {
            for g in enumerate_max_degenerate(genus, legs).unwrap() {
                for r in enumerate_ribbons(&g).unwrap() {
                    let t = tangential_base_point(&g, &r).unwrap();
                    assert_eq!(t.dimension() as i64, 3 * genus as i64 - 3 + legs as i64);
                    for c in &t.coordinates {
                        assert_eq!(t.chart(c.u).role(c.edge.0), Some(0));
                        assert_eq!(t.chart(c.v).role(c.edge.1), Some(0));
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_degenerate() {
        let g = StableGraph::from_edges(&[1], &[], &[0]).unwrap();
        let r = RibbonStructure { successor: vec![0] };
        assert_eq!(tangential_base_point(&g, &r), Err(Error::NotMaxDegenerate));
    }
}
