//! Trivalent graphs with partial edge labelings and the count of
//! admissible completions, which is the dimension of the associated
//! block space.

use crate::error::{Result, TqftError};
use crate::recoupling::ColorTriple;
use crate::theory::TheoryCtx;

/// One end of an edge: a slot on a trivalent vertex, or a free boundary leg.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeEnd {
    Vertex(usize),
    Leg,
}

#[derive(Clone, Debug)]
pub struct GraphEdge {
    pub ends: (EdgeEnd, EdgeEnd),
    pub color: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct TrivalentGraph {
    pub n_vertices: usize,
    pub edges: Vec<GraphEdge>,
}

impl TrivalentGraph {
    pub fn new(n_vertices: usize, edges: Vec<GraphEdge>) -> Result<TrivalentGraph> {
        let g = TrivalentGraph { n_vertices, edges };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let mut degree = vec![0usize; self.n_vertices];
        for (i, e) in self.edges.iter().enumerate() {
            if let (EdgeEnd::Leg, EdgeEnd::Leg) = e.ends {
                return Err(TqftError::MalformedGraph(format!(
                    "edge {i} joins two boundary legs"
                )));
            }
            for end in [e.ends.0, e.ends.1] {
                if let EdgeEnd::Vertex(v) = end {
                    if v >= self.n_vertices {
                        return Err(TqftError::MalformedGraph(format!(
                            "edge {i} references vertex {v} out of range"
                        )));
                    }
                    degree[v] += 1;
                }
            }
        }
        for (v, d) in degree.iter().enumerate() {
            if *d != 3 {
                return Err(TqftError::MalformedGraph(format!(
                    "vertex {v} has degree {d}, expected 3"
                )));
            }
        }
        Ok(())
    }

    /// Edge indices incident to each vertex (an edge with both ends on the
    /// same vertex appears twice).
    fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n_vertices];
        for (i, e) in self.edges.iter().enumerate() {
            for end in [e.ends.0, e.ends.1] {
                if let EdgeEnd::Vertex(v) = end {
                    inc[v].push(i);
                }
            }
        }
        inc
    }

    /// The caterpillar graph underlying the path basis: n legs colored 1
    /// hanging off a spine whose free ends carry 0 and m_color.
    pub fn caterpillar(n: usize, m_color: i64) -> TrivalentGraph {
        let mut edges = Vec::new();
        edges.push(GraphEdge {
            ends: (EdgeEnd::Leg, EdgeEnd::Vertex(0)),
            color: Some(0),
        });
        for v in 0..n {
            edges.push(GraphEdge {
                ends: (EdgeEnd::Leg, EdgeEnd::Vertex(v)),
                color: Some(1),
            });
            if v + 1 < n {
                edges.push(GraphEdge {
                    ends: (EdgeEnd::Vertex(v), EdgeEnd::Vertex(v + 1)),
                    color: None,
                });
            }
        }
        edges.push(GraphEdge {
            ends: (EdgeEnd::Vertex(n - 1), EdgeEnd::Leg),
            color: Some(m_color),
        });
        TrivalentGraph {
            n_vertices: n,
            edges,
        }
    }
}

fn vertex_ok(colors: &[Option<i64>], inc_v: &[usize], cm: i64) -> bool {
    let picked: Vec<i64> = inc_v.iter().filter_map(|e| colors[*e]).collect();
    match picked.len() {
        3 => ColorTriple(picked[0], picked[1], picked[2]).admissible(Some(cm)),
        2 => {
            let (x, y) = (picked[0], picked[1]);
            ((x - y).abs()..=(x + y).min(2 * cm - x - y))
                .any(|k| ColorTriple(x, y, k).admissible(Some(cm)))
        }
        _ => true,
    }
}

fn touched_vertices(graph: &TrivalentGraph, e: usize) -> Vec<usize> {
    let mut vs = Vec::new();
    for end in [graph.edges[e].ends.0, graph.edges[e].ends.1] {
        if let EdgeEnd::Vertex(v) = end {
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
    }
    vs
}

fn recurse(
    graph: &TrivalentGraph,
    inc: &[Vec<usize>],
    colors: &mut Vec<Option<i64>>,
    free: &[usize],
    pos: usize,
    cm: i64,
) -> u64 {
    if pos == free.len() {
        return 1;
    }
    let e = free[pos];
    let mut total = 0;
    for c in 0..=cm {
        colors[e] = Some(c);
        let ok = touched_vertices(graph, e)
            .into_iter()
            .all(|v| vertex_ok(colors, &inc[v], cm));
        if ok {
            total += recurse(graph, inc, colors, free, pos + 1, cm);
        }
        colors[e] = None;
    }
    total
}

/// Number of complete labelings extending the partial labeling so that
/// every vertex sees an admissible triple.
pub fn count_labelings(ctx: &TheoryCtx, graph: &TrivalentGraph) -> Result<u64> {
    graph.validate()?;
    let cm = ctx.color_max();
    for e in &graph.edges {
        if let Some(c) = e.color {
            if c < 0 || c > cm {
                return Err(TqftError::ColorOutOfRange { color: c, max: cm });
            }
        }
    }
    let inc = graph.incidence();
    let mut colors: Vec<Option<i64>> = graph.edges.iter().map(|e| e.color).collect();
    let free: Vec<usize> = (0..graph.edges.len())
        .filter(|i| colors[*i].is_none())
        .collect();

    if free.is_empty() {
        let all_ok = (0..graph.n_vertices).all(|v| vertex_ok(&colors, &inc[v], cm));
        return Ok(if all_ok { 1 } else { 0 });
    }
    Ok(recurse(graph, &inc, &mut colors, &free, 0, cm))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta_graph() -> TrivalentGraph {
        TrivalentGraph::new(
            2,
            (0..3)
                .map(|_| GraphEdge {
                    ends: (EdgeEnd::Vertex(0), EdgeEnd::Vertex(1)),
                    color: None,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn theta_graph_at_low_level() {
        // rEff = 3 means colors {0, 1}: exactly (0,0,0), (0,1,1), (1,0,1), (1,1,0).
        let ctx = TheoryCtx::new(12, 1).unwrap();
        assert_eq!(ctx.r_eff(), 3);
        assert_eq!(count_labelings(&ctx, &theta_graph()).unwrap(), 4);
    }

    #[test]
    fn caterpillar_matches_path_dimension() {
        let ctx = TheoryCtx::new(16, 1).unwrap(); // rEff = 4
        let g = TrivalentGraph::caterpillar(3, 1);
        assert_eq!(count_labelings(&ctx, &g).unwrap(), 2);
        let ctx20 = TheoryCtx::new(20, 1).unwrap();
        let g42 = TrivalentGraph::caterpillar(4, 2);
        assert_eq!(count_labelings(&ctx20, &g42).unwrap(), 3);
    }

    #[test]
    fn prelabeled_inadmissible_vertex() {
        let ctx = TheoryCtx::new(20, 1).unwrap();
        let g = TrivalentGraph::new(
            2,
            vec![
                GraphEdge {
                    ends: (EdgeEnd::Vertex(0), EdgeEnd::Vertex(1)),
                    color: Some(1),
                },
                GraphEdge {
                    ends: (EdgeEnd::Vertex(0), EdgeEnd::Vertex(1)),
                    color: Some(1),
                },
                GraphEdge {
                    ends: (EdgeEnd::Vertex(0), EdgeEnd::Vertex(1)),
                    color: Some(1),
                },
            ],
        )
        .unwrap();
        assert_eq!(count_labelings(&ctx, &g).unwrap(), 0);
    }

    #[test]
    fn malformed_graphs_rejected() {
        assert!(TrivalentGraph::new(
            1,
            vec![GraphEdge {
                ends: (EdgeEnd::Vertex(0), EdgeEnd::Leg),
                color: None,
            }]
        )
        .is_err());
        assert!(TrivalentGraph::new(
            0,
            vec![GraphEdge {
                ends: (EdgeEnd::Leg, EdgeEnd::Leg),
                color: None,
            }]
        )
        .is_err());
    }
}
