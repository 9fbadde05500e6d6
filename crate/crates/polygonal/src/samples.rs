//! Hand-built example instances: plain cycles, the smallest graph with two
//! polygons, and a 14-vertex instance whose polygons nest three levels deep.
//! The unit, integration, and command-line tests all draw on these.

use crate::decomp::{Ear, NiceEarDecomposition};
use crate::graph::{Graph, GraphError, VertexId};

/// The cycle on `n` vertices, edges `(i, i+1)` and `(n-1, 0)`.
pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    let n32 = n as VertexId;
    let edges: Vec<_> = (0..n32).map(|i| (i, (i + 1) % n32)).collect();
    Graph::from_edges(n, edges)
}

/// K4 minus one edge: two triangles sharing edge (0,1).
/// Edge ids: 0 = (0,1), 1 = (0,2), 2 = (1,2), 3 = (0,3), 4 = (1,3).
pub fn k4_minus_edge() -> Result<Graph, GraphError> {
    Graph::from_edges(4, vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
}

/// One ear given literally: the vertex walk and the endpoint pair it
/// closes over (`None` for the base edge).
pub type EarWalk<'a> = (&'a [VertexId], Option<(VertexId, VertexId)>);

/// Ear list behind [`nested_polygons_14`]: a 14-vertex polygonal 2-tree
/// with triangles and one pentagon nested three levels deep. Each entry is
/// (vertex walk, closing pair), the closing pair being an edge of an
/// earlier ear; the first entry is the base edge.
const NESTED_14_EARS: &[EarWalk<'static>] = &[
    (&[0, 1], None),
    (&[0, 3, 2, 4, 1], Some((0, 1))),
    (&[0, 5, 1], Some((0, 1))),
    (&[2, 6, 3], Some((3, 2))),
    (&[2, 7, 4], Some((2, 4))),
    (&[1, 8, 4], Some((4, 1))),
    (&[0, 9, 3], Some((0, 3))),
    (&[0, 10, 9], Some((0, 9))),
    (&[0, 11, 9], Some((0, 9))),
    (&[3, 12, 9], Some((9, 3))),
    (&[3, 13, 9], Some((9, 3))),
];

fn ears_to_edges(ears: &[EarWalk<'_>]) -> Vec<(VertexId, VertexId)> {
    let mut edges = Vec::new();
    for &(walk, _) in ears {
        for w in walk.windows(2) {
            edges.push((w[0], w[1]));
        }
    }
    edges
}

/// 14 vertices, 23 edges, 10 induced cycles.
pub fn nested_polygons_14() -> Result<Graph, GraphError> {
    Graph::from_edges(14, ears_to_edges(NESTED_14_EARS))
}

/// The decomposition that built [`nested_polygons_14`], expressed against
/// that graph's edge ids.
pub fn nested_polygons_14_ears() -> NiceEarDecomposition {
    let g = nested_polygons_14().unwrap();
    decomposition_from(&g, NESTED_14_EARS)
}

/// [`nested_polygons_14`] with one more triangle glued across (b, i) =
/// (1, 8) through a fresh vertex 14. Used by the support tests: with the
/// removed set {(0,5), (0,1), (1,14), (2,6)}, the edges (0,3), (1,4) and
/// (2,4) are each supported by {(0,1), (0,5)} and (1,8) by {(1,14)}.
pub fn nested_polygons_15() -> Result<Graph, GraphError> {
    let mut edges = ears_to_edges(NESTED_14_EARS);
    edges.push((1, 14));
    edges.push((14, 8));
    Graph::from_edges(15, edges)
}

pub fn decomposition_from(g: &Graph, ears: &[EarWalk<'_>]) -> NiceEarDecomposition {
    NiceEarDecomposition {
        ears: ears
            .iter()
            .map(|&(walk, closing)| Ear {
                path: walk.to_vec(),
                closing_edge: closing.map(|(u, v)| {
                    g.edge_between(u, v)
                        .expect("closing pair is an edge of the fixture")
                }),
            })
            .collect(),
    }
}
