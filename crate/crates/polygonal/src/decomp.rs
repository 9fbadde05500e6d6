//! Recognition of polygonal 2-trees by reverse ear peeling.
//!
//! A polygonal 2-tree is any graph obtainable from a single edge by
//! repeatedly attaching an *ear*: a path of at least two edges whose
//! endpoints coincide with the endpoints of an edge already present and
//! whose internal vertices are fresh. (The first ear closes the base edge
//! into a cycle.) Such a construction sequence is a *nice ear
//! decomposition*; a graph is a polygonal 2-tree iff it has one.
//!
//! The recognizer runs the construction backwards. In the current residual
//! graph, a *removable chain* is a maximal run of degree-2 vertices whose
//! two (distinct, degree ≥ 3) boundary vertices are joined by a residual
//! edge. Removing the run undoes one ear and leaves the class invariant
//! (connectivity, minimum degree 2, and 2-connectivity are all preserved,
//! since the closing edge re-routes any path through the chain); in a
//! polygonal 2-tree with more than one polygon, the last ear of any nice
//! decomposition is such a chain, so peeling never gets stuck on a positive
//! instance. Peeling stops at a single residual cycle (accept) or when no
//! chain is removable (reject).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::{EdgeId, Graph, VertexId};

/// One ear of a nice ear decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ear {
    /// Vertex walk of the ear. The base ear lists its two endpoints; every
    /// later ear runs from one endpoint of its closing edge to the other
    /// through fresh internal vertices.
    pub path: Vec<VertexId>,
    /// Edge of an earlier ear joining this ear's endpoints; `None` only for
    /// the base ear.
    pub closing_edge: Option<EdgeId>,
}

impl Ear {
    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.path[0], *self.path.last().unwrap())
    }
}

/// Ears in construction order: `ears[0]` is the base edge, `ears[1]`
/// closes it into the first cycle, and each later ear attaches across an
/// edge of an earlier ear.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceEarDecomposition {
    pub ears: Vec<Ear>,
}

impl NiceEarDecomposition {
    pub fn ear_count(&self) -> usize {
        self.ears.len()
    }
}

/// Why an input was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectionReason {
    NotConnected,
    NotTwoConnected,
    /// No removable chain was left, but the residual graph was bigger than
    /// a single cycle.
    PeelingStuck {
        residual_vertices: usize,
        residual_edges: usize,
    },
}

impl RejectionReason {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            RejectionReason::NotConnected => "not-connected",
            RejectionReason::NotTwoConnected => "not-2-connected",
            RejectionReason::PeelingStuck { .. } => "peeling-stuck",
        }
    }
}

impl std::fmt::Display for RejectionReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RejectionReason::PeelingStuck {
                residual_vertices,
                residual_edges,
            } => write!(
                f,
                "peeling-stuck (residual graph: {residual_vertices} vertices, {residual_edges} edges)"
            ),
            other => f.write_str(other.code()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecognitionOutcome {
    Accepted(NiceEarDecomposition),
    Rejected(RejectionReason),
}

impl RecognitionOutcome {
    pub fn decomposition(&self) -> Option<&NiceEarDecomposition> {
        match self {
            RecognitionOutcome::Accepted(d) => Some(d),
            RecognitionOutcome::Rejected(_) => None,
        }
    }
}

/// Peeling state for one recognition run.
struct Peeler<'a> {
    g: &'a Graph,
    vertex_alive: Vec<bool>,
    edge_alive: Vec<bool>,
    degree: Vec<u32>,
    alive_vertices: usize,
    alive_edges: usize,
    /// Degree-2 vertices already examined inside a failed (unremovable)
    /// chain; cleared implicitly when the chain grows, because the growth
    /// event enqueues the fresh degree-2 vertex, and expansion from it
    /// re-walks the whole chain.
    checked: Vec<bool>,
    worklist: BinaryHeap<Reverse<VertexId>>,
}

impl<'a> Peeler<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.vertex_count();
        let degree: Vec<u32> = (0..n).map(|v| g.degree(v as VertexId) as u32).collect();
        let worklist = (0..n as VertexId)
            .filter(|&v| degree[v as usize] == 2)
            .map(Reverse)
            .collect();
        Peeler {
            g,
            vertex_alive: vec![true; n],
            edge_alive: vec![true; g.edge_count()],
            degree,
            alive_vertices: n,
            alive_edges: g.edge_count(),
            checked: vec![false; n],
            worklist,
        }
    }

    fn alive_incident(&self, v: VertexId) -> impl Iterator<Item = (VertexId, EdgeId)> + '_ {
        self.g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&(_, e)| self.edge_alive[e as usize])
    }

    /// Follows the chain of degree-2 vertices starting with the step onto
    /// `first` until a vertex of degree ≠ 2; returns the internal vertices
    /// passed and the terminal vertex.
    fn walk(&self, first: (VertexId, EdgeId)) -> (Vec<VertexId>, VertexId) {
        let mut internals = Vec::new();
        let (mut cur, mut entry) = first;
        let mut steps = 0usize;
        while self.degree[cur as usize] == 2 {
            internals.push(cur);
            let (next, via) = self
                .alive_incident(cur)
                .find(|&(_, e)| e != entry)
                .expect("degree-2 vertex has a second residual edge");
            cur = next;
            entry = via;
            steps += 1;
            assert!(
                steps <= self.alive_vertices,
                "chain walk left the residual graph"
            );
        }
        (internals, cur)
    }

    /// The maximal degree-2 chain through `v`: internal vertices in path
    /// order and the two boundary vertices.
    fn expand(&self, v: VertexId) -> (Vec<VertexId>, VertexId, VertexId) {
        let mut incident = self.alive_incident(v);
        let first = incident.next().expect("degree-2 vertex has residual edges");
        let second = incident
            .next()
            .expect("degree-2 vertex has two residual edges");
        drop(incident);
        let (left, x) = self.walk(first);
        let (right, y) = self.walk(second);
        let mut internals: Vec<VertexId> = left.into_iter().rev().collect();
        internals.push(v);
        internals.extend(right);
        (internals, x, y)
    }

    /// Deletes the chain's internal vertices and their edges, recording the
    /// boundary vertices whose degree dropped to 2.
    fn remove_chain(&mut self, internals: &[VertexId], x: VertexId, y: VertexId) {
        for &w in internals {
            self.vertex_alive[w as usize] = false;
            self.alive_vertices -= 1;
            let incident: Vec<(VertexId, EdgeId)> = self.alive_incident(w).collect();
            for (z, e) in incident {
                self.edge_alive[e as usize] = false;
                self.alive_edges -= 1;
                self.degree[w as usize] -= 1;
                self.degree[z as usize] -= 1;
            }
            debug_assert_eq!(self.degree[w as usize], 0);
        }
        for b in [x, y] {
            debug_assert!(self.degree[b as usize] >= 2);
            if self.degree[b as usize] == 2 {
                self.worklist.push(Reverse(b));
            }
        }
    }

    /// The residual graph, a single cycle, as base ear plus closing path.
    fn final_cycle(&self) -> (Ear, Ear) {
        let base = (0..self.g.edge_count() as EdgeId)
            .find(|&e| self.edge_alive[e as usize])
            .expect("residual cycle has edges");
        let (x0, y0) = self.g.endpoints(base);
        let mut path = vec![y0];
        let mut prev_edge = base;
        let mut cur = y0;
        while cur != x0 {
            let (next, via) = self
                .alive_incident(cur)
                .find(|&(_, e)| e != prev_edge)
                .expect("residual cycle is 2-regular");
            path.push(next);
            prev_edge = via;
            cur = next;
        }
        (
            Ear {
                path: vec![x0, y0],
                closing_edge: None,
            },
            Ear {
                path,
                closing_edge: Some(base),
            },
        )
    }
}

/// Decides whether `g` is a polygonal 2-tree; on acceptance returns a nice
/// ear decomposition in construction order.
///
/// Deterministic: among simultaneously removable chains, the one holding
/// the smallest-id degree-2 vertex is peeled first.
pub fn recognize(g: &Graph) -> RecognitionOutcome {
    if !g.is_connected() {
        return RecognitionOutcome::Rejected(RejectionReason::NotConnected);
    }
    let (n, m) = (g.vertex_count(), g.edge_count());
    if n < 3 || m < n || g.biconnected_components().len() != 1 {
        return RecognitionOutcome::Rejected(RejectionReason::NotTwoConnected);
    }

    let mut peeler = Peeler::new(g);
    let mut peeled: Vec<Ear> = Vec::new();
    while peeler.alive_edges > peeler.alive_vertices {
        let v = loop {
            match peeler.worklist.pop() {
                None => {
                    return RecognitionOutcome::Rejected(RejectionReason::PeelingStuck {
                        residual_vertices: peeler.alive_vertices,
                        residual_edges: peeler.alive_edges,
                    })
                }
                Some(Reverse(v))
                    if peeler.vertex_alive[v as usize]
                        && peeler.degree[v as usize] == 2
                        && !peeler.checked[v as usize] =>
                {
                    break v
                }
                Some(_) => continue, // stale entry
            }
        };
        let (internals, x, y) = peeler.expand(v);
        let closing = if x == y { None } else { g.edge_between(x, y) };
        match closing {
            Some(e) if peeler.edge_alive[e as usize] => {
                let mut path = Vec::with_capacity(internals.len() + 2);
                path.push(x);
                path.extend_from_slice(&internals);
                path.push(y);
                if path[0] > *path.last().unwrap() {
                    path.reverse();
                }
                peeler.remove_chain(&internals, x, y);
                peeled.push(Ear {
                    path,
                    closing_edge: Some(e),
                });
            }
            _ => {
                // Not removable now; only growing the chain can change
                // that, and growth re-enqueues the vertex that joins it.
                for w in internals {
                    peeler.checked[w as usize] = true;
                }
            }
        }
    }

    let (base, first) = peeler.final_cycle();
    let mut ears = Vec::with_capacity(peeled.len() + 2);
    ears.push(base);
    ears.push(first);
    ears.extend(peeled.into_iter().rev());
    RecognitionOutcome::Accepted(NiceEarDecomposition { ears })
}

/// Checks a claimed decomposition against `g` by replaying the
/// construction: every ear must attach across an edge introduced earlier,
/// use fresh internal vertices, and the ears must partition `E(g)`.
pub fn verify_nice(g: &Graph, d: &NiceEarDecomposition) -> bool {
    let (n, m) = (g.vertex_count(), g.edge_count());
    if d.ears.len() < 2 {
        return false;
    }
    let mut vertex_seen = vec![false; n];
    let mut vertices = 0usize;
    let mut edge_covered = vec![false; m];
    let mut edges = 0usize;
    let add_vertex = |seen: &mut Vec<bool>, v: VertexId, count: &mut usize| -> bool {
        if (v as usize) >= n {
            return false;
        }
        if !seen[v as usize] {
            seen[v as usize] = true;
            *count += 1;
        }
        true
    };

    for (i, ear) in d.ears.iter().enumerate() {
        if i == 0 {
            if ear.path.len() != 2 || ear.closing_edge.is_some() {
                return false;
            }
        } else {
            if ear.path.len() < 3 {
                return false;
            }
            let (x, y) = ear.endpoints();
            if (x as usize) >= n
                || (y as usize) >= n
                || !vertex_seen[x as usize]
                || !vertex_seen[y as usize]
            {
                return false;
            }
            // Niceness: the endpoints are already joined by an edge of an
            // earlier ear.
            match ear.closing_edge {
                Some(c) if g.edge_between(x, y) == Some(c) && edge_covered[c as usize] => {}
                _ => return false,
            }
            // Internal vertices are fresh and pairwise distinct.
            for &w in &ear.path[1..ear.path.len() - 1] {
                if (w as usize) >= n || vertex_seen[w as usize] {
                    return false;
                }
                vertex_seen[w as usize] = true;
                vertices += 1;
            }
        }
        for pair in ear.path.windows(2) {
            if !add_vertex(&mut vertex_seen, pair[0], &mut vertices)
                || !add_vertex(&mut vertex_seen, pair[1], &mut vertices)
            {
                return false;
            }
            match g.edge_between(pair[0], pair[1]) {
                Some(e) if !edge_covered[e as usize] => {
                    edge_covered[e as usize] = true;
                    edges += 1;
                }
                _ => return false,
            }
        }
    }
    vertices == n && edges == m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::samples;

    fn accept(g: &Graph) -> NiceEarDecomposition {
        match recognize(g) {
            RecognitionOutcome::Accepted(d) => d,
            RecognitionOutcome::Rejected(r) => panic!("expected acceptance, got {r}"),
        }
    }

    #[test]
    fn plain_cycle_peels_to_base_edge_plus_one_ear() {
        let g = samples::cycle(5).unwrap();
        let d = accept(&g);
        assert_eq!(d.ears.len(), 2);
        assert_eq!(d.ears[0].path, vec![0, 1]);
        assert_eq!(d.ears[0].closing_edge, None);
        assert_eq!(d.ears[1].path, vec![1, 2, 3, 4, 0]);
        assert_eq!(d.ears[1].closing_edge, Some(0));
        assert!(verify_nice(&g, &d));
    }

    #[test]
    fn two_triangles_sharing_an_edge_peel_deterministically() {
        let g = samples::k4_minus_edge().unwrap();
        let d = accept(&g);
        let paths: Vec<Vec<u32>> = d.ears.iter().map(|e| e.path.clone()).collect();
        assert_eq!(paths, vec![vec![0, 1], vec![1, 3, 0], vec![0, 2, 1]]);
        assert_eq!(
            d.ears.iter().map(|e| e.closing_edge).collect::<Vec<_>>(),
            vec![None, Some(0), Some(0)]
        );
        assert!(verify_nice(&g, &d));
    }

    #[test]
    fn fixture_is_accepted_and_decomposition_verifies() {
        let g = samples::nested_polygons_14().unwrap();
        let d = accept(&g);
        // k ears build a graph with m - n + 2 of them.
        assert_eq!(d.ears.len(), 23 - 14 + 2);
        assert!(verify_nice(&g, &d));
        // The decomposition that originally built the fixture also verifies.
        assert!(verify_nice(&g, &samples::nested_polygons_14_ears()));
        // Recognition is deterministic.
        assert_eq!(recognize(&g), recognize(&g));
    }

    #[test]
    fn ear_count_matches_cycle_count_on_accepts() {
        for (n, edges) in [
            (3usize, vec![(0u32, 1u32), (1, 2), (2, 0)]),
            (4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]),
        ] {
            let g = Graph::from_edges(n, edges).unwrap();
            let d = accept(&g);
            assert_eq!(d.ears.len(), g.edge_count() - g.vertex_count() + 2);
        }
    }

    #[test]
    fn disconnected_input_is_rejected_first() {
        let g = Graph::from_edges(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(
            recognize(&g),
            RecognitionOutcome::Rejected(RejectionReason::NotConnected)
        );
    }

    #[test]
    fn cut_vertex_input_is_rejected_as_not_2_connected() {
        // Bowtie: two triangles sharing vertex 2.
        let g = Graph::from_edges(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(
            recognize(&g),
            RecognitionOutcome::Rejected(RejectionReason::NotTwoConnected)
        );
        // A single edge is connected but far from 2-connected.
        let tiny = Graph::from_edges(2, vec![(0, 1)]).unwrap();
        assert_eq!(
            recognize(&tiny),
            RecognitionOutcome::Rejected(RejectionReason::NotTwoConnected)
        );
    }

    #[test]
    fn theta_graph_gets_stuck() {
        // Two hubs joined by three 2-edge paths; no chain closes on an edge.
        let g = Graph::from_edges(5, vec![(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
        assert_eq!(
            recognize(&g),
            RecognitionOutcome::Rejected(RejectionReason::PeelingStuck {
                residual_vertices: 5,
                residual_edges: 6,
            })
        );
    }

    #[test]
    fn k4_gets_stuck_immediately() {
        let g = Graph::from_edges(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(
            recognize(&g),
            RecognitionOutcome::Rejected(RejectionReason::PeelingStuck {
                residual_vertices: 4,
                residual_edges: 6,
            })
        );
    }

    #[test]
    fn verify_nice_rejects_tampered_decompositions() {
        let g = samples::nested_polygons_14().unwrap();
        let good = samples::nested_polygons_14_ears();
        assert!(verify_nice(&g, &good));

        // Dropping an ear leaves edges uncovered.
        let mut missing = good.clone();
        missing.ears.pop();
        assert!(!verify_nice(&g, &missing));

        // Re-using a vertex as an internal vertex is not allowed.
        let mut stale = good.clone();
        stale.ears[2].path = vec![0, 3, 1];
        assert!(!verify_nice(&g, &stale));

        // The closing edge must join the ear's endpoints.
        let mut misclosed = good.clone();
        let wrong = misclosed.ears[3].closing_edge.map(|e| e + 1);
        misclosed.ears[3].closing_edge = wrong;
        assert!(!verify_nice(&g, &misclosed));

        // Pulling an ear ahead of the ear that creates its closing edge
        // breaks the earlier-edge requirement; swapping two ears that
        // attach to already-covered edges is just another valid order.
        let mut reordered = good.clone();
        reordered.ears.swap(6, 7);
        assert!(!verify_nice(&g, &reordered));
        let mut shuffled = good.clone();
        shuffled.ears.swap(2, 3);
        assert!(verify_nice(&g, &shuffled));

        // A base ear with a closing edge is malformed.
        let mut closed_base = good;
        closed_base.ears[0].closing_edge = Some(0);
        assert!(!verify_nice(&g, &closed_base));
    }

    #[test]
    fn recognizer_accepts_its_own_output_on_a_grid_of_small_positives() {
        for n in 3..9usize {
            let g = samples::cycle(n).unwrap();
            let d = accept(&g);
            assert!(verify_nice(&g, &d));
        }
    }
}
