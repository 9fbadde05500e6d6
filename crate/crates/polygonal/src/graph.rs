//! Immutable undirected graphs with dense integer ids.
//!
//! Vertices are `0..n`, edges are `0..m` in input order, and the adjacency
//! is stored in compressed sparse rows so the heavy algorithms stay cache
//! friendly at millions of edges. Graphs are simple: self-loops and
//! duplicate edges are rejected at construction. All views of "the graph
//! minus some edges" are expressed as an [`EdgeSet`] of blocked ids rather
//! than by mutating the container.

use thiserror::Error;

/// Vertex index, `0..n`.
pub type VertexId = u32;
/// Edge index, `0..m`, assigned in input order.
pub type EdgeId = u32;

/// Distance value reported by [`Graph::bfs_distances`] for unreachable
/// vertices.
pub const UNREACHABLE: u32 = u32::MAX;

/// Construction errors. Each names the offending edge so callers can point
/// at the exact input line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {index} is a self-loop at vertex {v}")]
    SelfLoop { index: usize, v: VertexId },
    #[error("edge {index} ({u}, {v}) repeats an earlier edge")]
    DuplicateEdge {
        index: usize,
        u: VertexId,
        v: VertexId,
    },
    #[error("edge {index} ({u}, {v}) references a vertex >= {n}")]
    VertexOutOfRange {
        index: usize,
        u: VertexId,
        v: VertexId,
        n: usize,
    },
}

/// A set of edge ids drawn from a fixed universe `0..m`, stored as a
/// bitmap with a cached cardinality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    bits: Vec<u64>,
    len: usize,
    universe: usize,
}

impl EdgeSet {
    /// Empty set over the universe `0..m`.
    pub fn new(m: usize) -> Self {
        EdgeSet {
            bits: vec![0; m.div_ceil(64)],
            len: 0,
            universe: m,
        }
    }

    /// Collects `ids` into a set over `0..m`.
    pub fn from_ids(m: usize, ids: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut s = EdgeSet::new(m);
        for id in ids {
            s.insert(id);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Inserts `id`, returning `true` if it was absent.
    pub fn insert(&mut self, id: EdgeId) -> bool {
        let id = id as usize;
        assert!(id < self.universe, "edge id {id} outside universe");
        let (w, b) = (id / 64, 1u64 << (id % 64));
        if self.bits[w] & b == 0 {
            self.bits[w] |= b;
            self.len += 1;
            true
        } else {
            false
        }
    }

    /// Removes `id`, returning `true` if it was present.
    pub fn remove(&mut self, id: EdgeId) -> bool {
        let id = id as usize;
        assert!(id < self.universe, "edge id {id} outside universe");
        let (w, b) = (id / 64, 1u64 << (id % 64));
        if self.bits[w] & b != 0 {
            self.bits[w] &= !b;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        let id = id as usize;
        id < self.universe && self.bits[id / 64] & (1 << (id % 64)) != 0
    }

    /// Ids in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros();
                word &= word - 1;
                Some((w * 64) as u32 + b)
            })
        })
    }

    /// The complement within the same universe.
    pub fn complement(&self) -> EdgeSet {
        let mut out = EdgeSet::new(self.universe);
        for id in 0..self.universe as EdgeId {
            if !self.contains(id) {
                out.insert(id);
            }
        }
        out
    }
}

/// An immutable simple undirected graph.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    /// CSR adjacency: `adj[adj_off[v]..adj_off[v+1]]` lists `(neighbor, edge id)`.
    adj_off: Vec<u32>,
    adj: Vec<(VertexId, EdgeId)>,
    /// Edge ids sorted by normalized endpoint pair, bucketed by the lower
    /// endpoint, for O(log deg) pair lookup.
    pair_off: Vec<u32>,
    pair_ids: Vec<EdgeId>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Edge ids follow
    /// input order. Rejects self-loops, duplicate edges (either
    /// orientation), and out-of-range endpoints.
    pub fn from_edges(
        n: usize,
        edges: impl Into<Vec<(VertexId, VertexId)>>,
    ) -> Result<Graph, GraphError> {
        let edges: Vec<(VertexId, VertexId)> = edges.into();
        let m = edges.len();
        for (index, &(u, v)) in edges.iter().enumerate() {
            if (u as usize) >= n || (v as usize) >= n {
                return Err(GraphError::VertexOutOfRange { index, u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { index, v });
            }
        }

        // Two stable counting sorts give edge ids ordered by (lo, hi)
        // endpoint pair in O(n + m); equal neighbors then sit adjacently,
        // which exposes duplicates, and the lo-bucket offsets double as a
        // lookup index.
        let lo = |id: EdgeId| edges[id as usize].0.min(edges[id as usize].1);
        let hi = |id: EdgeId| edges[id as usize].0.max(edges[id as usize].1);
        let mut by_hi: Vec<EdgeId> = (0..m as EdgeId).collect();
        let mut count = vec![0u32; n + 1];
        for id in 0..m as EdgeId {
            count[hi(id) as usize + 1] += 1;
        }
        for v in 0..n {
            count[v + 1] += count[v];
        }
        for id in 0..m as EdgeId {
            by_hi[count[hi(id) as usize] as usize] = id;
            count[hi(id) as usize] += 1;
        }
        let mut pair_ids = vec![0 as EdgeId; m];
        let mut pair_off = vec![0u32; n + 1];
        for id in 0..m as EdgeId {
            pair_off[lo(id) as usize + 1] += 1;
        }
        for v in 0..n {
            pair_off[v + 1] += pair_off[v];
        }
        let mut cursor = pair_off.clone();
        for &id in &by_hi {
            pair_ids[cursor[lo(id) as usize] as usize] = id;
            cursor[lo(id) as usize] += 1;
        }
        for w in pair_ids.windows(2) {
            let (a, b) = (w[0], w[1]);
            if lo(a) == lo(b) && hi(a) == hi(b) {
                let index = a.max(b) as usize;
                let (u, v) = edges[index];
                return Err(GraphError::DuplicateEdge { index, u, v });
            }
        }

        let mut adj_off = vec![0u32; n + 1];
        for &(u, v) in &edges {
            adj_off[u as usize + 1] += 1;
            adj_off[v as usize + 1] += 1;
        }
        for v in 0..n {
            adj_off[v + 1] += adj_off[v];
        }
        let mut adj = vec![(0 as VertexId, 0 as EdgeId); 2 * m];
        let mut cursor = adj_off.clone();
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[cursor[u as usize] as usize] = (v, id as EdgeId);
            cursor[u as usize] += 1;
            adj[cursor[v as usize] as usize] = (u, id as EdgeId);
            cursor[v as usize] += 1;
        }

        Ok(Graph {
            n,
            edges,
            adj_off,
            adj,
            pair_off,
            pair_ids,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of edge `e` in input orientation.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e as usize]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// `(neighbor, edge id)` pairs incident to `v`, in input order.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[self.adj_off[v as usize] as usize..self.adj_off[v as usize + 1] as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        (self.adj_off[v as usize + 1] - self.adj_off[v as usize]) as usize
    }

    /// The id of the edge joining `u` and `v`, if present.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        if u == v {
            return None;
        }
        let (lo, hi) = (u.min(v), u.max(v));
        let bucket = &self.pair_ids
            [self.pair_off[lo as usize] as usize..self.pair_off[lo as usize + 1] as usize];
        bucket
            .binary_search_by_key(&hi, |&id| {
                let (a, b) = self.edges[id as usize];
                a.max(b)
            })
            .ok()
            .map(|i| bucket[i])
    }

    /// BFS distances from `source`, ignoring edges in `blocked`.
    /// Unreachable vertices get [`UNREACHABLE`].
    pub fn bfs_distances(&self, source: VertexId, blocked: Option<&EdgeSet>) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n];
        let mut queue = std::collections::VecDeque::new();
        dist[source as usize] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize];
            for &(w, e) in self.neighbors(v) {
                if blocked.is_some_and(|b| b.contains(e)) {
                    continue;
                }
                if dist[w as usize] == UNREACHABLE {
                    dist[w as usize] = d + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Whether every vertex is reachable from vertex 0. The empty graph
    /// counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_distances(0, None)
            .iter()
            .all(|&d| d != UNREACHABLE)
    }

    /// Bridge edges, via an iterative lowpoint DFS (explicit stack; the
    /// recursion depth would otherwise scale with n).
    pub fn bridges(&self) -> EdgeSet {
        let m = self.edges.len();
        let mut out = EdgeSet::new(m);
        let mut disc = vec![0u32; self.n]; // 0 = unvisited, else discovery time + 1
        let mut low = vec![0u32; self.n];
        let mut time = 0u32;
        // Frame: (vertex, edge used to enter it, cursor into its adjacency).
        let mut stack: Vec<(VertexId, Option<EdgeId>, u32)> = Vec::new();
        for root in 0..self.n as VertexId {
            if disc[root as usize] != 0 {
                continue;
            }
            time += 1;
            disc[root as usize] = time;
            low[root as usize] = time;
            stack.push((root, None, self.adj_off[root as usize]));
            while let Some(&mut (v, entry, ref mut cursor)) = stack.last_mut() {
                if *cursor < self.adj_off[v as usize + 1] {
                    let (w, e) = self.adj[*cursor as usize];
                    *cursor += 1;
                    if Some(e) == entry {
                        continue;
                    }
                    if disc[w as usize] == 0 {
                        time += 1;
                        disc[w as usize] = time;
                        low[w as usize] = time;
                        stack.push((w, Some(e), self.adj_off[w as usize]));
                    } else {
                        low[v as usize] = low[v as usize].min(disc[w as usize]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (parent, _, _)) = stack.last_mut() {
                        low[parent as usize] = low[parent as usize].min(low[v as usize]);
                        if low[v as usize] > disc[parent as usize] {
                            out.insert(entry.expect("non-root frame has an entry edge"));
                        }
                    }
                }
            }
        }
        out
    }

    /// Partitions the edges into biconnected components (maximal
    /// 2-edge-connected-by-shared-cycle blocks). Bridges come out as
    /// singleton components.
    pub fn biconnected_components(&self) -> Vec<EdgeSet> {
        let m = self.edges.len();
        let mut components = Vec::new();
        let mut disc = vec![0u32; self.n];
        let mut low = vec![0u32; self.n];
        let mut time = 0u32;
        let mut edge_stack: Vec<EdgeId> = Vec::new();
        let mut stack: Vec<(VertexId, Option<EdgeId>, u32)> = Vec::new();
        for root in 0..self.n as VertexId {
            if disc[root as usize] != 0 {
                continue;
            }
            time += 1;
            disc[root as usize] = time;
            low[root as usize] = time;
            stack.push((root, None, self.adj_off[root as usize]));
            while let Some(&mut (v, entry, ref mut cursor)) = stack.last_mut() {
                if *cursor < self.adj_off[v as usize + 1] {
                    let (w, e) = self.adj[*cursor as usize];
                    *cursor += 1;
                    if Some(e) == entry {
                        continue;
                    }
                    if disc[w as usize] == 0 {
                        time += 1;
                        disc[w as usize] = time;
                        low[w as usize] = time;
                        edge_stack.push(e);
                        stack.push((w, Some(e), self.adj_off[w as usize]));
                    } else if disc[w as usize] < disc[v as usize] {
                        // Back edge, recorded once, on first traversal.
                        edge_stack.push(e);
                        low[v as usize] = low[v as usize].min(disc[w as usize]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (parent, _, _)) = stack.last_mut() {
                        low[parent as usize] = low[parent as usize].min(low[v as usize]);
                        if low[v as usize] >= disc[parent as usize] {
                            // `parent` separates the subtree at v: everything
                            // stacked since the tree edge into v is one block.
                            let tree_edge = entry.expect("non-root frame has an entry edge");
                            let mut comp = EdgeSet::new(m);
                            loop {
                                let e = edge_stack.pop().expect("component edge on stack");
                                comp.insert(e);
                                if e == tree_edge {
                                    break;
                                }
                            }
                            components.push(comp);
                        }
                    }
                }
            }
        }
        components
    }
}
