//! Exhaustive reference implementations for cross-checking the fast paths
//! on small instances.
//!
//! Everything here trades speed for obviousness: spanning trees are
//! enumerated one by one, stretches are recomputed with per-vertex BFS,
//! the cycle basis comes from a candidate-sort-and-reduce pass, and the
//! class membership test replays the defining construction with full
//! backtracking. Hard size guards keep accidental misuse from hanging a
//! test run.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::ops::ControlFlow;

use thiserror::Error;

use crate::graph::{EdgeId, EdgeSet, Graph, VertexId, UNREACHABLE};

/// Spanning tree enumeration refuses graphs with more edges than this.
pub const MAX_ENUMERATION_EDGES: usize = 24;
/// Cycle enumeration and the reference recognizer refuse graphs with more
/// vertices than this.
pub const MAX_ENUMERATION_VERTICES: usize = 32;
/// Cycle enumeration gives up after this many emitted cycles.
pub const MAX_ENUMERATED_CYCLES: usize = 1 << 16;
/// Cycle enumeration gives up after this many search steps.
const MAX_SEARCH_STEPS: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {edges} edges, exhaustive search is capped at {cap}")]
    TooManyEdges { edges: usize, cap: usize },
    #[error("graph has {vertices} vertices, enumeration is capped at {cap}")]
    TooManyVertices { vertices: usize, cap: usize },
    #[error("enumeration exceeded {cap} cycles")]
    TooManyCycles { cap: usize },
    #[error("graph is disconnected")]
    Disconnected,
}

fn find(dsu: &mut [u32], mut x: u32) -> u32 {
    while dsu[x as usize] != x {
        dsu[x as usize] = dsu[dsu[x as usize] as usize];
        x = dsu[x as usize];
    }
    x
}

/// Calls `f` once per spanning tree of `g` and returns how many there
/// were. Trees are produced in a fixed order: edges are considered by
/// ascending id, inclusion before exclusion.
pub fn for_each_spanning_tree<F: FnMut(&EdgeSet)>(g: &Graph, mut f: F) -> Result<u64, OracleError> {
    let n = g.vertex_count();
    let m = g.edge_count();
    if m > MAX_ENUMERATION_EDGES {
        return Err(OracleError::TooManyEdges {
            edges: m,
            cap: MAX_ENUMERATION_EDGES,
        });
    }
    if n == 0 {
        return Ok(0);
    }

    fn rec<F: FnMut(&EdgeSet)>(
        g: &Graph,
        e: usize,
        mut dsu: Vec<u32>,
        comps: usize,
        chosen: &mut EdgeSet,
        count: &mut u64,
        f: &mut F,
    ) {
        if comps == 1 {
            *count += 1;
            f(chosen);
            return;
        }
        let m = g.edge_count();
        if e == m {
            return;
        }
        let (u, v) = g.endpoints(e as EdgeId);
        let (ru, rv) = (find(&mut dsu, u), find(&mut dsu, v));
        if ru != rv {
            let mut with = dsu.clone();
            with[ru as usize] = rv;
            chosen.insert(e as EdgeId);
            rec(g, e + 1, with, comps - 1, chosen, count, f);
            chosen.remove(e as EdgeId);
        }
        // Skipping e is only worth exploring if the later edges can still
        // merge everything that remains separate.
        let mut rest = dsu.clone();
        let mut c = comps;
        for later in e + 1..m {
            let (a, b) = g.endpoints(later as EdgeId);
            let (ra, rb) = (find(&mut rest, a), find(&mut rest, b));
            if ra != rb {
                rest[ra as usize] = rb;
                c -= 1;
            }
        }
        if c == 1 {
            rec(g, e + 1, dsu, comps, chosen, count, f);
        }
    }

    let mut chosen = EdgeSet::new(m);
    let mut count = 0u64;
    let dsu: Vec<u32> = (0..n as u32).collect();
    rec(g, 0, dsu, n, &mut chosen, &mut count, &mut f);
    Ok(count)
}

/// Counts spanning trees with the matrix-tree determinant, evaluated
/// exactly with fraction-free elimination. Independent of the
/// enumeration, so the two can vouch for each other.
pub fn kirchhoff_spanning_tree_count(g: &Graph) -> u64 {
    let n = g.vertex_count();
    if n <= 1 {
        return 1;
    }
    let dim = n - 1;
    let mut a = vec![vec![0i128; dim]; dim];
    for &(u, v) in g.edges() {
        let (u, v) = (u as usize, v as usize);
        if u < dim {
            a[u][u] += 1;
        }
        if v < dim {
            a[v][v] += 1;
        }
        if u < dim && v < dim {
            a[u][v] -= 1;
            a[v][u] -= 1;
        }
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..dim {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..dim).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..dim {
            for j in k + 1..dim {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    (sign * a[dim - 1][dim - 1]) as u64
}

/// Ground truth established the slow way for one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub spanning_tree_count: u64,
    pub min_total_stretch: u64,
    /// How many spanning trees attain the minimum.
    pub optimal_tree_count: u64,
    /// The first optimal tree in enumeration order.
    pub optimal_tree: EdgeSet,
    /// Total length of a minimum cycle basis.
    pub mcb_size: u64,
    /// Verdict of the backtracking membership test.
    pub is_polygonal: bool,
}

/// Enumerates every spanning tree and scores each one by summing, over
/// all graph edges, the tree distance between the edge's endpoints
/// (computed with a BFS per vertex, nothing shared with the fast path).
/// The report also carries the minimum cycle basis size and the class
/// membership verdict, each from its own exhaustive routine.
pub fn brute_force_mast(g: &Graph) -> Result<OracleReport, OracleError> {
    let n = g.vertex_count();
    let mut best: Option<OracleReport> = None;
    let count = for_each_spanning_tree(g, |tree| {
        let mut total = 0u64;
        let non_tree = tree.complement();
        for v in 0..n as VertexId {
            let dist = g.bfs_distances(v, Some(&non_tree));
            for &(a, b) in g.edges() {
                if a == v {
                    total += dist[b as usize] as u64;
                }
            }
        }
        match &mut best {
            Some(r) if total < r.min_total_stretch => {
                r.min_total_stretch = total;
                r.optimal_tree_count = 1;
                r.optimal_tree = tree.clone();
            }
            Some(r) if total == r.min_total_stretch => r.optimal_tree_count += 1,
            Some(_) => {}
            None => {
                best = Some(OracleReport {
                    spanning_tree_count: 0,
                    min_total_stretch: total,
                    optimal_tree_count: 1,
                    optimal_tree: tree.clone(),
                    mcb_size: 0,
                    is_polygonal: false,
                })
            }
        }
    })?;
    match best {
        Some(mut r) => {
            r.spanning_tree_count = count;
            r.mcb_size = horton_mcb(g)?.iter().map(|c| c.len() as u64).sum();
            r.is_polygonal = reference_is_polygonal(g)?;
            Ok(r)
        }
        None => Err(OracleError::Disconnected),
    }
}

/// Runs `f` on every chordless cycle of `g` (edges in `blocked` treated
/// as absent), presented as a sorted edge-id set. Each cycle is visited
/// exactly once. `f` can stop the walk early.
fn for_each_chordless_cycle<F: FnMut(&[EdgeId]) -> ControlFlow<()>>(
    g: &Graph,
    blocked: Option<&EdgeSet>,
    mut f: F,
) -> Result<(), OracleError> {
    let n = g.vertex_count();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(OracleError::TooManyVertices {
            vertices: n,
            cap: MAX_ENUMERATION_VERTICES,
        });
    }
    let open = |e: EdgeId| blocked.is_none_or(|b| !b.contains(e));
    let edge = |u: VertexId, v: VertexId| g.edge_between(u, v).filter(|&e| open(e));

    // Canonical form: the start is the smallest vertex on the cycle and
    // the second vertex is smaller than the last, so each cycle is built
    // exactly once. The search keeps the partial path induced; a chord
    // would survive into the finished cycle, so branches that grow one
    // are cut immediately.
    let mut steps = 0u64;
    for s in 0..n as VertexId {
        let mut path: Vec<VertexId> = vec![s];
        let mut edges: Vec<EdgeId> = Vec::new();
        // Cursor per depth into the adjacency list of the path's last
        // vertex (the depth-0 cursor walks s's own neighbors).
        let mut cursors: Vec<usize> = vec![0];
        while let Some(cur) = cursors.last().copied() {
            steps += 1;
            if steps > MAX_SEARCH_STEPS {
                return Err(OracleError::TooManyCycles {
                    cap: MAX_ENUMERATED_CYCLES,
                });
            }
            let v = *path.last().unwrap();
            let nbrs = g.neighbors(v);
            if cur == nbrs.len() {
                cursors.pop();
                if cursors.is_empty() {
                    break;
                }
                path.pop();
                edges.pop();
                continue;
            }
            *cursors.last_mut().unwrap() += 1;
            let (w, e) = nbrs[cur];
            if !open(e) || w <= s || path.contains(&w) {
                continue;
            }
            // Adjacency of the candidate towards the rest of the path.
            // At depth 0 the lookup would find the arrival edge itself,
            // which is no closing edge.
            let closing = if path.len() >= 2 { edge(w, s) } else { None };
            let mut chord = false;
            if path.len() >= 2 {
                for &p in &path[1..path.len() - 1] {
                    if edge(w, p).is_some() {
                        chord = true;
                        break;
                    }
                }
            }
            if chord {
                continue;
            }
            if let Some(ce) = closing {
                if path.len() >= 2 && path[1] < w {
                    let mut cycle = edges.clone();
                    cycle.push(e);
                    cycle.push(ce);
                    cycle.sort_unstable();
                    if let ControlFlow::Break(()) = f(&cycle) {
                        return Ok(());
                    }
                }
                // Any longer cycle through w would keep the closing edge
                // as a chord, so w is a dead end either way.
                continue;
            }
            path.push(w);
            edges.push(e);
            cursors.push(0);
        }
    }
    Ok(())
}

/// All chordless cycles of `g` (minus `blocked` edges) as sorted edge-id
/// sets, ordered by length then lexicographically.
pub fn chordless_cycles(
    g: &Graph,
    blocked: Option<&EdgeSet>,
) -> Result<Vec<Vec<EdgeId>>, OracleError> {
    let mut out: Vec<Vec<EdgeId>> = Vec::new();
    let mut overflow = false;
    for_each_chordless_cycle(g, blocked, |cycle| {
        if out.len() == MAX_ENUMERATED_CYCLES {
            overflow = true;
            return ControlFlow::Break(());
        }
        out.push(cycle.to_vec());
        ControlFlow::Continue(())
    })?;
    if overflow {
        return Err(OracleError::TooManyCycles {
            cap: MAX_ENUMERATED_CYCLES,
        });
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Counts chordless cycles through `e` in `g` minus `blocked`, stopping
/// at `cap`. `e` itself must not be blocked.
pub fn count_chordless_cycles_through(
    g: &Graph,
    blocked: &EdgeSet,
    e: EdgeId,
    cap: usize,
) -> Result<usize, OracleError> {
    debug_assert!(!blocked.contains(e));
    let mut count = 0usize;
    for_each_chordless_cycle(g, Some(blocked), |cycle| {
        if cycle.binary_search(&e).is_ok() {
            count += 1;
            if count == cap {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(count)
}

/// A minimum cycle basis by candidate generation and greedy reduction:
/// the candidates are every shortest-path cycle through an edge (one BFS
/// tree per root) plus every chordless cycle, sorted by length and taken
/// greedily subject to independence over GF(2).
pub fn horton_mcb(g: &Graph) -> Result<Vec<Vec<EdgeId>>, OracleError> {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(OracleError::TooManyVertices {
            vertices: n,
            cap: MAX_ENUMERATION_VERTICES,
        });
    }
    if !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    let dim = m - n + 1;
    if dim == 0 {
        return Ok(Vec::new());
    }

    let mut candidates: BTreeSet<Vec<EdgeId>> = BTreeSet::new();
    for root in 0..n as VertexId {
        let mut parent_edge = vec![UNREACHABLE; n];
        let mut parent = vec![0 as VertexId; n];
        let mut order: Vec<VertexId> = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        seen[root as usize] = true;
        order.push(root);
        let mut head = 0usize;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &(w, e) in g.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    parent[w as usize] = v;
                    parent_edge[w as usize] = e;
                    order.push(w);
                }
            }
        }
        let climb = |mut v: VertexId| {
            let mut path_e: Vec<EdgeId> = Vec::new();
            let mut path_v: Vec<VertexId> = vec![v];
            while v != root {
                path_e.push(parent_edge[v as usize] as EdgeId);
                v = parent[v as usize];
                path_v.push(v);
            }
            (path_e, path_v)
        };
        for e in 0..m as EdgeId {
            let (x, y) = g.endpoints(e);
            if parent_edge[x as usize] == e || parent_edge[y as usize] == e {
                continue;
            }
            let (ex, vx) = climb(x);
            let (ey, vy) = climb(y);
            // The two tree paths must meet only at the root, otherwise
            // the walk is not a simple cycle.
            let set: HashSet<VertexId> = vx.iter().copied().collect();
            if vy.iter().filter(|v| set.contains(v)).count() != 1 {
                continue;
            }
            let mut cycle: Vec<EdgeId> = ex;
            cycle.extend(ey);
            cycle.push(e);
            cycle.sort_unstable();
            candidates.insert(cycle);
        }
    }
    for cycle in chordless_cycles(g, None)? {
        candidates.insert(cycle);
    }

    let mut ordered: Vec<Vec<EdgeId>> = candidates.into_iter().collect();
    ordered.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let mut pivots: HashMap<EdgeId, Vec<EdgeId>> = HashMap::new();
    let mut basis: Vec<Vec<EdgeId>> = Vec::with_capacity(dim);
    for cand in ordered {
        let mut red = cand.clone();
        while let Some(&p) = red.first() {
            match pivots.get(&p) {
                Some(row) => red = symmetric_difference(&red, row),
                None => {
                    pivots.insert(p, red);
                    basis.push(cand);
                    break;
                }
            }
        }
        if basis.len() == dim {
            break;
        }
    }
    assert_eq!(basis.len(), dim, "chordless cycles span the cycle space");
    Ok(basis)
}

fn symmetric_difference(a: &[EdgeId], b: &[EdgeId]) -> Vec<EdgeId> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// A maximal run of degree-2 vertices between two anchors, together with
/// the edges along it.
struct Chain {
    x: VertexId,
    y: VertexId,
    internals: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

struct PeelState<'a> {
    g: &'a Graph,
    vertex_alive: Vec<bool>,
    degree: Vec<u32>,
    edge_alive: u64,
    alive_vertices: usize,
    alive_edges: usize,
    failed: HashSet<u64>,
}

impl PeelState<'_> {
    fn edge_is_alive(&self, e: EdgeId) -> bool {
        self.edge_alive >> e & 1 == 1
    }

    fn other_neighbor(&self, v: VertexId, not: VertexId) -> (VertexId, EdgeId) {
        self.g
            .neighbors(v)
            .iter()
            .copied()
            .find(|&(w, e)| w != not && self.vertex_alive[w as usize] && self.edge_is_alive(e))
            .expect("degree-2 vertex has a second live neighbor")
    }

    fn is_cycle(&self) -> bool {
        self.alive_edges == self.alive_vertices
            && (0..self.g.vertex_count()).all(|v| !self.vertex_alive[v] || self.degree[v] == 2)
    }

    /// Every maximal run of live degree-2 vertices, each reported once.
    /// The caller guarantees the live graph is connected and not a bare
    /// cycle, so every run terminates at anchors on both sides.
    fn chains(&self) -> Vec<Chain> {
        let n = self.g.vertex_count();
        let mut claimed = vec![false; n];
        let mut out = Vec::new();
        for a in 0..n as VertexId {
            if !self.vertex_alive[a as usize] || self.degree[a as usize] == 2 {
                continue;
            }
            for &(first, first_edge) in self.g.neighbors(a) {
                if !self.vertex_alive[first as usize]
                    || !self.edge_is_alive(first_edge)
                    || self.degree[first as usize] != 2
                    || claimed[first as usize]
                {
                    continue;
                }
                let mut internals = Vec::new();
                let mut edges = vec![first_edge];
                let (mut prev, mut cur) = (a, first);
                while self.degree[cur as usize] == 2 {
                    claimed[cur as usize] = true;
                    internals.push(cur);
                    let (next, e) = self.other_neighbor(cur, prev);
                    edges.push(e);
                    prev = cur;
                    cur = next;
                }
                out.push(Chain {
                    x: a,
                    y: cur,
                    internals,
                    edges,
                });
            }
        }
        out
    }

    fn remove(&mut self, ch: &Chain) {
        for &v in &ch.internals {
            self.vertex_alive[v as usize] = false;
            self.degree[v as usize] = 0;
        }
        for &e in &ch.edges {
            self.edge_alive &= !(1u64 << e);
        }
        self.alive_vertices -= ch.internals.len();
        self.alive_edges -= ch.edges.len();
        self.degree[ch.x as usize] -= 1;
        self.degree[ch.y as usize] -= 1;
    }

    fn restore(&mut self, ch: &Chain) {
        for &v in &ch.internals {
            self.vertex_alive[v as usize] = true;
            self.degree[v as usize] = 2;
        }
        for &e in &ch.edges {
            self.edge_alive |= 1u64 << e;
        }
        self.alive_vertices += ch.internals.len();
        self.alive_edges += ch.edges.len();
        self.degree[ch.x as usize] += 1;
        self.degree[ch.y as usize] += 1;
    }

    fn solve(&mut self) -> bool {
        if self.is_cycle() {
            return true;
        }
        if self.failed.contains(&self.edge_alive) {
            return false;
        }
        for ch in self.chains() {
            if ch.x == ch.y {
                continue;
            }
            let Some(closing) = self.g.edge_between(ch.x, ch.y) else {
                continue;
            };
            if !self.edge_is_alive(closing) {
                continue;
            }
            self.remove(&ch);
            let ok = self.solve();
            self.restore(&ch);
            if ok {
                return true;
            }
        }
        self.failed.insert(self.edge_alive);
        false
    }
}

/// Membership test that replays the defining construction in reverse
/// with full backtracking: strip some maximal degree-2 chain whose
/// attachment points are adjacent, recurse, and try every choice before
/// giving up. Memoized on the surviving edge set, which is why the edge
/// count is capped at the width of one mask word.
pub fn reference_is_polygonal(g: &Graph) -> Result<bool, OracleError> {
    let n = g.vertex_count();
    let m = g.edge_count();
    if m > 48 {
        return Err(OracleError::TooManyEdges { edges: m, cap: 48 });
    }
    if n > MAX_ENUMERATION_VERTICES {
        return Err(OracleError::TooManyVertices {
            vertices: n,
            cap: MAX_ENUMERATION_VERTICES,
        });
    }
    if n < 3 || m < n || !g.is_connected() {
        return Ok(false);
    }
    let mut st = PeelState {
        g,
        vertex_alive: vec![true; n],
        degree: (0..n as VertexId).map(|v| g.degree(v) as u32).collect(),
        edge_alive: (1u64 << m) - 1,
        alive_vertices: n,
        alive_edges: m,
        failed: HashSet::new(),
    };
    Ok(st.solve())
}

/// Is everything except `skip` mutually reachable without passing
/// through `skip`? Plain BFS, no shared machinery with the fast path.
fn connected_without(g: &Graph, skip: Option<VertexId>) -> bool {
    let n = g.vertex_count();
    let Some(start) = (0..n as VertexId).find(|&v| Some(v) != skip) else {
        return true;
    };
    let mut seen = vec![false; n];
    seen[start as usize] = true;
    let mut queue = vec![start];
    let mut reached = 1usize;
    while let Some(v) = queue.pop() {
        for &(w, _) in g.neighbors(v) {
            if Some(w) != skip && !seen[w as usize] {
                seen[w as usize] = true;
                reached += 1;
                queue.push(w);
            }
        }
    }
    reached == n - usize::from(skip.is_some())
}

/// Reduces the multigraph by merging parallel edges and suppressing
/// degree-2 vertices (self-loops produced along the way are dropped).
/// A 2-connected graph survives as a single edge exactly when it has no
/// complete-graph-on-four minor.
fn reduces_to_single_edge(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut edges: Vec<(VertexId, VertexId)> = g.edges().to_vec();
    loop {
        let mut dropped = false;
        'merge: for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if (a, b) == (c, d) || (a, b) == (d, c) {
                    edges.swap_remove(j);
                    dropped = true;
                    break 'merge;
                }
            }
        }
        if dropped {
            continue;
        }
        if edges.len() <= 1 {
            break;
        }
        let mut deg = vec![0u32; n];
        for &(a, b) in &edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        let mut suppressed = false;
        for v in 0..n as VertexId {
            if deg[v as usize] != 2 {
                continue;
            }
            let mut ends = Vec::new();
            let mut at = Vec::new();
            for (i, &(a, b)) in edges.iter().enumerate() {
                if a == v {
                    ends.push(b);
                    at.push(i);
                } else if b == v {
                    ends.push(a);
                    at.push(i);
                }
            }
            edges.swap_remove(at[1]);
            edges.swap_remove(at[0]);
            if ends[0] != ends[1] {
                edges.push((ends[0], ends[1]));
            }
            suppressed = true;
            break;
        }
        if !suppressed {
            break;
        }
    }
    edges.len() == 1 && edges[0].0 != edges[0].1
}

/// Membership test by characterization rather than construction: the
/// graph must be 2-connected (checked by vertex deletion), must melt
/// down to a single edge under series-parallel reduction, and no two of
/// its chordless cycles may share more than one edge. Kept alongside
/// [`reference_is_polygonal`] so two unrelated formulations can vouch
/// for each other.
pub fn is_polygonal_by_reduction(g: &Graph) -> Result<bool, OracleError> {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n > MAX_ENUMERATION_VERTICES {
        return Err(OracleError::TooManyVertices {
            vertices: n,
            cap: MAX_ENUMERATION_VERTICES,
        });
    }
    if n < 3 || m < n || !connected_without(g, None) {
        return Ok(false);
    }
    if (0..n as VertexId).any(|v| !connected_without(g, Some(v))) {
        return Ok(false);
    }
    if !reduces_to_single_edge(g) {
        return Ok(false);
    }
    let cycles = chordless_cycles(g, None)?;
    for (i, a) in cycles.iter().enumerate() {
        for b in &cycles[i + 1..] {
            let mut common = 0;
            let (mut x, mut y) = (0, 0);
            while x < a.len() && y < b.len() {
                match a[x].cmp(&b[y]) {
                    std::cmp::Ordering::Less => x += 1,
                    std::cmp::Ordering::Greater => y += 1,
                    std::cmp::Ordering::Equal => {
                        common += 1;
                        x += 1;
                        y += 1;
                    }
                }
            }
            if common > 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::induced_cycles;
    use crate::decomp::{recognize, RecognitionOutcome};
    use crate::mast::run_mast;
    use crate::samples;
    use proptest::prelude::*;

    fn theta() -> Graph {
        Graph::from_edges(5, vec![(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_edges(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn book_of_squares() -> Graph {
        Graph::from_edges(
            6,
            vec![(0, 1), (0, 2), (2, 3), (3, 1), (0, 4), (4, 5), (5, 1)],
        )
        .unwrap()
    }

    fn k4_subdivided() -> Graph {
        let mut edges = Vec::new();
        for (i, &(u, v)) in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
            .iter()
            .enumerate()
        {
            let w = 4 + i as VertexId;
            edges.push((u, w));
            edges.push((w, v));
        }
        Graph::from_edges(10, edges).unwrap()
    }

    fn accepted(g: &Graph) -> bool {
        matches!(recognize(g), RecognitionOutcome::Accepted(_))
    }

    #[test]
    fn enumeration_matches_the_determinant() {
        for g in [
            samples::cycle(4).unwrap(),
            samples::cycle(7).unwrap(),
            samples::k4_minus_edge().unwrap(),
            samples::nested_polygons_14().unwrap(),
            theta(),
            k4(),
            book_of_squares(),
        ] {
            let mut seen = 0u64;
            let count = for_each_spanning_tree(&g, |t| {
                assert_eq!(t.len(), g.vertex_count() - 1);
                seen += 1;
            })
            .unwrap();
            assert_eq!(count, seen);
            assert_eq!(count, kirchhoff_spanning_tree_count(&g), "{:?}", g.edges());
        }
    }

    #[test]
    fn closed_form_tree_counts() {
        for n in 3..=10 {
            assert_eq!(
                kirchhoff_spanning_tree_count(&samples::cycle(n).unwrap()),
                n as u64
            );
        }
        assert_eq!(kirchhoff_spanning_tree_count(&k4()), 16);
        let path = Graph::from_edges(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(kirchhoff_spanning_tree_count(&path), 1);
        let split = Graph::from_edges(4, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(kirchhoff_spanning_tree_count(&split), 0);
        assert_eq!(for_each_spanning_tree(&split, |_| {}), Ok(0));
    }

    #[test]
    fn enumeration_refuses_oversized_graphs() {
        let g = samples::cycle(25).unwrap();
        assert_eq!(
            for_each_spanning_tree(&g, |_| {}),
            Err(OracleError::TooManyEdges {
                edges: 25,
                cap: MAX_ENUMERATION_EDGES
            })
        );
    }

    #[test]
    fn exhaustive_search_on_shared_edge_triangles() {
        let g = samples::k4_minus_edge().unwrap();
        let r = brute_force_mast(&g).unwrap();
        assert_eq!(r.spanning_tree_count, 8);
        assert_eq!(r.min_total_stretch, 7);
        // The four trees keeping the shared edge: it pairs with one edge
        // of each triangle, 2 x 2 ways, always totalling 3 + 2 + 2.
        assert_eq!(r.optimal_tree_count, 4);
        assert_eq!(r.optimal_tree.iter().collect::<Vec<_>>(), vec![0, 1, 3]);
        assert_eq!(r.mcb_size, 6);
        assert!(r.is_polygonal);
    }

    #[test]
    fn exhaustive_search_on_plain_cycles() {
        let g = samples::cycle(5).unwrap();
        let r = brute_force_mast(&g).unwrap();
        assert_eq!(r.spanning_tree_count, 5);
        assert_eq!(r.min_total_stretch, 8);
        assert_eq!(r.optimal_tree_count, 5, "every tree of a cycle is optimal");
        assert_eq!(r.optimal_tree.iter().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!(r.mcb_size, 5);
        assert!(r.is_polygonal);
    }

    #[test]
    fn exhaustive_search_needs_a_connected_graph() {
        let split = Graph::from_edges(4, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(brute_force_mast(&split), Err(OracleError::Disconnected));
    }

    #[test]
    fn engine_total_matches_the_exhaustive_minimum() {
        let mut instances = vec![
            samples::k4_minus_edge().unwrap(),
            samples::nested_polygons_14().unwrap(),
            book_of_squares(),
        ];
        for n in 3..=8 {
            instances.push(samples::cycle(n).unwrap());
        }
        for g in instances {
            let RecognitionOutcome::Accepted(d) = recognize(&g) else {
                panic!("test instance must be in the class");
            };
            let fast = run_mast(&g, &d);
            let slow = brute_force_mast(&g).unwrap();
            assert_eq!(
                fast.total_stretch,
                slow.min_total_stretch,
                "{:?}",
                g.edges()
            );
        }
    }

    #[test]
    fn chordless_cycles_of_small_graphs() {
        let g = samples::k4_minus_edge().unwrap();
        assert_eq!(
            chordless_cycles(&g, None).unwrap(),
            vec![vec![0, 1, 2], vec![0, 3, 4]]
        );
        assert_eq!(
            chordless_cycles(&theta(), None)
                .unwrap()
                .iter()
                .map(Vec::len)
                .collect::<Vec<_>>(),
            vec![4, 4, 4]
        );
        assert_eq!(
            chordless_cycles(&samples::cycle(6).unwrap(), None)
                .unwrap()
                .len(),
            1
        );
        assert_eq!(chordless_cycles(&k4(), None).unwrap().len(), 4);
    }

    #[test]
    fn chordless_cycles_match_the_polygons_of_the_fixture() {
        let g = samples::nested_polygons_14().unwrap();
        let d = samples::nested_polygons_14_ears();
        let mut polygons: Vec<Vec<EdgeId>> = induced_cycles(&g, &d)
            .iter()
            .map(|c| {
                let mut e = c.to_vec();
                e.sort_unstable();
                e
            })
            .collect();
        polygons.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let found = chordless_cycles(&g, None).unwrap();
        assert_eq!(found.len(), 10);
        assert_eq!(found.iter().map(Vec::len).sum::<usize>(), 32);
        assert_eq!(found, polygons);
    }

    #[test]
    fn counting_through_an_edge_respects_removals() {
        let g = samples::nested_polygons_14().unwrap();
        let removed = EdgeSet::from_ids(23, [0, 5, 7]);
        // (d,c) turns into a bridge once the outer pentagon is cut open.
        assert_eq!(count_chordless_cycles_through(&g, &removed, 2, 10), Ok(0));
        // (a,d) keeps exactly the triangle through (a,j).
        assert_eq!(count_chordless_cycles_through(&g, &removed, 1, 10), Ok(1));
        // (j,d) sits on three triangles; the cap clips the count.
        assert_eq!(count_chordless_cycles_through(&g, &removed, 14, 10), Ok(3));
        assert_eq!(count_chordless_cycles_through(&g, &removed, 14, 2), Ok(2));
    }

    #[test]
    fn greedy_basis_picks_the_polygons() {
        let g = samples::nested_polygons_14().unwrap();
        let basis = horton_mcb(&g).unwrap();
        let mut expected = chordless_cycles(&g, None).unwrap();
        expected.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut got = basis.clone();
        got.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        assert_eq!(got, expected);
    }

    #[test]
    fn greedy_basis_outside_the_class() {
        let basis = horton_mcb(&theta()).unwrap();
        assert_eq!(basis.iter().map(Vec::len).collect::<Vec<_>>(), vec![4, 4]);
        let basis = horton_mcb(&k4()).unwrap();
        assert_eq!(basis, vec![vec![0, 1, 3], vec![0, 2, 4], vec![1, 2, 5]]);
        assert_eq!(
            horton_mcb(&samples::cycle(5).unwrap()).unwrap(),
            vec![vec![0, 1, 2, 3, 4]]
        );
    }

    #[test]
    fn reference_recognizer_verdicts() {
        let mut positives = vec![
            samples::k4_minus_edge().unwrap(),
            samples::nested_polygons_14().unwrap(),
            samples::nested_polygons_15().unwrap(),
            book_of_squares(),
        ];
        for n in 3..=8 {
            positives.push(samples::cycle(n).unwrap());
        }
        let bowtie =
            Graph::from_edges(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        let split =
            Graph::from_edges(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let pendant = Graph::from_edges(5, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        let path = Graph::from_edges(3, vec![(0, 1), (1, 2)]).unwrap();
        let negatives = [theta(), k4(), k4_subdivided(), bowtie, split, pendant, path];
        for g in &positives {
            assert_eq!(reference_is_polygonal(g), Ok(true), "{:?}", g.edges());
            assert_eq!(is_polygonal_by_reduction(g), Ok(true), "{:?}", g.edges());
        }
        for g in &negatives {
            assert_eq!(reference_is_polygonal(g), Ok(false), "{:?}", g.edges());
            assert_eq!(is_polygonal_by_reduction(g), Ok(false), "{:?}", g.edges());
        }
    }

    proptest! {
        // Graphs on six labeled vertices, driven by a 15-bit edge mask:
        // the fast recognizer, the backtracking reference, and the
        // characterization-based reference must all agree.
        #[test]
        fn recognizers_agree_on_small_graphs(mask in 0u32..(1 << 15)) {
            let all_pairs: Vec<(VertexId, VertexId)> = (0..6)
                .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
                .collect();
            let edges: Vec<(VertexId, VertexId)> = all_pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            let g = Graph::from_edges(6, edges).unwrap();
            let verdict = reference_is_polygonal(&g).unwrap();
            prop_assert_eq!(accepted(&g), verdict);
            prop_assert_eq!(is_polygonal_by_reduction(&g).unwrap(), verdict);
        }
    }
}
