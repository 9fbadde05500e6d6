//! Minimum average stretch spanning trees of polygonal 2-trees.
//!
//! The engine repeatedly removes a cheapest *external* edge (one lying in
//! exactly one not-yet-destroyed induced cycle). Removing edge `e` costs
//! every other edge `f` of that cycle an extra `cost(e) + 1`, because any
//! path that used `e` must now detour around the cycle through `f`. A
//! min-heap keyed by `(cost, edge id)` drives the loop; every edge enters
//! the heap at most once (when its unprocessed-cycle count drops to 1) and
//! leaves it at most once, so the whole run does O(m) heap operations and
//! O(m + n) cycle scans, i.e. O(n log n) time. The surviving n - 1 edges
//! form a spanning tree minimizing the total (equivalently average)
//! stretch over all spanning trees, and its fundamental cycle basis is a
//! minimum fundamental cycle basis of the graph.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::cycles::{self, Cycle};
use crate::decomp::{self, NiceEarDecomposition, RejectionReason};
use crate::graph::{EdgeId, EdgeSet, Graph, VertexId, UNREACHABLE};

/// An exact reduced fraction, used for average stretch and distortion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    /// Reduces `num/den`. `den` must be nonzero.
    pub fn new(num: u64, den: u64) -> Fraction {
        assert!(den != 0, "fraction with zero denominator");
        if num == 0 {
            return Fraction { num: 0, den: 1 };
        }
        let g = gcd(num, den);
        Fraction {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Operation counters for one engine run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MastStats {
    /// Heap pushes plus heap pops (including pops that discard entries
    /// whose edge was logically deleted). At most `3m`.
    pub heap_ops: u64,
    /// Edge visits while scanning the destroyed cycle of each extracted
    /// edge. Every cycle is destroyed exactly once, so this totals the sum
    /// of all induced cycle lengths, at most `m + n`.
    pub cycle_scan_ops: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MastResult {
    /// The n - 1 surviving edges: a minimum average stretch spanning tree.
    pub tree: EdgeSet,
    /// Removed edges in extraction order.
    pub removal_order: Vec<EdgeId>,
    /// Sum over all graph edges of the tree distance between their
    /// endpoints (tree edges contribute 1 each).
    pub total_stretch: u64,
    /// `total_stretch / m`, reduced.
    pub average_stretch: Fraction,
    /// Size of the tree's fundamental cycle basis:
    /// `total_stretch - (n - 1) + (m - n + 1)`.
    pub fcb_size: u64,
    pub stats: MastStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpanningTreeError {
    #[error("edge set has {got} edges, a spanning tree needs {expected}")]
    WrongCardinality { expected: usize, got: usize },
    #[error("edge set does not span the graph")]
    NotSpanning,
}

/// Runs the engine on a verified decomposition of `g`.
pub fn run_mast(g: &Graph, d: &NiceEarDecomposition) -> MastResult {
    run_mast_with(g, d, |_, _, _| {})
}

/// Like [`run_mast`], invoking `on_extract(edge, cost, removed_so_far)`
/// right before each extracted edge joins the removed set. The callback
/// sees the exact extraction order and the cost the engine charged, which
/// is what the audit suite cross-checks against [`support`].
pub fn run_mast_with(
    g: &Graph,
    d: &NiceEarDecomposition,
    mut on_extract: impl FnMut(EdgeId, u64, &EdgeSet),
) -> MastResult {
    let n = g.vertex_count();
    let m = g.edge_count();
    let set = cycles::induced_cycles(g, d);
    let k = set.len();
    debug_assert_eq!(k, m - n + 1);

    let mut unprocessed: Vec<u32> = (0..m as EdgeId)
        .map(|e| set.cycles_through(e).len() as u32)
        .collect();
    // An edge's cost counts removed edges whose replacement path crosses
    // it, so it never exceeds the number of removals, m - n + 1; edge ids
    // are u32, hence u32 keys suffice and keep heap entries at 8 bytes.
    let mut cost: Vec<u32> = vec![0; m];
    let mut processed = vec![false; k];
    let mut removed = EdgeSet::new(m);
    let mut removal_order: Vec<EdgeId> = Vec::with_capacity(k);
    let mut heap: BinaryHeap<Reverse<(u32, EdgeId)>> = BinaryHeap::new();
    let mut stats = MastStats::default();

    // Every edge of a polygonal 2-tree lies in at least one induced cycle;
    // the ones in exactly one are the initial external edges.
    for e in 0..m as EdgeId {
        debug_assert!(unprocessed[e as usize] >= 1);
        if unprocessed[e as usize] == 1 {
            heap.push(Reverse((0, e)));
            stats.heap_ops += 1;
        }
    }

    while let Some(Reverse((key, e))) = heap.pop() {
        stats.heap_ops += 1;
        if removed.contains(e) || unprocessed[e as usize] != 1 {
            // Logically deleted: the edge's last cycle was destroyed from
            // elsewhere after this entry was pushed.
            continue;
        }
        // While an edge sits in the heap its cost is frozen: any cost
        // change also consumes its last unprocessed cycle.
        debug_assert_eq!(key, cost[e as usize]);
        on_extract(e, u64::from(cost[e as usize]), &removed);
        removed.insert(e);
        removal_order.push(e);
        unprocessed[e as usize] = 0;

        // The unique unprocessed cycle through e.
        let through = set.cycles_through(e);
        let ci = *through
            .iter()
            .find(|&&c| !processed[c as usize])
            .expect("external edge has an unprocessed cycle") as usize;
        debug_assert!(
            through.iter().filter(|&&c| !processed[c as usize]).count() == 1,
            "extracted edge must be external"
        );
        processed[ci] = true;
        let delta = cost[e as usize] + 1;
        for &f in set.cycle(ci) {
            stats.cycle_scan_ops += 1;
            if f == e {
                continue;
            }
            cost[f as usize] += delta;
            unprocessed[f as usize] -= 1;
            if unprocessed[f as usize] == 1 {
                debug_assert!(!removed.contains(f));
                heap.push(Reverse((cost[f as usize], f)));
                stats.heap_ops += 1;
            }
        }

        #[cfg(debug_assertions)]
        audit_loop_state(m, &heap, &removed, &unprocessed, &cost, &set, &processed);
    }

    debug_assert_eq!(removal_order.len(), k);
    debug_assert!(processed.iter().all(|&p| p));
    let tree = removed.complement();
    let total_stretch = total_stretch(g, &tree).expect("surviving edges span the graph");
    let fcb_size = total_stretch - (n as u64 - 1) + k as u64;
    MastResult {
        tree,
        removal_order,
        total_stretch,
        average_stretch: average_stretch(total_stretch, m),
        fcb_size,
        stats,
    }
}

/// Debug-build re-derivation of the loop state on small inputs: the live
/// heap entries are exactly the external edges of the residual graph, and
/// every unprocessed count matches a recount. Quadratic, so capped.
#[cfg(debug_assertions)]
fn audit_loop_state(
    m: usize,
    heap: &BinaryHeap<Reverse<(u32, EdgeId)>>,
    removed: &EdgeSet,
    unprocessed: &[u32],
    cost: &[u32],
    set: &cycles::InducedCycleSet,
    processed: &[bool],
) {
    if m > 512 {
        return;
    }
    for e in 0..m as EdgeId {
        let recount = set
            .cycles_through(e)
            .iter()
            .filter(|&&c| !processed[c as usize])
            .count() as u32;
        let expect = if removed.contains(e) { 0 } else { recount };
        assert_eq!(unprocessed[e as usize], expect, "unprocessed count drifted");
    }
    let live: std::collections::BTreeSet<EdgeId> = heap
        .iter()
        .filter(|Reverse((key, e))| {
            !removed.contains(*e) && unprocessed[*e as usize] == 1 && *key == cost[*e as usize]
        })
        .map(|Reverse((_, e))| *e)
        .collect();
    let boundary: std::collections::BTreeSet<EdgeId> = (0..m as EdgeId)
        .filter(|&e| !removed.contains(e) && unprocessed[e as usize] == 1)
        .collect();
    assert_eq!(live, boundary, "heap out of sync with the boundary");
}

/// Sum over all edges of `g` of the tree distance between their
/// endpoints. `tree` must be a spanning tree of `g`; tree edges contribute
/// 1 each. Runs one offline lowest-common-ancestor pass, O((n + m) α(n)).
pub fn total_stretch(g: &Graph, tree: &EdgeSet) -> Result<u64, SpanningTreeError> {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n == 0 {
        return Ok(0);
    }
    if tree.len() != n - 1 {
        return Err(SpanningTreeError::WrongCardinality {
            expected: n - 1,
            got: tree.len(),
        });
    }

    // Bucket the non-tree edges on both endpoints.
    let queries: Vec<(VertexId, VertexId)> = (0..m as EdgeId)
        .filter(|&e| !tree.contains(e))
        .map(|e| g.endpoints(e))
        .collect();
    let mut q_off = vec![0u32; n + 1];
    for &(u, v) in &queries {
        q_off[u as usize + 1] += 1;
        q_off[v as usize + 1] += 1;
    }
    for v in 0..n {
        q_off[v + 1] += q_off[v];
    }
    let mut q_adj = vec![(0 as VertexId, 0u32); queries.len() * 2];
    let mut q_cursor = q_off.clone();
    for (qi, &(u, v)) in queries.iter().enumerate() {
        q_adj[q_cursor[u as usize] as usize] = (v, qi as u32);
        q_cursor[u as usize] += 1;
        q_adj[q_cursor[v as usize] as usize] = (u, qi as u32);
        q_cursor[v as usize] += 1;
    }

    // Offline LCA (disjoint-set union on the DFS): when a vertex finishes,
    // its set's ancestor label is the deepest still-open ancestor.
    let mut depth = vec![0u32; n];
    let mut visited = vec![false; n];
    let mut finished = vec![false; n];
    let mut dsu: Vec<u32> = (0..n as u32).collect();
    let mut size = vec![1u32; n];
    let mut ancestor: Vec<u32> = (0..n as u32).collect();
    let mut lca = vec![UNREACHABLE; queries.len()];

    fn find(dsu: &mut [u32], mut x: u32) -> u32 {
        while dsu[x as usize] != x {
            dsu[x as usize] = dsu[dsu[x as usize] as usize];
            x = dsu[x as usize];
        }
        x
    }

    let mut stack: Vec<(VertexId, u32)> = vec![(0, 0)];
    visited[0] = true;
    let mut seen = 1usize;
    while let Some(&(v, cursor)) = stack.last() {
        let nbrs = g.neighbors(v);
        if (cursor as usize) < nbrs.len() {
            stack.last_mut().unwrap().1 += 1;
            let (w, e) = nbrs[cursor as usize];
            if tree.contains(e) && !visited[w as usize] {
                visited[w as usize] = true;
                seen += 1;
                depth[w as usize] = depth[v as usize] + 1;
                stack.push((w, 0));
            }
        } else {
            finished[v as usize] = true;
            for &(w, qi) in &q_adj[q_off[v as usize] as usize..q_off[v as usize + 1] as usize] {
                if finished[w as usize] {
                    lca[qi as usize] = ancestor[find(&mut dsu, w) as usize];
                }
            }
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                // Merge v's set into the parent's and re-label.
                let (mut ra, mut rb) = (find(&mut dsu, p), find(&mut dsu, v));
                if size[ra as usize] < size[rb as usize] {
                    std::mem::swap(&mut ra, &mut rb);
                }
                dsu[rb as usize] = ra;
                size[ra as usize] += size[rb as usize];
                ancestor[ra as usize] = p;
            }
        }
    }
    if seen != n {
        return Err(SpanningTreeError::NotSpanning);
    }

    let mut total = (n as u64) - 1;
    for (qi, &(u, v)) in queries.iter().enumerate() {
        let l = lca[qi];
        debug_assert_ne!(l, UNREACHABLE, "query endpoints lie in the spanned tree");
        total += depth[u as usize] as u64 + depth[v as usize] as u64 - 2 * depth[l as usize] as u64;
    }
    Ok(total)
}

/// `total / m` as an exact reduced fraction.
pub fn average_stretch(total_stretch: u64, m: usize) -> Fraction {
    Fraction::new(total_stretch, m as u64)
}

/// The fundamental cycles of `tree` in `g`: for each non-tree edge (in id
/// order), that edge followed by the tree path between its endpoints.
pub fn fundamental_cycles(g: &Graph, tree: &EdgeSet) -> Result<Vec<Cycle>, SpanningTreeError> {
    let n = g.vertex_count();
    let m = g.edge_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    if tree.len() != n - 1 {
        return Err(SpanningTreeError::WrongCardinality {
            expected: n - 1,
            got: tree.len(),
        });
    }
    let mut parent_edge = vec![UNREACHABLE; n];
    let mut parent = vec![0 as VertexId; n];
    let mut depth = vec![0u32; n];
    let mut visited = vec![false; n];
    let mut stack: Vec<VertexId> = vec![0];
    visited[0] = true;
    let mut seen = 1usize;
    while let Some(v) = stack.pop() {
        for &(w, e) in g.neighbors(v) {
            if tree.contains(e) && !visited[w as usize] {
                visited[w as usize] = true;
                seen += 1;
                parent[w as usize] = v;
                parent_edge[w as usize] = e;
                depth[w as usize] = depth[v as usize] + 1;
                stack.push(w);
            }
        }
    }
    if seen != n {
        return Err(SpanningTreeError::NotSpanning);
    }

    let mut out = Vec::with_capacity(m - (n - 1));
    for e in 0..m as EdgeId {
        if tree.contains(e) {
            continue;
        }
        let (u, v) = g.endpoints(e);
        // Climb both endpoints to their meeting point; the cycle reads
        // e, then v's climb, then u's climb reversed.
        let (mut a, mut b) = (v, u);
        let mut from_v: Vec<EdgeId> = Vec::new();
        let mut from_u: Vec<EdgeId> = Vec::new();
        while depth[a as usize] > depth[b as usize] {
            from_v.push(parent_edge[a as usize]);
            a = parent[a as usize];
        }
        while depth[b as usize] > depth[a as usize] {
            from_u.push(parent_edge[b as usize]);
            b = parent[b as usize];
        }
        while a != b {
            from_v.push(parent_edge[a as usize]);
            a = parent[a as usize];
            from_u.push(parent_edge[b as usize]);
            b = parent[b as usize];
        }
        let mut edges = Vec::with_capacity(1 + from_v.len() + from_u.len());
        edges.push(e);
        edges.extend(from_v);
        edges.extend(from_u.into_iter().rev());
        out.push(Cycle { edges });
    }
    Ok(out)
}

/// The average stretch of the minimum average stretch spanning tree; the
/// distortion of optimally embedding `g` into its spanning trees.
pub fn distortion(g: &Graph) -> Result<Fraction, RejectionReason> {
    match decomp::recognize(g) {
        decomp::RecognitionOutcome::Accepted(d) => Ok(run_mast(g, &d).average_stretch),
        decomp::RecognitionOutcome::Rejected(r) => Err(r),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SupportError {
    #[error("edge {0} is outside the graph")]
    NotInGraph(EdgeId),
    #[error("edge {0} is in the removed set")]
    InRemovedSet(EdgeId),
    #[error("edge {0} is a bridge after the removals")]
    BridgeInView(EdgeId),
    #[error("edge {0} lies in more than one residual induced cycle")]
    NotExternalInView(EdgeId),
    #[error("graph too large for the exhaustive check behind edge {0}")]
    TooLargeForAudit(EdgeId),
}

/// The support of a boundary edge `e` with respect to a removed set:
/// the removed edges (u, v) such that some shortest u-v path in the
/// residual graph passes through `e`. The number the engine charges an
/// edge when extracting it equals the size of this set.
///
/// Verification-grade: runs two BFS passes per removed edge, so use it on
/// small instances only.
pub fn support(g: &Graph, removed: &EdgeSet, e: EdgeId) -> Result<EdgeSet, SupportError> {
    let m = g.edge_count();
    if (e as usize) >= m {
        return Err(SupportError::NotInGraph(e));
    }
    if removed.contains(e) {
        return Err(SupportError::InRemovedSet(e));
    }
    let (x, y) = g.endpoints(e);

    // Boundary membership: still on a residual cycle, and on exactly one
    // residual induced cycle.
    let mut blocked = removed.clone();
    blocked.insert(e);
    if g.bfs_distances(x, Some(&blocked))[y as usize] == UNREACHABLE {
        return Err(SupportError::BridgeInView(e));
    }
    let residual_cycles = crate::oracle::count_chordless_cycles_through(g, removed, e, 2)
        .map_err(|_| SupportError::TooLargeForAudit(e))?;
    if residual_cycles > 1 {
        return Err(SupportError::NotExternalInView(e));
    }

    let mut out = EdgeSet::new(m);
    for a in removed.iter() {
        let (u, v) = g.endpoints(a);
        let du = g.bfs_distances(u, Some(removed));
        let dv = g.bfs_distances(v, Some(removed));
        let duv = du[v as usize];
        if duv == UNREACHABLE {
            continue;
        }
        let reach = |d: u32| d != UNREACHABLE;
        let through = (reach(du[x as usize])
            && reach(dv[y as usize])
            && du[x as usize] as u64 + 1 + dv[y as usize] as u64 == duv as u64)
            || (reach(du[y as usize])
                && reach(dv[x as usize])
                && du[y as usize] as u64 + 1 + dv[x as usize] as u64 == duv as u64);
        if through {
            out.insert(a);
        }
    }
    Ok(out)
}
