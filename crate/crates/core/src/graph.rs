//! Graph data model, degeneracy ordering, and the forward/backward
//! neighborhood calculus built on top of it.
//!
//! Vertices are `1..=n`. A [`DegeneracyOrder`] renames them to the
//! positions `v_1 < v_2 < ... < v_n` of a minimum-degree peel order, and
//! [`OrderedGraph`] is the graph expressed in those positions; everything
//! downstream (colorings, support sets, interval construction) works in
//! position space and maps back to the original labels only when emitting.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Error, Result};

/// 1-based vertex identifier.
pub type Vertex = usize;

/// Simple undirected graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<Vertex>>, // adj[0] unused; each list sorted ascending
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Graph {
        Graph {
            n,
            adj: vec![Vec::new(); n + 1],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Rejects self-loops and vertices
    /// outside `1..=n`; duplicate edges are ignored.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts edge `(u, v)`. Returns `false` if it was already present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool> {
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
        }
        if u == 0 || v == 0 || u > self.n || v > self.n {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) outside vertex range 1..={}",
                self.n
            )));
        }
        if self.has_edge(u, v) {
            return Ok(false);
        }
        let pos_u = self.adj[u].partition_point(|&w| w < v);
        self.adj[u].insert(pos_u, v);
        let pos_v = self.adj[v].partition_point(|&w| w < u);
        self.adj[v].insert(pos_v, u);
        self.m += 1;
        Ok(true)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Number of non-edges (unordered non-adjacent pairs).
    pub fn non_edge_count(&self) -> usize {
        self.n * (self.n.saturating_sub(1)) / 2 - self.m
    }

    /// All non-adjacent pairs `(u, v)` with `u < v`.
    pub fn non_edge_pairs(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.non_edge_count());
        for u in 1..=self.n {
            for v in (u + 1)..=self.n {
                if !self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Subgraph induced on `verts` (deduplicated, sorted), relabeled
    /// `1..=verts.len()` in ascending original order. Returns the relabeled
    /// graph together with the map from new label to original vertex.
    pub fn induced(&self, verts: &[Vertex]) -> Result<(Graph, Vec<Vertex>)> {
        let mut sorted: Vec<Vertex> = verts.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.iter().any(|&v| v == 0 || v > self.n) {
            return Err(Error::InvalidInput(
                "induced subgraph vertex outside range".into(),
            ));
        }
        let mut rank = vec![0usize; self.n + 1];
        for (i, &v) in sorted.iter().enumerate() {
            rank[v] = i + 1;
        }
        let mut g = Graph::new(sorted.len());
        for &v in &sorted {
            for &w in self.neighbors(v) {
                if v < w && rank[w] != 0 {
                    g.add_edge(rank[v], rank[w])?;
                }
            }
        }
        let mut orig = vec![0usize; sorted.len() + 1];
        orig[1..].copy_from_slice(&sorted);
        Ok((g, orig))
    }

    /// SHA-256 of the canonical byte encoding (`n` followed by the sorted
    /// edge list), as lowercase hex.
    pub fn sha256_hex(&self) -> String {
        let mut h = Sha256::new();
        h.update(b"graph v1\n");
        h.update(self.n.to_le_bytes());
        for u in 1..=self.n {
            for &v in self.neighbors(u) {
                if u < v {
                    h.update(u.to_le_bytes());
                    h.update(v.to_le_bytes());
                }
            }
        }
        let digest = h.finalize();
        let mut out = String::with_capacity(64);
        for byte in digest {
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }

    /// Forward neighbors of `v` under `order`: adjacent vertices that come
    /// later in the degeneracy order. At most `k` of them exist.
    pub fn forward_neighbors(&self, order: &DegeneracyOrder, v: Vertex) -> Vec<Vertex> {
        self.neighbors(v)
            .iter()
            .copied()
            .filter(|&w| order.precedes(v, w))
            .collect()
    }

    /// Backward neighbors of `v` under `order`: adjacent vertices earlier
    /// in the degeneracy order.
    pub fn backward_neighbors(&self, order: &DegeneracyOrder, v: Vertex) -> Vec<Vertex> {
        self.neighbors(v)
            .iter()
            .copied()
            .filter(|&w| order.precedes(w, v))
            .collect()
    }
}

/// A degeneracy order of a graph: the renaming `v_1, ..., v_n` under which
/// every vertex has at most `k` neighbors after it, with `k` equal to the
/// graph's exact degeneracy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrder {
    pos: Vec<usize>,       // pos[v] = i  <=>  v is v_i
    vertex_at: Vec<Vertex>, // vertex_at[i] = v
    k: usize,
}

impl DegeneracyOrder {
    pub fn n(&self) -> usize {
        self.vertex_at.len() - 1
    }

    /// The degeneracy of the underlying graph.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Position of original vertex `v` in the order (1-based).
    pub fn position(&self, v: Vertex) -> usize {
        self.pos[v]
    }

    /// Original vertex at position `i`.
    pub fn vertex(&self, i: usize) -> Vertex {
        self.vertex_at[i]
    }

    /// Whether `u` comes strictly before `v`.
    pub fn precedes(&self, u: Vertex, v: Vertex) -> bool {
        self.pos[u] < self.pos[v]
    }
}

/// Repeated minimum-degree removal with ties broken toward the smallest
/// vertex index. Returns the removal sequence and each vertex's degree in
/// the still-remaining graph at the moment it was removed.
pub fn min_degree_peel(g: &Graph) -> (Vec<Vertex>, Vec<usize>) {
    let n = g.n();
    let mut degree: Vec<usize> = (0..=n).map(|v| if v == 0 { 0 } else { g.degree(v) }).collect();
    // buckets[d] holds the not-yet-removed vertices of current degree d,
    // sorted so that `first()` is the smallest index.
    let max_deg = degree.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<std::collections::BTreeSet<Vertex>> = vec![Default::default(); max_deg + 1];
    for v in 1..=n {
        buckets[degree[v]].insert(v);
    }
    let mut removed = vec![false; n + 1];
    let mut order = Vec::with_capacity(n);
    let mut removal_degree = Vec::with_capacity(n);
    let mut cur = 0usize;
    for _ in 1..=n {
        while buckets[cur].is_empty() {
            cur += 1;
        }
        let v = *buckets[cur].iter().next().unwrap();
        buckets[cur].remove(&v);
        removed[v] = true;
        order.push(v);
        removal_degree.push(degree[v]);
        for &w in g.neighbors(v) {
            if !removed[w] {
                buckets[degree[w]].remove(&w);
                degree[w] -= 1;
                buckets[degree[w]].insert(w);
            }
        }
        // removing a min-degree vertex can lower the minimum by one
        cur = cur.saturating_sub(1);
    }
    (order, removal_degree)
}

/// Computes a degeneracy order via [`min_degree_peel`]. The result is fully
/// deterministic and achieves the exact degeneracy `k`.
pub fn degeneracy_order(g: &Graph) -> DegeneracyOrder {
    let n = g.n();
    let (order, degrees) = min_degree_peel(g);
    let mut pos = vec![0usize; n + 1];
    let mut vertex_at = vec![0usize; n + 1];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i + 1;
        vertex_at[i + 1] = v;
    }
    let k = degrees.iter().copied().max().unwrap_or(0);
    DegeneracyOrder { pos, vertex_at, k }
}

/// A graph renamed into degeneracy-order positions: vertex `i` of an
/// `OrderedGraph` is `v_i`. Neighborhoods are split into forward (later)
/// and backward (earlier) parts; `original(i)` recovers the input label.
#[derive(Debug, Clone)]
pub struct OrderedGraph {
    n: usize,
    k: usize,
    fwd: Vec<Vec<usize>>, // fwd[i]: positions j > i adjacent to i, ascending
    bwd: Vec<Vec<usize>>, // bwd[i]: positions j < i adjacent to i, ascending
    orig: Vec<Vertex>,    // orig[i] = original label of v_i
}

impl OrderedGraph {
    pub fn new(g: &Graph, order: &DegeneracyOrder) -> OrderedGraph {
        let n = g.n();
        let mut fwd = vec![Vec::new(); n + 1];
        let mut bwd = vec![Vec::new(); n + 1];
        for i in 1..=n {
            let v = order.vertex(i);
            for &w in g.neighbors(v) {
                let j = order.position(w);
                if j > i {
                    fwd[i].push(j);
                } else {
                    bwd[i].push(j);
                }
            }
            fwd[i].sort_unstable();
            bwd[i].sort_unstable();
        }
        OrderedGraph {
            n,
            k: order.k(),
            fwd,
            bwd,
            orig: order.vertex_at.clone(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Forward neighbors (positions greater than `i`), ascending.
    pub fn forward(&self, i: usize) -> &[usize] {
        &self.fwd[i]
    }

    /// Backward neighbors (positions less than `i`), ascending.
    pub fn backward(&self, i: usize) -> &[usize] {
        &self.bwd[i]
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        self.fwd[lo].binary_search(&hi).is_ok()
    }

    /// Original label of position `i`.
    pub fn original(&self, i: usize) -> Vertex {
        self.orig[i]
    }

    /// Number of non-edges.
    pub fn non_edge_count(&self) -> usize {
        let m: usize = self.fwd.iter().map(|f| f.len()).sum();
        self.n * self.n.saturating_sub(1) / 2 - m
    }

    /// Weak or strong support set of the non-edge `(x, y)`, `x < y`.
    pub fn support_set(&self, x: usize, y: usize, kind: SupportKind) -> Result<SupportSet> {
        if x == 0 || y > self.n || x >= y {
            return Err(Error::InvalidInput(format!(
                "support set requires positions 1 <= x < y <= n, got ({x}, {y})"
            )));
        }
        if self.is_edge(x, y) {
            return Err(Error::InvalidInput(format!(
                "({x}, {y}) is an edge; support sets are defined for non-edges"
            )));
        }
        let mut members: Vec<usize> = self.fwd[x].iter().copied().filter(|&z| z > y).collect();
        members.push(y);
        if kind == SupportKind::Strong {
            members.push(x);
        }
        members.sort_unstable();
        Ok(SupportSet {
            kind,
            anchor: (x, y),
            members,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportKind {
    Weak,
    Strong,
}

/// Support set of a non-edge `(x, y)` with `x < y` in position space.
///
/// The weak set is `{z in forward(x) : z > y} ∪ {y}`; the strong set adds
/// `x` and therefore has at most `k + 2` members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    pub kind: SupportKind,
    /// The non-edge `(x, y)`, `x < y`. `y` is the anchor whose color must
    /// differ from every other member's for the set to be favorably colored.
    pub anchor: (usize, usize),
    /// Sorted member positions.
    pub members: Vec<usize>,
}

impl SupportSet {
    /// Members other than the anchor `y`.
    pub fn non_anchor_members(&self) -> impl Iterator<Item = usize> + '_ {
        let y = self.anchor.1;
        self.members.iter().copied().filter(move |&w| w != y)
    }
}
