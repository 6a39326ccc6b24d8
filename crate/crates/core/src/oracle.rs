//! Independent brute-force ground truth for small graphs.
//!
//! Everything here is deliberately definitional — permutation scans,
//! subset enumeration, difference-constraint solving — so it can serve as
//! the oracle side of tests for the constructive modules. The exact
//! cubicity/boxicity searches are exponential and hard-capped at five
//! vertices (callers may raise the cap explicitly for pinned regressions).

use crate::builder::{Interval, IntervalRep};
use crate::graph::Graph;
use crate::{Error, Result};

/// Default vertex cap of the exact searches.
pub const EXACT_CAP: usize = 5;

/// Adjacency-bitmask graph for exhaustive work on up to 8 vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct BitGraph {
    n: usize,
    mask: u64,
}

impl BitGraph {
    fn pair_bit(n: usize, u: usize, v: usize) -> u32 {
        debug_assert!(u < v && v < n);
        (u * n - u * (u + 1) / 2 + (v - u - 1)) as u32
    }

    fn from_graph(g: &Graph) -> BitGraph {
        let n = g.n();
        let mut mask = 0u64;
        for u in 1..=n {
            for &v in g.neighbors(u) {
                if u < v {
                    mask |= 1 << BitGraph::pair_bit(n, u - 1, v - 1);
                }
            }
        }
        BitGraph { n, mask }
    }

    fn to_graph(self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.edge(u, v) {
                    g.add_edge(u + 1, v + 1).unwrap();
                }
            }
        }
        g
    }

    fn edge(&self, u: usize, v: usize) -> bool {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.mask >> BitGraph::pair_bit(self.n, u, v) & 1 == 1
    }

    fn permuted(&self, perm: &[usize]) -> u64 {
        let mut mask = 0u64;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.edge(perm[u], perm[v]) {
                    mask |= 1 << BitGraph::pair_bit(self.n, u, v);
                }
            }
        }
        mask
    }
}

/// Calls `f` on every permutation of `0..n` until it returns true.
fn any_permutation(n: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if k == items.len() {
            return f(items);
        }
        for i in k..items.len() {
            items.swap(k, i);
            if rec(items, k + 1, f) {
                items.swap(k, i);
                return true;
            }
            items.swap(k, i);
        }
        false
    }
    let mut items: Vec<usize> = (0..n).collect();
    rec(&mut items, 0, &mut f)
}

fn canonical_mask(bg: &BitGraph) -> u64 {
    let mut best = u64::MAX;
    any_permutation(bg.n, |perm| {
        best = best.min(bg.permuted(perm));
        false
    });
    best
}

/// Interval order test: for positions i < j < k, an edge `(p_i, p_k)`
/// forces the edge `(p_j, p_k)`.
fn is_interval_order(bg: &BitGraph, perm: &[usize]) -> bool {
    for k in 2..bg.n {
        for i in 0..k {
            if bg.edge(perm[i], perm[k]) {
                for j in (i + 1)..k {
                    if !bg.edge(perm[j], perm[k]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Umbrella (indifference) order test: an edge `(p_i, p_k)` forces both
/// `(p_i, p_j)` and `(p_j, p_k)` for every j between.
fn is_umbrella_order(bg: &BitGraph, perm: &[usize]) -> bool {
    for k in 2..bg.n {
        for i in 0..k {
            if bg.edge(perm[i], perm[k]) {
                for j in (i + 1)..k {
                    if !bg.edge(perm[j], perm[k]) || !bg.edge(perm[i], perm[j]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn is_interval_bitgraph(bg: &BitGraph) -> bool {
    bg.n <= 2 || any_permutation(bg.n, |perm| is_interval_order(bg, perm))
}

fn is_unit_interval_bitgraph(bg: &BitGraph) -> bool {
    bg.n <= 2 || any_permutation(bg.n, |perm| is_umbrella_order(bg, perm))
}

/// Backtracking order search with incremental pruning; exponential in the
/// worst case but fine for the small instances the oracle serves.
fn search_order(g: &Graph, umbrella: bool) -> Option<Vec<usize>> {
    let n = g.n();
    let bg = if n <= 8 { Some(BitGraph::from_graph(g)) } else { None };
    let edge = |u: usize, v: usize| match &bg {
        Some(b) => b.edge(u, v),
        None => g.has_edge(u + 1, v + 1),
    };
    fn extend(
        n: usize,
        edge: &dyn Fn(usize, usize) -> bool,
        umbrella: bool,
        order: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if order.len() == n {
            return true;
        }
        'cand: for v in 0..n {
            if used[v] {
                continue;
            }
            let k = order.len();
            for i in 0..k {
                if edge(order[i], v) {
                    for j in (i + 1)..k {
                        if !edge(order[j], v) || (umbrella && !edge(order[i], order[j])) {
                            continue 'cand;
                        }
                    }
                }
            }
            order.push(v);
            used[v] = true;
            if extend(n, edge, umbrella, order, used) {
                return true;
            }
            order.pop();
            used[v] = false;
        }
        false
    }
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if extend(n, &edge, umbrella, &mut order, &mut used) {
        Some(order)
    } else {
        None
    }
}

/// Interval graph recognition (order search).
pub fn is_interval_graph(g: &Graph) -> bool {
    g.n() <= 2 || search_order(g, false).is_some()
}

/// Unit (proper) interval graph recognition.
pub fn is_unit_interval_graph(g: &Graph) -> bool {
    g.n() <= 2 || search_order(g, true).is_some()
}

/// A unit interval representation of `g` with integer endpoints, when one
/// exists. Built from an umbrella order by solving the induced difference
/// constraints exactly; the returned representation is validated against
/// the graph before being handed out.
pub fn unit_interval_witness(g: &Graph) -> Result<Option<IntervalRep>> {
    let n = g.n();
    if n == 0 {
        return Ok(Some(IntervalRep::new(Vec::new(), 1)));
    }
    let order = if n <= 2 {
        (0..n).collect()
    } else {
        match search_order(g, true) {
            Some(o) => o,
            None => return Ok(None),
        }
    };
    for len in 1..=(n as i64 * n as i64) {
        if let Some(starts) = solve_positions(g, &order, len) {
            let mut intervals = vec![Interval::new(0, 0); n];
            for (i, &v) in order.iter().enumerate() {
                intervals[v] = Interval::new(starts[i], starts[i] + len);
            }
            let rep = IntervalRep::new(intervals, len);
            for u in 1..=n {
                for v in (u + 1)..=n {
                    if rep.interval(u).overlaps(&rep.interval(v)) != g.has_edge(u, v) {
                        return Err(Error::InternalInvariant(format!(
                            "unit interval witness disagrees with the graph at ({u}, {v})"
                        )));
                    }
                }
            }
            return Ok(Some(rep));
        }
    }
    Err(Error::InternalInvariant(
        "umbrella order admitted no integer representation within the length budget".into(),
    ))
}

/// Bellman-Ford over the difference constraints of a fixed order and
/// interval length: starts increase along the order, adjacent pairs stay
/// within `len`, non-adjacent pairs exceed it.
fn solve_positions(g: &Graph, order: &[usize], len: i64) -> Option<Vec<i64>> {
    let n = order.len();
    // edges (from, to, w) meaning a[to] <= a[from] + w, node n = source
    let mut cons: Vec<(usize, usize, i64)> = Vec::new();
    for i in 0..n {
        cons.push((n, i, 0));
        if i + 1 < n {
            cons.push((i + 1, i, -1));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if g.has_edge(order[i] + 1, order[j] + 1) {
                cons.push((i, j, len));
            } else {
                cons.push((j, i, -(len + 1)));
            }
        }
    }
    const INF: i64 = i64::MAX / 4;
    let mut dist = vec![INF; n + 1];
    dist[n] = 0;
    for _ in 0..=n {
        let mut changed = false;
        for &(from, to, w) in &cons {
            if dist[from] < INF && dist[from] + w < dist[to] {
                dist[to] = dist[from] + w;
                changed = true;
            }
        }
        if !changed {
            let min = *dist[..n].iter().min().unwrap();
            return Some(dist[..n].iter().map(|d| d - min).collect());
        }
    }
    None // still relaxing after n+1 rounds: negative cycle, infeasible
}

/// Intersection graph of interval representations over a shared vertex set:
/// `(u, v)` is an edge exactly when the intervals overlap in every member.
pub fn intersection_graph(reps: &[IntervalRep]) -> Result<Graph> {
    let Some(first) = reps.first() else {
        return Err(Error::InvalidInput(
            "intersection of an empty representation list is undefined".into(),
        ));
    };
    let n = first.n();
    if reps.iter().any(|r| r.n() != n) {
        return Err(Error::InvalidInput(
            "representations cover different vertex sets".into(),
        ));
    }
    let mut g = Graph::new(n);
    for u in 1..=n {
        for v in (u + 1)..=n {
            if reps.iter().all(|r| r.interval(u).overlaps(&r.interval(v))) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// One entry of the tiny-graph catalog: a canonical representative with
/// precomputed recognition flags.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub n: usize,
    canonical: BitGraph,
    pub is_interval: bool,
    pub is_unit_interval: bool,
}

impl CatalogEntry {
    pub fn graph(&self) -> Graph {
        self.canonical.to_graph()
    }
}

/// All simple graphs on up to five vertices, one per isomorphism class.
pub struct TinyGraphCatalog {
    entries: Vec<CatalogEntry>,
}

impl TinyGraphCatalog {
    pub fn build() -> TinyGraphCatalog {
        let mut entries = Vec::new();
        for n in 1..=EXACT_CAP {
            let pairs = n * (n - 1) / 2;
            let mut seen = std::collections::BTreeSet::new();
            for mask in 0..(1u64 << pairs) {
                let bg = BitGraph { n, mask };
                let canon = canonical_mask(&bg);
                if seen.insert(canon) {
                    let canonical = BitGraph { n, mask: canon };
                    entries.push(CatalogEntry {
                        n,
                        is_interval: is_interval_bitgraph(&canonical),
                        is_unit_interval: is_unit_interval_bitgraph(&canonical),
                        canonical,
                    });
                }
            }
        }
        TinyGraphCatalog { entries }
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    /// Catalog entry isomorphic to `g`, if `g` is small enough.
    pub fn lookup(&self, g: &Graph) -> Option<&CatalogEntry> {
        if g.n() > EXACT_CAP || g.n() == 0 {
            return None;
        }
        let canon = canonical_mask(&BitGraph::from_graph(g));
        self.entries
            .iter()
            .find(|e| e.n == g.n() && e.canonical.mask == canon)
    }
}

/// Minimum number of unit interval supergraphs intersecting to exactly `g`.
/// Capped at [`EXACT_CAP`] vertices.
pub fn exact_cubicity(g: &Graph) -> Result<usize> {
    exact_cubicity_capped(g, EXACT_CAP)
}

/// [`exact_cubicity`] with an explicit cap (pinned regressions only; the
/// search is exponential).
pub fn exact_cubicity_capped(g: &Graph, cap: usize) -> Result<usize> {
    min_intersection_dims(g, cap, true)
}

/// Minimum number of interval supergraphs intersecting to exactly `g`.
pub fn exact_boxicity(g: &Graph) -> Result<usize> {
    exact_boxicity_capped(g, EXACT_CAP)
}

pub fn exact_boxicity_capped(g: &Graph, cap: usize) -> Result<usize> {
    min_intersection_dims(g, cap, false)
}

fn min_intersection_dims(g: &Graph, cap: usize, unit: bool) -> Result<usize> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidInput("empty graph".into()));
    }
    if n > cap {
        return Err(Error::SizeCap {
            what: if unit {
                "exact cubicity".into()
            } else {
                "exact boxicity".into()
            },
            n,
            cap,
        });
    }
    let bg = BitGraph::from_graph(g);
    let pairs = n * (n - 1) / 2;
    let full: u64 = if pairs == 64 { u64::MAX } else { (1 << pairs) - 1 };
    let non_edges = full & !bg.mask;
    // every supergraph of g that passes the recognizer
    let mut supers: Vec<u64> = Vec::new();
    let mut sub = 0u64;
    loop {
        let candidate = BitGraph {
            n,
            mask: bg.mask | sub,
        };
        let ok = if unit {
            is_unit_interval_bitgraph(&candidate)
        } else {
            is_interval_bitgraph(&candidate)
        };
        if ok {
            supers.push(candidate.mask);
        }
        if sub == non_edges {
            break;
        }
        sub = (sub.wrapping_sub(non_edges)) & non_edges; // next subset
    }
    // restrict to inclusion-minimal supergraphs: any solution can swap each
    // member for a minimal one inside it
    let minimal: Vec<u64> = supers
        .iter()
        .copied()
        .filter(|&s| !supers.iter().any(|&t| t != s && t & s == t))
        .collect();
    let roberts_cap = if unit { (2 * n) / 3 } else { n / 2 }.max(1);
    for d in 1..=roberts_cap {
        if combo_reaches(&minimal, 0, d, full, bg.mask) {
            return Ok(d);
        }
    }
    Err(Error::InternalInvariant(format!(
        "no {}-member intersection reached the target within the size bound",
        roberts_cap
    )))
}

fn combo_reaches(supers: &[u64], start: usize, depth: usize, acc: u64, target: u64) -> bool {
    if acc == target {
        // any further members keep the intersection at the target
        return supers.len() - start >= depth;
    }
    if depth == 0 {
        return false;
    }
    for i in start..supers.len() {
        let next = acc & supers[i];
        if next == acc {
            continue; // member adds nothing here; some other pick must shrink
        }
        if combo_reaches(supers, i + 1, depth - 1, next, target) {
            return true;
        }
    }
    false
}

/// Convenience: vertices of a claw (`K_{1,3}`) as a labeled graph.
pub fn claw() -> Graph {
    Graph::from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap()
}
