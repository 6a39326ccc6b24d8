//! Building, verifying and transforming cube representations.
//!
//! A dimension is built from one (coloring, color) pair: vertices of the
//! color class get `[y + n, y + 2n]` (by position `y`), everyone else gets
//! `[g, g + n]` where `g` is the largest position of a neighbor in the
//! class. Each dimension is a unit interval supergraph of the source graph,
//! and an accepted coloring family excludes every non-edge somewhere, so
//! the intersection over all dimensions is exactly the source graph. Every
//! representation is verified before it leaves this module.

use serde::{Deserialize, Serialize};

use crate::coloring::{
    construct_coloring, random_coloring_family, Coloring, ColoringFamily, NonEdgeState, Provenance,
};
use crate::graph::{degeneracy_order, Graph, OrderedGraph, Vertex};
use crate::numeric;
use crate::{Error, Result};

/// Closed interval with integer endpoints; touching counts as intersecting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub l: i64,
    pub r: i64,
}

impl Interval {
    pub fn new(l: i64, r: i64) -> Interval {
        Interval { l, r }
    }

    pub fn length(&self) -> i64 {
        self.r - self.l
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.l.max(other.l) <= self.r.min(other.r)
    }
}

/// One dimension of a representation: a vertex -> interval map where every
/// interval has the same integer length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRep {
    intervals: Vec<Interval>, // index v - 1
    common_length: i64,
}

impl IntervalRep {
    pub fn new(intervals: Vec<Interval>, common_length: i64) -> IntervalRep {
        IntervalRep {
            intervals,
            common_length,
        }
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    pub fn common_length(&self) -> i64 {
        self.common_length
    }

    /// Interval of vertex `v` (1-based).
    pub fn interval(&self, v: Vertex) -> Interval {
        self.intervals[v - 1]
    }

    /// Intervals indexed by `v - 1`.
    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }
}

/// A dimension labeled with the coloring stage and color that produced it.
/// The trivial dimension of a complete graph carries the label `(0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepDim {
    pub stage: usize,
    pub color: usize,
    pub rep: IntervalRep,
}

/// A verified cube representation: the source graph is the intersection of
/// the per-dimension unit interval graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeRepresentation {
    pub n: usize,
    pub common_length: i64,
    pub dims: Vec<RepDim>,
    pub source_graph_hash: String,
    pub meta: RepMeta,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepMeta {
    /// Degeneracy of the source graph.
    pub k: usize,
    /// Palette size used per coloring.
    pub palette: usize,
    /// Number of colorings (deterministic stages or family members).
    pub stages: usize,
    pub provenance: Provenance,
    pub pruned: bool,
    /// Vertices appended by the universal extension.
    pub extended_by: usize,
    /// Dimension count guaranteed by the construction formula.
    pub dimension_bound: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildMode {
    Deterministic,
    Randomized { seed: u64 },
}

/// Diagnostics of a build: pending non-edge counts entering each stage
/// (deterministic mode) and redraw attempts (randomized mode).
#[derive(Debug, Clone, Default)]
pub struct BuildStats {
    pub stage_mbars: Vec<u64>,
    pub attempts: Option<u32>,
}

/// Builds one dimension from a complete coloring and a color class.
pub fn build_dimension(og: &OrderedGraph, coloring: &Coloring, color: usize) -> Result<IntervalRep> {
    if !coloring.is_complete() {
        return Err(Error::InvalidInput(
            "dimension construction needs a complete coloring".into(),
        ));
    }
    let n = og.n();
    let len = n as i64;
    let mut intervals = vec![Interval::new(0, len); n];
    for y in 1..=n {
        let v = og.original(y);
        let iv = if coloring.color(y) == Some(color) {
            Interval::new(y as i64 + len, y as i64 + 2 * len)
        } else {
            let g_max = og
                .forward(y)
                .iter()
                .chain(og.backward(y))
                .copied()
                .filter(|&w| coloring.color(w) == Some(color))
                .max()
                .unwrap_or(0) as i64;
            Interval::new(g_max, g_max + len)
        };
        intervals[v - 1] = iv;
    }
    Ok(IntervalRep::new(intervals, len))
}

/// Alternate backward-sweep construction of all dimensions of a family.
///
/// Walking positions `n` down to `1`, each vertex writes its own class
/// interval and then stamps `[y, y + n]` onto any backward neighbor of a
/// different color whose interval is still untouched (`l = 0`). The first
/// such write comes from the largest forward neighbor in the class, so it
/// agrees with [`build_dimension`] exactly when every out-of-class vertex
/// with class neighbors has one *after* itself in the order; a vertex whose
/// class neighbors are all earlier keeps `[0, n]` here and can lose an
/// edge. Kept for cross-checking; the builder uses [`build_dimension`].
pub fn build_dimensions_sweep(og: &OrderedGraph, family: &ColoringFamily) -> Vec<Vec<IntervalRep>> {
    let n = og.n();
    let len = n as i64;
    let a = family.palette();
    let mut out = Vec::with_capacity(family.len());
    for coloring in family.colorings() {
        let mut dims = vec![vec![Interval::new(0, len); n]; a + 1];
        for y in (1..=n).rev() {
            let j = coloring.color(y).expect("complete coloring");
            let v = og.original(y);
            dims[j][v - 1] = Interval::new(y as i64 + len, y as i64 + 2 * len);
            for &x in og.backward(y) {
                let xv = og.original(x);
                if coloring.color(x) != Some(j) && dims[j][xv - 1].l == 0 {
                    dims[j][xv - 1] = Interval::new(y as i64, y as i64 + len);
                }
            }
        }
        out.push(
            dims.into_iter()
                .skip(1)
                .map(|iv| IntervalRep::new(iv, len))
                .collect(),
        );
    }
    out
}

/// Runs deterministic stages until every non-edge is settled, enforcing the
/// per-stage shrinkage bound and the stage cap `⌈2.42 ln n⌉ + 1`. Returns
/// the accepted family and the pending counts entering each stage.
pub fn deterministic_family(og: &OrderedGraph) -> Result<(ColoringFamily, Vec<u64>)> {
    let palette = 8 * og.k().max(1);
    let cap = numeric::stage_cap(og.n())?;
    let mut state = NonEdgeState::init(og, palette);
    let mut mbars = vec![state.mbar()];
    let mut colorings = Vec::new();
    while state.mbar() > 0 {
        if colorings.len() as u64 >= cap {
            return Err(Error::InternalInvariant(format!(
                "stage cap {cap} exceeded with {} non-edges pending",
                state.mbar()
            )));
        }
        let (coloring, _) = construct_coloring(&mut state, og)?;
        state.prune()?;
        mbars.push(state.mbar());
        colorings.push(coloring);
    }
    let family = ColoringFamily::new(colorings, palette, Provenance::Deterministic)?;
    Ok((family, mbars))
}

/// Builds a verified cube representation of `g`.
pub fn construct_cub_rep(g: &Graph, mode: BuildMode) -> Result<CubeRepresentation> {
    construct_cub_rep_with_stats(g, mode).map(|(rep, _)| rep)
}

/// [`construct_cub_rep`] returning build diagnostics alongside.
pub fn construct_cub_rep_with_stats(
    g: &Graph,
    mode: BuildMode,
) -> Result<(CubeRepresentation, BuildStats)> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidInput("cannot represent the empty graph".into()));
    }
    let order = degeneracy_order(g);
    let og = OrderedGraph::new(g, &order);
    let k = og.k();

    let (dimension_bound, provenance_for_trivial) = match mode {
        BuildMode::Deterministic => (
            8 * k.max(1) as u64 * numeric::stage_cap(n)?,
            Provenance::Deterministic,
        ),
        BuildMode::Randomized { seed } => (
            (k as u64 + 2) * numeric::family_size(n)?,
            Provenance::Randomized { seed, attempts: 0 },
        ),
    };
    // a representation always has at least the one trivial dimension
    let dimension_bound = dimension_bound.max(1);

    let mut stats = BuildStats::default();
    let (dims, palette, stages, provenance) = if og.non_edge_count() == 0 {
        // complete graph (or a single vertex): one dimension suffices
        let len = n as i64;
        let rep = IntervalRep::new(vec![Interval::new(0, len); n], len);
        (
            vec![RepDim {
                stage: 0,
                color: 0,
                rep,
            }],
            0,
            0,
            provenance_for_trivial,
        )
    } else {
        let family = match mode {
            BuildMode::Deterministic => {
                let (family, mbars) = deterministic_family(&og)?;
                stats.stage_mbars = mbars;
                family
            }
            BuildMode::Randomized { seed } => {
                let family = random_coloring_family(&og, seed)?;
                if let Provenance::Randomized { attempts, .. } = family.provenance() {
                    stats.attempts = Some(attempts);
                }
                family
            }
        };
        let mut dims = Vec::with_capacity(family.len() * family.palette());
        for (i, coloring) in family.colorings().iter().enumerate() {
            for j in 1..=family.palette() {
                dims.push(RepDim {
                    stage: i + 1,
                    color: j,
                    rep: build_dimension(&og, coloring, j)?,
                });
            }
        }
        (dims, family.palette(), family.len(), family.provenance())
    };

    if dims.len() as u64 > dimension_bound {
        return Err(Error::InternalInvariant(format!(
            "produced {} dimensions, above the guaranteed bound {dimension_bound}",
            dims.len()
        )));
    }

    let rep = CubeRepresentation {
        n,
        common_length: n as i64,
        dims,
        source_graph_hash: g.sha256_hex(),
        meta: RepMeta {
            k,
            palette,
            stages,
            provenance,
            pruned: false,
            extended_by: 0,
            dimension_bound,
        },
    };
    let report = verify_representation(g, &rep)?;
    if !report.is_empty() {
        return Err(Error::InternalInvariant(format!(
            "constructed representation failed verification: {}",
            report.summary()
        )));
    }
    Ok((rep, stats))
}

/// Discrepancies between a graph and a representation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Adjacent in the graph but disjoint in some dimension.
    pub missing_edges: Vec<(Vertex, Vertex)>,
    /// Non-adjacent in the graph but overlapping in every dimension.
    pub phantom_edges: Vec<(Vertex, Vertex)>,
    /// `(dimension index, vertex)` pairs whose interval length is off.
    pub length_violations: Vec<(usize, Vertex)>,
}

impl VerificationReport {
    pub fn is_empty(&self) -> bool {
        self.missing_edges.is_empty()
            && self.phantom_edges.is_empty()
            && self.length_violations.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "{} missing, {} phantom, {} length violations",
            self.missing_edges.len(),
            self.phantom_edges.len(),
            self.length_violations.len()
        )
    }
}

/// `(missing edges, phantom edges)` of an interval-dimension list.
pub type AdjacencyDiff = (Vec<(Vertex, Vertex)>, Vec<(Vertex, Vertex)>);

/// Adjacency discrepancies of a list of raw interval dimensions (no length
/// constraint) against a graph. Dimension `d` must map all `n` vertices.
pub fn verify_interval_dims(g: &Graph, dims: &[Vec<Interval>]) -> Result<AdjacencyDiff> {
    let n = g.n();
    for (idx, dim) in dims.iter().enumerate() {
        if dim.len() != n {
            return Err(Error::InvalidInput(format!(
                "dimension {idx} maps {} vertices, expected {n}",
                dim.len()
            )));
        }
    }
    let mut missing = Vec::new();
    let mut phantom = Vec::new();
    for u in 1..=n {
        for v in (u + 1)..=n {
            let separated = dims
                .iter()
                .any(|dim| !dim[u - 1].overlaps(&dim[v - 1]));
            if g.has_edge(u, v) {
                if separated {
                    missing.push((u, v));
                }
            } else if !separated {
                phantom.push((u, v));
            }
        }
    }
    Ok((missing, phantom))
}

/// Checks a cube representation against `g`: interval lengths, plus exact
/// agreement of the intersection graph with `g`.
pub fn verify_representation(g: &Graph, rep: &CubeRepresentation) -> Result<VerificationReport> {
    if rep.n != g.n() {
        return Err(Error::InvalidInput(format!(
            "representation covers {} vertices, graph has {}",
            rep.n,
            g.n()
        )));
    }
    let mut report = VerificationReport::default();
    for (idx, dim) in rep.dims.iter().enumerate() {
        if dim.rep.n() != rep.n {
            return Err(Error::InvalidInput(format!(
                "dimension {idx} maps {} vertices, expected {}",
                dim.rep.n(),
                rep.n
            )));
        }
        for v in 1..=rep.n {
            if dim.rep.interval(v).length() != rep.common_length {
                report.length_violations.push((idx, v));
            }
        }
    }
    let dims: Vec<Vec<Interval>> = rep
        .dims
        .iter()
        .map(|d| d.rep.intervals().to_vec())
        .collect();
    let (missing, phantom) = verify_interval_dims(g, &dims)?;
    report.missing_edges = missing;
    report.phantom_edges = phantom;
    Ok(report)
}

/// Appends `count` universal vertices, each mapped to `[L, 2L]` in every
/// dimension. Requires the touching property of constructed representations
/// (every interval meets `L` or `2L`), which guarantees the new vertices
/// are adjacent to everything.
pub fn extend_with_universal(rep: &CubeRepresentation, count: usize) -> Result<CubeRepresentation> {
    let len = rep.common_length;
    for (idx, dim) in rep.dims.iter().enumerate() {
        for v in 1..=rep.n {
            let iv = dim.rep.interval(v);
            let touches = (iv.l <= len && len <= iv.r) || (iv.l <= 2 * len && 2 * len <= iv.r);
            if !touches {
                return Err(Error::InvalidInput(format!(
                    "dimension {idx}, vertex {v}: interval [{}, {}] touches neither {len} nor {}",
                    iv.l,
                    iv.r,
                    2 * len
                )));
            }
        }
    }
    let mut out = rep.clone();
    out.n += count;
    out.meta.extended_by += count;
    for dim in &mut out.dims {
        let mut intervals = dim.rep.intervals().to_vec();
        intervals.extend(std::iter::repeat_n(Interval::new(len, 2 * len), count));
        dim.rep = IntervalRep::new(intervals, len);
    }
    Ok(out)
}

/// Greedily drops dimensions whose removal keeps the intersection equal to
/// `g`. This is post-processing, not part of the construction; at least one
/// dimension is always kept.
pub fn prune_dimensions(g: &Graph, rep: &CubeRepresentation) -> Result<CubeRepresentation> {
    let report = verify_representation(g, rep)?;
    if !report.is_empty() {
        return Err(Error::InvalidInput(format!(
            "refusing to prune an invalid representation: {}",
            report.summary()
        )));
    }
    let non_edges = g.non_edge_pairs();
    // per non-edge, which dimensions separate it
    let mut separating: Vec<Vec<usize>> = vec![Vec::new(); non_edges.len()];
    let mut count: Vec<usize> = vec![0; non_edges.len()];
    for (e_idx, &(u, v)) in non_edges.iter().enumerate() {
        for (d_idx, dim) in rep.dims.iter().enumerate() {
            if !dim.rep.interval(u).overlaps(&dim.rep.interval(v)) {
                separating[e_idx].push(d_idx);
                count[e_idx] += 1;
            }
        }
    }
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); rep.dims.len()];
    for (e_idx, seps) in separating.iter().enumerate() {
        for &d in seps {
            by_dim[d].push(e_idx);
        }
    }
    let mut dropped = vec![false; rep.dims.len()];
    let mut kept = rep.dims.len();
    for d in 0..rep.dims.len() {
        if kept == 1 {
            break;
        }
        if by_dim[d].iter().all(|&e| count[e] >= 2) {
            dropped[d] = true;
            kept -= 1;
            for &e in &by_dim[d] {
                count[e] -= 1;
            }
        }
    }
    let mut out = rep.clone();
    out.dims = rep
        .dims
        .iter()
        .enumerate()
        .filter(|(d, _)| !dropped[*d])
        .map(|(_, dim)| dim.clone())
        .collect();
    out.meta.pruned = true;
    let report = verify_representation(g, &out)?;
    if !report.is_empty() {
        return Err(Error::InternalInvariant(format!(
            "pruning broke the representation: {}",
            report.summary()
        )));
    }
    Ok(out)
}
