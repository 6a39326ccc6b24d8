//! File formats: graph parsing (edge list, DIMACS), crossing lists, and
//! exact JSON documents for representations, bounds, and experiments.
//!
//! Every persisted number is an integer or a `{num, den}` rational; nothing
//! is ever written as a float. Emission is deterministic, so identical
//! inputs and seeds give byte-identical documents.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use serde::{Deserialize, Serialize};

use crate::builder::{
    CubeRepresentation, Interval, IntervalRep, RepDim, RepMeta, VerificationReport,
};
use crate::coloring::Provenance;
use crate::crossing::{BoundReport, BoundTrace, CrossingData, PipelineOutput};
use crate::graph::Graph;
use crate::numeric::Enclosure;
use crate::randlab::{CheckKind, ExperimentModel, ExperimentResult, ExperimentSpec};
use crate::{Error, Result};

// ---------------------------------------------------------------------
// graph files
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dimacs,
    /// Sniff: DIMACS when the first significant line starts with `c` or `p`.
    Auto,
}

#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn sniff_format(text: &str) -> GraphFormat {
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if trimmed.starts_with('c') || trimmed.starts_with('p') {
            return GraphFormat::Dimacs;
        }
        return GraphFormat::EdgeList;
    }
    GraphFormat::EdgeList
}

/// Parses a graph document. Duplicate edges are deduplicated with a
/// warning; self-loops and out-of-range vertices are errors carrying the
/// offending line number.
pub fn parse_graph_str(text: &str, format: GraphFormat) -> Result<ParsedGraph> {
    match format {
        GraphFormat::Auto => parse_graph_str(text, sniff_format(text)),
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Dimacs => parse_dimacs(text),
    }
}

pub fn parse_graph_path(path: impl AsRef<Path>, format: GraphFormat) -> Result<ParsedGraph> {
    let text = std::fs::read_to_string(path)?;
    parse_graph_str(&text, format)
}

fn add_parsed_edge(
    g: &mut Graph,
    u: usize,
    v: usize,
    line_no: usize,
    warnings: &mut Vec<String>,
) -> Result<()> {
    if u == v {
        return Err(parse_err(line_no, format!("self-loop at vertex {u}")));
    }
    if u == 0 || v == 0 || u > g.n() || v > g.n() {
        return Err(parse_err(
            line_no,
            format!("edge ({u}, {v}) outside vertex range 1..={}", g.n()),
        ));
    }
    if !g.add_edge(u, v)? {
        warnings.push(format!("line {line_no}: duplicate edge ({u}, {v})"));
    }
    Ok(())
}

fn parse_two_ints(tokens: &[&str], line_no: usize) -> Result<(usize, usize)> {
    if tokens.len() != 2 {
        return Err(parse_err(
            line_no,
            format!("expected two vertex ids, found {} tokens", tokens.len()),
        ));
    }
    let u = tokens[0]
        .parse::<usize>()
        .map_err(|_| parse_err(line_no, format!("bad vertex id {:?}", tokens[0])))?;
    let v = tokens[1]
        .parse::<usize>()
        .map_err(|_| parse_err(line_no, format!("bad vertex id {:?}", tokens[1])))?;
    Ok((u, v))
}

fn parse_edge_list(text: &str) -> Result<ParsedGraph> {
    let mut graph: Option<Graph> = None;
    let mut warnings = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match graph.as_mut() {
            None => {
                if tokens.len() != 1 {
                    return Err(parse_err(
                        line_no,
                        "header must be a single vertex count".to_string(),
                    ));
                }
                let n = tokens[0]
                    .parse::<usize>()
                    .map_err(|_| parse_err(line_no, format!("bad vertex count {:?}", tokens[0])))?;
                graph = Some(Graph::new(n));
            }
            Some(g) => {
                let (u, v) = parse_two_ints(&tokens, line_no)?;
                add_parsed_edge(g, u, v, line_no, &mut warnings)?;
            }
        }
    }
    let graph = graph.ok_or_else(|| parse_err(0, "empty graph document"))?;
    Ok(ParsedGraph { graph, warnings })
}

fn parse_dimacs(text: &str) -> Result<ParsedGraph> {
    let mut graph: Option<Graph> = None;
    let mut declared_m: Option<usize> = None;
    let mut warnings = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "p" => {
                if graph.is_some() {
                    return Err(parse_err(line_no, "duplicate problem line"));
                }
                if tokens.len() != 4 || tokens[1] != "edge" {
                    return Err(parse_err(line_no, "expected `p edge <n> <m>`"));
                }
                let n = tokens[2]
                    .parse::<usize>()
                    .map_err(|_| parse_err(line_no, format!("bad vertex count {:?}", tokens[2])))?;
                declared_m = Some(tokens[3].parse::<usize>().map_err(|_| {
                    parse_err(line_no, format!("bad edge count {:?}", tokens[3]))
                })?);
                graph = Some(Graph::new(n));
            }
            "e" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| parse_err(line_no, "edge before the problem line"))?;
                let (u, v) = parse_two_ints(&tokens[1..], line_no)?;
                add_parsed_edge(g, u, v, line_no, &mut warnings)?;
            }
            other => {
                return Err(parse_err(line_no, format!("unknown line type {other:?}")));
            }
        }
    }
    let graph = graph.ok_or_else(|| parse_err(0, "missing problem line"))?;
    if let Some(m) = declared_m {
        if m != graph.m() {
            warnings.push(format!(
                "header declares {m} edges, document contains {}",
                graph.m()
            ));
        }
    }
    Ok(ParsedGraph { graph, warnings })
}

/// Canonical edge-list document for a graph.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for u in 1..=g.n() {
        for &v in g.neighbors(u) {
            if u < v {
                out.push_str(&format!("{u} {v}\n"));
            }
        }
    }
    out
}

/// Crossing list: one crossing per line as `u1 v1 u2 v2`, `#` comments.
pub fn parse_crossing_list(text: &str, g: &Graph) -> Result<CrossingData> {
    let mut list = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 4 {
            return Err(parse_err(
                line_no,
                format!("expected `u1 v1 u2 v2`, found {} tokens", tokens.len()),
            ));
        }
        let mut ids = [0usize; 4];
        for (slot, tok) in ids.iter_mut().zip(&tokens) {
            *slot = tok
                .parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("bad vertex id {tok:?}")))?;
        }
        list.push(((ids[0], ids[1]), (ids[2], ids[3])));
    }
    CrossingData::new(g, &list)
}

// ---------------------------------------------------------------------
// exact number documents
// ---------------------------------------------------------------------

/// An integer endpoint, or an exact rational one in normalized documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumDoc {
    Int(i64),
    Rat { num: i64, den: i64 },
}

/// Arbitrary-precision rational as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigRatDoc {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for BigRatDoc {
    fn from(r: &BigRational) -> BigRatDoc {
        BigRatDoc {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnclosureDoc {
    pub lo: BigRatDoc,
    pub hi: BigRatDoc,
    pub exact: bool,
}

impl From<&Enclosure> for EnclosureDoc {
    fn from(e: &Enclosure) -> EnclosureDoc {
        EnclosureDoc {
            lo: BigRatDoc::from(&e.lo),
            hi: BigRatDoc::from(&e.hi),
            exact: e.is_exact(),
        }
    }
}

// ---------------------------------------------------------------------
// representation documents
// ---------------------------------------------------------------------

const DOC_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DimDoc {
    color_stage: (usize, usize),
    intervals: Vec<(NumDoc, NumDoc)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DimensionBoundDoc {
    formula_value: u64,
    achieved: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CubeDoc {
    version: u32,
    kind: String,
    n: usize,
    graph_sha256: String,
    mode: String,
    seed: Option<u64>,
    attempts: Option<u32>,
    k: usize,
    palette: usize,
    stages: usize,
    pruned: bool,
    extended_by: usize,
    common_length: i64,
    normalized: bool,
    dimension_bound: DimensionBoundDoc,
    verified: bool,
    dims: Vec<DimDoc>,
}

fn endpoint_doc(value: i64, common_length: i64, normalize: bool) -> NumDoc {
    if normalize {
        NumDoc::Rat {
            num: value,
            den: common_length,
        }
    } else {
        NumDoc::Int(value)
    }
}

fn endpoint_value(doc: NumDoc, common_length: i64, normalized: bool) -> Result<i64> {
    match (doc, normalized) {
        (NumDoc::Int(v), false) => Ok(v),
        (NumDoc::Rat { num, den }, true) => {
            if den == 0 {
                return Err(Error::InvalidInput("zero denominator endpoint".into()));
            }
            // endpoint = num/den * common_length must be an exact integer
            let scaled = i128::from(num) * i128::from(common_length);
            if scaled % i128::from(den) != 0 {
                return Err(Error::InvalidInput(format!(
                    "endpoint {num}/{den} does not scale to an integer by {common_length}"
                )));
            }
            i64::try_from(scaled / i128::from(den))
                .map_err(|_| Error::InvalidInput("endpoint out of range".into()))
        }
        (NumDoc::Int(_), true) => Err(Error::InvalidInput(
            "normalized document carries integer endpoints".into(),
        )),
        (NumDoc::Rat { .. }, false) => Err(Error::InvalidInput(
            "unnormalized document carries rational endpoints".into(),
        )),
    }
}

/// Emits a cube representation as a deterministic JSON document. With
/// `normalize`, endpoints are exact rationals over the common length, so
/// the presented intervals have unit length.
pub fn emit_representation(rep: &CubeRepresentation, normalize: bool) -> Result<String> {
    let (mode, seed, attempts) = match rep.meta.provenance {
        Provenance::Deterministic => ("deterministic".to_string(), None, None),
        Provenance::Randomized { seed, attempts } => {
            ("randomized".to_string(), Some(seed), Some(attempts))
        }
    };
    let doc = CubeDoc {
        version: DOC_VERSION,
        kind: "cube".into(),
        n: rep.n,
        graph_sha256: rep.source_graph_hash.clone(),
        mode,
        seed,
        attempts,
        k: rep.meta.k,
        palette: rep.meta.palette,
        stages: rep.meta.stages,
        pruned: rep.meta.pruned,
        extended_by: rep.meta.extended_by,
        common_length: rep.common_length,
        normalized: normalize,
        dimension_bound: DimensionBoundDoc {
            formula_value: rep.meta.dimension_bound,
            achieved: rep.dims.len(),
        },
        verified: true,
        dims: rep
            .dims
            .iter()
            .map(|dim| DimDoc {
                color_stage: (dim.stage, dim.color),
                intervals: (1..=rep.n)
                    .map(|v| {
                        let iv = dim.rep.interval(v);
                        (
                            endpoint_doc(iv.l, rep.common_length, normalize),
                            endpoint_doc(iv.r, rep.common_length, normalize),
                        )
                    })
                    .collect(),
            })
            .collect(),
    };
    Ok(format!("{}\n", serde_json::to_string_pretty(&doc)?))
}

/// Representation document contents: either a cube representation or a
/// box-representation (decomposition pipeline output).
#[derive(Debug, Clone)]
pub enum ParsedRepresentation {
    Cube(CubeRepresentation),
    Box {
        n: usize,
        graph_sha256: String,
        dims: Vec<Vec<Interval>>,
    },
}

pub fn parse_representation(text: &str) -> Result<ParsedRepresentation> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    match value.get("kind").and_then(|k| k.as_str()) {
        Some("cube") => parse_cube_doc(serde_json::from_value(value)?),
        Some("box") => {
            let doc: BoxDoc = serde_json::from_value(value)?;
            if doc.version != DOC_VERSION {
                return Err(Error::InvalidInput(format!(
                    "unsupported document version {}",
                    doc.version
                )));
            }
            let dims = doc
                .dims
                .iter()
                .map(|d| decode_dim(&d.intervals, doc.n, 1, false))
                .collect::<Result<Vec<_>>>()?;
            Ok(ParsedRepresentation::Box {
                n: doc.n,
                graph_sha256: doc.graph_sha256,
                dims,
            })
        }
        _ => Err(Error::InvalidInput(
            "document kind must be \"cube\" or \"box\"".into(),
        )),
    }
}

fn decode_dim(
    intervals: &[(NumDoc, NumDoc)],
    n: usize,
    common_length: i64,
    normalized: bool,
) -> Result<Vec<Interval>> {
    if intervals.len() != n {
        return Err(Error::InvalidInput(format!(
            "dimension lists {} intervals, expected {n}",
            intervals.len()
        )));
    }
    intervals
        .iter()
        .map(|&(l, r)| {
            Ok(Interval::new(
                endpoint_value(l, common_length, normalized)?,
                endpoint_value(r, common_length, normalized)?,
            ))
        })
        .collect()
}

fn parse_cube_doc(doc: CubeDoc) -> Result<ParsedRepresentation> {
    if doc.version != DOC_VERSION {
        return Err(Error::InvalidInput(format!(
            "unsupported document version {}",
            doc.version
        )));
    }
    let provenance = match doc.mode.as_str() {
        "deterministic" => Provenance::Deterministic,
        "randomized" => Provenance::Randomized {
            seed: doc
                .seed
                .ok_or_else(|| Error::InvalidInput("randomized document without seed".into()))?,
            attempts: doc.attempts.unwrap_or(0),
        },
        other => {
            return Err(Error::InvalidInput(format!("unknown mode {other:?}")));
        }
    };
    let dims = doc
        .dims
        .iter()
        .map(|d| {
            Ok(RepDim {
                stage: d.color_stage.0,
                color: d.color_stage.1,
                rep: IntervalRep::new(
                    decode_dim(&d.intervals, doc.n, doc.common_length, doc.normalized)?,
                    doc.common_length,
                ),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if doc.dimension_bound.achieved != dims.len() {
        return Err(Error::InvalidInput(format!(
            "document claims {} dimensions but lists {}",
            doc.dimension_bound.achieved,
            dims.len()
        )));
    }
    Ok(ParsedRepresentation::Cube(CubeRepresentation {
        n: doc.n,
        common_length: doc.common_length,
        dims,
        source_graph_hash: doc.graph_sha256,
        meta: RepMeta {
            k: doc.k,
            palette: doc.palette,
            stages: doc.stages,
            provenance,
            pruned: doc.pruned,
            extended_by: doc.extended_by,
            dimension_bound: doc.dimension_bound.formula_value,
        },
    }))
}

// ---------------------------------------------------------------------
// pipeline (box representation) document
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
struct BoxDimDoc {
    intervals: Vec<(NumDoc, NumDoc)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct BoxDoc {
    version: u32,
    kind: String,
    n: usize,
    graph_sha256: String,
    doubled_dims: usize,
    universal_dims: usize,
    verified: bool,
    dims: Vec<BoxDimDoc>,
    trace: TraceDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TraceDoc {
    t: u64,
    planar: bool,
    core_n: usize,
    core_m: usize,
    ceil_log_4t: Option<u64>,
    threshold_fourth_power: Option<BigRatDoc>,
    threshold: Option<EnclosureDoc>,
    split_position: Option<usize>,
    min_degree_at_split: Option<usize>,
    part_c_size: usize,
    part_d_size: usize,
    stable_part_box_term: Option<EnclosureDoc>,
    dense_part_size_bound: Option<EnclosureDoc>,
    dense_part_box_bound: Option<EnclosureDoc>,
    core_box_bound: Option<EnclosureDoc>,
    total_box_bound: EnclosureDoc,
}

fn trace_doc(trace: &BoundTrace) -> TraceDoc {
    TraceDoc {
        t: trace.t,
        planar: trace.planar,
        core_n: trace.core_n,
        core_m: trace.core_m,
        ceil_log_4t: trace.ceil_log_4t,
        threshold_fourth_power: trace.threshold_fourth_power.as_ref().map(BigRatDoc::from),
        threshold: trace.threshold.as_ref().map(EnclosureDoc::from),
        split_position: trace.split_position,
        min_degree_at_split: trace.min_degree_at_split,
        part_c_size: trace.part_c_size,
        part_d_size: trace.part_d_size,
        stable_part_box_term: trace.stable_part_box_term.as_ref().map(EnclosureDoc::from),
        dense_part_size_bound: trace.dense_part_size_bound.as_ref().map(EnclosureDoc::from),
        dense_part_box_bound: trace.dense_part_box_bound.as_ref().map(EnclosureDoc::from),
        core_box_bound: trace.core_box_bound.as_ref().map(EnclosureDoc::from),
        total_box_bound: EnclosureDoc::from(&trace.total_box_bound),
    }
}

/// Emits the decomposition pipeline output (a verified box representation
/// of the input graph plus the arithmetic bound trace) as one document.
pub fn emit_pipeline(out: &PipelineOutput, g: &Graph) -> Result<String> {
    let doc = BoxDoc {
        version: DOC_VERSION,
        kind: "box".into(),
        n: g.n(),
        graph_sha256: g.sha256_hex(),
        doubled_dims: out.doubled_dims,
        universal_dims: out.universal_dims,
        verified: true,
        dims: out
            .dims
            .iter()
            .map(|dim| BoxDimDoc {
                intervals: dim
                    .iter()
                    .map(|iv| (NumDoc::Int(iv.l), NumDoc::Int(iv.r)))
                    .collect(),
            })
            .collect(),
        trace: trace_doc(&out.trace),
    };
    Ok(format!("{}\n", serde_json::to_string_pretty(&doc)?))
}

// ---------------------------------------------------------------------
// bound report document
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PachTothDoc {
    value: BigRatDoc,
    hypothesis_met: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct BoundReportDoc {
    version: u32,
    t: u64,
    n: Option<u64>,
    m: Option<u64>,
    pach_toth: Option<PachTothDoc>,
    dav_bound: Option<EnclosureDoc>,
    degeneracy_bound: EnclosureDoc,
    box_bound: EnclosureDoc,
    cub_bound: Option<EnclosureDoc>,
}

pub fn emit_bound_report(report: &BoundReport) -> Result<String> {
    let doc = BoundReportDoc {
        version: DOC_VERSION,
        t: report.t,
        n: report.n,
        m: report.m,
        pach_toth: report.pach_toth.as_ref().map(|p| PachTothDoc {
            value: BigRatDoc::from(&p.value),
            hypothesis_met: p.hypothesis_met,
        }),
        dav_bound: report.dav_bound.as_ref().map(EnclosureDoc::from),
        degeneracy_bound: EnclosureDoc::from(&report.degeneracy_bound),
        box_bound: EnclosureDoc::from(&report.box_bound),
        cub_bound: report.cub_bound.as_ref().map(EnclosureDoc::from),
    };
    Ok(format!("{}\n", serde_json::to_string_pretty(&doc)?))
}

/// Verification report as a JSON document (used by the `verify` command).
pub fn emit_verification_report(report: &VerificationReport) -> Result<String> {
    #[derive(Serialize)]
    struct ReportDoc<'a> {
        valid: bool,
        #[serde(flatten)]
        report: &'a VerificationReport,
    }
    Ok(format!(
        "{}\n",
        serde_json::to_string_pretty(&ReportDoc {
            valid: report.is_empty(),
            report,
        })?
    ))
}

// ---------------------------------------------------------------------
// experiment documents
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum RatInput {
    Int(i64),
    Rat { num: i64, den: i64 },
}

impl RatInput {
    fn to_rational(&self) -> Result<Rational64> {
        match *self {
            RatInput::Int(v) => Ok(Rational64::from_integer(v)),
            RatInput::Rat { num, den } => {
                if den == 0 {
                    return Err(Error::InvalidInput("zero denominator".into()));
                }
                Ok(Rational64::new(num, den))
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum ModelDoc {
    Gnp {
        n: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        c: Option<RatInput>,
        #[serde(skip_serializing_if = "Option::is_none")]
        p: Option<RatInput>,
    },
    Gnm {
        n: usize,
        m: usize,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SpecDoc {
    model: ModelDoc,
    trials: u32,
    master_seed: u64,
    checks: Vec<String>,
}

/// Parses an experiment spec. The `gnp` model takes either `c` (so that
/// `p = c / (n - 1)`) or an exact rational `p`; both are validated.
pub fn parse_experiment_spec(text: &str) -> Result<ExperimentSpec> {
    let doc: SpecDoc = serde_json::from_str(text)?;
    let model = match doc.model {
        ModelDoc::Gnp { n, c, p } => {
            let p = match (c, p) {
                (Some(_), Some(_)) => {
                    return Err(Error::InvalidInput("give either c or p, not both".into()))
                }
                (Some(c), None) => {
                    if n < 2 {
                        return Err(Error::InvalidInput("c-form gnp needs n >= 2".into()));
                    }
                    c.to_rational()? / Rational64::from_integer(n as i64 - 1)
                }
                (None, Some(p)) => p.to_rational()?,
                (None, None) => {
                    return Err(Error::InvalidInput("gnp model needs c or p".into()))
                }
            };
            ExperimentModel::Gnp { n, p }
        }
        ModelDoc::Gnm { n, m } => ExperimentModel::Gnm { n, m },
    };
    let checks = doc
        .checks
        .iter()
        .map(|name| {
            CheckKind::from_name(name)
                .ok_or_else(|| Error::InvalidInput(format!("unknown check {name:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let spec = ExperimentSpec {
        model,
        trials: doc.trials,
        master_seed: doc.master_seed,
        checks,
    };
    spec.validate()?;
    Ok(spec)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CheckDoc {
    name: String,
    pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RecordDoc {
    trial: u32,
    seed: u64,
    n: usize,
    m: usize,
    k: usize,
    dims: Option<u64>,
    attempts: Option<u32>,
    checks: Vec<CheckDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct AggregateDoc {
    name: String,
    passes: u32,
    trials: u32,
    fraction: BigRatDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ResultDoc {
    version: u32,
    spec: SpecDoc,
    records: Vec<RecordDoc>,
    aggregates: Vec<AggregateDoc>,
}

fn spec_doc(spec: &ExperimentSpec) -> SpecDoc {
    SpecDoc {
        model: match spec.model {
            ExperimentModel::Gnp { n, p } => ModelDoc::Gnp {
                n,
                c: None,
                p: Some(RatInput::Rat {
                    num: *p.numer(),
                    den: *p.denom(),
                }),
            },
            ExperimentModel::Gnm { n, m } => ModelDoc::Gnm { n, m },
        },
        trials: spec.trials,
        master_seed: spec.master_seed,
        checks: spec.checks.iter().map(|c| c.name().to_string()).collect(),
    }
}

/// Emits an experiment result with the canonicalized spec echoed back and
/// exact pass fractions.
pub fn emit_experiment_result(spec: &ExperimentSpec, result: &ExperimentResult) -> Result<String> {
    let doc = ResultDoc {
        version: DOC_VERSION,
        spec: spec_doc(spec),
        records: result
            .records
            .iter()
            .map(|r| RecordDoc {
                trial: r.trial,
                seed: r.seed,
                n: r.n,
                m: r.m,
                k: r.k,
                dims: r.dims,
                attempts: r.attempts,
                checks: r
                    .checks
                    .iter()
                    .map(|(name, pass)| CheckDoc {
                        name: name.clone(),
                        pass: *pass,
                    })
                    .collect(),
            })
            .collect(),
        aggregates: result
            .aggregates
            .iter()
            .map(|a| AggregateDoc {
                name: a.name.clone(),
                passes: a.passes,
                trials: a.trials,
                fraction: BigRatDoc::from(&BigRational::new(
                    BigInt::from(a.passes),
                    BigInt::from(a.trials.max(1)),
                )),
            })
            .collect(),
    };
    Ok(format!("{}\n", serde_json::to_string_pretty(&doc)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{construct_cub_rep, verify_representation, BuildMode};
    use crate::crossing::{bound_report, crossing_pipeline};
    use crate::randlab::run_experiment;

    #[test]
    fn dimacs_example() {
        let text = "c path on three vertices\np edge 3 2\ne 1 2\ne 2 3\n";
        let parsed = parse_graph_str(text, GraphFormat::Auto).unwrap();
        assert_eq!(parsed.graph.n(), 3);
        assert_eq!(parsed.graph.m(), 2);
        assert!(parsed.graph.has_edge(1, 2) && parsed.graph.has_edge(2, 3));
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn edge_list_example() {
        let text = "3\n1 2\n2 3\n3 1\n";
        let parsed = parse_graph_str(text, GraphFormat::EdgeList).unwrap();
        assert_eq!(parsed.graph.m(), 3);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_graph_str("3\n1 1\n", GraphFormat::EdgeList).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
        let err = parse_graph_str("2\n1 5\n", GraphFormat::EdgeList).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        // duplicates warn instead of failing
        let parsed = parse_graph_str("3\n1 2\n2 1\n", GraphFormat::EdgeList).unwrap();
        assert_eq!(parsed.warnings.len(), 1);
        assert_eq!(parsed.graph.m(), 1);
    }

    #[test]
    fn graph_round_trip() {
        let g = crate::randlab::gen_gnp(12, 0.4, 77).unwrap();
        let text = write_edge_list(&g);
        let parsed = parse_graph_str(&text, GraphFormat::Auto).unwrap();
        assert_eq!(parsed.graph, g);
    }

    #[test]
    fn crossing_list_parsing() {
        let g = crate::randlab::gen_gnm(5, 10, 1).unwrap(); // K5
        let cd = parse_crossing_list("# one crossing\n1 3 2 4\n", &g).unwrap();
        assert_eq!(cd.t(), 1);
        assert!(parse_crossing_list("1 3 2\n", &g).is_err());
    }

    #[test]
    fn representation_round_trip_exact() {
        let g = crate::randlab::gen_gnp(9, 0.35, 4).unwrap();
        let rep = construct_cub_rep(&g, BuildMode::Randomized { seed: 9 }).unwrap();
        for normalize in [false, true] {
            let text = emit_representation(&rep, normalize).unwrap();
            match parse_representation(&text).unwrap() {
                ParsedRepresentation::Cube(back) => assert_eq!(back, rep),
                _ => panic!("expected cube document"),
            }
            // emission is deterministic
            assert_eq!(text, emit_representation(&rep, normalize).unwrap());
        }
    }

    #[test]
    fn normalized_k3_has_common_length_denominators() {
        let g = crate::randlab::gen_gnm(3, 3, 0).unwrap(); // K3
        let rep = construct_cub_rep(&g, BuildMode::Deterministic).unwrap();
        let text = emit_representation(&rep, true).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let first = &value["dims"][0]["intervals"][0];
        assert_eq!(first[0]["den"], 3);
        assert_eq!(first[0]["num"], 0);
        assert_eq!(first[1]["num"], 3);
    }

    #[test]
    fn pipeline_document_verifies_after_reparse() {
        let g = crate::randlab::gen_gnm(5, 10, 1).unwrap(); // K5
        let cd = parse_crossing_list("1 3 2 4\n", &g).unwrap();
        let out = crossing_pipeline(&g, &cd).unwrap();
        let text = emit_pipeline(&out, &g).unwrap();
        match parse_representation(&text).unwrap() {
            ParsedRepresentation::Box { n, dims, .. } => {
                assert_eq!(n, 5);
                let (missing, phantom) =
                    crate::builder::verify_interval_dims(&g, &dims).unwrap();
                assert!(missing.is_empty() && phantom.is_empty());
            }
            _ => panic!("expected box document"),
        }
    }

    #[test]
    fn tampered_document_fails_verification() {
        let g = crate::randlab::gen_gnp(8, 0.4, 2).unwrap();
        let rep = construct_cub_rep(&g, BuildMode::Deterministic).unwrap();
        let text = emit_representation(&rep, false).unwrap();
        let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
        value["dims"][0]["intervals"][0][1] = serde_json::json!(1);
        let tampered = serde_json::to_string(&value).unwrap();
        match parse_representation(&tampered).unwrap() {
            ParsedRepresentation::Cube(back) => {
                let report = verify_representation(&g, &back).unwrap();
                assert!(!report.is_empty());
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn bound_report_document_is_exact() {
        let report = bound_report(Some(100), Some(750), 16).unwrap();
        let text = emit_bound_report(&report).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["pach_toth"]["value"]["num"], "1250");
        assert_eq!(value["pach_toth"]["value"]["den"], "1");
        assert_eq!(value["degeneracy_bound"]["exact"], true);
        assert_eq!(value["degeneracy_bound"]["lo"]["num"], "28");
    }

    #[test]
    fn experiment_spec_and_result_documents() {
        let spec = parse_experiment_spec(
            r#"{
                "model": {"type": "gnp", "n": 30, "c": 2},
                "trials": 3,
                "master_seed": 9,
                "checks": ["degeneracy_le_4ec"]
            }"#,
        )
        .unwrap();
        let result = run_experiment(&spec).unwrap();
        let a = emit_experiment_result(&spec, &result).unwrap();
        let b = emit_experiment_result(&spec, &run_experiment(&spec).unwrap()).unwrap();
        assert_eq!(a, b, "identical spec and seed give identical documents");
        // rational p form parses to the same spec
        let spec2 = parse_experiment_spec(
            r#"{
                "model": {"type": "gnp", "n": 30, "p": {"num": 2, "den": 29}},
                "trials": 3,
                "master_seed": 9,
                "checks": ["degeneracy_le_4ec"]
            }"#,
        )
        .unwrap();
        assert_eq!(spec, spec2);
        assert!(parse_experiment_spec(r#"{"model": {"type":"gnp","n":30}, "trials":1, "master_seed":0, "checks":[]}"#).is_err());
    }
}
