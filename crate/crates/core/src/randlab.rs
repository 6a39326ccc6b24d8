//! Seeded random graph generation and desk-scale experiments.
//!
//! Experiments substitute pass-fraction measurements at fixed `n` for the
//! asymptotic statements about random graphs: degeneracy of `G(n, c/(n-1))`
//! samples against the `4ec` threshold, and randomized-build dimension
//! counts of `G(n, m)` samples against `(4e * 2m/n + 2) * ⌈2e ln n⌉`. All
//! pass/fail comparisons against irrational thresholds are exact (rational
//! versus enclosure), never floating point.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use rand::Rng;

use crate::builder::{construct_cub_rep_with_stats, BuildMode};
use crate::graph::{degeneracy_order, Graph};
use crate::numeric::{self, Enclosure};
use crate::rng::{derive_seed, make_rng};
use crate::{Error, Result};

/// Samples `G(n, p)`: each pair is an edge independently with probability
/// `p`. Reproducible for a fixed seed.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("p = {p} outside [0, 1]")));
    }
    let mut rng = make_rng(seed);
    let mut g = Graph::new(n);
    for u in 1..=n {
        for v in (u + 1)..=n {
            if rng.random_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

fn pair_from_index(n: usize, mut t: usize) -> (usize, usize) {
    let mut u = 1;
    while t >= n - u {
        t -= n - u;
        u += 1;
    }
    (u, u + 1 + t)
}

/// Samples a uniform graph with exactly `m` edges via a partial shuffle of
/// the pair index space (no rejection, dense inputs included).
pub fn gen_gnm(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let total = n * n.saturating_sub(1) / 2;
    if m > total {
        return Err(Error::InvalidInput(format!(
            "m = {m} exceeds the {total} pairs of an {n}-vertex graph"
        )));
    }
    let mut rng = make_rng(seed);
    let mut idx: Vec<usize> = (0..total).collect();
    let mut g = Graph::new(n);
    for i in 0..m {
        let j = rng.random_range(i..total);
        idx.swap(i, j);
        let (u, v) = pair_from_index(n, idx[i]);
        g.add_edge(u, v)?;
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentModel {
    /// `G(n, p)` with exact rational `p`; sampling uses the nearest f64.
    Gnp { n: usize, p: Rational64 },
    /// Uniform `m`-edge graph on `n` vertices.
    Gnm { n: usize, m: usize },
}

impl ExperimentModel {
    pub fn n(&self) -> usize {
        match *self {
            ExperimentModel::Gnp { n, .. } | ExperimentModel::Gnm { n, .. } => n,
        }
    }
}

/// Named per-trial predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// `k <= 4 e c` for `G(n, p)` with `p = c / (n - 1)`.
    DegeneracyLe4ec,
    /// Randomized-build dimensions `<= (4 e (2m/n) + 2) * ⌈2e ln n⌉` (gnm).
    DimsLeDavBound,
}

impl CheckKind {
    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::DegeneracyLe4ec => "degeneracy_le_4ec",
            CheckKind::DimsLeDavBound => "dims_le_dav_bound",
        }
    }

    pub fn from_name(s: &str) -> Option<CheckKind> {
        match s {
            "degeneracy_le_4ec" => Some(CheckKind::DegeneracyLe4ec),
            "dims_le_dav_bound" => Some(CheckKind::DimsLeDavBound),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentSpec {
    pub model: ExperimentModel,
    pub trials: u32,
    pub master_seed: u64,
    pub checks: Vec<CheckKind>,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidInput("experiments need at least one trial".into()));
        }
        match self.model {
            ExperimentModel::Gnp { n, p } => {
                if n == 0 {
                    return Err(Error::InvalidInput("gnp needs n >= 1".into()));
                }
                if p < Rational64::new(0, 1) || p > Rational64::new(1, 1) {
                    return Err(Error::InvalidInput(format!("p = {p} outside [0, 1]")));
                }
            }
            ExperimentModel::Gnm { n, m } => {
                let total = n * n.saturating_sub(1) / 2;
                if m > total {
                    return Err(Error::InvalidInput(format!("m = {m} exceeds {total} pairs")));
                }
            }
        }
        for check in &self.checks {
            match (check, &self.model) {
                (CheckKind::DegeneracyLe4ec, ExperimentModel::Gnp { n, p }) => {
                    let c = *p * Rational64::from_integer(*n as i64 - 1);
                    if c < Rational64::from_integer(1) {
                        return Err(Error::InvalidInput(format!(
                            "degeneracy check needs c = p(n-1) >= 1, got {c}"
                        )));
                    }
                }
                (CheckKind::DegeneracyLe4ec, _) => {
                    return Err(Error::InvalidInput(
                        "degeneracy check applies to the gnp model".into(),
                    ))
                }
                (CheckKind::DimsLeDavBound, ExperimentModel::Gnm { n, m }) => {
                    if 2 * m < *n {
                        return Err(Error::InvalidInput(
                            "dimension check needs average degree 2m/n >= 1".into(),
                        ));
                    }
                }
                (CheckKind::DimsLeDavBound, _) => {
                    return Err(Error::InvalidInput(
                        "dimension check applies to the gnm model".into(),
                    ))
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial: u32,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub dims: Option<u64>,
    pub attempts: Option<u32>,
    /// `(check name, passed)` in spec order.
    pub checks: Vec<(String, bool)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckAggregate {
    pub name: String,
    pub passes: u32,
    pub trials: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentResult {
    pub records: Vec<TrialRecord>,
    pub aggregates: Vec<CheckAggregate>,
}

fn rational64_to_big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// True when the exact rational `value` is certainly at most the enclosed
/// threshold; errors only if the comparison is genuinely ambiguous.
fn rational_le_enclosure(value: &BigRational, threshold: &Enclosure) -> Result<bool> {
    use std::cmp::Ordering;
    match threshold.compare_rat(value)? {
        Ordering::Less => Ok(true),
        _ => Ok(false),
    }
}

impl ExperimentSpec {
    /// Degeneracy concentration: `G(n, c/(n-1))` samples checked against
    /// the `4ec` threshold.
    pub fn degeneracy(n: usize, c: Rational64, trials: u32, master_seed: u64) -> ExperimentSpec {
        ExperimentSpec {
            model: ExperimentModel::Gnp {
                n,
                p: c / Rational64::from_integer(n as i64 - 1),
            },
            trials,
            master_seed,
            checks: vec![CheckKind::DegeneracyLe4ec],
        }
    }

    /// Cubicity scaling: randomized builds over `G(n, m)` samples checked
    /// against the average-degree dimension bound.
    pub fn cubicity(n: usize, m: usize, trials: u32, master_seed: u64) -> ExperimentSpec {
        ExperimentSpec {
            model: ExperimentModel::Gnm { n, m },
            trials,
            master_seed,
            checks: vec![CheckKind::DimsLeDavBound],
        }
    }
}

/// [`run_experiment`] over a degeneracy spec (validated to be one).
pub fn degeneracy_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    if !spec.checks.contains(&CheckKind::DegeneracyLe4ec) {
        return Err(Error::InvalidInput(
            "spec does not carry the degeneracy check".into(),
        ));
    }
    run_experiment(spec)
}

/// [`run_experiment`] over a cubicity spec (validated to be one).
pub fn cubicity_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    if !spec.checks.contains(&CheckKind::DimsLeDavBound) {
        return Err(Error::InvalidInput(
            "spec does not carry the dimension check".into(),
        ));
    }
    run_experiment(spec)
}

/// Runs every trial of the spec with per-trial derived seeds; identical
/// `(spec, master_seed)` pairs give bit-identical results.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentResult> {
    spec.validate()?;
    let e = numeric::e_enclosure();
    let mut records = Vec::with_capacity(spec.trials as usize);
    let mut aggregates: Vec<CheckAggregate> = spec
        .checks
        .iter()
        .map(|c| CheckAggregate {
            name: c.name().to_string(),
            passes: 0,
            trials: spec.trials,
        })
        .collect();
    for trial in 0..spec.trials {
        let trial_seed = derive_seed(spec.master_seed, trial as u64);
        let graph_seed = derive_seed(trial_seed, 0);
        let build_seed = derive_seed(trial_seed, 1);
        let g = match spec.model {
            ExperimentModel::Gnp { n, p } => {
                let pf = *p.numer() as f64 / *p.denom() as f64;
                gen_gnp(n, pf, graph_seed)?
            }
            ExperimentModel::Gnm { n, m } => gen_gnm(n, m, graph_seed)?,
        };
        let k = degeneracy_order(&g).k();
        let mut dims = None;
        let mut attempts = None;
        let mut checks = Vec::with_capacity(spec.checks.len());
        for (idx, check) in spec.checks.iter().enumerate() {
            let pass = match check {
                CheckKind::DegeneracyLe4ec => {
                    let ExperimentModel::Gnp { n, p } = spec.model else {
                        unreachable!("validated")
                    };
                    let c = rational64_to_big(p * Rational64::from_integer(n as i64 - 1));
                    // k <= 4ec  <=>  k / (4c) <= e
                    let q = BigRational::from_integer(BigInt::from(k))
                        / (BigRational::from_integer(BigInt::from(4)) * c);
                    rational_le_enclosure(&q, e)?
                }
                CheckKind::DimsLeDavBound => {
                    let ExperimentModel::Gnm { n, m } = spec.model else {
                        unreachable!("validated")
                    };
                    let (rep, stats) =
                        construct_cub_rep_with_stats(&g, BuildMode::Randomized { seed: build_seed })?;
                    dims = Some(rep.dims.len() as u64);
                    attempts = stats.attempts;
                    let b = numeric::family_size(n)?;
                    let dav = BigRational::new(BigInt::from(2 * m), BigInt::from(n));
                    let bound = e
                        .mul_rat(&(dav * BigRational::from_integer(BigInt::from(4))))
                        .add_rat(&BigRational::from_integer(BigInt::from(2)))
                        .mul_rat(&BigRational::from_integer(BigInt::from(b)));
                    let dims_rat = BigRational::from_integer(BigInt::from(rep.dims.len()));
                    rational_le_enclosure(&dims_rat, &bound)?
                }
            };
            if pass {
                aggregates[idx].passes += 1;
            }
            checks.push((check.name().to_string(), pass));
        }
        records.push(TrialRecord {
            trial,
            seed: trial_seed,
            n: g.n(),
            m: g.m(),
            k,
            dims,
            attempts,
            checks,
        });
    }
    Ok(ExperimentResult {
        records,
        aggregates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gnp_extremes() {
        let g = gen_gnp(6, 0.0, 1).unwrap();
        assert_eq!(g.m(), 0);
        let g = gen_gnp(6, 1.0, 1).unwrap();
        assert_eq!(g.m(), 15);
        assert!(gen_gnp(4, 1.5, 1).is_err());
    }

    #[test]
    fn gnm_exact_edge_counts() {
        let g = gen_gnm(10, 45, 3).unwrap();
        assert_eq!(g.m(), 45); // K10
        for m in [0usize, 1, 7, 20] {
            let g = gen_gnm(10, m, 99 + m as u64).unwrap();
            assert_eq!(g.m(), m);
        }
        assert!(gen_gnm(4, 7, 0).is_err());
    }

    #[test]
    fn generators_are_seed_reproducible() {
        assert_eq!(gen_gnp(20, 0.3, 5).unwrap(), gen_gnp(20, 0.3, 5).unwrap());
        assert_ne!(gen_gnp(20, 0.3, 5).unwrap(), gen_gnp(20, 0.3, 6).unwrap());
        assert_eq!(gen_gnm(20, 40, 5).unwrap(), gen_gnm(20, 40, 5).unwrap());
    }

    #[test]
    fn pair_index_decoding_is_a_bijection() {
        let n = 9;
        let mut seen = std::collections::BTreeSet::new();
        for t in 0..(n * (n - 1) / 2) {
            let (u, v) = pair_from_index(n, t);
            assert!(u < v && v <= n);
            assert!(seen.insert((u, v)));
        }
    }

    #[test]
    fn gnp_mean_edge_count_is_sane() {
        // mean over trials within 5 standard deviations of p * C(n,2)
        let (n, p, trials) = (40usize, 0.25f64, 60usize);
        let pairs = (n * (n - 1) / 2) as f64;
        let total: usize = (0..trials)
            .map(|t| gen_gnp(n, p, 1000 + t as u64).unwrap().m())
            .sum();
        let mean = total as f64 / trials as f64;
        let sd = (pairs * p * (1.0 - p)).sqrt() / (trials as f64).sqrt();
        assert!((mean - pairs * p).abs() <= 5.0 * sd, "mean {mean} too far");
    }

    #[test]
    fn degeneracy_experiment_trivial_cases() {
        // p = 1: k = n - 1 <= 4e(n-1) always
        let spec = ExperimentSpec {
            model: ExperimentModel::Gnp {
                n: 8,
                p: Rational64::new(1, 1),
            },
            trials: 3,
            master_seed: 17,
            checks: vec![CheckKind::DegeneracyLe4ec],
        };
        let res = run_experiment(&spec).unwrap();
        assert_eq!(res.aggregates[0].passes, 3);
        for r in &res.records {
            assert_eq!(r.k, 7);
        }
        // n = 2, c = 1: k in {0, 1} <= 4e
        let spec = ExperimentSpec {
            model: ExperimentModel::Gnp {
                n: 2,
                p: Rational64::new(1, 1),
            },
            trials: 4,
            master_seed: 2,
            checks: vec![CheckKind::DegeneracyLe4ec],
        };
        let res = run_experiment(&spec).unwrap();
        assert_eq!(res.aggregates[0].passes, 4);
    }

    #[test]
    fn dims_experiment_on_complete_graph_passes() {
        let spec = ExperimentSpec {
            model: ExperimentModel::Gnm { n: 8, m: 28 },
            trials: 2,
            master_seed: 5,
            checks: vec![CheckKind::DimsLeDavBound],
        };
        let res = run_experiment(&spec).unwrap();
        assert_eq!(res.aggregates[0].passes, 2);
        for r in &res.records {
            assert_eq!(r.dims, Some(1));
        }
    }

    #[test]
    fn dav_boundary_accepted() {
        // n = 10, m = 5 sits exactly at average degree 1
        let spec = ExperimentSpec {
            model: ExperimentModel::Gnm { n: 10, m: 5 },
            trials: 2,
            master_seed: 8,
            checks: vec![CheckKind::DimsLeDavBound],
        };
        assert!(spec.validate().is_ok());
        run_experiment(&spec).unwrap();
        let bad = ExperimentSpec {
            model: ExperimentModel::Gnm { n: 10, m: 4 },
            trials: 2,
            master_seed: 8,
            checks: vec![CheckKind::DimsLeDavBound],
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn experiments_are_bit_reproducible() {
        let spec = ExperimentSpec {
            model: ExperimentModel::Gnm { n: 24, m: 48 },
            trials: 5,
            master_seed: 123,
            checks: vec![CheckKind::DimsLeDavBound],
        };
        let a = run_experiment(&spec).unwrap();
        let b = run_experiment(&spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn model_check_mismatch_is_rejected() {
        let spec = ExperimentSpec {
            model: ExperimentModel::Gnm { n: 10, m: 20 },
            trials: 1,
            master_seed: 0,
            checks: vec![CheckKind::DegeneracyLe4ec],
        };
        assert!(spec.validate().is_err());
    }
}
