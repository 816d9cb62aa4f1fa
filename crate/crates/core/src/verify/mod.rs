//! Registry-driven property suite.
//!
//! Each [`Claim`] carries a hypothesis class. On lattices inside the class a
//! failed check counts as a failure; outside it the check still runs but the
//! result is recorded as an observation and never fails the run.

mod claims;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::dimensions::Analysis;
use crate::generators::{
    enumerate_lattices, random_lattice, Enumeration, GeneratorError, LatticeSpec,
};
use crate::lattice::{FiniteLattice, LatticeDocument};
use crate::set::ElementSet;

pub use claims::{subsets_to_check, EXHAUSTIVE_SUBSET_LIMIT, REGISTRY, SAMPLED_SUBSETS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    Any,
    Modular,
    Distributive,
}

impl Hypothesis {
    pub fn admits(self, a: &Analysis) -> bool {
        match self {
            Hypothesis::Any => true,
            Hypothesis::Modular => a.modular,
            Hypothesis::Distributive => a.distributive,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Hypothesis::Any => "any",
            Hypothesis::Modular => "modular",
            Hypothesis::Distributive => "distributive",
        }
    }
}

pub type Checker = fn(&Analysis, &CheckContext) -> Result<(), String>;

#[derive(Clone, Copy, Debug)]
pub struct Claim {
    pub id: &'static str,
    pub statement: &'static str,
    pub hypothesis: Hypothesis,
    pub check: Checker,
}

/// Settings shared by all checkers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckContext {
    /// Seed for subset sampling on large point sets.
    pub seed: u64,
}

impl Default for CheckContext {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED }
    }
}

pub const DEFAULT_SEED: u64 = 0;

pub fn find_claim(id: &str) -> Option<&'static Claim> {
    REGISTRY.iter().find(|c| c.id == id)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Pass,
    Fail,
    /// Outside the hypothesis class; the statement held anyway.
    OutsideHolds,
    /// Outside the hypothesis class; the statement did not hold.
    OutsideFails,
}

impl VerdictStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictStatus::Pass => "pass",
            VerdictStatus::Fail => "FAIL",
            VerdictStatus::OutsideHolds => "n/a+",
            VerdictStatus::OutsideFails => "n/a-",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub claim: &'static str,
    pub hypothesis: Hypothesis,
    pub status: VerdictStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

pub fn evaluate_claim(claim: &Claim, analysis: &Analysis, ctx: &CheckContext) -> Verdict {
    let result = (claim.check)(analysis, ctx);
    let inside = claim.hypothesis.admits(analysis);
    let status = match (inside, result.is_ok()) {
        (true, true) => VerdictStatus::Pass,
        (true, false) => VerdictStatus::Fail,
        (false, true) => VerdictStatus::OutsideHolds,
        (false, false) => VerdictStatus::OutsideFails,
    };
    Verdict {
        claim: claim.id,
        hypothesis: claim.hypothesis,
        status,
        detail: result.err(),
    }
}

/// Runs every registered claim on one analysed lattice, in registry order.
pub fn evaluate(analysis: &Analysis, ctx: &CheckContext) -> Vec<Verdict> {
    REGISTRY
        .iter()
        .map(|c| evaluate_claim(c, analysis, ctx))
        .collect()
}

/// Which lattices a verification run covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusConfig {
    /// Every lattice with at most this many elements.
    pub exhaustive: Option<usize>,
    /// Keep every labeling instead of one lattice per isomorphism class.
    pub labeled: bool,
    #[serde(serialize_with = "serialize_specs")]
    pub rings: Vec<LatticeSpec>,
    /// Number of random lattices, with sizes cycling through `2..=random_max_size`.
    pub random_count: usize,
    pub random_max_size: usize,
    pub seed: u64,
}

fn serialize_specs<S: serde::Serializer>(specs: &[LatticeSpec], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(specs.iter().map(|x| x.to_string()))
}

impl Default for CorpusConfig {
    fn default() -> Self {
        Self {
            exhaustive: None,
            labeled: false,
            rings: Vec::new(),
            random_count: 0,
            random_max_size: 12,
            seed: DEFAULT_SEED,
        }
    }
}

impl CorpusConfig {
    /// Named lattices of the corpus, in a fixed order.
    pub fn build(&self) -> Result<Vec<(String, FiniteLattice)>, GeneratorError> {
        let mut out = Vec::new();
        if let Some(bound) = self.exhaustive {
            let mode = if self.labeled {
                Enumeration::Labeled
            } else {
                Enumeration::Unlabeled
            };
            let mut counts = BTreeMap::new();
            for lat in enumerate_lattices(bound, mode)? {
                let k = counts.entry(lat.size()).or_insert(0usize);
                out.push((format!("enum:{}#{}", lat.size(), k), lat));
                *k += 1;
            }
        }
        for spec in &self.rings {
            out.push((spec.to_string(), spec.build()?));
        }
        let span = self.random_max_size.max(2) - 1;
        for i in 0..self.random_count {
            let size = 2 + i % span;
            let seed = self.seed.wrapping_add(i as u64);
            out.push((format!("random:{size}@{seed}"), random_lattice(size, seed)?));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClaimTally {
    pub id: &'static str,
    pub statement: &'static str,
    pub hypothesis: &'static str,
    /// Instances inside the hypothesis class.
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    /// Instances outside the hypothesis class.
    pub skipped: usize,
    pub outside_holds: usize,
    pub outside_fails: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub instance: String,
    pub detail: String,
    pub lattice: LatticeDocument,
    /// Locally minimal counterexample obtained by deleting elements.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimized: Option<LatticeDocument>,
}

/// Dimensions observed on a lattice that is not distributive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub instance: String,
    pub size: usize,
    pub modular: bool,
    pub points: usize,
    pub dclk_dim: i64,
    pub derived_dim: Option<usize>,
    pub within_bounds: bool,
    pub derived_is_dclk_plus_one: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationRun {
    pub corpus: CorpusConfig,
    pub instances: usize,
    pub distributive_instances: usize,
    pub modular_instances: usize,
    pub claims: Vec<ClaimTally>,
    pub asserted_failures: usize,
    /// Smallest failing instance per claim that failed inside its hypothesis.
    pub witnesses: BTreeMap<&'static str, Witness>,
    /// Smallest instance per claim that failed outside its hypothesis.
    pub outside_witnesses: BTreeMap<&'static str, Witness>,
    pub observations: Vec<Observation>,
}

impl VerificationRun {
    pub fn passed(&self) -> bool {
        self.asserted_failures == 0
    }

    pub fn tally(&self, id: &str) -> Option<&ClaimTally> {
        self.claims.iter().find(|t| t.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("run summary serializes")
    }

    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} instances ({} distributive, {} modular)",
            self.instances, self.distributive_instances, self.modular_instances
        );
        let _ = writeln!(
            out,
            "{:<36} {:<12} {:>7} {:>7} {:>6} {:>7} {:>9}",
            "claim", "hypothesis", "checked", "passed", "failed", "skipped", "outside"
        );
        for t in &self.claims {
            let _ = writeln!(
                out,
                "{:<36} {:<12} {:>7} {:>7} {:>6} {:>7} {:>9}",
                t.id, t.hypothesis, t.checked, t.passed, t.failed, t.skipped, t.outside_fails
            );
        }
        for (id, w) in &self.witnesses {
            let _ = writeln!(out, "FAILED {id} on {}: {}", w.instance, w.detail);
        }
        for (id, w) in &self.outside_witnesses {
            let _ = writeln!(
                out,
                "observed outside hypothesis: {id} fails on {}: {}",
                w.instance, w.detail
            );
        }
        if !self.observations.is_empty() {
            let _ = writeln!(out, "dimensions on non-distributive instances:");
            for o in &self.observations {
                let d = o
                    .derived_dim
                    .map_or_else(|| "none".to_string(), |d| d.to_string());
                let _ = writeln!(
                    out,
                    "  {:<16} |X|={:<3} modular={:<5} dclk={:<3} derived={:<4} d=dclk+1: {}",
                    o.instance, o.points, o.modular, o.dclk_dim, d, o.derived_is_dclk_plus_one
                );
            }
        }
        let _ = writeln!(
            out,
            "{}",
            if self.passed() {
                "all asserted claims hold".to_string()
            } else {
                format!("{} asserted claim failures", self.asserted_failures)
            }
        );
        out
    }
}

struct InstanceResult {
    name: String,
    analysis: Analysis,
    verdicts: Vec<Verdict>,
}

pub fn run_suite(config: &CorpusConfig) -> Result<VerificationRun, GeneratorError> {
    let ctx = CheckContext { seed: config.seed };
    let corpus = config.build()?;
    // par_iter + collect keeps corpus order
    let results: Vec<InstanceResult> = corpus
        .into_par_iter()
        .map(|(name, lat)| {
            let analysis = Analysis::new(lat);
            let verdicts = evaluate(&analysis, &ctx);
            InstanceResult {
                name,
                analysis,
                verdicts,
            }
        })
        .collect();

    let mut claims: Vec<ClaimTally> = REGISTRY
        .iter()
        .map(|c| ClaimTally {
            id: c.id,
            statement: c.statement,
            hypothesis: c.hypothesis.as_str(),
            ..ClaimTally::default()
        })
        .collect();
    let mut witnesses: BTreeMap<&'static str, (InstanceRef, String)> = BTreeMap::new();
    let mut outside: BTreeMap<&'static str, (InstanceRef, String)> = BTreeMap::new();
    let mut observations = Vec::new();

    for (idx, r) in results.iter().enumerate() {
        for (tally, v) in claims.iter_mut().zip(&r.verdicts) {
            let store = match v.status {
                VerdictStatus::Pass => {
                    tally.checked += 1;
                    tally.passed += 1;
                    None
                }
                VerdictStatus::Fail => {
                    tally.checked += 1;
                    tally.failed += 1;
                    Some(&mut witnesses)
                }
                VerdictStatus::OutsideHolds => {
                    tally.skipped += 1;
                    tally.outside_holds += 1;
                    None
                }
                VerdictStatus::OutsideFails => {
                    tally.skipped += 1;
                    tally.outside_fails += 1;
                    Some(&mut outside)
                }
            };
            if let Some(map) = store {
                let size = r.analysis.lattice.size();
                let replace = map
                    .get(v.claim)
                    .is_none_or(|(prev, _)| size < results[prev.0].analysis.lattice.size());
                if replace {
                    map.insert(
                        v.claim,
                        (InstanceRef(idx), v.detail.clone().unwrap_or_default()),
                    );
                }
            }
        }
        let a = &r.analysis;
        if !a.distributive {
            let k = a.dclk_dimension();
            let d = a.derived_dimension();
            observations.push(Observation {
                instance: r.name.clone(),
                size: a.lattice.size(),
                modular: a.modular,
                points: a.points().len(),
                dclk_dim: k,
                derived_dim: d,
                within_bounds: d.is_some_and(|d| k <= d as i64 && d as i64 <= k + 1),
                derived_is_dclk_plus_one: d.is_some_and(|d| d as i64 == k + 1),
            });
        }
    }

    let to_witness = |claim: &'static str, (r, detail): (InstanceRef, String), minimize: bool| {
        let res = &results[r.0];
        let minimized = if minimize {
            find_claim(claim)
                .and_then(|c| minimize_with(&res.analysis.lattice, c, &ctx).ok())
                .filter(|m| m.size() < res.analysis.lattice.size())
                .map(|m| m.to_document())
        } else {
            None
        };
        Witness {
            instance: res.name.clone(),
            detail,
            lattice: res.analysis.lattice.to_document(),
            minimized,
        }
    };

    let asserted_failures = claims.iter().map(|t| t.failed).sum();
    Ok(VerificationRun {
        corpus: config.clone(),
        instances: results.len(),
        distributive_instances: results.iter().filter(|r| r.analysis.distributive).count(),
        modular_instances: results.iter().filter(|r| r.analysis.modular).count(),
        claims,
        asserted_failures,
        witnesses: witnesses
            .into_iter()
            .map(|(k, v)| (k, to_witness(k, v, true)))
            .collect(),
        outside_witnesses: outside
            .into_iter()
            .map(|(k, v)| (k, to_witness(k, v, true)))
            .collect(),
        observations,
    })
}

#[derive(Clone, Copy)]
struct InstanceRef(usize);

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum MinimizeError {
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
    #[error("claim {0} holds on the given lattice")]
    ClaimActuallyPasses(&'static str),
}

pub fn minimize_witness(
    lat: &FiniteLattice,
    claim_id: &str,
    ctx: &CheckContext,
) -> Result<FiniteLattice, MinimizeError> {
    let claim = find_claim(claim_id).ok_or_else(|| MinimizeError::UnknownClaim(claim_id.into()))?;
    minimize_with(lat, claim, ctx)
}

/// Greedily deletes elements while the induced suborder is still a lattice
/// on which the check of `claim` fails. The hypothesis class is ignored, so
/// failures observed outside it shrink too.
pub fn minimize_with(
    lat: &FiniteLattice,
    claim: &Claim,
    ctx: &CheckContext,
) -> Result<FiniteLattice, MinimizeError> {
    let fails = |l: &FiniteLattice| (claim.check)(&Analysis::new(l.clone()), ctx).is_err();
    if !fails(lat) {
        return Err(MinimizeError::ClaimActuallyPasses(claim.id));
    }
    let mut current = lat.clone();
    'shrink: loop {
        for e in current.elements() {
            let mut keep = ElementSet::full(current.size());
            keep.remove(e);
            if keep.is_empty() {
                continue;
            }
            if let Ok(smaller) = current.induced(&keep) {
                if fails(&smaller) {
                    current = smaller;
                    continue 'shrink;
                }
            }
        }
        return Ok(current);
    }
}
