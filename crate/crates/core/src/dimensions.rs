//! Dual-classical Krull dimension, derived dimension and the per-lattice
//! analysis pipeline.

use serde::Serialize;

use crate::generators::{GeneratorError, LatticeSpec};
use crate::lattice::FiniteLattice;
use crate::set::ElementSet;
use crate::sh::ShAnalysis;
use crate::topology::{sh_topology, w_topology, AxiomViolation, CbFiltration, FiniteTopology};
use crate::verify::{self, CheckContext, Verdict, VerdictStatus};

/// The levels `Y_0 ⊆ Y_1 ⊆ ..` over all strongly hollow elements.
///
/// `L` enters `Y_a` once every strongly hollow element strictly below it lies
/// in an earlier level, with `Y_{-1} = {bottom}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YFiltration {
    /// `Y_0 ..= Y_d` with `d = max(dimension, 0)`; bottom is in every level.
    pub levels: Vec<ElementSet>,
    /// Least `a` with `Y_a` equal to all strongly hollow elements, or `-1`
    /// when bottom is the only one.
    pub dimension: i64,
}

pub fn y_filtration(lat: &FiniteLattice, sh: &ShAnalysis) -> YFiltration {
    let all = sh.sh_elements();
    let mut levels: Vec<ElementSet> = Vec::new();
    let mut dimension = None;
    if all.len() == 1 {
        dimension = Some(-1);
    }
    let mut earlier = ElementSet::singleton(lat.bottom());
    for alpha in 0..=all.len() {
        let level: ElementSet = all
            .iter()
            .filter(|&l| all.iter().all(|m| !lat.lt(m, l) || earlier.contains(m)))
            .collect();
        let done = level == all;
        earlier = earlier.union(&level);
        levels.push(level);
        if done {
            dimension.get_or_insert(alpha as i64);
            break;
        }
    }
    YFiltration {
        levels,
        dimension: dimension.expect("filtration stabilizes on a finite poset"),
    }
}

/// Longest chain of nonzero strongly hollow elements, minus one.
pub fn dclk_dimension_oracle(lat: &FiniteLattice, sh: &ShAnalysis) -> i64 {
    lat.longest_chain_length(sh.points()) as i64 - 1
}

/// Everything computed for one lattice.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub lattice: FiniteLattice,
    pub sh: ShAnalysis,
    pub sh_topology: Result<FiniteTopology, AxiomViolation>,
    pub w_topology: FiniteTopology,
    pub filtration: CbFiltration,
    pub y: YFiltration,
    pub chain_oracle: i64,
    pub distributive: bool,
    pub modular: bool,
}

impl Analysis {
    pub fn new(lattice: FiniteLattice) -> Self {
        let sh = ShAnalysis::new(&lattice);
        let sh_top = sh_topology(&lattice, &sh);
        let w_top = w_topology(&lattice, &sh);
        let filtration = w_top.cantor_bendixson();
        let y = y_filtration(&lattice, &sh);
        let chain_oracle = dclk_dimension_oracle(&lattice, &sh);
        let distributive = lattice.is_distributive();
        let modular = distributive || lattice.is_modular();
        Self {
            lattice,
            sh,
            sh_topology: sh_top,
            w_topology: w_top,
            filtration,
            y,
            chain_oracle,
            distributive,
            modular,
        }
    }

    pub fn points(&self) -> &ElementSet {
        self.sh.points()
    }

    pub fn dclk_dimension(&self) -> i64 {
        self.y.dimension
    }

    pub fn derived_dimension(&self) -> Option<usize> {
        self.filtration.derived_dimension
    }

    fn labels(&self, s: &ElementSet) -> Vec<String> {
        s.iter().map(|e| self.lattice.label(e)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabeledWitness {
    pub element: String,
    pub a: String,
    pub b: String,
}

/// Serializable summary of one analysed lattice.
#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub spec: String,
    pub size: usize,
    pub sh_count: usize,
    pub points: Vec<String>,
    pub dclk_dim: i64,
    pub derived_dim: Option<usize>,
    pub distributive: bool,
    pub modular: bool,
    pub sh_ring: bool,
    pub semi_sh_ring: bool,
    pub strata: Vec<Vec<String>>,
    pub y_levels: Vec<Vec<String>>,
    pub non_sh_witnesses: Vec<LabeledWitness>,
    pub verdicts: Vec<Verdict>,
    /// Checks evaluated on a lattice outside their hypothesis class.
    pub observations: Vec<Verdict>,
}

impl DimensionReport {
    pub fn new(spec: impl Into<String>, analysis: &Analysis, ctx: &CheckContext) -> Self {
        let lat = &analysis.lattice;
        let all = verify::evaluate(analysis, ctx);
        let (verdicts, observations) = all
            .into_iter()
            .partition(|v| matches!(v.status, VerdictStatus::Pass | VerdictStatus::Fail));
        Self {
            spec: spec.into(),
            size: lat.size(),
            sh_count: analysis.sh.sh_elements().len(),
            points: analysis.labels(analysis.points()),
            dclk_dim: analysis.dclk_dimension(),
            derived_dim: analysis.derived_dimension(),
            distributive: analysis.distributive,
            modular: analysis.modular,
            sh_ring: analysis.sh.is_sh_ring(lat),
            semi_sh_ring: analysis.sh.is_semi_sh_ring(lat),
            strata: analysis
                .filtration
                .strata
                .iter()
                .map(|s| analysis.labels(s))
                .collect(),
            y_levels: analysis
                .y
                .levels
                .iter()
                .map(|s| analysis.labels(s))
                .collect(),
            non_sh_witnesses: analysis
                .sh
                .witnesses()
                .iter()
                .map(|w| LabeledWitness {
                    element: lat.label(w.element),
                    a: lat.label(w.a),
                    b: lat.label(w.b),
                })
                .collect(),
            verdicts,
            observations,
        }
    }

    pub fn failed_verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts
            .iter()
            .filter(|v| v.status == VerdictStatus::Fail)
    }

    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let set = |v: &[String]| format!("{{{}}}", v.join(", "));
        let _ = writeln!(
            out,
            "lattice         {} ({} elements)",
            self.spec, self.size
        );
        let _ = writeln!(out, "distributive    {}", self.distributive);
        let _ = writeln!(out, "modular         {}", self.modular);
        let _ = writeln!(out, "sh elements     {} (including bottom)", self.sh_count);
        let _ = writeln!(out, "points X        {}", set(&self.points));
        let _ = writeln!(out, "sh-ring         {}", self.sh_ring);
        let _ = writeln!(out, "semi-sh-ring    {}", self.semi_sh_ring);
        let _ = writeln!(out, "dclk dimension  {}", self.dclk_dim);
        match self.derived_dim {
            Some(d) => {
                let _ = writeln!(out, "derived dim     {d}");
            }
            None => {
                let _ = writeln!(out, "derived dim     none (not scattered)");
            }
        }
        for (i, s) in self.strata.iter().enumerate() {
            let _ = writeln!(out, "  S_{i:<12} {}", set(s));
        }
        for (i, y) in self.y_levels.iter().enumerate() {
            let _ = writeln!(out, "  Y_{i:<12} {}", set(y));
        }
        if !self.non_sh_witnesses.is_empty() {
            let _ = writeln!(out, "not strongly hollow:");
            for w in &self.non_sh_witnesses {
                let _ = writeln!(out, "  {} <= {} v {}", w.element, w.a, w.b);
            }
        }
        let _ = writeln!(out, "checks:");
        for v in self.verdicts.iter().chain(&self.observations) {
            let _ = write!(out, "  {:<8} {}", v.status.as_str(), v.claim);
            if let Some(d) = &v.detail {
                let _ = write!(out, "  ({d})");
            }
            let _ = writeln!(out);
        }
        out
    }
}

/// Builds the lattice described by `spec` and runs every check on it.
pub fn analyze(spec: &LatticeSpec, ctx: &CheckContext) -> Result<DimensionReport, GeneratorError> {
    let lattice = spec.build()?;
    Ok(DimensionReport::new(
        spec.to_string(),
        &Analysis::new(lattice),
        ctx,
    ))
}
