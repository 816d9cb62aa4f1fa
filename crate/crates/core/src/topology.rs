//! Finite topologies on the point set of nonzero strongly hollow elements.
//!
//! A topology is materialized as its full family of closed sets; open sets and
//! minimal open neighbourhoods are derived from that family once at
//! construction.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::lattice::FiniteLattice;
use crate::set::ElementSet;
use crate::sh::ShAnalysis;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomViolation {
    #[error("empty set is not closed")]
    MissingEmpty,
    #[error("whole space is not closed")]
    MissingWhole,
    #[error("family member {set:?} is not contained in the point set")]
    NotSubset { set: ElementSet },
    #[error("union of closed sets {a:?} and {b:?} is not closed")]
    UnionNotClosed { a: ElementSet, b: ElementSet },
    #[error("intersection of closed sets {a:?} and {b:?} is not closed")]
    IntersectionNotClosed { a: ElementSet, b: ElementSet },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTopology {
    points: ElementSet,
    closed: Vec<ElementSet>,
    open: Vec<ElementSet>,
    neighbourhood: BTreeMap<usize, ElementSet>,
}

impl FiniteTopology {
    /// Builds a topology from its closed sets after checking the axioms.
    pub fn from_closed_sets<I>(points: ElementSet, family: I) -> Result<Self, AxiomViolation>
    where
        I: IntoIterator<Item = ElementSet>,
    {
        let t = Self::assemble(points, family.into_iter().collect());
        t.check_axioms()?;
        Ok(t)
    }

    /// The topology whose open sets are all unions of members of `base`.
    /// The result is not checked; see [`FiniteTopology::check_axioms`].
    pub fn from_open_base<I>(points: ElementSet, base: I) -> Self
    where
        I: IntoIterator<Item = ElementSet>,
    {
        let base: BTreeSet<ElementSet> = base.into_iter().collect();
        let mut opens: BTreeSet<ElementSet> = base.clone();
        opens.insert(ElementSet::new());
        let mut work: Vec<ElementSet> = opens.iter().cloned().collect();
        while let Some(s) = work.pop() {
            for b in &base {
                let u = s.union(b);
                if !opens.contains(&u) {
                    opens.insert(u.clone());
                    work.push(u);
                }
            }
        }
        let closed = opens.iter().map(|o| points.difference(o)).collect();
        Self::assemble(points, closed)
    }

    fn assemble(points: ElementSet, closed: BTreeSet<ElementSet>) -> Self {
        let closed: Vec<ElementSet> = closed.into_iter().collect();
        let open_set: BTreeSet<ElementSet> = closed.iter().map(|c| points.difference(c)).collect();
        let open: Vec<ElementSet> = open_set.into_iter().collect();
        let neighbourhood = points
            .iter()
            .map(|x| {
                let nb = open
                    .iter()
                    .filter(|o| o.contains(x))
                    .fold(points.clone(), |acc, o| acc.intersection(o));
                (x, nb)
            })
            .collect();
        Self {
            points,
            closed,
            open,
            neighbourhood,
        }
    }

    /// Verifies that the closed-set family contains the empty set and the whole
    /// space and is closed under pairwise union and intersection.
    pub fn check_axioms(&self) -> Result<(), AxiomViolation> {
        let family: BTreeSet<&ElementSet> = self.closed.iter().collect();
        if !family.contains(&ElementSet::new()) {
            return Err(AxiomViolation::MissingEmpty);
        }
        if !family.contains(&self.points) {
            return Err(AxiomViolation::MissingWhole);
        }
        for a in &self.closed {
            if !a.is_subset(&self.points) {
                return Err(AxiomViolation::NotSubset { set: a.clone() });
            }
        }
        for (i, a) in self.closed.iter().enumerate() {
            for b in &self.closed[i + 1..] {
                if !family.contains(&a.union(b)) {
                    return Err(AxiomViolation::UnionNotClosed {
                        a: a.clone(),
                        b: b.clone(),
                    });
                }
                if !family.contains(&a.intersection(b)) {
                    return Err(AxiomViolation::IntersectionNotClosed {
                        a: a.clone(),
                        b: b.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn points(&self) -> &ElementSet {
        &self.points
    }

    /// Closed sets, sorted.
    pub fn closed_sets(&self) -> &[ElementSet] {
        &self.closed
    }

    /// Open sets, sorted.
    pub fn open_sets(&self) -> &[ElementSet] {
        &self.open
    }

    pub fn is_closed(&self, s: &ElementSet) -> bool {
        self.closed.binary_search(s).is_ok()
    }

    pub fn is_open(&self, s: &ElementSet) -> bool {
        self.open.binary_search(s).is_ok()
    }

    /// Smallest closed superset of `s`.
    pub fn closure(&self, s: &ElementSet) -> ElementSet {
        self.closed
            .iter()
            .filter(|c| s.is_subset(c))
            .fold(self.points.clone(), |acc, c| acc.intersection(c))
    }

    /// Smallest open set containing the point `x`.
    pub fn neighbourhood(&self, x: usize) -> &ElementSet {
        &self.neighbourhood[&x]
    }

    /// Only the empty set and the whole space are closed.
    pub fn is_trivial(&self) -> bool {
        self.closed
            .iter()
            .all(|c| c.is_empty() || *c == self.points)
    }

    pub fn is_t0(&self) -> bool {
        let closures: BTreeSet<ElementSet> = self
            .points
            .iter()
            .map(|x| self.closure(&ElementSet::singleton(x)))
            .collect();
        closures.len() == self.points.len()
    }

    pub fn is_t1(&self) -> bool {
        self.points
            .iter()
            .all(|x| self.is_closed(&ElementSet::singleton(x)))
    }

    pub fn is_hausdorff(&self) -> bool {
        let pts = self.points.to_vec();
        pts.iter().enumerate().all(|(i, &x)| {
            pts[i + 1..]
                .iter()
                .all(|&y| self.neighbourhood(x).is_disjoint(self.neighbourhood(y)))
        })
    }

    /// Points `x` of `s` with an open `G` such that `G ∩ s = {x}`.
    pub fn isolated_points(&self, s: &ElementSet) -> ElementSet {
        s.iter()
            .filter(|&x| self.neighbourhood(x).intersection(s) == ElementSet::singleton(x))
            .collect()
    }

    /// Same as [`FiniteTopology::isolated_points`], scanning every open set.
    pub fn isolated_points_by_scan(&self, s: &ElementSet) -> ElementSet {
        let iso = |x: usize| {
            let target = ElementSet::singleton(x);
            self.open.iter().any(|g| g.intersection(s) == target)
        };
        s.iter().filter(|&x| iso(x)).collect()
    }

    /// `t ⊆ s` is open in the subspace `s`.
    pub fn is_relatively_open(&self, s: &ElementSet, t: &ElementSet) -> bool {
        let hull = t
            .iter()
            .fold(ElementSet::new(), |acc, x| acc.union(self.neighbourhood(x)));
        hull.intersection(s) == *t
    }

    /// `s` minus its isolated points (limit points of `s` taken inside `s`).
    pub fn derived_set(&self, s: &ElementSet) -> ElementSet {
        s.difference(&self.isolated_points(s))
    }

    pub fn cantor_bendixson(&self) -> CbFiltration {
        let mut levels = vec![self.points.clone()];
        let mut strata = Vec::new();
        loop {
            let cur = levels.last().expect("at least one level");
            if cur.is_empty() {
                break;
            }
            let iso = self.isolated_points(cur);
            if iso.is_empty() {
                return CbFiltration {
                    derived_dimension: None,
                    levels,
                    strata,
                };
            }
            let next = cur.difference(&iso);
            strata.push(iso);
            levels.push(next);
        }
        CbFiltration {
            derived_dimension: Some(strata.len()),
            levels,
            strata,
        }
    }
}

/// The iterated derived sets `X_0 ⊋ X_1 ⊋ ..` and the isolated points removed
/// at each step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CbFiltration {
    /// `X_0 .. X_k`. When the space is scattered the last level is empty;
    /// otherwise it is the nonempty perfect kernel.
    pub levels: Vec<ElementSet>,
    /// `S_0 .. S_{k-1}`, where `S_b` are the isolated points of `X_b`.
    pub strata: Vec<ElementSet>,
    /// Least `k` with `X_k` empty; `None` for spaces that are not scattered.
    pub derived_dimension: Option<usize>,
}

impl CbFiltration {
    /// `S_b`, or the empty set past the last stratum.
    pub fn stratum(&self, b: usize) -> ElementSet {
        self.strata.get(b).cloned().unwrap_or_default()
    }
}

/// Closed sets are exactly the sets `V(i)`.
pub fn sh_topology(lat: &FiniteLattice, sh: &ShAnalysis) -> Result<FiniteTopology, AxiomViolation> {
    FiniteTopology::from_closed_sets(sh.points().clone(), lat.elements().map(|i| sh.v_of(lat, i)))
}

/// Open sets are the unions of sets `V(i)`.
pub fn w_topology(lat: &FiniteLattice, sh: &ShAnalysis) -> FiniteTopology {
    FiniteTopology::from_open_base(sh.points().clone(), lat.elements().map(|i| sh.v_of(lat, i)))
}
