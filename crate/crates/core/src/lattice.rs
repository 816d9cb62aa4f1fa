//! Finite bounded lattices stored as dense order matrices with precomputed
//! join and meet tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::set::ElementSet;

/// Upper bound on the number of violations collected by a single validation.
const MAX_VIOLATIONS: usize = 64;

/// How the `pairs` of a [`LatticeDocument`] are to be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    /// `[i, j]` means `j` covers `i`; the order is the reflexive-transitive closure.
    Covers,
    /// `[i, j]` means `i <= j`; the relation must already be transitive.
    Le,
}

/// The on-disk JSON form of a lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDocument {
    pub n: usize,
    pub relation: RelationKind,
    pub pairs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    #[error("lattice must have at least one element")]
    Empty,
    #[error("element index {index} out of range for {n} elements")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("not a partial order: {a} <= {b} and {b} <= {a}")]
    NotAntisymmetric { a: usize, b: usize },
    #[error("not a partial order: {a} <= {b} <= {c} but not {a} <= {c}")]
    NotTransitive { a: usize, b: usize, c: usize },
    #[error("no unique join for ({a}, {b})")]
    NoUniqueJoin { a: usize, b: usize },
    #[error("no unique meet for ({a}, {b})")]
    NoUniqueMeet { a: usize, b: usize },
    #[error("no bottom element")]
    NoBottom,
    #[error("no top element")]
    NoTop,
}

impl Violation {
    pub fn is_order_defect(&self) -> bool {
        matches!(
            self,
            Violation::NotAntisymmetric { .. } | Violation::NotTransitive { .. }
        )
    }
}

/// All axiom violations found while validating a candidate lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

impl ValidationError {
    fn single(v: Violation) -> Self {
        Self {
            violations: vec![v],
        }
    }

    pub fn contains(&self, pred: impl Fn(&Violation) -> bool) -> bool {
        self.violations.iter().any(pred)
    }
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid lattice: ")?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationError {}

/// A validated finite bounded lattice on the elements `0..size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteLattice {
    n: usize,
    le: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
    labels: Option<Vec<String>>,
}

impl FiniteLattice {
    /// Validates a relation given as pairs; see [`RelationKind`].
    pub fn from_pairs(
        n: usize,
        kind: RelationKind,
        pairs: &[[usize; 2]],
        labels: Option<Vec<String>>,
    ) -> Result<Self, ValidationError> {
        if n == 0 {
            return Err(ValidationError::single(Violation::Empty));
        }
        let mut le = vec![false; n * n];
        for &[a, b] in pairs {
            for index in [a, b] {
                if index >= n {
                    return Err(ValidationError::single(Violation::IndexOutOfRange {
                        index,
                        n,
                    }));
                }
            }
            le[a * n + b] = true;
        }
        for i in 0..n {
            le[i * n + i] = true;
        }
        if kind == RelationKind::Covers {
            transitive_closure(&mut le, n);
        }
        Self::from_le_matrix(n, le, labels)
    }

    pub fn from_document(doc: &LatticeDocument) -> Result<Self, ValidationError> {
        Self::from_pairs(doc.n, doc.relation, &doc.pairs, doc.labels.clone())
    }

    /// Validates a full `n * n` order matrix, row-major: `le[a * n + b]` iff `a <= b`.
    pub fn from_le_matrix(
        n: usize,
        le: Vec<bool>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, ValidationError> {
        if n == 0 {
            return Err(ValidationError::single(Violation::Empty));
        }
        assert_eq!(le.len(), n * n, "order matrix has wrong dimensions");
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(ValidationError::single(Violation::LabelCount {
                    expected: n,
                    found: l.len(),
                }));
            }
        }

        let mut violations = Vec::new();
        let at = |a: usize, b: usize| le[a * n + b];
        'order: for a in 0..n {
            for b in 0..n {
                if a < b && at(a, b) && at(b, a) {
                    violations.push(Violation::NotAntisymmetric { a, b });
                }
                if a != b && at(a, b) {
                    for c in 0..n {
                        if at(b, c) && !at(a, c) {
                            violations.push(Violation::NotTransitive { a, b, c });
                        }
                    }
                }
                if violations.len() >= MAX_VIOLATIONS {
                    break 'order;
                }
            }
        }
        if !violations.is_empty() {
            violations.truncate(MAX_VIOLATIONS);
            return Err(ValidationError { violations });
        }

        let bottom = (0..n).find(|&b| (0..n).all(|x| at(b, x)));
        let top = (0..n).find(|&t| (0..n).all(|x| at(x, t)));
        if bottom.is_none() {
            violations.push(Violation::NoBottom);
        }
        if top.is_none() {
            violations.push(Violation::NoTop);
        }

        let up_count: Vec<usize> = (0..n)
            .map(|a| (0..n).filter(|&x| at(a, x)).count())
            .collect();
        let down_count: Vec<usize> = (0..n)
            .map(|a| (0..n).filter(|&x| at(x, a)).count())
            .collect();
        let mut join = vec![usize::MAX; n * n];
        let mut meet = vec![usize::MAX; n * n];
        for a in 0..n {
            for b in a..n {
                match least_bound(n, |c| at(a, c) && at(b, c), &up_count) {
                    Some(j) => {
                        join[a * n + b] = j;
                        join[b * n + a] = j;
                    }
                    None if violations.len() < MAX_VIOLATIONS => {
                        violations.push(Violation::NoUniqueJoin { a, b })
                    }
                    None => {}
                }
                match least_bound(n, |c| at(c, a) && at(c, b), &down_count) {
                    Some(m) => {
                        meet[a * n + b] = m;
                        meet[b * n + a] = m;
                    }
                    None if violations.len() < MAX_VIOLATIONS => {
                        violations.push(Violation::NoUniqueMeet { a, b })
                    }
                    None => {}
                }
            }
        }

        match (bottom, top) {
            (Some(bottom), Some(top)) if violations.is_empty() => Ok(Self {
                n,
                le,
                join,
                meet,
                bottom,
                top,
                labels,
            }),
            _ => Err(ValidationError { violations }),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.n + b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.n + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.n + b]
    }

    /// Join of a finite family; the empty join is bottom.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of a finite family; the empty meet is top.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    /// A triple violating `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`, if any.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        for x in self.elements() {
            for y in self.elements() {
                for z in y + 1..self.n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// A triple `a <= c` with `a ∨ (b ∧ c) != (a ∨ b) ∧ c`, if any.
    pub fn modularity_witness(&self) -> Option<(usize, usize, usize)> {
        for a in self.elements() {
            for c in self.elements() {
                if a == c || !self.le(a, c) {
                    continue;
                }
                for b in self.elements() {
                    if self.join(a, self.meet(b, c)) != self.meet(self.join(a, b), c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_modular(&self) -> bool {
        self.modularity_witness().is_none()
    }

    pub fn is_chain(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.n).all(|b| self.comparable(a, b)))
    }

    /// Members of `s` with no strictly smaller member of `s`.
    pub fn minimal_elements(&self, s: &ElementSet) -> ElementSet {
        s.iter()
            .filter(|&x| !s.iter().any(|y| self.lt(y, x)))
            .collect()
    }

    pub fn maximal_elements(&self, s: &ElementSet) -> ElementSet {
        s.iter()
            .filter(|&x| !s.iter().any(|y| self.lt(x, y)))
            .collect()
    }

    /// Number of elements in a longest chain `x_1 < .. < x_k` inside `s`.
    pub fn longest_chain_length(&self, s: &ElementSet) -> usize {
        let mut members = s.to_vec();
        // ascending by down-set size is a linear extension
        members.sort_by_key(|&x| self.elements().filter(|&y| self.le(y, x)).count());
        let mut best = vec![0usize; members.len()];
        for i in 0..members.len() {
            best[i] = 1
                + (0..i)
                    .filter(|&j| self.lt(members[j], members[i]))
                    .map(|j| best[j])
                    .max()
                    .unwrap_or(0);
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// True when `b` covers `a`.
    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && !self.elements().any(|c| self.lt(a, c) && self.lt(c, b))
    }

    /// All cover pairs `(a, b)` with `b` covering `a`, in index order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.covers(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn atoms(&self) -> ElementSet {
        self.elements()
            .filter(|&x| self.covers(self.bottom, x))
            .collect()
    }

    pub fn coatoms(&self) -> ElementSet {
        self.elements()
            .filter(|&x| self.covers(x, self.top))
            .collect()
    }

    pub fn to_document(&self) -> LatticeDocument {
        LatticeDocument {
            n: self.n,
            relation: RelationKind::Covers,
            pairs: self
                .cover_pairs()
                .into_iter()
                .map(|(a, b)| [a, b])
                .collect(),
            labels: self.labels.clone(),
        }
    }

    /// Row-major copy of the order matrix.
    pub fn order_matrix(&self) -> Vec<bool> {
        self.le.clone()
    }

    /// The induced suborder on `keep`, re-validated as a lattice. Elements are
    /// renumbered in increasing index order.
    pub fn induced(&self, keep: &ElementSet) -> Result<Self, ValidationError> {
        let idx = keep.to_vec();
        let m = idx.len();
        let mut le = vec![false; m * m];
        for (i, &a) in idx.iter().enumerate() {
            for (j, &b) in idx.iter().enumerate() {
                le[i * m + j] = self.le(a, b);
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| idx.iter().map(|&i| l[i].clone()).collect());
        Self::from_le_matrix(m, le, labels)
    }

    /// Renumbers elements so that old element `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        assert_eq!(perm.len(), n);
        let mut le = vec![false; n * n];
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                le[perm[a] * n + perm[b]] = self.le(a, b);
                join[perm[a] * n + perm[b]] = perm[self.join(a, b)];
                meet[perm[a] * n + perm[b]] = perm[self.meet(a, b)];
            }
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![String::new(); n];
            for (i, s) in l.iter().enumerate() {
                out[perm[i]] = s.clone();
            }
            out
        });
        Self {
            n,
            le,
            join,
            meet,
            bottom: perm[self.bottom],
            top: perm[self.top],
            labels,
        }
    }
}

fn transitive_closure(le: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if !le[i * n + k] {
                continue;
            }
            for j in 0..n {
                if le[k * n + j] {
                    le[i * n + j] = true;
                }
            }
        }
    }
}

/// The least element of `{c : bound(c)}`, where `cone[c]` is the size of the
/// cone (up-set for joins, down-set for meets) of `c`. The cone of any bound is
/// contained in the bound set, so the least bound is the one whose cone is the
/// whole bound set.
fn least_bound(n: usize, bound: impl Fn(usize) -> bool, cone: &[usize]) -> Option<usize> {
    let mut count = 0;
    let mut best: Option<usize> = None;
    for c in 0..n {
        if bound(c) {
            count += 1;
            if best.is_none_or(|b| cone[c] > cone[b]) {
                best = Some(c);
            }
        }
    }
    best.filter(|&b| cone[b] == count)
}
