//! Strongly hollow elements and the `V` / underline calculus.
//!
//! An element `l` is strongly hollow when `l <= a ∨ b` forces `l <= a` or
//! `l <= b`. The point set of both topologies is the set of nonzero strongly
//! hollow elements. `V(i)` is the set of points below `i` and `underline(i)`
//! is the join of `V(i)`.

use serde::Serialize;

use crate::lattice::FiniteLattice;
use crate::set::ElementSet;

/// A pair `(a, b)` with `l <= a ∨ b` but `l` below neither.
pub fn sh_witness(lat: &FiniteLattice, l: usize) -> Option<(usize, usize)> {
    for a in lat.elements() {
        if lat.le(l, a) {
            continue;
        }
        for b in a + 1..lat.size() {
            if !lat.le(l, b) && lat.le(l, lat.join(a, b)) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn is_strongly_hollow(lat: &FiniteLattice, l: usize) -> bool {
    sh_witness(lat, l).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonShWitness {
    pub element: usize,
    pub a: usize,
    pub b: usize,
}

/// Strongly hollow flags for every element of one lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShAnalysis {
    flags: Vec<bool>,
    witnesses: Vec<NonShWitness>,
    points: ElementSet,
}

impl ShAnalysis {
    pub fn new(lat: &FiniteLattice) -> Self {
        let mut flags = Vec::with_capacity(lat.size());
        let mut witnesses = Vec::new();
        for l in lat.elements() {
            match sh_witness(lat, l) {
                None => flags.push(true),
                Some((a, b)) => {
                    flags.push(false);
                    witnesses.push(NonShWitness { element: l, a, b });
                }
            }
        }
        let points = lat
            .elements()
            .filter(|&e| flags[e] && e != lat.bottom())
            .collect();
        Self {
            flags,
            witnesses,
            points,
        }
    }

    pub fn is_sh(&self, e: usize) -> bool {
        self.flags[e]
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    /// Every strongly hollow element, bottom included.
    pub fn sh_elements(&self) -> ElementSet {
        self.flags
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(i, _)| i)
            .collect()
    }

    /// Nonzero strongly hollow elements.
    pub fn points(&self) -> &ElementSet {
        &self.points
    }

    /// One refuting pair per element that is not strongly hollow.
    pub fn witnesses(&self) -> &[NonShWitness] {
        &self.witnesses
    }

    pub fn v_of(&self, lat: &FiniteLattice, i: usize) -> ElementSet {
        self.points.iter().filter(|&l| lat.le(l, i)).collect()
    }

    pub fn underline(&self, lat: &FiniteLattice, i: usize) -> usize {
        lat.join_all(self.v_of(lat, i).iter())
    }

    pub fn is_semi_sh(&self, lat: &FiniteLattice, i: usize) -> bool {
        self.underline(lat, i) == i
    }

    pub fn is_sh_ring(&self, lat: &FiniteLattice) -> bool {
        self.flags[lat.top()]
    }

    /// Top is the join of all strongly hollow elements.
    pub fn is_semi_sh_ring(&self, lat: &FiniteLattice) -> bool {
        self.is_semi_sh(lat, lat.top())
    }

    /// `V` of the meet of a family; the empty family has meet top.
    pub fn v_of_meet(&self, lat: &FiniteLattice, family: &[usize]) -> ElementSet {
        self.v_of(lat, lat.meet_all(family.iter().copied()))
    }

    /// Intersection of the `V`s of a family; the empty family gives every point.
    pub fn v_intersection(&self, lat: &FiniteLattice, family: &[usize]) -> ElementSet {
        family.iter().fold(self.points.clone(), |acc, &i| {
            acc.intersection(&self.v_of(lat, i))
        })
    }

    pub fn underline_of_meet(&self, lat: &FiniteLattice, family: &[usize]) -> usize {
        self.underline(lat, lat.meet_all(family.iter().copied()))
    }

    pub fn meet_of_underlines(&self, lat: &FiniteLattice, family: &[usize]) -> usize {
        lat.meet_all(family.iter().map(|&i| self.underline(lat, i)))
    }

    /// Elements equal to their own underline, in index order.
    pub fn semi_sh_elements(&self, lat: &FiniteLattice) -> Vec<usize> {
        lat.elements()
            .filter(|&i| self.is_semi_sh(lat, i))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{chain, ideal_lattice_zn, named, random_lattice, NamedLattice};
    use proptest::prelude::*;

    fn ids(lat: &FiniteLattice, labels: &[&str]) -> ElementSet {
        labels.iter().map(|l| lat.index_of(l).unwrap()).collect()
    }

    /// Literal definition: quantify over every ordered pair.
    fn sh_by_definition(lat: &FiniteLattice, l: usize) -> bool {
        lat.elements().all(|a| {
            lat.elements()
                .all(|b| !lat.le(l, lat.join(a, b)) || lat.le(l, a) || lat.le(l, b))
        })
    }

    #[test]
    fn z12_points_and_witness() {
        let z = ideal_lattice_zn(12).unwrap();
        let sh = ShAnalysis::new(&z);
        assert_eq!(sh.points(), &ids(&z, &["(6)", "(4)", "(3)"]));
        let i = |s: &str| z.index_of(s).unwrap();
        assert!(is_strongly_hollow(&z, i("(4)")));
        assert!(!is_strongly_hollow(&z, i("(2)")));
        // (2) <= (4) + (3) = R yet (2) lies in neither
        let (a, b) = (i("(4)"), i("(3)"));
        assert!(z.le(i("(2)"), z.join(a, b)) && !z.le(i("(2)"), a) && !z.le(i("(2)"), b));
        let w = sh
            .witnesses()
            .iter()
            .find(|w| w.element == i("(2)"))
            .unwrap();
        assert!(
            z.le(w.element, z.join(w.a, w.b)) && !z.le(w.element, w.a) && !z.le(w.element, w.b)
        );
        assert!(sh.is_sh(z.bottom()));
    }

    #[test]
    fn chains_and_m3() {
        for k in 1..=6 {
            let sh = ShAnalysis::new(&chain(k).unwrap());
            assert_eq!(sh.points().len(), k - 1);
        }
        let m3 = named(NamedLattice::M3);
        let sh = ShAnalysis::new(&m3);
        assert!(sh.points().is_empty());
        let (a, b) = sh_witness(&m3, 1).unwrap();
        assert_eq!(m3.join(a, b), m3.top());
        let n5 = named(NamedLattice::N5);
        assert_eq!(ShAnalysis::new(&n5).points(), &ids(&n5, &["a", "b"]));
    }

    #[test]
    fn v_and_underline_examples() {
        let z = ideal_lattice_zn(12).unwrap();
        let sh = ShAnalysis::new(&z);
        let i = |s: &str| z.index_of(s).unwrap();
        assert!(sh.v_of(&z, z.bottom()).is_empty());
        assert_eq!(&sh.v_of(&z, z.top()), sh.points());
        assert_eq!(sh.v_of(&z, i("(2)")), ids(&z, &["(6)", "(4)"]));
        assert_eq!(sh.underline(&z, z.bottom()), z.bottom());
        assert_eq!(sh.underline(&z, i("(2)")), i("(2)"));
        assert_eq!(sh.underline(&z, z.top()), z.top());
        assert!(sh.is_semi_sh(&z, z.bottom()));
        assert!(sh.is_semi_sh(&z, i("(2)")));
        assert!(sh.is_semi_sh_ring(&z));
        assert!(!sh.is_sh_ring(&z));

        let m3 = named(NamedLattice::M3);
        let sh = ShAnalysis::new(&m3);
        assert!(!sh.is_semi_sh(&m3, 1));
        assert!(!sh.is_semi_sh_ring(&m3));
    }

    #[test]
    fn ring_predicates_on_chains() {
        for k in 1..=5u32 {
            let z = ideal_lattice_zn(3u64.pow(k)).unwrap();
            let sh = ShAnalysis::new(&z);
            assert!(sh.is_sh_ring(&z));
            assert!(sh.is_semi_sh_ring(&z));
        }
        let simple = chain(2).unwrap();
        assert!(ShAnalysis::new(&simple).is_sh_ring(&simple));
    }

    #[test]
    fn empty_family_conventions() {
        let z = ideal_lattice_zn(12).unwrap();
        let sh = ShAnalysis::new(&z);
        assert_eq!(&sh.v_of_meet(&z, &[]), sh.points());
        assert_eq!(&sh.v_intersection(&z, &[]), sh.points());
        assert_eq!(
            sh.underline_of_meet(&z, &[]),
            sh.meet_of_underlines(&z, &[])
        );
    }

    proptest! {
        #[test]
        fn pair_scan_matches_definition(size in 1usize..10, seed in any::<u64>()) {
            let l = random_lattice(size, seed).unwrap();
            for e in l.elements() {
                prop_assert_eq!(is_strongly_hollow(&l, e), sh_by_definition(&l, e));
            }
        }

        #[test]
        fn underline_is_a_kernel_operator(size in 1usize..10, seed in any::<u64>()) {
            let l = random_lattice(size, seed).unwrap();
            let sh = ShAnalysis::new(&l);
            for i in l.elements() {
                let u = sh.underline(&l, i);
                prop_assert!(l.le(u, i));
                prop_assert_eq!(sh.underline(&l, u), u);
                for j in l.elements() {
                    if l.le(i, j) {
                        prop_assert!(l.le(u, sh.underline(&l, j)));
                    }
                }
            }
        }
    }
}
