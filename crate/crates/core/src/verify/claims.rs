//! The claim registry. Every checker is a pure function of one [`Analysis`].

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CheckContext, Claim, Hypothesis};
use crate::dimensions::Analysis;
use crate::set::ElementSet;

/// Point sets up to this size have every subset checked; larger ones are sampled.
pub const EXHAUSTIVE_SUBSET_LIMIT: usize = 12;
pub const SAMPLED_SUBSETS: usize = 1000;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub static REGISTRY: &[Claim] = &[
    Claim {
        id: "v-empty-iff-no-point-below",
        statement: "V(I) is empty iff no nonzero sh element lies below I",
        hypothesis: Hypothesis::Any,
        check: v_empty,
    },
    Claim {
        id: "v-singleton-iff-minimal-point",
        statement: "V(I) = {I} iff I is a minimal nonzero sh element",
        hypothesis: Hypothesis::Any,
        check: v_singleton,
    },
    Claim {
        id: "v-all-iff-contains-all-sh",
        statement: "V(I) = X iff I lies above every sh element; V(top) = X",
        hypothesis: Hypothesis::Any,
        check: v_all,
    },
    Claim {
        id: "v-join-is-union",
        statement: "V(I v J) = V(I) u V(J)",
        hypothesis: Hypothesis::Any,
        check: v_join,
    },
    Claim {
        id: "v-meet-is-intersection",
        statement: "V(meet of a family) = intersection of the V's",
        hypothesis: Hypothesis::Any,
        check: v_meet,
    },
    Claim {
        id: "v-of-underline",
        statement: "V(I) = V(underline I)",
        hypothesis: Hypothesis::Any,
        check: v_underline,
    },
    Claim {
        id: "semi-sh-iff-fixed",
        statement: "I = underline I iff I is a join of sh elements",
        hypothesis: Hypothesis::Any,
        check: semi_sh_fixed,
    },
    Claim {
        id: "v-determines-underline",
        statement: "V(I) = V(J) implies underline I = underline J",
        hypothesis: Hypothesis::Any,
        check: v_determines_underline,
    },
    Claim {
        id: "underline-preserves-meets",
        statement: "underline(meet of a family) = meet of the underlines",
        hypothesis: Hypothesis::Distributive,
        check: underline_meets,
    },
    Claim {
        id: "underline-is-kernel",
        statement: "underline is deflationary, monotone and idempotent",
        hypothesis: Hypothesis::Any,
        check: underline_kernel,
    },
    Claim {
        id: "chain-all-sh",
        statement: "every element of a chain is strongly hollow",
        hypothesis: Hypothesis::Any,
        check: chain_all_sh,
    },
    Claim {
        id: "sh-closed-set-axioms",
        statement: "the sets V(I) are the closed sets of a topology",
        hypothesis: Hypothesis::Any,
        check: sh_axioms,
    },
    Claim {
        id: "sh-topology-t0",
        statement: "the SH-topology is T0",
        hypothesis: Hypothesis::Any,
        check: sh_t0,
    },
    Claim {
        id: "t1-iff-points-minimal",
        statement: "T1 iff every point is minimal iff every point is maximal (SH and W)",
        hypothesis: Hypothesis::Any,
        check: t1_iff_minimal,
    },
    Claim {
        id: "hausdorff-separating-pair",
        statement: "Hausdorff SH-topology: every pair of points is split by some X = V(I1) u V(I2)",
        hypothesis: Hypothesis::Any,
        check: hausdorff_pair,
    },
    Claim {
        id: "sh-trivial-iff-singleton",
        statement: "a nonempty SH-topology is trivial iff it has one point",
        hypothesis: Hypothesis::Any,
        check: trivial_iff_singleton,
    },
    Claim {
        id: "semi-sh-order-isomorphism",
        statement: "I -> V(I) is an order isomorphism from semi-sh elements onto SH-closed sets",
        hypothesis: Hypothesis::Any,
        check: semi_sh_iso,
    },
    Claim {
        id: "w-topology-axioms",
        statement: "unions of the sets V(I) form a topology",
        hypothesis: Hypothesis::Any,
        check: w_axioms,
    },
    Claim {
        id: "isolated-iff-minimal",
        statement: "in the W-topology a point of S is isolated in S iff it is minimal in S",
        hypothesis: Hypothesis::Any,
        check: isolated_iff_minimal,
    },
    Claim {
        id: "isolated-set-relatively-open",
        statement: "the isolated points of S form an open subset of S (W-topology)",
        hypothesis: Hypothesis::Any,
        check: isolated_open,
    },
    Claim {
        id: "every-subset-has-isolated-point",
        statement: "every nonempty subset of X has an isolated point (W-topology)",
        hypothesis: Hypothesis::Any,
        check: scattered,
    },
    Claim {
        id: "cb-levels-closed",
        statement: "every derived level X_b is closed in the W-topology",
        hypothesis: Hypothesis::Any,
        check: levels_closed,
    },
    Claim {
        id: "cb-filtration-well-formed",
        statement: "X_{b+1} = X_b - S_b and the strata partition X",
        hypothesis: Hypothesis::Any,
        check: filtration_well_formed,
    },
    Claim {
        id: "y-zero-is-minimal-points",
        statement: "Y_0 = {0} u minimal points and the Y levels strictly increase",
        hypothesis: Hypothesis::Any,
        check: y_zero,
    },
    Claim {
        id: "strata-match-y-levels",
        statement: "Y_a - {0} = S_0 u .. u S_a for every a up to the dimension",
        hypothesis: Hypothesis::Any,
        check: strata_match_y,
    },
    Claim {
        id: "dimensions-exist",
        statement: "X has a derived dimension and the Y filtration stabilizes",
        hypothesis: Hypothesis::Any,
        check: dimensions_exist,
    },
    Claim {
        id: "dimension-bounds",
        statement: "dclk <= d(X) <= dclk + 1",
        hypothesis: Hypothesis::Distributive,
        check: dimension_bounds,
    },
    Claim {
        id: "derived-equals-dclk-plus-one",
        statement: "for nonempty X, d(X) = dclk + 1 (finite d(X) is never a limit)",
        hypothesis: Hypothesis::Distributive,
        check: derived_plus_one,
    },
    Claim {
        id: "y-filtration-matches-chain-oracle",
        statement: "dclk = (longest chain of points) - 1",
        hypothesis: Hypothesis::Any,
        check: chain_oracle,
    },
    Claim {
        id: "coatom-meet-zero-bounds-dimension",
        statement: "if the coatoms meet to bottom then dclk <= 0",
        hypothesis: Hypothesis::Modular,
        check: coatom_meet,
    },
];

/// Every subset of `points` when small, otherwise a seeded sample.
pub fn subsets_to_check(points: &ElementSet, seed: u64) -> Vec<ElementSet> {
    let pts = points.to_vec();
    if pts.len() <= EXHAUSTIVE_SUBSET_LIMIT {
        (0u32..1 << pts.len())
            .map(|mask| {
                pts.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect()
            })
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SAMPLED_SUBSETS)
            .map(|_| pts.iter().copied().filter(|_| rng.gen_bool(0.5)).collect())
            .collect()
    }
}

/// Families used for the meet identities: the empty family, every pair, every
/// triple on small lattices, and the family of all elements.
// The empty family goes last so that failures report a nonempty one when
// there is one.
fn families(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![(0..n).collect()];
    for a in 0..n {
        for b in a..n {
            out.push(vec![a, b]);
        }
    }
    if n <= 10 {
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    out.push(vec![a, b, c]);
                }
            }
        }
    }
    out.push(vec![]);
    out
}

fn v_empty(a: &Analysis, _: &CheckContext) -> Outcome {
    let lat = &a.lattice;
    for i in lat.elements() {
        let below = lat
            .elements()
            .any(|l| l != lat.bottom() && lat.le(l, i) && crate::sh::is_strongly_hollow(lat, l));
        ensure!(
            a.sh.v_of(lat, i).is_empty() == !below,
            "I = {}",
            lat.label(i)
        );
    }
    Ok(())
}

fn v_singleton(a: &Analysis, _: &CheckContext) -> Outcome {
    let lat = &a.lattice;
    let minimal = lat.minimal_elements(a.points());
    for i in lat.elements() {
        let lhs = a.sh.v_of(lat, i) == ElementSet::singleton(i);
        ensure!(lhs == minimal.contains(i), "I = {}", lat.label(i));
    }
    Ok(())
}

fn v_all(a: &Analysis, _: &CheckContext) -> Outcome {
    let lat = &a.lattice;
    ensure!(
        &a.sh.v_of(lat, lat.top()) == a.points(),
        "V(top) differs from X"
    );
    let sh = a.sh.sh_elements();
    for i in lat.elements() {
        let above_all = sh.iter().all(|l| lat.le(l, i));
        ensure!(
            (&a.sh.v_of(lat, i) == a.points()) == above_all,
            "I = {}",
            lat.label(i)
        );
    }
    Ok(())
}

fn v_join(a: &Analysis, _: &CheckContext) -> Outcome {
    let lat = &a.lattice;
    for i in lat.elements() {
        for j in i..lat.size() {
            let lhs = a.sh.v_of(lat, lat.join(i, j));
            let rhs = a.sh.v_of(lat, i).union(&a.sh.v_of(lat, j));
            ensure!(lhs == rhs, "I = {}, J = {}", lat.label(i), lat.label(j));
        }
    }
    Ok(())
}

fn family_label(a: &Analysis, f: &[usize]) -> String {
    let parts: Vec<String> = f.iter().map(|&i| a.lattice.label(i)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn v_meet(a: &Analysis, _: &CheckContext) -> Outcome {
    let lat = &a.lattice;
    for f in families(lat.size()) {
        ensure!(
            a.sh.v_of_meet(lat, &f) == a.sh.v_intersection(lat, &f),
            "family {}",
            family_label(a, &f)
        );
    }
    Ok(())
}

fn v_underline(a: &Analysis, _: &CheckContext) -> Outcome {
    let lat = &a.lattice;
    for i in lat.elements() {
        let u = a.sh.underline(lat, i);
        ensure!(
            a.sh.v_of(lat, i) == a.sh.v_of(lat, u),
            "I = {}",
            lat.label(i)
        );
    }
    Ok(())
}

fn semi_sh_fixed(a: &Analysis, _: &CheckContext) -> Outcome {
    let lat = &a.lattice;
    // joins of arbitrary sets of sh elements, built by closing under binary join
    let mut joins: BTreeSet<usize> = a.sh.sh_elements().iter().collect();
    joins.insert(lat.bottom());
    loop {
        let extra: Vec<usize> = joins
            .iter()
            .flat_map(|&x| joins.iter().map(move |&y| (x, y)))
            .map(|(x, y)| lat.join(x, y))
            .filter(|j| !joins.contains(j))
            .collect();
        if extra.is_empty() {
            break;
        }
        joins.extend(extra);
    }
    for i in lat.elements() {
        ensure!(
            a.sh.is_semi_sh(lat, i) == joins.contains(&i),
            "I = {}",
            lat.label(i)
        );
    }
    Ok(())
}

fn v_determines_underline(a: &Analysis, _: &CheckContext) -> Outcome {
    let lat = &a.lattice;
    for i in lat.elements() {
        for j in i + 1..lat.size() {
            if a.sh.v_of(lat, i) == a.sh.v_of(lat, j) {
                ensure!(
                    a.sh.underline(lat, i) == a.sh.underline(lat, j),
                    "I = {}, J = {}",
                    lat.label(i),
                    lat.label(j)
                );
            }
        }
    }
    Ok(())
}

fn underline_meets(a: &Analysis, _: &CheckContext) -> Outcome {
    let lat = &a.lattice;
    for f in families(lat.size()) {
        let lhs = a.sh.underline_of_meet(lat, &f);
        let rhs = a.sh.meet_of_underlines(lat, &f);
        ensure!(
            lhs == rhs,
            "family {}: underline of meet = {}, meet of underlines = {}",
            family_label(a, &f),
            lat.label(lhs),
            lat.label(rhs)
        );
    }
    Ok(())
}

fn underline_kernel(a: &Analysis, _: &CheckContext) -> Outcome {
    let lat = &a.lattice;
    for i in lat.elements() {
        let u = a.sh.underline(lat, i);
        ensure!(lat.le(u, i), "underline({0}) not below {0}", lat.label(i));
        ensure!(
            a.sh.underline(lat, u) == u,
            "not idempotent at {}",
            lat.label(i)
        );
        for j in lat.elements() {
            if lat.le(i, j) {
                ensure!(
                    lat.le(u, a.sh.underline(lat, j)),
                    "not monotone on {} <= {}",
                    lat.label(i),
                    lat.label(j)
                );
            }
        }
    }
    Ok(())
}

fn chain_all_sh(a: &Analysis, _: &CheckContext) -> Outcome {
    if a.lattice.is_chain() {
        ensure!(
            a.sh.flags().iter().all(|&f| f),
            "chain with a non-sh element"
        );
    }
    Ok(())
}

fn sh_axioms(a: &Analysis, _: &CheckContext) -> Outcome {
    a.sh_topology
        .as_ref()
        .map(|_| ())
        .map_err(|e| e.to_string())
}

fn sh_t0(a: &Analysis, _: &CheckContext) -> Outcome {
    let t = a.sh_topology.as_ref().map_err(|e| e.to_string())?;
    ensure!(t.is_t0(), "two points share a closure");
    Ok(())
}

fn t1_iff_minimal(a: &Analysis, _: &CheckContext) -> Outcome {
    let lat = &a.lattice;
    let all_minimal = lat.minimal_elements(a.points()) == *a.points();
    let all_maximal = lat.maximal_elements(a.points()) == *a.points();
    ensure!(
        all_minimal == all_maximal,
        "minimal and maximal clauses disagree"
    );
    let t = a.sh_topology.as_ref().map_err(|e| e.to_string())?;
    ensure!(t.is_t1() == all_minimal, "SH-topology: T1 = {}", t.is_t1());
    ensure!(
        a.w_topology.is_t1() == all_minimal,
        "W-topology: T1 = {}",
        a.w_topology.is_t1()
    );
    Ok(())
}

fn hausdorff_pair(a: &Analysis, _: &CheckContext) -> Outcome {
    let lat = &a.lattice;
    let t = a.sh_topology.as_ref().map_err(|e| e.to_string())?;
    if !t.is_hausdorff() {
        return Ok(());
    }
    let vs: Vec<ElementSet> = lat.elements().map(|i| a.sh.v_of(lat, i)).collect();
    let pts = a.points().to_vec();
    for &p in &pts {
        for &q in &pts {
            if p == q {
                continue;
            }
            let found = vs.iter().any(|v1| {
                !v1.contains(p)
                    && vs
                        .iter()
                        .any(|v2| !v2.contains(q) && v1.union(v2) == *a.points())
            });
            ensure!(
                found,
                "no separating pair for {}, {}",
                lat.label(p),
                lat.label(q)
            );
        }
    }
    Ok(())
}

fn trivial_iff_singleton(a: &Analysis, _: &CheckContext) -> Outcome {
    let t = a.sh_topology.as_ref().map_err(|e| e.to_string())?;
    if !a.points().is_empty() {
        ensure!(
            t.is_trivial() == (a.points().len() == 1),
            "trivial = {}, |X| = {}",
            t.is_trivial(),
            a.points().len()
        );
    }
    Ok(())
}

fn semi_sh_iso(a: &Analysis, _: &CheckContext) -> Outcome {
    let lat = &a.lattice;
    let t = a.sh_topology.as_ref().map_err(|e| e.to_string())?;
    let semi = a.sh.semi_sh_elements(lat);
    let image: BTreeSet<ElementSet> = semi.iter().map(|&i| a.sh.v_of(lat, i)).collect();
    ensure!(
        image.len() == semi.len(),
        "V is not injective on semi-sh elements"
    );
    let closed: BTreeSet<ElementSet> = t.closed_sets().iter().cloned().collect();
    ensure!(image == closed, "V is not onto the closed sets");
    for &i in &semi {
        for &j in &semi {
            let vi = a.sh.v_of(lat, i);
            let vj = a.sh.v_of(lat, j);
            ensure!(
                lat.le(i, j) == vi.is_subset(&vj),
                "order not preserved on {}, {}",
                lat.label(i),
                lat.label(j)
            );
        }
    }
    Ok(())
}

fn w_axioms(a: &Analysis, _: &CheckContext) -> Outcome {
    a.w_topology.check_axioms().map_err(|e| e.to_string())
}

fn set_label(a: &Analysis, s: &ElementSet) -> String {
    let parts: Vec<String> = s.iter().map(|i| a.lattice.label(i)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn isolated_iff_minimal(a: &Analysis, ctx: &CheckContext) -> Outcome {
    for s in subsets_to_check(a.points(), ctx.seed) {
        ensure!(
            a.w_topology.isolated_points(&s) == a.lattice.minimal_elements(&s),
            "S = {}",
            set_label(a, &s)
        );
    }
    Ok(())
}

fn isolated_open(a: &Analysis, ctx: &CheckContext) -> Outcome {
    for s in subsets_to_check(a.points(), ctx.seed) {
        let iso = a.w_topology.isolated_points(&s);
        ensure!(
            a.w_topology.is_relatively_open(&s, &iso),
            "S = {}",
            set_label(a, &s)
        );
    }
    Ok(())
}

fn scattered(a: &Analysis, ctx: &CheckContext) -> Outcome {
    for s in subsets_to_check(a.points(), ctx.seed) {
        if !s.is_empty() {
            ensure!(
                !a.w_topology.isolated_points(&s).is_empty(),
                "S = {}",
                set_label(a, &s)
            );
        }
    }
    Ok(())
}

fn levels_closed(a: &Analysis, _: &CheckContext) -> Outcome {
    for (b, level) in a.filtration.levels.iter().enumerate() {
        ensure!(
            a.w_topology.is_closed(level),
            "X_{b} = {} is not closed",
            set_label(a, level)
        );
    }
    Ok(())
}

fn filtration_well_formed(a: &Analysis, _: &CheckContext) -> Outcome {
    let f = &a.filtration;
    ensure!(f.levels.first() == Some(a.points()), "X_0 differs from X");
    ensure!(
        f.levels.len() == f.strata.len() + 1,
        "level/stratum count mismatch"
    );
    let mut seen = ElementSet::new();
    for (b, s) in f.strata.iter().enumerate() {
        ensure!(
            *s == a.w_topology.isolated_points(&f.levels[b]),
            "S_{b} mismatch"
        );
        ensure!(
            f.levels[b + 1] == f.levels[b].difference(s),
            "X_{} mismatch",
            b + 1
        );
        ensure!(seen.is_disjoint(s), "S_{b} overlaps an earlier stratum");
        seen = seen.union(s);
    }
    if f.derived_dimension.is_some() {
        ensure!(seen == *a.points(), "strata do not cover X");
    }
    Ok(())
}

fn y_zero(a: &Analysis, _: &CheckContext) -> Outcome {
    let lat = &a.lattice;
    let mut expect = lat.minimal_elements(a.points());
    expect.insert(lat.bottom());
    ensure!(
        a.y.levels.first() == Some(&expect),
        "Y_0 = {}",
        set_label(a, &a.y.levels[0])
    );
    for w in a.y.levels.windows(2) {
        ensure!(
            w[0].is_subset(&w[1]) && w[0] != w[1],
            "levels do not strictly increase"
        );
    }
    Ok(())
}

fn strata_match_y(a: &Analysis, _: &CheckContext) -> Outcome {
    let bottom = ElementSet::singleton(a.lattice.bottom());
    let mut union = ElementSet::new();
    for (alpha, level) in a.y.levels.iter().enumerate() {
        union = union.union(&a.filtration.stratum(alpha));
        let lhs = level.difference(&bottom);
        ensure!(
            lhs == union,
            "a = {alpha}: Y_a - 0 = {}, strata union = {}",
            set_label(a, &lhs),
            set_label(a, &union)
        );
    }
    Ok(())
}

fn dimensions_exist(a: &Analysis, _: &CheckContext) -> Outcome {
    let d = a.derived_dimension().ok_or("X is not scattered")?;
    ensure!(d <= a.points().len(), "derived dimension {d} exceeds |X|");
    ensure!(
        a.y.levels.last() == Some(&a.sh.sh_elements()),
        "Y filtration did not reach SH"
    );
    Ok(())
}

fn dimension_bounds(a: &Analysis, _: &CheckContext) -> Outcome {
    let d = a.derived_dimension().ok_or("X is not scattered")? as i64;
    let k = a.dclk_dimension();
    ensure!(k <= d && d <= k + 1, "dclk = {k}, derived = {d}");
    Ok(())
}

fn derived_plus_one(a: &Analysis, _: &CheckContext) -> Outcome {
    if a.points().is_empty() {
        return Ok(());
    }
    let d = a.derived_dimension().ok_or("X is not scattered")? as i64;
    let k = a.dclk_dimension();
    ensure!(d == k + 1, "dclk = {k}, derived = {d}");
    Ok(())
}

fn chain_oracle(a: &Analysis, _: &CheckContext) -> Outcome {
    ensure!(
        a.dclk_dimension() == a.chain_oracle,
        "filtration {} vs chain oracle {}",
        a.dclk_dimension(),
        a.chain_oracle
    );
    Ok(())
}

fn coatom_meet(a: &Analysis, _: &CheckContext) -> Outcome {
    let lat = &a.lattice;
    if lat.meet_all(lat.coatoms().iter()) == lat.bottom() {
        ensure!(a.dclk_dimension() <= 0, "dclk = {}", a.dclk_dimension());
    }
    Ok(())
}
