//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Fixture values are recomputed here from scratch: divisor arithmetic for
//! Z_n, and a brute-force strongly hollow test plus longest chain over the
//! lattice tables for everything else.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use hollow_core::generators::{ideal_lattice_zn, named, parse_spec_list, NamedLattice};
use hollow_core::verify::subsets_to_check;
use hollow_core::{run_suite, Analysis, CorpusConfig, ElementSet, FiniteLattice, VerificationRun};

type Outcome = Result<String, String>;
type Corpus = Vec<(String, Analysis)>;

macro_rules! check {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Longest strictly increasing chain in `xs` under `lt`, counted in elements.
fn longest_chain<T: Copy>(xs: &[T], lt: impl Fn(T, T) -> bool) -> usize {
    // xs is small; memoised depth-first search
    let mut memo = vec![0usize; xs.len()];
    fn go<T: Copy>(i: usize, xs: &[T], lt: &dyn Fn(T, T) -> bool, memo: &mut [usize]) -> usize {
        if memo[i] == 0 {
            let mut best = 1;
            for j in 0..xs.len() {
                if lt(xs[i], xs[j]) {
                    best = best.max(1 + go(j, xs, lt, memo));
                }
            }
            memo[i] = best;
        }
        memo[i]
    }
    (0..xs.len())
        .map(|i| go(i, xs, &lt, &mut memo))
        .max()
        .unwrap_or(0)
}

struct ZnOracle {
    points: BTreeSet<String>,
    dclk: i64,
    derived: usize,
    sh_ring: bool,
}

/// Ideals of Z_n are (d) for d | n, with (a) + (b) = (gcd(a, b)) and
/// (a) ⊆ (b) iff b | a. The zero ideal is (n).
fn zn_oracle(n: u64) -> ZnOracle {
    let ds = divisors(n);
    let inside = |a: u64, b: u64| a.is_multiple_of(b);
    let sh = |l: u64| {
        ds.iter().all(|&a| {
            ds.iter()
                .all(|&b| !inside(l, gcd(a, b)) || inside(l, a) || inside(l, b))
        })
    };
    let pts: Vec<u64> = ds.iter().copied().filter(|&d| d != n && sh(d)).collect();
    let height = longest_chain(&pts, |a, b| a != b && inside(a, b));
    ZnOracle {
        points: pts.iter().map(|d| format!("({d})")).collect(),
        dclk: height as i64 - 1,
        derived: height,
        sh_ring: sh(1),
    }
}

fn labels(lat: &FiniteLattice, s: &ElementSet) -> BTreeSet<String> {
    s.iter().map(|e| lat.label(e)).collect()
}

/// Nonzero strongly hollow elements straight from the definition.
fn brute_points(lat: &FiniteLattice) -> Vec<usize> {
    let n = lat.size();
    (0..n)
        .filter(|&l| l != lat.bottom())
        .filter(|&l| {
            (0..n)
                .all(|a| (0..n).all(|b| !lat.le(l, lat.join(a, b)) || lat.le(l, a) || lat.le(l, b)))
        })
        .collect()
}

fn brute_dclk(lat: &FiniteLattice) -> i64 {
    let pts = brute_points(lat);
    longest_chain(&pts, |a, b| lat.lt(a, b)) as i64 - 1
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let z = ideal_lattice_zn(12).map_err(|e| e.to_string())?;
    let a = Analysis::new(z);
    let oracle = zn_oracle(12);
    let expect: BTreeSet<String> = ["(6)", "(4)", "(3)"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    check!(oracle.points == expect, "oracle points {:?}", oracle.points);
    check!(
        (oracle.dclk, oracle.derived) == (1, 2),
        "oracle dims ({}, {})",
        oracle.dclk,
        oracle.derived
    );
    let got = labels(&a.lattice, a.points());
    check!(got == expect, "points {got:?}");
    check!(a.dclk_dimension() == 1, "dclk {}", a.dclk_dimension());
    check!(
        a.derived_dimension() == Some(2),
        "derived {:?}",
        a.derived_dimension()
    );
    check!(a.distributive, "not distributive");
    let dt = start.elapsed();
    check!(dt < Duration::from_secs(1), "took {dt:?}");
    Ok(format!(
        "Z_12: X = {{(6),(4),(3)}}, dclk 1, derived 2, distributive, {dt:.2?}"
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut n_checked = 0;
    for p in [2u64, 3, 5] {
        for k in 1..=5u32 {
            let n = p.pow(k);
            let a = Analysis::new(ideal_lattice_zn(n).map_err(|e| e.to_string())?);
            let o = zn_oracle(n);
            check!(
                o.dclk == k as i64 - 1 && o.derived == k as usize && o.sh_ring,
                "oracle disagrees for Z_{n}"
            );
            check!(labels(&a.lattice, a.points()) == o.points, "Z_{n}: points");
            check!(
                a.dclk_dimension() == k as i64 - 1,
                "Z_{n}: dclk {}",
                a.dclk_dimension()
            );
            check!(
                a.derived_dimension() == Some(k as usize),
                "Z_{n}: derived {:?}",
                a.derived_dimension()
            );
            check!(a.sh.is_sh_ring(&a.lattice), "Z_{n}: not an sh-ring");
            n_checked += 1;
        }
    }
    let dt = start.elapsed();
    check!(dt < Duration::from_secs(1), "took {dt:?}");
    Ok(format!(
        "{n_checked} rings Z_p^k: dclk k-1, derived k, sh-ring, {dt:.2?}"
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let m3 = Analysis::new(named(NamedLattice::M3));
    check!(
        brute_points(&m3.lattice).is_empty(),
        "oracle: M3 has points"
    );
    check!(
        m3.points().is_empty(),
        "M3 points {:?}",
        labels(&m3.lattice, m3.points())
    );
    check!(m3.dclk_dimension() == -1, "M3 dclk {}", m3.dclk_dimension());
    check!(
        m3.derived_dimension() == Some(0),
        "M3 derived {:?}",
        m3.derived_dimension()
    );
    let n5 = Analysis::new(named(NamedLattice::N5));
    let expect: BTreeSet<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
    let brute: ElementSet = brute_points(&n5.lattice).into_iter().collect();
    check!(labels(&n5.lattice, &brute) == expect, "oracle: N5 points");
    check!(labels(&n5.lattice, n5.points()) == expect, "N5 points");
    check!(n5.dclk_dimension() == 0, "N5 dclk {}", n5.dclk_dimension());
    check!(
        n5.derived_dimension() == Some(1),
        "N5 derived {:?}",
        n5.derived_dimension()
    );
    let dt = start.elapsed();
    check!(dt < Duration::from_secs(1), "took {dt:?}");
    Ok(format!(
        "M3 (-1, 0, X empty), N5 (X = {{a,b}}, 0, 1), {dt:.2?}"
    ))
}

const V_CLAIMS: [&str; 8] = [
    "v-empty-iff-no-point-below",
    "v-singleton-iff-minimal-point",
    "v-all-iff-contains-all-sh",
    "v-join-is-union",
    "v-meet-is-intersection",
    "v-of-underline",
    "semi-sh-iff-fixed",
    "v-determines-underline",
];

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let config = CorpusConfig {
        exhaustive: Some(5),
        rings: parse_spec_list("zn:2..60").map_err(|e| e.to_string())?,
        ..CorpusConfig::default()
    };
    let run = run_suite(&config).map_err(|e| e.to_string())?;
    let dt = start.elapsed();
    for id in V_CLAIMS {
        let t = run.tally(id).ok_or(format!("missing claim {id}"))?;
        check!(t.failed == 0, "{id}: {} failures", t.failed);
        check!(
            t.checked == run.instances,
            "{id}: checked {} of {}",
            t.checked,
            run.instances
        );
    }
    let t = run
        .tally("underline-preserves-meets")
        .ok_or("missing meet claim")?;
    check!(
        t.failed == 0,
        "underline-preserves-meets: {} failures",
        t.failed
    );
    check!(
        t.checked == run.distributive_instances,
        "meet claim checked {} instances",
        t.checked
    );
    check!(dt < Duration::from_secs(60), "took {dt:?}");
    Ok(format!(
        "{} instances, 8 V-claims 0 failures; meet claim 0/{} distributive failures, \
         fails on {} of {} non-distributive (logged), {dt:.2?}",
        run.instances,
        run.distributive_instances,
        t.outside_fails,
        t.outside_fails + t.outside_holds
    ))
}

/// Wider corpus shared by criteria 5 to 9: every lattice up to 7 elements,
/// Z_2 .. Z_200, point sets beyond the exhaustive subset limit, products of
/// non-modular lattices and seeded random lattices.
fn wide_corpus() -> Result<(CorpusConfig, Corpus, VerificationRun), String> {
    let config = CorpusConfig {
        exhaustive: Some(7),
        rings: parse_spec_list(
            "zn:2..200,chain:16,prod(chain:8,chain:8),prod(m3,n5),prod(n5,n5),prod(m3,chain:3),prod(b2,b2,b2)",
        )
        .map_err(|e| e.to_string())?,
        random_count: 200,
        random_max_size: 16,
        ..CorpusConfig::default()
    };
    let instances = config
        .build()
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|(name, lat)| (name, Analysis::new(lat)))
        .collect();
    let run = run_suite(&config).map_err(|e| e.to_string())?;
    Ok((config, instances, run))
}

fn criterion_5(corpus: &[(String, Analysis)], run: &VerificationRun) -> Outcome {
    for (name, a) in corpus {
        let t = a.sh_topology.as_ref().map_err(|e| format!("{name}: {e}"))?;
        check!(t.is_t0(), "{name}: not T0");
    }
    for id in ["sh-closed-set-axioms", "sh-topology-t0"] {
        let t = run.tally(id).ok_or(format!("missing {id}"))?;
        check!(
            t.failed == 0 && t.checked == run.instances,
            "{id}: {} failures",
            t.failed
        );
    }
    Ok(format!(
        "{} instances, 0 axiom violations, 0 T0 failures",
        corpus.len()
    ))
}

fn criterion_6(corpus: &[(String, Analysis)], run: &VerificationRun, seed: u64) -> Outcome {
    let (mut subsets, mut sampled) = (0usize, 0usize);
    for (name, a) in corpus {
        let lat = &a.lattice;
        if a.points().len() > 12 {
            sampled += 1;
        }
        for s in subsets_to_check(a.points(), seed) {
            let minimal: ElementSet = s
                .iter()
                .filter(|&x| !s.iter().any(|y| lat.lt(y, x)))
                .collect();
            check!(
                a.w_topology.isolated_points(&s) == minimal,
                "{name}: subset {:?}",
                labels(lat, &s)
            );
            subsets += 1;
        }
    }
    let t = run.tally("isolated-iff-minimal").ok_or("missing claim")?;
    check!(
        t.failed == 0 && t.checked == run.instances,
        "claim: {} failures",
        t.failed
    );
    check!(sampled > 0, "no instance exercises subset sampling");
    Ok(format!(
        "{subsets} subsets over {} instances ({sampled} sampled at 1000), 0 failures",
        corpus.len()
    ))
}

fn criterion_7(corpus: &[(String, Analysis)], run: &VerificationRun) -> Outcome {
    let mut checks = 0;
    for (name, a) in corpus {
        let lat = &a.lattice;
        let depth = a.y.levels.len().max(a.filtration.strata.len());
        for alpha in 0..depth {
            let y =
                a.y.levels
                    .get(alpha)
                    .or(a.y.levels.last())
                    .cloned()
                    .unwrap_or_default();
            let mut y_nonzero = y.clone();
            y_nonzero.remove(lat.bottom());
            let strata = (0..=alpha).fold(ElementSet::new(), |acc, b| {
                acc.union(&a.filtration.stratum(b))
            });
            check!(y_nonzero == strata, "{name}: alpha = {alpha}");
            checks += 1;
        }
    }
    let t = run.tally("strata-match-y-levels").ok_or("missing claim")?;
    check!(
        t.failed == 0 && t.checked == run.instances,
        "claim: {} failures",
        t.failed
    );
    Ok(format!(
        "{checks} levels over {} instances, 0 failures",
        corpus.len()
    ))
}

fn criterion_8(corpus: &[(String, Analysis)], run: &VerificationRun) -> Outcome {
    let mut asserted = 0;
    for (name, a) in corpus {
        if a.distributive && !a.points().is_empty() {
            check!(
                a.derived_dimension() == Some((a.dclk_dimension() + 1) as usize),
                "{name}: dclk {} derived {:?}",
                a.dclk_dimension(),
                a.derived_dimension()
            );
            asserted += 1;
        }
    }
    let t = run
        .tally("derived-equals-dclk-plus-one")
        .ok_or("missing claim")?;
    check!(t.failed == 0, "claim: {} failures", t.failed);
    let other: Vec<_> = run.observations.iter().collect();
    let bounded = other.iter().filter(|o| o.within_bounds).count();
    let exact = other.iter().filter(|o| o.derived_is_dclk_plus_one).count();
    Ok(format!(
        "{asserted} distributive instances with X nonempty exact; \
         non-distributive: {bounded}/{} within dclk <= d <= dclk+1, {exact} with d = dclk+1",
        other.len()
    ))
}

fn criterion_9(corpus: &[(String, Analysis)]) -> Outcome {
    for (name, a) in corpus {
        let oracle = brute_dclk(&a.lattice);
        check!(
            a.y.dimension == oracle,
            "{name}: Y {} oracle {oracle}",
            a.y.dimension
        );
        check!(
            a.chain_oracle == oracle,
            "{name}: library oracle {}",
            a.chain_oracle
        );
    }
    Ok(format!("{}/{} instances agree", corpus.len(), corpus.len()))
}

fn criterion_10() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_hollow"))
            .args([
                "verify",
                "--exhaustive",
                "5",
                "--seed",
                "7",
                "--format",
                "json",
            ])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    check!(
        a.status.success() && b.status.success(),
        "exit {:?} / {:?}",
        a.status,
        b.status
    );
    check!(!a.stdout.is_empty(), "empty output");
    check!(a.stdout == b.stdout, "outputs differ");
    Ok(format!("two runs, {} identical bytes", a.stdout.len()))
}

fn main() {
    let mut failed = 0;
    let mut report = |n: usize, outcome: Outcome| match outcome {
        Ok(d) => println!("criterion {n:>2} PASS  {d}"),
        Err(d) => {
            failed += 1;
            println!("criterion {n:>2} FAIL  {d}");
        }
    };
    report(1, criterion_1());
    report(2, criterion_2());
    report(3, criterion_3());
    report(4, criterion_4());
    match wide_corpus() {
        Ok((config, corpus, run)) => {
            report(5, criterion_5(&corpus, &run));
            report(6, criterion_6(&corpus, &run, config.seed));
            report(7, criterion_7(&corpus, &run));
            report(8, criterion_8(&corpus, &run));
            report(9, criterion_9(&corpus));
        }
        Err(e) => {
            for n in 5..=9 {
                report(n, Err(format!("corpus: {e}")));
            }
        }
    }
    report(10, criterion_10());
    println!("acceptance: {} of 10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
