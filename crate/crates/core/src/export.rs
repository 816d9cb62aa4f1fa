//! Graphviz DOT renderings of an analysed lattice.

use std::fmt::Write;

use crate::dimensions::Analysis;
use crate::set::ElementSet;

const PALETTE: &[&str] = &[
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
];

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn stratum_of(a: &Analysis, e: usize) -> Option<usize> {
    a.filtration.strata.iter().position(|s| s.contains(e))
}

/// Hasse diagram of the whole lattice. Edges are cover pairs only; strongly
/// hollow elements are drawn as double circles and points are filled with
/// the colour of their stratum.
pub fn hasse_dot(a: &Analysis) -> String {
    let lat = &a.lattice;
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=circle];\n");
    for e in lat.elements() {
        let mut attrs = vec![format!("label={}", quote(&lat.label(e)))];
        if a.sh.is_sh(e) {
            attrs.push("shape=doublecircle".into());
        }
        if let Some(s) = stratum_of(a, e) {
            attrs.push(format!(
                "style=filled, fillcolor={}, xlabel={}",
                quote(PALETTE[s % PALETTE.len()]),
                quote(&format!("S_{s}"))
            ));
        }
        let _ = writeln!(out, "  n{e} [{}];", attrs.join(", "));
    }
    for (x, y) in lat.cover_pairs() {
        let _ = writeln!(out, "  n{x} -> n{y};");
    }
    out.push_str("}\n");
    out
}

/// The points only, grouped into one cluster per stratum, with the covers of
/// the induced order on the points.
pub fn strata_dot(a: &Analysis) -> String {
    let lat = &a.lattice;
    let pts = a.points();
    let mut out = String::from("digraph strata {\n  rankdir=BT;\n  node [shape=box];\n");
    let k = a.filtration.strata.len();
    let note = match a.derived_dimension() {
        Some(_) if k == 0 => "strata: none (no points)".to_string(),
        Some(d) => format!("derived dimension {d}"),
        None => "not scattered".to_string(),
    };
    let _ = writeln!(out, "  label={};\n  labelloc=t;", quote(&note));
    for (s, stratum) in a.filtration.strata.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_s{s} {{");
        let _ = writeln!(out, "    label={};", quote(&format!("S_{s}")));
        for e in stratum {
            let _ = writeln!(
                out,
                "    n{e} [label={}, style=filled, fillcolor={}];",
                quote(&format!("{}\nS_{s}", lat.label(e))),
                quote(PALETTE[s % PALETTE.len()])
            );
        }
        out.push_str("  }\n");
    }
    let covered =
        |x: usize, y: usize| lat.lt(x, y) && !pts.iter().any(|z| lat.lt(x, z) && lat.lt(z, y));
    for x in pts {
        for y in pts {
            if covered(x, y) {
                let _ = writeln!(out, "  n{x} -> n{y};");
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Closed sets of the SH-topology ordered by inclusion.
pub fn topology_dot(a: &Analysis) -> Result<String, crate::topology::AxiomViolation> {
    let t = a.sh_topology.as_ref().map_err(Clone::clone)?;
    let sets = t.closed_sets();
    let name = |s: &ElementSet| {
        let parts: Vec<String> = s.iter().map(|e| a.lattice.label(e)).collect();
        format!("{{{}}}", parts.join(", "))
    };
    let mut out = String::from("digraph sh_topology {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, s) in sets.iter().enumerate() {
        let _ = writeln!(out, "  c{i} [label={}];", quote(&name(s)));
    }
    let sub = |x: &ElementSet, y: &ElementSet| x != y && x.is_subset(y);
    for (i, x) in sets.iter().enumerate() {
        for (j, y) in sets.iter().enumerate() {
            if sub(x, y) && !sets.iter().any(|z| sub(x, z) && sub(z, y)) {
                let _ = writeln!(out, "  c{i} -> c{j};");
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
