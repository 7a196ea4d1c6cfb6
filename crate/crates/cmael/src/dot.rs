//! Graphviz exports.

use std::fmt::Write;

use cmael_core::{Closure, Label, Pretableau, PseudoModel, Tableau};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(ch),
        }
    }
    out.push('"');
    out
}

fn node_label(closure: &Closure, name: &str, label: &Label) -> String {
    quote(&format!("{name}\n{}", closure.render_label(label)))
}

/// Prestates are boxes, states ellipses. Double arrows (prestate to state)
/// are drawn bold and unlabeled; marked arrows carry their mark.
pub fn pretableau(closure: &Closure, pt: &Pretableau) -> String {
    let mut out = String::from("digraph pretableau {\n  node [fontname=\"monospace\"];\n");
    for (i, p) in pt.prestates.iter().enumerate() {
        let _ = writeln!(out, "  G{i} [shape=box, label={}];", node_label(closure, &format!("G{i}"), &p.label));
    }
    for (i, s) in pt.states.iter().enumerate() {
        let style = if s.patently_inconsistent { ", color=red" } else { "" };
        let _ = writeln!(out, "  S{i} [shape=ellipse, label={}{style}];", node_label(closure, &format!("S{i}"), &s.label));
    }
    for (i, p) in pt.prestates.iter().enumerate() {
        for s in &p.states {
            let _ = writeln!(out, "  G{i} -> S{s} [style=bold, color=\"black:invis:black\"];");
        }
    }
    for (i, s) in pt.states.iter().enumerate() {
        for &(mark, g) in &s.edges {
            let _ = writeln!(out, "  S{i} -> G{g} [label={}];", quote(&closure.render(mark)));
        }
    }
    out.push_str("}\n");
    out
}

/// One digraph per elimination stage: the initial tableau, after E1, and
/// after each cycle. States removed by then are dashed and grey.
pub fn tableau_stages(closure: &Closure, t: &Tableau) -> String {
    let mut out = String::new();
    for (k, &upto) in t.stages.iter().enumerate() {
        let alive = t.replay(upto);
        let _ = writeln!(out, "digraph stage{k} {{\n  node [fontname=\"monospace\"];");
        let _ = writeln!(out, "  label={};", quote(&format!("stage {k}: {upto} removals")));
        for (s, &live) in alive.iter().enumerate() {
            let style = if live { "" } else { ", style=dashed, color=grey, fontcolor=grey" };
            let _ = writeln!(out, "  S{s} [label={}{style}];", node_label(closure, &format!("S{s}"), &t.labels[s]));
        }
        for (s, edges) in t.edges.iter().enumerate() {
            for &(mark, target) in edges {
                let style = if alive[s] && alive[target] { "" } else { ", style=dashed, color=grey" };
                let _ = writeln!(out, "  S{s} -> S{target} [label={}{style}];", quote(&closure.render(mark)));
            }
        }
        out.push_str("}\n");
    }
    out
}

/// Undirected graph with one edge per pair of distinct related states and
/// coalition. Reflexive pairs are implied.
pub fn model(m: &PseudoModel) -> String {
    let u = &m.universe;
    let mut out = String::from("graph model {\n  node [fontname=\"monospace\"];\n");
    for s in 0..m.states() {
        let atoms: Vec<&str> = m.labeling[s].iter().map(|p| &**p).collect();
        let shape = if m.root == Some(s) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  s{s} [shape={shape}, label={}];", quote(&format!("{s}: {{{}}}", atoms.join(", "))));
    }
    for c in u.coalitions() {
        if let Some(r) = m.relation(c) {
            for (s, t) in r.pairs().filter(|&(s, t)| s < t) {
                let _ = writeln!(out, "  s{s} -- s{t} [label={}];", quote(&u.coalition_key(c)));
            }
        }
    }
    out.push_str("}\n");
    out
}
