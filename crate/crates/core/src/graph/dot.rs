//! Graphviz output. Colors: `+` solid black, `−` dashed black, `0` red, `1` blue.

use std::fmt::Write;

use crate::scalar::ExactScalar;

use super::{BasisState, SculptingBigraph, SculptingDigraph};

fn edge_attrs(state: BasisState, amplitude: &ExactScalar) -> String {
    let (color, style) = match state {
        BasisState::Plus => ("black", "solid"),
        BasisState::Minus => ("black", "dashed"),
        BasisState::Zero => ("red", "solid"),
        BasisState::One => ("blue", "solid"),
    };
    let mut attrs = format!("color={color}, style={style}");
    if !amplitude.is_one() {
        write!(attrs, ", label=\"{amplitude}\"").unwrap();
    }
    attrs
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn digraph_to_dot(g: &SculptingDigraph) -> String {
    let mut out = String::from("digraph sculpting {\n");
    for v in g.vertices() {
        let shape = if v.is_ancilla() {
            "doublecircle"
        } else {
            "circle"
        };
        writeln!(out, "    {} [shape={shape}];", quote(v.label())).unwrap();
    }
    for e in g.edges() {
        writeln!(
            out,
            "    {} -> {} [{}];",
            quote(e.source.label()),
            quote(e.target.label()),
            edge_attrs(e.state, &e.amplitude)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn bigraph_to_dot(g: &SculptingBigraph) -> String {
    let mut out = String::from("graph sculpting {\n");
    for c in g.circles() {
        writeln!(
            out,
            "    {} [shape=circle];",
            quote(&format!("c:{}", c.label()))
        )
        .unwrap();
    }
    for d in g.dots() {
        writeln!(
            out,
            "    {} [shape=point, width=0.15];",
            quote(&format!("d:{d}"))
        )
        .unwrap();
    }
    for e in g.edges() {
        writeln!(
            out,
            "    {} -- {} [{}];",
            quote(&format!("c:{}", e.circle.label())),
            quote(&format!("d:{}", e.dot)),
            edge_attrs(e.state, &e.amplitude)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
