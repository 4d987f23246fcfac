//! Structural checks: strong connectivity, the digraph-level necessary
//! conditions for genuine entanglement, and EPM circle forms.

use std::collections::BTreeSet;

use crate::fock::{apply_sculpting, check_no_bunching, initial_state, ModeId};

use super::{BasisState, SculptingBigraph, SculptingDigraph};

/// True iff every vertex reaches every other one (loops are irrelevant).
pub fn is_strongly_connected(g: &SculptingDigraph) -> bool {
    let n = g.vertices().len();
    if n <= 1 {
        return true;
    }
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for e in g.edges().filter(|e| !e.is_loop()) {
        let s = g.index_of(&e.source).expect("vertex");
        let t = g.index_of(&e.target).expect("vertex");
        fwd[s].push(t);
        bwd[t].push(s);
    }
    let reach_all = |adj: &[Vec<usize>]| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach_all(&fwd) && reach_all(&bwd)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenuineReport {
    /// Per qubit vertex: has at least two incoming edges (loops included) of different colors.
    pub per_vertex_color_ok: Vec<(ModeId, bool)>,
    /// Ancilla vertices belong to the colorless central path and carry no
    /// output qubit, so the color condition does not apply to them.
    pub exempt_ancillas: Vec<ModeId>,
    pub strongly_connected: bool,
}

impl GenuineReport {
    /// Both necessary conditions hold. Not a certificate of genuine entanglement.
    pub fn pass(&self) -> bool {
        self.strongly_connected && self.per_vertex_color_ok.iter().all(|(_, ok)| *ok)
    }
}

pub fn check_genuine_conditions(g: &SculptingDigraph) -> GenuineReport {
    let per_vertex_color_ok = g
        .vertices()
        .iter()
        .filter(|v| v.is_qubit())
        .map(|v| {
            let colors: BTreeSet<BasisState> = g.incoming(v).map(|e| e.state).collect();
            (v.clone(), colors.len() >= 2)
        })
        .collect();
    GenuineReport {
        per_vertex_color_ok,
        exempt_ancillas: g.ancilla_modes(),
        strongly_connected: is_strongly_connected(g),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircleForm {
    /// Exactly two incident edges in orthogonal states.
    OrthogonalPair,
    /// One or more incident edges, all in the same state.
    Uniform,
    Nonconforming,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpmReport {
    pub circles: Vec<(ModeId, CircleForm)>,
    /// Simulated no-bunching result, when requested.
    pub semantic: Option<bool>,
}

impl EpmReport {
    pub fn pass(&self) -> bool {
        self.circles
            .iter()
            .all(|(_, f)| *f != CircleForm::Nonconforming)
    }
}

fn classify(states: &[BasisState]) -> CircleForm {
    match states {
        [] => CircleForm::Nonconforming,
        [a, b] if a.is_orthogonal(*b) => CircleForm::OrthogonalPair,
        [first, rest @ ..] if rest.iter().all(|s| s == first) => CircleForm::Uniform,
        _ => CircleForm::Nonconforming,
    }
}

/// Classifies every circle; with `semantic`, also simulates the bigraph's
/// operator on the initial state and records the no-bunching outcome.
pub fn check_epm(g: &SculptingBigraph, semantic: bool) -> EpmReport {
    let circles = g
        .circles()
        .iter()
        .map(|c| {
            let states: Vec<BasisState> = g.incident(c).map(|e| e.state).collect();
            (c.clone(), classify(&states))
        })
        .collect();
    let semantic = semantic.then(|| {
        let Ok(op) = g.to_operator() else {
            return false;
        };
        let Ok(init) = initial_state(g.circles()) else {
            return false;
        };
        let out = apply_sculpting(&op, &init);
        let (q, a): (Vec<ModeId>, Vec<ModeId>) =
            g.circles().iter().cloned().partition(|m| m.is_qubit());
        check_no_bunching(&out, &q, &a)
    });
    EpmReport { circles, semantic }
}
