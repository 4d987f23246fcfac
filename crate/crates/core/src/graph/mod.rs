//! Sculpting bigraphs and digraphs.
//!
//! A digraph edge `Y → X` with amplitude `α` and color `s` stands for the
//! summand `α·â_{Y,s}` inside the dot owned by vertex `X`. Equivalently, the
//! adjacency entry at row `X`, column `Y` feeds `X`'s dot.

mod checks;
mod dot;
mod pm;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use checks::{
    check_epm, check_genuine_conditions, is_strongly_connected, CircleForm, EpmReport,
    GenuineReport,
};
pub use dot::{bigraph_to_dot, digraph_to_dot};
pub use pm::{enumerate_directed_pms, permanent, support_permanent, DirectedPM};

use crate::error::{Error, Result};
use crate::fock::{AnnihilationOp, InternalState, ModeId, SculptingOperator, Summand};
use crate::scalar::ExactScalar;

/// The four internal states used as edge colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisState {
    /// solid black
    Plus,
    /// dashed black
    Minus,
    /// red
    Zero,
    /// blue
    One,
}

impl BasisState {
    pub const ALL: [BasisState; 4] = [
        BasisState::Plus,
        BasisState::Minus,
        BasisState::Zero,
        BasisState::One,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            BasisState::Plus => "+",
            BasisState::Minus => "-",
            BasisState::Zero => "0",
            BasisState::One => "1",
        }
    }

    pub fn from_symbol(s: &str) -> Result<Self> {
        BasisState::ALL
            .into_iter()
            .find(|b| b.symbol() == s)
            .ok_or_else(|| Error::Parse(format!("unknown internal state `{s}`")))
    }

    pub fn internal(self) -> InternalState {
        match self {
            BasisState::Plus => InternalState::plus(),
            BasisState::Minus => InternalState::minus(),
            BasisState::Zero => InternalState::zero(),
            BasisState::One => InternalState::one(),
        }
    }

    pub fn from_internal(state: &InternalState) -> Option<Self> {
        BasisState::ALL.into_iter().find(|b| &b.internal() == state)
    }

    pub fn is_orthogonal(self, other: BasisState) -> bool {
        use BasisState::*;
        matches!(
            (self, other),
            (Plus, Minus) | (Minus, Plus) | (Zero, One) | (One, Zero)
        )
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiEdge {
    pub source: ModeId,
    pub target: ModeId,
    pub amplitude: ExactScalar,
    pub state: BasisState,
}

impl DiEdge {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

type EdgeKey = (ModeId, ModeId, BasisState);

/// Weighted, colored digraph; loops allowed, at most one edge per
/// `(source, target, state)`. Vertex order is insertion order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SculptingDigraph {
    vertices: Vec<ModeId>,
    // keyed by (target, source, state)
    edges: BTreeMap<EdgeKey, ExactScalar>,
}

impl SculptingDigraph {
    pub fn new(vertices: Vec<ModeId>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.label()) {
                return Err(Error::DuplicateMode(v.label().to_string()));
            }
        }
        Ok(SculptingDigraph {
            vertices,
            edges: BTreeMap::new(),
        })
    }

    pub fn add_vertex(&mut self, v: ModeId) -> Result<()> {
        if self.vertices.iter().any(|w| w.label() == v.label()) {
            return Err(Error::DuplicateMode(v.label().to_string()));
        }
        self.vertices.push(v);
        Ok(())
    }

    pub fn add_edge(
        &mut self,
        source: &ModeId,
        target: &ModeId,
        amplitude: ExactScalar,
        state: BasisState,
    ) -> Result<()> {
        for v in [source, target] {
            if !self.vertices.contains(v) {
                return Err(Error::UnknownMode(v.label().to_string()));
            }
        }
        if amplitude.is_zero() {
            return Err(Error::Structure(format!(
                "zero-amplitude edge {source} -> {target}"
            )));
        }
        let key = (target.clone(), source.clone(), state);
        if self.edges.contains_key(&key) {
            return Err(Error::Structure(format!(
                "duplicate edge {source} -> {target} in state {state}"
            )));
        }
        self.edges.insert(key, amplitude);
        Ok(())
    }

    pub fn remove_edge(
        &mut self,
        source: &ModeId,
        target: &ModeId,
        state: BasisState,
    ) -> Option<ExactScalar> {
        self.edges.remove(&(target.clone(), source.clone(), state))
    }

    pub fn vertices(&self) -> &[ModeId] {
        &self.vertices
    }

    pub fn vertex(&self, label: &str) -> Option<&ModeId> {
        self.vertices.iter().find(|v| v.label() == label)
    }

    pub fn index_of(&self, v: &ModeId) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by `(target, source, state)`.
    pub fn edges(&self) -> impl Iterator<Item = DiEdge> + '_ {
        self.edges.iter().map(|((t, s, st), a)| DiEdge {
            source: s.clone(),
            target: t.clone(),
            amplitude: a.clone(),
            state: *st,
        })
    }

    pub fn incoming<'a>(&'a self, v: &'a ModeId) -> impl Iterator<Item = DiEdge> + 'a {
        self.edges().filter(move |e| &e.target == v)
    }

    pub fn loops<'a>(&'a self, v: &'a ModeId) -> impl Iterator<Item = DiEdge> + 'a {
        self.incoming(v).filter(|e| e.is_loop())
    }

    pub fn has_loop(&self, v: &ModeId) -> bool {
        self.loops(v).next().is_some()
    }

    pub fn qubit_modes(&self) -> Vec<ModeId> {
        let mut q: Vec<ModeId> = self
            .vertices
            .iter()
            .filter(|v| v.is_qubit())
            .cloned()
            .collect();
        q.sort_by_key(|m| match m.kind() {
            crate::fock::ModeKind::Qubit { position } => position,
            crate::fock::ModeKind::Ancilla => usize::MAX,
        });
        q
    }

    pub fn ancilla_modes(&self) -> Vec<ModeId> {
        self.vertices
            .iter()
            .filter(|v| v.is_ancilla())
            .cloned()
            .collect()
    }

    /// 0/1 support: `m[x][y]` iff some edge `y → x` exists.
    pub fn support_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.vertices.len();
        let mut m = vec![vec![false; n]; n];
        for e in self.edges() {
            let x = self
                .index_of(&e.target)
                .expect("edge endpoints are vertices");
            let y = self
                .index_of(&e.source)
                .expect("edge endpoints are vertices");
            m[x][y] = true;
        }
        m
    }

    /// Weighted adjacency `m[x][y] = Σ` amplitudes of edges `y → x` (all colors).
    pub fn weight_matrix(&self) -> Vec<Vec<ExactScalar>> {
        let n = self.vertices.len();
        let mut m = vec![vec![ExactScalar::zero(); n]; n];
        for e in self.edges() {
            let x = self
                .index_of(&e.target)
                .expect("edge endpoints are vertices");
            let y = self
                .index_of(&e.source)
                .expect("edge endpoints are vertices");
            m[x][y] += &e.amplitude;
        }
        m
    }
}

/// Identifier of a dot (an unlabelled bigraph vertex).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DotId(pub String);

impl fmt::Display for DotId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiEdge {
    pub circle: ModeId,
    pub dot: DotId,
    pub amplitude: ExactScalar,
    pub state: BasisState,
}

/// Bipartite graph between circles (modes) and dots (operator factors).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SculptingBigraph {
    circles: Vec<ModeId>,
    dots: Vec<DotId>,
    // keyed by (dot, circle, state)
    edges: BTreeMap<(DotId, ModeId, BasisState), ExactScalar>,
}

impl SculptingBigraph {
    pub fn new(circles: Vec<ModeId>, dots: Vec<DotId>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in &circles {
            if !seen.insert(c.label()) {
                return Err(Error::DuplicateMode(c.label().to_string()));
            }
        }
        let mut seen = BTreeSet::new();
        for d in &dots {
            if !seen.insert(d) {
                return Err(Error::Structure(format!("duplicate dot `{d}`")));
            }
        }
        Ok(SculptingBigraph {
            circles,
            dots,
            edges: BTreeMap::new(),
        })
    }

    pub fn add_edge(
        &mut self,
        circle: &ModeId,
        dot: &DotId,
        amplitude: ExactScalar,
        state: BasisState,
    ) -> Result<()> {
        if !self.circles.contains(circle) {
            return Err(Error::UnknownMode(circle.label().to_string()));
        }
        if !self.dots.contains(dot) {
            return Err(Error::Structure(format!("unknown dot `{dot}`")));
        }
        if amplitude.is_zero() {
            return Err(Error::Structure(format!(
                "zero-amplitude edge {circle} -- {dot}"
            )));
        }
        let key = (dot.clone(), circle.clone(), state);
        if self.edges.contains_key(&key) {
            return Err(Error::Structure(format!(
                "duplicate edge {circle} -- {dot} in state {state}"
            )));
        }
        self.edges.insert(key, amplitude);
        Ok(())
    }

    pub fn circles(&self) -> &[ModeId] {
        &self.circles
    }

    pub fn dots(&self) -> &[DotId] {
        &self.dots
    }

    pub fn is_balanced(&self) -> bool {
        self.circles.len() == self.dots.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges sorted by `(dot, circle, state)`.
    pub fn edges(&self) -> impl Iterator<Item = BiEdge> + '_ {
        self.edges.iter().map(|((d, c, s), a)| BiEdge {
            circle: c.clone(),
            dot: d.clone(),
            amplitude: a.clone(),
            state: *s,
        })
    }

    pub fn incident<'a>(&'a self, circle: &'a ModeId) -> impl Iterator<Item = BiEdge> + 'a {
        self.edges().filter(move |e| &e.circle == circle)
    }

    /// One factor per dot, in dot order.
    pub fn to_operator(&self) -> Result<SculptingOperator> {
        let factors = self
            .dots
            .iter()
            .map(|d| {
                let summands: Vec<Summand> = self
                    .edges()
                    .filter(|e| &e.dot == d)
                    .map(|e| Summand {
                        mode: e.circle,
                        state: e.state.internal(),
                        amplitude: e.amplitude,
                    })
                    .collect();
                AnnihilationOp::new(summands)
                    .map_err(|_| Error::Structure(format!("dot `{d}` has no edges")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SculptingOperator::new(factors))
    }
}

/// Fuses each dot with its owning circle; edge `(i, j')` becomes `i → owner(j')`.
pub fn bigraph_to_digraph(
    g: &SculptingBigraph,
    dot_owner: &BTreeMap<DotId, ModeId>,
) -> Result<SculptingDigraph> {
    if !g.is_balanced() {
        return Err(Error::Structure(format!(
            "unbalanced bigraph: {} circles, {} dots",
            g.circles.len(),
            g.dots.len()
        )));
    }
    let owners: BTreeSet<&ModeId> = dot_owner.values().collect();
    let bijective = dot_owner.len() == g.dots.len()
        && g.dots.iter().all(|d| dot_owner.contains_key(d))
        && owners.len() == g.circles.len()
        && g.circles.iter().all(|c| owners.contains(c));
    if !bijective {
        return Err(Error::Structure(
            "dot ownership is not a bijection onto circles".into(),
        ));
    }
    let mut d = SculptingDigraph::new(g.circles.clone())?;
    for e in g.edges() {
        d.add_edge(&e.circle, &dot_owner[&e.dot], e.amplitude, e.state)?;
    }
    Ok(d)
}

/// Inverse of [`bigraph_to_digraph`] with the identity pairing: vertex `X`
/// splits into circle `X` and dot `X`.
pub fn digraph_to_bigraph(g: &SculptingDigraph) -> SculptingBigraph {
    let dots = g
        .vertices
        .iter()
        .map(|v| DotId(v.label().to_string()))
        .collect();
    let mut b = SculptingBigraph::new(g.vertices.clone(), dots).expect("digraph labels are unique");
    for e in g.edges() {
        b.add_edge(
            &e.source,
            &DotId(e.target.label().to_string()),
            e.amplitude,
            e.state,
        )
        .expect("edges are unique per key");
    }
    b
}

/// The pairing used by [`digraph_to_bigraph`]: dot `X` is owned by circle `X`.
pub fn identity_owner(g: &SculptingBigraph) -> BTreeMap<DotId, ModeId> {
    g.circles
        .iter()
        .map(|c| (DotId(c.label().to_string()), c.clone()))
        .collect()
}

/// One factor per vertex, in vertex order: `Σ_{Y → X} α·â_{Y,s}`.
pub fn digraph_to_operator(g: &SculptingDigraph) -> Result<SculptingOperator> {
    let factors = g
        .vertices
        .iter()
        .map(|v| dot_operator(g, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(SculptingOperator::new(factors))
}

/// The factor owned by vertex `v`.
pub fn dot_operator(g: &SculptingDigraph, v: &ModeId) -> Result<AnnihilationOp> {
    let summands: Vec<Summand> = g
        .incoming(v)
        .map(|e| Summand {
            mode: e.source,
            state: e.state.internal(),
            amplitude: e.amplitude,
        })
        .collect();
    if summands.is_empty() {
        return Err(Error::Structure(format!(
            "vertex `{v}` has no incoming edge; its dot would be the zero operator"
        )));
    }
    AnnihilationOp::new(summands)
}

/// Rebuilds a digraph from an operator whose `i`-th factor belongs to `vertices[i]`.
pub fn operator_to_digraph(
    vertices: &[ModeId],
    op: &SculptingOperator,
) -> Result<SculptingDigraph> {
    if vertices.len() != op.factors.len() {
        return Err(Error::Structure(format!(
            "{} vertices for {} factors",
            vertices.len(),
            op.factors.len()
        )));
    }
    let mut g = SculptingDigraph::new(vertices.to_vec())?;
    for (owner, factor) in vertices.iter().zip(&op.factors) {
        for s in factor.summands() {
            let state = BasisState::from_internal(&s.state).ok_or_else(|| {
                Error::Structure(format!("summand on `{}` is not a basis color", s.mode))
            })?;
            g.add_edge(&s.mode, owner, s.amplitude.clone(), state)?;
        }
    }
    Ok(g)
}
