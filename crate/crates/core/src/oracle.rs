//! Independent construction of target qubit states: CZ-product graph states,
//! the closed-form star and path states, and caterpillar targets.
//!
//! Nothing in here touches the bosonic simulator, so it can serve as ground
//! truth for the sculpting pipeline.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::compiler::CaterpillarSpec;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Sparse state over `n`-qubit computational basis strings.
///
/// Basis strings are `u64` bit masks with qubit 0 in the most significant of
/// the `n` used bits, so numeric order is lexicographic string order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitState {
    n: usize,
    terms: BTreeMap<u64, ExactScalar>,
}

/// Single-qubit ket `a0|0⟩ + a1|1⟩`.
pub type Ket = [ExactScalar; 2];

pub fn ket_zero() -> Ket {
    [ExactScalar::one(), ExactScalar::zero()]
}

pub fn ket_one() -> Ket {
    [ExactScalar::zero(), ExactScalar::one()]
}

/// `|+⟩ = (|0⟩ + |1⟩)/√2`
pub fn ket_plus() -> Ket {
    [ExactScalar::inv_sqrt2(), ExactScalar::inv_sqrt2()]
}

/// `|−⟩ = (|0⟩ − |1⟩)/√2`
pub fn ket_minus() -> Ket {
    [ExactScalar::inv_sqrt2(), -ExactScalar::inv_sqrt2()]
}

impl QubitState {
    pub fn zero(n: usize) -> Self {
        QubitState {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_amplitudes(n: usize, amps: impl IntoIterator<Item = (u64, ExactScalar)>) -> Self {
        let mut terms: BTreeMap<u64, ExactScalar> = BTreeMap::new();
        for (b, c) in amps {
            *terms.entry(b).or_default() += &c;
        }
        terms.retain(|_, c| !c.is_zero());
        QubitState { n, terms }
    }

    pub fn basis(n: usize, bits: u64) -> Self {
        QubitState::from_amplitudes(n, [(bits, ExactScalar::one())])
    }

    /// Parses a bit string like `"0110"` into a basis state.
    pub fn basis_str(bits: &str) -> Result<Self> {
        let n = bits.len();
        let v = u64::from_str_radix(bits, 2)
            .map_err(|_| Error::Parse(format!("invalid bit string `{bits}`")))?;
        Ok(QubitState::basis(n, v))
    }

    /// Tensor product of single-qubit kets, qubit 0 first.
    pub fn product(kets: &[Ket]) -> Self {
        let mut state = QubitState::from_amplitudes(0, [(0, ExactScalar::one())]);
        for k in kets {
            state = state.tensor(&QubitState::from_amplitudes(
                1,
                [(0, k[0].clone()), (1, k[1].clone())],
            ));
        }
        state
    }

    /// `|+⟩^⊗n`
    pub fn plus_state(n: usize) -> Self {
        QubitState::product(&vec![ket_plus(); n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &ExactScalar)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn amplitude(&self, bits: u64) -> ExactScalar {
        self.terms.get(&bits).cloned().unwrap_or_default()
    }

    pub fn bit(&self, bits: u64, qubit: usize) -> bool {
        bits >> (self.n - 1 - qubit) & 1 == 1
    }

    pub fn bit_string(&self, bits: u64) -> String {
        (0..self.n)
            .map(|i| if self.bit(bits, i) { '1' } else { '0' })
            .collect()
    }

    pub fn tensor(&self, other: &QubitState) -> QubitState {
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                terms.insert(a << other.n | b, ca * cb);
            }
        }
        QubitState::from_amplitudes(self.n + other.n, terms)
    }

    pub fn add(&self, other: &QubitState) -> Result<QubitState> {
        if self.n != other.n {
            return Err(Error::QubitCountMismatch(self.n, other.n));
        }
        Ok(QubitState::from_amplitudes(
            self.n,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(b, c)| (*b, c.clone())),
        ))
    }

    pub fn sub(&self, other: &QubitState) -> Result<QubitState> {
        self.add(&other.scale(&ExactScalar::from_integer(-1)))
    }

    pub fn scale(&self, s: &ExactScalar) -> QubitState {
        QubitState::from_amplitudes(self.n, self.terms.iter().map(|(b, c)| (*b, c * s)))
    }

    fn check_index(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::QubitOutOfRange {
                index: q,
                n: self.n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for QubitState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})|{}⟩", self.bit_string(*b))?;
        }
        Ok(())
    }
}

/// Undirected simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        if a == b {
            return Err(Error::Structure(format!("loop at vertex {a}")));
        }
        for v in [a, b] {
            if v >= self.n {
                return Err(Error::QubitOutOfRange {
                    index: v,
                    n: self.n,
                });
            }
        }
        self.edges.insert((a.min(b), a.max(b)));
        Ok(())
    }

    pub fn with_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SimpleGraph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Star on `k` vertices with the last vertex as center.
    pub fn star(k: usize) -> Self {
        let mut g = SimpleGraph::new(k);
        for leaf in 0..k.saturating_sub(1) {
            g.edges.insert((leaf, k - 1));
        }
        g
    }

    pub fn path(len: usize) -> Self {
        let mut g = SimpleGraph::new(len);
        for v in 1..len {
            g.edges.insert((v - 1, v));
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }
}

/// `U^Z_{jk}`: negates every amplitude whose bits `j` and `k` (0-based) are both 1.
pub fn cz_apply(state: &QubitState, j: usize, k: usize) -> Result<QubitState> {
    state.check_index(j)?;
    state.check_index(k)?;
    if j == k {
        return Err(Error::Domain(format!(
            "CZ needs two distinct qubits, got {j} twice"
        )));
    }
    Ok(QubitState::from_amplitudes(
        state.n,
        state.terms.iter().map(|(b, c)| {
            if state.bit(*b, j) && state.bit(*b, k) {
                (*b, -c)
            } else {
                (*b, c.clone())
            }
        }),
    ))
}

/// Hadamard on qubit `j`: `|0⟩ ↦ |+⟩`, `|1⟩ ↦ |−⟩`.
pub fn hadamard(state: &QubitState, j: usize) -> Result<QubitState> {
    state.check_index(j)?;
    let mask = 1u64 << (state.n - 1 - j);
    let h = ExactScalar::inv_sqrt2();
    let mut out = Vec::with_capacity(state.terms.len() * 2);
    for (b, c) in &state.terms {
        let c = c * &h;
        out.push((b & !mask, c.clone()));
        if b & mask == 0 {
            out.push((b | mask, c));
        } else {
            out.push((b | mask, -c));
        }
    }
    Ok(QubitState::from_amplitudes(state.n, out))
}

/// `∏_{(j,k)∈E} U^Z_{jk} |+⟩^⊗n`.
pub fn graph_state(g: &SimpleGraph) -> QubitState {
    g.edges().fold(QubitState::plus_state(g.n), |s, (a, b)| {
        cz_apply(&s, a, b).expect("graph edges are in range")
    })
}

/// `|+⋯+0⟩ + |−⋯−1⟩` on `k` qubits; qubit `k` (last) is the center.
pub fn star_state(k: usize) -> Result<QubitState> {
    if k < 2 {
        return Err(Error::Domain(format!("star state needs k >= 2, got {k}")));
    }
    let mut a = vec![ket_plus(); k - 1];
    a.push(ket_zero());
    let mut b = vec![ket_minus(); k - 1];
    b.push(ket_one());
    QubitState::product(&a).add(&QubitState::product(&b))
}

/// `Σ_i (−1)^{Σ_k i_k i_{k+1}} |i_1 ⋯ i_L⟩`, unnormalized.
pub fn path_state(len: usize) -> Result<QubitState> {
    if len < 2 {
        return Err(Error::Domain(format!("path state needs L >= 2, got {len}")));
    }
    let probe = QubitState::zero(len);
    Ok(QubitState::from_amplitudes(
        len,
        (0..1u64 << len).map(|b| {
            let ones = (1..len)
                .filter(|&k| probe.bit(b, k - 1) && probe.bit(b, k))
                .count();
            let sign = if ones % 2 == 0 { 1 } else { -1 };
            (b, ExactScalar::from_integer(sign))
        }),
    ))
}

/// Local basis of leaf qubits in [`caterpillar_target`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeafBasis {
    Computational,
    /// Leaves conjugated by a Hadamard, the convention sculpted outputs use.
    Hadamard,
}

/// The caterpillar graph with the compiler's qubit numbering: each path
/// vertex owns a contiguous block of `leaves + 1` qubits whose last member is
/// the center. Returns the graph and the leaf indices.
pub fn caterpillar_graph(spec: &CaterpillarSpec) -> (SimpleGraph, Vec<usize>) {
    let mut g = SimpleGraph::new(spec.qubit_count());
    let mut leaves = Vec::new();
    let mut prev_center = None;
    let mut offset = 0;
    for &lambda in spec.leaf_counts() {
        let center = offset + lambda;
        for leaf in offset..center {
            g.add_edge(leaf, center).expect("in range");
            leaves.push(leaf);
        }
        if let Some(p) = prev_center {
            g.add_edge(p, center).expect("in range");
        }
        prev_center = Some(center);
        offset = center + 1;
    }
    (g, leaves)
}

pub fn caterpillar_target(spec: &CaterpillarSpec, leaf_basis: LeafBasis) -> QubitState {
    let (g, leaves) = caterpillar_graph(spec);
    let state = graph_state(&g);
    match leaf_basis {
        LeafBasis::Computational => state,
        LeafBasis::Hadamard => leaves
            .into_iter()
            .fold(state, |s, q| hadamard(&s, q).expect("leaf in range")),
    }
}

/// The unique nonzero `λ` with `a = λ·b`, if one exists.
pub fn equal_up_to_scalar(a: &QubitState, b: &QubitState) -> Option<ExactScalar> {
    if a.n != b.n || a.terms.len() != b.terms.len() || a.terms.is_empty() {
        return None;
    }
    let (first, ca) = a.terms.iter().next()?;
    let cb = b.terms.get(first)?;
    let lambda = ca.checked_div(cb).ok()?;
    a.terms
        .iter()
        .all(|(bits, c)| b.terms.get(bits).is_some_and(|d| &(d * &lambda) == c))
        .then_some(lambda)
}
