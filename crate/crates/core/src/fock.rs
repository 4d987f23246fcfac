//! Bosonic creation/annihilation algebra on modes with a two-level internal state.
//!
//! States are finite sums of unnormalized monomials
//! `c · ∏ (a†_{j,+})^{n+} (a†_{j,-})^{n-} |vac⟩`, so the ladder rule is
//! `a (a†)^n |vac⟩ = n (a†)^{n-1} |vac⟩` and all coefficients stay in Q(√2, i).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::oracle::QubitState;
use crate::scalar::ExactScalar;

/// One of the two internal basis levels `{+, −}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Plus,
    Minus,
}

impl Level {
    pub const ALL: [Level; 2] = [Level::Plus, Level::Minus];

    fn index(self) -> usize {
        match self {
            Level::Plus => 0,
            Level::Minus => 1,
        }
    }
}

/// A qubit state of the internal degree of freedom, expanded in `{+, −}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InternalState {
    plus: ExactScalar,
    minus: ExactScalar,
}

impl InternalState {
    /// Checked constructor: requires `|c+|² + |c−|² = 1` exactly.
    pub fn new(plus: ExactScalar, minus: ExactScalar) -> Result<Self> {
        let norm = plus.norm_sqr();
        let norm = ExactScalar::from_parts(norm, Default::default())
            + ExactScalar::from_parts(minus.norm_sqr(), Default::default());
        if !norm.is_one() {
            return Err(Error::NotNormalized(norm.to_string()));
        }
        Ok(InternalState { plus, minus })
    }

    pub fn plus() -> Self {
        InternalState {
            plus: ExactScalar::one(),
            minus: ExactScalar::zero(),
        }
    }

    pub fn minus() -> Self {
        InternalState {
            plus: ExactScalar::zero(),
            minus: ExactScalar::one(),
        }
    }

    /// `|0⟩ = (|+⟩ + |−⟩)/√2`
    pub fn zero() -> Self {
        InternalState {
            plus: ExactScalar::inv_sqrt2(),
            minus: ExactScalar::inv_sqrt2(),
        }
    }

    /// `|1⟩ = (|+⟩ − |−⟩)/√2`
    pub fn one() -> Self {
        InternalState {
            plus: ExactScalar::inv_sqrt2(),
            minus: -ExactScalar::inv_sqrt2(),
        }
    }

    pub fn component(&self, level: Level) -> &ExactScalar {
        match level {
            Level::Plus => &self.plus,
            Level::Minus => &self.minus,
        }
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &InternalState) -> ExactScalar {
        &self.plus.conj() * &other.plus + &self.minus.conj() * &other.minus
    }

    pub fn is_orthogonal(&self, other: &InternalState) -> bool {
        self.inner(other).is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModeKind {
    /// A qubit-carrying mode; `position` fixes its place in output bit strings.
    Qubit {
        position: usize,
    },
    Ancilla,
}

/// A spatial mode. Ordered and compared by label first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModeId {
    label: Arc<str>,
    kind: ModeKind,
}

impl ModeId {
    pub fn qubit(label: impl Into<Arc<str>>, position: usize) -> Self {
        ModeId {
            label: label.into(),
            kind: ModeKind::Qubit { position },
        }
    }

    pub fn ancilla(label: impl Into<Arc<str>>) -> Self {
        ModeId {
            label: label.into(),
            kind: ModeKind::Ancilla,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> ModeKind {
        self.kind
    }

    pub fn is_qubit(&self) -> bool {
        matches!(self.kind, ModeKind::Qubit { .. })
    }

    pub fn is_ancilla(&self) -> bool {
        self.kind == ModeKind::Ancilla
    }
}

impl PartialOrd for ModeId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ModeId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.label
            .cmp(&other.label)
            .then_with(|| self.kind.cmp(&other.kind))
    }
}

impl fmt::Display for ModeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Per-mode `(n+, n−)` occupancies, sorted by mode, with empty modes omitted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Occupancy(Vec<(ModeId, [u32; 2])>);

impl Occupancy {
    pub fn from_entries(entries: impl IntoIterator<Item = (ModeId, (u32, u32))>) -> Self {
        let mut map: BTreeMap<ModeId, [u32; 2]> = BTreeMap::new();
        for (mode, (p, m)) in entries {
            let slot = map.entry(mode).or_default();
            slot[0] += p;
            slot[1] += m;
        }
        Occupancy(map.into_iter().filter(|(_, n)| n != &[0, 0]).collect())
    }

    pub fn get(&self, mode: &ModeId) -> (u32, u32) {
        match self.0.binary_search_by(|(m, _)| m.cmp(mode)) {
            Ok(i) => (self.0[i].1[0], self.0[i].1[1]),
            Err(_) => (0, 0),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ModeId, (u32, u32))> {
        self.0.iter().map(|(m, n)| (m, (n[0], n[1])))
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|(_, n)| n[0] + n[1]).sum()
    }

    /// Removes one quantum at `(mode, level)`, returning the former occupancy.
    fn lower(&self, mode: &ModeId, level: Level) -> Option<(u32, Occupancy)> {
        let i = self.0.binary_search_by(|(m, _)| m.cmp(mode)).ok()?;
        let n = self.0[i].1[level.index()];
        if n == 0 {
            return None;
        }
        let mut next = self.0.clone();
        next[i].1[level.index()] -= 1;
        if next[i].1 == [0, 0] {
            next.remove(i);
        }
        Some((n, Occupancy(next)))
    }
}

impl fmt::Display for Occupancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mode, (p, m)) in self.iter() {
            for (n, sign) in [(p, '+'), (m, '-')] {
                if n == 0 {
                    continue;
                }
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "a†[{mode},{sign}]")?;
                if n > 1 {
                    write!(f, "^{n}")?;
                }
            }
        }
        if !first {
            f.write_str(" ")?;
        }
        f.write_str("|vac⟩")
    }
}

/// A single monomial with its coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockTerm {
    pub coefficient: ExactScalar,
    pub occupancy: Occupancy,
}

impl fmt::Display for FockTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.coefficient, self.occupancy)
    }
}

/// Canonical superposition of monomials: distinct occupancies, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FockState {
    terms: BTreeMap<Occupancy, ExactScalar>,
}

impl FockState {
    pub fn zero() -> Self {
        FockState::default()
    }

    pub fn vacuum() -> Self {
        FockState::from_terms([FockTerm {
            coefficient: ExactScalar::one(),
            occupancy: Occupancy::default(),
        }])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = FockTerm>) -> Self {
        let mut state = FockState::zero();
        for t in terms {
            state.accumulate(t.occupancy, &t.coefficient);
        }
        state.canonicalize();
        state
    }

    fn accumulate(&mut self, occ: Occupancy, c: &ExactScalar) {
        *self.terms.entry(occ).or_default() += c;
    }

    fn canonicalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, occ: &Occupancy) -> ExactScalar {
        self.terms.get(occ).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Occupancy, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn to_terms(&self) -> Vec<FockTerm> {
        self.terms
            .iter()
            .map(|(o, c)| FockTerm {
                coefficient: c.clone(),
                occupancy: o.clone(),
            })
            .collect()
    }

    pub fn add(&self, other: &FockState) -> FockState {
        let mut out = self.clone();
        for (o, c) in &other.terms {
            out.accumulate(o.clone(), c);
        }
        out.canonicalize();
        out
    }

    pub fn scale(&self, s: &ExactScalar) -> FockState {
        if s.is_zero() {
            return FockState::zero();
        }
        FockState {
            terms: self.terms.iter().map(|(o, c)| (o.clone(), c * s)).collect(),
        }
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (o, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "({c}) {o}")?;
        }
        Ok(())
    }
}

/// One summand `amplitude · â_{mode, state}` of an annihilation operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub mode: ModeId,
    pub state: InternalState,
    pub amplitude: ExactScalar,
}

/// `Σ_j α_j â_{j,ψ_j}`: one factor of a sculpting operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilationOp {
    summands: Vec<Summand>,
}

impl AnnihilationOp {
    pub fn new(summands: Vec<Summand>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::Structure(
                "annihilation operator with no summands".into(),
            ));
        }
        if let Some(s) = summands.iter().find(|s| s.amplitude.is_zero()) {
            return Err(Error::Structure(format!(
                "zero amplitude on mode `{}`",
                s.mode
            )));
        }
        Ok(AnnihilationOp { summands })
    }

    pub fn single(mode: ModeId, state: InternalState, amplitude: ExactScalar) -> Result<Self> {
        AnnihilationOp::new(vec![Summand {
            mode,
            state,
            amplitude,
        }])
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }
}

/// Ordered product of annihilation operators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SculptingOperator {
    pub factors: Vec<AnnihilationOp>,
}

impl SculptingOperator {
    pub fn new(factors: Vec<AnnihilationOp>) -> Self {
        SculptingOperator { factors }
    }
}

/// The symmetric starting state: `(1,1)` per qubit mode, `(1,0)` per ancilla.
pub fn initial_state(modes: &[ModeId]) -> Result<FockState> {
    let mut seen = BTreeSet::new();
    for m in modes {
        if !seen.insert(m.label()) {
            return Err(Error::DuplicateMode(m.label().to_string()));
        }
    }
    let occ = Occupancy::from_entries(modes.iter().map(|m| {
        let n = if m.is_ancilla() { (1, 0) } else { (1, 1) };
        (m.clone(), n)
    }));
    Ok(FockState::from_terms([FockTerm {
        coefficient: ExactScalar::one(),
        occupancy: occ,
    }]))
}

/// `â_{mode,level}` applied to every term.
pub fn apply_single(mode: &ModeId, level: Level, state: &FockState) -> FockState {
    let mut out = FockState::zero();
    for (occ, c) in &state.terms {
        if let Some((n, next)) = occ.lower(mode, level) {
            out.accumulate(next, &c.scale_int(n as i64));
        }
    }
    out.canonicalize();
    out
}

/// `Σ α · Σ_level conj(ψ_level) · â_{mode,level}` applied to `state`.
pub fn apply_annihilation(op: &AnnihilationOp, state: &FockState) -> FockState {
    let mut out = FockState::zero();
    // Weights per (mode, level), summed over summands on the same mode.
    let mut weights: Vec<(&ModeId, Level, ExactScalar)> = Vec::new();
    for s in &op.summands {
        for level in Level::ALL {
            let w = &s.amplitude * &s.state.component(level).conj();
            if w.is_zero() {
                continue;
            }
            match weights
                .iter_mut()
                .find(|(m, l, _)| *m == &s.mode && *l == level)
            {
                Some(slot) => slot.2 += &w,
                None => weights.push((&s.mode, level, w)),
            }
        }
    }
    for (occ, c) in &state.terms {
        for (mode, level, w) in &weights {
            if w.is_zero() {
                continue;
            }
            if let Some((n, next)) = occ.lower(mode, *level) {
                let mut k = c * w;
                if n > 1 {
                    k = k.scale_int(n as i64);
                }
                out.accumulate(next, &k);
            }
        }
    }
    out.canonicalize();
    out
}

/// Applies the product, rightmost factor first. Annihilators commute, so the
/// order only affects intermediate sizes; for compiled schemes this one keeps
/// them several times smaller than left to right.
pub fn apply_sculpting(op: &SculptingOperator, state: &FockState) -> FockState {
    op.factors
        .iter()
        .rev()
        .fold(state.clone(), |acc, f| apply_annihilation(f, &acc))
}

/// True iff every term has exactly one boson per qubit mode and none in any ancilla.
pub fn check_no_bunching(
    state: &FockState,
    qubit_modes: &[ModeId],
    ancilla_modes: &[ModeId],
) -> bool {
    state.terms.keys().all(|occ| {
        qubit_modes.iter().all(|m| {
            let (p, n) = occ.get(m);
            p + n == 1
        }) && ancilla_modes.iter().all(|m| occ.get(m) == (0, 0))
    })
}

/// Rewrites a no-bunching state in the computational `{0,1}` basis, with
/// `a†_+ = (a†_0 + a†_1)/√2` and `a†_− = (a†_0 − a†_1)/√2`.
pub fn to_qubit_state(state: &FockState, ordered_qubit_modes: &[ModeId]) -> Result<QubitState> {
    let n = ordered_qubit_modes.len();
    if n > 64 {
        return Err(Error::Domain(format!(
            "{n} qubits exceed the 64-qubit limit"
        )));
    }
    // Bit i of `pattern` (MSB-first) records a `−` boson on qubit i.
    let mut levels: BTreeMap<u64, ExactScalar> = BTreeMap::new();
    for (occ, c) in &state.terms {
        let mut pattern = 0u64;
        for (i, m) in ordered_qubit_modes.iter().enumerate() {
            let bit = match occ.get(m) {
                (1, 0) => 0,
                (0, 1) => 1,
                _ => return Err(Error::Bunched(format!("({c}) {occ}"))),
            };
            pattern |= bit << (n - 1 - i);
        }
        if occ.total() as usize != n {
            return Err(Error::Bunched(format!("({c}) {occ}")));
        }
        *levels.entry(pattern).or_default() += c;
    }
    // Per-qubit butterfly: |+⟩ ↦ |0⟩ + |1⟩, |−⟩ ↦ |0⟩ − |1⟩, rescaled by (1/√2)^n at the end.
    let mut amps = levels;
    for i in 0..n {
        let bit = 1u64 << (n - 1 - i);
        let mut next: BTreeMap<u64, ExactScalar> = BTreeMap::new();
        for (pattern, c) in amps {
            let base = pattern & !bit;
            *next.entry(base).or_default() += &c;
            if pattern & bit == 0 {
                *next.entry(base | bit).or_default() += &c;
            } else {
                *next.entry(base | bit).or_default() -= &c;
            }
        }
        amps = next;
    }
    let norm = ExactScalar::inv_sqrt2_pow(n as u32);
    Ok(QubitState::from_amplitudes(
        n,
        amps.into_iter().map(|(b, c)| (b, &c * &norm)),
    ))
}
