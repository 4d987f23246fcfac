//! End-to-end checks: compile, simulate, project to qubits, compare with the
//! graph-state oracle; plus the perfect-matching decomposition cross-check.

use crate::compiler::{compile, ghz_bigraph, operator_of, CaterpillarSpec, CompiledScheme};
use crate::error::Result;
use crate::fock::{
    apply_sculpting, check_no_bunching, initial_state, to_qubit_state, AnnihilationOp, FockState,
    ModeId, SculptingOperator,
};
use crate::graph::{
    bigraph_to_digraph, check_genuine_conditions, dot_operator, enumerate_directed_pms,
    identity_owner, DirectedPM, SculptingDigraph,
};
use crate::oracle::{caterpillar_target, equal_up_to_scalar, LeafBasis, QubitState};
use crate::scalar::ExactScalar;

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub scheme: CompiledScheme,
    pub fock_final: FockState,
    /// `None` when the output is bunched.
    pub qubit_state: Option<QubitState>,
    pub no_bunching: bool,
    pub target: QubitState,
    /// `λ` with `qubit_state = λ·target`.
    pub oracle_match: Option<ExactScalar>,
    pub pm_count: usize,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.no_bunching && self.oracle_match.is_some()
    }
}

pub fn run_pipeline(spec: &CaterpillarSpec) -> Result<PipelineReport> {
    let scheme = compile(spec)?;
    let op = operator_of(&scheme)?;
    let init = initial_state(scheme.digraph.vertices())?;
    let fock_final = apply_sculpting(&op, &init);
    let no_bunching = check_no_bunching(&fock_final, &scheme.qubit_order, &scheme.ancilla_order);
    let qubit_state = if no_bunching {
        Some(to_qubit_state(&fock_final, &scheme.qubit_order)?)
    } else {
        None
    };
    let target = caterpillar_target(spec, LeafBasis::Hadamard);
    let oracle_match = qubit_state
        .as_ref()
        .and_then(|q| equal_up_to_scalar(q, &target));
    let pm_count = enumerate_directed_pms(&scheme.digraph).len();
    Ok(PipelineReport {
        scheme,
        fock_final,
        qubit_state,
        no_bunching,
        target,
        oracle_match,
        pm_count,
    })
}

/// The operator with each vertex's dot restricted to the summands coming from
/// the vertex the matching assigns to it.
pub fn restricted_operator(g: &SculptingDigraph, pm: &DirectedPM) -> Result<SculptingOperator> {
    let vs = g.vertices();
    let factors = vs
        .iter()
        .enumerate()
        .map(|(x, v)| {
            let full = dot_operator(g, v)?;
            let src = &vs[pm.sources[x]];
            AnnihilationOp::new(
                full.summands()
                    .iter()
                    .filter(|s| &s.mode == src)
                    .cloned()
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SculptingOperator::new(factors))
}

/// Per-matching contributions: each directed PM's restricted operator applied
/// to the initial state.
pub fn pm_summands(g: &SculptingDigraph) -> Result<Vec<(DirectedPM, FockState)>> {
    let init = initial_state(g.vertices())?;
    enumerate_directed_pms(g)
        .into_iter()
        .map(|pm| {
            let op = restricted_operator(g, &pm)?;
            Ok((pm, apply_sculpting(&op, &init)))
        })
        .collect()
}

/// Sum of [`pm_summands`].
pub fn pm_expansion(g: &SculptingDigraph) -> Result<FockState> {
    Ok(pm_summands(g)?
        .iter()
        .fold(FockState::zero(), |acc, (_, s)| acc.add(s)))
}

pub fn pm_expansion_state(scheme: &CompiledScheme) -> Result<FockState> {
    pm_expansion(&scheme.digraph)
}

#[derive(Clone, Debug)]
pub struct GhzReport {
    pub n: usize,
    pub qubit_state: Option<QubitState>,
    pub pm_count: usize,
    /// `σ` with output `∝ |0…0⟩ + σ|1…1⟩`; `None` if the output is not of that form.
    pub sign: Option<i8>,
    pub genuine_conditions: bool,
}

impl GhzReport {
    pub fn two_term(&self) -> bool {
        self.sign.is_some()
    }
}

pub fn run_ghz(n: usize) -> Result<GhzReport> {
    let b = ghz_bigraph(n, true)?;
    let g = bigraph_to_digraph(&b, &identity_owner(&b))?;
    let op = b.to_operator()?;
    let qubits: Vec<ModeId> = b.circles().to_vec();
    let out = apply_sculpting(&op, &initial_state(&qubits)?);
    let qubit_state = if check_no_bunching(&out, &qubits, &[]) {
        Some(to_qubit_state(&out, &qubits)?)
    } else {
        None
    };
    let sign = qubit_state.as_ref().and_then(|q| {
        let all_ones = (1u64 << n) - 1;
        let plus = QubitState::basis(n, 0)
            .add(&QubitState::basis(n, all_ones))
            .ok()?;
        let minus = QubitState::basis(n, 0)
            .sub(&QubitState::basis(n, all_ones))
            .ok()?;
        if equal_up_to_scalar(q, &plus).is_some() {
            Some(1)
        } else if equal_up_to_scalar(q, &minus).is_some() {
            Some(-1)
        } else {
            None
        }
    });
    Ok(GhzReport {
        n,
        qubit_state,
        pm_count: enumerate_directed_pms(&g).len(),
        sign,
        genuine_conditions: check_genuine_conditions(&g).pass(),
    })
}
