//! Caterpillar specification → sculpting digraph → sculpting operator.
//!
//! 1. Take the central path digraph `P^(m−1)` for `m` path vertices.
//! 2. Replace the loop of `A_j` by a chain of `K_j = λ_j + 1` qubits.
//! 3. Number the qubits left to right, one contiguous block per path vertex.

use std::fmt;
use std::str::FromStr;

use crate::central_path::{
    ancilla_label, path_digraph, replace_loop_with_star, CentralPathMatrix, CENTER_LABEL,
};
use crate::error::{Error, Result};
use crate::fock::{ModeId, SculptingOperator};
use crate::graph::{
    digraph_to_bigraph, dot_operator, BasisState, DotId, SculptingBigraph, SculptingDigraph,
};
use crate::scalar::ExactScalar;

/// Leaf counts `[λ_1, …, λ_m]` along the central path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CaterpillarSpec {
    leaf_counts: Vec<usize>,
}

impl CaterpillarSpec {
    pub fn new(leaf_counts: Vec<usize>) -> Result<Self> {
        if leaf_counts.is_empty() {
            return Err(Error::Domain(
                "caterpillar needs at least one path vertex".into(),
            ));
        }
        Ok(CaterpillarSpec { leaf_counts })
    }

    pub fn leaf_counts(&self) -> &[usize] {
        &self.leaf_counts
    }

    pub fn path_vertices(&self) -> usize {
        self.leaf_counts.len()
    }

    /// Star sizes `K_j = λ_j + 1`.
    pub fn star_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.leaf_counts.iter().map(|l| l + 1)
    }

    pub fn qubit_count(&self) -> usize {
        self.star_sizes().sum()
    }
}

impl FromStr for CaterpillarSpec {
    type Err = Error;

    /// Comma-separated leaf counts, e.g. `"2,0,4"`.
    fn from_str(s: &str) -> Result<Self> {
        let counts = s
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|_| {
                    Error::Parse(format!("invalid leaf count `{}` in `{s}`", t.trim()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CaterpillarSpec::new(counts)
    }
}

impl fmt::Display for CaterpillarSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.leaf_counts.iter().map(|l| l.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledScheme {
    pub digraph: SculptingDigraph,
    /// Qubits `1..=N` in output order.
    pub qubit_order: Vec<ModeId>,
    /// `C, A1, …, Am`.
    pub ancilla_order: Vec<ModeId>,
    pub source_spec: CaterpillarSpec,
}

impl CompiledScheme {
    pub fn mode_count(&self) -> usize {
        self.qubit_order.len() + self.ancilla_order.len()
    }

    /// Two bosons per qubit mode, one per ancilla.
    pub fn initial_boson_count(&self) -> usize {
        2 * self.qubit_order.len() + self.ancilla_order.len()
    }

    /// Vertices whose dots form the operator, in factor order:
    /// qubits, then `A1…Am`, then `C`.
    pub fn factor_order(&self) -> Vec<ModeId> {
        let mut order = self.qubit_order.clone();
        order.extend(self.ancilla_order[1..].iter().cloned());
        order.push(self.ancilla_order[0].clone());
        order
    }

    pub fn bigraph(&self) -> SculptingBigraph {
        digraph_to_bigraph(&self.digraph)
    }
}

pub fn compile(spec: &CaterpillarSpec) -> Result<CompiledScheme> {
    let m = spec.path_vertices();
    let mut g = if m == 1 {
        CentralPathMatrix::degenerate().to_digraph()
    } else {
        path_digraph(m - 1)?
    };
    let mut qubit_order = Vec::with_capacity(spec.qubit_count());
    for (j, k) in spec.star_sizes().enumerate() {
        let qubits: Vec<ModeId> = (0..k)
            .map(|_| {
                let pos = qubit_order.len();
                let q = ModeId::qubit((pos + 1).to_string(), pos);
                qubit_order.push(q.clone());
                q
            })
            .collect();
        g = replace_loop_with_star(&g, &ModeId::ancilla(ancilla_label(j + 1)), &qubits)?;
    }
    let ancilla_order = std::iter::once(ModeId::ancilla(CENTER_LABEL))
        .chain((1..=m).map(|j| ModeId::ancilla(ancilla_label(j))))
        .collect();
    Ok(CompiledScheme {
        digraph: g,
        qubit_order,
        ancilla_order,
        source_spec: spec.clone(),
    })
}

pub fn operator_of(scheme: &CompiledScheme) -> Result<SculptingOperator> {
    let factors = scheme
        .factor_order()
        .iter()
        .map(|v| dot_operator(&scheme.digraph, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(SculptingOperator::new(factors))
}

/// GHZ bigraph on `n` qubit circles: dot `l` joins circle `l` in state `0`
/// with weight `w` and circle `l+1 (mod n)` in state `1` with weight `−w`,
/// where `w = 1/√2` if `normalized`, else `1`.
pub fn ghz_bigraph(n: usize, normalized: bool) -> Result<SculptingBigraph> {
    if n < 2 {
        return Err(Error::Domain(format!("GHZ bigraph needs n >= 2, got {n}")));
    }
    let w = if normalized {
        ExactScalar::inv_sqrt2()
    } else {
        ExactScalar::one()
    };
    let circles: Vec<ModeId> = (0..n)
        .map(|i| ModeId::qubit((i + 1).to_string(), i))
        .collect();
    let dots: Vec<DotId> = (0..n).map(|i| DotId((i + 1).to_string())).collect();
    let mut g = SculptingBigraph::new(circles.clone(), dots.clone())?;
    for l in 0..n {
        g.add_edge(&circles[l], &dots[l], w.clone(), BasisState::Zero)?;
        g.add_edge(&circles[(l + 1) % n], &dots[l], -w.clone(), BasisState::One)?;
    }
    Ok(g)
}
