//! Central path digraphs and the loop-replacement gadgets that hang star
//! graphs off them.
//!
//! `P^(l)` lives on the ancillas `(C, A1, …, A{l+1})`. Row `X`, column `Y`
//! of its matrix is the amplitude of edge `Y → X`; every edge is `+`-colored.

use crate::error::{Error, Result};
use crate::fock::ModeId;
use crate::graph::{BasisState, SculptingDigraph};
use crate::scalar::ExactScalar;

pub const CENTER_LABEL: &str = "C";

pub fn ancilla_label(j: usize) -> String {
    format!("A{j}")
}

/// Adjacency matrix of `P^(l)` over `(C, A1, …, A{l+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralPathMatrix {
    l: usize,
    entries: Vec<Vec<i64>>,
}

impl CentralPathMatrix {
    /// `P^(0) = [[1,1],[1,1]]` over `(C, A1)`: the single-star base case.
    /// The recursion applied to it yields `P^(1)`.
    pub fn degenerate() -> Self {
        CentralPathMatrix {
            l: 0,
            entries: vec![vec![1, 1], vec![1, 1]],
        }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row][col]
    }

    pub fn to_scalar_matrix(&self) -> Vec<Vec<ExactScalar>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&x| ExactScalar::from_integer(x)).collect())
            .collect()
    }

    /// `P^(l+1)`: new column `(1, 0, …, 0)ᵀ`, new bottom row `(1, …, 1, −1, 1)`.
    fn extend(&self) -> Self {
        let n = self.size();
        let mut entries: Vec<Vec<i64>> = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.push(if i == 0 { 1 } else { 0 });
                r
            })
            .collect();
        let mut bottom = vec![1; n + 1];
        bottom[n - 1] = -1;
        entries.push(bottom);
        CentralPathMatrix {
            l: self.l + 1,
            entries,
        }
    }

    pub fn vertices(&self) -> Vec<ModeId> {
        std::iter::once(ModeId::ancilla(CENTER_LABEL))
            .chain((1..self.size()).map(|j| ModeId::ancilla(ancilla_label(j))))
            .collect()
    }

    /// One `+`-colored edge per nonzero entry, loops included.
    pub fn to_digraph(&self) -> SculptingDigraph {
        let vs = self.vertices();
        let mut g = SculptingDigraph::new(vs.clone()).expect("labels are distinct");
        for (x, row) in self.entries.iter().enumerate() {
            for (y, &a) in row.iter().enumerate() {
                if a != 0 {
                    g.add_edge(
                        &vs[y],
                        &vs[x],
                        ExactScalar::from_integer(a),
                        BasisState::Plus,
                    )
                    .expect("fresh edge");
                }
            }
        }
        g
    }
}

pub fn build_path_matrix(l: usize) -> Result<CentralPathMatrix> {
    if l < 1 {
        return Err(Error::Domain(format!("central path needs l >= 1, got {l}")));
    }
    Ok((0..l).fold(CentralPathMatrix::degenerate(), |m, _| m.extend()))
}

pub fn path_digraph(l: usize) -> Result<SculptingDigraph> {
    Ok(build_path_matrix(l)?.to_digraph())
}

/// Replaces the loop on `vertex` with a chain of `k = qubits.len()` new qubit
/// vertices `q1 … qk`:
///
/// * `dot(q_i) = −â_{q_i,1} + â_{q_{i+1},0}` for `i < k`
/// * `dot(q_k) = −â_{q_k,1} + α·â_{vertex,s}` where `α, s` come from the removed loop
/// * `dot(vertex)` gains `â_{q_1,0}` in place of the loop term
///
/// `q_k` sits next to `vertex` and is the star center. With `k = 1` this is
/// the Bell gadget.
pub fn replace_loop_with_star(
    g: &SculptingDigraph,
    vertex: &ModeId,
    qubits: &[ModeId],
) -> Result<SculptingDigraph> {
    if qubits.is_empty() {
        return Err(Error::Domain("star gadget needs k >= 1 qubits".into()));
    }
    let loops: Vec<_> = g.loops(vertex).collect();
    let lp = match loops.as_slice() {
        [lp] => lp.clone(),
        [] => {
            return Err(Error::Structure(format!(
                "vertex `{vertex}` has no loop to replace"
            )))
        }
        _ => {
            return Err(Error::Structure(format!(
                "vertex `{vertex}` has several loops; the replacement is ambiguous"
            )))
        }
    };
    let mut out = g.clone();
    out.remove_edge(vertex, vertex, lp.state);
    for q in qubits {
        out.add_vertex(q.clone())?;
    }
    let one = ExactScalar::one();
    let minus_one = ExactScalar::from_integer(-1);
    let k = qubits.len();
    for i in 0..k {
        out.add_edge(&qubits[i], &qubits[i], minus_one.clone(), BasisState::One)?;
        if i + 1 < k {
            out.add_edge(&qubits[i + 1], &qubits[i], one.clone(), BasisState::Zero)?;
        }
    }
    out.add_edge(vertex, &qubits[k - 1], lp.amplitude, lp.state)?;
    out.add_edge(&qubits[0], vertex, one, BasisState::Zero)?;
    Ok(out)
}

/// `path_digraph(n − 1)` with every `A`-loop replaced by a Bell gadget; qubits `1..=n`.
pub fn linear_graph_digraph(n: usize) -> Result<SculptingDigraph> {
    if n < 2 {
        return Err(Error::Domain(format!("linear graph needs n >= 2, got {n}")));
    }
    let mut g = path_digraph(n - 1)?;
    for j in 1..=n {
        let a = ModeId::ancilla(ancilla_label(j));
        g = replace_loop_with_star(&g, &a, &[ModeId::qubit(j.to_string(), j - 1)])?;
    }
    Ok(g)
}
