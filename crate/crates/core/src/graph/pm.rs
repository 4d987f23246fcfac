//! Directed perfect matchings and matrix permanents.

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

use super::{DiEdge, SculptingDigraph};

/// A permutation cover: vertex `v` takes its incoming edge from `sources[v]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedPM {
    pub sources: Vec<usize>,
}

impl DirectedPM {
    /// Selected edges (every color between the chosen endpoints).
    pub fn edges(&self, g: &SculptingDigraph) -> Vec<DiEdge> {
        let vs = g.vertices();
        self.sources
            .iter()
            .enumerate()
            .flat_map(|(x, &y)| {
                let (src, tgt) = (vs[y].clone(), vs[x].clone());
                g.incoming(&vs[x])
                    .filter(move |e| e.source == src && e.target == tgt)
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    /// Vertex-disjoint cycles (loops are length-1 cycles), each starting at
    /// its smallest vertex, ordered by that vertex.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.sources.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                cycle.push(v);
                v = self.sources[v];
            }
            out.push(cycle);
        }
        out
    }
}

/// All directed PMs, sorted lexicographically by `sources`.
///
/// Backtracking over the 0/1 support; at each step the unassigned vertex
/// with the fewest free candidate sources is expanded first.
pub fn enumerate_directed_pms(g: &SculptingDigraph) -> Vec<DirectedPM> {
    let support = g.support_matrix();
    let n = support.len();
    if n == 0 {
        return vec![DirectedPM { sources: vec![] }];
    }
    let candidates: Vec<Vec<usize>> = support
        .iter()
        .map(|row| (0..n).filter(|&y| row[y]).collect())
        .collect();
    let mut out = Vec::new();
    let mut assign = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search(&candidates, &mut assign, &mut used, 0, &mut out);
    out.sort();
    out
}

fn search(
    candidates: &[Vec<usize>],
    assign: &mut [usize],
    used: &mut [bool],
    depth: usize,
    out: &mut Vec<DirectedPM>,
) {
    let n = candidates.len();
    if depth == n {
        out.push(DirectedPM {
            sources: assign.to_vec(),
        });
        return;
    }
    let mut best: Option<(usize, usize)> = None;
    for x in 0..n {
        if assign[x] != usize::MAX {
            continue;
        }
        let free = candidates[x].iter().filter(|&&y| !used[y]).count();
        if free == 0 {
            return;
        }
        if best.is_none_or(|(_, f)| free < f) {
            best = Some((x, free));
        }
    }
    let (x, _) = best.expect("some vertex is unassigned");
    for &y in &candidates[x] {
        if used[y] {
            continue;
        }
        used[y] = true;
        assign[x] = y;
        search(candidates, assign, used, depth + 1, out);
        assign[x] = usize::MAX;
        used[y] = false;
    }
}

/// Ryser's formula with Gray-code subset order:
/// `perm(A) = (−1)^n Σ_S (−1)^{|S|} ∏_i Σ_{j∈S} a_ij`.
pub fn permanent(m: &[Vec<ExactScalar>]) -> Result<ExactScalar> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: row.len(),
        });
    }
    if n == 0 {
        return Ok(ExactScalar::one());
    }
    if n >= 63 {
        return Err(Error::Domain(format!("{n}x{n} permanent is out of reach")));
    }
    let mut row_sums = vec![ExactScalar::zero(); n];
    let mut total = ExactScalar::zero();
    let mut prev_gray = 0u64;
    for k in 1..(1u64 << n) {
        let gray = k ^ (k >> 1);
        let col = (gray ^ prev_gray).trailing_zeros() as usize;
        let added = gray & (1 << col) != 0;
        for (i, s) in row_sums.iter_mut().enumerate() {
            if added {
                *s += &m[i][col];
            } else {
                *s -= &m[i][col];
            }
        }
        prev_gray = gray;
        let prod: ExactScalar = row_sums.iter().cloned().product();
        if (n - gray.count_ones() as usize).is_multiple_of(2) {
            total += &prod;
        } else {
            total -= &prod;
        }
    }
    Ok(total)
}

/// Permanent of the digraph's 0/1 support, i.e. its directed-PM count.
pub fn support_permanent(g: &SculptingDigraph) -> ExactScalar {
    let m: Vec<Vec<ExactScalar>> = g
        .support_matrix()
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|b| ExactScalar::from_integer(b as i64))
                .collect()
        })
        .collect();
    permanent(&m).expect("support matrix is square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::ModeId;
    use crate::graph::BasisState;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_permanent(m: &[Vec<ExactScalar>]) -> ExactScalar {
        fn rec(m: &[Vec<ExactScalar>], row: usize, used: &mut Vec<bool>) -> ExactScalar {
            if row == m.len() {
                return ExactScalar::one();
            }
            let mut acc = ExactScalar::zero();
            for c in 0..m.len() {
                if !used[c] && !m[row][c].is_zero() {
                    used[c] = true;
                    acc += &(&m[row][c] * &rec(m, row + 1, used));
                    used[c] = false;
                }
            }
            acc
        }
        rec(m, 0, &mut vec![false; m.len()])
    }

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<ExactScalar>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| ExactScalar::from_integer(x)).collect())
            .collect()
    }

    #[test]
    fn permanent_small_cases() {
        let p1_support = int_matrix(&[&[1, 1, 1], &[1, 1, 0], &[1, 1, 1]]);
        assert_eq!(
            permanent(&p1_support).unwrap(),
            ExactScalar::from_integer(4)
        );
        for n in 0..6 {
            let id: Vec<Vec<ExactScalar>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| ExactScalar::from_integer((i == j) as i64))
                        .collect()
                })
                .collect();
            assert!(permanent(&id).unwrap().is_one());
        }
        assert!(matches!(
            permanent(&int_matrix(&[&[1, 2], &[3]])),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn ryser_matches_brute_force_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m: Vec<Vec<ExactScalar>> = (0..5)
                .map(|_| {
                    (0..5)
                        .map(|_| ExactScalar::from_integer(rng.gen_range(0..2)))
                        .collect()
                })
                .collect();
            assert_eq!(permanent(&m).unwrap(), brute_permanent(&m));
        }
        let m: Vec<Vec<ExactScalar>> = (0..4)
            .map(|_| {
                (0..4)
                    .map(|_| {
                        ExactScalar::from_integer(rng.gen_range(-3..4))
                            + ExactScalar::sqrt2() * ExactScalar::from_integer(rng.gen_range(-2..3))
                    })
                    .collect()
            })
            .collect();
        assert_eq!(permanent(&m).unwrap(), brute_permanent(&m));
    }

    #[test]
    fn no_edges_no_pms() {
        let g = SculptingDigraph::new(vec![ModeId::ancilla("a"), ModeId::ancilla("b")]).unwrap();
        assert!(enumerate_directed_pms(&g).is_empty());
        assert!(support_permanent(&g).is_zero());
    }

    #[test]
    fn pm_cycles_cover_vertices() {
        let vs: Vec<ModeId> = (0..4).map(|i| ModeId::ancilla(format!("v{i}"))).collect();
        let mut g = SculptingDigraph::new(vs.clone()).unwrap();
        for x in &vs {
            for y in &vs {
                g.add_edge(y, x, ExactScalar::one(), BasisState::Plus)
                    .unwrap();
            }
        }
        let pms = enumerate_directed_pms(&g);
        assert_eq!(pms.len(), 24);
        assert!(pms.windows(2).all(|w| w[0] < w[1]));
        for pm in &pms {
            let mut covered: Vec<usize> = pm.cycles().concat();
            covered.sort();
            assert_eq!(covered, [0, 1, 2, 3]);
            assert_eq!(pm.edges(&g).len(), 4);
        }
    }
}
