#![allow(dead_code)]

use sculpt_core::{BasisState, ExactScalar, QubitState, SculptingOperator};

/// One summand as `(amplitude, mode label, color)`.
pub type Printed<'a> = (i64, &'a str, BasisState);

/// Factor-by-factor comparison, insensitive to summand order within a factor.
pub fn factors_as_sets(op: &SculptingOperator) -> Vec<Vec<(String, BasisState, ExactScalar)>> {
    op.factors
        .iter()
        .map(|f| {
            let mut v: Vec<_> = f
                .summands()
                .iter()
                .map(|s| {
                    (
                        s.mode.label().to_string(),
                        BasisState::from_internal(&s.state).expect("basis color"),
                        s.amplitude.clone(),
                    )
                })
                .collect();
            v.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
            v
        })
        .collect()
}

pub fn printed_factors(factors: &[&[Printed]]) -> Vec<Vec<(String, BasisState, ExactScalar)>> {
    factors
        .iter()
        .map(|f| {
            let mut v: Vec<_> = f
                .iter()
                .map(|(a, m, s)| (m.to_string(), *s, ExactScalar::from_integer(*a)))
                .collect();
            v.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
            v
        })
        .collect()
}

/// `Σ c |bits⟩` from string bit patterns.
pub fn ket_sum(parts: &[(i64, &str)]) -> QubitState {
    let n = parts[0].1.len();
    parts.iter().fold(QubitState::zero(n), |acc, (c, b)| {
        acc.add(
            &QubitState::basis_str(b)
                .unwrap()
                .scale(&ExactScalar::from_integer(*c)),
        )
        .unwrap()
    })
}
