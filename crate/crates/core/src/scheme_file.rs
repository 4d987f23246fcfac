//! Textual scheme files.
//!
//! ```json
//! {
//!   "version": 1,
//!   "modes": [{"label": "1", "kind": "qubit"}, {"label": "C", "kind": "ancilla"}],
//!   "edges": [{"source": "C", "target": "1", "state": "+",
//!              "amplitude": {"p": "1/1", "q": "0/1", "r": "0/1", "s": "0/1"}}]
//! }
//! ```
//!
//! Amplitudes encode `(p + q√2) + i(r + s√2)`. Canonical form sorts modes by
//! label and edges by `(target, source, state)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::ModeId;
use crate::graph::{BasisState, SculptingDigraph};
use crate::scalar::ExactScalar;

pub const SCHEME_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeKindRecord {
    Qubit,
    Ancilla,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeRecord {
    pub label: String,
    pub kind: ModeKindRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmplitudeRecord {
    pub p: String,
    pub q: String,
    pub r: String,
    pub s: String,
}

impl AmplitudeRecord {
    pub fn encode(x: &ExactScalar) -> Self {
        AmplitudeRecord {
            p: ExactScalar::rational_to_string(x.p()),
            q: ExactScalar::rational_to_string(x.q()),
            r: ExactScalar::rational_to_string(x.r()),
            s: ExactScalar::rational_to_string(x.s()),
        }
    }

    pub fn decode(&self) -> Result<ExactScalar> {
        Ok(ExactScalar::new(
            ExactScalar::parse_rational(&self.p)?,
            ExactScalar::parse_rational(&self.q)?,
            ExactScalar::parse_rational(&self.r)?,
            ExactScalar::parse_rational(&self.s)?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub source: String,
    pub target: String,
    pub state: String,
    pub amplitude: AmplitudeRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeFile {
    pub version: u32,
    pub modes: Vec<ModeRecord>,
    pub edges: Vec<EdgeRecord>,
}

/// Numeric labels order numerically and before the rest.
fn natural_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        _ => a.cmp(b),
    }
}

impl SchemeFile {
    pub fn from_digraph(g: &SculptingDigraph) -> Self {
        let mut modes: Vec<ModeRecord> = g
            .vertices()
            .iter()
            .map(|v| ModeRecord {
                label: v.label().to_string(),
                kind: if v.is_qubit() {
                    ModeKindRecord::Qubit
                } else {
                    ModeKindRecord::Ancilla
                },
            })
            .collect();
        modes.sort_by(|a, b| a.label.cmp(&b.label));
        let mut edges: Vec<(String, String, BasisState, EdgeRecord)> = g
            .edges()
            .map(|e| {
                (
                    e.target.label().to_string(),
                    e.source.label().to_string(),
                    e.state,
                    EdgeRecord {
                        source: e.source.label().to_string(),
                        target: e.target.label().to_string(),
                        state: e.state.symbol().to_string(),
                        amplitude: AmplitudeRecord::encode(&e.amplitude),
                    },
                )
            })
            .collect();
        edges.sort_by(|a, b| (&a.0, &a.1, a.2).cmp(&(&b.0, &b.1, b.2)));
        SchemeFile {
            version: SCHEME_VERSION,
            modes,
            edges: edges.into_iter().map(|e| e.3).collect(),
        }
    }

    /// Rebuilds the digraph. Vertices come out in label order; qubit
    /// positions follow the natural order of the qubit labels.
    pub fn to_digraph(&self) -> Result<SculptingDigraph> {
        if self.version != SCHEME_VERSION {
            return Err(Error::Parse(format!(
                "unsupported scheme version {} (expected {SCHEME_VERSION})",
                self.version
            )));
        }
        let mut qubit_labels: Vec<&str> = self
            .modes
            .iter()
            .filter(|m| m.kind == ModeKindRecord::Qubit)
            .map(|m| m.label.as_str())
            .collect();
        qubit_labels.sort_by(|a, b| natural_cmp(a, b));
        let positions: BTreeMap<&str, usize> = qubit_labels
            .iter()
            .enumerate()
            .map(|(i, l)| (*l, i))
            .collect();
        let mut records: Vec<&ModeRecord> = self.modes.iter().collect();
        records.sort_by(|a, b| a.label.cmp(&b.label));
        let vertices: Vec<ModeId> = records
            .iter()
            .map(|m| match m.kind {
                ModeKindRecord::Qubit => {
                    ModeId::qubit(m.label.as_str(), positions[m.label.as_str()])
                }
                ModeKindRecord::Ancilla => ModeId::ancilla(m.label.as_str()),
            })
            .collect();
        let mut g = SculptingDigraph::new(vertices)?;
        for e in &self.edges {
            let source = g
                .vertex(&e.source)
                .cloned()
                .ok_or_else(|| Error::UnknownMode(e.source.clone()))?;
            let target = g
                .vertex(&e.target)
                .cloned()
                .ok_or_else(|| Error::UnknownMode(e.target.clone()))?;
            g.add_edge(
                &source,
                &target,
                e.amplitude.decode()?,
                BasisState::from_symbol(&e.state)?,
            )?;
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn write_scheme(g: &SculptingDigraph) -> String {
    SchemeFile::from_digraph(g).to_json()
}

pub fn read_scheme(text: &str) -> Result<SculptingDigraph> {
    SchemeFile::from_json(text)?.to_digraph()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::compile;

    #[test]
    fn canonical_round_trip_is_byte_identical() {
        let g = compile(&"2,0,4".parse().unwrap()).unwrap().digraph;
        let text = write_scheme(&g);
        let again = write_scheme(&read_scheme(&text).unwrap());
        assert_eq!(text, again);
        let f = SchemeFile::from_json(&text).unwrap();
        assert_eq!(f.modes.len(), 13);
        assert!(f.modes.windows(2).all(|w| w[0].label < w[1].label));
    }

    #[test]
    fn qubit_positions_follow_natural_order() {
        let g = compile(&"4,4".parse().unwrap()).unwrap().digraph;
        let back = read_scheme(&write_scheme(&g)).unwrap();
        let labels: Vec<String> = back
            .qubit_modes()
            .iter()
            .map(|m| m.label().to_string())
            .collect();
        assert_eq!(labels, (1..=10).map(|i| i.to_string()).collect::<Vec<_>>());
    }

    #[test]
    fn invalid_files() {
        assert!(read_scheme("{").is_err());
        assert!(read_scheme(r#"{"version": 2, "modes": [], "edges": []}"#).is_err());
        let unknown = r#"{"version": 1, "modes": [{"label": "a", "kind": "qubit"}],
            "edges": [{"source": "b", "target": "a", "state": "+",
                       "amplitude": {"p": "1/1", "q": "0/1", "r": "0/1", "s": "0/1"}}]}"#;
        assert!(matches!(read_scheme(unknown), Err(Error::UnknownMode(_))));
        let bad_state = unknown.replace("\"b\"", "\"a\"").replace("\"+\"", "\"x\"");
        assert!(read_scheme(&bad_state).is_err());
    }

    #[test]
    fn amplitude_encoding() {
        let x = ExactScalar::inv_sqrt2() - ExactScalar::from_ratio(3, 4) * ExactScalar::i();
        let rec = AmplitudeRecord::encode(&x);
        assert_eq!(rec.q, "1/2");
        assert_eq!(rec.r, "-3/4");
        assert_eq!(rec.p, "0/1");
        assert_eq!(rec.decode().unwrap(), x);
    }
}
