//! Compiler and exact simulator for heralded "sculpting" schemes that prepare
//! caterpillar graph states in linear bosonic systems.
//!
//! The pipeline:
//!
//! ```text
//! CaterpillarSpec ──compile──▶ SculptingDigraph ──operator_of──▶ SculptingOperator
//!                                                                   │
//!        initial_state (2 bosons per qubit mode, 1 per ancilla) ────┤ apply_sculpting
//!                                                                   ▼
//!                 caterpillar_target ◀──equal_up_to_scalar── to_qubit_state(FockState)
//! ```
//!
//! All amplitudes live in Q(√2, i) ([`ExactScalar`]); every comparison is exact.
//!
//! ```
//! use sculpt_core::{run_pipeline, CaterpillarSpec};
//!
//! let report = run_pipeline(&"1,1".parse::<CaterpillarSpec>().unwrap()).unwrap();
//! assert!(report.passed());
//! assert_eq!(report.pm_count, 4);
//! ```

pub mod central_path;
pub mod compiler;
pub mod error;
pub mod fock;
pub mod graph;
pub mod oracle;
pub mod scalar;
pub mod scheme_file;
pub mod verifier;

pub use central_path::{
    build_path_matrix, linear_graph_digraph, path_digraph, replace_loop_with_star,
    CentralPathMatrix,
};
pub use compiler::{compile, ghz_bigraph, operator_of, CaterpillarSpec, CompiledScheme};
pub use error::{Error, Result};
pub use fock::{
    apply_annihilation, apply_sculpting, apply_single, check_no_bunching, initial_state,
    to_qubit_state, AnnihilationOp, FockState, FockTerm, InternalState, Level, ModeId, ModeKind,
    Occupancy, SculptingOperator, Summand,
};
pub use graph::{
    bigraph_to_digraph, check_epm, check_genuine_conditions, digraph_to_bigraph,
    digraph_to_operator, enumerate_directed_pms, is_strongly_connected, permanent,
    support_permanent, BasisState, DiEdge, DirectedPM, DotId, SculptingBigraph, SculptingDigraph,
};
pub use oracle::{
    caterpillar_target, cz_apply, equal_up_to_scalar, graph_state, path_state, star_state,
    LeafBasis, QubitState, SimpleGraph,
};
pub use scalar::ExactScalar;
pub use verifier::{pm_expansion_state, run_ghz, run_pipeline, GhzReport, PipelineReport};
