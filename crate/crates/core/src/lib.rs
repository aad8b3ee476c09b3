//! Exact lattice computations on weighted dual graphs of normal surface
//! singularities: fundamental cycles, arithmetic genera, Yau sequences,
//! canonical cycles, the degree-two classification, and a harness that checks
//! the genus and canonical-cycle identities against brute-force oracles.

pub mod analysis;
pub mod canonical;
pub mod classify;
pub mod cycles;
pub mod error;
pub mod format;
mod exact;
pub mod genus;
pub mod graphs;
pub mod lattice;
pub mod oracle;
pub mod report;
pub mod yau;

pub use analysis::Analysis;
pub use canonical::{canonical_cycle, CanonicalData};
pub use classify::{classify, essential_irreducibility, ClassificationResult, EssentialIrreducibility};
pub use cycles::{fundamental_cycle, fundamental_cycle_full, ChainDecomposition, ComputationSequence};
pub use error::{Error, ErrorKind, Result};
pub use genus::{chi, pa, KVector};
pub use lattice::{intersect, Cycle, Edge, RationalCycle, VertexData, WeightedDualGraph};
pub use oracle::{pa_max, run_all_checks, GraphReport, PaMaxResult};
pub use report::{CheckId, Quantity, TheoremReport, Verdict};
pub use yau::{yau_sequence, YauData};
