//! Brute-force oracles, exact `p_a(V,o)`, and the verification harness.

pub mod brute;
pub mod enumerate;
pub mod pamax;
pub mod verify;

pub use pamax::{pa_max, pa_max_exhaustive, PaMaxResult};
pub use verify::{run_all_checks, verify_theorem_b, verify_theorem_c, GraphReport};
pub use enumerate::{enumerate_and_verify, oracle_equivalence, EnumerationSummary, OracleSummary};
