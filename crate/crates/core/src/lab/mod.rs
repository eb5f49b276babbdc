//! Finite-window experiments on the vanishing of Ext and Tor: scans,
//! gaps, Ext-index estimates, checkers for duality and symmetry
//! statements, change of rings, external tensor products and a seeded
//! random search.
//!
//! "For all large `i`" is read as "for all `i` with `d < i ≤ H`", `d` the
//! ring dimension and `H` the window carried by every report.

mod checks;
mod config;
mod pattern;
mod report;
mod rings;
mod search;


pub use checks::{
    betti_formula_check, dual_symmetry_check, duality_check, is_complete_intersection, known_ab, low_tor_check,
    minimal_multiplicity_facts, symmetry_check, tensor_mcm_check, SymmetryReport, RECHECK_MARGIN,
};
pub use config::{random_module, ExperimentConfig};
pub use pattern::{
    ext_index_estimate, gap_analysis, scan_ext, scan_ext_labeled, scan_tor, scan_tor_labeled, Gap, GapReport,
    IndexEstimate, VanishingPattern,
};
pub use report::{CheckReport, Fact, ModuleRecord, Replay, Rule, Verdict, SCHEMA_VERSION};
pub use rings::{change_of_rings_check, external_tensor, external_tensor_check, quotient_by, transport, ExternalTensor};
pub use search::{search_harness, SearchReport, Trial};
