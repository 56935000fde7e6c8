//! Brute-force ground truth and the property sweeps built on it.

pub mod amalgam;
pub mod checks;
pub mod forks;
pub mod report;
pub mod search;
pub mod suite;

pub use amalgam::amalgamate;
pub use checks::{check_automorphism_preservation, check_optimality, check_parity};
pub use forks::{fork_table, ForkCell};
pub use report::{Failure, PropertyReport};
pub use search::{
    achievable_values, brute_force_completable, enumerate_all_completions, CompletionSet,
    ValueOrder,
};
pub use suite::{run_verification_suite, run_verification_suite_with_jobs, Scope};
