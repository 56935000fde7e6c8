//! The staged magic completion, its shortest-path baseline and the decider.

pub mod engine;
pub mod schedule;
pub mod shortest_path;

pub use engine::{
    decide_completable, describe_forbidden, magic_complete, step_completion, CompletionOutcome,
    CompletionTrace, MagicCompleter, TraceRecord, TraceTag, Verdict,
};
pub use schedule::{build_schedule, fork_rule, time_of, Family, Fork, ForkRule, Schedule};
pub use shortest_path::shortest_path_complete;
