//! Per-instance property checks comparing the engines against the oracle.

use crate::completion::{shortest_path_complete, CompletionOutcome, MagicCompleter, Verdict};
use crate::error::{Error, Result};
use crate::obstacles::{extract_obstacle, obstacle_length_bound};
use crate::oracle::report::PropertyReport;
use crate::oracle::search::{
    achievable_values, brute_force_completable, brute_force_completable_with, ValueMap, ValueOrder,
    DEFAULT_SEARCH_PAIRS,
};
use crate::params::{admissible_case, Case, ParameterTuple};
use crate::space::morph::preserves;
use crate::space::{automorphisms, is_homomorphism, LabelledGraph};

/// What one instance needs for the optimality and parity checks.
#[derive(Debug, Clone)]
pub struct Evidence {
    pub outcome: CompletionOutcome,
    /// Per-pair achievable values; `None` when no completion exists.
    pub values: Option<ValueMap>,
}

impl Evidence {
    pub fn gather(completer: &MagicCompleter, g: &LabelledGraph) -> Result<Self> {
        Ok(Self {
            outcome: completer.complete(g)?,
            values: achievable_values(completer.params(), g)?,
        })
    }
}

fn require_completable(evidence: &Evidence) -> Result<&ValueMap> {
    evidence
        .values
        .as_ref()
        .ok_or_else(|| Error::Input("instance has no completion".into()))
}

pub fn check_optimality(
    p: &ParameterTuple,
    magic: u32,
    g: &LabelledGraph,
) -> Result<PropertyReport> {
    let completer = MagicCompleter::new(p, magic)?;
    let evidence = Evidence::gather(&completer, g)?;
    optimality(&completer, g, &evidence)
}

/// Every pair of every completion sits on the far side of the magic value
/// from `d̄`, or matches the case II-B clause.
pub fn optimality(
    completer: &MagicCompleter,
    g: &LabelledGraph,
    evidence: &Evidence,
) -> Result<PropertyReport> {
    let values = require_completable(evidence)?;
    let iib = admissible_case(completer.params())? == Case::IIB;
    let m = completer.magic();
    let mut report = PropertyReport::new("optimality");
    report.instances = 1;
    let completed = &evidence.outcome.completed;
    for ((u, v), options) in values {
        let bar = completed.raw(*u, *v);
        for &alt in options {
            if alt >= bar && bar >= m {
                report.count("clause-above");
            } else if alt <= bar && bar <= m {
                report.count("clause-below");
            } else if iib && bar + 1 == m && alt > m && alt % 2 == bar % 2 {
                report.count("clause-iib");
            } else {
                report.fail(
                    g,
                    format!("pair {u} {v}: magic {bar}, other completion {alt}, M={m}"),
                );
            }
        }
    }
    Ok(report)
}

pub fn check_parity(p: &ParameterTuple, magic: u32, g: &LabelledGraph) -> Result<PropertyReport> {
    let completer = MagicCompleter::new(p, magic)?;
    let evidence = Evidence::gather(&completer, g)?;
    parity(&completer, g, &evidence)
}

/// Whether the narrow exception to the parity guarantee applies to `bar`.
fn parity_exception(p: &ParameterTuple, case: Case, magic: u32, bar: u32) -> bool {
    let c = p.c();
    case == Case::III
        && c == 2 * p.delta + p.k1 + 1
        && c != 2 * p.k1 + 2 * p.k2 + 1
        && magic > p.k1
        && p.k1 > 1
        && bar == p.k1
}

/// Short and long magic-completion distances keep their parity across all
/// completions.
pub fn parity(
    completer: &MagicCompleter,
    g: &LabelledGraph,
    evidence: &Evidence,
) -> Result<PropertyReport> {
    let values = require_completable(evidence)?;
    let p = completer.params();
    let case = admissible_case(p)?;
    let m = completer.magic();
    let low = p.k1.min(m - 1);
    let high = p.k2.max(m + 1);
    let mut report = PropertyReport::new("parity");
    report.instances = 1;
    let completed = &evidence.outcome.completed;
    for ((u, v), options) in values {
        let bar = completed.raw(*u, *v);
        if bar > low && bar < high {
            continue;
        }
        if parity_exception(p, case, m, bar) {
            report.count("exception");
            continue;
        }
        report.count("checked-pairs");
        for &alt in options {
            if alt % 2 != bar % 2 {
                report.fail(
                    g,
                    format!("pair {u} {v}: magic {bar}, other completion {alt}, M={m}"),
                );
            }
        }
    }
    Ok(report)
}

pub fn check_automorphism_preservation(
    p: &ParameterTuple,
    magic: u32,
    g: &LabelledGraph,
) -> Result<PropertyReport> {
    let completer = MagicCompleter::new(p, magic)?;
    let completed = completer.complete_graph(g)?;
    automorphism_preservation(p, g, &completed)
}

/// Both engines map every automorphism of the input to one of the output.
pub fn automorphism_preservation(
    p: &ParameterTuple,
    g: &LabelledGraph,
    magic_completed: &LabelledGraph,
) -> Result<PropertyReport> {
    let mut report = PropertyReport::new("automorphisms");
    report.instances = 1;
    let shortest = shortest_path_complete(p.delta, g)?;
    let auts = automorphisms(g)?;
    report.add("maps", auts.len() as u64);
    for perm in &auts {
        if !preserves(magic_completed, perm) {
            report.fail(g, format!("magic completion breaks automorphism {perm:?}"));
        }
        if !preserves(&shortest, perm) {
            report.fail(
                g,
                format!("shortest-path completion breaks automorphism {perm:?}"),
            );
        }
    }
    Ok(report)
}

/// Engine and oracle agree on completability; the oracle's answer does not
/// depend on its value order.
pub fn oracle_equivalence(
    p: &ParameterTuple,
    g: &LabelledGraph,
    outcome: &CompletionOutcome,
) -> Result<PropertyReport> {
    let mut report = PropertyReport::new("oracle-equivalence");
    report.instances = 1;
    let engine = outcome.verdict.is_completable();
    let oracle = brute_force_completable(p, g)?.is_some();
    let reversed =
        brute_force_completable_with(p, g, ValueOrder::Descending, DEFAULT_SEARCH_PAIRS)?.is_some();
    report.count(if engine {
        "completable"
    } else {
        "uncompletable"
    });
    if engine != oracle {
        report.fail(g, format!("engine says {engine}, oracle says {oracle}"));
    }
    if oracle != reversed {
        report.fail(
            g,
            format!("ascending search says {oracle}, descending says {reversed}"),
        );
    }
    if engine && !g.is_extended_by(&outcome.completed) {
        report.fail(g, "completed graph does not extend the input");
    }
    Ok(report)
}

/// In a failed run, a triangle that is forbidden or has perimeter at least
/// `C` only uses an M-labelled pair if that pair was an input edge.
pub fn magic_provenance(
    p: &ParameterTuple,
    g: &LabelledGraph,
    outcome: &CompletionOutcome,
) -> Result<PropertyReport> {
    let mut report = PropertyReport::new("magic-provenance");
    if outcome.verdict.is_completable() {
        return Ok(report);
    }
    report.instances = 1;
    let m = outcome.trace.magic;
    let out = &outcome.completed;
    for ((u, v, w), verdict) in out.triangle_verdicts(p)? {
        let (a, b, c) = (out.raw(u, v), out.raw(u, w), out.raw(v, w));
        if verdict.is_allowed() && verdict.perimeter < p.c() {
            continue;
        }
        for (x, y, d) in [(u, v, a), (u, w, b), (v, w, c)] {
            if d == m && !g.is_edge(x, y) {
                report.fail(g, format!("triangle {u} {v} {w} uses added M pair {x} {y}"));
            }
        }
    }
    Ok(report)
}

/// The extracted obstacle is an uncompletable cycle that maps into the
/// input and respects the length bound.
pub fn obstacle_soundness(
    p: &ParameterTuple,
    g: &LabelledGraph,
    outcome: &CompletionOutcome,
) -> Result<PropertyReport> {
    let mut report = PropertyReport::new("obstacles");
    if outcome.verdict.is_completable() {
        return Ok(report);
    }
    report.instances = 1;
    let obstacle = match extract_obstacle(outcome) {
        Ok(o) => o,
        Err(e) => {
            report.fail(g, format!("extraction failed: {e}"));
            return Ok(report);
        }
    };
    let cycle = obstacle.cycle.to_graph(p.delta)?;
    if obstacle.cycle.len() > obstacle_length_bound(p.delta) {
        report.fail(
            g,
            format!("obstacle {} exceeds the length bound", obstacle.cycle),
        );
    }
    if !is_homomorphism(&cycle, g, &obstacle.hom) {
        report.fail(
            g,
            format!("obstacle {} does not map into the input", obstacle.cycle),
        );
    }
    match brute_force_completable(p, &cycle) {
        Ok(Some(_)) => report.fail(g, format!("obstacle {} has a completion", obstacle.cycle)),
        Ok(None) => report.count("oracle-verified"),
        Err(Error::Budget(_)) => report.count("over-budget"),
        Err(e) => return Err(e),
    }
    Ok(report)
}

/// With `M = δ`, the magic completion reproduces the shortest-path
/// completion on inputs that have a completion. Disagreements on the rest
/// are tallied, not failed, since the shortest-path completion may rewrite
/// input edges there.
pub fn shortest_path_correspondence(
    p: &ParameterTuple,
    g: &LabelledGraph,
) -> Result<PropertyReport> {
    let completer = MagicCompleter::new(p, p.delta)?;
    let outcome = completer.complete(g)?;
    let shortest = shortest_path_complete(p.delta, g)?;
    let mut report = PropertyReport::new("shortest-path-correspondence");
    report.instances = 1;
    let completable = outcome.verdict.is_completable();
    match (outcome.completed == shortest, completable) {
        (true, _) => report.count("equal"),
        (false, false) => report.count("differ-uncompletable"),
        (false, true) => {
            let pair = g
                .pairs()
                .find(|&(u, v)| outcome.completed.raw(u, v) != shortest.raw(u, v))
                .expect("graphs differ somewhere");
            report.fail(
                g,
                format!(
                    "pair {} {}: magic {}, shortest path {}",
                    pair.0,
                    pair.1,
                    outcome.completed.raw(pair.0, pair.1),
                    shortest.raw(pair.0, pair.1)
                ),
            );
        }
    }
    if !completable
        && shortest.forbidden_triangles(completer.table()).is_empty()
        && g.is_extended_by(&shortest)
    {
        report.fail(
            g,
            "shortest path completes an input the magic completion rejects",
        );
    }
    Ok(report)
}

/// The shortest-path completion dominates every completion pairwise.
pub fn shortest_path_maximality(
    p: &ParameterTuple,
    g: &LabelledGraph,
    values: &ValueMap,
) -> Result<PropertyReport> {
    let shortest = shortest_path_complete(p.delta, g)?;
    let mut report = PropertyReport::new("shortest-path-maximality");
    report.instances = 1;
    for ((u, v), options) in values {
        let top = options.iter().copied().max().unwrap_or(0);
        if top > shortest.raw(*u, *v) {
            report.fail(
                g,
                format!(
                    "pair {u} {v}: completion uses {top}, shortest path {}",
                    shortest.raw(*u, *v)
                ),
            );
        }
    }
    Ok(report)
}

/// Whether the verdict is a failure; convenience for callers that only
/// need a boolean.
pub fn is_uncompletable(outcome: &CompletionOutcome) -> bool {
    matches!(outcome.verdict, Verdict::Uncompletable(_))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::LabelledCycle;

    const IIB: ParameterTuple = ParameterTuple::new(5, 3, 3, 16, 13);

    fn fork(a: u32, b: u32) -> LabelledGraph {
        LabelledGraph::from_edges(3, 5, &[(0, 1, a), (1, 2, b)]).unwrap()
    }

    #[test]
    fn optimality_examples() {
        let r = check_optimality(&IIB, 3, &fork(1, 5)).unwrap();
        assert!(r.passed());
        assert_eq!(r.counter("clause-iib"), 0);
        let r = check_optimality(&IIB, 3, &fork(5, 5)).unwrap();
        assert!(r.passed());
        assert_eq!(r.counter("clause-iib"), 1);
        let complete = LabelledGraph::from_edges(3, 5, &[(0, 1, 2), (0, 2, 5), (1, 2, 5)]).unwrap();
        assert!(check_optimality(&IIB, 3, &complete).unwrap().passed());
    }

    #[test]
    fn optimality_needs_a_completable_input() {
        let g = LabelledGraph::from_edges(3, 5, &[(0, 1, 5), (1, 2, 5), (0, 2, 5)]).unwrap();
        assert!(check_optimality(&IIB, 3, &g).is_err());
    }

    #[test]
    fn parity_examples() {
        let r = check_parity(&IIB, 3, &fork(1, 1)).unwrap();
        assert!(r.passed());
        assert!(r.counter("checked-pairs") >= 1);
        assert!(check_parity(&IIB, 3, &fork(1, 5)).unwrap().passed());
        let r = check_parity(&IIB, 3, &fork(3, 3)).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn automorphism_examples() {
        let r = check_automorphism_preservation(&IIB, 3, &LabelledGraph::empty(4, 5)).unwrap();
        assert!(r.passed());
        assert_eq!(r.counter("maps"), 24);
        let g = LabelledCycle::new(vec![1, 5, 1, 5])
            .unwrap()
            .to_graph(5)
            .unwrap();
        let r = check_automorphism_preservation(&IIB, 3, &g).unwrap();
        assert!(r.passed());
        assert_eq!(r.counter("maps"), 4);
        let g = LabelledGraph::from_edges(3, 5, &[(0, 1, 1), (1, 2, 2)]).unwrap();
        assert_eq!(
            check_automorphism_preservation(&IIB, 3, &g)
                .unwrap()
                .counter("maps"),
            1
        );
    }

    #[test]
    fn failed_runs_are_sound() {
        let g = LabelledCycle::new(vec![1, 1, 5, 5, 5])
            .unwrap()
            .to_graph(5)
            .unwrap();
        let completer = MagicCompleter::new(&IIB, 3).unwrap();
        let outcome = completer.complete(&g).unwrap();
        assert!(is_uncompletable(&outcome));
        assert!(magic_provenance(&IIB, &g, &outcome).unwrap().passed());
        assert!(obstacle_soundness(&IIB, &g, &outcome).unwrap().passed());
        assert!(oracle_equivalence(&IIB, &g, &outcome).unwrap().passed());
    }
}
