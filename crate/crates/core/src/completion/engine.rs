use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::completion::schedule::{build_schedule, Family, ForkRule, Schedule};
use crate::error::{input, Result};
use crate::params::ParameterTuple;
use crate::space::{LabelledGraph, TriangleTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TraceTag {
    Input,
    Fork(Family),
    FinalMagic,
}

/// How one pair got its distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceRecord {
    /// Step index for fork assignments; `None` for input and final records.
    pub step: Option<u32>,
    pub u: usize,
    pub v: usize,
    pub distance: u32,
    pub witness: Option<usize>,
    pub tag: TraceTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionTrace {
    pub params: ParameterTuple,
    pub magic: u32,
    /// Input records, then fork records by step, then final records; pairs
    /// sorted within each group.
    pub records: Vec<TraceRecord>,
    n: usize,
    by_pair: Vec<usize>,
}

impl CompletionTrace {
    fn new(params: ParameterTuple, magic: u32, n: usize, records: Vec<TraceRecord>) -> Self {
        let mut by_pair = vec![usize::MAX; n * n];
        for (i, r) in records.iter().enumerate() {
            by_pair[r.u * n + r.v] = i;
            by_pair[r.v * n + r.u] = i;
        }
        Self {
            params,
            magic,
            records,
            n,
            by_pair,
        }
    }

    /// The record of pair `{u, v}`.
    pub fn record(&self, u: usize, v: usize) -> &TraceRecord {
        &self.records[self.by_pair[u * self.n + v]]
    }

    pub fn header(&self) -> String {
        format!("magic M={} params {}", self.magic, self.params)
    }
}

impl fmt::Display for CompletionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header())?;
        for r in &self.records {
            match (r.tag, r.step, r.witness) {
                (TraceTag::Input, _, _) => writeln!(f, "input {} {} = {}", r.u, r.v, r.distance)?,
                (TraceTag::Fork(family), Some(k), Some(w)) => writeln!(
                    f,
                    "step {k} set {} {} = {} witness {w} via {family}",
                    r.u, r.v, r.distance
                )?,
                (TraceTag::FinalMagic, _, _) => writeln!(f, "final {} {} = M", r.u, r.v)?,
                _ => unreachable!("fork records always carry step and witness"),
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Completable,
    /// Sorted vertex triples of the forbidden triangles in the output.
    Uncompletable(Vec<(usize, usize, usize)>),
}

impl Verdict {
    pub fn is_completable(&self) -> bool {
        matches!(self, Verdict::Completable)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionOutcome {
    pub completed: LabelledGraph,
    pub trace: CompletionTrace,
    pub verdict: Verdict,
}

/// One assignment made by [`step_completion_traced`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Assignment {
    pub u: usize,
    pub v: usize,
    pub witness: usize,
    pub family: Family,
}

/// One simultaneous pass: every missing pair closing a fork of `rule`
/// through some vertex gets `rule.target`. The lowest-index witness is
/// recorded.
pub fn step_completion_traced(
    g: &LabelledGraph,
    rule: &ForkRule,
) -> (LabelledGraph, Vec<Assignment>) {
    let mut next = g.clone();
    let mut assigned = Vec::new();
    if rule.is_empty() {
        return (next, assigned);
    }
    for (u, v) in g.missing_pairs() {
        let hit = (0..g.n())
            .filter(|&w| w != u && w != v)
            .find_map(|w| rule.family_of(g.raw(u, w), g.raw(v, w)).map(|f| (w, f)));
        if let Some((witness, family)) = hit {
            next.put(u, v, rule.target);
            assigned.push(Assignment {
                u,
                v,
                witness,
                family,
            });
        }
    }
    (next, assigned)
}

pub fn step_completion(g: &LabelledGraph, rule: &ForkRule) -> LabelledGraph {
    step_completion_traced(g, rule).0
}

/// Panics if a fork of `rule` is still open after its pass. A second pass
/// would then change the result, which the time function rules out.
fn assert_single_pass(g: &LabelledGraph, rule: &ForkRule) {
    if rule.is_empty() {
        return;
    }
    for (u, v) in g.missing_pairs() {
        let open = (0..g.n())
            .filter(|&w| w != u && w != v)
            .any(|w| rule.family_of(g.raw(u, w), g.raw(v, w)).is_some());
        assert!(
            !open,
            "pair {u} {v} still closes a fork for distance {} after its step",
            rule.target
        );
    }
}

/// The staged completion for fixed parameters and magic distance.
#[derive(Debug, Clone)]
pub struct MagicCompleter {
    params: ParameterTuple,
    schedule: Schedule,
    rules: BTreeMap<u32, ForkRule>,
    table: TriangleTable,
}

impl MagicCompleter {
    pub fn new(params: &ParameterTuple, magic: u32) -> Result<Self> {
        let (schedule, rules) = build_schedule(params, magic)?;
        Ok(Self {
            params: *params,
            schedule,
            rules,
            table: TriangleTable::new(params),
        })
    }

    pub fn params(&self) -> &ParameterTuple {
        &self.params
    }

    pub fn magic(&self) -> u32 {
        self.schedule.magic
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    pub fn rules(&self) -> &BTreeMap<u32, ForkRule> {
        &self.rules
    }

    pub fn table(&self) -> &TriangleTable {
        &self.table
    }

    /// Only the completed graph, without trace or verdict.
    pub fn complete_graph(&self, g: &LabelledGraph) -> Result<LabelledGraph> {
        self.check_delta(g)?;
        let mut current = g.clone();
        for distance in self.schedule.steps.values() {
            let rule = &self.rules[distance];
            current = step_completion(&current, rule);
            assert_single_pass(&current, rule);
        }
        let pairs: Vec<_> = current.missing_pairs().collect();
        for (u, v) in pairs {
            current.put(u, v, self.magic());
        }
        Ok(current)
    }

    pub fn complete(&self, g: &LabelledGraph) -> Result<CompletionOutcome> {
        self.check_delta(g)?;
        let mut records: Vec<TraceRecord> = g
            .edges()
            .map(|(u, v, d)| TraceRecord {
                step: None,
                u,
                v,
                distance: d,
                witness: None,
                tag: TraceTag::Input,
            })
            .collect();

        let mut current = g.clone();
        for (&step, distance) in &self.schedule.steps {
            let rule = &self.rules[distance];
            let (next, assigned) = step_completion_traced(&current, rule);
            assert_single_pass(&next, rule);
            records.extend(assigned.into_iter().map(|a| TraceRecord {
                step: Some(step),
                u: a.u,
                v: a.v,
                distance: rule.target,
                witness: Some(a.witness),
                tag: TraceTag::Fork(a.family),
            }));
            current = next;
        }
        let magic = self.magic();
        let pairs: Vec<_> = current.missing_pairs().collect();
        for (u, v) in pairs {
            current.put(u, v, magic);
            records.push(TraceRecord {
                step: None,
                u,
                v,
                distance: magic,
                witness: None,
                tag: TraceTag::FinalMagic,
            });
        }

        let forbidden = current.forbidden_triangles(&self.table);
        let verdict = if forbidden.is_empty() {
            Verdict::Completable
        } else {
            Verdict::Uncompletable(forbidden)
        };
        Ok(CompletionOutcome {
            trace: CompletionTrace::new(self.params, magic, g.n(), records),
            completed: current,
            verdict,
        })
    }

    pub fn decide(&self, g: &LabelledGraph) -> Result<bool> {
        let completed = self.complete_graph(g)?;
        Ok(completed.forbidden_triangles(&self.table).is_empty())
    }

    fn check_delta(&self, g: &LabelledGraph) -> Result<()> {
        if g.delta() != self.params.delta {
            return input(format!(
                "graph has delta {} but parameters have delta {}",
                g.delta(),
                self.params.delta
            ));
        }
        Ok(())
    }
}

pub fn magic_complete(
    p: &ParameterTuple,
    magic: u32,
    g: &LabelledGraph,
) -> Result<CompletionOutcome> {
    MagicCompleter::new(p, magic)?.complete(g)
}

pub fn decide_completable(p: &ParameterTuple, magic: u32, g: &LabelledGraph) -> Result<bool> {
    MagicCompleter::new(p, magic)?.decide(g)
}

/// Text block listing forbidden triangles of an outcome, one per line.
pub fn describe_forbidden(outcome: &CompletionOutcome) -> String {
    let mut out = String::new();
    if let Verdict::Uncompletable(triangles) = &outcome.verdict {
        let g = &outcome.completed;
        for &(u, v, w) in triangles {
            let labels = (g.raw(u, v), g.raw(u, w), g.raw(v, w));
            writeln!(
                out,
                "forbidden {u} {v} {w} labels {} {} {}",
                labels.0, labels.1, labels.2
            )
            .expect("writing to a String");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::schedule::fork_rule;
    use crate::space::{is_member, LabelledCycle};

    const IIB: ParameterTuple = ParameterTuple::new(5, 3, 3, 16, 13);

    fn fork(a: u32, b: u32) -> LabelledGraph {
        LabelledGraph::from_edges(3, 5, &[(0, 1, a), (1, 2, b)]).unwrap()
    }

    #[test]
    fn single_step_closes_fork() {
        let rule = fork_rule(&IIB, 3, 4);
        let next = step_completion(&fork(1, 5), &rule);
        assert_eq!(next.get(0, 2), Some(4));
    }

    #[test]
    fn step_leaves_complete_graph_alone() {
        let g = LabelledGraph::from_edges(3, 5, &[(0, 1, 1), (1, 2, 5), (0, 2, 4)]).unwrap();
        assert_eq!(step_completion(&g, &fork_rule(&IIB, 3, 4)), g);
        assert_eq!(
            step_completion(&fork(2, 2), &fork_rule(&IIB, 3, 1)),
            fork(2, 2)
        );
    }

    #[test]
    fn path_closed_with_four() {
        let out = magic_complete(&IIB, 3, &fork(1, 5)).unwrap();
        assert_eq!(out.completed.get(0, 2), Some(4));
        let r = out.trace.record(0, 2);
        assert_eq!(
            (r.step, r.witness, r.tag),
            (Some(2), Some(1), TraceTag::Fork(Family::Minus))
        );
    }

    #[test]
    fn four_cycle_1555_completes() {
        let g = LabelledCycle::new(vec![1, 5, 5, 5])
            .unwrap()
            .to_graph(5)
            .unwrap();
        let out = magic_complete(&IIB, 3, &g).unwrap();
        assert_eq!(out.completed.get(0, 2), Some(4));
        assert_eq!(out.completed.get(1, 3), Some(4));
        assert_eq!(out.trace.record(0, 2).step, Some(2));
        assert_eq!(out.trace.record(1, 3).step, Some(2));
        assert!(out.verdict.is_completable());
    }

    #[test]
    fn five_cycle_11555_fails() {
        let g = LabelledCycle::new(vec![1, 1, 5, 5, 5])
            .unwrap()
            .to_graph(5)
            .unwrap();
        let out = magic_complete(&IIB, 3, &g).unwrap();
        assert!(!out.verdict.is_completable());
        assert!(!is_member(&IIB, &out.completed).unwrap());
        assert!(g.is_extended_by(&out.completed));
    }

    #[test]
    fn isolated_pair_gets_magic() {
        let out = magic_complete(&IIB, 3, &LabelledGraph::empty(2, 5)).unwrap();
        assert_eq!(out.completed.get(0, 1), Some(3));
        assert_eq!(out.trace.record(0, 1).tag, TraceTag::FinalMagic);
    }

    #[test]
    fn decider_examples() {
        let bad = LabelledGraph::from_edges(3, 5, &[(0, 1, 5), (1, 2, 5), (0, 2, 5)]).unwrap();
        assert!(!decide_completable(&IIB, 3, &bad).unwrap());
        for a in 1..=5 {
            for b in 1..=5 {
                assert!(decide_completable(&IIB, 3, &fork(a, b)).unwrap());
            }
        }
        assert!(decide_completable(&IIB, 3, &LabelledGraph::empty(4, 5)).unwrap());
    }

    #[test]
    fn refuses_bad_inputs() {
        assert!(magic_complete(&IIB, 3, &LabelledGraph::empty(3, 4)).is_err());
        assert!(magic_complete(
            &ParameterTuple::new(3, 1, 1, 10, 11),
            2,
            &LabelledGraph::empty(3, 3)
        )
        .is_err());
    }

    #[test]
    fn trace_lists_every_pair_once() {
        let g = LabelledCycle::new(vec![1, 1, 5, 5, 5])
            .unwrap()
            .to_graph(5)
            .unwrap();
        let out = magic_complete(&IIB, 3, &g).unwrap();
        assert_eq!(out.trace.records.len(), 10);
        let mut pairs: Vec<_> = out.trace.records.iter().map(|r| (r.u, r.v)).collect();
        pairs.sort_unstable();
        pairs.dedup();
        assert_eq!(pairs.len(), 10);
        let text = out.trace.to_string();
        assert!(text.starts_with("magic M=3 params 5 3 3 16 13\n"));
        assert_eq!(text, magic_complete(&IIB, 3, &g).unwrap().trace.to_string());
    }

    #[test]
    fn complete_members_are_fixed_points() {
        let g = LabelledGraph::from_edges(3, 5, &[(0, 1, 2), (0, 2, 5), (1, 2, 5)]).unwrap();
        let out = magic_complete(&IIB, 3, &g).unwrap();
        assert_eq!(out.completed, g);
        assert!(out.verdict.is_completable());
    }
}
