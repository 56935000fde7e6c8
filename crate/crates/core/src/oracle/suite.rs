//! Sweeps running every property over a scope of instances.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::completion::{MagicCompleter, TraceTag};
use crate::error::{Error, Result};
use crate::oracle::amalgam::amalgamate;
use crate::oracle::checks::{
    automorphism_preservation, magic_provenance, obstacle_soundness, optimality,
    oracle_equivalence, parity, Evidence,
};
use crate::oracle::report::PropertyReport;
use crate::oracle::search::achievable_values;
use crate::params::ParameterTuple;
use crate::space::{is_member, LabelledGraph};

/// Largest exhaustive instance count a sweep will generate.
pub const DEFAULT_SWEEP_BUDGET: u64 = 5_000_000;
/// Vertex count of randomized instances.
pub const RANDOM_VERTICES: usize = 5;
/// Largest structure glued in amalgamation sweeps.
pub const AMALGAMATION_VERTICES: usize = 3;

pub const PROPERTY_ORDER: [&str; 7] = [
    "oracle-equivalence",
    "optimality",
    "parity",
    "automorphisms",
    "magic-provenance",
    "obstacles",
    "amalgamation",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Every partial graph on exactly this many vertices.
    Exhaustive(usize),
    /// Seeded random graphs on [`RANDOM_VERTICES`] vertices.
    Randomized { count: usize, seed: u64 },
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::Exhaustive(n) => write!(f, "exhaustive n={n}"),
            Scope::Randomized { count, seed } => write!(f, "random count={count} seed={seed}"),
        }
    }
}

/// Every partial graph on `n` vertices, ordered by the base-`(δ+1)` code of
/// the label vector over sorted pairs, absent pairs being digit 0.
pub fn all_graphs(n: usize, delta: u32) -> Result<Vec<LabelledGraph>> {
    let pairs: Vec<(usize, usize)> = LabelledGraph::empty(n, delta).pairs().collect();
    let base = u64::from(delta) + 1;
    let total = base
        .checked_pow(pairs.len() as u32)
        .filter(|&t| t <= DEFAULT_SWEEP_BUDGET)
        .ok_or_else(|| {
            Error::Budget(format!(
                "{base}^{} graphs exceed budget {DEFAULT_SWEEP_BUDGET}",
                pairs.len()
            ))
        })?;
    Ok((0..total)
        .map(|mut code| {
            let mut g = LabelledGraph::empty(n, delta);
            for &(u, v) in &pairs {
                let d = (code % base) as u32;
                if d > 0 {
                    g.put(u, v, d);
                }
                code /= base;
            }
            g
        })
        .collect())
}

/// A graph where each pair is absent with probability 1/2 and otherwise
/// uniformly labelled.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, delta: u32) -> LabelledGraph {
    let mut g = LabelledGraph::empty(n, delta);
    let pairs: Vec<_> = g.pairs().collect();
    for (u, v) in pairs {
        if rng.gen_bool(0.5) {
            g.put(u, v, rng.gen_range(1..=delta));
        }
    }
    g
}

/// `count` seeded instances; the first is the fork `(δ, δ)` so the sweep
/// always sees the longest-edge fork.
pub fn random_graphs(n: usize, delta: u32, count: usize, seed: u64) -> Vec<LabelledGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    if count > 0 && n >= 3 {
        let mut fork = LabelledGraph::empty(n, delta);
        fork.put(0, 1, delta);
        fork.put(1, 2, delta);
        out.push(fork);
    }
    while out.len() < count {
        out.push(random_graph(&mut rng, n, delta));
    }
    out
}

/// Inputs for one amalgamation: `(a, b1, b2, emb1, emb2)`.
pub type AmalgamationInstance = (
    LabelledGraph,
    LabelledGraph,
    LabelledGraph,
    Vec<usize>,
    Vec<usize>,
);

/// Complete members of the class on exactly `n` vertices.
pub fn class_members(p: &ParameterTuple, n: usize) -> Result<Vec<LabelledGraph>> {
    let mut out = Vec::new();
    for g in all_graphs(n, p.delta)? {
        if g.is_complete() && is_member(p, &g)? {
            out.push(g);
        }
    }
    Ok(out)
}

fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !cur.contains(&x) {
                cur.push(x);
                go(k, n, cur, out);
                cur.pop();
            }
        }
    }
    go(k, n, &mut cur, &mut out);
    out
}

fn induced(g: &LabelledGraph, emb: &[usize]) -> LabelledGraph {
    let mut a = LabelledGraph::empty(emb.len(), g.delta());
    for i in 0..emb.len() {
        for j in i + 1..emb.len() {
            a.put(i, j, g.raw(emb[i], emb[j]));
        }
    }
    a
}

/// Every pair of complete members with at most `max_vertices` vertices,
/// glued along every common induced substructure.
pub fn amalgamation_instances(
    p: &ParameterTuple,
    max_vertices: usize,
) -> Result<Vec<AmalgamationInstance>> {
    let members: Vec<LabelledGraph> = (1..=max_vertices)
        .map(|n| class_members(p, n))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut out = Vec::new();
    for b1 in &members {
        for b2 in &members {
            for k in 0..=b1.n().min(b2.n()) {
                for emb1 in injections(k, b1.n()) {
                    let a = induced(b1, &emb1);
                    for emb2 in injections(k, b2.n()) {
                        if induced(b2, &emb2) == a {
                            out.push((a.clone(), b1.clone(), b2.clone(), emb1.clone(), emb2));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Seeded amalgamation instances: `b1` is a random member, `a` a random
/// induced substructure, `b2` a random member extending it.
pub fn random_amalgamation_instances(
    p: &ParameterTuple,
    count: usize,
    seed: u64,
) -> Result<Vec<AmalgamationInstance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let members: Vec<Vec<LabelledGraph>> = (0..=AMALGAMATION_VERTICES)
        .map(|n| class_members(p, n))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let b1 = members[rng.gen_range(1..=AMALGAMATION_VERTICES)]
            .choose(&mut rng)
            .expect("members exist at every size")
            .clone();
        let k = rng.gen_range(0..=b1.n());
        let mut emb1: Vec<usize> = (0..b1.n()).collect();
        emb1.shuffle(&mut rng);
        emb1.truncate(k);
        let a = induced(&b1, &emb1);
        let size = rng.gen_range(k.max(1)..=AMALGAMATION_VERTICES);
        let candidates: Vec<(&LabelledGraph, Vec<usize>)> = members[size]
            .iter()
            .flat_map(|b2| {
                injections(k, size)
                    .into_iter()
                    .filter(|emb2| induced(b2, emb2) == a)
                    .map(move |emb2| (b2, emb2))
            })
            .collect();
        let (b2, emb2) = candidates
            .choose(&mut rng)
            .expect("every member extends to a larger member");
        let b2: LabelledGraph = (*b2).clone();
        let emb2 = emb2.clone();
        out.push((a, b1, b2, emb1, emb2));
    }
    Ok(out)
}

/// Runs `check`, turning budget errors into a tally instead of a failure.
fn guarded(name: &str, check: impl FnOnce() -> Result<PropertyReport>) -> Result<PropertyReport> {
    match check() {
        Err(Error::Budget(_)) => {
            let mut report = PropertyReport::new(name);
            report.count("over-budget");
            Ok(report)
        }
        other => other,
    }
}

fn graph_properties(completer: &MagicCompleter, g: &LabelledGraph) -> Result<Vec<PropertyReport>> {
    let p = completer.params();
    let outcome = completer.complete(g)?;
    let mut out = vec![guarded("oracle-equivalence", || {
        oracle_equivalence(p, g, &outcome)
    })?];
    match achievable_values(p, g) {
        Ok(values) => {
            let completable = values.is_some();
            let evidence = Evidence {
                outcome: outcome.clone(),
                values,
            };
            if completable {
                out.push(optimality(completer, g, &evidence)?);
                out.push(parity(completer, g, &evidence)?);
            }
        }
        Err(Error::Budget(_)) => {
            for name in ["optimality", "parity"] {
                let mut report = PropertyReport::new(name);
                report.count("over-budget");
                out.push(report);
            }
        }
        Err(e) => return Err(e),
    }
    out.push(guarded("automorphisms", || {
        automorphism_preservation(p, g, &outcome.completed)
    })?);
    out.push(magic_provenance(p, g, &outcome)?);
    out.push(guarded("obstacles", || obstacle_soundness(p, g, &outcome))?);
    Ok(out)
}

fn amalgamation_property(
    p: &ParameterTuple,
    magic: u32,
    instance: &AmalgamationInstance,
) -> Result<PropertyReport> {
    let (a, b1, b2, emb1, emb2) = instance;
    let mut report = PropertyReport::new("amalgamation");
    report.instances = 1;
    let outcome = amalgamate(p, magic, a, b1, b2, emb1, emb2)?;
    if !outcome.verdict.is_completable() {
        let mut glued = outcome.completed.clone();
        for (u, v) in glued.pairs().collect::<Vec<_>>() {
            if outcome.trace.record(u, v).tag != TraceTag::Input {
                glued.put(u, v, 0);
            }
        }
        report.fail(
            &glued,
            format!("amalgamation over {} shared vertices failed", a.n()),
        );
    }
    Ok(report)
}

fn merge_in_order(parts: Vec<Vec<PropertyReport>>) -> Vec<PropertyReport> {
    let mut merged: Vec<PropertyReport> = PROPERTY_ORDER
        .iter()
        .map(|name| PropertyReport::new(*name))
        .collect();
    for part in parts {
        for report in part {
            let slot = PROPERTY_ORDER
                .iter()
                .position(|n| *n == report.name)
                .expect("known property name");
            merged[slot].merge(report);
        }
    }
    merged
}

pub fn run_verification_suite(
    p: &ParameterTuple,
    magic: u32,
    scope: Scope,
) -> Result<Vec<PropertyReport>> {
    run_verification_suite_with_jobs(p, magic, scope, 1)
}

/// Runs every property over `scope` on `jobs` threads. Reports are merged
/// by instance order, so output does not depend on `jobs`.
pub fn run_verification_suite_with_jobs(
    p: &ParameterTuple,
    magic: u32,
    scope: Scope,
    jobs: usize,
) -> Result<Vec<PropertyReport>> {
    let completer = MagicCompleter::new(p, magic)?;
    let (graphs, amalgams) = match scope {
        Scope::Exhaustive(n) => (
            all_graphs(n, p.delta)?,
            amalgamation_instances(p, n.min(AMALGAMATION_VERTICES))?,
        ),
        Scope::Randomized { count, seed } => (
            random_graphs(RANDOM_VERTICES, p.delta, count, seed),
            random_amalgamation_instances(p, count, seed)?,
        ),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Usage(format!("cannot start {jobs} worker threads: {e}")))?;
    pool.install(|| {
        let mut parts: Vec<Vec<PropertyReport>> = graphs
            .par_iter()
            .map(|g| graph_properties(&completer, g))
            .collect::<Result<_>>()?;
        let amalgam_parts: Vec<Vec<PropertyReport>> = amalgams
            .par_iter()
            .map(|inst| amalgamation_property(p, magic, inst).map(|r| vec![r]))
            .collect::<Result<_>>()?;
        parts.extend(amalgam_parts);
        Ok(merge_in_order(parts))
    })
}

pub fn format_reports(reports: &[PropertyReport]) -> String {
    reports.iter().map(ToString::to_string).collect()
}
