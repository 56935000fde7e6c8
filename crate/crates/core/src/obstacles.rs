//! Uncompletable cycles: backward extraction from failed runs, exhaustive
//! catalogues, and closed-form cycle families.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use rayon::prelude::*;

use crate::completion::{CompletionOutcome, MagicCompleter, TraceTag, Verdict};
use crate::error::{Error, Result};
use crate::params::ParameterTuple;
use crate::space::cycle::all_sequences;
use crate::space::LabelledCycle;

/// Default cap on `δ^length` for [`enumerate_uncompletable_cycles`].
pub const DEFAULT_CYCLE_BUDGET: u64 = 10_000_000;

/// An uncompletable cycle together with a homomorphism into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstacle {
    pub cycle: LabelledCycle,
    /// `hom[i]` is the input vertex at cycle position `i`.
    pub hom: Vec<usize>,
}

/// Longest cycle backward extraction can produce.
pub fn obstacle_length_bound(delta: u32) -> usize {
    3usize << delta
}

/// Walks a failed run backwards from its first forbidden triangle, splitting
/// each edge added at step `k` into the fork through its witness.
pub fn extract_obstacle(outcome: &CompletionOutcome) -> Result<Obstacle> {
    let Verdict::Uncompletable(triangles) = &outcome.verdict else {
        return Err(Error::Usage(
            "the run was completable, there is no obstacle".into(),
        ));
    };
    let &(x, y, z) = triangles
        .first()
        .expect("uncompletable runs list at least one triangle");
    let trace = &outcome.trace;
    let mut walk = vec![x, y, z];
    for (i, &u) in walk.iter().enumerate() {
        let v = walk[(i + 1) % walk.len()];
        if trace.record(u, v).tag == TraceTag::FinalMagic {
            return Err(Error::Input(format!(
                "forbidden triangle uses pair {u} {v} that was set to M at the end"
            )));
        }
    }

    let last = trace.records.iter().filter_map(|r| r.step).max();
    if let Some(last) = last {
        for k in (0..=last).rev() {
            let mut next = Vec::with_capacity(2 * walk.len());
            for (i, &u) in walk.iter().enumerate() {
                let v = walk[(i + 1) % walk.len()];
                next.push(u);
                let r = trace.record(u, v);
                if r.step == Some(k) {
                    next.push(r.witness.expect("fork records carry a witness"));
                }
            }
            walk = next;
        }
    }

    let g = &outcome.completed;
    let labels = (0..walk.len())
        .map(|i| g.raw(walk[i], walk[(i + 1) % walk.len()]))
        .collect();
    Ok(Obstacle {
        cycle: LabelledCycle::new(labels)?,
        hom: walk,
    })
}

/// Every canonical cycle of exactly `length` edges that the magic completion
/// fails on, sorted.
pub fn enumerate_uncompletable_cycles(
    p: &ParameterTuple,
    magic: u32,
    length: usize,
) -> Result<Vec<LabelledCycle>> {
    enumerate_uncompletable_cycles_with(p, magic, length, DEFAULT_CYCLE_BUDGET)
}

pub fn enumerate_uncompletable_cycles_with(
    p: &ParameterTuple,
    magic: u32,
    length: usize,
    budget: u64,
) -> Result<Vec<LabelledCycle>> {
    if length < 3 {
        return Err(Error::Input(format!(
            "cycles need at least 3 edges, got {length}"
        )));
    }
    let space = u64::from(p.delta).checked_pow(length as u32);
    if space.is_none_or(|s| s > budget) {
        return Err(Error::Budget(format!(
            "{}^{length} label sequences exceed budget {budget}",
            p.delta
        )));
    }
    let completer = MagicCompleter::new(p, magic)?;
    let found: Result<BTreeSet<Vec<u32>>> = (1..=p.delta)
        .into_par_iter()
        .map(|first| {
            let mut out = BTreeSet::new();
            for rest in all_sequences(p.delta, length - 1) {
                let mut labels = Vec::with_capacity(length);
                labels.push(first);
                labels.extend(rest);
                let cycle = LabelledCycle::new(labels)?;
                if cycle.is_canonical() && !completer.decide(&cycle.to_graph(p.delta)?)? {
                    out.insert(cycle.labels().to_vec());
                }
            }
            Ok(out)
        })
        .try_reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            Ok(a)
        });
    found?.into_iter().map(LabelledCycle::new).collect()
}

pub fn format_catalogue(p: &ParameterTuple, length: usize, cycles: &[LabelledCycle]) -> String {
    let mut out = format!("obstacles {p} length={length}\n");
    for c in cycles {
        writeln!(out, "{c}").expect("writing to a String");
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycleFamily {
    NonMetric,
    C0Cycle,
    C1Cycle,
    K1Cycle,
    K2Cycle,
}

impl fmt::Display for CycleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleFamily::NonMetric => "non-metric",
            CycleFamily::C0Cycle => "C0",
            CycleFamily::C1Cycle => "C1",
            CycleFamily::K1Cycle => "K1",
            CycleFamily::K2Cycle => "K2",
        })
    }
}

/// Edges of a cycle split into the `d` role and the `x` role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub d: Vec<u32>,
    pub x: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMatch {
    pub family: CycleFamily,
    pub partition: Partition,
    pub n: u32,
}

impl fmt::Display for FamilyMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        write!(
            f,
            "{} n={} d=[{}] x=[{}]",
            self.family,
            self.n,
            join(&self.partition.d),
            join(&self.partition.x)
        )
    }
}

/// Puts the `s` largest labels in the `d` role. For a fixed count this
/// maximises `Σd − Σx`, so it is the only split worth testing.
fn top_split(sorted_desc: &[u32], s: usize) -> (Partition, i64, i64) {
    let d = sorted_desc[..s].to_vec();
    let x = sorted_desc[s..].to_vec();
    let sd = d.iter().map(|&v| i64::from(v)).sum();
    let sx = x.iter().map(|&v| i64::from(v)).sum();
    (Partition { d, x }, sd, sx)
}

/// Families whose defining inequality some assignment of the cycle's edges
/// satisfies, reading the role assignment as a multiset split. Each family
/// is reported once, with the smallest `n` that works.
pub fn family_classify(p: &ParameterTuple, cycle: &LabelledCycle) -> Vec<FamilyMatch> {
    let mut labels = cycle.labels().to_vec();
    labels.sort_unstable_by(|a, b| b.cmp(a));
    let len = labels.len();
    let perimeter = i64::from(cycle.perimeter());
    let odd = perimeter % 2 == 1;
    let max = i64::from(labels[0]);
    let metric = 2 * max <= perimeter;
    let c = i64::from(p.c());
    let mut out = Vec::new();

    if !metric {
        let (partition, _, _) = top_split(&labels, 1);
        out.push(FamilyMatch {
            family: CycleFamily::NonMetric,
            partition,
            n: 0,
        });
    }

    let (c_family, c_bound) = if odd {
        (CycleFamily::C1Cycle, i64::from(p.c1))
    } else {
        (CycleFamily::C0Cycle, i64::from(p.c0))
    };
    for n in 0.. {
        let s = 2 * n + 1;
        if s > len {
            break;
        }
        let (partition, sd, sx) = top_split(&labels, s);
        if sd > n as i64 * (c_bound - 1) + sx {
            out.push(FamilyMatch {
                family: c_family,
                partition,
                n: n as u32,
            });
            break;
        }
    }

    if metric && odd && 2 * i64::from(p.k1) > perimeter {
        out.push(FamilyMatch {
            family: CycleFamily::K1Cycle,
            partition: Partition {
                d: Vec::new(),
                x: labels.clone(),
            },
            n: 0,
        });
    }

    if odd {
        for n in 0.. {
            let s = 2 * n + 2;
            if s > len {
                break;
            }
            let (partition, sd, sx) = top_split(&labels, s);
            if sd > n as i64 * (c - 1) + 2 * i64::from(p.k2) + sx {
                out.push(FamilyMatch {
                    family: CycleFamily::K2Cycle,
                    partition,
                    n: n as u32,
                });
                break;
            }
        }
    }

    out.sort_by_key(|m| m.family);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::magic_complete;
    use crate::oracle::brute_force_completable;
    use crate::space::{is_homomorphism, LabelledGraph};

    const IIB: ParameterTuple = ParameterTuple::new(5, 3, 3, 16, 13);

    fn cycle(labels: &[u32]) -> LabelledCycle {
        LabelledCycle::new(labels.to_vec()).unwrap()
    }

    fn check_obstacle(g: &LabelledGraph) -> Obstacle {
        let out = magic_complete(&IIB, 3, g).unwrap();
        let ob = extract_obstacle(&out).unwrap();
        let cg = ob.cycle.to_graph(5).unwrap();
        assert!(is_homomorphism(&cg, g, &ob.hom));
        assert!(brute_force_completable(&IIB, &cg).unwrap().is_none());
        assert!(ob.cycle.len() <= obstacle_length_bound(5));
        ob
    }

    #[test]
    fn triangle_is_its_own_obstacle() {
        let g = LabelledGraph::from_edges(3, 5, &[(0, 1, 1), (1, 2, 2), (0, 2, 2)]).unwrap();
        let ob = check_obstacle(&g);
        assert_eq!(ob.hom, vec![0, 1, 2]);
        assert_eq!(ob.cycle.canonical(), cycle(&[1, 2, 2]));
    }

    #[test]
    fn five_cycle_obstacle() {
        check_obstacle(&cycle(&[1, 1, 5, 5, 5]).to_graph(5).unwrap());
    }

    #[test]
    fn four_cycle_obstacle() {
        check_obstacle(&cycle(&[1, 1, 1, 5]).to_graph(5).unwrap());
    }

    #[test]
    fn completable_run_has_no_obstacle() {
        let out = magic_complete(&IIB, 3, &cycle(&[1, 5, 5, 5]).to_graph(5).unwrap()).unwrap();
        assert!(matches!(extract_obstacle(&out), Err(Error::Usage(_))));
    }

    #[test]
    fn catalogues() {
        let five: Vec<String> = enumerate_uncompletable_cycles(&IIB, 3, 5)
            .unwrap()
            .iter()
            .map(|c| c.labels().iter().map(u32::to_string).collect())
            .collect();
        assert_eq!(
            five,
            ["11111", "11115", "11155", "11515", "11555", "15155", "15555", "55555"]
        );
        assert!(enumerate_uncompletable_cycles(&IIB, 3, 6)
            .unwrap()
            .is_empty());
        let p = ParameterTuple::new(3, 1, 3, 10, 11);
        assert_eq!(
            enumerate_uncompletable_cycles(&p, 2, 3).unwrap(),
            vec![cycle(&[1, 1, 3])]
        );
    }

    #[test]
    fn catalogue_budget() {
        assert!(matches!(
            enumerate_uncompletable_cycles_with(&IIB, 3, 8, 1000),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn family_examples() {
        let p3 = ParameterTuple::new(3, 1, 3, 10, 11);
        let families = |p: &ParameterTuple, l: &[u32]| -> Vec<CycleFamily> {
            family_classify(p, &cycle(l))
                .into_iter()
                .map(|m| m.family)
                .collect()
        };
        assert!(families(&p3, &[1, 1, 3]).contains(&CycleFamily::NonMetric));
        assert_eq!(families(&IIB, &[1, 1, 1, 1, 1]), vec![CycleFamily::K1Cycle]);
        let c1 = family_classify(&IIB, &cycle(&[5, 5, 5]));
        assert_eq!(c1.len(), 1);
        assert_eq!((c1[0].family, c1[0].n), (CycleFamily::C1Cycle, 1));
        assert!(family_classify(&IIB, &cycle(&[3, 3, 3])).is_empty());
    }

    #[test]
    fn non_metric_is_the_zero_c_family() {
        for labels in all_sequences(5, 4) {
            let found = family_classify(&IIB, &LabelledCycle::new(labels).unwrap());
            let non_metric = found.iter().any(|m| m.family == CycleFamily::NonMetric);
            let zero_c = found.iter().any(|m| {
                matches!(m.family, CycleFamily::C0Cycle | CycleFamily::C1Cycle) && m.n == 0
            });
            assert_eq!(non_metric, zero_c);
        }
    }
}
