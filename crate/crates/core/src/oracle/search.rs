//! Depth-first search over assignments of the missing pairs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::params::ParameterTuple;
use crate::space::{LabelledGraph, TriangleTable};

/// Sorted achievable values per vertex pair.
pub type ValueMap = BTreeMap<(usize, usize), Vec<u32>>;

/// Default cap on missing pairs for [`brute_force_completable`].
pub const DEFAULT_SEARCH_PAIRS: usize = 24;
/// Default cap on missing pairs for [`enumerate_all_completions`].
pub const DEFAULT_ENUMERATION_PAIRS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValueOrder {
    #[default]
    Ascending,
    Descending,
}

/// All completions of one input, in lexicographic order of the
/// assignment vector over the missing pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompletionSet {
    pub completions: Vec<LabelledGraph>,
}

impl CompletionSet {
    pub fn len(&self) -> usize {
        self.completions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.completions.is_empty()
    }

    /// Sorted distinct values taken by pair `{u, v}`.
    pub fn values(&self, u: usize, v: usize) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .completions
            .iter()
            .filter_map(|g| g.get(u, v))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

struct Search<'a> {
    table: &'a TriangleTable,
    missing: Vec<(usize, usize)>,
    values: Vec<u32>,
}

impl Search<'_> {
    fn new<'a>(
        p: &ParameterTuple,
        table: &'a TriangleTable,
        g: &LabelledGraph,
        order: ValueOrder,
        max_pairs: usize,
    ) -> Result<Search<'a>> {
        if g.delta() != p.delta {
            return Err(Error::Input(format!(
                "graph has delta {} but parameters have delta {}",
                g.delta(),
                p.delta
            )));
        }
        let missing: Vec<_> = g.missing_pairs().collect();
        if missing.len() > max_pairs {
            return Err(Error::Budget(format!(
                "{} missing pairs exceed the search budget of {max_pairs}",
                missing.len()
            )));
        }
        let mut values: Vec<u32> = (1..=p.delta).collect();
        if order == ValueOrder::Descending {
            values.reverse();
        }
        Ok(Search {
            table,
            missing,
            values,
        })
    }

    /// Whether pair `{u, v}` closes no forbidden triangle with assigned pairs.
    fn consistent(&self, g: &LabelledGraph, u: usize, v: usize) -> bool {
        let d = g.raw(u, v);
        (0..g.n()).all(|w| {
            let (a, b) = (g.raw(u, w), g.raw(v, w));
            w == u || w == v || a == 0 || b == 0 || self.table.allowed(d, a, b)
        })
    }

    /// Calls `visit` on every completion until it returns `false`. Returns
    /// whether the search ran to the end.
    fn run(
        &self,
        g: &mut LabelledGraph,
        i: usize,
        visit: &mut dyn FnMut(&LabelledGraph) -> bool,
    ) -> bool {
        if i == self.missing.len() {
            return visit(g);
        }
        let (u, v) = self.missing[i];
        for &d in &self.values {
            g.put(u, v, d);
            if self.consistent(g, u, v) && !self.run(g, i + 1, visit) {
                g.put(u, v, 0);
                return false;
            }
        }
        g.put(u, v, 0);
        true
    }
}

fn input_is_clean(g: &LabelledGraph, table: &TriangleTable) -> bool {
    g.edges().all(|(u, v, d)| {
        (v + 1..g.n()).all(|w| {
            let (a, b) = (g.raw(u, w), g.raw(v, w));
            a == 0 || b == 0 || table.allowed(d, a, b)
        })
    })
}

pub fn brute_force_completable(
    p: &ParameterTuple,
    g: &LabelledGraph,
) -> Result<Option<LabelledGraph>> {
    brute_force_completable_with(p, g, ValueOrder::Ascending, DEFAULT_SEARCH_PAIRS)
}

/// The first completion found, trying values in `order` for missing pairs in
/// lexicographic order.
pub fn brute_force_completable_with(
    p: &ParameterTuple,
    g: &LabelledGraph,
    order: ValueOrder,
    max_pairs: usize,
) -> Result<Option<LabelledGraph>> {
    let table = TriangleTable::new(p);
    let search = Search::new(p, &table, g, order, max_pairs)?;
    if !input_is_clean(g, &table) {
        return Ok(None);
    }
    let mut found = None;
    search.run(&mut g.clone(), 0, &mut |c| {
        found = Some(c.clone());
        false
    });
    Ok(found)
}

pub fn enumerate_all_completions(p: &ParameterTuple, g: &LabelledGraph) -> Result<CompletionSet> {
    enumerate_all_completions_with(p, g, DEFAULT_ENUMERATION_PAIRS)
}

pub fn enumerate_all_completions_with(
    p: &ParameterTuple,
    g: &LabelledGraph,
    max_pairs: usize,
) -> Result<CompletionSet> {
    let table = TriangleTable::new(p);
    let search = Search::new(p, &table, g, ValueOrder::Ascending, max_pairs)?;
    let mut completions = Vec::new();
    if input_is_clean(g, &table) {
        search.run(&mut g.clone(), 0, &mut |c| {
            completions.push(c.clone());
            true
        });
    }
    Ok(CompletionSet { completions })
}

/// For every pair, the sorted values it takes across all completions.
/// `None` when there is no completion. Input edges map to their own label.
///
/// Each (pair, value) is settled by its own existence search, so this never
/// materialises the full completion set.
pub fn achievable_values(p: &ParameterTuple, g: &LabelledGraph) -> Result<Option<ValueMap>> {
    let table = TriangleTable::new(p);
    let search = Search::new(p, &table, g, ValueOrder::Ascending, DEFAULT_SEARCH_PAIRS)?;
    if !input_is_clean(g, &table) {
        return Ok(None);
    }
    let stride = p.delta as usize + 1;
    let mut seen = vec![false; g.n() * g.n() * stride];
    let mark = |seen: &mut Vec<bool>, c: &LabelledGraph| {
        for (u, v, d) in c.edges() {
            seen[(u * c.n() + v) * stride + d as usize] = true;
        }
    };

    let mut any = false;
    search.run(&mut g.clone(), 0, &mut |c| {
        mark(&mut seen, c);
        any = true;
        false
    });
    if !any {
        return Ok(None);
    }

    let mut fixed = g.clone();
    for &(u, v) in &search.missing {
        for d in 1..=p.delta {
            if seen[(u * g.n() + v) * stride + d as usize] {
                continue;
            }
            fixed.put(u, v, d);
            if search.consistent(&fixed, u, v) {
                let rest = Search {
                    table: &table,
                    missing: search
                        .missing
                        .iter()
                        .copied()
                        .filter(|&q| q != (u, v))
                        .collect(),
                    values: search.values.clone(),
                };
                rest.run(&mut fixed, 0, &mut |c| {
                    mark(&mut seen, c);
                    false
                });
            }
            fixed.put(u, v, 0);
        }
    }

    let mut out = BTreeMap::new();
    for (u, v) in g.pairs() {
        let values: Vec<u32> = (1..=p.delta)
            .filter(|&d| seen[(u * g.n() + v) * stride + d as usize])
            .collect();
        out.insert((u, v), values);
    }
    Ok(Some(out))
}
