use std::collections::BTreeMap;
use std::fmt;

use crate::space::{serialize_graph, LabelledGraph};

/// One failing instance of a property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    /// The instance in graph file format, so it can be replayed.
    pub instance: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub name: String,
    pub instances: u64,
    pub failures: Vec<Failure>,
    /// Named tallies, e.g. how often a particular clause fired.
    pub counters: BTreeMap<String, u64>,
}

impl PropertyReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            instances: 0,
            failures: Vec::new(),
            counters: BTreeMap::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn fail(&mut self, g: &LabelledGraph, detail: impl Into<String>) {
        self.failures.push(Failure {
            instance: serialize_graph(g),
            detail: detail.into(),
        });
    }

    pub fn count(&mut self, key: &str) {
        self.add(key, 1);
    }

    pub fn add(&mut self, key: &str, n: u64) {
        *self.counters.entry(key.to_owned()).or_default() += n;
    }

    pub fn counter(&self, key: &str) -> u64 {
        self.counters.get(key).copied().unwrap_or(0)
    }

    /// Folds `other` in after `self`; names must match.
    pub fn merge(&mut self, other: PropertyReport) {
        debug_assert_eq!(self.name, other.name);
        self.instances += other.instances;
        self.failures.extend(other.failures);
        for (k, v) in other.counters {
            *self.counters.entry(k).or_default() += v;
        }
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PROPERTY {} instances={} failures={}",
            self.name,
            self.instances,
            self.failures.len()
        )?;
        for (k, v) in &self.counters {
            write!(f, " {k}={v}")?;
        }
        writeln!(f)?;
        for failure in &self.failures {
            writeln!(f, "counterexample {}", failure.detail)?;
            f.write_str(&failure.instance)?;
            writeln!(f, "end")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_merge() {
        let mut a = PropertyReport::new("demo");
        a.instances = 2;
        a.count("hits");
        let mut b = PropertyReport::new("demo");
        b.instances = 1;
        b.fail(&LabelledGraph::empty(2, 3), "pair 0 1");
        b.count("hits");
        a.merge(b);
        assert!(!a.passed());
        assert_eq!(
            a.to_string(),
            "PROPERTY demo instances=3 failures=1 hits=2\ncounterexample pair 0 1\ngraph 2 3\nend\n"
        );
    }
}
