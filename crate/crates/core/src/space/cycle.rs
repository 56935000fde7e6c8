use std::fmt;

use crate::error::{input, Result};
use crate::space::graph::LabelledGraph;

/// A cyclic sequence of distances. Edge `i` joins positions `i` and
/// `i + 1 (mod len)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledCycle {
    labels: Vec<u32>,
}

impl LabelledCycle {
    pub fn new(labels: Vec<u32>) -> Result<Self> {
        if labels.len() < 3 {
            return input(format!(
                "a cycle needs at least 3 edges, got {}",
                labels.len()
            ));
        }
        if labels.contains(&0) {
            return input("cycle distances must be positive");
        }
        Ok(Self { labels })
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn perimeter(&self) -> u32 {
        self.labels.iter().sum()
    }

    /// Lexicographically least representative over all rotations and both
    /// orientations.
    pub fn canonical(&self) -> LabelledCycle {
        let len = self.labels.len();
        let mut reversed = self.labels.clone();
        reversed.reverse();
        let mut best: Option<Vec<u32>> = None;
        for seq in [&self.labels, &reversed] {
            for shift in 0..len {
                let candidate: Vec<u32> = (0..len).map(|i| seq[(shift + i) % len]).collect();
                if best.as_ref().is_none_or(|b| candidate < *b) {
                    best = Some(candidate);
                }
            }
        }
        LabelledCycle {
            labels: best.expect("non-empty cycle"),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    /// The graph on `len` vertices with only the cycle edges present.
    pub fn to_graph(&self, delta: u32) -> Result<LabelledGraph> {
        let len = self.labels.len();
        let mut g = LabelledGraph::empty(len, delta);
        for (i, &d) in self.labels.iter().enumerate() {
            g.set(i, (i + 1) % len, d)?;
        }
        Ok(g)
    }

    /// Reads one line of whitespace-separated distances.
    pub fn parse(text: &str) -> Result<Self> {
        let labels = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| crate::Error::Input(format!("bad cycle distance `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(labels)
    }
}

pub fn canonical_cycle(c: &LabelledCycle) -> LabelledCycle {
    c.canonical()
}

pub fn cycle_to_graph(c: &LabelledCycle, delta: u32) -> Result<LabelledGraph> {
    c.to_graph(delta)
}

impl fmt::Display for LabelledCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Every label sequence of the given length over `1..=delta`, in
/// lexicographic order.
pub(crate) fn all_sequences(delta: u32, len: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (delta as u64).pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut seq = vec![0; len];
        for slot in seq.iter_mut().rev() {
            *slot = (idx % delta as u64) as u32 + 1;
            idx /= delta as u64;
        }
        seq
    })
}
