use std::fmt;

use crate::error::{input, Result};
use crate::params::ParameterTuple;

/// A constraint a triangle can break.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    NonMetric,
    K1Bound,
    K2Bound,
    C0Bound,
    C1Bound,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bound::NonMetric => "non-metric",
            Bound::K1Bound => "K1",
            Bound::K2Bound => "K2",
            Bound::C0Bound => "C0",
            Bound::C1Bound => "C1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleVerdict {
    /// Violated bounds in `Bound` order; empty means the triangle is allowed.
    pub violated: Vec<Bound>,
    pub perimeter: u32,
    pub min_edge: u32,
}

impl TriangleVerdict {
    pub fn is_allowed(&self) -> bool {
        self.violated.is_empty()
    }
}

pub fn classify_triangle(p: &ParameterTuple, a: u32, b: u32, c: u32) -> Result<TriangleVerdict> {
    for d in [a, b, c] {
        if d == 0 || d > p.delta {
            return input(format!("distance {d} outside 1..={}", p.delta));
        }
    }
    let perimeter = a + b + c;
    let min_edge = a.min(b).min(c);
    let max_edge = a.max(b).max(c);
    let odd = perimeter % 2 == 1;
    let metric = 2 * max_edge <= perimeter;

    let mut violated = Vec::new();
    if !metric {
        violated.push(Bound::NonMetric);
    }
    // K₁ only applies to metric triples; a short non-metric triple is
    // already reported as such.
    if metric && odd && perimeter < 2 * p.k1 + 1 {
        violated.push(Bound::K1Bound);
    }
    if odd && perimeter >= 2 * p.k2 + 2 * min_edge {
        violated.push(Bound::K2Bound);
    }
    if !odd && perimeter >= p.c0 {
        violated.push(Bound::C0Bound);
    }
    if odd && perimeter >= p.c1 {
        violated.push(Bound::C1Bound);
    }
    Ok(TriangleVerdict {
        violated,
        perimeter,
        min_edge,
    })
}

/// Precomputed allowed/forbidden lookup for all triples in `1..=δ`.
#[derive(Debug, Clone)]
pub struct TriangleTable {
    delta: u32,
    stride: usize,
    allowed: Vec<bool>,
}

impl TriangleTable {
    pub fn new(p: &ParameterTuple) -> Self {
        let stride = p.delta as usize + 1;
        let mut allowed = vec![false; stride * stride * stride];
        for a in 1..=p.delta {
            for b in 1..=p.delta {
                for c in 1..=p.delta {
                    let v = classify_triangle(p, a, b, c).expect("in range");
                    allowed[(a as usize * stride + b as usize) * stride + c as usize] =
                        v.is_allowed();
                }
            }
        }
        Self {
            delta: p.delta,
            stride,
            allowed,
        }
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    #[inline]
    pub fn allowed(&self, a: u32, b: u32, c: u32) -> bool {
        self.allowed[(a as usize * self.stride + b as usize) * self.stride + c as usize]
    }
}
