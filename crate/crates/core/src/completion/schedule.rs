//! Fork rules and the time function of the magic completion.
//!
//! For a magic distance `M`, a missing pair is completed with `x < M` when
//! it closes a fork `(a, b)` with `a + b = x` or `C - 1 - a - b = x`, and
//! with `x > M` when `|a - b| = x`. Distances below `M` are inserted at time
//! `2x - 1`, distances above `M` at time `2(δ - x)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{input, Result};
use crate::params::{eligible_magic, ParameterTuple};

/// Which fork family produced an assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `a + b = x`
    Plus,
    /// `|a - b| = x`
    Minus,
    /// `C - 1 - a - b = x`
    CBound,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Plus => "plus",
            Family::Minus => "minus",
            Family::CBound => "cbound",
        })
    }
}

/// An unordered fork `(a, b)` with `a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fork {
    pub a: u32,
    pub b: u32,
    pub family: Family,
}

/// The forks completed with distance `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForkRule {
    pub target: u32,
    pub forks: Vec<Fork>,
    stride: usize,
    lookup: Vec<Option<Family>>,
}

impl ForkRule {
    pub fn new(delta: u32, target: u32, mut forks: Vec<Fork>) -> Self {
        forks.sort();
        forks.dedup();
        let stride = delta as usize + 1;
        let mut lookup = vec![None; stride * stride];
        for f in &forks {
            lookup[f.a as usize * stride + f.b as usize] = Some(f.family);
            lookup[f.b as usize * stride + f.a as usize] = Some(f.family);
        }
        Self {
            target,
            forks,
            stride,
            lookup,
        }
    }

    /// The family of fork `{a, b}` if this rule contains it. Zero labels
    /// (missing pairs) never match.
    #[inline]
    pub fn family_of(&self, a: u32, b: u32) -> Option<Family> {
        if a == 0 || b == 0 {
            return None;
        }
        self.lookup
            .get(a as usize * self.stride + b as usize)
            .copied()
            .flatten()
    }

    pub fn is_empty(&self) -> bool {
        self.forks.is_empty()
    }

    /// Whether some fork of this rule mentions distance `b`.
    pub fn mentions(&self, b: u32) -> bool {
        self.forks.iter().any(|f| f.a == b || f.b == b)
    }
}

/// `t_M(x)`; `None` for `x = M`.
pub fn time_of(delta: u32, magic: u32, x: u32) -> Option<u32> {
    use std::cmp::Ordering::*;
    match x.cmp(&magic) {
        Less => Some(2 * x - 1),
        Greater => Some(2 * (delta - x)),
        Equal => None,
    }
}

/// The order in which distances other than `M` are inserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub magic: u32,
    pub delta: u32,
    /// Step index to the distance inserted at that step.
    pub steps: BTreeMap<u32, u32>,
}

impl Schedule {
    pub fn time(&self, x: u32) -> Option<u32> {
        time_of(self.delta, self.magic, x)
    }

    pub fn last_step(&self) -> Option<u32> {
        self.steps.keys().next_back().copied()
    }
}

/// Raw fork families for target `x` under magic distance `magic`.
pub fn fork_rule(p: &ParameterTuple, magic: u32, x: u32) -> ForkRule {
    let delta = p.delta;
    let c = p.c() as i64;
    let mut forks = Vec::new();
    for a in 1..=delta {
        for b in a..=delta {
            let family = if x < magic {
                if a + b == x {
                    Some(Family::Plus)
                } else if c - 1 - i64::from(a + b) == i64::from(x) {
                    Some(Family::CBound)
                } else {
                    None
                }
            } else if x > magic && b - a == x {
                Some(Family::Minus)
            } else {
                None
            };
            if let Some(family) = family {
                forks.push(Fork { a, b, family });
            }
        }
    }
    ForkRule::new(delta, x, forks)
}

/// Builds the schedule and per-distance fork rules for an eligible `M`.
pub fn build_schedule(
    p: &ParameterTuple,
    magic: u32,
) -> Result<(Schedule, BTreeMap<u32, ForkRule>)> {
    let eligible = eligible_magic(p)?;
    if !eligible.contains(&magic) {
        return input(format!(
            "M={magic} is not an eligible magic distance for ({p})"
        ));
    }
    let mut steps = BTreeMap::new();
    let mut rules = BTreeMap::new();
    for x in (1..=p.delta).filter(|&x| x != magic) {
        let t = time_of(p.delta, magic, x).expect("x != M");
        let previous = steps.insert(t, x);
        assert!(previous.is_none(), "time function is not injective at {t}");
        rules.insert(x, fork_rule(p, magic, x));
    }
    Ok((
        Schedule {
            magic,
            delta: p.delta,
            steps,
        },
        rules,
    ))
}
