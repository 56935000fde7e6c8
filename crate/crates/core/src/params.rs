//! Parameter tuples `(δ, K₁, K₂, C₀, C₁)`: acceptability, admissibility
//! cases, magic distances and the choice of the magic parameter.

use std::fmt;

use crate::error::{input, Result};
use crate::space::triangle::classify_triangle;

/// The five numeric parameters of a primitive 3-constrained class.
///
/// `C` and `C′` are always derived from `c0` and `c1`, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParameterTuple {
    pub delta: u32,
    pub k1: u32,
    pub k2: u32,
    pub c0: u32,
    pub c1: u32,
}

/// Which group of admissibility conditions a tuple satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    IIA,
    IIB,
    III,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::IIA => "II-A",
            Case::IIB => "II-B",
            Case::III => "III",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityVerdict {
    pub admissible: bool,
    pub case: Option<Case>,
    /// Every violated clause of both case groups, in evaluation order.
    pub failed_clauses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagicChoice {
    /// All magic distances.
    pub magic_set: Vec<u32>,
    /// Magic distances that also pass the two extremal-case side conditions.
    pub eligible: Vec<u32>,
    pub selected: u32,
}

/// One row of [`enumerate_admissible`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleEntry {
    pub params: ParameterTuple,
    pub case: Case,
    pub magic: Vec<u32>,
}

impl ParameterTuple {
    pub const fn new(delta: u32, k1: u32, k2: u32, c0: u32, c1: u32) -> Self {
        Self {
            delta,
            k1,
            k2,
            c0,
            c1,
        }
    }

    pub fn from_slice(values: &[u32]) -> Result<Self> {
        match *values {
            [delta, k1, k2, c0, c1] => Ok(Self::new(delta, k1, k2, c0, c1)),
            _ => input(format!("expected 5 parameters, got {}", values.len())),
        }
    }

    /// `C = min(C₀, C₁)`.
    pub fn c(&self) -> u32 {
        self.c0.min(self.c1)
    }

    /// `C′ = max(C₀, C₁)`.
    pub fn c_prime(&self) -> u32 {
        self.c0.max(self.c1)
    }

    pub fn is_acceptable(&self) -> bool {
        is_acceptable(self)
    }
}

impl fmt::Display for ParameterTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {}",
            self.delta, self.k1, self.k2, self.c0, self.c1
        )
    }
}

pub fn is_acceptable(p: &ParameterTuple) -> bool {
    let &ParameterTuple {
        delta,
        k1,
        k2,
        c0,
        c1,
    } = p;
    let cap_ok = |c: u32| 2 * delta + 2 <= c && c <= 3 * delta + 2;
    delta >= 3
        && 1 <= k1
        && k1 <= k2
        && k2 <= delta
        && cap_ok(c0)
        && cap_ok(c1)
        && c0 % 2 == 0
        && c1 % 2 == 1
}

/// Evaluates both admissibility groups and reports the matching case.
pub fn classify_admissible(p: &ParameterTuple) -> Result<AdmissibilityVerdict> {
    if !is_acceptable(p) {
        return input(format!("parameters ({p}) are not acceptable"));
    }
    // Signed arithmetic keeps `2δ - 1` and friends readable.
    let delta = i64::from(p.delta);
    let k1 = i64::from(p.k1);
    let k2 = i64::from(p.k2);
    let c = i64::from(p.c());
    let c_prime = i64::from(p.c_prime());

    let mut failed = Vec::new();
    let mut check = |ok: bool, clause: &str| {
        if !ok {
            failed.push(clause.to_owned());
        }
        ok
    };

    let ii_base = [
        check(c <= 2 * delta + k1, "II: C <= 2*delta + K1"),
        check(c == 2 * k1 + 2 * k2 + 1, "II: C = 2*K1 + 2*K2 + 1"),
        check(k1 + k2 >= delta, "II: K1 + K2 >= delta"),
        check(k1 + 2 * k2 <= 2 * delta - 1, "II: K1 + 2*K2 <= 2*delta - 1"),
    ]
    .iter()
    .all(|&ok| ok);
    let iia = c_prime == c + 1;
    let iib = c_prime > c + 1 && k1 == k2 && 3 * k2 == 2 * delta - 1;
    if !iia && !iib {
        check(false, "II-A: C' = C + 1");
        check(false, "II-B: C' > C + 1 and K1 = K2 and 3*K2 = 2*delta - 1");
    }
    let case_ii = match (ii_base, iia, iib) {
        (true, true, _) => Some(Case::IIA),
        (true, false, true) => Some(Case::IIB),
        _ => None,
    };

    let case_iii = [
        check(c >= 2 * delta + k1 + 1, "III: C >= 2*delta + K1 + 1"),
        check(
            k1 + 2 * k2 >= 2 * delta - 1,
            "III: K1 + 2*K2 >= 2*delta - 1",
        ),
        check(3 * k2 >= 2 * delta, "III: 3*K2 >= 2*delta"),
        check(
            k1 + 2 * k2 != 2 * delta - 1 || c >= 2 * delta + k1 + 2,
            "III: K1 + 2*K2 = 2*delta - 1 implies C >= 2*delta + K1 + 2",
        ),
        check(
            c_prime <= c + 1 || c >= 2 * delta + k2,
            "III: C' > C + 1 implies C >= 2*delta + K2",
        ),
    ]
    .iter()
    .all(|&ok| ok);

    // The two groups are separated by C <= 2δ+K₁ versus C >= 2δ+K₁+1.
    debug_assert!(!(case_ii.is_some() && case_iii));
    let case = case_ii.or(case_iii.then_some(Case::III));
    Ok(AdmissibilityVerdict {
        admissible: case.is_some(),
        case,
        failed_clauses: if case.is_some() { Vec::new() } else { failed },
    })
}

/// Returns the case of an admissible tuple, or an input error otherwise.
pub fn admissible_case(p: &ParameterTuple) -> Result<Case> {
    let verdict = classify_admissible(p)?;
    match verdict.case {
        Some(case) => Ok(case),
        None => input(format!(
            "parameters ({p}) are not admissible: {}",
            verdict.failed_clauses.join("; ")
        )),
    }
}

/// The closed interval `[max(K₁, ⌈δ/2⌉), min(K₂, ⌊(C−δ−1)/2⌋)]`.
pub fn magic_distances(p: &ParameterTuple) -> Vec<u32> {
    let lo = p.k1.max(p.delta.div_ceil(2));
    let hi = p.k2.min(p.c().saturating_sub(p.delta + 1) / 2);
    (lo..=hi).collect()
}

/// Magic distances by their defining property: every triangle `(m, m, b)`
/// is allowed.
pub fn magic_distances_by_triangles(p: &ParameterTuple) -> Vec<u32> {
    (1..=p.delta)
        .filter(|&m| {
            (1..=p.delta).all(|b| {
                classify_triangle(p, m, m, b)
                    .map(|v| v.is_allowed())
                    .unwrap_or(false)
            })
        })
        .collect()
}

/// Magic distances that also satisfy the two extremal-case conditions.
pub fn eligible_magic(p: &ParameterTuple) -> Result<Vec<u32>> {
    let case = admissible_case(p)?;
    let c = p.c();
    let needs_above_k1 = case == Case::III && p.k1 + 2 * p.k2 == 2 * p.delta - 1;
    let needs_below_k2 = case == Case::III && p.c_prime() > c + 1 && c == 2 * p.delta + p.k2;
    Ok(magic_distances(p)
        .into_iter()
        .filter(|&m| !needs_above_k1 || m > p.k1)
        .filter(|&m| !needs_below_k2 || m < p.k2)
        .collect())
}

/// Picks the smallest eligible magic distance, or validates `requested`.
///
/// # Panics
///
/// If an admissible tuple has no eligible magic distance. That cannot
/// happen for primitive parameters and indicates a bug.
pub fn select_magic_parameter(p: &ParameterTuple, requested: Option<u32>) -> Result<MagicChoice> {
    let eligible = eligible_magic(p)?;
    assert!(
        !eligible.is_empty(),
        "admissible parameters ({p}) have no eligible magic distance"
    );
    let selected = match requested {
        Some(m) if eligible.contains(&m) => m,
        Some(m) => {
            return input(format!(
                "M={m} is not an eligible magic distance for ({p}); eligible: {}",
                format_set(&eligible)
            ))
        }
        None => eligible[0],
    };
    Ok(MagicChoice {
        magic_set: magic_distances(p),
        eligible,
        selected,
    })
}

/// Every acceptable tuple with the given diameter, admissible or not, in
/// lexicographic `(K₁, K₂, C₀, C₁)` order.
pub fn acceptable_tuples(delta: u32) -> Vec<ParameterTuple> {
    let caps = (2 * delta + 2)..=(3 * delta + 2);
    let mut out = Vec::new();
    for k1 in 1..=delta {
        for k2 in k1..=delta {
            for c0 in caps.clone().filter(|c| c % 2 == 0) {
                for c1 in caps.clone().filter(|c| c % 2 == 1) {
                    out.push(ParameterTuple::new(delta, k1, k2, c0, c1));
                }
            }
        }
    }
    out.retain(is_acceptable);
    out
}

pub fn enumerate_admissible(delta: u32) -> Result<Vec<AdmissibleEntry>> {
    if delta < 3 {
        return input(format!("delta must be at least 3, got {delta}"));
    }
    Ok(acceptable_tuples(delta)
        .into_iter()
        .filter_map(|params| {
            let case = classify_admissible(&params).ok()?.case?;
            Some(AdmissibleEntry {
                params,
                case,
                magic: magic_distances(&params),
            })
        })
        .collect())
}

/// `{a,b,c}` formatting used in CLI output.
pub fn format_set(values: &[u32]) -> String {
    let inner: Vec<String> = values.iter().map(u32::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

impl fmt::Display for AdmissibleEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} case={} magic={}",
            self.params,
            self.case,
            format_set(&self.magic)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const IIB: ParameterTuple = ParameterTuple::new(5, 3, 3, 16, 13);

    #[test]
    fn acceptability_examples() {
        assert!(is_acceptable(&ParameterTuple::new(3, 1, 2, 10, 9)));
        assert!(!is_acceptable(&ParameterTuple::new(3, 1, 2, 9, 10)));
        assert!(!is_acceptable(&ParameterTuple::new(2, 1, 1, 6, 7)));
    }

    #[test]
    fn derived_caps() {
        let p = ParameterTuple::new(3, 1, 2, 10, 9);
        assert_eq!((p.c(), p.c_prime()), (9, 10));
    }

    #[test]
    fn classification_examples() {
        let v = classify_admissible(&IIB).unwrap();
        assert_eq!(v.case, Some(Case::IIB));
        assert!(v.admissible && v.failed_clauses.is_empty());

        let v = classify_admissible(&ParameterTuple::new(3, 1, 2, 10, 9)).unwrap();
        assert_eq!(v.case, Some(Case::III));

        let v = classify_admissible(&ParameterTuple::new(3, 1, 1, 10, 11)).unwrap();
        assert!(!v.admissible);
        assert_eq!(v.case, None);
        assert!(v
            .failed_clauses
            .contains(&"II: C <= 2*delta + K1".to_owned()));
        assert!(v
            .failed_clauses
            .contains(&"III: K1 + 2*K2 >= 2*delta - 1".to_owned()));
    }

    #[test]
    fn unacceptable_input_is_rejected() {
        assert!(classify_admissible(&ParameterTuple::new(3, 1, 2, 9, 10)).is_err());
    }

    #[test]
    fn magic_examples() {
        assert_eq!(
            magic_distances(&ParameterTuple::new(3, 1, 3, 10, 11)),
            vec![2, 3]
        );
        assert_eq!(magic_distances(&IIB), vec![3]);
        assert_eq!(
            magic_distances(&ParameterTuple::new(3, 1, 2, 10, 9)),
            vec![2]
        );
    }

    #[test]
    fn selection_examples() {
        let p = ParameterTuple::new(3, 1, 2, 10, 9);
        assert_eq!(select_magic_parameter(&p, None).unwrap().selected, 2);
        let p = ParameterTuple::new(3, 1, 3, 10, 11);
        assert_eq!(select_magic_parameter(&p, None).unwrap().selected, 2);
        assert_eq!(select_magic_parameter(&IIB, Some(3)).unwrap().selected, 3);
        assert!(select_magic_parameter(&IIB, Some(4)).is_err());
    }

    #[test]
    fn delta_three_counts() {
        assert_eq!(acceptable_tuples(3).len(), 24);
        let rows = enumerate_admissible(3).unwrap();
        assert_eq!(rows.len(), 10);
        assert!(rows.iter().all(|r| r.case == Case::III));
        assert!(rows
            .iter()
            .any(|r| r.params == ParameterTuple::new(3, 1, 3, 8, 9)));
        assert!(enumerate_admissible(2).is_err());
    }

    #[test]
    fn magic_interval_matches_triangle_characterisation() {
        for delta in 3..=6 {
            for entry in enumerate_admissible(delta).unwrap() {
                assert_eq!(
                    entry.magic,
                    magic_distances_by_triangles(&entry.params),
                    "{}",
                    entry.params
                );
            }
        }
    }

    #[test]
    fn every_admissible_tuple_has_an_eligible_magic_parameter() {
        for delta in 3..=12 {
            for entry in enumerate_admissible(delta).unwrap() {
                let choice = select_magic_parameter(&entry.params, None).unwrap();
                assert!(choice.magic_set.contains(&choice.selected));
                assert!(is_acceptable(&entry.params));
            }
        }
    }
}
