//! Exhaustive automorphism and homomorphism search for small graphs.

use crate::error::{Error, Result};
use crate::space::graph::LabelledGraph;

/// Default vertex limit for [`automorphisms`].
pub const DEFAULT_AUTOMORPHISM_LIMIT: usize = 9;
/// Default bound on `|dst|^|src|` for [`homomorphisms`].
pub const DEFAULT_HOMOMORPHISM_BUDGET: u64 = 10_000_000;

pub fn automorphisms(g: &LabelledGraph) -> Result<Vec<Vec<usize>>> {
    automorphisms_with_limit(g, DEFAULT_AUTOMORPHISM_LIMIT)
}

/// All vertex permutations preserving every label and every missing pair.
pub fn automorphisms_with_limit(g: &LabelledGraph, max_vertices: usize) -> Result<Vec<Vec<usize>>> {
    if g.n() > max_vertices {
        return Err(Error::Budget(format!(
            "automorphism search on {} vertices exceeds limit {max_vertices}",
            g.n()
        )));
    }
    let mut out = Vec::new();
    let mut perm = Vec::with_capacity(g.n());
    let mut used = vec![false; g.n()];
    extend_automorphism(g, &mut perm, &mut used, &mut out);
    Ok(out)
}

fn extend_automorphism(
    g: &LabelledGraph,
    perm: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let i = perm.len();
    if i == g.n() {
        out.push(perm.clone());
        return;
    }
    for x in 0..g.n() {
        if used[x] || (0..i).any(|j| g.raw(i, j) != g.raw(x, perm[j])) {
            continue;
        }
        used[x] = true;
        perm.push(x);
        extend_automorphism(g, perm, used, out);
        perm.pop();
        used[x] = false;
    }
}

/// Whether `perm` maps `g` onto itself label for label.
pub fn preserves(g: &LabelledGraph, perm: &[usize]) -> bool {
    g.pairs()
        .all(|(u, v)| g.raw(u, v) == g.raw(perm[u], perm[v]))
}

pub fn homomorphisms(src: &LabelledGraph, dst: &LabelledGraph) -> Result<Vec<Vec<usize>>> {
    homomorphisms_with_budget(src, dst, DEFAULT_HOMOMORPHISM_BUDGET)
}

/// All maps sending each edge of `src` to an equally labelled edge of `dst`.
/// Missing pairs of `src` are unconstrained, so maps need not be injective.
pub fn homomorphisms_with_budget(
    src: &LabelledGraph,
    dst: &LabelledGraph,
    budget: u64,
) -> Result<Vec<Vec<usize>>> {
    let space = (dst.n() as u64)
        .checked_pow(src.n() as u32)
        .filter(|&s| s <= budget);
    if space.is_none() && src.n() > 0 {
        return Err(Error::Budget(format!(
            "{}^{} candidate maps exceed budget {budget}",
            dst.n(),
            src.n()
        )));
    }
    let mut out = Vec::new();
    let mut map = Vec::with_capacity(src.n());
    extend_homomorphism(src, dst, &mut map, &mut out);
    Ok(out)
}

fn extend_homomorphism(
    src: &LabelledGraph,
    dst: &LabelledGraph,
    map: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let i = map.len();
    if i == src.n() {
        out.push(map.clone());
        return;
    }
    for x in 0..dst.n() {
        let fits = (0..i).all(|j| match src.raw(i, j) {
            0 => true,
            d => map[j] != x && dst.raw(x, map[j]) == d,
        });
        if fits {
            map.push(x);
            extend_homomorphism(src, dst, map, out);
            map.pop();
        }
    }
}

/// Whether `map` is a homomorphism from `src` into `dst`.
pub fn is_homomorphism(src: &LabelledGraph, dst: &LabelledGraph, map: &[usize]) -> bool {
    map.len() == src.n()
        && map.iter().all(|&x| x < dst.n())
        && src
            .edges()
            .all(|(u, v, d)| map[u] != map[v] && dst.get(map[u], map[v]) == Some(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::cycle::{all_sequences, LabelledCycle};

    fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
        b.iter().map(|&x| a[x]).collect()
    }

    #[test]
    fn rigid_triangle() {
        let g = LabelledGraph::from_edges(3, 3, &[(0, 1, 1), (1, 2, 2), (0, 2, 3)]).unwrap();
        assert_eq!(automorphisms(&g).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn uniform_triangle_is_fully_symmetric() {
        let g = LabelledGraph::from_edges(3, 3, &[(0, 1, 2), (1, 2, 2), (0, 2, 2)]).unwrap();
        assert_eq!(automorphisms(&g).unwrap().len(), 6);
    }

    #[test]
    fn alternating_four_cycle() {
        let g = LabelledCycle::new(vec![1, 5, 1, 5])
            .unwrap()
            .to_graph(5)
            .unwrap();
        let auts = automorphisms(&g).unwrap();
        // Brute force over all 24 permutations.
        let mut brute = Vec::new();
        for seq in all_sequences(4, 4) {
            let perm: Vec<usize> = seq.iter().map(|&x| x as usize - 1).collect();
            let mut seen = perm.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() == 4 && preserves(&g, &perm) {
                brute.push(perm);
            }
        }
        assert_eq!(auts, brute);
        assert_eq!(auts.len(), 4);
    }

    #[test]
    fn automorphisms_form_a_group() {
        let g = LabelledGraph::from_edges(
            5,
            3,
            &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 0, 1)],
        )
        .unwrap();
        let auts = automorphisms(&g).unwrap();
        assert_eq!(auts.len(), 10);
        for a in &auts {
            for b in &auts {
                assert!(auts.contains(&compose(a, b)));
            }
            let mut inv = vec![0; a.len()];
            for (i, &x) in a.iter().enumerate() {
                inv[x] = i;
            }
            assert!(auts.contains(&inv));
        }
    }

    #[test]
    fn guards() {
        assert!(automorphisms(&LabelledGraph::empty(10, 3)).is_err());
        let g = LabelledGraph::empty(8, 3);
        assert!(homomorphisms_with_budget(&g, &g, 1000).is_err());
    }

    #[test]
    fn homomorphism_examples() {
        let g = LabelledGraph::from_edges(4, 3, &[(0, 1, 1), (1, 2, 2), (2, 3, 3)]).unwrap();
        let homs = homomorphisms(&g, &g).unwrap();
        assert!(homs.contains(&vec![0, 1, 2, 3]));
        assert!(homs.iter().all(|h| is_homomorphism(&g, &g, h)));

        let cycle = LabelledCycle::new(vec![1, 1, 2])
            .unwrap()
            .to_graph(3)
            .unwrap();
        let tri = LabelledGraph::from_edges(3, 3, &[(0, 1, 1), (1, 2, 1), (0, 2, 2)]).unwrap();
        let homs = homomorphisms(&cycle, &tri).unwrap();
        assert!(homs.contains(&vec![0, 1, 2]));
        assert!(homs.contains(&vec![2, 1, 0]));
    }

    fn non_metric(labels: &[u32]) -> bool {
        let total: u32 = labels.iter().sum();
        labels.iter().any(|&l| 2 * l > total)
    }

    /// A non-metric cycle maps into G iff some non-metric cycle embeds
    /// injectively, over all 3-labelled graphs on 4 vertices.
    #[test]
    fn non_metric_cycles_have_injective_witnesses() {
        let delta = 3;
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let cycles: Vec<LabelledGraph> = (3..=5)
            .flat_map(|len| all_sequences(delta, len))
            .filter(|s| non_metric(s))
            .map(|s| LabelledCycle::new(s).unwrap().to_graph(delta).unwrap())
            .collect();
        for code in 0..4u32.pow(6) {
            let mut g = LabelledGraph::empty(4, delta);
            let mut c = code;
            for &(u, v) in &pairs {
                if c % 4 != 0 {
                    g.set(u, v, c % 4).unwrap();
                }
                c /= 4;
            }
            let homs: Vec<Vec<Vec<usize>>> = cycles
                .iter()
                .map(|f| homomorphisms(f, &g).unwrap())
                .collect();
            let any = homs.iter().any(|h| !h.is_empty());
            let injective = homs.iter().flatten().any(|h| {
                let mut s = h.clone();
                s.sort_unstable();
                s.dedup();
                s.len() == h.len()
            });
            assert_eq!(any, injective, "graph code {code}");
        }
    }
}
