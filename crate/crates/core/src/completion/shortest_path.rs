//! The shortest-path completion, computed independently of the staged engine.

use crate::error::{input, Result};
use crate::space::LabelledGraph;

/// Every pair gets the length of a shortest walk between its ends, capped
/// at `delta`. Pairs in different components get `delta`. Input edges are
/// overwritten when a shorter walk exists.
pub fn shortest_path_complete(delta: u32, g: &LabelledGraph) -> Result<LabelledGraph> {
    if g.delta() != delta {
        return input(format!(
            "graph has delta {} but {delta} was requested",
            g.delta()
        ));
    }
    let n = g.n();
    let mut dist = vec![delta; n * n];
    for (u, v, d) in g.edges() {
        dist[u * n + v] = d;
        dist[v * n + u] = d;
    }
    for k in 0..n {
        for i in 0..n {
            let ik = dist[i * n + k];
            for j in 0..n {
                let through = ik + dist[k * n + j];
                if i != j && i != k && j != k && through < dist[i * n + j] {
                    dist[i * n + j] = through;
                }
            }
        }
    }
    let mut out = LabelledGraph::empty(n, delta);
    for (u, v) in g.pairs() {
        out.put(u, v, dist[u * n + v]);
    }
    Ok(out)
}
