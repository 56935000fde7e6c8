//! Strong amalgamation through the magic completion.

use crate::completion::{CompletionOutcome, MagicCompleter};
use crate::error::{input, Result};
use crate::params::ParameterTuple;
use crate::space::{is_member, LabelledGraph};

fn check_embedding(
    p: &ParameterTuple,
    a: &LabelledGraph,
    b: &LabelledGraph,
    emb: &[usize],
    name: &str,
) -> Result<()> {
    if !b.is_complete() || !is_member(p, b)? {
        return input(format!("{name} is not a complete member of the class"));
    }
    if emb.len() != a.n() || emb.iter().any(|&x| x >= b.n()) {
        return input(format!("embedding into {name} has the wrong shape"));
    }
    let mut image = emb.to_vec();
    image.sort_unstable();
    image.dedup();
    if image.len() != emb.len() {
        return input(format!("embedding into {name} is not injective"));
    }
    if a.pairs().any(|(u, v)| a.get(u, v) != b.get(emb[u], emb[v])) {
        return input(format!("embedding into {name} does not preserve labels"));
    }
    Ok(())
}

/// Glues `b1` and `b2` along the images of `a` and magic-completes the
/// result. Vertices of `b1` keep their indices; vertices of `b2` outside
/// the image of `a` follow in order.
pub fn amalgamate(
    p: &ParameterTuple,
    magic: u32,
    a: &LabelledGraph,
    b1: &LabelledGraph,
    b2: &LabelledGraph,
    emb1: &[usize],
    emb2: &[usize],
) -> Result<CompletionOutcome> {
    if !a.is_complete() || !is_member(p, a)? {
        return input("the common part is not a complete member of the class");
    }
    check_embedding(p, a, b1, emb1, "b1")?;
    check_embedding(p, a, b2, emb2, "b2")?;

    let mut place = vec![usize::MAX; b2.n()];
    for (i, &x) in emb2.iter().enumerate() {
        place[x] = emb1[i];
    }
    let mut next = b1.n();
    for slot in place.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let mut glued = LabelledGraph::empty(next, p.delta);
    for (u, v, d) in b1.edges() {
        glued.set(u, v, d)?;
    }
    for (u, v, d) in b2.edges() {
        let (x, y) = (place[u], place[v]);
        if !glued.is_edge(x, y) {
            glued.set(x, y, d)?;
        }
    }
    MagicCompleter::new(p, magic)?.complete(&glued)
}
