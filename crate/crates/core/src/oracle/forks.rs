use crate::completion::MagicCompleter;
use crate::error::Result;
use crate::oracle::search::enumerate_all_completions;
use crate::params::{format_set, ParameterTuple};
use crate::space::LabelledGraph;

/// How the closing pair of the fork `(i, j)` can be completed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForkCell {
    pub i: u32,
    pub j: u32,
    /// Every value taken across all completions.
    pub completions: Vec<u32>,
    /// The value the magic completion picks.
    pub chosen: u32,
}

impl std::fmt::Display for ForkCell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "fork {} {} completions {} chosen {}",
            self.i,
            self.j,
            format_set(&self.completions),
            self.chosen
        )
    }
}

/// One cell per unordered fork `i <= j`, row by row.
pub fn fork_table(p: &ParameterTuple, magic: u32) -> Result<Vec<ForkCell>> {
    let completer = MagicCompleter::new(p, magic)?;
    let mut out = Vec::new();
    for i in 1..=p.delta {
        for j in i..=p.delta {
            let fork = LabelledGraph::from_edges(3, p.delta, &[(0, 1, i), (1, 2, j)])?;
            let completions = enumerate_all_completions(p, &fork)?.values(0, 2);
            let chosen = completer
                .complete_graph(&fork)?
                .get(0, 2)
                .expect("complete");
            out.push(ForkCell {
                i,
                j,
                completions,
                chosen,
            });
        }
    }
    Ok(out)
}
