//! Exact reference solvers, ratio certificates and the 3-SAT reduction.

pub mod brute;
pub mod certify;
pub mod sat;

use crate::densest::{s_densest_alk, SolverTrace};
use crate::error::Result;
use crate::graph::{SkillGraph, Task, Team};

/// Skill given to every node by [`densest_at_least_k`].
const ANY_SKILL: &str = "*";

/// Densest subgraph with at least `k` nodes, approximated by running the
/// single-skill solver on a copy of `g` where every node holds one shared
/// skill.
pub fn densest_at_least_k(g: &SkillGraph, k: usize) -> Result<(Team, SolverTrace)> {
    let mut all = SkillGraph::new();
    for v in g.node_ids() {
        let skills = g.skills(v).iter().cloned().chain([ANY_SKILL.to_string()]);
        all.add_node(g.label(v), skills)?;
        for w in g.loops(v) {
            all.add_loop(v, w.clone())?;
        }
    }
    for (u, v, w) in g.edges() {
        all.add_edge(u, v, w.affinity.clone(), w.distance.clone())?;
    }
    s_densest_alk(&all, &Task::single(ANY_SKILL, k))
}
