//! Small hand-built graphs shared by the unit tests.

use crate::graph::{NodeSet, SkillGraph};
use crate::io::load_graph;

/// Triangle 1-2-3, every node skilled in `a`, unit affinity and distance.
pub(crate) fn f1() -> SkillGraph {
    load_graph("node 1 a\nnode 2 a\nnode 3 a\nedge 1 2 1 1\nedge 2 3 1 1\nedge 1 3 1 1\n").unwrap()
}

/// Chain 1-2-3-4 with affinities 5, 1, 2 and unit distances.
/// Skills: 1:a, 3:a, 4:b.
pub(crate) fn f2() -> SkillGraph {
    load_graph("node 1 a\nnode 2\nnode 3 a\nnode 4 b\nedge 1 2 5 1\nedge 2 3 1 1\nedge 3 4 2 1\n")
        .unwrap()
}

/// Two heavy pairs (1,2) and (3,4) joined by a light edge (2,3); all skill `a`.
pub(crate) fn f3() -> SkillGraph {
    load_graph("node 1 a\nnode 2 a\nnode 3 a\nnode 4 a\nedge 1 2 5\nedge 3 4 5\nedge 2 3 1\n").unwrap()
}

pub(crate) fn ids(g: &SkillGraph, labels: &[&str]) -> NodeSet {
    labels.iter().map(|l| g.id_of(l).unwrap()).collect()
}
