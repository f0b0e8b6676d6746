//! Seeded inputs shared by the benchmarks.

use teamform_core::generate::{
    random_graph, rng_from_seed, synthetic_corpus, CorpusConfig, GraphConfig,
};
use teamform_core::{build_coauthor_graph, SkillGraph, Task};

/// Random graph with exactly `n` nodes, skills `a` and `b`.
pub fn random_instance(seed: u64, n: usize, edge_probability: f64) -> SkillGraph {
    let config = GraphConfig {
        min_nodes: n,
        max_nodes: n,
        edge_probability,
        skills: vec!["a".into(), "b".into()],
        skill_probability: 0.3,
        ..GraphConfig::default()
    };
    random_graph(&mut rng_from_seed(seed), &config)
}

/// Coauthorship graph of the default synthetic corpus.
pub fn coauthor_graph(seed: u64) -> SkillGraph {
    let corpus = synthetic_corpus(seed, &CorpusConfig::default());
    build_coauthor_graph(&corpus, 3, 2).expect("positive thresholds")
}

/// Largest quota on `skill` the graph can meet, capped at `k`.
pub fn feasible_task(g: &SkillGraph, skill: &str, k: usize) -> Task {
    Task::single(skill, k.min(g.support(skill).len()).max(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_seeded() {
        let a = random_instance(3, 20, 0.2);
        assert_eq!(a.len(), 20);
        assert_eq!(a.edge_count(), random_instance(3, 20, 0.2).edge_count());
        let g = coauthor_graph(7);
        assert!(feasible_task(&g, "AI", 5).check_feasible(&g).is_ok());
    }
}
