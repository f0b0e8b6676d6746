//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::evaluation::{Publication, PublicationCorpus, DEFAULT_DOMAINS};
use crate::graph::{Requirement, SkillGraph, Task};
use crate::weight::integer;

/// Deterministic generator used by every randomized path.
pub type InstanceRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GraphConfig {
    pub min_nodes: usize,
    pub max_nodes: usize,
    pub edge_probability: f64,
    /// Affinities are drawn uniformly from `1..=max_affinity`.
    pub max_affinity: i64,
    pub skills: Vec<String>,
    /// Chance that a node holds a given skill.
    pub skill_probability: f64,
    /// Give each node at most one skill, chosen uniformly when it gets one.
    pub one_skill_per_node: bool,
}

impl Default for GraphConfig {
    fn default() -> Self {
        GraphConfig {
            min_nodes: 4,
            max_nodes: 10,
            edge_probability: 0.4,
            max_affinity: 5,
            skills: vec!["a".into()],
            skill_probability: 0.5,
            one_skill_per_node: false,
        }
    }
}

/// Random graph with nodes `v0, v1, ...`; distance equals affinity.
pub fn random_graph(rng: &mut InstanceRng, config: &GraphConfig) -> SkillGraph {
    let n = rng.gen_range(config.min_nodes..=config.max_nodes.max(config.min_nodes));
    let mut g = SkillGraph::new();
    let mut ids = Vec::with_capacity(n);
    for i in 0..n {
        let skills: Vec<&String> = if config.one_skill_per_node {
            if rng.gen_bool(config.skill_probability) {
                config.skills.choose(rng).into_iter().collect()
            } else {
                Vec::new()
            }
        } else {
            config
                .skills
                .iter()
                .filter(|_| rng.gen_bool(config.skill_probability))
                .collect()
        };
        ids.push(g.add_node(format!("v{i}"), skills.into_iter().cloned()).expect("fresh label"));
    }
    for (a, u) in ids.iter().enumerate() {
        for v in &ids[a + 1..] {
            if rng.gen_bool(config.edge_probability) {
                let w = integer(rng.gen_range(1..=config.max_affinity));
                g.add_edge(*u, *v, w.clone(), w).expect("fresh edge");
            }
        }
    }
    g
}

/// Task over `requirements` distinct skills of `skills`, each with a quota
/// drawn from `1..=max_k`. The result may be infeasible on a given graph.
pub fn random_task(
    rng: &mut InstanceRng,
    skills: &[String],
    requirements: usize,
    max_k: usize,
) -> Task {
    let mut chosen: Vec<&String> =
        skills.choose_multiple(rng, requirements.min(skills.len())).collect();
    chosen.sort();
    let requirements = chosen
        .into_iter()
        .map(|skill| Requirement {
            skill: skill.clone(),
            count: rng.gen_range(1..=max_k.max(1)),
        })
        .collect();
    Task::new(requirements).expect("distinct skills")
}

/// Shape of a synthetic publication corpus. Authors are split evenly over
/// the domains and, within a domain, into small groups that publish
/// mostly together.
#[derive(Clone, Debug, PartialEq)]
pub struct CorpusConfig {
    pub authors: usize,
    pub domains: Vec<String>,
    pub publications: usize,
    pub group_size: usize,
    pub max_authors_per_paper: usize,
    /// Chance that a paper is filed under a random other domain.
    pub cross_domain_probability: f64,
    /// Chance that an author slot goes to someone outside the group.
    pub outsider_probability: f64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            authors: 80,
            domains: DEFAULT_DOMAINS.map(String::from).to_vec(),
            publications: 600,
            group_size: 4,
            max_authors_per_paper: 4,
            cross_domain_probability: 0.15,
            outsider_probability: 0.3,
        }
    }
}

/// Seeded corpus with authors `a0, a1, ...` and papers `p0, p1, ...`.
pub fn synthetic_corpus(seed: u64, config: &CorpusConfig) -> PublicationCorpus {
    let mut rng = rng_from_seed(seed);
    let domains = config.domains.len().max(1);
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for d in 0..domains {
        let members: Vec<usize> = (0..config.authors).filter(|a| a % domains == d).collect();
        for chunk in members.chunks(config.group_size.max(1)) {
            groups.push((d, chunk.to_vec()));
        }
    }
    let mut publications = Vec::with_capacity(config.publications);
    for p in 0..config.publications {
        let (home, members) = &groups[rng.gen_range(0..groups.len())];
        let domain = if rng.gen_bool(config.cross_domain_probability) {
            rng.gen_range(0..domains)
        } else {
            *home
        };
        let size = rng.gen_range(1..=config.max_authors_per_paper.max(1));
        let mut authors: Vec<usize> = Vec::with_capacity(size);
        // Earlier group members publish more often.
        let lead = members[rng.gen_range(0..members.len()).min(rng.gen_range(0..members.len()))];
        authors.push(lead);
        for _ in 1..size {
            let author = if rng.gen_bool(config.outsider_probability) {
                rng.gen_range(0..config.authors)
            } else {
                members[rng.gen_range(0..members.len())]
            };
            if !authors.contains(&author) {
                authors.push(author);
            }
        }
        publications.push(Publication {
            id: format!("p{p}"),
            domain: config.domains.get(domain).cloned().unwrap_or_default(),
            authors: authors.into_iter().map(|a| format!("a{a}")).collect(),
        });
    }
    PublicationCorpus::new(publications)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::serialize_graph;

    #[test]
    fn same_seed_same_instance() {
        let config = GraphConfig::default();
        let a = random_graph(&mut rng_from_seed(7), &config);
        let b = random_graph(&mut rng_from_seed(7), &config);
        assert_eq!(serialize_graph(&a), serialize_graph(&b));
        assert!((4..=10).contains(&a.len()));
        for (_, _, w) in a.edges() {
            assert_eq!(w.affinity, w.distance);
            assert!(w.affinity >= integer(1) && w.affinity <= integer(5));
        }
    }

    #[test]
    fn one_skill_per_node_is_respected() {
        let config = GraphConfig {
            skills: vec!["a".into(), "b".into(), "c".into()],
            skill_probability: 1.0,
            one_skill_per_node: true,
            ..GraphConfig::default()
        };
        let g = random_graph(&mut rng_from_seed(3), &config);
        assert!(g.node_ids().all(|v| g.skills(v).len() == 1));
    }

    #[test]
    fn synthetic_corpus_is_reproducible() {
        let config = CorpusConfig::default();
        let a = synthetic_corpus(11, &config);
        assert_eq!(a, synthetic_corpus(11, &config));
        assert_eq!(a.len(), 600);
        assert!(a.authors().len() <= 80);
    }

    #[test]
    fn tasks_use_distinct_skills() {
        let skills: Vec<String> = ["a", "b", "c"].map(String::from).to_vec();
        let task = random_task(&mut rng_from_seed(1), &skills, 3, 2);
        assert_eq!(task.len(), 3);
        assert!(task.requirements().iter().all(|r| (1..=2).contains(&r.count)));
    }
}
