//! Team formation in skill graphs: density-based and diameter-based
//! solvers, heuristic variants, exact oracles and evaluation metrics.

pub mod densest;
pub mod diameter;
pub mod error;
pub mod evaluation;
pub mod generate;
pub mod graph;
pub mod heuristics;
pub mod io;
pub mod oracle;
pub mod weight;

mod flow;

#[cfg(test)]
mod fixtures;

pub use densest::{
    complete_skills, densest_alk, m_densest_alk, max_density_subgraph, s_densest_alk, shrink,
    union_solution, PeelRound, SolverTrace,
};
pub use diameter::{d_k, min_diameter, path_k, DistanceIndex, PivotRadii, PivotReport};
pub use error::{Error, Result};
pub use graph::{EdgeWeights, NodeId, NodeSet, Requirement, SkillGraph, Task, Team};
pub use evaluation::{
    build_coauthor_graph, parse_corpus, parse_domain_map, parse_ranks, partial_team_pubs,
    team_pub_ratio, team_pubs, team_rank, Publication, PublicationCorpus, RankTable, RatioScope,
    TeamLabels,
};
pub use heuristics::{
    complete_trimmed_dense, enhance_component, enhanced_dense, partial_trimmed_dense,
    ComponentCandidate, HeuristicRun, TrimOutcome,
};
pub use io::{load_graph, load_task, serialize_graph, serialize_task};
pub use oracle::brute::{
    brute_densest_subgraph, brute_density_tf, brute_diameter_tf, Metric, OptimalSolution,
};
pub use oracle::certify::{certify_ratios, CertifyConfig, CertifyReport, Family, InstanceRecord};
pub use oracle::sat::{
    parse_sat, sat_to_diameter_stf, verify_reduction, ReductionParams, SatInstance,
};
pub use weight::{format_weight, parse_weight, Distance, Rational};
