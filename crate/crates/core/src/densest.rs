//! Density-based team formation.
//!
//! The exact maximum-density subgraph is found with Goldberg's min-cut
//! construction driven by a Dinkelbach iteration over exact rational
//! densities. On top of it sits the peeling loop: repeatedly take the
//! densest subgraph of the residual graph, fold it into the cumulative
//! solution, and shrink it out of the residual graph, preserving its
//! boundary edges as loops on the survivors. Every intermediate solution
//! is then completed with skilled nodes and the densest completion wins.

use std::collections::BTreeMap;
use std::fmt::Write;

use num::{Integer, Zero};

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::graph::{NodeId, NodeSet, SkillGraph, Task, Team};
use crate::weight::{format_weight, scale_to_integers, Rational};

/// Exact density value.
pub type DensityValue = Rational;

/// Integer view of a graph's affinity structure, indexed densely.
struct DenseWeights {
    ids: Vec<NodeId>,
    edges: Vec<(usize, usize, i128)>,
    loops: Vec<i128>,
}

impl DenseWeights {
    fn new(g: &SkillGraph) -> Result<Self> {
        let ids: Vec<NodeId> = g.node_ids().collect();
        let position: BTreeMap<NodeId, usize> =
            ids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let loop_sums: Vec<Rational> = ids.iter().map(|v| g.loops(*v).iter().sum()).collect();
        let edge_list: Vec<_> = g.edges().collect();
        let mut values: Vec<&Rational> = edge_list.iter().map(|(_, _, w)| &w.affinity).collect();
        values.extend(loop_sums.iter());
        let (ints, _) = scale_to_integers(&values)
            .ok_or_else(|| Error::domain("affinity weights exceed the exact integer range"))?;
        let (edge_ints, loop_ints) = ints.split_at(edge_list.len());
        let edges = edge_list
            .iter()
            .zip(edge_ints)
            .map(|((u, v, _), w)| (position[u], position[v], *w))
            .collect();
        Ok(DenseWeights {
            ids,
            edges,
            loops: loop_ints.to_vec(),
        })
    }

    fn weight(&self, members: &[bool]) -> i128 {
        let edges: i128 = self
            .edges
            .iter()
            .filter(|(u, v, _)| members[*u] && members[*v])
            .map(|(_, _, w)| *w)
            .sum();
        let loops: i128 = self
            .loops
            .iter()
            .zip(members)
            .filter(|(_, m)| **m)
            .map(|(l, _)| *l)
            .sum();
        edges + loops
    }

    /// Solves max over S of `q·W(S) − p·|S|` with a single min cut and
    /// returns the smallest and the largest maximiser.
    fn maximisers(&self, p: i128, q: i128) -> (Vec<bool>, Vec<bool>) {
        let n = self.ids.len();
        let mut degree = self.loops.iter().map(|l| 2 * l).collect::<Vec<_>>();
        for (u, v, w) in &self.edges {
            degree[*u] += w;
            degree[*v] += w;
        }
        let big = degree.iter().copied().max().unwrap_or(0) + 1;
        let (source, sink) = (n, n + 1);
        let mut net = FlowNetwork::new(n + 2);
        for (v, d) in degree.iter().enumerate() {
            net.add_arc(source, v, q * big);
            net.add_arc(v, sink, q * big + 2 * p - q * d);
        }
        for (u, v, w) in &self.edges {
            net.add_arc_pair(*u, *v, q * w, q * w);
        }
        net.max_flow(source, sink);
        let smallest = net.source_side(source)[..n].to_vec();
        let largest = net.reaches_sink(sink)[..n].iter().map(|r| !r).collect();
        (smallest, largest)
    }
}

/// Returns a vertex set of maximum density over all nonempty subsets,
/// loops included. The returned set is the largest densest subgraph (the
/// union of all densest subgraphs), which makes the answer independent of
/// flow details.
pub fn max_density_subgraph(g: &SkillGraph) -> Result<(NodeSet, DensityValue)> {
    if g.is_empty() {
        return Err(Error::domain("maximum density subgraph of an empty graph"));
    }
    let dense = DenseWeights::new(g)?;
    let n = dense.ids.len();
    let mut current = vec![true; n];
    let (mut p, mut q) = (dense.weight(&current), n as i128);
    loop {
        let divisor = p.gcd(&q).max(1);
        let (smallest, largest) = dense.maximisers(p / divisor, q / divisor);
        if smallest.iter().any(|m| *m) {
            // Some set beats the current density strictly.
            current = smallest;
            p = dense.weight(&current);
            q = current.iter().filter(|m| **m).count() as i128;
        } else {
            debug_assert!(current.iter().zip(&largest).all(|(c, l)| !c || *l));
            let members: NodeSet = dense
                .ids
                .iter()
                .zip(&largest)
                .filter(|(_, m)| **m)
                .map(|(v, _)| *v)
                .collect();
            let density = g.weight_of(&members) / Rational::from_integer(members.len().into());
            return Ok((members, density));
        }
    }
}

/// Removes `h` from `g`. Each edge from a survivor `v` into `h` becomes a
/// loop at `v` carrying that edge's affinity; distances are discarded.
pub fn shrink(g: &SkillGraph, h: &NodeSet) -> Result<SkillGraph> {
    g.check_members(h)?;
    let mut out = g.clone();
    for v in g.node_ids().filter(|v| !h.contains(v)) {
        for (u, w) in g.neighbors(v) {
            if h.contains(&u) {
                out.add_loop(v, w.affinity.clone())?;
            }
        }
    }
    out.remove_nodes(h);
    Ok(out)
}

/// Joins a peeled subgraph `h` onto the cumulative solution `d_members`:
/// the subgraph of the original graph induced by their union. Every loop
/// on `h` stands for exactly one edge into `d_members`, so this equals
/// replacing each such loop by its edge.
pub fn union_solution(
    d_members: &NodeSet,
    h: &NodeSet,
    original: &SkillGraph,
) -> Result<SkillGraph> {
    if let Some(v) = d_members.intersection(h).next() {
        return Err(Error::domain(format!(
            "node {} is in both the solution and the peeled subgraph",
            original.label(*v)
        )));
    }
    let union: NodeSet = d_members.union(h).copied().collect();
    original.induced_subgraph(&union)
}

/// Adds skilled nodes to `d_members` until every quota is met. Quotas are
/// handled in task order; each addition is the holder of the skill with the
/// largest total affinity to the current set, ties to the canonical order.
pub fn complete_skills(d_members: &NodeSet, task: &Task, g: &SkillGraph) -> Result<NodeSet> {
    g.check_members(d_members)?;
    task.check_feasible(g)?;
    let mut members = d_members.clone();
    for requirement in task.requirements() {
        let support = g.support(&requirement.skill);
        let have = members.intersection(&support).count();
        for _ in have..requirement.count {
            let best = support
                .difference(&members)
                .map(|v| {
                    let affinity: Rational = g
                        .neighbors(*v)
                        .filter(|(u, _)| members.contains(u))
                        .map(|(_, w)| &w.affinity)
                        .sum();
                    (*v, affinity)
                })
                .fold(None, |best: Option<(NodeId, Rational)>, (v, a)| match best {
                    Some((_, ref b)) if *b >= a => best,
                    _ => Some((v, a)),
                });
            let (v, _) = best.expect("feasibility was checked");
            members.insert(v);
        }
    }
    Ok(members)
}

/// One iteration of the peeling loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelRound {
    /// The densest subgraph peeled from the residual graph.
    pub h: NodeSet,
    /// Density of `h` inside the residual graph, loops included.
    pub h_density: DensityValue,
    /// Cumulative solution after this round.
    pub d_members: NodeSet,
    /// Nodes left in the residual graph after this round.
    pub residual_nodes: NodeSet,
    /// W(D) accumulated through the residual weights of each peeled `h`.
    pub tracked_weight: Rational,
    /// Loops on `h` that did not match an edge into the previous solution.
    pub unmatched_loops: usize,
    pub skilled_counts: Vec<usize>,
}

/// Iteration history of the peeling loop and the completed candidates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolverTrace {
    pub rounds: Vec<PeelRound>,
    pub candidates: Vec<Team>,
    pub chosen: Option<usize>,
}

impl SolverTrace {
    /// Checks that each cumulative solution equals the original graph's
    /// induced subgraph on its members: the tracked weight matches and no
    /// loop was left unconverted. Returns one message per violation.
    pub fn union_violations(&self, original: &SkillGraph) -> Vec<String> {
        let mut violations = Vec::new();
        for (i, round) in self.rounds.iter().enumerate() {
            let actual = original.weight_of(&round.d_members);
            if actual != round.tracked_weight {
                violations.push(format!(
                    "round {}: tracked weight {} but induced weight {}",
                    i + 1,
                    round.tracked_weight,
                    actual
                ));
            }
            if round.unmatched_loops != 0 {
                violations.push(format!(
                    "round {}: {} residual loops without a matching edge",
                    i + 1,
                    round.unmatched_loops
                ));
            }
        }
        violations
    }

    /// One line per round, then one per candidate, then the choice.
    pub fn to_report(&self, g: &SkillGraph, task: &Task) -> String {
        let mut out = String::new();
        for (i, round) in self.rounds.iter().enumerate() {
            let counts: Vec<String> = task
                .requirements()
                .iter()
                .zip(&round.skilled_counts)
                .map(|(r, c)| format!("{}:{}", r.skill, c))
                .collect();
            writeln!(
                out,
                "round {} h={} density_h={} d={} skilled={}",
                i + 1,
                round.h.len(),
                format_weight(&round.h_density),
                round.d_members.len(),
                counts.join(",")
            )
            .unwrap();
        }
        for (i, team) in self.candidates.iter().enumerate() {
            writeln!(
                out,
                "candidate {} size={} density={} members={}",
                i + 1,
                team.len(),
                format_weight(&team.density),
                team.labels(g).join(",")
            )
            .unwrap();
        }
        if let Some(chosen) = self.chosen {
            writeln!(out, "chosen {}", chosen + 1).unwrap();
        }
        out
    }
}

fn loop_mismatches(
    residual: &SkillGraph,
    original: &SkillGraph,
    h: &NodeSet,
    previous: &NodeSet,
) -> usize {
    let mut unmatched = 0;
    for v in h {
        let mut expected: Vec<Rational> = original.loops(*v).to_vec();
        expected.extend(
            original
                .neighbors(*v)
                .filter(|(u, _)| previous.contains(u))
                .map(|(_, w)| w.affinity.clone()),
        );
        let mut actual = residual.loops(*v).to_vec();
        expected.sort();
        actual.sort();
        let (mut i, mut j, mut common) = (0, 0, 0);
        while i < expected.len() && j < actual.len() {
            match expected[i].cmp(&actual[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    common += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        unmatched += expected.len() + actual.len() - 2 * common;
    }
    unmatched
}

fn peel(g: &SkillGraph, task: &Task) -> Result<(Team, SolverTrace)> {
    task.check_feasible(g)?;
    let mut trace = SolverTrace::default();
    if task.is_trivial() {
        return Ok((Team::empty(), trace));
    }
    let mut residual = g.clone();
    let mut d_members = NodeSet::new();
    let mut tracked = Rational::zero();
    while !task.is_satisfied_by(g, &d_members) {
        if residual.is_empty() {
            // Unreachable once feasibility holds: the whole graph satisfies the task.
            return Err(Error::infeasible(
                task.requirements()[0].skill.clone(),
                "peeling exhausted the graph without meeting the task",
            ));
        }
        let (h, h_density) = max_density_subgraph(&residual)?;
        tracked += residual.weight_of(&h);
        let unmatched_loops = loop_mismatches(&residual, g, &h, &d_members);
        let joined = union_solution(&d_members, &h, g)?;
        residual = shrink(&residual, &h)?;
        d_members = joined.node_set();
        trace.rounds.push(PeelRound {
            h,
            h_density,
            d_members: d_members.clone(),
            residual_nodes: residual.node_set(),
            tracked_weight: tracked.clone(),
            unmatched_loops,
            skilled_counts: task.skilled_counts(g, &d_members),
        });
    }

    for round in &trace.rounds {
        let members = complete_skills(&round.d_members, task, g)?;
        trace.candidates.push(Team::evaluate(g, &members)?);
    }
    let chosen = best_candidate(&trace.candidates).expect("at least one round ran");
    trace.chosen = Some(chosen);
    Ok((trace.candidates[chosen].clone(), trace))
}

/// Highest density; ties prefer fewer members, then the lexicographically
/// smallest member set.
pub(crate) fn best_candidate(candidates: &[Team]) -> Option<usize> {
    candidates
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            b.density
                .cmp(&a.density)
                .then(a.len().cmp(&b.len()))
                .then_with(|| a.members.cmp(&b.members))
        })
        .map(|(i, _)| i)
}

/// Single-skill density team formation (3-approximation).
pub fn s_densest_alk(g: &SkillGraph, task: &Task) -> Result<(Team, SolverTrace)> {
    if task.len() != 1 {
        return Err(Error::domain(format!(
            "single-skill solver needs exactly one requirement, got {}",
            task.len()
        )));
    }
    peel(g, task)
}

/// Multi-skill density team formation. Same loop; terminates once every
/// quota is met. A 3-approximation when each node holds at most one skill.
pub fn m_densest_alk(g: &SkillGraph, task: &Task) -> Result<(Team, SolverTrace)> {
    peel(g, task)
}

/// Dispatches on task arity: one requirement uses the single-skill solver.
pub fn densest_alk(g: &SkillGraph, task: &Task) -> Result<(Team, SolverTrace)> {
    if task.len() == 1 {
        s_densest_alk(g, task)
    } else {
        m_densest_alk(g, task)
    }
}
