//! Connectivity repair and trimming on top of the density solvers.
//!
//! The raw density solution may split into several components. Each
//! component is grown with skilled neighbours until it meets the task on
//! its own, then optionally trimmed of nodes holding no task skill.

use std::collections::VecDeque;

use crate::densest::{best_candidate, densest_alk, SolverTrace};
use crate::error::{Error, Result};
use crate::graph::{NodeId, NodeSet, SkillGraph, Task, Team};
use crate::weight::Rational;

/// One component of a density solution after enhancement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCandidate {
    pub members: NodeSet,
    pub source_component: NodeSet,
    pub frontier_added: NodeSet,
    pub satisfied: bool,
}

/// True when `members` induces a connected subgraph of `g`. The empty set
/// counts as connected.
pub fn connected_within(g: &SkillGraph, members: &NodeSet) -> bool {
    let Some(start) = members.first() else {
        return true;
    };
    let mut seen = NodeSet::from([*start]);
    let mut queue = VecDeque::from([*start]);
    while let Some(v) = queue.pop_front() {
        for (u, _) in g.neighbors(v) {
            if members.contains(&u) && seen.insert(u) {
                queue.push_back(u);
            }
        }
    }
    seen.len() == members.len()
}

fn deficits(task: &Task, g: &SkillGraph, members: &NodeSet) -> Vec<usize> {
    task.requirements()
        .iter()
        .zip(task.skilled_counts(g, members))
        .map(|(r, have)| r.count.saturating_sub(have))
        .collect()
}

/// Grows every connected component of `solution` with external neighbours
/// holding a skill whose quota is still unmet, until the component alone
/// satisfies the task or its neighbourhood is exhausted.
pub fn enhance_component(
    solution: &NodeSet,
    task: &Task,
    g: &SkillGraph,
) -> Result<Vec<ComponentCandidate>> {
    let sub = g.induced_subgraph(solution)?;
    let mut out = Vec::new();
    for component in sub.connected_components() {
        let mut members = component.clone();
        let mut added = NodeSet::new();
        let frontier: NodeSet = component
            .iter()
            .flat_map(|v| g.neighbors(*v).map(|(u, _)| u))
            .filter(|u| !component.contains(u))
            .collect();
        let mut missing = deficits(task, g, &members);
        for u in frontier {
            if missing.iter().all(|d| *d == 0) {
                break;
            }
            let useful = task
                .requirements()
                .iter()
                .zip(&missing)
                .any(|(r, d)| *d > 0 && g.has_skill(u, &r.skill));
            if useful {
                members.insert(u);
                added.insert(u);
                missing = deficits(task, g, &members);
            }
        }
        out.push(ComponentCandidate {
            members,
            source_component: component,
            frontier_added: added,
            satisfied: missing.iter().all(|d| *d == 0),
        });
    }
    Ok(out)
}

fn degree_within(g: &SkillGraph, v: NodeId, members: &NodeSet) -> Rational {
    g.neighbors(v)
        .filter(|(u, _)| members.contains(u))
        .map(|(_, w)| &w.affinity)
        .sum()
}

/// Removes nodes holding no task skill, lowest weighted degree inside the
/// current set first, skipping any whose removal would disconnect it.
/// Stops once at most `budget` such nodes remain; `None` trims as far as
/// connectivity allows.
pub fn trim(members: &NodeSet, task: &Task, g: &SkillGraph, budget: Option<usize>) -> NodeSet {
    let mut current = members.clone();
    let mut queue: NodeSet = members
        .iter()
        .copied()
        .filter(|v| !task.holds_task_skill(g, *v))
        .collect();
    let mut unskilled = queue.len();
    while budget.is_none_or(|b| unskilled > b) {
        let Some(u) = queue
            .iter()
            .map(|v| (degree_within(g, *v, &current), *v))
            .min()
            .map(|(_, v)| v)
        else {
            break;
        };
        queue.remove(&u);
        current.remove(&u);
        if current.is_empty() || !connected_within(g, &current) {
            current.insert(u);
        } else {
            unskilled -= 1;
        }
    }
    current
}

/// A trimmed team and the index of the enhanced candidate it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrimOutcome {
    pub team: Team,
    pub source: usize,
}

/// Density solve plus component enhancement, shared by the three
/// heuristics so the solver runs once.
#[derive(Clone, Debug)]
pub struct HeuristicRun {
    pub raw: Team,
    pub trace: SolverTrace,
    pub candidates: Vec<ComponentCandidate>,
    trivial: bool,
}

impl HeuristicRun {
    pub fn new(g: &SkillGraph, task: &Task) -> Result<Self> {
        let (raw, trace) = densest_alk(g, task)?;
        let candidates = enhance_component(&raw.members, task, g)?;
        Ok(HeuristicRun {
            raw,
            trace,
            candidates,
            trivial: task.is_trivial(),
        })
    }

    fn satisfied(&self) -> impl Iterator<Item = (usize, &ComponentCandidate)> {
        self.candidates.iter().enumerate().filter(|(_, c)| c.satisfied)
    }

    /// Smallest satisfied candidate, ties to the smallest member set.
    pub fn enhanced(&self, g: &SkillGraph) -> Result<TrimOutcome> {
        if self.trivial {
            return Ok(TrimOutcome { team: Team::empty(), source: 0 });
        }
        let (source, candidate) = self
            .satisfied()
            .min_by(|(_, a), (_, b)| {
                a.members.len().cmp(&b.members.len()).then_with(|| a.members.cmp(&b.members))
            })
            .ok_or_else(no_candidate)?;
        Ok(TrimOutcome {
            team: Team::evaluate(g, &candidate.members)?,
            source,
        })
    }

    /// Trims each satisfied candidate down to at most Σk unskilled nodes,
    /// drops those still over budget and keeps the densest.
    pub fn partial_trimmed(&self, g: &SkillGraph, task: &Task) -> Result<TrimOutcome> {
        if self.trivial {
            return Ok(TrimOutcome { team: Team::empty(), source: 0 });
        }
        let budget = task.total_count();
        let mut kept = Vec::new();
        for (source, candidate) in self.satisfied() {
            let members = trim(&candidate.members, task, g, Some(budget));
            let unskilled = members.iter().filter(|v| !task.holds_task_skill(g, **v)).count();
            if unskilled <= budget {
                kept.push((source, Team::evaluate(g, &members)?));
            }
        }
        let teams: Vec<Team> = kept.iter().map(|(_, t)| t.clone()).collect();
        let best = best_candidate(&teams).ok_or_else(no_candidate)?;
        let (source, team) = kept.swap_remove(best);
        Ok(TrimOutcome { team, source })
    }

    /// Trims every satisfied candidate as far as connectivity allows and
    /// keeps the smallest; equal sizes go to the denser team, then the
    /// smallest member set.
    pub fn complete_trimmed(&self, g: &SkillGraph, task: &Task) -> Result<TrimOutcome> {
        if self.trivial {
            return Ok(TrimOutcome { team: Team::empty(), source: 0 });
        }
        let mut best: Option<(usize, Team)> = None;
        for (source, candidate) in self.satisfied() {
            let team = Team::evaluate(g, &trim(&candidate.members, task, g, None))?;
            let better = best.as_ref().is_none_or(|(_, b)| {
                team.len()
                    .cmp(&b.len())
                    .then_with(|| b.density.cmp(&team.density))
                    .then_with(|| team.members.cmp(&b.members))
                    .is_lt()
            });
            if better {
                best = Some((source, team));
            }
        }
        let (source, team) = best.ok_or_else(no_candidate)?;
        Ok(TrimOutcome { team, source })
    }
}

fn no_candidate() -> Error {
    Error::HeuristicFailure("no component of the density solution satisfies the task".into())
}

/// Density solve, then the smallest component that can be grown to meet
/// the task.
pub fn enhanced_dense(g: &SkillGraph, task: &Task) -> Result<Team> {
    Ok(HeuristicRun::new(g, task)?.enhanced(g)?.team)
}

/// Enhanced candidates trimmed to at most Σk unskilled nodes; the densest
/// survivor wins.
pub fn partial_trimmed_dense(g: &SkillGraph, task: &Task) -> Result<Team> {
    Ok(HeuristicRun::new(g, task)?.partial_trimmed(g, task)?.team)
}

/// Enhanced candidates trimmed as far as connectivity allows; the smallest
/// wins.
pub fn complete_trimmed_dense(g: &SkillGraph, task: &Task) -> Result<Team> {
    Ok(HeuristicRun::new(g, task)?.complete_trimmed(g, task)?.team)
}
