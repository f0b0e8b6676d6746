//! Diameter-based team formation around the rarest skill.
//!
//! Every holder of the rarest required skill is tried as a pivot. For each
//! requirement the pivot's radius is the distance to its k-th nearest
//! holder; the pivot with the smallest worst radius wins and the team is
//! the union of shortest paths from it to those nearest holders.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{NodeId, NodeSet, SkillGraph, Task, Team};
use crate::weight::{Distance, Rational};

/// All-pairs shortest distances with canonical predecessors.
#[derive(Clone, Debug)]
pub struct DistanceIndex {
    ids: Vec<NodeId>,
    position: BTreeMap<NodeId, usize>,
    distance: Vec<Vec<Option<Rational>>>,
    predecessor: Vec<Vec<Option<usize>>>,
}

impl DistanceIndex {
    pub fn new(g: &SkillGraph) -> Self {
        let ids: Vec<NodeId> = g.node_ids().collect();
        let position: BTreeMap<NodeId, usize> =
            ids.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut distance = Vec::with_capacity(ids.len());
        let mut predecessor = Vec::with_capacity(ids.len());
        for source in &ids {
            let tree = g.shortest_path_tree(*source);
            distance.push(ids.iter().map(|v| tree.distance.get(v).cloned()).collect());
            predecessor.push(
                ids.iter()
                    .map(|v| tree.predecessor.get(v).map(|p| position[p]))
                    .collect(),
            );
        }
        DistanceIndex {
            ids,
            position,
            distance,
            predecessor,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.ids
    }

    fn index(&self, v: NodeId) -> Result<usize> {
        self.position
            .get(&v)
            .copied()
            .ok_or_else(|| Error::domain(format!("node {v} is not indexed")))
    }

    pub fn distance(&self, u: NodeId, v: NodeId) -> Result<Distance> {
        let (i, j) = (self.index(u)?, self.index(v)?);
        Ok(self.distance[i][j]
            .clone()
            .map_or(Distance::Infinite, Distance::Finite))
    }

    /// The canonical shortest path from `u` to `v`, both ends included, or
    /// `None` when `v` is unreachable.
    pub fn path(&self, u: NodeId, v: NodeId) -> Result<Option<Vec<NodeId>>> {
        let (i, j) = (self.index(u)?, self.index(v)?);
        if self.distance[i][j].is_none() {
            return Ok(None);
        }
        let mut path = vec![self.ids[j]];
        let mut at = j;
        while at != i {
            at = self.predecessor[i][at].expect("reached nodes have a predecessor");
            path.push(self.ids[at]);
        }
        path.reverse();
        Ok(Some(path))
    }

    /// Largest pairwise distance among `members` in the indexed graph.
    /// Zero for fewer than two members.
    pub fn host_diameter(&self, members: &NodeSet) -> Result<Distance> {
        let mut best = Distance::zero();
        let members: Vec<NodeId> = members.iter().copied().collect();
        for (a, u) in members.iter().enumerate() {
            for v in &members[a + 1..] {
                best = best.max(self.distance(*u, *v)?);
            }
        }
        Ok(best)
    }
}

/// The `k` members of `support` closest to `pivot`, ordered by distance
/// and then by id.
fn nearest(
    pivot: NodeId,
    support: &NodeSet,
    k: usize,
    idx: &DistanceIndex,
) -> Result<Vec<(Distance, NodeId)>> {
    if k > support.len() {
        return Err(Error::infeasible(
            "",
            format!("quota {k} exceeds the {} available holders", support.len()),
        ));
    }
    let mut ranked = support
        .iter()
        .map(|s| Ok((idx.distance(pivot, *s)?, *s)))
        .collect::<Result<Vec<_>>>()?;
    ranked.sort();
    ranked.truncate(k);
    Ok(ranked)
}

/// Distance from `pivot` to its k-th nearest node of `support`. A pivot in
/// `support` counts itself at distance zero. `k = 0` gives zero.
pub fn d_k(pivot: NodeId, support: &NodeSet, k: usize, idx: &DistanceIndex) -> Result<Distance> {
    Ok(nearest(pivot, support, k, idx)?
        .pop()
        .map_or(Distance::zero(), |(d, _)| d))
}

/// Union of the canonical shortest paths from `pivot` to its `k` nearest
/// nodes of `support`, pivot included.
pub fn path_k(pivot: NodeId, support: &NodeSet, k: usize, idx: &DistanceIndex) -> Result<NodeSet> {
    let mut members = NodeSet::from([pivot]);
    for (_, target) in nearest(pivot, support, k, idx)? {
        let path = idx.path(pivot, target)?.ok_or_else(|| {
            Error::infeasible("", format!("node {target} is unreachable from {pivot}"))
        })?;
        members.extend(path);
    }
    Ok(members)
}

/// Radii of one pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotRadii {
    pub pivot: NodeId,
    /// Per requirement, in task order.
    pub radii: Vec<(String, Distance)>,
    pub radius: Distance,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PivotReport {
    pub rare_skill: Option<String>,
    pub per_pivot: Vec<PivotRadii>,
    pub chosen: Option<NodeId>,
}

impl PivotReport {
    pub fn to_report(&self, g: &SkillGraph) -> String {
        let mut out = String::new();
        for p in &self.per_pivot {
            writeln!(out, "pivot {} R={}", g.label(p.pivot), p.radius).unwrap();
        }
        if let Some(chosen) = self.chosen {
            writeln!(out, "chosen {}", g.label(chosen)).unwrap();
        }
        out
    }
}

/// Rarest-skill pivot search. Requirements with a zero quota are ignored;
/// a task without positive quotas yields the empty team.
pub fn min_diameter(g: &SkillGraph, task: &Task) -> Result<(Team, PivotReport)> {
    let idx = DistanceIndex::new(g);
    min_diameter_with_index(g, task, &idx)
}

/// Same as [`min_diameter`] with a precomputed index of `g`.
pub fn min_diameter_with_index(
    g: &SkillGraph,
    task: &Task,
    idx: &DistanceIndex,
) -> Result<(Team, PivotReport)> {
    task.check_feasible(g)?;
    let active: Vec<_> = task
        .requirements()
        .iter()
        .filter(|r| r.count > 0)
        .map(|r| (r.skill.as_str(), g.support(&r.skill), r.count))
        .collect();
    let Some(rare) = active
        .iter()
        .enumerate()
        .min_by_key(|(i, (_, support, _))| (support.len(), *i))
        .map(|(_, r)| r)
    else {
        return Ok((Team::empty(), PivotReport::default()));
    };

    let mut report = PivotReport {
        rare_skill: Some(rare.0.to_string()),
        ..PivotReport::default()
    };
    for pivot in &rare.1 {
        let radii = active
            .iter()
            .map(|(skill, support, k)| Ok((skill.to_string(), d_k(*pivot, support, *k, idx)?)))
            .collect::<Result<Vec<_>>>()?;
        let radius = radii.iter().map(|(_, r)| r.clone()).max().unwrap_or(Distance::zero());
        report.per_pivot.push(PivotRadii {
            pivot: *pivot,
            radii,
            radius,
        });
    }
    let best = report
        .per_pivot
        .iter()
        .min_by(|a, b| a.radius.cmp(&b.radius).then(a.pivot.cmp(&b.pivot)))
        .expect("rare skill has holders");
    if !best.radius.is_finite() {
        let skill = best
            .radii
            .iter()
            .find(|(_, r)| !r.is_finite())
            .map(|(s, _)| s.clone())
            .unwrap_or_default();
        return Err(Error::infeasible(
            skill.clone(),
            format!("no holder of `{}` reaches enough holders of `{skill}`", rare.0),
        ));
    }
    let chosen = best.pivot;
    report.chosen = Some(chosen);

    let mut members = NodeSet::from([chosen]);
    for (skill, support, k) in &active {
        let path = path_k(chosen, support, *k, idx).map_err(|e| match e {
            Error::Infeasible { message, .. } => Error::infeasible(*skill, message),
            other => other,
        })?;
        members.extend(path);
    }
    Ok((Team::evaluate(g, &members)?, report))
}
