//! Exhaustive solvers over every vertex subset of a small graph.
//!
//! Subsets are visited by increasing size, and within a size in
//! increasing bitmask order. The first subset reaching the best objective
//! is kept. All arithmetic runs on integers obtained by scaling the exact
//! weights by their common denominator.

use num::bigint::BigInt;

use crate::diameter::DistanceIndex;
use crate::error::{Error, Result};
use crate::graph::{NodeId, NodeSet, SkillGraph, Task};
use crate::weight::{scale_to_integers, Distance, Rational};

/// Largest graph the exhaustive solvers accept.
pub const MAX_BRUTE_NODES: usize = 20;

/// Best subset found by exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimalSolution {
    pub members: NodeSet,
    pub objective: Rational,
    /// Number of feasible subsets examined.
    pub enumerated: u64,
}

/// Which distances a diameter is measured with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    /// Shortest paths in the whole graph.
    Host,
    /// Shortest paths inside the subgraph induced by the team.
    Induced,
}

pub(crate) fn guard(g: &SkillGraph) -> Result<()> {
    if g.len() > MAX_BRUTE_NODES {
        return Err(Error::Refused(format!(
            "exhaustive search is limited to {MAX_BRUTE_NODES} nodes, graph has {}",
            g.len()
        )));
    }
    Ok(())
}

/// Visits masks over `n` bits by popcount, then numerically.
pub(crate) fn for_each_subset(n: usize, mut visit: impl FnMut(u32)) {
    visit(0);
    let limit = 1u64 << n;
    for size in 1..=n {
        let mut mask: u64 = (1 << size) - 1;
        while mask < limit {
            visit(mask as u32);
            // Gosper's hack: next larger integer with the same popcount.
            let low = mask & mask.wrapping_neg();
            let ripple = mask + low;
            mask = (((ripple ^ mask) >> 2) / low) | ripple;
        }
    }
}

fn to_set(ids: &[NodeId], mask: u32) -> NodeSet {
    ids.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, v)| *v)
        .collect()
}

fn skill_masks(g: &SkillGraph, ids: &[NodeId], task: &Task) -> Vec<(u32, usize)> {
    task.requirements()
        .iter()
        .map(|r| {
            let mask = ids
                .iter()
                .enumerate()
                .filter(|(_, v)| g.has_skill(**v, &r.skill))
                .fold(0u32, |m, (i, _)| m | 1 << i);
            (mask, r.count)
        })
        .collect()
}

fn feasible(mask: u32, quotas: &[(u32, usize)]) -> bool {
    quotas
        .iter()
        .all(|(skill, k)| (mask & skill).count_ones() as usize >= *k)
}

/// Subset weights indexed by bitmask, in scaled integer units.
fn weight_table(g: &SkillGraph, ids: &[NodeId]) -> Result<(Vec<i128>, BigInt)> {
    let n = ids.len();
    let loop_sums: Vec<Rational> = ids.iter().map(|v| g.loops(*v).iter().sum()).collect();
    let edges: Vec<_> = g.edges().collect();
    let mut values: Vec<&Rational> = loop_sums.iter().collect();
    values.extend(edges.iter().map(|(_, _, w)| &w.affinity));
    let (ints, scale) = scale_to_integers(&values)
        .ok_or_else(|| Error::domain("weights exceed the exact integer range"))?;
    let position = |v: NodeId| ids.iter().position(|u| *u == v).expect("node is listed");
    let mut adjacency = vec![vec![0i128; n]; n];
    for ((u, v, _), w) in edges.iter().zip(&ints[n..]) {
        let (i, j) = (position(*u), position(*v));
        adjacency[i][j] = *w;
        adjacency[j][i] = *w;
    }
    let mut table = vec![0i128; 1 << n];
    for mask in 1usize..1 << n {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let mut w = table[rest] + ints[low];
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            w += adjacency[low][j];
            bits &= bits - 1;
        }
        table[mask] = w;
    }
    Ok((table, scale))
}

fn best_density(
    g: &SkillGraph,
    accept: impl Fn(u32) -> bool,
) -> Result<Option<OptimalSolution>> {
    guard(g)?;
    let ids: Vec<NodeId> = g.node_ids().collect();
    let (table, scale) = weight_table(g, &ids)?;
    let mut best: Option<(u32, i128, i128)> = None;
    let mut enumerated = 0u64;
    for_each_subset(ids.len(), |mask| {
        if !accept(mask) {
            return;
        }
        enumerated += 1;
        let (w, size) = (table[mask as usize], mask.count_ones() as i128);
        let better = match best {
            None => true,
            // Compare w / size against bw / bsize; the empty set has density 0.
            Some((_, bw, bsize)) => w * bsize.max(1) > bw * size.max(1),
        };
        if better {
            best = Some((mask, w, size));
        }
    });
    Ok(best.map(|(mask, w, size)| OptimalSolution {
        members: to_set(&ids, mask),
        objective: Rational::new(BigInt::from(w), scale.clone() * BigInt::from(size.max(1))),
        enumerated,
    }))
}

/// Maximum density over all nonempty subsets, loops included.
pub fn brute_densest_subgraph(g: &SkillGraph) -> Result<OptimalSolution> {
    if g.is_empty() {
        return Err(Error::domain("maximum density subgraph of an empty graph"));
    }
    Ok(best_density(g, |mask| mask != 0)?.expect("a nonempty graph has a nonempty subset"))
}

/// Maximum density over all subsets meeting every quota of `task`. A
/// trivial task is met by the empty set, reported with density zero.
pub fn brute_density_tf(g: &SkillGraph, task: &Task) -> Result<OptimalSolution> {
    guard(g)?;
    task.check_feasible(g)?;
    let ids: Vec<NodeId> = g.node_ids().collect();
    let quotas = skill_masks(g, &ids, task);
    Ok(best_density(g, |mask| feasible(mask, &quotas))?.expect("the full set is feasible"))
}

/// Pairwise distances on `n` indexed nodes in scaled integer units;
/// `None` is infinite.
struct ScaledDistances {
    direct: Vec<Vec<Option<i128>>>,
    scale: BigInt,
}

impl ScaledDistances {
    fn direct_edges(g: &SkillGraph, ids: &[NodeId]) -> Result<Self> {
        let edges: Vec<_> = g.edges().collect();
        let values: Vec<&Rational> = edges.iter().map(|(_, _, w)| &w.distance).collect();
        let (ints, scale) = scale_to_integers(&values)
            .ok_or_else(|| Error::domain("distances exceed the exact integer range"))?;
        let n = ids.len();
        let position = |v: NodeId| ids.iter().position(|u| *u == v).expect("node is listed");
        let mut direct = vec![vec![None; n]; n];
        for (i, row) in direct.iter_mut().enumerate() {
            row[i] = Some(0);
        }
        for ((u, v, _), d) in edges.iter().zip(ints) {
            let (i, j) = (position(*u), position(*v));
            direct[i][j] = Some(d);
            direct[j][i] = Some(d);
        }
        Ok(ScaledDistances { direct, scale })
    }

    fn host(g: &SkillGraph, ids: &[NodeId]) -> Result<Self> {
        let idx = DistanceIndex::new(g);
        let mut values = Vec::new();
        for u in ids {
            for v in ids {
                values.push(idx.distance(*u, *v)?);
            }
        }
        let finite: Vec<&Rational> = values.iter().filter_map(Distance::finite).collect();
        let (ints, scale) = scale_to_integers(&finite)
            .ok_or_else(|| Error::domain("distances exceed the exact integer range"))?;
        let mut ints = ints.into_iter();
        let n = ids.len();
        let mut direct = vec![vec![None; n]; n];
        for (k, d) in values.iter().enumerate() {
            if d.is_finite() {
                direct[k / n][k % n] = ints.next();
            }
        }
        Ok(ScaledDistances { direct, scale })
    }

    /// Largest pairwise distance among `mask` using the stored distances
    /// as they are.
    fn max_pairwise(&self, mask: u32) -> Option<i128> {
        let members: Vec<usize> = (0..self.direct.len()).filter(|i| mask >> i & 1 == 1).collect();
        let mut best = 0;
        for (a, i) in members.iter().enumerate() {
            for j in &members[a + 1..] {
                best = best.max(self.direct[*i][*j]?);
            }
        }
        Some(best)
    }

    /// Diameter of the subgraph induced by `mask`, by Floyd-Warshall.
    fn induced_diameter(&self, mask: u32) -> Option<i128> {
        let members: Vec<usize> = (0..self.direct.len()).filter(|i| mask >> i & 1 == 1).collect();
        let m = members.len();
        let mut d: Vec<Vec<Option<i128>>> = members
            .iter()
            .map(|i| members.iter().map(|j| self.direct[*i][*j]).collect())
            .collect();
        for k in 0..m {
            let via = d[k].clone();
            for row in d.iter_mut() {
                let Some(ik) = row[k] else { continue };
                for (cell, kj) in row.iter_mut().zip(&via) {
                    if let Some(kj) = kj {
                        if cell.is_none_or(|ij| ik + kj < ij) {
                            *cell = Some(ik + kj);
                        }
                    }
                }
            }
        }
        let mut best = 0;
        for row in &d {
            for cell in row {
                best = best.max((*cell)?);
            }
        }
        Some(best)
    }

    fn measure(&self, mask: u32, metric: Metric) -> Option<i128> {
        match metric {
            Metric::Host => self.max_pairwise(mask),
            Metric::Induced => self.induced_diameter(mask),
        }
    }
}

/// Minimum diameter over all subsets meeting every quota of `task`,
/// measured with `metric`. A trivial task is met by the empty set with
/// diameter zero. Fails when every feasible subset has infinite diameter.
pub fn brute_diameter_tf(g: &SkillGraph, task: &Task, metric: Metric) -> Result<OptimalSolution> {
    guard(g)?;
    task.check_feasible(g)?;
    let ids: Vec<NodeId> = g.node_ids().collect();
    let quotas = skill_masks(g, &ids, task);
    let distances = match metric {
        Metric::Host => ScaledDistances::host(g, &ids)?,
        Metric::Induced => ScaledDistances::direct_edges(g, &ids)?,
    };
    let mut best: Option<(u32, i128)> = None;
    let mut enumerated = 0u64;
    for_each_subset(ids.len(), |mask| {
        if !feasible(mask, &quotas) {
            return;
        }
        enumerated += 1;
        if let Some(d) = distances.measure(mask, metric) {
            if best.is_none_or(|(_, b)| d < b) {
                best = Some((mask, d));
            }
        }
    });
    let (mask, d) = best.ok_or_else(|| {
        let skill = task.requirements().first().map(|r| r.skill.clone()).unwrap_or_default();
        Error::infeasible(skill, "every feasible subset has infinite diameter")
    })?;
    Ok(OptimalSolution {
        members: to_set(&ids, mask),
        objective: Rational::new(BigInt::from(d), distances.scale),
        enumerated,
    })
}

/// True when some subset of at least `k` nodes has induced diameter at
/// most `threshold`.
pub(crate) fn induced_team_exists(g: &SkillGraph, k: usize, threshold: &Rational) -> Result<bool> {
    guard(g)?;
    let ids: Vec<NodeId> = g.node_ids().collect();
    let distances = ScaledDistances::direct_edges(g, &ids)?;
    let limit = threshold * Rational::from_integer(distances.scale.clone());
    let mut found = false;
    for_each_subset(ids.len(), |mask| {
        if found || (mask.count_ones() as usize) < k {
            return;
        }
        if let Some(d) = distances.induced_diameter(mask) {
            found = Rational::from_integer(BigInt::from(d)) <= limit;
        }
    });
    Ok(found)
}
