//! Skill-annotated weighted graphs, tasks and teams.
//!
//! A [`SkillGraph`] is undirected. Every edge carries two independent
//! weights: an *affinity* (collaboration strength, used by density) and a
//! *distance* (used by shortest paths). Nodes may also carry self-loop
//! weights, which only appear after peeling a dense subgraph away.
//!
//! Node ids are assigned in insertion order, which is the file order for
//! loaded graphs. Subgraphs keep the ids of their parent, so ids are stable
//! across induced subgraphs and shrinking, and `NodeId` ordering is the
//! canonical order used for every deterministic tie-break.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap, VecDeque};
use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::weight::{ensure_non_negative, Distance, Rational};

/// Canonical position of a node in its source graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

pub type NodeSet = BTreeSet<NodeId>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeWeights {
    pub affinity: Rational,
    pub distance: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct NodeData {
    label: String,
    skills: BTreeSet<String>,
    loops: Vec<Rational>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SkillGraph {
    nodes: BTreeMap<NodeId, NodeData>,
    adjacency: BTreeMap<NodeId, BTreeMap<NodeId, EdgeWeights>>,
    labels: HashMap<String, NodeId>,
    next_id: u32,
}

impl SkillGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node with the next canonical id.
    pub fn add_node<I, S>(&mut self, label: impl Into<String>, skills: I) -> Result<NodeId>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let label = label.into();
        if label.is_empty() || label.chars().any(|c| c.is_whitespace() || c == '#') {
            return Err(Error::domain(format!("invalid node label `{label}`")));
        }
        if self.labels.contains_key(&label) {
            return Err(Error::domain(format!("duplicate node `{label}`")));
        }
        let id = NodeId(self.next_id);
        self.next_id += 1;
        self.labels.insert(label.clone(), id);
        self.nodes.insert(
            id,
            NodeData {
                label,
                skills: skills.into_iter().map(Into::into).collect(),
                loops: Vec::new(),
            },
        );
        self.adjacency.insert(id, BTreeMap::new());
        Ok(id)
    }

    pub fn add_edge(
        &mut self,
        u: NodeId,
        v: NodeId,
        affinity: Rational,
        distance: Rational,
    ) -> Result<()> {
        if u == v {
            return Err(Error::domain(format!(
                "self edge on `{}`; self-affinity is only stored as a loop",
                self.label(u)
            )));
        }
        self.require(u)?;
        self.require(v)?;
        ensure_non_negative(&affinity, "affinity")?;
        ensure_non_negative(&distance, "distance")?;
        if self.adjacency[&u].contains_key(&v) {
            return Err(Error::domain(format!(
                "duplicate edge {} {}",
                self.label(u),
                self.label(v)
            )));
        }
        let weights = EdgeWeights { affinity, distance };
        self.adjacency.get_mut(&v).unwrap().insert(u, weights.clone());
        self.adjacency.get_mut(&u).unwrap().insert(v, weights);
        Ok(())
    }

    pub fn add_loop(&mut self, v: NodeId, weight: Rational) -> Result<()> {
        self.require(v)?;
        ensure_non_negative(&weight, "loop")?;
        self.nodes.get_mut(&v).unwrap().loops.push(weight);
        Ok(())
    }

    fn require(&self, v: NodeId) -> Result<()> {
        if self.nodes.contains_key(&v) {
            Ok(())
        } else {
            Err(Error::domain(format!("unknown node {v}")))
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.nodes.contains_key(&v)
    }

    /// Node ids in canonical order.
    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.keys().copied()
    }

    pub fn node_set(&self) -> NodeSet {
        self.nodes.keys().copied().collect()
    }

    /// Label of `v`. Panics if `v` is not in the graph.
    pub fn label(&self, v: NodeId) -> &str {
        &self.nodes[&v].label
    }

    pub fn id_of(&self, label: &str) -> Option<NodeId> {
        self.labels.get(label).copied()
    }

    pub fn skills(&self, v: NodeId) -> &BTreeSet<String> {
        &self.nodes[&v].skills
    }

    pub fn has_skill(&self, v: NodeId, skill: &str) -> bool {
        self.nodes
            .get(&v)
            .is_some_and(|n| n.skills.contains(skill))
    }

    pub fn loops(&self, v: NodeId) -> &[Rational] {
        &self.nodes[&v].loops
    }

    pub fn loop_count(&self) -> usize {
        self.nodes.values().map(|n| n.loops.len()).sum()
    }

    /// Neighbours of `v` in canonical order with the connecting edge.
    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = (NodeId, &EdgeWeights)> + '_ {
        self.adjacency
            .get(&v)
            .into_iter()
            .flat_map(|m| m.iter().map(|(u, w)| (*u, w)))
    }

    pub fn edge(&self, u: NodeId, v: NodeId) -> Option<&EdgeWeights> {
        self.adjacency.get(&u).and_then(|m| m.get(&v))
    }

    /// Every edge once, smaller endpoint first, in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, &EdgeWeights)> + '_ {
        self.adjacency.iter().flat_map(|(u, m)| {
            m.range(NodeId(u.0 + 1)..).map(move |(v, w)| (*u, *v, w))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.values().map(BTreeMap::len).sum::<usize>() / 2
    }

    /// Support set S(a): the nodes holding `skill`.
    pub fn support(&self, skill: &str) -> NodeSet {
        self.nodes
            .iter()
            .filter(|(_, n)| n.skills.contains(skill))
            .map(|(id, _)| *id)
            .collect()
    }

    /// All skill names present in the graph, sorted.
    pub fn skill_names(&self) -> BTreeSet<String> {
        self.nodes
            .values()
            .flat_map(|n| n.skills.iter().cloned())
            .collect()
    }

    pub fn check_members(&self, members: &NodeSet) -> Result<()> {
        match members.iter().find(|v| !self.contains(**v)) {
            Some(v) => Err(Error::domain(format!("node {v} is not in the graph"))),
            None => Ok(()),
        }
    }

    /// The subgraph induced by `members`: their edges, loops and skills.
    pub fn induced_subgraph(&self, members: &NodeSet) -> Result<SkillGraph> {
        self.check_members(members)?;
        let mut sub = SkillGraph {
            next_id: self.next_id,
            ..SkillGraph::default()
        };
        for v in members {
            let data = self.nodes[v].clone();
            sub.labels.insert(data.label.clone(), *v);
            sub.nodes.insert(*v, data);
            let kept = self.adjacency[v]
                .iter()
                .filter(|(u, _)| members.contains(u))
                .map(|(u, w)| (*u, w.clone()))
                .collect();
            sub.adjacency.insert(*v, kept);
        }
        Ok(sub)
    }

    /// Removes `members` from the graph, dropping their incident edges.
    pub(crate) fn remove_nodes(&mut self, members: &NodeSet) {
        for v in members {
            if let Some(data) = self.nodes.remove(v) {
                self.labels.remove(&data.label);
            }
            self.adjacency.remove(v);
        }
        for adj in self.adjacency.values_mut() {
            adj.retain(|u, _| !members.contains(u));
        }
    }

    /// W(G): the sum of edge affinities plus every loop weight.
    pub fn total_weight(&self) -> Rational {
        let edges: Rational = self.edges().map(|(_, _, w)| w.affinity.clone()).sum();
        let loops: Rational = self.nodes.values().flat_map(|n| n.loops.iter()).sum();
        edges + loops
    }

    /// W(G[members]) computed without materialising the subgraph.
    pub fn weight_of(&self, members: &NodeSet) -> Rational {
        let mut total = Rational::zero();
        for v in members {
            let Some(data) = self.nodes.get(v) else {
                continue;
            };
            total += data.loops.iter().sum::<Rational>();
            for (u, w) in self.adjacency[v].range(NodeId(v.0 + 1)..) {
                if members.contains(u) {
                    total += &w.affinity;
                }
            }
        }
        total
    }

    /// d(G) = W(G) / |V(G)|.
    pub fn density(&self) -> Result<Rational> {
        if self.is_empty() {
            return Err(Error::domain("density of an empty graph"));
        }
        Ok(self.total_weight() / Rational::from_integer(self.len().into()))
    }

    /// Sum of incident edge affinities plus the loop weights at `v`.
    pub fn weighted_degree(&self, v: NodeId) -> Result<Rational> {
        self.require(v)?;
        let edges: Rational = self.adjacency[&v].values().map(|w| &w.affinity).sum();
        let loops: Rational = self.nodes[&v].loops.iter().sum();
        Ok(edges + loops)
    }

    /// Maximal connected node sets, ordered by their smallest node.
    pub fn connected_components(&self) -> Vec<NodeSet> {
        let mut seen = NodeSet::new();
        let mut components = Vec::new();
        for start in self.node_ids() {
            if seen.contains(&start) {
                continue;
            }
            let mut component = NodeSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                component.insert(v);
                for (u, _) in self.neighbors(v) {
                    if seen.insert(u) {
                        queue.push_back(u);
                    }
                }
            }
            components.push(component);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Single-source shortest distances under the distance weights. Loops
    /// never shorten a path and are ignored.
    pub fn shortest_distances(&self, source: NodeId) -> Result<BTreeMap<NodeId, Distance>> {
        self.require(source)?;
        let tree = self.shortest_path_tree(source);
        Ok(self
            .node_ids()
            .map(|v| {
                let d = tree.distance.get(&v).cloned().map_or(Distance::Infinite, Distance::Finite);
                (v, d)
            })
            .collect())
    }

    /// Dijkstra from `source`, recording one canonical predecessor per
    /// reached node. Among equally short routes the predecessor with the
    /// smallest id wins, which keeps reconstructed paths deterministic.
    pub(crate) fn shortest_path_tree(&self, source: NodeId) -> ShortestPathTree {
        let mut distance: BTreeMap<NodeId, Rational> = BTreeMap::new();
        let mut predecessor: BTreeMap<NodeId, NodeId> = BTreeMap::new();
        let mut settled = NodeSet::new();
        let mut heap = BinaryHeap::new();
        distance.insert(source, Rational::zero());
        heap.push(Reverse((Rational::zero(), source)));
        while let Some(Reverse((d, v))) = heap.pop() {
            if !settled.insert(v) {
                continue;
            }
            for (u, w) in self.neighbors(v) {
                if settled.contains(&u) {
                    continue;
                }
                let candidate = &d + &w.distance;
                match distance.get(&u) {
                    Some(current) if *current < candidate => {}
                    Some(current) if *current == candidate => {
                        if predecessor.get(&u).is_some_and(|p| v < *p) {
                            predecessor.insert(u, v);
                        }
                    }
                    _ => {
                        distance.insert(u, candidate.clone());
                        predecessor.insert(u, v);
                        heap.push(Reverse((candidate, u)));
                    }
                }
            }
        }
        ShortestPathTree {
            distance,
            predecessor,
        }
    }

    /// Largest shortest-path distance between two nodes of this graph.
    /// Zero for a single node, infinite when disconnected.
    pub fn diameter(&self) -> Result<Distance> {
        if self.is_empty() {
            return Err(Error::domain("diameter of an empty graph"));
        }
        if !self.is_connected() {
            return Ok(Distance::Infinite);
        }
        let mut best = Rational::zero();
        for v in self.node_ids() {
            let tree = self.shortest_path_tree(v);
            if let Some(far) = tree.distance.values().max() {
                if *far > best {
                    best = far.clone();
                }
            }
        }
        Ok(Distance::Finite(best))
    }
}

pub(crate) struct ShortestPathTree {
    pub distance: BTreeMap<NodeId, Rational>,
    pub predecessor: BTreeMap<NodeId, NodeId>,
}

/// One `<skill, count>` pair of a task.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Requirement {
    pub skill: String,
    pub count: usize,
}

/// A set of skill quotas: at least `count` members holding `skill`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Task {
    requirements: Vec<Requirement>,
}

impl Task {
    pub fn new(requirements: Vec<Requirement>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for r in &requirements {
            if !seen.insert(r.skill.as_str()) {
                return Err(Error::domain(format!(
                    "skill `{}` appears twice in the task",
                    r.skill
                )));
            }
        }
        Ok(Task { requirements })
    }

    pub fn single(skill: impl Into<String>, count: usize) -> Self {
        Task {
            requirements: vec![Requirement {
                skill: skill.into(),
                count,
            }],
        }
    }

    /// Builds a task from `(skill, count)` pairs.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, usize)>) -> Result<Self> {
        Task::new(
            pairs
                .into_iter()
                .map(|(skill, count)| Requirement {
                    skill: skill.to_string(),
                    count,
                })
                .collect(),
        )
    }

    pub fn requirements(&self) -> &[Requirement] {
        &self.requirements
    }

    pub fn len(&self) -> usize {
        self.requirements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.requirements.is_empty()
    }

    /// True when the empty team already satisfies every quota.
    pub fn is_trivial(&self) -> bool {
        self.requirements.iter().all(|r| r.count == 0)
    }

    /// Sum of all quotas.
    pub fn total_count(&self) -> usize {
        self.requirements.iter().map(|r| r.count).sum()
    }

    pub fn holds_task_skill(&self, g: &SkillGraph, v: NodeId) -> bool {
        self.requirements.iter().any(|r| g.has_skill(v, &r.skill))
    }

    /// Per-requirement count of members holding the skill.
    pub fn skilled_counts(&self, g: &SkillGraph, members: &NodeSet) -> Vec<usize> {
        self.requirements
            .iter()
            .map(|r| members.iter().filter(|v| g.has_skill(**v, &r.skill)).count())
            .collect()
    }

    pub fn is_satisfied_by(&self, g: &SkillGraph, members: &NodeSet) -> bool {
        self.skilled_counts(g, members)
            .iter()
            .zip(&self.requirements)
            .all(|(have, r)| *have >= r.count)
    }

    /// Fails with an infeasibility error naming the first skill whose
    /// support in `g` is smaller than its quota.
    pub fn check_feasible(&self, g: &SkillGraph) -> Result<()> {
        for r in &self.requirements {
            let available = g.support(&r.skill).len();
            if available < r.count {
                return Err(Error::infeasible(
                    &r.skill,
                    format!(
                        "skill `{}` requires {} members but only {} hold it",
                        r.skill, r.count, available
                    ),
                ));
            }
        }
        Ok(())
    }
}

/// A team and its statistics on the graph it was drawn from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Team {
    pub members: NodeSet,
    /// W(X') including loop weights.
    pub total_weight: Rational,
    pub density: Rational,
    /// Diameter of the induced subgraph under distance weights.
    pub diameter: Distance,
    /// Number of connected components of the induced subgraph.
    pub components: usize,
}

impl Team {
    /// The empty team. Density and diameter are reported as zero.
    pub fn empty() -> Self {
        Team {
            members: NodeSet::new(),
            total_weight: Rational::zero(),
            density: Rational::zero(),
            diameter: Distance::zero(),
            components: 0,
        }
    }

    /// Recomputes every statistic of `members` on `g`.
    pub fn evaluate(g: &SkillGraph, members: &NodeSet) -> Result<Team> {
        if members.is_empty() {
            return Ok(Team::empty());
        }
        let sub = g.induced_subgraph(members)?;
        let total_weight = sub.total_weight();
        let density = &total_weight / Rational::from_integer(members.len().into());
        Ok(Team {
            members: members.clone(),
            total_weight,
            density,
            diameter: sub.diameter()?,
            components: sub.connected_components().len(),
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn labels<'g>(&self, g: &'g SkillGraph) -> Vec<&'g str> {
        self.members.iter().map(|v| g.label(*v)).collect()
    }
}
