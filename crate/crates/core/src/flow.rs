//! Dinic's maximum flow on integer capacities.

use std::collections::VecDeque;

#[derive(Clone, Debug)]
pub(crate) struct FlowNetwork {
    adjacency: Vec<Vec<usize>>,
    head: Vec<usize>,
    residual: Vec<i128>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            adjacency: vec![Vec::new(); nodes],
            head: Vec::new(),
            residual: Vec::new(),
        }
    }

    /// Adds arc `u -> v` with capacity `forward` and its reverse arc with
    /// capacity `backward` (zero for a directed arc).
    pub fn add_arc_pair(&mut self, u: usize, v: usize, forward: i128, backward: i128) {
        debug_assert!(forward >= 0 && backward >= 0);
        self.adjacency[u].push(self.head.len());
        self.head.push(v);
        self.residual.push(forward);
        self.adjacency[v].push(self.head.len());
        self.head.push(u);
        self.residual.push(backward);
    }

    pub fn add_arc(&mut self, u: usize, v: usize, capacity: i128) {
        self.add_arc_pair(u, v, capacity, 0);
    }

    fn levels(&self, source: usize) -> Vec<Option<usize>> {
        let mut level = vec![None; self.adjacency.len()];
        level[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let next = level[u].map(|l| l + 1);
            for &arc in &self.adjacency[u] {
                let v = self.head[arc];
                if self.residual[arc] > 0 && level[v].is_none() {
                    level[v] = next;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn augment(
        &mut self,
        u: usize,
        sink: usize,
        limit: i128,
        level: &[Option<usize>],
        cursor: &mut [usize],
    ) -> i128 {
        if u == sink {
            return limit;
        }
        while cursor[u] < self.adjacency[u].len() {
            let arc = self.adjacency[u][cursor[u]];
            let v = self.head[arc];
            let admissible = self.residual[arc] > 0
                && matches!((level[u], level[v]), (Some(a), Some(b)) if b == a + 1);
            if admissible {
                let pushed = self.augment(v, sink, limit.min(self.residual[arc]), level, cursor);
                if pushed > 0 {
                    self.residual[arc] -= pushed;
                    self.residual[arc ^ 1] += pushed;
                    return pushed;
                }
            }
            cursor[u] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> i128 {
        let mut total = 0;
        loop {
            let level = self.levels(source);
            if level[sink].is_none() {
                return total;
            }
            let mut cursor = vec![0; self.adjacency.len()];
            loop {
                let pushed = self.augment(source, sink, i128::MAX, &level, &mut cursor);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    /// Nodes reachable from `source` through arcs with residual capacity.
    /// After `max_flow` this is the smallest source side of a minimum cut.
    pub fn source_side(&self, source: usize) -> Vec<bool> {
        self.levels(source).iter().map(Option::is_some).collect()
    }

    /// Nodes that can still reach `sink` in the residual network. After
    /// `max_flow` their complement is the largest source side of a
    /// minimum cut.
    pub fn reaches_sink(&self, sink: usize) -> Vec<bool> {
        let mut reach = vec![false; self.adjacency.len()];
        reach[sink] = true;
        let mut queue = VecDeque::from([sink]);
        while let Some(v) = queue.pop_front() {
            for &arc in &self.adjacency[v] {
                // `arc ^ 1` runs u -> v; it is usable when it has residual capacity.
                let u = self.head[arc];
                if !reach[u] && self.residual[arc ^ 1] > 0 {
                    reach[u] = true;
                    queue.push_back(u);
                }
            }
        }
        reach
    }
}
