//! 3-SAT instances and their reduction to diameter team formation.
//!
//! Each variable contributes a positive and a negated literal node and
//! each clause two clause nodes. On the complete graph over these nodes the
//! complementary literals and the two nodes of a clause sit at distance
//! `r'`, a clause node sits at `r/2` from the literals of its clause, and
//! every other pair at `r`. A team of `N + 2M` nodes with induced diameter
//! at most `r` exists exactly when the formula is satisfiable.

use std::fmt::Write;

use crate::diameter::DistanceIndex;
use crate::error::{Error, Result};
use crate::graph::{NodeId, NodeSet, SkillGraph, Task};
use crate::oracle::brute::induced_team_exists;
use crate::weight::{format_weight, integer, Rational};

/// Largest formula `verify_reduction` accepts.
pub const MAX_VERIFY_VARS: usize = 4;
pub const MAX_VERIFY_CLAUSES: usize = 8;
/// The full subset sweep runs only up to this many gadget nodes.
pub const MAX_SWEEP_NODES: usize = 16;

/// The single skill every gadget node holds.
pub const REDUCTION_SKILL: &str = "a";

/// A 3-CNF formula. Literal `+i` is variable `i`, `-i` its negation, with
/// variables numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatInstance {
    num_vars: usize,
    clauses: Vec<[i32; 3]>,
}

impl SatInstance {
    /// Rejects literals outside `1..=num_vars` and clauses that repeat a
    /// variable, in either polarity.
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        for (j, clause) in clauses.iter().enumerate() {
            for (a, lit) in clause.iter().enumerate() {
                let var = lit.unsigned_abs() as usize;
                if *lit == 0 || var > num_vars {
                    return Err(Error::domain(format!(
                        "clause {}: literal {lit} is outside 1..={num_vars}",
                        j + 1
                    )));
                }
                if clause[a + 1..].iter().any(|other| other.unsigned_abs() as usize == var) {
                    return Err(Error::domain(format!(
                        "clause {}: variable {var} appears twice",
                        j + 1
                    )));
                }
            }
        }
        Ok(SatInstance { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    /// Bit `i` of `assignment` is the value of variable `i + 1`.
    pub fn satisfied_by(&self, assignment: u32) -> bool {
        self.clauses.iter().all(|clause| {
            clause.iter().any(|lit| {
                let value = assignment >> (lit.unsigned_abs() - 1) & 1 == 1;
                value == (*lit > 0)
            })
        })
    }

    /// Tries all `2^N` assignments.
    pub fn is_satisfiable(&self) -> Result<bool> {
        if self.num_vars > 24 {
            return Err(Error::Refused(format!(
                "assignment enumeration is limited to 24 variables, formula has {}",
                self.num_vars
            )));
        }
        Ok((0..1u32 << self.num_vars).any(|a| self.satisfied_by(a)))
    }
}

/// Reads `p <N> <M>` followed by `M` clauses of three signed integers.
/// A trailing `0` on a clause line is allowed; lines starting with `c` or
/// `#` are comments.
pub fn parse_sat(text: &str) -> Result<SatInstance> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "p" {
            if header.is_some() {
                return Err(Error::parse(line_no, "duplicate header"));
            }
            let [_, n, m] = fields[..] else {
                return Err(Error::parse(line_no, "header must be `p <vars> <clauses>`"));
            };
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("invalid count `{s}`")))
            };
            header = Some((parse(n)?, parse(m)?));
            continue;
        }
        if header.is_none() {
            return Err(Error::parse(line_no, "clause before the `p` header"));
        }
        let mut lits = fields
            .iter()
            .map(|s| {
                s.parse::<i32>()
                    .map_err(|_| Error::parse(line_no, format!("invalid literal `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if lits.len() == 4 && lits[3] == 0 {
            lits.pop();
        }
        let [a, b, c] = lits[..] else {
            return Err(Error::parse(line_no, "a clause has exactly three literals"));
        };
        clauses.push([a, b, c]);
    }
    let (n, m) = header.ok_or_else(|| Error::parse(0, "missing `p` header"))?;
    if clauses.len() != m {
        return Err(Error::parse(
            0,
            format!("header declares {m} clauses but {} were given", clauses.len()),
        ));
    }
    SatInstance::new(n, clauses)
}

pub fn serialize_sat(inst: &SatInstance) -> String {
    let mut out = format!("p {} {}\n", inst.num_vars, inst.clauses.len());
    for [a, b, c] in &inst.clauses {
        writeln!(out, "{a} {b} {c}").unwrap();
    }
    out
}

/// Gadget distances; `r` must be positive and below `r_prime`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionParams {
    pub r: Rational,
    pub r_prime: Rational,
}

impl Default for ReductionParams {
    fn default() -> Self {
        ReductionParams {
            r: integer(2),
            r_prime: integer(3),
        }
    }
}

impl ReductionParams {
    pub fn check(&self) -> Result<()> {
        if self.r <= integer(0) || self.r >= self.r_prime {
            return Err(Error::domain(format!(
                "gadget distances need 0 < r < r', got r={} r'={}",
                format_weight(&self.r),
                format_weight(&self.r_prime)
            )));
        }
        Ok(())
    }

    /// Team size asked for: one literal per variable plus every clause node.
    pub fn k_target(&self, inst: &SatInstance) -> usize {
        inst.num_vars + 2 * inst.clauses.len()
    }

    pub fn threshold(&self) -> &Rational {
        &self.r
    }
}

/// Graph, task and diameter threshold produced by the reduction.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub graph: SkillGraph,
    pub task: Task,
    pub threshold: Rational,
}

impl Reduction {
    /// Node of literal `lit`.
    pub fn literal(&self, lit: i32) -> NodeId {
        let var = lit.unsigned_abs() - 1;
        NodeId(2 * var + u32::from(lit < 0))
    }

    /// Clause node `t` (0 or 1) of clause `j` (from 0).
    pub fn clause_node(&self, inst: &SatInstance, j: usize, t: usize) -> NodeId {
        NodeId((2 * inst.num_vars + 2 * j + t) as u32)
    }

    /// One literal node per variable following `assignment`, plus every
    /// clause node.
    pub fn structured_candidate(&self, inst: &SatInstance, assignment: u32) -> NodeSet {
        let mut members: NodeSet = (0..inst.num_vars as i32)
            .map(|i| {
                let positive = assignment >> i & 1 == 1;
                self.literal(if positive { i + 1 } else { -(i + 1) })
            })
            .collect();
        for j in 0..inst.clauses.len() {
            members.insert(self.clause_node(inst, j, 0));
            members.insert(self.clause_node(inst, j, 1));
        }
        members
    }
}

#[derive(Clone, Copy)]
enum Gadget {
    Literal(i32),
    Clause(usize),
}

fn literal_label(lit: i32) -> String {
    if lit > 0 {
        format!("x{lit}")
    } else {
        format!("~x{}", -lit)
    }
}

/// Builds the complete gadget graph. Affinities equal distances.
pub fn sat_to_diameter_stf(inst: &SatInstance, params: &ReductionParams) -> Result<Reduction> {
    params.check()?;
    let SatInstance { num_vars, clauses } = inst;
    let mut g = SkillGraph::new();
    let mut kinds = Vec::new();
    for var in 1..=*num_vars as i32 {
        for lit in [var, -var] {
            g.add_node(literal_label(lit), [REDUCTION_SKILL])?;
            kinds.push(Gadget::Literal(lit));
        }
    }
    for j in 0..clauses.len() {
        for t in 1..=2 {
            g.add_node(format!("C{}_{t}", j + 1), [REDUCTION_SKILL])?;
            kinds.push(Gadget::Clause(j));
        }
    }
    let half = &params.r / integer(2);
    let ids: Vec<NodeId> = g.node_ids().collect();
    for (a, u) in ids.iter().enumerate() {
        for (b, v) in ids.iter().enumerate().skip(a + 1) {
            let w = match (kinds[a], kinds[b]) {
                (Gadget::Literal(x), Gadget::Literal(y)) if x == -y => params.r_prime.clone(),
                (Gadget::Clause(i), Gadget::Clause(j)) if i == j => params.r_prime.clone(),
                (Gadget::Clause(j), Gadget::Literal(lit))
                | (Gadget::Literal(lit), Gadget::Clause(j))
                    if clauses[j].contains(&lit) =>
                {
                    half.clone()
                }
                _ => params.r.clone(),
            };
            g.add_edge(*u, *v, w.clone(), w)?;
        }
    }
    Ok(Reduction {
        graph: g,
        task: Task::single(REDUCTION_SKILL, params.k_target(inst)),
        threshold: params.r.clone(),
    })
}

/// Returns `(satisfiable, team_exists)`. Team existence is decided over
/// the structured candidates and, for gadgets of at most sixteen nodes,
/// over every subset of the target size or more. Team diameters are
/// measured inside the team.
pub fn verify_reduction(inst: &SatInstance, params: &ReductionParams) -> Result<(bool, bool)> {
    if inst.num_vars > MAX_VERIFY_VARS || inst.clauses.len() > MAX_VERIFY_CLAUSES {
        return Err(Error::Refused(format!(
            "reduction check is limited to {MAX_VERIFY_VARS} variables and \
             {MAX_VERIFY_CLAUSES} clauses, formula has {} and {}",
            inst.num_vars,
            inst.clauses.len()
        )));
    }
    let sat = inst.is_satisfiable()?;
    let red = sat_to_diameter_stf(inst, params)?;
    let mut exists = false;
    for assignment in 0..1u32 << inst.num_vars {
        let team = red.structured_candidate(inst, assignment);
        let diameter = red.graph.induced_subgraph(&team)?.diameter()?;
        if diameter.finite().is_some_and(|d| *d <= red.threshold) {
            exists = true;
            break;
        }
    }
    if !exists && red.graph.len() <= MAX_SWEEP_NODES {
        exists = induced_team_exists(&red.graph, params.k_target(inst), &red.threshold)?;
    }
    Ok((sat, exists))
}

/// Checks the two distance facts the equivalence rests on and returns one
/// message per violation: complementary literals are farther apart than
/// `r` in the whole graph, and inside every structured candidate the two
/// nodes of a clause are at distance `r` exactly when one of the clause's
/// literals is present.
pub fn gadget_violations(inst: &SatInstance, params: &ReductionParams) -> Result<Vec<String>> {
    let red = sat_to_diameter_stf(inst, params)?;
    let idx = DistanceIndex::new(&red.graph);
    let mut out = Vec::new();
    for var in 1..=inst.num_vars as i32 {
        let d = idx.distance(red.literal(var), red.literal(-var))?;
        if d.finite().is_some_and(|d| *d <= params.r) {
            out.push(format!("d(x{var}, ~x{var}) = {d} is not above r"));
        }
    }
    for assignment in 0..1u32 << inst.num_vars {
        let team = red.structured_candidate(inst, assignment);
        let sub = red.graph.induced_subgraph(&team)?;
        let sub_idx = DistanceIndex::new(&sub);
        for (j, clause) in inst.clauses.iter().enumerate() {
            let present = clause.iter().any(|lit| team.contains(&red.literal(*lit)));
            let d = sub_idx.distance(red.clause_node(inst, j, 0), red.clause_node(inst, j, 1))?;
            let at_r = d.finite() == Some(&params.r);
            if present != at_r {
                out.push(format!(
                    "assignment {assignment:b}, clause {}: literal present {present}, distance {d}",
                    j + 1
                ));
            }
        }
    }
    Ok(out)
}

/// Every clause over three variables in all eight sign patterns: the
/// smallest unsatisfiable 3-CNF on those variables.
pub fn all_sign_patterns() -> SatInstance {
    let clauses = (0..8)
        .map(|bits: i32| {
            let sign = |b: i32, v: i32| if bits >> b & 1 == 1 { -v } else { v };
            [sign(0, 1), sign(1, 2), sign(2, 3)]
        })
        .collect();
    SatInstance::new(3, clauses).expect("well formed")
}

/// Named formulas for checking the reduction: empty formulas over one to
/// three variables, every single clause, seeded two- and three-clause
/// formulas, the unsatisfiable full sign set and each of its seven-clause
/// subsets.
pub fn fixture_suite() -> Vec<(String, SatInstance)> {
    use rand::seq::SliceRandom;

    let full = all_sign_patterns();
    let mut suite = Vec::new();
    for n in 1..=3 {
        suite.push((format!("empty-{n}"), SatInstance::new(n, vec![]).expect("valid")));
    }
    for (j, clause) in full.clauses().iter().enumerate() {
        suite.push((format!("single-{j}"), SatInstance::new(3, vec![*clause]).expect("valid")));
    }
    let mut rng = crate::generate::rng_from_seed(2024);
    for m in [2, 3] {
        for i in 0..10 {
            let clauses = full.clauses().choose_multiple(&mut rng, m).copied().collect();
            suite.push((format!("random{m}-{i}"), SatInstance::new(3, clauses).expect("valid")));
        }
    }
    suite.push(("all-signs".to_string(), full.clone()));
    for skip in 0..8 {
        let clauses = full
            .clauses()
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != skip)
            .map(|(_, c)| *c)
            .collect();
        suite.push((format!("all-but-{skip}"), SatInstance::new(3, clauses).expect("valid")));
    }
    suite
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> SatInstance {
        SatInstance::new(3, vec![[1, 2, 3]]).unwrap()
    }

    #[test]
    fn parse_round_trip() {
        let inst = parse_sat("c comment\np 3 2\n1 -2 3 0\n-1 2 -3\n").unwrap();
        assert_eq!(inst.clauses(), &[[1, -2, 3], [-1, 2, -3]]);
        assert_eq!(parse_sat(&serialize_sat(&inst)).unwrap(), inst);

        assert!(matches!(parse_sat("p 3 1\n1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(parse_sat("p 3 2\n1 2 3\n").is_err());
        assert!(parse_sat("1 2 3\n").is_err());
        assert!(matches!(parse_sat("p 3 1\n1 -1 2\n"), Err(Error::Domain(_))));
        assert!(matches!(parse_sat("p 2 1\n1 2 3\n"), Err(Error::Domain(_))));
    }

    #[test]
    fn gadget_weights() {
        let red = sat_to_diameter_stf(&xyz(), &ReductionParams::default()).unwrap();
        let g = &red.graph;
        assert_eq!(g.len(), 8);
        assert_eq!(g.edge_count(), 28);
        assert_eq!(red.task, Task::single("a", 5));
        assert_eq!(red.threshold, integer(2));
        let w = |a: &str, b: &str| g.edge(g.id_of(a).unwrap(), g.id_of(b).unwrap()).unwrap().distance.clone();
        assert_eq!(w("x1", "~x1"), integer(3));
        assert_eq!(w("C1_1", "C1_2"), integer(3));
        assert_eq!(w("C1_1", "x1"), integer(1));
        assert_eq!(w("C1_1", "~x2"), integer(2));
        assert_eq!(w("x1", "x2"), integer(2));

        let single = SatInstance::new(1, vec![]).unwrap();
        let red = sat_to_diameter_stf(&single, &ReductionParams::default()).unwrap();
        assert_eq!((red.graph.len(), red.graph.edge_count()), (2, 1));
        assert_eq!(red.task, Task::single("a", 1));
    }

    #[test]
    fn bad_parameters_are_rejected() {
        let params = ReductionParams {
            r: integer(3),
            r_prime: integer(3),
        };
        assert!(sat_to_diameter_stf(&xyz(), &params).is_err());
    }

    #[test]
    fn verify_examples() {
        let params = ReductionParams::default();
        assert_eq!(verify_reduction(&xyz(), &params).unwrap(), (true, true));
        assert_eq!(verify_reduction(&all_sign_patterns(), &params).unwrap(), (false, false));
        let empty = SatInstance::new(2, vec![]).unwrap();
        assert_eq!(verify_reduction(&empty, &params).unwrap(), (true, true));
        let big = SatInstance::new(5, vec![]).unwrap();
        assert!(matches!(verify_reduction(&big, &params), Err(Error::Refused(_))));
    }

    #[test]
    fn fixture_suite_shape() {
        let suite = fixture_suite();
        assert_eq!(suite.len(), 40);
        assert_eq!(suite.iter().filter(|(_, i)| !i.is_satisfiable().unwrap()).count(), 1);
    }

    #[test]
    fn gadget_facts_hold() {
        let params = ReductionParams::default();
        for inst in [xyz(), all_sign_patterns()] {
            assert!(gadget_violations(&inst, &params).unwrap().is_empty());
        }
    }
}
