//! Empirical approximation-ratio certificates on seeded random instances.

use std::fmt;
use std::fmt::Write;
use std::str::FromStr;

use num::Zero;

use crate::densest::{m_densest_alk, s_densest_alk};
use crate::diameter::{min_diameter_with_index, DistanceIndex};
use crate::error::{Error, Result};
use crate::generate::{random_graph, random_task, rng_from_seed, GraphConfig, InstanceRng};
use crate::graph::{SkillGraph, Task};
use crate::oracle::brute::{brute_density_tf, brute_diameter_tf, Metric, MAX_BRUTE_NODES};
use crate::weight::{integer, to_f64, Rational};

/// Instances drawn before giving up on finding a usable one.
const MAX_RESAMPLES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// One requirement; density within a factor 3 of optimal.
    Density,
    /// Two or three requirements, one skill per node; density within 3.
    MultiDensity,
    /// Diameter in the host metric within a factor 2 of optimal.
    Diameter,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Density => "density",
            Family::MultiDensity => "multi-density",
            Family::Diameter => "diameter",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "density" => Ok(Family::Density),
            "multi-density" => Ok(Family::MultiDensity),
            "diameter" => Ok(Family::Diameter),
            _ => Err(format!("unknown family `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertifyConfig {
    pub family: Family,
    pub count: usize,
    /// Instance `i` is drawn from seed `seed + i`.
    pub seed: u64,
    pub graph: GraphConfig,
    pub min_requirements: usize,
    pub max_requirements: usize,
    pub max_k: usize,
}

impl CertifyConfig {
    /// Family defaults on graphs of `3..=max_nodes` nodes.
    pub fn new(family: Family, count: usize, seed: u64, max_nodes: usize) -> Self {
        let abc = || ["a", "b", "c"].map(String::from).to_vec();
        let graph = GraphConfig {
            min_nodes: 3.min(max_nodes),
            max_nodes,
            ..GraphConfig::default()
        };
        match family {
            Family::Density => CertifyConfig {
                family,
                count,
                seed,
                graph,
                min_requirements: 1,
                max_requirements: 1,
                max_k: 4,
            },
            Family::MultiDensity => CertifyConfig {
                family,
                count,
                seed,
                graph: GraphConfig {
                    skills: abc(),
                    skill_probability: 0.9,
                    one_skill_per_node: true,
                    ..graph
                },
                min_requirements: 2,
                max_requirements: 3,
                max_k: 2,
            },
            Family::Diameter => CertifyConfig {
                family,
                count,
                seed,
                graph: GraphConfig {
                    skills: abc(),
                    skill_probability: 0.4,
                    ..graph
                },
                min_requirements: 1,
                max_requirements: 3,
                max_k: 2,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceRecord {
    pub seed: u64,
    pub family: Family,
    pub n: usize,
    /// Solver objective over the optimum; `None` when unbounded.
    pub ratio: Option<Rational>,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertifyReport {
    pub records: Vec<InstanceRecord>,
    /// Peeling bookkeeping violations, prefixed with the instance seed.
    pub union_violations: Vec<String>,
}

impl CertifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &InstanceRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none() && self.union_violations.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("seed,family,n,ratio,pass\n");
        for r in &self.records {
            let ratio = r.ratio.as_ref().map_or("inf".to_string(), |q| format!("{:.6}", to_f64(q)));
            writeln!(out, "{},{},{},{},{}", r.seed, r.family, r.n, ratio, r.pass).unwrap();
        }
        out
    }

    /// Instance count, failures, extreme and mean ratio, union violations.
    pub fn summary(&self) -> String {
        let ratios: Vec<f64> = self.records.iter().filter_map(|r| r.ratio.as_ref()).map(to_f64).collect();
        let mean = if ratios.is_empty() { 0.0 } else { ratios.iter().sum::<f64>() / ratios.len() as f64 };
        let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        format!(
            "instances {} failures {} min_ratio {:.6} max_ratio {:.6} mean_ratio {:.6} union_violations {}",
            self.records.len(),
            self.failures().count(),
            min,
            max,
            mean,
            self.union_violations.len()
        )
    }
}

fn draw(rng: &mut InstanceRng, config: &CertifyConfig) -> (SkillGraph, Task) {
    let g = random_graph(rng, &config.graph);
    let requirements = rng_range(rng, config.min_requirements, config.max_requirements);
    let task = random_task(rng, &config.graph.skills, requirements, config.max_k);
    (g, task)
}

fn rng_range(rng: &mut InstanceRng, lo: usize, hi: usize) -> usize {
    use rand::Rng;
    rng.gen_range(lo..=hi.max(lo))
}

fn ratio_of(found: &Rational, optimum: &Rational) -> Option<Rational> {
    if optimum.is_zero() {
        found.is_zero().then(|| integer(1))
    } else {
        Some(found / optimum)
    }
}

/// Certifies one instance, or `None` when it must be redrawn.
fn certify_one(
    g: &SkillGraph,
    task: &Task,
    family: Family,
    violations: &mut Vec<String>,
) -> Result<Option<(Option<Rational>, bool)>> {
    if task.check_feasible(g).is_err() {
        return Ok(None);
    }
    match family {
        Family::Density | Family::MultiDensity => {
            let (team, trace) = if family == Family::Density {
                s_densest_alk(g, task)?
            } else {
                m_densest_alk(g, task)?
            };
            violations.extend(trace.union_violations(g));
            let best = brute_density_tf(g, task)?;
            let pass = task.is_satisfied_by(g, &team.members)
                && &team.density * integer(3) >= best.objective;
            Ok(Some((ratio_of(&team.density, &best.objective), pass)))
        }
        Family::Diameter => {
            let best = match brute_diameter_tf(g, task, Metric::Host) {
                Ok(best) => best,
                Err(Error::Infeasible { .. }) => return Ok(None),
                Err(e) => return Err(e),
            };
            let idx = DistanceIndex::new(g);
            let (team, _) = min_diameter_with_index(g, task, &idx)?;
            let found = idx.host_diameter(&team.members)?;
            let Some(found) = found.finite() else {
                return Ok(Some((None, false)));
            };
            let pass = task.is_satisfied_by(g, &team.members)
                && *found <= &best.objective * integer(2);
            Ok(Some((ratio_of(found, &best.objective), pass)))
        }
    }
}

/// Draws `count` instances and checks each solver against the exhaustive
/// optimum. Infeasible draws, and diameter draws with no finite optimum,
/// are redrawn from the same stream.
pub fn certify_ratios(config: &CertifyConfig) -> Result<CertifyReport> {
    if config.graph.max_nodes > MAX_BRUTE_NODES {
        return Err(Error::Refused(format!(
            "certificates need exhaustive search, limited to {MAX_BRUTE_NODES} nodes; {} requested",
            config.graph.max_nodes
        )));
    }
    let mut report = CertifyReport::default();
    for i in 0..config.count as u64 {
        let seed = config.seed.wrapping_add(i);
        let mut rng = rng_from_seed(seed);
        let mut outcome = None;
        for _ in 0..MAX_RESAMPLES {
            let (g, task) = draw(&mut rng, config);
            let mut violations = Vec::new();
            if let Some((ratio, pass)) = certify_one(&g, &task, config.family, &mut violations)? {
                report
                    .union_violations
                    .extend(violations.into_iter().map(|v| format!("seed {seed}: {v}")));
                outcome = Some(InstanceRecord {
                    seed,
                    family: config.family,
                    n: g.len(),
                    ratio,
                    pass,
                });
                break;
            }
        }
        report.records.push(outcome.ok_or_else(|| {
            Error::domain(format!("seed {seed}: no usable instance in {MAX_RESAMPLES} draws"))
        })?);
    }
    Ok(report)
}
