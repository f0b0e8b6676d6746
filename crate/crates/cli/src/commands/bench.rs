use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use teamform_core::weight::to_f64;
use teamform_core::{format_weight, load_graph, DistanceIndex, Error, SkillGraph, Task};

use super::{solve_with, Algo};
use crate::{read_file, split_list};

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Comma-separated skills.
    #[arg(long)]
    pub skills: String,
    /// Comma-separated quotas.
    #[arg(long = "k-range")]
    pub k_range: String,
    /// Comma-separated algorithm names.
    #[arg(long)]
    pub algos: String,
}

pub const CSV_HEADER: &str = "k,skill,algo,status,density,size,components,density_per_node,time_ms";

/// One bench cell.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub k: usize,
    pub skill: String,
    pub algo: Algo,
    pub status: &'static str,
    /// Exact density, size and components of the team when the run succeeded.
    pub team: Option<(String, usize, usize)>,
    pub density: f64,
    pub density_per_node: f64,
    pub time_ms: f64,
}

impl BenchRow {
    pub fn to_csv(&self) -> String {
        let mut line = format!("{},{},{},{},", self.k, self.skill, self.algo, self.status);
        match &self.team {
            Some((density, size, components)) => write!(
                line,
                "{density},{size},{components},{:.6},{:.3}",
                self.density_per_node, self.time_ms
            ),
            None => write!(line, ",,,,{:.3}", self.time_ms),
        }
        .unwrap();
        line
    }
}

fn status_of(err: &Error) -> &'static str {
    match err {
        Error::Infeasible { .. } => "infeasible",
        Error::HeuristicFailure(_) => "heuristic_failure",
        _ => "error",
    }
}

/// Runs every cell in parallel; rows come back in k, skill, algo order.
pub fn bench_rows(g: &SkillGraph, ks: &[usize], skills: &[String], algos: &[Algo]) -> Vec<BenchRow> {
    let idx = DistanceIndex::new(g);
    let cells: Vec<(usize, &String, Algo)> = ks
        .iter()
        .flat_map(|k| skills.iter().flat_map(move |s| algos.iter().map(move |a| (*k, s, *a))))
        .collect();
    cells
        .par_iter()
        .map(|(k, skill, algo)| {
            let task = Task::single(skill.as_str(), *k);
            let start = Instant::now();
            let result = solve_with(*algo, g, &task, &idx);
            let time_ms = start.elapsed().as_secs_f64() * 1000.0;
            let mut row = BenchRow {
                k: *k,
                skill: skill.to_string(),
                algo: *algo,
                status: "ok",
                team: None,
                density: 0.0,
                density_per_node: 0.0,
                time_ms,
            };
            match result {
                Ok((team, _)) => {
                    row.density = to_f64(&team.density);
                    row.density_per_node = if team.is_empty() {
                        0.0
                    } else {
                        row.density / team.len() as f64
                    };
                    row.team = Some((format_weight(&team.density), team.len(), team.components));
                }
                Err(e) => row.status = status_of(&e),
            }
            row
        })
        .collect()
}

pub fn run(args: &BenchArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let g = load_graph(&read_file(&args.graph)?)?;
    let ks = split_list(&args.k_range)
        .iter()
        .map(|k| k.parse::<usize>().map_err(|_| anyhow::anyhow!("invalid k `{k}`")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let algos = split_list(&args.algos)
        .iter()
        .map(|a| Algo::from_str(a, true).map_err(|_| anyhow::anyhow!("unknown algorithm `{a}`")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let skills = split_list(&args.skills);
    writeln!(out, "{CSV_HEADER}")?;
    for row in bench_rows(&g, &ks, &skills, &algos) {
        writeln!(out, "{}", row.to_csv())?;
    }
    Ok(())
}
