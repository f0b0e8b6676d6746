use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use teamform_core::{
    format_weight, parse_sat, parse_weight, sat_to_diameter_stf, serialize_graph, serialize_task,
    ReductionParams,
};

use crate::{read_file, write_file};

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(long)]
    pub sat: PathBuf,
    #[arg(long = "graph-out")]
    pub graph_out: PathBuf,
    #[arg(long = "task-out")]
    pub task_out: PathBuf,
    #[arg(long, default_value = "2")]
    pub r: String,
    #[arg(long = "r-prime", default_value = "3")]
    pub r_prime: String,
}

pub fn run(args: &ReduceArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let inst = parse_sat(&read_file(&args.sat)?)?;
    let params = ReductionParams {
        r: parse_weight(&args.r).map_err(anyhow::Error::msg)?,
        r_prime: parse_weight(&args.r_prime).map_err(anyhow::Error::msg)?,
    };
    let red = sat_to_diameter_stf(&inst, &params)?;
    write_file(&args.graph_out, &serialize_graph(&red.graph))?;
    write_file(&args.task_out, &serialize_task(&red.task))?;
    writeln!(out, "nodes {}", red.graph.len())?;
    writeln!(out, "k {}", params.k_target(&inst))?;
    writeln!(out, "threshold {}", format_weight(&red.threshold))?;
    Ok(())
}
