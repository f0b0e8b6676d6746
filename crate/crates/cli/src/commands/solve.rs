use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use teamform_core::{load_graph, load_task, DistanceIndex};

use super::{solve_with, Algo};
use crate::report::RunReport;
use crate::{read_file, write_file};

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub task: PathBuf,
    #[arg(long, value_enum)]
    pub algo: Algo,
    /// Write the solver trace or pivot report here.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn run(args: &SolveArgs, echo: &str, out: &mut dyn Write) -> anyhow::Result<()> {
    let graph_text = read_file(&args.graph)?;
    let task_text = read_file(&args.task)?;
    let g = load_graph(&graph_text)?;
    let task = load_task(&task_text)?;
    let start = Instant::now();
    let idx = DistanceIndex::new(&g);
    let (team, trace) = solve_with(args.algo, &g, &task, &idx)?;
    let elapsed = start.elapsed();
    if let Some(path) = &args.trace {
        write_file(path, &trace)?;
    }
    let report = RunReport::new(
        echo,
        &graph_text,
        &task_text,
        &args.algo.to_string(),
        &g,
        &task,
        &team,
        &idx,
        args.seed,
        elapsed,
    )?;
    out.write_all(report.render().as_bytes())?;
    Ok(())
}
