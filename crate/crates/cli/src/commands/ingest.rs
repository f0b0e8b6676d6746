use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use teamform_core::{build_coauthor_graph, parse_corpus, parse_domain_map, serialize_graph};

use crate::{read_file, write_file};

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub domains: Option<PathBuf>,
    #[arg(long = "min-papers", default_value_t = 3)]
    pub min_papers: usize,
    #[arg(long = "min-copapers", default_value_t = 2)]
    pub min_copapers: usize,
    /// Write the graph here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &IngestArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let mut corpus = parse_corpus(&read_file(&args.corpus)?)?;
    if let Some(path) = &args.domains {
        corpus = corpus.with_domain_map(parse_domain_map(&read_file(path)?)?);
    }
    let g = build_coauthor_graph(&corpus, args.min_papers, args.min_copapers)?;
    let text = serialize_graph(&g);
    match &args.out {
        Some(path) => {
            write_file(path, &text)?;
            writeln!(out, "nodes {}\nedges {}", g.len(), g.edge_count())?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}
