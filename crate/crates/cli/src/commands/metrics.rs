use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use teamform_core::weight::to_f64;
use teamform_core::{
    format_weight, parse_corpus, parse_domain_map, parse_ranks, partial_team_pubs, team_pub_ratio,
    team_pubs, team_rank, RatioScope, TeamLabels,
};

use crate::report::parse_team;
use crate::{read_file, split_list, CliError};

#[derive(Debug, Args)]
pub struct MetricsArgs {
    #[arg(long)]
    pub team: PathBuf,
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub ranks: Option<PathBuf>,
    /// Domain map file; the four default domains when omitted.
    #[arg(long)]
    pub domains: Option<PathBuf>,
    /// Comma-separated skills that make a member count for the team rank;
    /// any mapped skill when omitted.
    #[arg(long)]
    pub skills: Option<String>,
    /// Average the publication ratio only over papers with a team author.
    #[arg(long)]
    pub touching: bool,
}

pub fn run(args: &MetricsArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let team: TeamLabels = parse_team(&read_file(&args.team)?).into_iter().collect();
    let mut corpus = parse_corpus(&read_file(&args.corpus)?)?;
    if let Some(path) = &args.domains {
        corpus = corpus.with_domain_map(parse_domain_map(&read_file(path)?)?);
    }
    if corpus.is_empty() {
        return Err(CliError::EmptyCorpus.into());
    }
    let scope = if args.touching {
        RatioScope::TouchingTeam
    } else {
        RatioScope::AllPublications
    };
    let ratio = team_pub_ratio(&team, &corpus, scope)?;
    writeln!(out, "team_pubs {}", team_pubs(&team, &corpus))?;
    writeln!(out, "partial_team_pubs {}", partial_team_pubs(&team, &corpus))?;
    writeln!(out, "team_pub_ratio {}", format_weight(&ratio))?;
    writeln!(out, "team_pub_ratio_scaled {:.3}", to_f64(&ratio) * 100_000.0)?;
    if let Some(path) = &args.ranks {
        let ranks = parse_ranks(&read_file(path)?)?;
        let wanted = args.skills.as_deref().map(split_list);
        let skilled: TeamLabels = corpus
            .publications
            .iter()
            .filter(|p| {
                corpus.domain_map.get(&p.domain).is_some_and(|skill| {
                    wanted.as_ref().is_none_or(|w| w.contains(skill))
                })
            })
            .flat_map(|p| p.authors.iter().cloned())
            .collect();
        match team_rank(&team, &ranks, &skilled) {
            Ok(rank) => writeln!(out, "team_rank {}", format_weight(&rank))?,
            Err(_) => writeln!(out, "team_rank n/a")?,
        }
    }
    Ok(())
}
