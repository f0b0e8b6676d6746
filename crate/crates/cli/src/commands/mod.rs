pub mod bench;
pub mod certify;
pub mod ingest;
pub mod metrics;
pub mod reduce;
pub mod solve;

use std::fmt;

use clap::ValueEnum;
use teamform_core::diameter::min_diameter_with_index;
use teamform_core::{
    m_densest_alk, s_densest_alk, DistanceIndex, HeuristicRun, Result, SkillGraph, Task, Team,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, ValueEnum)]
pub enum Algo {
    Sdensest,
    Mdensest,
    Mindiameter,
    Enhanced,
    Partialtrim,
    Completetrim,
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.to_possible_value().expect("no skipped variants");
        f.write_str(name.get_name())
    }
}

/// Runs `algo` and returns the team with its trace text.
pub fn solve_with(
    algo: Algo,
    g: &SkillGraph,
    task: &Task,
    idx: &DistanceIndex,
) -> Result<(Team, String)> {
    match algo {
        Algo::Sdensest => {
            let (team, trace) = s_densest_alk(g, task)?;
            Ok((team, trace.to_report(g, task)))
        }
        Algo::Mdensest => {
            let (team, trace) = m_densest_alk(g, task)?;
            Ok((team, trace.to_report(g, task)))
        }
        Algo::Mindiameter => {
            let (team, report) = min_diameter_with_index(g, task, idx)?;
            Ok((team, report.to_report(g)))
        }
        Algo::Enhanced | Algo::Partialtrim | Algo::Completetrim => {
            let run = HeuristicRun::new(g, task)?;
            let outcome = match algo {
                Algo::Enhanced => run.enhanced(g)?,
                Algo::Partialtrim => run.partial_trimmed(g, task)?,
                _ => run.complete_trimmed(g, task)?,
            };
            Ok((outcome.team, run.trace.to_report(g, task)))
        }
    }
}
