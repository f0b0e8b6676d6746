//! Line-oriented `key value` run reports.

use std::fmt::Write;
use std::time::Duration;

use teamform_core::weight::to_f64;
use teamform_core::{format_weight, Distance, DistanceIndex, Result, SkillGraph, Task, Team};

/// Everything printed by `solve`.
#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub graph_sha256: String,
    pub task_sha256: String,
    pub algo: String,
    pub members: Vec<String>,
    pub size: usize,
    pub density: String,
    pub density_approx: f64,
    pub total_weight: String,
    pub induced_diameter: Distance,
    pub host_diameter: Distance,
    pub components: usize,
    /// Per requirement: skill, members holding it, quota.
    pub skills: Vec<(String, usize, usize)>,
    pub seed: u64,
    pub wall_time: Duration,
}

impl RunReport {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        command: &str,
        graph_text: &str,
        task_text: &str,
        algo: &str,
        g: &SkillGraph,
        task: &Task,
        team: &Team,
        idx: &DistanceIndex,
        seed: u64,
        wall_time: Duration,
    ) -> Result<Self> {
        let counts = task.skilled_counts(g, &team.members);
        Ok(RunReport {
            command: command.to_string(),
            graph_sha256: crate::sha256_hex(graph_text),
            task_sha256: crate::sha256_hex(task_text),
            algo: algo.to_string(),
            members: team.labels(g).into_iter().map(String::from).collect(),
            size: team.len(),
            density: format_weight(&team.density),
            density_approx: to_f64(&team.density),
            total_weight: format_weight(&team.total_weight),
            induced_diameter: team.diameter.clone(),
            host_diameter: idx.host_diameter(&team.members)?,
            components: team.components,
            skills: task
                .requirements()
                .iter()
                .zip(counts)
                .map(|(r, have)| (r.skill.clone(), have, r.count))
                .collect(),
            seed,
            wall_time,
        })
    }

    /// The report text. Wall time comes last so the rest can be compared
    /// across runs.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut line = |key: &str, value: &dyn std::fmt::Display| {
            writeln!(out, "{key} {value}").unwrap();
        };
        line("command", &self.command);
        line("graph_sha256", &self.graph_sha256);
        line("task_sha256", &self.task_sha256);
        line("algo", &self.algo);
        line("members", &self.members.join(" "));
        line("size", &self.size);
        line("density", &self.density);
        line("density_approx", &format!("{:.6}", self.density_approx));
        line("total_weight", &self.total_weight);
        line("induced_diameter", &self.induced_diameter);
        line("host_diameter", &self.host_diameter);
        line("components", &self.components);
        for (skill, have, need) in &self.skills {
            line(&format!("skill.{skill}"), &format!("{have}/{need}"));
        }
        line("seed", &self.seed);
        line("wall_time_ms", &format!("{:.3}", self.wall_time.as_secs_f64() * 1000.0));
        out
    }
}

/// Reads a team file: whitespace-separated labels. When a line starts
/// with `members` only that line is read, so a run report doubles as a
/// team file.
pub fn parse_team(text: &str) -> Vec<String> {
    let tokens = |line: &str| -> Vec<String> {
        line.split('#')
            .next()
            .unwrap_or("")
            .split_whitespace()
            .map(String::from)
            .collect()
    };
    if let Some(line) = text.lines().find(|l| l.trim_start().starts_with("members")) {
        return tokens(line).into_iter().skip(1).collect();
    }
    text.lines().flat_map(tokens).collect()
}
