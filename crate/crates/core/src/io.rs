//! Line-oriented text formats for graphs and tasks.
//!
//! Graph files hold `node <id> [skill[,skill...]]` lines followed by
//! `edge <u> <v> <affinity> [<distance>]` lines; a missing distance
//! defaults to the affinity. `loop <id> <weight>` records a self-loop.
//! Task files hold `require <skill> <k>` lines. `#` starts a comment.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{Requirement, SkillGraph, Task};
use crate::weight::{format_weight, parse_weight};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub fn load_graph(text: &str) -> Result<SkillGraph> {
    let mut g = SkillGraph::new();
    for (line, tokens) in content_lines(text) {
        match tokens[0] {
            "node" => {
                if !(2..=3).contains(&tokens.len()) {
                    return Err(Error::parse(line, "expected `node <id> [skill[,skill...]]`"));
                }
                let skills: Vec<&str> = match tokens.get(2) {
                    Some(list) => list.split(',').collect(),
                    None => Vec::new(),
                };
                if skills.iter().any(|s| s.is_empty()) {
                    return Err(Error::parse(line, "empty skill name"));
                }
                g.add_node(tokens[1], skills)
                    .map_err(|e| Error::parse(line, e.to_string()))?;
            }
            "edge" => {
                if !(4..=5).contains(&tokens.len()) {
                    return Err(Error::parse(
                        line,
                        "expected `edge <u> <v> <affinity> [<distance>]`",
                    ));
                }
                let u = lookup(&g, tokens[1], line)?;
                let v = lookup(&g, tokens[2], line)?;
                let affinity = parse_weight(tokens[3]).map_err(|m| Error::parse(line, m))?;
                let distance = match tokens.get(4) {
                    Some(t) => parse_weight(t).map_err(|m| Error::parse(line, m))?,
                    None => affinity.clone(),
                };
                g.add_edge(u, v, affinity, distance)
                    .map_err(|e| Error::parse(line, e.to_string()))?;
            }
            "loop" => {
                if tokens.len() != 3 {
                    return Err(Error::parse(line, "expected `loop <id> <weight>`"));
                }
                let v = lookup(&g, tokens[1], line)?;
                let w = parse_weight(tokens[2]).map_err(|m| Error::parse(line, m))?;
                g.add_loop(v, w).map_err(|e| Error::parse(line, e.to_string()))?;
            }
            other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
        }
    }
    Ok(g)
}

fn lookup(g: &SkillGraph, label: &str, line: usize) -> Result<crate::graph::NodeId> {
    g.id_of(label)
        .ok_or_else(|| Error::parse(line, format!("unknown node {label}")))
}

/// Writes nodes in canonical order, then edges with the smaller endpoint
/// first, then loops.
pub fn serialize_graph(g: &SkillGraph) -> String {
    let mut out = String::new();
    for v in g.node_ids() {
        let skills: Vec<&str> = g.skills(v).iter().map(String::as_str).collect();
        if skills.is_empty() {
            writeln!(out, "node {}", g.label(v)).unwrap();
        } else {
            writeln!(out, "node {} {}", g.label(v), skills.join(",")).unwrap();
        }
    }
    for (u, v, w) in g.edges() {
        writeln!(
            out,
            "edge {} {} {} {}",
            g.label(u),
            g.label(v),
            format_weight(&w.affinity),
            format_weight(&w.distance)
        )
        .unwrap();
    }
    for v in g.node_ids() {
        for w in g.loops(v) {
            writeln!(out, "loop {} {}", g.label(v), format_weight(w)).unwrap();
        }
    }
    out
}

pub fn load_task(text: &str) -> Result<Task> {
    let mut requirements = Vec::new();
    for (line, tokens) in content_lines(text) {
        if tokens[0] != "require" || tokens.len() != 3 {
            return Err(Error::parse(line, "expected `require <skill> <k>`"));
        }
        let count = tokens[2]
            .parse::<usize>()
            .map_err(|_| Error::parse(line, format!("invalid count `{}`", tokens[2])))?;
        if requirements.iter().any(|r: &Requirement| r.skill == tokens[1]) {
            return Err(Error::parse(line, format!("duplicate skill `{}`", tokens[1])));
        }
        requirements.push(Requirement {
            skill: tokens[1].to_string(),
            count,
        });
    }
    Task::new(requirements)
}

pub fn serialize_task(task: &Task) -> String {
    task.requirements()
        .iter()
        .map(|r| format!("require {} {}\n", r.skill, r.count))
        .collect()
}
