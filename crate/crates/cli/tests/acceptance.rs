//! Acceptance suite: one PASS/FAIL line per criterion on stderr, nonzero
//! exit when any criterion fails.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use teamform_cli::commands::certify::certify_parallel;
use teamform_core::evaluation::TeamLabels;
use teamform_core::generate::{
    random_graph, random_task, rng_from_seed, synthetic_corpus, CorpusConfig, GraphConfig,
};
use teamform_core::oracle::sat::{fixture_suite, gadget_violations};
use teamform_core::weight::{integer, Rational};
use teamform_core::{
    brute_densest_subgraph, build_coauthor_graph, load_graph, max_density_subgraph,
    parse_corpus, parse_ranks, partial_team_pubs, serialize_graph, team_pub_ratio, team_pubs,
    team_rank, verify_reduction, Family, HeuristicRun, RatioScope, ReductionParams,
    SkillGraph,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn exactness() -> Outcome {
    let start = Instant::now();
    let config = GraphConfig {
        min_nodes: 1,
        max_nodes: 14,
        ..GraphConfig::default()
    };
    let mismatches: Vec<u64> = (0..300u64)
        .into_par_iter()
        .filter(|seed| {
            let g = random_graph(&mut rng_from_seed(1000 + seed), &config);
            let (_, fast) = max_density_subgraph(&g).unwrap();
            fast != brute_densest_subgraph(&g).unwrap().objective
        })
        .collect();
    let elapsed = start.elapsed();
    outcome(
        mismatches.is_empty() && elapsed < Duration::from_secs(60),
        format!("300 graphs, {} mismatches, {:.1}s", mismatches.len(), elapsed.as_secs_f64()),
    )
}

struct Certificates {
    outcomes: Vec<(&'static str, Outcome)>,
    union_violations: usize,
    union_rounds: usize,
}

fn certificates() -> Certificates {
    let runs = [
        ("density-ratio", Family::Density, 500, 12, Duration::from_secs(300)),
        ("multi-density-ratio", Family::MultiDensity, 200, 12, Duration::MAX),
        ("diameter-ratio", Family::Diameter, 300, 12, Duration::MAX),
    ];
    let mut outcomes = Vec::new();
    let mut union_violations = 0;
    let mut union_rounds = 0;
    for (name, family, count, max_nodes, budget) in runs {
        let start = Instant::now();
        let report = certify_parallel(family, count, 42, max_nodes).unwrap();
        let elapsed = start.elapsed();
        let failures = report.failures().count();
        if family != Family::Diameter {
            union_violations += report.union_violations.len();
            union_rounds += report.records.len();
        }
        outcomes.push((
            name,
            outcome(
                failures == 0 && report.records.len() == count && elapsed < budget,
                format!("{}; {:.1}s", report.summary(), elapsed.as_secs_f64()),
            ),
        ));
    }
    Certificates {
        outcomes,
        union_violations,
        union_rounds,
    }
}

fn reduction() -> Outcome {
    let params = ReductionParams::default();
    let suite = fixture_suite();
    let mut bad = Vec::new();
    for (name, inst) in &suite {
        let (sat, exists) = verify_reduction(inst, &params).unwrap();
        let gadget = gadget_violations(inst, &params).unwrap();
        if sat != exists || !gadget.is_empty() {
            bad.push(name.clone());
        }
    }
    let unsat = suite.iter().any(|(name, _)| name == "all-signs");
    outcome(
        bad.is_empty() && suite.len() >= 30 && unsat,
        format!("{} formulas, failing: {:?}", suite.len(), bad),
    )
}

fn heuristics() -> Outcome {
    let config = GraphConfig {
        min_nodes: 6,
        max_nodes: 18,
        edge_probability: 0.3,
        skills: vec!["a".into(), "b".into()],
        skill_probability: 0.4,
        ..GraphConfig::default()
    };
    let mut instances = 0;
    let mut seed = 5000u64;
    let mut broken = Vec::new();
    let (mut triples, mut successes, mut failures) = (0, 0, 0);
    while instances < 200 {
        seed += 1;
        let mut rng = rng_from_seed(seed);
        let g = random_graph(&mut rng, &config);
        let requirements = 1 + (seed % 2) as usize;
        let task = random_task(&mut rng, &config.skills, requirements, 3);
        if task.check_feasible(&g).is_err() {
            continue;
        }
        instances += 1;
        let run = HeuristicRun::new(&g, &task).unwrap();
        let enhanced = run.enhanced(&g);
        let partial = run.partial_trimmed(&g, &task);
        let complete = run.complete_trimmed(&g, &task);
        for team in [&enhanced, &partial, &complete].into_iter().flatten().map(|o| &o.team) {
            successes += 1;
            if team.components != 1 || !task.is_satisfied_by(&g, &team.members) {
                broken.push(seed);
            }
        }
        failures += [enhanced.is_err(), partial.is_err(), complete.is_err()]
            .iter()
            .filter(|e| **e)
            .count();
        if let (Ok(_), Ok(p), Ok(c)) = (&enhanced, &partial, &complete) {
            triples += 1;
            let e = &enhanced.as_ref().unwrap().team;
            if !(c.team.len() <= p.team.len() && p.team.len() <= e.len()) {
                broken.push(seed);
            }
        }
    }
    outcome(
        broken.is_empty(),
        format!(
            "200 instances, {successes} teams, {failures} heuristic failures, {triples} triples, violations at seeds {broken:?}"
        ),
    )
}

fn add_edge_copy(g: &SkillGraph, u: usize, v: usize, w: Rational) -> SkillGraph {
    let ids: Vec<_> = g.node_ids().collect();
    let mut h = g.clone();
    h.add_edge(ids[u], ids[v], w.clone(), w).unwrap();
    h
}

fn monotonicity() -> Outcome {
    use rand::Rng;
    let config = GraphConfig {
        min_nodes: 2,
        max_nodes: 12,
        ..GraphConfig::default()
    };
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut seed = 9000u64;
    while checked < 1000 {
        seed += 1;
        let mut rng = rng_from_seed(seed);
        let g = random_graph(&mut rng, &config);
        let ids: Vec<_> = g.node_ids().collect();
        let missing: Vec<(usize, usize)> = (0..ids.len())
            .flat_map(|i| (i + 1..ids.len()).map(move |j| (i, j)))
            .filter(|(i, j)| g.edge(ids[*i], ids[*j]).is_none())
            .collect();
        if missing.is_empty() {
            continue;
        }
        checked += 1;
        let (u, v) = missing[rng.gen_range(0..missing.len())];
        let w = Rational::new(rng.gen_range(1..=50i64).into(), rng.gen_range(1..=7i64).into());
        let h = add_edge_copy(&g, u, v, w.clone());
        let n = integer(ids.len() as i64);
        let delta = h.density().unwrap() - g.density().unwrap();
        if delta != &w / &n || delta <= integer(0) {
            bad.push(seed);
        }
    }
    // A chord as long as the path it spans leaves the diameter alone.
    let path = load_graph("node p\nnode q\nnode r\nedge p q 1 1\nedge q r 1 1\n").unwrap();
    let mut chorded = path.clone();
    let (p, r) = (path.id_of("p").unwrap(), path.id_of("r").unwrap());
    chorded.add_edge(p, r, integer(3), integer(2)).unwrap();
    let unchanged = path.diameter().unwrap() == chorded.diameter().unwrap();
    let density_up = chorded.density().unwrap() > path.density().unwrap();
    outcome(
        bad.is_empty() && unchanged && density_up,
        format!("1000 perturbations, failing seeds {bad:?}, witness diameter unchanged {unchanged}"),
    )
}

fn metrics() -> Outcome {
    let corpus = parse_corpus("pub P1 AI 1 2\npub P2 DB 1 3 4\n").unwrap();
    let team: TeamLabels = ["1", "2", "3"].map(String::from).into();
    let pubs = team_pubs(&team, &corpus);
    let partial = partial_team_pubs(&team, &corpus);
    let ratio = team_pub_ratio(&team, &corpus, RatioScope::AllPublications).unwrap();
    let ranks = parse_ranks("rank A 2\nrank B 4\n").unwrap();
    let ab: TeamLabels = ["A", "B"].map(String::from).into();
    let rank = team_rank(&ab, &ranks, &ab).unwrap();
    let expected_ratio = Rational::new(7.into(), 12.into());
    outcome(
        pubs == 1 && partial == 2 && ratio == expected_ratio && rank == integer(375),
        format!("teamPubs {pubs}, partialTeamPubs {partial}, ratio {ratio}, rank {rank}"),
    )
}

#[derive(Debug)]
struct Cell {
    status: String,
    density: f64,
    size: f64,
    per_node: f64,
}

fn desk_scale() -> Outcome {
    let corpus = synthetic_corpus(7, &CorpusConfig::default());
    let g = build_coauthor_graph(&corpus, 3, 2).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let graph_path = dir.path().join("corpus.graph");
    std::fs::write(&graph_path, serialize_graph(&g)).unwrap();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = teamform_cli::run(
        [
            "teamform",
            "bench",
            "--graph",
            graph_path.to_str().unwrap(),
            "--skills",
            "T,AI,DB,DM",
            "--k-range",
            "3,5,7",
            "--algos",
            "sdensest,mdensest,mindiameter,enhanced,partialtrim,completetrim",
        ],
        &mut out,
        &mut err,
    );
    if code != 0 {
        return outcome(false, format!("bench exited {code}: {}", String::from_utf8_lossy(&err)));
    }
    let text = String::from_utf8(out).unwrap();
    let mut cells: BTreeMap<(usize, String, String), Cell> = BTreeMap::new();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let num = |s: &str| s.parse::<f64>().unwrap_or(f64::NAN);
        let density = f[4].split_once('/').map_or_else(
            || num(f[4]),
            |(p, q)| num(p) / num(q),
        );
        cells.insert(
            (f[0].parse().unwrap(), f[1].to_string(), f[2].to_string()),
            Cell {
                status: f[3].to_string(),
                density,
                size: num(f[5]),
                per_node: num(f[7]),
            },
        );
    }
    let mut orderings_hold = true;
    let mut notes = Vec::new();
    let (mut wins, mut total) = (0, 0);
    for k in [3, 5, 7] {
        let (mut dens_s, mut dens_c, mut size_s, mut size_c, mut n) = (0.0, 0.0, 0.0, 0.0, 0);
        for skill in ["T", "AI", "DB", "DM"] {
            let get = |algo: &str| &cells[&(k, skill.to_string(), algo.to_string())];
            let (s, c) = (get("sdensest"), get("completetrim"));
            if s.status == "ok" && c.status == "ok" {
                dens_s += s.density;
                dens_c += c.density;
                size_s += s.size;
                size_c += c.size;
                n += 1;
            }
            if c.status == "ok" {
                total += 1;
                let best = ["sdensest", "mdensest", "mindiameter", "enhanced", "partialtrim", "completetrim"]
                    .iter()
                    .map(|a| get(a))
                    .filter(|cell| cell.status == "ok")
                    .map(|cell| cell.per_node)
                    .fold(f64::NEG_INFINITY, f64::max);
                if c.per_node >= best - 1e-9 {
                    wins += 1;
                }
            }
        }
        let n = n.max(1) as f64;
        let holds = dens_s / n >= dens_c / n - 1e-9 && size_c / n <= size_s / n + 1e-9;
        orderings_hold &= holds;
        notes.push(format!(
            "k={k}: density {:.3} vs {:.3}, size {:.1} vs {:.1}",
            dens_s / n,
            dens_c / n,
            size_s / n,
            size_c / n
        ));
    }
    let share = if total == 0 { 0.0 } else { wins as f64 / total as f64 };
    outcome(
        orderings_hold && total > 0 && share >= 0.8,
        format!(
            "{} authors, {} edges; {}; completetrim best per-node in {wins}/{total}",
            g.len(),
            g.edge_count(),
            notes.join("; ")
        ),
    )
}

fn main() {
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    results.push(("exactness", exactness()));
    let certs = certificates();
    results.extend(certs.outcomes);
    results.push(("reduction-equivalence", reduction()));
    results.push((
        "union-invariant",
        outcome(
            certs.union_violations == 0 && certs.union_rounds > 0,
            format!(
                "{} peeling runs checked, {} violations",
                certs.union_rounds, certs.union_violations
            ),
        ),
    ));
    results.push(("heuristic-guarantees", heuristics()));
    results.push(("monotonicity", monotonicity()));
    results.push(("metrics-fixture", metrics()));
    results.push(("desk-scale-protocol", desk_scale()));

    let mut stderr = std::io::stderr();
    let mut failed = 0;
    for (name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        writeln!(stderr, "{tag} {name}: {}", o.detail).unwrap();
        failed += usize::from(!o.pass);
    }
    writeln!(stderr, "acceptance: {} passed, {failed} failed", results.len() - failed).unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
