//! Publication corpora, coauthorship graphs and team quality metrics.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;

use num::Zero;

use crate::error::{Error, Result};
use crate::graph::SkillGraph;
use crate::weight::{integer, rational, Rational};

/// A team given by node labels (author ids).
pub type TeamLabels = BTreeSet<String>;

/// Domains recognised without a mapping file; each maps to itself.
pub const DEFAULT_DOMAINS: [&str; 4] = ["T", "AI", "DB", "DM"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Publication {
    pub id: String,
    pub domain: String,
    /// Distinct authors in order of listing.
    pub authors: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PublicationCorpus {
    pub publications: Vec<Publication>,
    /// Domain tag to skill name. Unmapped domains grant no skill.
    pub domain_map: BTreeMap<String, String>,
}

pub fn default_domain_map() -> BTreeMap<String, String> {
    DEFAULT_DOMAINS
        .iter()
        .map(|d| (d.to_string(), d.to_string()))
        .collect()
}

impl PublicationCorpus {
    pub fn new(publications: Vec<Publication>) -> Self {
        PublicationCorpus {
            publications,
            domain_map: default_domain_map(),
        }
    }

    pub fn with_domain_map(mut self, domain_map: BTreeMap<String, String>) -> Self {
        self.domain_map = domain_map;
        self
    }

    pub fn len(&self) -> usize {
        self.publications.len()
    }

    pub fn is_empty(&self) -> bool {
        self.publications.is_empty()
    }

    /// Authors in order of first appearance.
    pub fn authors(&self) -> Vec<&str> {
        let mut seen = BTreeSet::new();
        self.publications
            .iter()
            .flat_map(|p| p.authors.iter())
            .filter(|a| seen.insert(a.as_str()))
            .map(String::as_str)
            .collect()
    }
}

fn words(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then(|| (i + 1, line.split_whitespace().collect()))
    })
}

/// Reads `pub <id> <domain> <author> [<author> ...]` lines. Repeated
/// authors on one line are counted once.
pub fn parse_corpus(text: &str) -> Result<PublicationCorpus> {
    let mut publications = Vec::new();
    let mut ids = BTreeSet::new();
    for (line, fields) in words(text) {
        match fields[..] {
            ["pub", id, domain, ref authors @ ..] if !authors.is_empty() => {
                if !ids.insert(id.to_string()) {
                    return Err(Error::parse(line, format!("duplicate publication `{id}`")));
                }
                let mut seen = BTreeSet::new();
                publications.push(Publication {
                    id: id.to_string(),
                    domain: domain.to_string(),
                    authors: authors
                        .iter()
                        .filter(|a| seen.insert(**a))
                        .map(|a| a.to_string())
                        .collect(),
                });
            }
            ["pub", ..] => {
                return Err(Error::parse(line, "expected `pub <id> <domain> <author>...`"))
            }
            _ => return Err(Error::parse(line, format!("unknown directive `{}`", fields[0]))),
        }
    }
    Ok(PublicationCorpus::new(publications))
}

pub fn serialize_corpus(corpus: &PublicationCorpus) -> String {
    let mut out = String::new();
    for p in &corpus.publications {
        writeln!(out, "pub {} {} {}", p.id, p.domain, p.authors.join(" ")).unwrap();
    }
    out
}

/// Reads `domain <tag> <skill>` lines.
pub fn parse_domain_map(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (line, fields) in words(text) {
        let ["domain", tag, skill] = fields[..] else {
            return Err(Error::parse(line, "expected `domain <tag> <skill>`"));
        };
        if map.insert(tag.to_string(), skill.to_string()).is_some() {
            return Err(Error::parse(line, format!("domain `{tag}` mapped twice")));
        }
    }
    Ok(map)
}

/// Author ranks, 1 being best.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankTable {
    pub ranks: BTreeMap<String, u64>,
}

/// Reads `rank <author> <rank>` lines; ranks are positive integers.
pub fn parse_ranks(text: &str) -> Result<RankTable> {
    let mut ranks = BTreeMap::new();
    for (line, fields) in words(text) {
        let ["rank", author, value] = fields[..] else {
            return Err(Error::parse(line, "expected `rank <author> <rank>`"));
        };
        let value: u64 = value
            .parse()
            .ok()
            .filter(|r| *r >= 1)
            .ok_or_else(|| Error::parse(line, format!("rank must be a positive integer, got `{value}`")))?;
        if ranks.insert(author.to_string(), value).is_some() {
            return Err(Error::parse(line, format!("author `{author}` ranked twice")));
        }
    }
    Ok(RankTable { ranks })
}

/// Coauthorship graph. Authors with at least `min_papers` papers become
/// nodes, skilled in the mapped domains of their papers. Two kept authors
/// are joined when they share at least `min_copapers` papers; the affinity
/// is the shared count and the distance one minus the Jaccard similarity
/// of their paper sets.
pub fn build_coauthor_graph(
    corpus: &PublicationCorpus,
    min_papers: usize,
    min_copapers: usize,
) -> Result<SkillGraph> {
    if min_papers == 0 || min_copapers == 0 {
        return Err(Error::domain("ingestion thresholds must be at least 1"));
    }
    let authors = corpus.authors();
    let position: HashMap<&str, usize> = authors.iter().enumerate().map(|(i, a)| (*a, i)).collect();
    let mut papers = vec![0usize; authors.len()];
    let mut skills = vec![BTreeSet::new(); authors.len()];
    let mut shared: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for p in &corpus.publications {
        let mut members: Vec<usize> = p.authors.iter().map(|a| position[a.as_str()]).collect();
        members.sort_unstable();
        for (x, i) in members.iter().enumerate() {
            papers[*i] += 1;
            if let Some(skill) = corpus.domain_map.get(&p.domain) {
                skills[*i].insert(skill.clone());
            }
            for j in &members[x + 1..] {
                *shared.entry((*i, *j)).or_default() += 1;
            }
        }
    }
    let mut g = SkillGraph::new();
    let mut ids = vec![None; authors.len()];
    for (i, author) in authors.iter().enumerate() {
        if papers[i] >= min_papers {
            ids[i] = Some(g.add_node(*author, skills[i].iter().cloned())?);
        }
    }
    for ((i, j), common) in shared {
        let (Some(u), Some(v)) = (ids[i], ids[j]) else { continue };
        if common < min_copapers {
            continue;
        }
        let union = papers[i] + papers[j] - common;
        let distance = integer(1) - rational(common as i64, union as i64);
        g.add_edge(u, v, integer(common as i64), distance)?;
    }
    Ok(g)
}

/// Publications whose authors all belong to the team.
pub fn team_pubs(team: &TeamLabels, corpus: &PublicationCorpus) -> usize {
    corpus
        .publications
        .iter()
        .filter(|p| p.authors.iter().all(|a| team.contains(a)))
        .count()
}

/// Publications with at least half of their authors in the team.
pub fn partial_team_pubs(team: &TeamLabels, corpus: &PublicationCorpus) -> usize {
    corpus
        .publications
        .iter()
        .filter(|p| 2 * overlap(team, p) >= p.authors.len())
        .count()
}

fn overlap(team: &TeamLabels, p: &Publication) -> usize {
    p.authors.iter().filter(|a| team.contains(*a)).count()
}

/// Which publications `team_pub_ratio` averages over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RatioScope {
    #[default]
    AllPublications,
    /// Only publications with at least one team member as author.
    TouchingTeam,
}

/// Mean Jaccard similarity between the team and each publication's
/// author set.
pub fn team_pub_ratio(
    team: &TeamLabels,
    corpus: &PublicationCorpus,
    scope: RatioScope,
) -> Result<Rational> {
    if corpus.is_empty() {
        return Err(Error::domain("publication ratio of an empty corpus"));
    }
    let mut sum = Rational::zero();
    let mut count = 0i64;
    for p in &corpus.publications {
        let common = overlap(team, p);
        if scope == RatioScope::TouchingTeam && common == 0 {
            continue;
        }
        let union = team.len() + p.authors.len() - common;
        sum += rational(common as i64, union as i64);
        count += 1;
    }
    Ok(if count == 0 { sum } else { sum / integer(count) })
}

/// 1000 times the mean reciprocal rank of the skilled team members.
/// Members missing from the rank table contribute zero.
pub fn team_rank(team: &TeamLabels, ranks: &RankTable, skilled: &TeamLabels) -> Result<Rational> {
    let members: Vec<&String> = team.intersection(skilled).collect();
    if members.is_empty() {
        return Err(Error::domain("team rank needs at least one skilled member"));
    }
    let sum: Rational = members
        .iter()
        .filter_map(|a| ranks.ranks.get(*a))
        .map(|r| rational(1, *r as i64))
        .sum();
    Ok(sum * integer(1000) / integer(members.len() as i64))
}
