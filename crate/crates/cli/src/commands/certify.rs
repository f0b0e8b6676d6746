use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use teamform_core::oracle::brute::MAX_BRUTE_NODES;
use teamform_core::oracle::sat::{fixture_suite, gadget_violations};
use teamform_core::{
    certify_ratios, parse_sat, verify_reduction, CertifyConfig, CertifyReport, Family,
    ReductionParams, SatInstance,
};

use crate::{read_file, CliError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Ratio,
    Reduction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    All,
    Density,
    MultiDensity,
    Diameter,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instances per family.
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long = "max-nodes", default_value_t = 10)]
    pub max_nodes: usize,
    #[arg(long, value_enum, default_value_t = FamilyArg::All)]
    pub family: FamilyArg,
    /// SAT files for reduction mode; the bundled suite when omitted.
    #[arg(long)]
    pub sat: Vec<PathBuf>,
}

pub fn run(args: &CertifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<()> {
    match args.mode {
        Mode::Ratio => run_ratio(args, out, err),
        Mode::Reduction => run_reduction(args, out, err),
    }
}

fn families(arg: FamilyArg) -> Vec<Family> {
    match arg {
        FamilyArg::All => vec![Family::Density, Family::MultiDensity, Family::Diameter],
        FamilyArg::Density => vec![Family::Density],
        FamilyArg::MultiDensity => vec![Family::MultiDensity],
        FamilyArg::Diameter => vec![Family::Diameter],
    }
}

/// Certifies `count` instances of `family`, one instance per task so the
/// work spreads over threads; the result equals a sequential run.
pub fn certify_parallel(
    family: Family,
    count: usize,
    seed: u64,
    max_nodes: usize,
) -> teamform_core::Result<CertifyReport> {
    let parts = (0..count as u64)
        .into_par_iter()
        .map(|i| certify_ratios(&CertifyConfig::new(family, 1, seed.wrapping_add(i), max_nodes)))
        .collect::<teamform_core::Result<Vec<_>>>()?;
    let mut report = CertifyReport::default();
    for part in parts {
        report.records.extend(part.records);
        report.union_violations.extend(part.union_violations);
    }
    Ok(report)
}

fn run_ratio(args: &CertifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<()> {
    if args.max_nodes > MAX_BRUTE_NODES {
        return Err(teamform_core::Error::Refused(format!(
            "--max-nodes {} exceeds the exhaustive search limit of {MAX_BRUTE_NODES}",
            args.max_nodes
        ))
        .into());
    }
    let mut failed = 0;
    writeln!(out, "seed,family,n,ratio,pass")?;
    for family in families(args.family) {
        let report = certify_parallel(family, args.count, args.seed, args.max_nodes)?;
        let csv = report.to_csv();
        out.write_all(csv.split_once('\n').map_or("", |(_, rows)| rows).as_bytes())?;
        writeln!(err, "{family}: {}", report.summary())?;
        for v in &report.union_violations {
            writeln!(err, "{family}: {v}")?;
        }
        failed += report.failures().count() + report.union_violations.len();
    }
    if failed > 0 {
        return Err(CliError::CertificateFailed(failed).into());
    }
    Ok(())
}

fn run_reduction(args: &CertifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<()> {
    let suite: Vec<(String, SatInstance)> = if args.sat.is_empty() {
        fixture_suite()
    } else {
        args.sat
            .iter()
            .map(|p| Ok((p.display().to_string(), parse_sat(&read_file(p)?)?)))
            .collect::<anyhow::Result<_>>()?
    };
    let params = ReductionParams::default();
    writeln!(out, "name,vars,clauses,sat,team_exists,gadget_ok,pass")?;
    let mut failed = 0;
    for (name, inst) in &suite {
        let (sat, exists) = verify_reduction(inst, &params)?;
        let gadget = gadget_violations(inst, &params)?;
        let pass = sat == exists && gadget.is_empty();
        for v in &gadget {
            writeln!(err, "{name}: {v}")?;
        }
        failed += usize::from(!pass);
        writeln!(
            out,
            "{name},{},{},{sat},{exists},{},{pass}",
            inst.num_vars(),
            inst.clauses().len(),
            gadget.is_empty()
        )?;
    }
    if failed > 0 {
        return Err(CliError::CertificateFailed(failed).into());
    }
    Ok(())
}
