use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use grpi::campaign::{report_json, run_claim, Claim, DEFAULT_MAX_ORDER};
use grpi::corpus::{build_corpus, load_corpus};
use grpi::groupfile::{parse_generator_list, parse_group_file};
use grpi::record::{count_failures, VerificationRecord};
use grpi_core::{
    chief_factors, generator_rank, is_p_nilpotent, is_p_soluble, is_p_supersoluble, is_prime,
    normalizer, o_p, o_p_prime, o_upper_p, PermGroup, PiChecker, PiReport, Subgroup, SylowFamilies,
};
use serde_json::{json, Value};

/// Π-property analysis and verification campaigns for small permutation groups.
#[derive(Parser)]
#[command(name = "grpi", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Corpus management.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Structure of a group at one prime: chief factors, Sylow data and M_d families.
    Analyze {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Π-property report for the subgroup generated by `;`-separated cycle strings.
    CheckPi {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a verification campaign over a corpus directory.
    Verify {
        #[arg(long, value_parser = parse_claim)]
        claim: Claim,
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER as u64)]
        max_order: u64,
        /// Report path; the report goes to stdout when omitted.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Write group files and manifest.json for every bundled group up to an order.
    Build {
        #[arg(long)]
        max_order: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_claim(s: &str) -> std::result::Result<Claim, String> {
    s.parse()
}

fn read_group(path: &Path) -> Result<PermGroup> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_group_file(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_json(path: &Path, value: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn key(s: &Subgroup) -> Result<String> {
    Ok(s.key()?.to_string())
}

fn analyze(g: &PermGroup, p: u64) -> Result<Value> {
    anyhow::ensure!(is_prime(p), "{p} is not prime");
    let factors = chief_factors(g)?
        .iter()
        .map(|f| {
            Ok(json!({
                "lower": key(&f.lower)?,
                "upper": key(&f.upper)?,
                "order": f.factor_order as u64,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = json!({
        "name": g.label().unwrap_or("G"),
        "degree": g.degree(),
        "order": g.order() as u64,
        "prime": p,
        "p_soluble": is_p_soluble(g, p)?,
        "p_supersoluble": is_p_supersoluble(g, p)?,
        "p_nilpotent": is_p_nilpotent(g, p)?,
        "chief_factors": factors,
        "o_p_order": o_p(g, p)?.order() as u64,
        "o_p_prime_order": o_p_prime(g, p)?.order() as u64,
        "o_upper_p_order": o_upper_p(g, p)?.order() as u64,
    });
    if let Some(families) = SylowFamilies::new(g, p)? {
        let checker = PiChecker::new(g)?;
        let maximal = families
            .maximal
            .iter()
            .map(|m| Ok(json!({ "subgroup": key(m)?, "pi_property": checker.holds(m)? })))
            .collect::<Result<Vec<_>>>()?;
        let family_count = families.families().count();
        out["sylow"] = json!({
            "subgroup": key(&families.sylow)?,
            "order": families.sylow.order() as u64,
            "generator_rank": generator_rank(families.sylow.group(), p)?,
            "normalizer_p_nilpotent": is_p_nilpotent(normalizer(g, &families.sylow)?.group(), p)?,
            "maximal_subgroups": maximal,
            "family_count": family_count,
        });
    }
    Ok(out)
}

fn report_value(report: &PiReport) -> Result<Value> {
    let trail = report
        .trail
        .iter()
        .map(|r| {
            Ok(json!({
                "lower": key(&r.chief_factor.lower)?,
                "upper": key(&r.chief_factor.upper)?,
                "factor_order": r.chief_factor.factor_order as u64,
                "intersection_order": r.intersection_order as u64,
                "normalizer_index": r.normalizer_index as u64,
                "pi_set": r.pi_set.primes().collect::<Vec<_>>(),
                "pass": r.factor_pass,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({
        "subgroup": key(&report.subject)?,
        "order": report.subject.order() as u64,
        "verdict": report.verdict,
        "trail": trail,
    }))
}

fn summarize(records: &[VerificationRecord]) {
    let mut counts: BTreeMap<(&str, String), usize> = BTreeMap::new();
    for r in records {
        *counts
            .entry((&r.claim_id, r.status.to_string()))
            .or_default() += 1;
    }
    for ((claim, status), n) in counts {
        eprintln!("{claim:<40} {status:<28} {n}");
    }
    eprintln!(
        "{} records, {} failures",
        records.len(),
        count_failures(records)
    );
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Corpus {
            action: CorpusAction::Build { max_order, out },
        } => {
            anyhow::ensure!(max_order >= 1, "--max-order must be at least 1");
            let manifest = build_corpus(max_order as u128, &out)?;
            println!("wrote {} groups to {}", manifest.len(), out.display());
        }
        Command::Analyze { group, prime, json } => {
            let g = read_group(&group)?;
            let value = analyze(&g, prime)?;
            println!("{}", serde_json::to_string_pretty(&value)?);
            if let Some(path) = json {
                write_json(&path, &value)?;
            }
        }
        Command::CheckPi {
            group,
            subgroup,
            json,
        } => {
            let g = read_group(&group)?;
            let gens = parse_generator_list(g.degree(), &subgroup)?;
            let h = Subgroup::generated(&g, gens).context("generators must lie in the group")?;
            let report = grpi_core::satisfies_pi_property(&g, &h)?;
            let value = report_value(&report)?;
            println!("verdict: {}", report.verdict);
            for r in &report.trail {
                println!(
                    "  {} / {}: |X| = {}, index = {}, pi = {} -> {}",
                    key(&r.chief_factor.upper)?,
                    key(&r.chief_factor.lower)?,
                    r.intersection_order,
                    r.normalizer_index,
                    r.pi_set,
                    if r.factor_pass { "pass" } else { "fail" }
                );
            }
            if let Some(path) = json {
                write_json(&path, &value)?;
            }
        }
        Command::Verify {
            claim,
            corpus,
            max_order,
            json,
        } => {
            let entries = load_corpus(&corpus)?;
            let records = run_claim(claim, &entries, max_order as u128)?;
            let text = report_json(&records);
            match json {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => print!("{text}"),
            }
            summarize(&records);
            if count_failures(&records) > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
