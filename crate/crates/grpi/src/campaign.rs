//! Runs a claim over a loaded corpus in parallel and returns the sorted report.

use std::fmt;
use std::str::FromStr;

use grpi_core::pi_of;
use rayon::prelude::*;

use crate::corpus::CorpusEntry;
use crate::error::Result;
use crate::example::reproduce_example_1_2;
use crate::lemmas::verify_lemmas_for_group;
use crate::propositions::verify_propositions_for_group;
use crate::record::{sort_records, VerificationRecord};
use crate::theorems::{verify_theorem, Theorem};

pub const DEFAULT_MAX_ORDER: u128 = 200;
/// Order bound for the lemma and proposition suites, which walk subgroup lattices.
pub const SUITE_MAX_ORDER: u128 = 96;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    Theorem(Theorem),
    Lemmas,
    Propositions,
    Example,
    All,
}

impl Claim {
    pub const NAMES: [&'static str; 7] = [
        "theorem-a",
        "theorem-b",
        "theorem-c",
        "lemmas",
        "propositions",
        "example-1.2",
        "all",
    ];
}

impl FromStr for Claim {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "theorem-a" => Claim::Theorem(Theorem::A),
            "theorem-b" => Claim::Theorem(Theorem::B),
            "theorem-c" => Claim::Theorem(Theorem::C),
            "lemmas" => Claim::Lemmas,
            "propositions" => Claim::Propositions,
            "example-1.2" => Claim::Example,
            "all" => Claim::All,
            other => {
                return Err(format!(
                    "unknown claim {other:?}; expected one of {:?}",
                    Self::NAMES
                ))
            }
        })
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Theorem(t) => f.write_str(t.claim_id()),
            Claim::Lemmas => f.write_str("lemmas"),
            Claim::Propositions => f.write_str("propositions"),
            Claim::Example => f.write_str("example-1.2"),
            Claim::All => f.write_str("all"),
        }
    }
}

fn theorem_records(
    t: Theorem,
    corpus: &[CorpusEntry],
    max_order: u128,
) -> Result<Vec<VerificationRecord>> {
    let jobs: Vec<(&CorpusEntry, u64)> = corpus
        .iter()
        .filter(|e| e.group.order() <= max_order)
        .flat_map(|e| {
            pi_of(e.group.order())
                .primes()
                .map(move |p| (e, p))
                .collect::<Vec<_>>()
        })
        .collect();
    let chunks = jobs
        .par_iter()
        .map(|(e, p)| verify_theorem(t, &e.group, &e.name, *p))
        .collect::<grpi_core::Result<Vec<_>>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

fn suite_records(
    corpus: &[CorpusEntry],
    max_order: u128,
    suite: fn(&grpi_core::PermGroup, &str) -> grpi_core::Result<Vec<VerificationRecord>>,
) -> Result<Vec<VerificationRecord>> {
    let bound = max_order.min(SUITE_MAX_ORDER);
    let chunks = corpus
        .par_iter()
        .filter(|e| e.group.order() <= bound)
        .map(|e| suite(&e.group, &e.name))
        .collect::<grpi_core::Result<Vec<_>>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Records for `claim`, sorted by claim, group, prime and fingerprint.
pub fn run_claim(
    claim: Claim,
    corpus: &[CorpusEntry],
    max_order: u128,
) -> Result<Vec<VerificationRecord>> {
    let mut records = match claim {
        Claim::Theorem(t) => theorem_records(t, corpus, max_order)?,
        Claim::Lemmas => suite_records(corpus, max_order, verify_lemmas_for_group)?,
        Claim::Propositions => suite_records(corpus, max_order, verify_propositions_for_group)?,
        Claim::Example => vec![reproduce_example_1_2()?],
        Claim::All => {
            let mut all = Vec::new();
            for t in Theorem::ALL {
                all.extend(theorem_records(t, corpus, max_order)?);
            }
            all.extend(suite_records(corpus, max_order, verify_lemmas_for_group)?);
            all.extend(suite_records(
                corpus,
                max_order,
                verify_propositions_for_group,
            )?);
            all.push(reproduce_example_1_2()?);
            all
        }
    };
    sort_records(&mut records);
    Ok(records)
}

/// Pretty JSON array with a trailing newline.
pub fn report_json(records: &[VerificationRecord]) -> String {
    serde_json::to_string_pretty(records).expect("records serialize") + "\n"
}
