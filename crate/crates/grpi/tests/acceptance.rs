//! Acceptance criteria 1–9. Each prints one `pass`/`fail` line; the test fails if any
//! criterion does. Run with `--nocapture` to see the lines.

mod support;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use grpi::corpus::{load_corpus, CorpusEntry};
use grpi_core::families::{cyclic, symmetric};
use grpi_core::{
    center, centralizer, chief_factors, core, enumerate_subgroups, normalizer,
    satisfies_pi_property, Permutation, PiChecker, PrimeSet, Subgroup,
};
use serde_json::Value;
use support::{Oracle, Set};

const BIN: &str = env!("CARGO_BIN_EXE_grpi");

fn grpi(args: &[&str]) -> (bool, Duration) {
    let start = Instant::now();
    let status = Command::new(BIN).args(args).status().expect("grpi runs");
    (status.success(), start.elapsed())
}

fn verify(corpus: &Path, claim: &str, out: &Path) -> (bool, Duration, Vec<Value>) {
    let (ok, elapsed) = grpi(&[
        "verify",
        "--claim",
        claim,
        "--corpus",
        corpus.to_str().unwrap(),
        "--json",
        out.to_str().unwrap(),
    ]);
    let records: Vec<Value> =
        serde_json::from_str(&std::fs::read_to_string(out).expect("report written")).unwrap();
    (ok, elapsed, records)
}

fn failures(records: &[Value]) -> usize {
    records.iter().filter(|r| r["status"] == "fail").count()
}

fn find<'a>(records: &'a [Value], claim: &str, group: &str, prime: u64) -> Vec<&'a Value> {
    records
        .iter()
        .filter(|r| r["claim_id"] == claim && r["group_name"] == group && r["prime"] == prime)
        .collect()
}

/// Summed witness counter over the records of one claim.
fn total(records: &[Value], claim: &str, field: &str) -> u64 {
    records
        .iter()
        .filter(|r| r["claim_id"] == claim)
        .filter_map(|r| r["witness"][field].as_u64())
        .sum()
}

struct Workspace {
    _dir: tempfile::TempDir,
    root: PathBuf,
    corpus: PathBuf,
}

impl Workspace {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().to_path_buf();
        let corpus = root.join("corpus");
        let (ok, _) = grpi(&[
            "corpus",
            "build",
            "--max-order",
            "200",
            "--out",
            corpus.to_str().unwrap(),
        ]);
        assert!(ok, "corpus build failed");
        Workspace {
            _dir: dir,
            root,
            corpus,
        }
    }

    fn report(&self, name: &str) -> PathBuf {
        self.root.join(format!("{name}.json"))
    }
}

fn criterion_1(ws: &Workspace) {
    let (ok, elapsed, records) = verify(&ws.corpus, "example-1.2", &ws.report("example"));
    assert!(ok);
    assert!(elapsed < Duration::from_secs(10), "{elapsed:?}");
    assert_eq!(records.len(), 1);
    let r = &records[0];
    assert_eq!(r["status"], "pass");
    let w = &r["witness"];
    assert_eq!(w["p1_meet_b_pi"], true);
    assert_eq!(w["p2_meet_b_pi"], true);
    assert_eq!(w["p_supersoluble"], false);
    assert_eq!(w["p_nilpotent"], false);
    assert_eq!(w["valid_family"], true);
}

fn theorem_campaign(ws: &Workspace, claim: &str, limit: Duration) -> Vec<Value> {
    let (ok, elapsed, records) = verify(&ws.corpus, claim, &ws.report(claim));
    assert!(ok, "{claim} exited with failure");
    assert!(elapsed < limit, "{claim} took {elapsed:?}");
    assert_eq!(failures(&records), 0);
    let necessity = format!("{claim}-necessity");
    for id in [claim, necessity.as_str()] {
        let exercised = records
            .iter()
            .filter(|r| r["claim_id"] == id && r["hypothesis_held"] == true)
            .count();
        assert!(exercised > 0, "{id} never exercised");
    }
    records
}

fn criterion_2(ws: &Workspace) {
    let records = theorem_campaign(ws, "theorem-a", Duration::from_secs(600));
    // Only p-soluble pairs are checked; the others carry a reason.
    for r in &records {
        let status = r["status"].as_str().unwrap();
        assert!(status == "pass" || status == "skipped(not-p-soluble)" || status == "skipped(cap)");
    }
    let s4 = find(&records, "theorem-a", "S4", 2);
    let whole = s4
        .iter()
        .find(|r| {
            r["normal_subgroup_fingerprint"]
                .as_str()
                .unwrap()
                .starts_with("order=24;")
        })
        .unwrap();
    assert_eq!(
        (
            whole["hypothesis_held"].as_bool(),
            whole["conclusion_held"].as_bool()
        ),
        (Some(false), Some(false))
    );
}

fn criterion_3(ws: &Workspace) {
    let records = theorem_campaign(ws, "theorem-b", Duration::from_secs(600));
    let a4 = find(&records, "theorem-b", "A4", 2);
    assert!(!a4.is_empty());
    assert!(a4.iter().any(|r| r["hypothesis_held"] == false
        && r["conclusion_held"] == false
        && r["status"] == "pass"));
}

fn criterion_4(ws: &Workspace) {
    let records = theorem_campaign(ws, "theorem-c", Duration::from_secs(300));
    let s3 = find(&records, "theorem-c", "S3", 3);
    assert_eq!(s3.len(), 1);
    assert_eq!(s3[0]["status"], "skipped(gcd)");
}

/// Σ_p (#p-subgroups)·(#normal L)·(#normal p′-subgroups N), counted by brute force.
fn exhaustive_triples(entry: &CorpusEntry) -> u64 {
    let oracle = Oracle::new(&entry.group);
    let normals = oracle.normal_subgroups();
    let subgroups: Vec<Set> = enumerate_subgroups(&entry.group, false)
        .unwrap()
        .iter()
        .map(|h| oracle.subgroup(h))
        .collect();
    let mut count = 0;
    for p in grpi_core::pi_of(oracle.order() as u128).primes() {
        let p = p as usize;
        let is_p_power = |mut n: usize| {
            while n.is_multiple_of(p) {
                n /= p;
            }
            n == 1
        };
        let p_subgroups = subgroups.iter().filter(|h| is_p_power(h.len())).count();
        let p_prime = normals.iter().filter(|n| n.len() % p != 0).count();
        count += (p_subgroups * normals.len() * p_prime) as u64;
    }
    count
}

fn criterion_5(ws: &Workspace) {
    let (ok, _, records) = verify(&ws.corpus, "lemmas", &ws.report("lemmas"));
    assert!(ok);
    assert_eq!(failures(&records), 0);
    for id in [
        "lemma-2.1",
        "lemma-2.2",
        "lemma-2.3",
        "lemma-2.4",
        "lemma-2.5",
    ] {
        assert!(total(&records, id, "admissible") >= 200, "{id}");
        assert_eq!(total(&records, id, "violations"), 0, "{id}");
    }
    for r in &records {
        let name = r["group_name"].as_str().unwrap();
        assert!(ws_order(ws, name) <= 96, "{name} exceeds the suite bound");
    }
    let corpus = load_corpus(&ws.corpus).unwrap();
    for name in ["S4", "A4", "D8", "C6xS3"] {
        let entry = corpus.iter().find(|e| e.name == name).unwrap();
        let tuples: u64 = records
            .iter()
            .filter(|r| r["claim_id"] == "lemma-2.2" && r["group_name"] == name)
            .map(|r| r["witness"]["tuples"].as_u64().unwrap())
            .sum();
        assert_eq!(tuples, exhaustive_triples(entry), "{name}");
    }
}

fn ws_order(ws: &Workspace, name: &str) -> u64 {
    let manifest: BTreeMap<String, Value> =
        serde_json::from_str(&std::fs::read_to_string(ws.corpus.join("manifest.json")).unwrap())
            .unwrap();
    manifest
        .values()
        .find(|e| e["name"] == name)
        .and_then(|e| e["order"].as_u64())
        .unwrap()
}

fn criterion_6(ws: &Workspace) {
    let (ok, _, records) = verify(&ws.corpus, "propositions", &ws.report("propositions"));
    assert!(ok);
    assert_eq!(failures(&records), 0);
    let ids: BTreeSet<&str> = records
        .iter()
        .map(|r| r["claim_id"].as_str().unwrap())
        .collect();
    assert_eq!(ids.len(), 12, "{ids:?}");
    for id in ids {
        assert!(
            total(&records, id, "admissible") >= 5,
            "{id} fired too rarely"
        );
        assert_eq!(total(&records, id, "violations"), 0, "{id}");
    }
}

fn check_against_oracle(entry: &CorpusEntry) {
    let g = &entry.group;
    let oracle = Oracle::new(g);
    assert_eq!(g.order(), oracle.order() as u128, "{}", entry.name);

    let factors = oracle.chief_factors();
    let mine: BTreeSet<(Set, Set)> = chief_factors(g)
        .unwrap()
        .iter()
        .map(|f| (oracle.subgroup(&f.lower), oracle.subgroup(&f.upper)))
        .collect();
    assert_eq!(
        mine,
        factors.iter().cloned().collect(),
        "{} chief factors",
        entry.name
    );

    assert_eq!(
        oracle.subgroup(&center(g).unwrap()),
        oracle.centralizer(&oracle.all())
    );

    let checker = PiChecker::new(g).unwrap();
    for h in enumerate_subgroups(g, true).unwrap() {
        let hs = oracle.subgroup(&h);
        assert_eq!(h.order(), hs.len() as u128);
        assert_eq!(
            oracle.subgroup(&normalizer(g, &h).unwrap()),
            oracle.normalizer(&hs)
        );
        assert_eq!(
            oracle.subgroup(&centralizer(g, &h).unwrap()),
            oracle.centralizer(&hs)
        );
        assert_eq!(oracle.subgroup(&core(g, &h).unwrap()), oracle.core(&hs));

        let expected = oracle.pi_verdict(&hs, &factors);
        let report = checker.report(&h).unwrap();
        assert_eq!(report.verdict, expected, "{} {h:?}", entry.name);
        assert_eq!(checker.holds(&h).unwrap(), expected, "{} {h:?}", entry.name);
        for r in &report.trail {
            let k = oracle.subgroup(&r.chief_factor.lower);
            let l = oracle.subgroup(&r.chief_factor.upper);
            let (size, index) = oracle.pi_factor(&hs, &k, &l);
            assert_eq!(
                (r.intersection_order, r.normalizer_index),
                (size as u128, index as u128)
            );
        }
    }
}

fn criterion_7(ws: &Workspace) {
    let corpus = load_corpus(&ws.corpus).unwrap();
    let small: Vec<&CorpusEntry> = corpus.iter().filter(|e| e.group.order() <= 48).collect();
    assert!(small.len() >= 50, "only {} groups", small.len());
    for entry in small {
        check_against_oracle(entry);
    }
}

fn criterion_8(ws: &Workspace) {
    let first = ws.report("all-1");
    let second = ws.report("all-2");
    let (ok1, _, records) = verify(&ws.corpus, "all", &first);
    let (ok2, _, _) = verify(&ws.corpus, "all", &second);
    assert!(ok1 && ok2);
    assert!(!records.is_empty());
    assert_eq!(
        std::fs::read(&first).unwrap(),
        std::fs::read(&second).unwrap()
    );
}

fn criterion_9(_: &Workspace) {
    let s4 = symmetric(4).unwrap();
    let c4 = Subgroup::generated(
        &s4,
        vec![Permutation::parse_cycles(4, "(0 1 2 3)").unwrap()],
    )
    .unwrap();
    let report = satisfies_pi_property(&s4, &c4).unwrap();
    assert!(!report.verdict);
    let failure = report.first_failure().unwrap();
    assert_eq!(failure.chief_factor.lower.order(), 1);
    assert_eq!(failure.chief_factor.upper.order(), 4);
    assert!(failure.chief_factor.upper.is_normal());
    assert_eq!(failure.normalizer_index, 3);
    assert_eq!(failure.pi_set, PrimeSet::from_primes([2]).unwrap());
    // The cyclic group of order 4 on its own is fine.
    let c4_alone = cyclic(4).unwrap();
    assert!(
        satisfies_pi_property(&c4_alone, &Subgroup::whole(&c4_alone))
            .unwrap()
            .verdict
    );
}

type Criterion = (&'static str, fn(&Workspace));

#[test]
fn acceptance() {
    let ws = Workspace::new();
    let criteria: [Criterion; 9] = [
        ("example reproduction", criterion_1),
        ("theorem A campaign", criterion_2),
        ("theorem B campaign", criterion_3),
        ("theorem C campaign", criterion_4),
        ("lemma suites", criterion_5),
        ("proposition suites", criterion_6),
        ("oracle equivalence", criterion_7),
        ("determinism", criterion_8),
        ("negative control", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (label, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&ws)));
        let verdict = if outcome.is_ok() { "pass" } else { "fail" };
        println!(
            "criterion {}: {verdict} ({label}, {:.1}s)",
            i + 1,
            start.elapsed().as_secs_f64()
        );
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
