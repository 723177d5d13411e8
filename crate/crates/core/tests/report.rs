mod common;

use std::path::PathBuf;

use tetrad::axioms::Status;
use tetrad::pg3::build_model;
use tetrad::report_io::{
    content_hash, emit_report, parse_model, parse_report, serialize_model, Generator, ModelFile,
};
use tetrad::tetra::HarmonicVerdict;
use tetrad::verify::{run_check, CheckMode, CheckOptions};
use tetrad::PrimeField;

use common::planar_pg23;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Compares against a checked-in file; `UPDATE_GOLDEN=1` rewrites it.
fn assert_golden(name: &str, actual: &str) {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(expected == actual, "{name} differs from the golden file");
}

fn pg_file(q: u32) -> ModelFile {
    let model = build_model(PrimeField::new(q).unwrap());
    ModelFile {
        generator: Some(Generator::Pg3 { q }),
        structure: model.structure,
    }
}

#[test]
fn model_files_have_stable_hashes() {
    for (q, lines, pairs, hash) in [
        (
            2,
            35,
            315,
            "de2b45678b930d949edae8e6ba822934cf65c6f583e105822c262f65ce03ec5a",
        ),
        (
            3,
            130,
            3120,
            "8cfcfa14ed02b46b29516333fbec56ccedb4eba0cc7a1ffe56b3801841861731",
        ),
    ] {
        let file = pg_file(q);
        let text = file.to_text().unwrap();
        assert_eq!(text.lines().count(), 3 + pairs);
        assert!(text.starts_with(&format!(
            "incidence-model v1\nlines {lines}\ngenerator pg3 q={q}\n"
        )));
        assert_eq!(content_hash(&text), hash);
        let parsed = parse_model(&text).unwrap();
        assert_eq!(parsed, file);
        assert_eq!(
            serialize_model(&parsed.structure, parsed.generator).unwrap(),
            text
        );
    }
}

#[test]
fn pg32_report_golden() {
    let file = pg_file(2);
    let report = run_check(&file, &CheckOptions::new(CheckMode::Exhaustive));
    assert!(report.axioms.all_passed);
    let h = report.harmonicity.report.as_ref().unwrap();
    assert_eq!(h.plane.verdict, HarmonicVerdict::NoneHold);
    assert_eq!(h.point.verdict, HarmonicVerdict::NoneHold);
    assert!(report.duality.report.as_ref().unwrap().all_passed);
    assert_eq!(report.outcome().exit_code(), 2);
    assert_golden("pg32_report.json", &emit_report(&report));
}

#[test]
fn pg33_report_golden() {
    let file = pg_file(3);
    let report = run_check(&file, &CheckOptions::new(CheckMode::Exhaustive));
    let h = report.harmonicity.report.as_ref().unwrap();
    assert_eq!(h.plane.verdict, HarmonicVerdict::AllHold);
    assert_eq!(h.point.verdict, HarmonicVerdict::AllHold);
    assert_eq!(report.outcome().exit_code(), 0);
    assert_golden("pg33_report.json", &emit_report(&report));
}

#[test]
fn planar_report_golden() {
    let file = ModelFile {
        generator: None,
        structure: planar_pg23(),
    };
    let report = run_check(&file, &CheckOptions::default_for(&file));
    assert_eq!(report.seeds.mode, "exhaustive");
    let statuses: Vec<Status> = report.axioms.verdicts.iter().map(|v| v.status).collect();
    assert_eq!(statuses[4], Status::NotApplicable);
    assert_eq!(report.outcome().exit_code(), 1);
    assert!(report.duality.unsupported.is_some());
    assert_golden("pg23_planar_report.json", &emit_report(&report));
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let file = pg_file(3);
    let opts = CheckOptions {
        survey_samples: 2000,
        axiom_pair_samples: 300,
        ..CheckOptions::new(CheckMode::Sample)
    };
    let a = emit_report(&run_check(&file, &opts));
    let b = emit_report(&run_check(&file, &opts));
    assert_eq!(a, b);
    let parsed = parse_report(&a).unwrap();
    assert_eq!(emit_report(&parsed), a);
    assert_eq!(parsed.seeds.seed, opts.seed);
    assert_eq!(parsed.seeds.survey_samples, Some(2000));
    assert_eq!(parsed.seeds.axiom_pair_samples, Some(300));

    let other = CheckOptions {
        seed: opts.seed + 1,
        ..opts
    };
    assert_ne!(emit_report(&run_check(&file, &other)), a);
}

#[test]
fn report_has_the_documented_top_level_keys() {
    let report = run_check(&pg_file(2), &CheckOptions::new(CheckMode::Exhaustive));
    let text = emit_report(&report);
    let keys: Vec<&str> = text
        .lines()
        .filter_map(|l| l.strip_prefix("  \"")?.split_once('"').map(|(k, _)| k))
        .collect();
    assert_eq!(
        keys,
        [
            "model",
            "axioms",
            "flats",
            "triples",
            "harmonicity",
            "duality",
            "runtime",
            "seeds"
        ]
    );
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["flats"]["catalog"].as_array().unwrap().len(), 30);
    assert_eq!(value["flats"]["catalog"][0]["kind"], "POINT");
}
