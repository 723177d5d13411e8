use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use tetrad::flats::labelled_catalog;
use tetrad::pg3::build_model;
use tetrad::report_io::serialize_model;
use tetrad::tetra::{classify_quadruple, for_each_quadruple, QuadClass};
use tetrad::{FlatKind, IncidenceStructure, PrimeField};

fn tetrad_cmd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tetrad"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen(dir: &TempDir, q: u32) -> PathBuf {
    let path = dir.path().join(format!("pg3{q}.txt"));
    let out = tetrad_cmd(&["gen", "--q", &q.to_string(), "--out", s(&path)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    path
}

/// The 13 lines of one plane of PG(3,3) with no generator line.
fn planar(dir: &TempDir) -> PathBuf {
    let model = build_model(PrimeField::new(3).unwrap());
    let ids = model.ground_truth.plane_sets[0].as_slice().to_vec();
    let m = &model.structure;
    let sub = IncidenceStructure::from_fn(ids.len(), |i, j| m.incident(ids[i], ids[j]));
    let path = dir.path().join("planar.txt");
    std::fs::write(&path, serialize_model(&sub, None).unwrap()).unwrap();
    path
}

fn first_tetrad(q: u32, kind: FlatKind) -> [usize; 4] {
    let model = build_model(PrimeField::new(q).unwrap());
    let catalog = labelled_catalog(&model.structure).unwrap();
    let flat = catalog.of_kind(kind).next().unwrap();
    let want = match kind {
        FlatKind::Plane => QuadClass::PlaneTetrad,
        FlatKind::Point => QuadClass::PointTetrad,
    };
    let mut found = None;
    for_each_quadruple(flat.lines.as_slice(), |t| {
        if found.is_none() && classify_quadruple(t, &model.structure, &catalog) == Ok(want) {
            found = Some(t);
        }
    });
    found.unwrap()
}

#[test]
fn gen_writes_the_canonical_file() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(gen(&dir, 2)).unwrap();
    assert!(text.starts_with("incidence-model v1\nlines 35\ngenerator pg3 q=2\n"));
    assert_eq!(text.lines().count(), 3 + 315);
    assert_eq!(
        tetrad::report_io::content_hash(&text),
        "de2b45678b930d949edae8e6ba822934cf65c6f583e105822c262f65ce03ec5a"
    );
    let piped = tetrad_cmd(&["gen", "--q", "2"]);
    assert_eq!(stdout(&piped), text);
}

#[test]
fn gen_rejects_unsupported_orders() {
    let out = tetrad_cmd(&["gen", "--q", "4"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("q must be prime"), "{}", stderr(&out));
    assert_eq!(code(&tetrad_cmd(&["gen", "--q", "11"])), 3);
}

#[test]
fn check_exit_codes_follow_the_outcome() {
    let dir = TempDir::new().unwrap();
    let pg2 = gen(&dir, 2);
    let pg3 = gen(&dir, 3);

    let out = tetrad_cmd(&["check", "--in", s(&pg2)]);
    assert_eq!(code(&out), 2, "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["axioms"]["all_passed"], true);
    assert_eq!(
        report["harmonicity"]["report"]["plane"]["verdict"],
        "NONE_HOLD"
    );

    let out = tetrad_cmd(&["check", "--in", s(&pg3)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));

    let out = tetrad_cmd(&["check", "--in", s(&planar(&dir))]);
    assert_eq!(code(&out), 1, "{}", stderr(&out));
}

#[test]
fn check_rejects_a_truncated_file() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(gen(&dir, 2)).unwrap();
    let cut = text[..100].trim_end_matches('\n');
    let cut = &cut[..cut.len() - 1];
    let path = dir.path().join("cut.txt");
    std::fs::write(&path, cut).unwrap();
    let out = tetrad_cmd(&["check", "--in", s(&path)]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).starts_with("error:"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
}

#[test]
fn check_is_deterministic_and_honours_the_seed() {
    let dir = TempDir::new().unwrap();
    let pg3 = gen(&dir, 3);
    let run = |seed: &str, name: &str| {
        let path = dir.path().join(name);
        let out = tetrad_cmd(&[
            "check",
            "--in",
            s(&pg3),
            "--mode",
            "sample",
            "--samples",
            "3000",
            "--seed",
            seed,
            "--out",
            s(&path),
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        std::fs::read(&path).unwrap()
    };
    let a = run("7", "a.json");
    assert_eq!(a, run("7", "b.json"));
    assert_ne!(a, run("8", "c.json"));
    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["seeds"]["seed"], 7);
    assert_eq!(report["seeds"]["mode"], "sample");
}

#[test]
fn samples_need_sample_mode() {
    let dir = TempDir::new().unwrap();
    let pg2 = gen(&dir, 2);
    let out = tetrad_cmd(&[
        "check",
        "--in",
        s(&pg2),
        "--mode",
        "exhaustive",
        "--samples",
        "10",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn text_report_and_rerender() {
    let dir = TempDir::new().unwrap();
    let pg2 = gen(&dir, 2);
    let json = dir.path().join("r.json");
    let out = tetrad_cmd(&["check", "--in", s(&pg2), "--out", s(&json)]);
    assert_eq!(code(&out), 2);
    let text = tetrad_cmd(&["check", "--in", s(&pg2), "--format", "text"]);
    let rendered = tetrad_cmd(&["report", "--in", s(&json)]);
    assert_eq!(code(&rendered), 0, "{}", stderr(&rendered));
    assert_eq!(stdout(&rendered), stdout(&text));
    assert!(stdout(&rendered).contains("NONE_HOLD"));
    let again = tetrad_cmd(&["report", "--in", s(&json), "--format", "json"]);
    assert_eq!(stdout(&again).as_bytes(), std::fs::read(&json).unwrap());
}

#[test]
fn classify_triples_and_tetrads() {
    let dir = TempDir::new().unwrap();
    for (q, harmonic) in [(2, false), (3, true)] {
        let path = gen(&dir, q);
        for (kind, name) in [
            (FlatKind::Plane, "PLANE_TETRAD"),
            (FlatKind::Point, "POINT_TETRAD"),
        ] {
            let t = first_tetrad(q, kind);
            let ids: Vec<String> = t.iter().map(|x| x.to_string()).collect();
            let mut args = vec!["classify", "--in", s(&path)];
            args.extend(ids.iter().map(String::as_str));
            let out = tetrad_cmd(&args);
            assert_eq!(code(&out), 0, "{}", stderr(&out));
            let line = stdout(&out);
            assert!(line.starts_with(&format!("{name} diagonals=[")), "{line}");
            assert!(
                line.trim_end().ends_with(&format!("harmonic={harmonic}")),
                "{line}"
            );
        }
        let [a, b, c, _] = first_tetrad(q, FlatKind::Plane);
        let out = tetrad_cmd(&[
            "classify",
            "--in",
            s(&path),
            &a.to_string(),
            &b.to_string(),
            &c.to_string(),
        ]);
        assert_eq!(stdout(&out).trim(), "PLANE_TRIAD");
    }
    let pg2 = gen(&dir, 2);
    let out = tetrad_cmd(&["classify", "--in", s(&pg2), "0", "1", "2"]);
    assert_eq!(stdout(&out).trim(), "FLAT_PENCIL");
    assert_eq!(
        code(&tetrad_cmd(&["classify", "--in", s(&pg2), "0", "1", "99"])),
        3
    );
    assert_eq!(
        code(&tetrad_cmd(&["classify", "--in", s(&pg2), "0", "0", "1"])),
        3
    );
}

#[test]
fn dual_passes_on_generated_models() {
    for q in ["2", "3"] {
        let out = tetrad_cmd(&["dual", "--q", q]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        let r: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(r["all_passed"], true);
    }
}

#[test]
fn dual_is_unsupported_without_coordinates() {
    let dir = TempDir::new().unwrap();
    let out = tetrad_cmd(&["dual", "--in", s(&planar(&dir))]);
    assert_eq!(code(&out), 3);
    assert!(
        stderr(&out).contains("unsupported operation"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(code(&tetrad_cmd(&["--help"])), 0);
    assert_eq!(code(&tetrad_cmd(&["--version"])), 0);
    assert_eq!(code(&tetrad_cmd(&["frobnicate"])), 3);
    assert_eq!(code(&tetrad_cmd(&[])), 3);
    assert_eq!(code(&tetrad_cmd(&["check"])), 3);
}
