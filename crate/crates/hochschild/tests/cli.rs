use std::path::{Path, PathBuf};
use std::process::Command as Process;

use hochschild::cli::problem::{parse_coefficient, parse_combination};
use hochschild::cli::{execute, Command, Common, Instance, Model, ProblemFile};
use hochschild::exactla::{Field, Rationals};
use hochschild::Error;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn problems() -> Vec<(String, PathBuf)> {
    let mut out: Vec<(String, PathBuf)> = std::fs::read_dir(corpus())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), p))
        .collect();
    out.sort();
    out
}

fn opts(path: &Path) -> Common {
    Common {
        problem: path.to_path_buf(),
        max_degree: None,
        field: None,
        q: None,
        report: None,
        budget: None,
        paths: vec![],
        seed: 2024,
    }
}

fn default_command(p: &ProblemFile) -> Command {
    Command::from_name(p.run.as_ref().and_then(|r| r.command.as_deref()).unwrap()).unwrap()
}

fn bin() -> Process {
    Process::new(env!("CARGO_BIN_EXE_hochschild"))
}

#[test]
fn reports_match_golden_files() {
    let list = problems();
    assert!(list.len() >= 7);
    for (name, path) in list {
        let p = ProblemFile::read(&path).unwrap();
        let (report, outcome) = execute(default_command(&p), &p, &opts(&path)).unwrap();
        assert!(outcome.passed);
        let golden = std::fs::read_to_string(corpus().join("golden").join(format!("{}.json", name))).unwrap();
        assert_eq!(report.to_json(), golden, "{}", name);
    }
}

#[test]
fn reports_are_deterministic() {
    let path = corpus().join("composite.toml");
    let p = ProblemFile::read(&path).unwrap();
    let a = execute(Command::Les, &p, &opts(&path)).unwrap().0.to_json();
    let b = execute(Command::Les, &p, &opts(&path)).unwrap().0.to_json();
    assert_eq!(a, b);
}

#[test]
fn canonical_problem_files_round_trip() {
    for (name, path) in problems() {
        let p = ProblemFile::read(&path).unwrap();
        let text = p.emit();
        let again = ProblemFile::parse(&text).unwrap();
        assert_eq!(p, again, "{}", name);
        assert_eq!(text, again.emit());
        let (m1, m2) = (Model::build(&p, &Rationals, Some(Rationals.from_i64(2))).unwrap(), Model::build(&again, &Rationals, Some(Rationals.from_i64(2))).unwrap());
        assert_eq!(m1.algebras.len(), m2.algebras.len());
        for (k, a) in &m1.algebras {
            assert_eq!(**a, *m2.algebras[k], "{} {}", name, k);
        }
        for (k, b) in &m1.bimodules {
            assert_eq!(b.left_matrices(), m2.bimodules[k].left_matrices());
            assert_eq!(b.right_matrices(), m2.bimodules[k].right_matrices());
        }
    }
}

#[test]
fn coefficients_and_combinations() {
    let c = parse_coefficient("-1/2*q").unwrap();
    assert_eq!((c.value.to_string(), c.q_power), ("-1/2".to_string(), 1));
    let c = parse_coefficient("3").unwrap();
    assert_eq!((c.value.to_string(), c.q_power), ("3".to_string(), 0));
    assert!(parse_coefficient("x").is_err());
    let terms = parse_combination("2 x - 1/2*y + q z - w").unwrap();
    let shown: Vec<(String, u32, String)> = terms.into_iter().map(|(c, l)| (c.value.to_string(), c.q_power, l)).collect();
    assert_eq!(
        shown,
        [
            ("2".into(), 0, "x".into()),
            ("-1/2".into(), 0, "y".into()),
            ("1".into(), 1, "z".into()),
            ("-1".into(), 0, "w".into())
        ]
    );
    assert!(parse_combination("0").unwrap().is_empty());
}

#[test]
fn parse_errors_carry_positions() {
    let text = "format = \"hochschild-problem/1\"\nname = \"broken\"\n[qset\nvertices = []\n";
    match ProblemFile::parse(text) {
        Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 6)),
        other => panic!("{:?}", other),
    }
    let unknown = "format = \"hochschild-problem/1\"\nnmae = \"typo\"\n";
    assert!(matches!(ProblemFile::parse(unknown), Err(Error::Parse { line: 2, .. })));
    assert!(matches!(ProblemFile::parse("format = \"other/1\"\n"), Err(Error::Input(_))));
}

#[test]
fn broken_references_are_input_errors() {
    let text = r#"
format = "hochschild-problem/1"
[[algebra]]
name = "k"
kind = "field"
[qset]
vertices = ["x", "y"]
arrows = [["a", "x", "y"]]
algebras = { x = "k", y = "k" }
bimodules = { a = "missing" }
"#;
    let p = ProblemFile::parse(text).unwrap();
    match Model::build(&p, &Rationals, None) {
        Err(Error::Input(m)) => assert!(m.contains("missing")),
        other => panic!("{:?}", other.err()),
    }
    // q used but not given
    let path = corpus().join("quantum_exterior.toml");
    let mut p = ProblemFile::read(&path).unwrap();
    p.q = None;
    assert!(matches!(Model::build(&p, &Rationals, None), Err(Error::Input(_))));
}

#[test]
fn documented_examples() {
    let run = |file: &str, cmd: Command| {
        let path = corpus().join(file);
        let p = ProblemFile::read(&path).unwrap();
        execute(cmd, &p, &opts(&path)).unwrap()
    };
    let (r, _) = run("k.toml", Command::Hh);
    assert_eq!(r.result["hh"], serde_json::json!([1, 0, 0, 0, 0]));
    // the center of the free square is the scalars on the diagonal
    let (r, _) = run("free_square.toml", Command::Square);
    assert_eq!(r.result["hh"], serde_json::json!([1, 5, 0, 12, 0, 36]));
    let (_, out) = run("composite.toml", Command::Peirce);
    assert!(out.text.ends_with("no efficient cycles; h = 3"), "{}", out.text);
    let (r, _) = run("free_square.toml", Command::SolveAssoc);
    assert_eq!(r.result["dim"], 0);
    let (r, _) = run("one_point.toml", Command::AlongPath);
    assert_eq!(r.result["paths"][0]["dims"], serde_json::json!([0, 1, 0, 0, 0]));
}

#[test]
fn prime_field_and_parameter_overrides() {
    let path = corpus().join("quantum_exterior.toml");
    let p = ProblemFile::read(&path).unwrap();
    let mut o = opts(&path);
    o.field = Some("fp:1000003".into());
    let (r, _) = execute(Command::Hh, &p, &o).unwrap();
    assert_eq!(r.field, "fp:1000003");
    assert_eq!(r.result["hh"], serde_json::json!([2, 2, 1, 0, 0]));
    // q = 1 is the exterior algebra, whose cohomology does not vanish
    o.q = Some("1".into());
    o.max_degree = Some(3);
    let (r, _) = execute(Command::Hh, &p, &o).unwrap();
    assert_ne!(r.result["hh"][3], 0);
    let model = Model::build(&p, &Rationals, Some(Rationals.from_i64(2))).unwrap();
    assert!(matches!(model.instance, Instance::QSet(_)));
}

#[test]
fn binary_exit_codes_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let k = corpus().join("k.toml");
    let out = bin().args(["hh"]).arg(&k).arg("--report").arg(&report).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("degree"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["format"], "hochschild-report/1");

    let missing = bin().args(["hh", "/nonexistent/problem.toml"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
    let bad_field = bin().args(["hh"]).arg(&k).args(["--field", "fp:12"]).output().unwrap();
    assert_eq!(bad_field.status.code(), Some(1));
    let over = bin().args(["hh"]).arg(corpus().join("toupie.toml")).args(["--budget", "1e3"]).output().unwrap();
    assert_eq!(over.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&over.stderr).contains("budget"));
    let wrong = bin().args(["square"]).arg(&k).output().unwrap();
    assert_eq!(wrong.status.code(), Some(1));
    let verify = bin().args(["verify"]).arg(corpus().join("round_trip.toml")).output().unwrap();
    assert_eq!(verify.status.code(), Some(0));
    assert!(!String::from_utf8_lossy(&verify.stdout).contains("FAIL"));
}
