//! End-to-end tests of the binary: exit codes, report texture, JSON
//! shape, determinism, and the documented error paths.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use pwg_core::classical::{gset_coaction, FiniteGroup, GSet};
use pwg_core::galois::StrongConnection;
use pwg_core::linalg::LinMap;
use pwg_core::scalar::FieldSpec;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pwg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("terminated by exit")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("stderr is utf-8")
}

/// Materializes a registry example into `dir` and returns its path.
fn gen_to(dir: &Path, name: &str, field: Option<&str>) -> PathBuf {
    let mut args = vec!["gen", name];
    if let Some(f) = field {
        args.extend(["--field", f]);
    }
    let o = run(&args);
    assert_eq!(code(&o), 0, "gen {name}: {}", stderr(&o));
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, &o.stdout).unwrap();
    path
}

fn strip_duration(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.contains("duration_ms"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn can_free_action_passes_and_fixed_point_fails_with_rank() {
    let dir = tempfile::tempdir().unwrap();
    let free = gen_to(dir.path(), "z2-free-2", None);
    let o = run(&["can", free.to_str().unwrap(), "z2-free-2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: pass"));

    let fixed = gen_to(dir.path(), "z2-fixpoint-3", None);
    let o = run(&["can", fixed.to_str().unwrap(), "z2-fixpoint-3"]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("rank 5/6"), "rank must be printed: {text}");
    assert!(text.contains("verdict: fail"));
}

#[test]
fn can_reports_the_cubic_extension_rank_deficit() {
    let dir = tempfile::tempdir().unwrap();
    let doc = gen_to(dir.path(), "cbrt2", None);
    let o = run(&["can", doc.to_str().unwrap(), "cbrt2", "--base", "Q", "--output", "json"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rank"]["domain"], 9);
    assert_eq!(v["rank"]["rank"], 3);
    assert_eq!(v["rank"]["injective"], false);
    assert_eq!(v["rank"]["surjective"], true);
    let witness = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "canonical map bijective")
        .and_then(|c| c["witness"].as_str())
        .unwrap();
    assert!(witness.contains("kernel vector"), "witness: {witness}");
}

#[test]
fn can_accepts_every_bundled_galois_extension() {
    let dir = tempfile::tempdir().unwrap();
    for (name, field) in [
        ("gauss-qi", None),
        ("sqrt2", None),
        ("f4-over-f2", Some("F2")),
        ("f8-over-f2", Some("F2")),
        ("f9-over-f3", Some("F3")),
    ] {
        let doc = gen_to(dir.path(), name, field);
        let o = run(&["can", doc.to_str().unwrap(), name]);
        assert_eq!(code(&o), 0, "{name}: {}\n{}", stdout(&o), stderr(&o));
    }
}

#[test]
fn input_errors_exit_two_and_name_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let doc = gen_to(dir.path(), "z2-free-2", None);
    let path = doc.to_str().unwrap();

    let o = run(&["can", path, "no-such-object"]);
    assert_eq!(code(&o), 2);
    let e = stderr(&o);
    assert!(e.contains("z2-free-2") && e.contains("C2"), "must list available names: {e}");

    let hopf = gen_to(dir.path(), "z2-hopf", None);
    let broken = std::fs::read_to_string(&hopf).unwrap().replacen("\"1\"", "\"1/0\"", 1);
    let bad = dir.path().join("bad-scalar.json");
    std::fs::write(&bad, broken).unwrap();
    let o = run(&["verify", bad.to_str().unwrap(), "z2-hopf"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("1/0"), "must name the token: {}", stderr(&o));

    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&hopf).unwrap()).unwrap();
    v["objects"]["z2-hopf"]["dim"] = serde_json::json!(65);
    let big = dir.path().join("too-big.json");
    std::fs::write(&big, serde_json::to_string(&v).unwrap()).unwrap();
    let o = run(&["verify", big.to_str().unwrap(), "z2-hopf"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("64"), "must cite the bound: {}", stderr(&o));

    let o = run(&["can", path, "z2-free-2", "--field", "F3"]);
    assert_eq!(code(&o), 2, "field conflict is an input error");

    let o = run(&["gen", "f4-over-f2", "--field", "Q"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("F2"), "{}", stderr(&o));

    let o = run(&["can", dir.path().join("absent.json").to_str().unwrap(), "x"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn connection_emits_a_section_that_reverifies() {
    let dir = tempfile::tempdir().unwrap();
    let doc = gen_to(dir.path(), "z2-free-2", None);
    let o = run(&["connection", doc.to_str().unwrap(), "z2-free-2", "--output", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ell = &v["connection"];
    let field = FieldSpec::Rationals;
    let triples: Vec<(usize, usize, _)> = ell["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e[0].as_u64().unwrap() as usize,
                e[1].as_u64().unwrap() as usize,
                field.parse(e[2].as_str().unwrap()).unwrap(),
            )
        })
        .collect();
    let ell = LinMap::from_triples(
        field,
        ell["rows"].as_u64().unwrap() as usize,
        ell["cols"].as_u64().unwrap() as usize,
        triples,
    )
    .unwrap();

    // Rebuild the same coaction and confirm the emitted section still
    // satisfies every strong-connection axiom.
    let c2 = FiniteGroup::cyclic(2);
    let swap = GSet { points: 2, action: vec![vec![0, 1], vec![1, 0]] };
    let c = gset_coaction(field, &c2, &swap).unwrap();
    let rep = StrongConnection { ell }.verify(&c).unwrap();
    assert!(rep.all_passed(), "{:?}", rep.failed_names());
}

#[test]
fn connection_self_coaction_passes_and_nonfree_is_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let hopf = gen_to(dir.path(), "z2-hopf", None);
    let o = run(&["connection", hopf.to_str().unwrap(), "z2-hopf"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("ell["), "matrix must be emitted");

    let fixed = gen_to(dir.path(), "z2-fixpoint-3", None);
    let o = run(&["connection", fixed.to_str().unwrap(), "z2-fixpoint-3"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("infeasible"), "{}", stdout(&o));
}

#[test]
fn monoidal_defaults_cross_check_against_can() {
    let dir = tempfile::tempdir().unwrap();
    let free = gen_to(dir.path(), "z2-free-2", None);
    let o = run(&["monoidal", free.to_str().unwrap(), "z2-free-2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("defaults applied"), "default family must be noted: {text}");
    assert!(text.contains("matches canonical-map verdict: pass"));

    let fixed = gen_to(dir.path(), "z2-fixpoint-3", None);
    let o = run(&["monoidal", fixed.to_str().unwrap(), "z2-fixpoint-3"]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains(": fail"), "some shear map must fail: {text}");
    assert!(text.contains("matches canonical-map verdict: pass"), "aggregate fail matches can fail: {text}");
}

#[test]
fn monoidal_user_family_resolves_or_errors() {
    let dir = tempfile::tempdir().unwrap();
    let free = gen_to(dir.path(), "z2-free-2", None);
    let path = free.to_str().unwrap();
    let o = run(&["monoidal", path, "z2-free-2", "--comodules", "trivial,H"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(!stdout(&o).contains("defaults applied"));

    let o = run(&["monoidal", path, "z2-free-2", "--comodules", "unknown-comodule"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("trivial"), "must list choices: {}", stderr(&o));
}

#[test]
fn fibred_names_the_offending_fiber() {
    let dir = tempfile::tempdir().unwrap();
    let mixed = gen_to(dir.path(), "mixed-fibred", None);
    let o = run(&["fibred", mixed.to_str().unwrap(), "mixed-fibred"]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("offending fiber 1"), "{text}");

    let free = gen_to(dir.path(), "free-fibred", None);
    let o = run(&["fibred", free.to_str().unwrap(), "free-fibred"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

/// A fibred algebra with one fiber is just its fiber; both commands
/// must agree, on a free fiber and on a fixed-point fiber.
#[test]
fn fibred_single_fiber_matches_can() {
    let dir = tempfile::tempdir().unwrap();
    let hopf_doc = gen_to(dir.path(), "z2-hopf", None);
    let hopf: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&hopf_doc).unwrap()).unwrap();
    let hopf_rec = hopf["objects"]["z2-hopf"].clone();

    let cases = [
        (
            "free",
            serde_json::json!({
                "type": "coaction", "hopf": "h", "dim": 2,
                "mult": {"rows": 2, "cols": 4, "entries": [[0,0,"1"],[1,3,"1"]]},
                "unit": ["1","1"],
                "delta": {"rows": 4, "cols": 2, "entries": [[0,0,"1"],[1,1,"1"],[2,1,"1"],[3,0,"1"]]}
            }),
            serde_json::json!({"rows": 2, "cols": 1, "entries": [[0,0,"1"],[1,0,"1"]]}),
            0,
        ),
        (
            "fixed",
            serde_json::json!({
                "type": "coaction", "hopf": "h", "dim": 1,
                "mult": {"rows": 1, "cols": 1, "entries": [[0,0,"1"]]},
                "unit": ["1"],
                "delta": {"rows": 2, "cols": 1, "entries": [[0,0,"1"],[1,0,"1"]]}
            }),
            serde_json::json!({"rows": 1, "cols": 1, "entries": [[0,0,"1"]]}),
            1,
        ),
    ];
    for (label, coaction, theta, expected) in cases {
        let doc = serde_json::json!({
            "version": 1,
            "field": {"kind": "Q"},
            "objects": {
                "h": hopf_rec,
                "total": coaction,
                "one-fiber": {"type": "fibred", "coaction": "total", "base_points": 1, "theta": theta}
            }
        });
        let path = dir.path().join(format!("single-{label}.json"));
        std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
        let p = path.to_str().unwrap();
        let fibred = run(&["fibred", p, "one-fiber"]);
        let can = run(&["can", p, "total"]);
        assert_eq!(code(&fibred), expected, "{label}: {}\n{}", stdout(&fibred), stderr(&fibred));
        assert_eq!(code(&can), expected, "{label}: {}\n{}", stdout(&can), stderr(&can));
    }
}

#[test]
fn cover_separates_regular_from_irregular() {
    let dir = tempfile::tempdir().unwrap();
    for (name, expected) in [
        ("trivial-cover", 0),
        ("z3-regular-cover", 0),
        ("z2-irregular-cover", 1),
        ("s3-irregular-cover", 1),
    ] {
        let doc = gen_to(dir.path(), name, None);
        let o = run(&["cover", doc.to_str().unwrap(), name]);
        assert_eq!(code(&o), expected, "{name}: {}\n{}", stdout(&o), stderr(&o));
    }
}

#[test]
fn suite_small_bounds_report_zero_violations() {
    let o = run(&["suite", "--max-points", "3", "--max-order", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("0 violations"), "{text}");

    // Characteristic dividing some group orders: affected checks skip.
    let o = run(&["suite", "--max-points", "2", "--max-order", "2", "--field", "F2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("skip"), "skips must be visible: {text}");
    assert!(text.contains("0 violations"), "{text}");
}

#[test]
fn reports_are_byte_identical_modulo_duration() {
    let dir = tempfile::tempdir().unwrap();
    let doc = gen_to(dir.path(), "z2-fixpoint-3", None);
    let path = doc.to_str().unwrap();
    for output in ["text", "json"] {
        let a = run(&["can", path, "z2-fixpoint-3", "--output", output]);
        let b = run(&["can", path, "z2-fixpoint-3", "--output", output]);
        assert_eq!(strip_duration(&stdout(&a)), strip_duration(&stdout(&b)), "{output}");
    }
    let a = run(&["suite", "--max-points", "3", "--max-order", "3"]);
    let b = run(&["suite", "--max-points", "3", "--max-order", "3"]);
    assert_eq!(strip_duration(&stdout(&a)), strip_duration(&stdout(&b)));
}

#[test]
fn gen_lists_the_required_examples() {
    let o = run(&["gen"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    for name in ["z2-free-2", "z2-fixpoint-3", "gauss-qi", "f4-over-f2", "s3-irregular-cover"] {
        assert!(text.contains(name), "listing must offer {name}");
    }
    let o = run(&["gen", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().len() >= 5);
}

#[test]
fn verify_passes_on_generated_examples() {
    let dir = tempfile::tempdir().unwrap();
    for (name, field) in [
        ("z2-hopf", None),
        ("z2-free-2", None),
        ("gauss-qi", None),
        ("f4-over-f2", Some("F2")),
        ("s3-irregular-cover", None),
        ("mixed-fibred", None),
    ] {
        let doc = gen_to(dir.path(), name, field);
        let o = run(&["verify", doc.to_str().unwrap(), name]);
        assert_eq!(code(&o), 0, "{name}: {}\n{}", stdout(&o), stderr(&o));
    }
}

#[test]
fn verify_renders_axiom_failures_as_verdicts_not_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let doc = gen_to(dir.path(), "z2-free-2", None);
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&doc).unwrap()).unwrap();
    v["objects"]["C2"]["mult"] = serde_json::json!([[0, 1], [1, 1]]);
    let bad = dir.path().join("broken-group.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    let p = bad.to_str().unwrap();

    let o = run(&["verify", p, "C2"]);
    assert_eq!(code(&o), 1, "axiom failure is a negative verdict");
    assert!(stdout(&o).contains("verdict: fail"));

    // The same broken object is unusable input for a verdict command.
    let o = run(&["can", p, "z2-free-2"]);
    assert_eq!(code(&o), 2);
}
