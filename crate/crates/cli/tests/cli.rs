use std::net::TcpListener;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

fn oasgen(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oasgen"))
        .args(args)
        .current_dir(cwd)
        .env_remove("LRASGEN_API_KEY")
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn generate_offline(cwd: &Path, extra: &[&str]) -> Output {
    let project = fixtures().join("projects/catwatch");
    let recorded = fixtures().join("recorded/catwatch");
    let mut args = vec![
        "generate",
        s(&project),
        "--offline",
        "--fixtures",
        s(&recorded),
        "--title",
        "catwatch",
    ];
    args.extend_from_slice(extra);
    oasgen(&args, cwd)
}

#[test]
fn offline_generate_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let o = generate_offline(dir.path(), &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("14 endpoint methods, 28 parameters, 23 constraints, 18 responses"));
    let written = std::fs::read(dir.path().join("catwatch.openapi.json")).unwrap();
    let golden = std::fs::read(fixtures().join("golden/catwatch.openapi.json")).unwrap();
    assert_eq!(written, golden);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = generate_offline(dir.path(), &["-o", "a.json"]);
    let b = generate_offline(dir.path(), &["-o", "b.json"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(
        std::fs::read(dir.path().join("a.json")).unwrap(),
        std::fs::read(dir.path().join("b.json")).unwrap()
    );
}

#[test]
fn offline_run_opens_no_connection() {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    listener.set_nonblocking(true).unwrap();
    let url = format!("http://{}/v1", listener.local_addr().unwrap());
    let dir = tempfile::tempdir().unwrap();
    let o = generate_offline(dir.path(), &["--endpoint-url", &url]);
    assert!(o.status.success(), "{}", stderr(&o));
    match listener.accept() {
        Err(e) => assert_eq!(e.kind(), std::io::ErrorKind::WouldBlock),
        Ok(_) => panic!("offline run connected to the model endpoint"),
    }
}

#[test]
fn yaml_output_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = generate_offline(dir.path(), &["--yaml", "--report", "report.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let yaml = std::fs::read_to_string(dir.path().join("catwatch.openapi.yaml")).unwrap();
    assert!(yaml.starts_with("openapi: 3.1.1\n"));
    let from_yaml: Value = serde_yaml::from_str(&yaml).unwrap();
    let golden: Value =
        serde_json::from_str(&std::fs::read_to_string(fixtures().join("golden/catwatch.openapi.json")).unwrap())
            .unwrap();
    assert_eq!(from_yaml, golden);

    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report["framework"], "spring_boot");
    assert_eq!(report["counts"]["endpoint_methods"], 14);
    assert_eq!(report["entry_files"].as_array().unwrap().len(), 5);
    assert_eq!(report["validation_problems"], Value::Array(vec![]));
}

#[test]
fn missing_api_key_names_the_variable() {
    let dir = tempfile::tempdir().unwrap();
    let project = fixtures().join("projects/catwatch");
    let o = oasgen(&["generate", s(&project)], dir.path());
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("LRASGEN_API_KEY"), "{}", stderr(&o));
    assert!(!dir.path().join("catwatch.openapi.json").exists());
}

#[test]
fn empty_project_is_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::create_dir(dir.path().join("empty")).unwrap();
    let o = oasgen(&["generate", "empty", "-o", "out.json"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("no endpoint entry files"));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("out.json")).unwrap()).unwrap();
    assert_eq!(doc["paths"], serde_json::json!({}));
}

#[test]
fn exit_codes_by_category() {
    let dir = tempfile::tempdir().unwrap();
    let project = fixtures().join("projects/catwatch");
    let code = |args: &[&str]| oasgen(args, dir.path()).status.code();
    assert_eq!(code(&["generate", "--bogus"]), Some(2));
    assert_eq!(code(&["generate", "--offline"]), Some(2));
    assert_eq!(
        code(&["generate", s(&project), "--offline", "--fixtures", "nope"]),
        Some(3)
    );
    assert_eq!(
        code(&[
            "generate",
            s(&project),
            "--import-depth",
            "0",
            "--offline",
            "--fixtures",
            "."
        ]),
        Some(3)
    );
    assert_eq!(code(&["generate", "no/such/dir"]), Some(4));
    assert_eq!(code(&["scan", s(&project), "--framework", "cobol"]), Some(4));
    // Recorded fixtures of another project do not answer these prompts.
    let other = fixtures().join("recorded/codebin");
    assert_eq!(
        code(&["generate", s(&project), "--offline", "--fixtures", s(&other)]),
        Some(5)
    );
    std::fs::write(dir.path().join("junk.json"), "[1, 2").unwrap();
    let truth = fixtures().join("truth/catwatch.json");
    assert_eq!(
        code(&["evaluate", "--spec", "junk.json", "--truth", s(&truth)]),
        Some(8)
    );
    assert_eq!(
        code(&["evaluate", "--spec", "missing.json", "--truth", s(&truth)]),
        Some(1)
    );
}

#[test]
fn scan_lists_django_configuration_files() {
    let dir = tempfile::tempdir().unwrap();
    let project = fixtures().join("projects/polls");
    let o = oasgen(&["scan", s(&project), "--format", "json"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["framework"], "django");
    let configs: Vec<&str> = v["configuration_files"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(configs, ["api/urls.py", "mysite/urls.py", "polls/urls.py"]);
    let entries: Vec<&str> = v["entry_files"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(entries, ["api/views.py", "polls/views.py"]);
}

#[test]
fn scan_table_for_each_framework() {
    let dir = tempfile::tempdir().unwrap();
    for (name, framework) in [
        ("catwatch", "spring_boot"),
        ("codebin", "jersey"),
        ("bookshelf", "flask"),
        ("todo_webpy", "webpy"),
        ("inventory_aspnet", "aspnet_core"),
    ] {
        let project = fixtures().join("projects").join(name);
        let o = oasgen(&["scan", s(&project)], dir.path());
        assert!(o.status.success(), "{name}: {}", stderr(&o));
        assert!(
            stdout(&o).starts_with(&format!("framework: {framework}\n")),
            "{name}: {}",
            stdout(&o)
        );
    }
}

#[test]
fn evaluate_golden_against_truth() {
    let dir = tempfile::tempdir().unwrap();
    let golden = fixtures().join("golden/catwatch.openapi.json");
    let truth = fixtures().join("truth/catwatch.json");
    let o = oasgen(
        &[
            "evaluate",
            "--spec",
            s(&golden),
            "--truth",
            s(&truth),
            "--format",
            "json",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let text = v.to_string();
    assert!(!text.contains("\"fp\":1") && !text.contains("\"fn\":1"));
    let table = stdout(&oasgen(
        &["evaluate", "--spec", s(&golden), "--truth", s(&truth)],
        dir.path(),
    ));
    assert_eq!(table.matches("1.00    1.00  1.00").count(), 4, "{table}");

    // Without `required`, both sides lose the same constraints.
    let o = oasgen(
        &[
            "evaluate",
            "--spec",
            s(&golden),
            "--truth",
            s(&truth),
            "--required-as-constraint",
            "false",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).matches("1.00    1.00  1.00").count(), 4, "{}", stdout(&o));
}

#[test]
fn diff_against_developer_document() {
    let dir = tempfile::tempdir().unwrap();
    let golden = fixtures().join("golden/catwatch.openapi.json");
    let developer = fixtures().join("developer/catwatch.swagger.yaml");
    let o = oasgen(
        &[
            "diff",
            "--generated",
            s(&golden),
            "--developer",
            s(&developer),
            "--format",
            "json",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let methods = &v["classes"][0];
    assert_eq!(
        (methods["developer"].as_u64(), methods["generated"].as_u64()),
        (Some(6), Some(14))
    );
    assert_eq!(methods["only_in_generated"].as_array().unwrap().len(), 8);
    assert!(methods["only_in_developer"].as_array().unwrap().is_empty());
}

#[test]
fn diff_summary_of_bundled_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = oasgen(&["diff", "--summary"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("234 (out of 1308, 17.89%)"), "{out}");
    assert!(out.contains("1551 (out of 3087, 50.24%)"), "{out}");
    assert_eq!(code_of(&oasgen(&["diff"], dir.path())), 2);
}

fn code_of(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn record_fixtures_from_script_reproduces_recorded_set() {
    let dir = tempfile::tempdir().unwrap();
    let project = fixtures().join("projects/catwatch");
    let script = fixtures().join("scripts/catwatch.json");
    let out = dir.path().join("rec");
    let o = oasgen(
        &[
            "record-fixtures",
            s(&project),
            "--script",
            s(&script),
            "--fixtures",
            s(&out),
            "--title",
            "catwatch",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("recorded 47 exchanges"), "{}", stdout(&o));

    let listing = |d: &Path| {
        let mut v: Vec<(String, Vec<u8>)> = std::fs::read_dir(d)
            .unwrap()
            .map(|e| {
                let e = e.unwrap();
                (
                    e.file_name().to_string_lossy().into_owned(),
                    std::fs::read(e.path()).unwrap(),
                )
            })
            .collect();
        v.sort();
        v
    };
    assert_eq!(listing(&out), listing(&fixtures().join("recorded/catwatch")));
    assert_eq!(
        std::fs::read(dir.path().join("catwatch.openapi.json")).unwrap(),
        std::fs::read(fixtures().join("golden/catwatch.openapi.json")).unwrap()
    );
}
