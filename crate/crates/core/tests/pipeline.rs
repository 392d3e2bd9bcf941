mod common;

use std::collections::BTreeSet;
use std::fs;

use oasgen_core::error::{GenerateError, ProviderError};
use oasgen_core::eval::{
    diff_against_developer, extract_entities, load_ground_truth, parse_document, score, EntityClass,
};
use oasgen_core::llm::FixtureProvider;
use oasgen_core::oas::{to_json, validate_document};
use oasgen_core::{generate, RunConfig};
use serde_json::Value;

use common::*;

#[test]
fn replay_matches_golden_and_is_deterministic() {
    for name in RECORDED {
        maybe_regenerate(name);
        let first = to_json(&run_offline(name).document);
        let second = to_json(&run_offline(name).document);
        assert_eq!(first, second, "{name}: two offline runs differ");
        let golden = fs::read_to_string(golden(name)).unwrap();
        assert_eq!(first, golden, "{name}: output differs from the golden file");
    }
}

#[test]
fn replay_equals_scripted_run_and_uses_every_fixture() {
    for name in RECORDED {
        let live = Counting::new(scripted(name));
        let scripted_doc = generate(&run_config(name), &live).unwrap().document;
        assert_eq!(to_json(&scripted_doc), to_json(&run_offline(name).document), "{name}");

        let requested: BTreeSet<String> = live.seen.lock().unwrap().iter().cloned().collect();
        let stored: BTreeSet<String> = fs::read_dir(recorded(name))
            .unwrap()
            .map(|e| e.unwrap().path().file_stem().unwrap().to_string_lossy().into_owned())
            .collect();
        assert_eq!(requested, stored, "{name}: stale or missing fixtures");
    }
}

#[test]
fn emitted_documents_are_valid() {
    for name in RECORDED {
        let outcome = run_offline(name);
        assert!(
            outcome.validation_problems.is_empty(),
            "{name}: {:?}",
            outcome.validation_problems
        );
        assert!(validate_document(&outcome.document.to_value()).is_empty());
        assert!(outcome.diagnostics.is_empty(), "{name}: {:?}", outcome.diagnostics);
    }
}

#[test]
fn statistics_projects_operation() {
    let doc = run_offline("catwatch").document.to_value();
    let op = &doc["paths"]["/statistics/projects"]["get"];
    assert_eq!(op["operationId"], "statisticsProjectGet");
    let params = op["parameters"].as_array().unwrap();
    let names: Vec<&str> = params.iter().map(|p| p["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["organizations", "start_date", "end_date"]);
    assert!(params.iter().all(|p| p["in"] == "query" && p["required"] == false));
    assert_eq!(params[1]["schema"]["format"], "date-time");
    let schema = &op["responses"]["200"]["content"]["application/json"]["schema"];
    assert_eq!(schema["items"]["$ref"], "#/components/schemas/ProjectStats");
    assert!(doc["components"]["schemas"]["ProjectStats"]["properties"]["starsCount"].is_object());
}

#[test]
fn golden_scores_perfectly_against_hand_written_truth() {
    let doc: Value = serde_json::from_str(&fs::read_to_string(golden("catwatch")).unwrap()).unwrap();
    let truth = load_ground_truth(&fs::read_to_string(truth("catwatch")).unwrap()).unwrap();
    let report = score(&extract_entities(&doc), &truth);
    for c in &report.classes {
        assert_eq!(
            (c.metrics.precision, c.metrics.recall, c.metrics.f1),
            (1.0, 1.0, 1.0),
            "{:?}: {:?}",
            c.class,
            c
        );
    }
    assert_eq!(report.class(EntityClass::EndpointMethods).metrics.tp, 14);
}

#[test]
fn developer_spec_misses_eight_methods() {
    let generated = extract_entities(&run_offline("catwatch").document.to_value());
    let text = fs::read_to_string(fixtures().join("developer/catwatch.swagger.yaml")).unwrap();
    let developer = extract_entities(&parse_document(&text, "developer specification").unwrap());
    let diff = diff_against_developer(&generated, &developer);
    let methods = diff.class(EntityClass::EndpointMethods);
    assert_eq!((methods.developer, methods.generated), (6, 14));
    assert_eq!(methods.only_in_generated.len(), 8);
    assert!(methods.only_in_developer.is_empty());
    // Developer-only: a constraint the source never states.
    let constraints = diff.class(EntityClass::ParameterConstraints);
    assert!(constraints.only_in_generated.len() > constraints.only_in_developer.len());
}

#[test]
fn codebin_enum_and_conflicts() {
    let doc = run_offline("codebin").document.to_value();
    let body = &doc["paths"]["/paste"]["post"]["requestBody"]["content"]["application/json"]["schema"];
    let syntax = &body["properties"]["paste_syntax"];
    assert_eq!(syntax["enum"].as_array().unwrap().len(), 14);
    assert_eq!(syntax["default"], "NONE");
    let conflict = &doc["paths"]["/user/signup"]["post"]["responses"]["409"];
    assert_eq!(conflict["x-response-variants"].as_array().unwrap().len(), 2);
    let entities = extract_entities(&doc);
    let conflicts = entities
        .endpoint_responses
        .iter()
        .filter(|(p, m, code, _)| p == "/user/signup" && m == "POST" && code == "409")
        .count();
    assert_eq!(conflicts, 2);
}

#[test]
fn missing_fixture_is_a_provider_error() {
    let empty = tempfile::tempdir().unwrap();
    let err = generate(&run_config("catwatch"), &FixtureProvider::new(empty.path())).unwrap_err();
    assert_eq!(err.category(), "provider");
    assert!(matches!(
        err,
        GenerateError::Provider(ProviderError::FixtureMiss { .. })
    ));
}

#[test]
fn copied_project_replays_the_same_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    copy_dir(&project("catwatch"), dir.path());
    let mut cfg = RunConfig::new(dir.path());
    cfg.title = Some("catwatch".into());
    let doc = generate(&cfg, &FixtureProvider::new(recorded("catwatch")))
        .unwrap()
        .document;
    assert_eq!(to_json(&doc), fs::read_to_string(golden("catwatch")).unwrap());
}

#[test]
fn empty_project_gives_empty_valid_document() {
    let dir = tempfile::tempdir().unwrap();
    let outcome = generate(&RunConfig::new(dir.path()), &FixtureProvider::new(dir.path())).unwrap();
    assert!(outcome.document.paths.is_empty());
    assert!(outcome.framework.is_none());
    assert!(outcome.validation_problems.is_empty());
    assert_eq!(outcome.diagnostics.len(), 1);
}

#[test]
fn contexts_can_be_dumped() {
    let dump = tempfile::tempdir().unwrap();
    let mut cfg = run_config("catwatch");
    cfg.dump_contexts = Some(dump.path().to_path_buf());
    generate(&cfg, &FixtureProvider::new(recorded("catwatch"))).unwrap();
    let n = fs::read_dir(dump.path()).unwrap().count();
    assert!(n >= 5, "{n} dumped contexts");
}

#[test]
fn unknown_framework_is_a_scan_error() {
    let mut cfg = run_config("catwatch");
    cfg.framework = "rails".into();
    let err = generate(&cfg, &FixtureProvider::new(recorded("catwatch"))).unwrap_err();
    assert_eq!(err.category(), "scan");
}
