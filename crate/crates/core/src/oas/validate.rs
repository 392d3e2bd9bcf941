//! Document validation: the official OAS 3.1 meta-schema plus the checks it
//! cannot express (reference targets, response presence, id uniqueness).

use std::collections::BTreeSet;
use std::sync::OnceLock;

use jsonschema::Validator;
use serde_json::Value;

use crate::llm::HttpMethod;

const META_SCHEMA: &str = include_str!("../../data/oas-3.1-schema.json");

fn meta_validator() -> &'static Validator {
    static V: OnceLock<Validator> = OnceLock::new();
    V.get_or_init(|| {
        let schema: Value = serde_json::from_str(META_SCHEMA).expect("bundled meta-schema is JSON");
        jsonschema::validator_for(&schema).expect("bundled meta-schema compiles")
    })
}

fn collect_refs<'a>(v: &'a Value, out: &mut Vec<&'a str>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                if k == "$ref" {
                    if let Some(s) = child.as_str() {
                        out.push(s);
                    }
                } else {
                    collect_refs(child, out);
                }
            }
        }
        Value::Array(items) => items.iter().for_each(|c| collect_refs(c, out)),
        _ => {}
    }
}

/// Every problem found in `doc`; empty means valid.
pub fn validate_document(doc: &Value) -> Vec<String> {
    let mut problems: Vec<String> = meta_validator()
        .iter_errors(doc)
        .map(|e| {
            let at = e.instance_path.to_string();
            format!("{}: {e}", if at.is_empty() { "/" } else { &at })
        })
        .collect();

    let mut refs = Vec::new();
    collect_refs(doc, &mut refs);
    for r in refs {
        let target = r.strip_prefix('#').map(|ptr| doc.pointer(ptr));
        match target {
            Some(Some(_)) => {}
            Some(None) => problems.push(format!("$ref target {r} does not exist")),
            None => problems.push(format!("$ref {r} points outside the document")),
        }
    }

    let mut ids = BTreeSet::new();
    if let Some(paths) = doc.get("paths").and_then(Value::as_object) {
        for (path, item) in paths {
            if !path.starts_with('/') {
                problems.push(format!("path `{path}` does not begin with '/'"));
            }
            let Some(item) = item.as_object() else { continue };
            for (key, op) in item {
                let Some(method) = HttpMethod::parse(key) else { continue };
                if key != method.lowercase() {
                    problems.push(format!("{path}: method key `{key}` is not lowercase"));
                }
                let responses = op.get("responses").and_then(Value::as_object);
                if responses.is_none_or(|r| r.is_empty()) {
                    problems.push(format!("{path} {key}: operation has no responses"));
                }
                if let Some(id) = op.get("operationId").and_then(Value::as_str) {
                    if !ids.insert(id.to_string()) {
                        problems.push(format!("{path} {key}: duplicate operationId `{id}`"));
                    }
                }
            }
        }
    }
    problems
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn minimal_document_is_valid() {
        let doc = json!({"openapi": "3.1.1", "info": {"title": "t", "version": "1"}, "paths": {}});
        assert_eq!(validate_document(&doc), Vec::<String>::new());
    }

    #[test]
    fn detects_problems() {
        let doc = json!({"openapi": "3.1.1", "info": {"title": "t", "version": "1"}, "paths": {
            "/a": {"get": {"operationId": "x", "responses": {"200": {"description": "ok",
                "content": {"application/json": {"schema": {"$ref": "#/components/schemas/Missing"}}}}}}},
            "/b": {"get": {"operationId": "x", "responses": {}}}
        }});
        let problems = validate_document(&doc);
        assert!(problems.iter().any(|p| p.contains("Missing")), "{problems:?}");
        assert!(problems.iter().any(|p| p.contains("no responses")));
        assert!(problems.iter().any(|p| p.contains("duplicate operationId")));
    }

    #[test]
    fn meta_schema_rejects_bad_shapes() {
        let doc = json!({"openapi": "3.1.1", "info": {"title": "t"}, "paths": {"/a": {"GET": {}}}});
        assert!(validate_document(&doc).len() >= 2);
    }
}
