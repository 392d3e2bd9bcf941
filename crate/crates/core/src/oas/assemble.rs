use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};

use super::model::{Info, MediaType, OasDocument, Operation, Parameter, RequestBody, Response, ResponseVariant};
use super::schema::{constraint_to_schema, infer_schema, parse_type_name, sanitize_component_name, TypeShape};
use crate::diag::Diagnostic;
use crate::error::AssemblyError;
use crate::llm::{EndpointRecord, HttpMethod, ParamPosition, ParamType, ParameterSpec, ResponseSpec};

pub const JSON_MEDIA_TYPE: &str = "application/json";

#[derive(Debug, Clone, PartialEq)]
pub struct Assembly {
    pub document: OasDocument,
    pub diagnostics: Vec<Diagnostic>,
}

#[allow(clippy::match_overlapping_arm)]
pub fn reason_phrase(code: u16) -> &'static str {
    match code {
        100 => "Continue",
        101 => "Switching Protocols",
        200 => "OK",
        201 => "Created",
        202 => "Accepted",
        203 => "Non-Authoritative Information",
        204 => "No Content",
        205 => "Reset Content",
        206 => "Partial Content",
        301 => "Moved Permanently",
        302 => "Found",
        303 => "See Other",
        304 => "Not Modified",
        307 => "Temporary Redirect",
        308 => "Permanent Redirect",
        400 => "Bad Request",
        401 => "Unauthorized",
        403 => "Forbidden",
        404 => "Not Found",
        405 => "Method Not Allowed",
        406 => "Not Acceptable",
        409 => "Conflict",
        410 => "Gone",
        412 => "Precondition Failed",
        413 => "Payload Too Large",
        415 => "Unsupported Media Type",
        422 => "Unprocessable Entity",
        429 => "Too Many Requests",
        500 => "Internal Server Error",
        501 => "Not Implemented",
        502 => "Bad Gateway",
        503 => "Service Unavailable",
        504 => "Gateway Timeout",
        100..=199 => "Informational",
        200..=299 => "Success",
        300..=399 => "Redirection",
        400..=499 => "Client Error",
        _ => "Server Error",
    }
}

/// Identifier-safe operationId from a handler name like `getUser()`.
pub fn operation_id_base(method_name: &str, method: HttpMethod, path: &str) -> String {
    let head = method_name.split('(').next().unwrap_or("").trim();
    let head = head.rsplit([' ', ':']).next().unwrap_or(head);
    let cleaned: String = head
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '_' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect();
    let cleaned = cleaned.trim_matches('_').to_string();
    if !cleaned.is_empty() {
        return cleaned;
    }
    let mut out = method.lowercase().to_string();
    for seg in path.split('/').filter(|s| !s.is_empty()) {
        let seg: String = seg.chars().filter(|c| c.is_ascii_alphanumeric()).collect();
        let mut chars = seg.chars();
        if let Some(first) = chars.next() {
            out.push(first.to_ascii_uppercase());
            out.extend(chars);
        }
    }
    out
}

fn pascal(s: &str) -> String {
    let mut out = String::new();
    let mut up = true;
    for c in s.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(if up { c.to_ascii_uppercase() } else { c });
            up = false;
        } else {
            up = true;
        }
    }
    out
}

fn path_template_names(path: &str) -> Vec<String> {
    let mut names = Vec::new();
    let mut rest = path;
    while let Some(open) = rest.find('{') {
        let Some(close) = rest[open..].find('}') else { break };
        names.push(rest[open + 1..open + close].to_string());
        rest = &rest[open + close + 1..];
    }
    names
}

struct Builder {
    schemas: BTreeMap<String, Value>,
    diagnostics: Vec<Diagnostic>,
}

impl Builder {
    /// Registers `schema` under `name`, merging object schemas of the same
    /// type; an incompatible shape gets the next free numeric suffix.
    fn register(&mut self, name: &str, schema: Value) -> String {
        let base = sanitize_component_name(name);
        let mut candidate = base.clone();
        let mut n = 1;
        loop {
            match self.schemas.get_mut(&candidate) {
                None => {
                    self.schemas.insert(candidate.clone(), schema);
                    return candidate;
                }
                Some(existing) if *existing == schema => return candidate,
                Some(existing) if is_object_schema(existing) && is_object_schema(&schema) => {
                    merge_properties(existing, &schema);
                    return candidate;
                }
                Some(_) => {
                    n += 1;
                    let next = format!("{base}{n}");
                    if !self.schemas.contains_key(&next) {
                        self.diagnostics.push(Diagnostic::new(
                            None,
                            format!("component `{base}` already holds a different shape; using `{next}`"),
                        ));
                    }
                    candidate = next;
                }
            }
        }
    }

    fn component_ref(&mut self, name: &str, example: Option<&Value>) -> Value {
        let mut schema = match example {
            Some(v @ Value::Object(_)) => infer_schema(v),
            _ => json!({"type": "object"}),
        };
        if let Some(v @ Value::Object(_)) = example {
            schema["examples"] = json!([v]);
        }
        let actual = self.register(name, schema);
        json!({"$ref": format!("#/components/schemas/{actual}")})
    }

    fn response_schema(&mut self, resp: &ResponseSpec, op_id: &str) -> Option<Value> {
        let example = resp.return_schema.as_ref();
        let element = |ex: Option<&Value>| match ex {
            Some(Value::Array(items)) => items.first().cloned(),
            other => other.cloned(),
        };
        let fallback_name = format!("{}Response", pascal(op_id));
        let shape = match resp.return_type.as_deref() {
            Some(t) => parse_type_name(t),
            None => TypeShape::Untyped,
        };
        match shape {
            TypeShape::NoContent => None,
            TypeShape::Named(name) => {
                let el = element(example);
                Some(self.component_ref(&name, el.as_ref()))
            }
            TypeShape::ArrayOf(inner) => {
                let el = element(example);
                let items = match *inner {
                    TypeShape::Named(name) => self.component_ref(&name, el.as_ref()),
                    TypeShape::Primitive(p) => json!({"type": p.as_str()}),
                    _ => match &el {
                        Some(v @ Value::Object(_)) => self.component_ref(&format!("{}Item", pascal(op_id)), Some(v)),
                        Some(v) => infer_schema(v),
                        None => json!({}),
                    },
                };
                Some(json!({"type": "array", "items": items}))
            }
            TypeShape::Primitive(p) => {
                let mut s = json!({"type": p.as_str()});
                if let Some(ex) = example {
                    if infer_schema(ex)["type"] == s["type"] {
                        s["examples"] = json!([ex]);
                    }
                }
                Some(s)
            }
            TypeShape::Untyped => match example {
                None => None,
                Some(v @ Value::Object(_)) => Some(self.component_ref(&fallback_name, Some(v))),
                Some(Value::Array(items)) if items.first().is_some_and(Value::is_object) => {
                    let item = self.component_ref(&format!("{}Item", pascal(op_id)), items.first());
                    Some(json!({"type": "array", "items": item}))
                }
                Some(v) => {
                    let mut s = infer_schema(v);
                    s["examples"] = json!([v]);
                    Some(s)
                }
            },
        }
    }
}

fn is_object_schema(v: &Value) -> bool {
    v.get("type").and_then(Value::as_str) == Some("object") && v.get("$ref").is_none()
}

fn merge_properties(existing: &mut Value, incoming: &Value) {
    let Some(new_props) = incoming.get("properties").and_then(Value::as_object) else {
        return;
    };
    let obj = existing.as_object_mut().expect("object schema");
    let props = obj.entry("properties").or_insert_with(|| Value::Object(Map::new()));
    if let Value::Object(props) = props {
        for (k, v) in new_props {
            props.entry(k.clone()).or_insert_with(|| v.clone());
        }
    }
    if !obj.contains_key("examples") {
        if let Some(ex) = incoming.get("examples") {
            obj.insert("examples".into(), ex.clone());
        }
    }
}

fn description_of(p: &ParameterSpec) -> Option<String> {
    let d = p.description.trim();
    (!d.is_empty()).then(|| d.to_string())
}

fn request_body(body: &[&ParameterSpec]) -> Option<RequestBody> {
    let (first, rest) = body.split_first()?;
    let whole = rest.is_empty() && matches!(first.param_type, ParamType::Object | ParamType::Array);
    let (schema, body_name, description) = if whole {
        (
            constraint_to_schema(first),
            Some(first.name.clone()),
            description_of(first),
        )
    } else {
        let props: Map<String, Value> = body.iter().map(|p| (p.name.clone(), constraint_to_schema(p))).collect();
        let required: Vec<&str> = body.iter().filter(|p| p.required).map(|p| p.name.as_str()).collect();
        let mut schema = json!({"type": "object", "properties": props});
        if !required.is_empty() {
            schema["required"] = json!(required);
        }
        (schema, None, None)
    };
    Some(RequestBody {
        description,
        required: body.iter().any(|p| p.required),
        content: BTreeMap::from([(JSON_MEDIA_TYPE.to_string(), MediaType { schema })]),
        body_name,
    })
}

fn variant_description(r: &ResponseSpec) -> String {
    let d = r.description.trim();
    if !d.is_empty() {
        return d.to_string();
    }
    match r.exception.as_deref().map(str::trim) {
        Some(e) if !e.is_empty() => e.to_string(),
        _ => reason_phrase(r.status_code).to_string(),
    }
}

fn build_responses(b: &mut Builder, responses: &[ResponseSpec], op_id: &str) -> BTreeMap<String, Response> {
    let mut by_code: BTreeMap<u16, Vec<&ResponseSpec>> = BTreeMap::new();
    for r in responses {
        by_code.entry(r.status_code).or_default().push(r);
    }
    let mut out = BTreeMap::new();
    for (code, group) in by_code {
        let mut variants: Vec<ResponseVariant> = Vec::new();
        let mut schemas: Vec<Value> = Vec::new();
        for r in group {
            let v = ResponseVariant {
                description: variant_description(r),
                exception: r.exception.clone().filter(|e| !e.trim().is_empty()),
            };
            if !variants.contains(&v) {
                variants.push(v);
            }
            if let Some(s) = b.response_schema(r, op_id) {
                if !schemas.contains(&s) {
                    schemas.push(s);
                }
            }
        }
        let description = variants
            .iter()
            .map(|v| v.description.as_str())
            .collect::<Vec<_>>()
            .join(" | ");
        let content = match schemas.len() {
            0 => None,
            1 => Some(schemas.remove(0)),
            _ => Some(json!({"oneOf": schemas})),
        }
        .map(|schema| BTreeMap::from([(JSON_MEDIA_TYPE.to_string(), MediaType { schema })]));
        out.insert(
            code.to_string(),
            Response {
                description,
                content,
                variants: if variants.len() > 1 { variants } else { Vec::new() },
                unextracted: false,
            },
        );
    }
    out
}

/// Builds the document from per-endpoint records.
pub fn assemble(endpoints: &[EndpointRecord], info: Info) -> Result<Assembly, AssemblyError> {
    let mut sorted: Vec<&EndpointRecord> = endpoints.iter().collect();
    sorted.sort_by(|a, b| {
        (&a.method.endpoint_path, a.method.http_method).cmp(&(&b.method.endpoint_path, b.method.http_method))
    });

    let mut doc = OasDocument::new(info);
    let mut b = Builder {
        schemas: BTreeMap::new(),
        diagnostics: Vec::new(),
    };
    let mut used_ids: BTreeSet<String> = BTreeSet::new();

    for rec in sorted {
        let ep = &rec.method;
        let path = ep.endpoint_path.clone();
        let item = doc.paths.entry(path.clone()).or_default();
        let slot = item.slot(ep.http_method);
        if slot.is_some() {
            return Err(AssemblyError::DuplicateEndpoint {
                path,
                method: ep.http_method.to_string(),
            });
        }

        let base = operation_id_base(&ep.method_name, ep.http_method, &path);
        let mut op_id = base.clone();
        let mut n = 1;
        while used_ids.contains(&op_id) {
            n += 1;
            op_id = format!("{base}{n}");
        }
        used_ids.insert(op_id.clone());

        let parameters: Vec<Parameter> = rec
            .parameters
            .iter()
            .filter(|p| p.position != ParamPosition::Body)
            .map(|p| Parameter {
                name: p.name.clone(),
                location: p.position.as_str().to_string(),
                required: p.required || p.position == ParamPosition::Path,
                description: description_of(p),
                schema: constraint_to_schema(p),
            })
            .collect();
        let body: Vec<&ParameterSpec> = rec
            .parameters
            .iter()
            .filter(|p| p.position == ParamPosition::Body)
            .collect();

        for name in path_template_names(&path) {
            if !parameters.iter().any(|p| p.location == "path" && p.name == name) {
                b.diagnostics.push(Diagnostic::new(
                    Some(&rec.source),
                    format!(
                        "{} {path}: path variable `{name}` has no matching path parameter",
                        ep.http_method
                    ),
                ));
            }
        }

        let mut responses = build_responses(&mut b, &rec.responses, &op_id);
        if responses.is_empty() {
            b.diagnostics.push(Diagnostic::new(
                Some(&rec.source),
                format!(
                    "{} {path}: no responses extracted; emitting a placeholder default response",
                    ep.http_method
                ),
            ));
            responses.insert("default".into(), placeholder_response());
        }

        let summary = rec
            .summary
            .as_ref()
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty());
        *slot = Some(Operation {
            summary,
            operation_id: op_id,
            parameters,
            request_body: request_body(&body),
            responses,
        });
    }
    doc.components.schemas = b.schemas;
    Ok(Assembly {
        document: doc,
        diagnostics: b.diagnostics,
    })
}

fn placeholder_response() -> Response {
    Response {
        description: "Response not extracted".into(),
        content: None,
        variants: Vec::new(),
        unextracted: true,
    }
}

/// Canonical JSON: two-space indentation, sorted maps, trailing newline.
pub fn to_json(doc: &OasDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
    s.push('\n');
    s
}

pub fn to_yaml(doc: &OasDocument) -> String {
    serde_yaml::to_string(doc).expect("document serializes to YAML")
}
