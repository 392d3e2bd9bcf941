//! Entity extraction from OpenAPI documents (3.x and Swagger 2.0) and the
//! normalization applied before comparing two entity sets.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::EvalError;
use crate::llm::HttpMethod;

pub type MethodKey = (String, String);
pub type ParameterKey = (String, String, String, String);
pub type ConstraintKey = (String, String, String, String, String);
pub type ResponseKey = (String, String, String, u32);

/// JSON-Schema keywords counted as parameter constraints.
pub const CONSTRAINT_KEYWORDS: &[&str] = &[
    "minLength",
    "maxLength",
    "enum",
    "format",
    "minimum",
    "maximum",
    "exclusiveMinimum",
    "exclusiveMaximum",
    "default",
    "pattern",
    "minItems",
    "maxItems",
    "multipleOf",
];

/// The four entity classes of one API. Also the on-disk ground-truth format:
/// each field is an array of key tuples.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntitySets {
    #[serde(default)]
    pub endpoint_methods: BTreeSet<MethodKey>,
    #[serde(default)]
    pub endpoint_parameters: BTreeSet<ParameterKey>,
    #[serde(default)]
    pub parameter_constraints: BTreeSet<ConstraintKey>,
    #[serde(default)]
    pub endpoint_responses: BTreeSet<ResponseKey>,
}

pub type GroundTruth = EntitySets;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractOptions {
    /// Count `required: true` as a constraint entity.
    pub required_as_constraint: bool,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        Self {
            required_as_constraint: true,
        }
    }
}

/// Trailing slash dropped (except for the root) and template variables
/// renamed by position: `/users/{id}/` → `/users/{p1}`.
pub fn normalize_path(path: &str) -> String {
    let mut out = String::with_capacity(path.len());
    let mut n = 0;
    let mut rest = path.trim();
    while let Some(open) = rest.find('{') {
        let Some(close) = rest[open..].find('}') else { break };
        n += 1;
        out.push_str(&rest[..open]);
        out.push_str(&format!("{{p{n}}}"));
        rest = &rest[open + close + 1..];
    }
    out.push_str(rest);
    if !out.starts_with('/') {
        out.insert(0, '/');
    }
    while out.len() > 1 && out.ends_with('/') {
        out.pop();
    }
    out
}

/// Positional name of a path parameter, or the name unchanged when it does
/// not appear in the template.
pub fn normalize_param_name(path: &str, name: &str, position: &str) -> String {
    if position != "path" {
        return name.to_string();
    }
    let mut n = 0;
    let mut rest = path;
    while let Some(open) = rest.find('{') {
        let Some(close) = rest[open..].find('}') else { break };
        n += 1;
        if &rest[open + 1..open + close] == name {
            return format!("p{n}");
        }
        rest = &rest[open + close + 1..];
    }
    name.to_string()
}

pub fn normalize_method(method: &str) -> String {
    method.trim().to_ascii_uppercase()
}

pub fn normalize_position(position: &str) -> String {
    match position.trim().to_ascii_lowercase().as_str() {
        "formdata" | "form" => "body".into(),
        other => other.to_string(),
    }
}

/// Text form of a constraint value: strings bare, integral numbers without
/// a fraction, enum members sorted.
pub fn constraint_value_text(keyword: &str, v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => match n.as_f64() {
            Some(f) if f.fract() == 0.0 && f.abs() < 9.0e15 => format!("{}", f as i64),
            _ => n.to_string(),
        },
        Value::Array(items) if keyword == "enum" => {
            let mut texts: Vec<String> = items.iter().map(|i| constraint_value_text("", i)).collect();
            texts.sort();
            serde_json::to_string(&texts).expect("strings serialize")
        }
        other => other.to_string(),
    }
}

fn deref<'a>(doc: &'a Value, v: &'a Value) -> &'a Value {
    let mut cur = v;
    for _ in 0..16 {
        match cur
            .get("$ref")
            .and_then(Value::as_str)
            .and_then(|r| r.strip_prefix('#'))
        {
            Some(ptr) => match doc.pointer(ptr) {
                Some(t) => cur = t,
                None => return cur,
            },
            None => return cur,
        }
    }
    cur
}

struct Collector<'a> {
    doc: &'a Value,
    opts: ExtractOptions,
    out: EntitySets,
}

impl Collector<'_> {
    fn add_param(&mut self, raw_path: &str, method: &str, name: &str, position: &str, required: bool, schema: &Value) {
        let path = normalize_path(raw_path);
        let position = normalize_position(position);
        let name = normalize_param_name(raw_path, name, &position);
        self.out
            .endpoint_parameters
            .insert((path.clone(), method.to_string(), name.clone(), position.clone()));
        let schema = deref(self.doc, schema);
        for kw in CONSTRAINT_KEYWORDS {
            if let Some(v) = schema.get(*kw) {
                self.out.parameter_constraints.insert((
                    path.clone(),
                    method.to_string(),
                    name.clone(),
                    kw.to_string(),
                    constraint_value_text(kw, v),
                ));
            }
        }
        if required && self.opts.required_as_constraint {
            self.out
                .parameter_constraints
                .insert((path, method.to_string(), name, "required".into(), "true".into()));
        }
    }

    fn add_request_body(&mut self, path: &str, method: &str, body: &Value) {
        let body = deref(self.doc, body);
        let required = body.get("required").and_then(Value::as_bool).unwrap_or(false);
        let schema = body
            .get("content")
            .and_then(Value::as_object)
            .and_then(|c| c.get("application/json").or_else(|| c.values().next()))
            .and_then(|m| m.get("schema"))
            .cloned()
            .unwrap_or(Value::Null);
        if let Some(name) = body.get("x-body-name").and_then(Value::as_str) {
            self.add_param(path, method, name, "body", required, &schema);
            return;
        }
        let resolved = deref(self.doc, &schema).clone();
        match resolved.get("properties").and_then(Value::as_object) {
            Some(props) if schema.get("$ref").is_none() => {
                let req: BTreeSet<&str> = resolved
                    .get("required")
                    .and_then(Value::as_array)
                    .map(|a| a.iter().filter_map(Value::as_str).collect())
                    .unwrap_or_default();
                for (name, prop) in props {
                    self.add_param(path, method, name, "body", req.contains(name.as_str()), prop);
                }
            }
            _ => self.add_param(path, method, "body", "body", required, &schema),
        }
    }

    fn add_operation(&mut self, raw_path: &str, method: HttpMethod, op: &Value, shared: &[Value]) {
        let m = method.as_str().to_string();
        let path = normalize_path(raw_path);
        self.out.endpoint_methods.insert((path.clone(), m.clone()));

        // Operation-level parameters override path-level ones by (name, in).
        let mut params: Vec<&Value> = Vec::new();
        let own: Vec<&Value> = op
            .get("parameters")
            .and_then(Value::as_array)
            .map(|a| a.iter().map(|p| deref(self.doc, p)).collect())
            .unwrap_or_default();
        let key = |p: &Value| (p.get("name").cloned(), p.get("in").cloned());
        for p in shared.iter().map(|p| deref(self.doc, p)) {
            if !own.iter().any(|o| key(o) == key(p)) {
                params.push(p);
            }
        }
        params.extend(own);
        for p in params {
            let (Some(name), Some(position)) = (
                p.get("name").and_then(Value::as_str),
                p.get("in").and_then(Value::as_str),
            ) else {
                continue;
            };
            let required = p.get("required").and_then(Value::as_bool).unwrap_or(position == "path");
            // Swagger 2.0 keeps non-body constraints on the parameter itself.
            let schema = p.get("schema").unwrap_or(p);
            self.add_param(raw_path, &m, name, position, required, schema);
        }
        if let Some(body) = op.get("requestBody") {
            self.add_request_body(raw_path, &m, body);
        }

        if let Some(responses) = op.get("responses").and_then(Value::as_object) {
            for (code, resp) in responses {
                let resp = deref(self.doc, resp);
                if resp.get("x-unextracted").and_then(Value::as_bool) == Some(true) {
                    continue;
                }
                let variants = resp
                    .get("x-response-variants")
                    .and_then(Value::as_array)
                    .map(|v| v.len().max(1))
                    .unwrap_or(1);
                for i in 0..variants as u32 {
                    self.out
                        .endpoint_responses
                        .insert((path.clone(), m.clone(), code.clone(), i));
                }
            }
        }
    }
}

/// Walks every operation of `doc`.
pub fn extract_entities_with(doc: &Value, opts: ExtractOptions) -> EntitySets {
    let mut c = Collector {
        doc,
        opts,
        out: EntitySets::default(),
    };
    let empty = Map::new();
    let paths = doc.get("paths").and_then(Value::as_object).unwrap_or(&empty);
    for (path, item) in paths {
        let item = deref(doc, item);
        let shared: Vec<Value> = item
            .get("parameters")
            .and_then(Value::as_array)
            .cloned()
            .unwrap_or_default();
        for method in HttpMethod::ALL {
            if let Some(op) = item.get(method.lowercase()) {
                c.add_operation(path, method, op, &shared);
            }
        }
    }
    c.out
}

pub fn extract_entities(doc: &Value) -> EntitySets {
    extract_entities_with(doc, ExtractOptions::default())
}

/// Parses a JSON or YAML document.
pub fn parse_document(text: &str, what: &str) -> Result<Value, EvalError> {
    let fail = |reason: String| EvalError::Parse {
        what: what.into(),
        reason,
    };
    let trimmed = text.trim_start();
    let value: Value = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        serde_json::from_str(text).map_err(|e| fail(e.to_string()))?
    } else {
        serde_yaml::from_str(text).map_err(|e| fail(e.to_string()))?
    };
    if !value.is_object() {
        return Err(fail("not a mapping at the top level".into()));
    }
    Ok(value)
}

impl EntitySets {
    pub fn is_empty(&self) -> bool {
        self.endpoint_methods.is_empty()
            && self.endpoint_parameters.is_empty()
            && self.parameter_constraints.is_empty()
            && self.endpoint_responses.is_empty()
    }

    /// Same normalization as [`extract_entities`] applied to hand-written keys.
    pub fn normalized(&self) -> EntitySets {
        EntitySets {
            endpoint_methods: self
                .endpoint_methods
                .iter()
                .map(|(p, m)| (normalize_path(p), normalize_method(m)))
                .collect(),
            endpoint_parameters: self
                .endpoint_parameters
                .iter()
                .map(|(p, m, n, pos)| {
                    let pos = normalize_position(pos);
                    (
                        normalize_path(p),
                        normalize_method(m),
                        normalize_param_name(p, n, &pos),
                        pos,
                    )
                })
                .collect(),
            parameter_constraints: self
                .parameter_constraints
                .iter()
                .map(|(p, m, n, k, v)| {
                    // Constraint keys carry no position; a name that is a
                    // template variable is a path parameter.
                    (
                        normalize_path(p),
                        normalize_method(m),
                        normalize_param_name(p, n, "path"),
                        k.clone(),
                        v.clone(),
                    )
                })
                .collect(),
            endpoint_responses: self
                .endpoint_responses
                .iter()
                .map(|(p, m, c, i)| (normalize_path(p), normalize_method(m), c.clone(), *i))
                .collect(),
        }
    }

    /// Checks that parameters reference known methods and constraints
    /// reference known parameters.
    pub fn check_references(&self) -> Result<(), EvalError> {
        for (p, m, n, _) in &self.endpoint_parameters {
            if !self.endpoint_methods.contains(&(p.clone(), m.clone())) {
                return Err(EvalError::InvalidTruth(format!(
                    "parameter `{n}` references unknown endpoint {m} {p}"
                )));
            }
        }
        for (p, m, n, k, _) in &self.parameter_constraints {
            if !self
                .endpoint_parameters
                .iter()
                .any(|(pp, mm, nn, _)| pp == p && mm == m && nn == n)
            {
                return Err(EvalError::InvalidTruth(format!(
                    "constraint `{k}` references unknown parameter `{n}` of {m} {p}"
                )));
            }
        }
        for (p, m, c, _) in &self.endpoint_responses {
            if !self.endpoint_methods.contains(&(p.clone(), m.clone())) {
                return Err(EvalError::InvalidTruth(format!(
                    "response {c} references unknown endpoint {m} {p}"
                )));
            }
        }
        Ok(())
    }
}

/// Loads a ground-truth file, normalizing keys and checking references.
pub fn load_ground_truth(text: &str) -> Result<GroundTruth, EvalError> {
    let raw: GroundTruth = serde_json::from_str(text).map_err(|e| EvalError::Parse {
        what: "ground truth".into(),
        reason: e.to_string(),
    })?;
    let gt = raw.normalized();
    gt.check_references()?;
    Ok(gt)
}
