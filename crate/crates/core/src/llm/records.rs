//! The three record kinds the model is asked for, and the lenient-but-strict
//! conversion from reply JSON into them. Anything that cannot be normalized
//! into a valid record is reported as a schema violation so the caller can
//! retry with feedback.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum HttpMethod {
    Get,
    Post,
    Put,
    Patch,
    Delete,
    Head,
    Options,
}

impl HttpMethod {
    pub const ALL: [HttpMethod; 7] = [
        HttpMethod::Get,
        HttpMethod::Post,
        HttpMethod::Put,
        HttpMethod::Patch,
        HttpMethod::Delete,
        HttpMethod::Head,
        HttpMethod::Options,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            HttpMethod::Get => "GET",
            HttpMethod::Post => "POST",
            HttpMethod::Put => "PUT",
            HttpMethod::Patch => "PATCH",
            HttpMethod::Delete => "DELETE",
            HttpMethod::Head => "HEAD",
            HttpMethod::Options => "OPTIONS",
        }
    }

    pub fn lowercase(self) -> &'static str {
        match self {
            HttpMethod::Get => "get",
            HttpMethod::Post => "post",
            HttpMethod::Put => "put",
            HttpMethod::Patch => "patch",
            HttpMethod::Delete => "delete",
            HttpMethod::Head => "head",
            HttpMethod::Options => "options",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        let upper = s.trim().to_ascii_uppercase();
        Self::ALL.into_iter().find(|m| m.as_str() == upper)
    }
}

impl fmt::Display for HttpMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EndpointMethod {
    pub endpoint_path: String,
    pub http_method: HttpMethod,
    pub method_name: String,
}

impl EndpointMethod {
    pub fn key(&self) -> (String, HttpMethod) {
        (self.endpoint_path.clone(), self.http_method)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamType {
    String,
    Number,
    Integer,
    Object,
    Array,
    Boolean,
}

impl ParamType {
    pub fn as_str(self) -> &'static str {
        match self {
            ParamType::String => "string",
            ParamType::Number => "number",
            ParamType::Integer => "integer",
            ParamType::Object => "object",
            ParamType::Array => "array",
            ParamType::Boolean => "boolean",
        }
    }

    /// Maps the type names models actually emit (`int`, `String`, `List<X>`,
    /// user-defined class names) onto the closed vocabulary.
    pub fn normalize(raw: &str) -> Option<Self> {
        let trimmed = raw.trim();
        let base = trimmed.split(['<', '[']).next().unwrap_or(trimmed).trim();
        if trimmed.ends_with("[]") {
            return Some(ParamType::Array);
        }
        let lower = base.to_ascii_lowercase();
        let t =
            match lower.as_str() {
                "string" | "str" | "char" | "character" | "text" | "date" | "datetime" | "date-time" | "localdate"
                | "localdatetime" | "instant" | "zoneddatetime" | "offsetdatetime" | "uuid" | "guid" | "timestamp"
                | "file" | "multipartfile" | "iformfile" => ParamType::String,
                "integer" | "int" | "int32" | "int64" | "long" | "short" | "byte" | "biginteger" | "uint" | "ulong" => {
                    ParamType::Integer
                }
                "number" | "float" | "double" | "decimal" | "bigdecimal" | "numeric" => ParamType::Number,
                "boolean" | "bool" => ParamType::Boolean,
                "array" | "list" | "set" | "collection" | "tuple" | "ienumerable" | "iList" | "arraylist"
                | "hashset" => ParamType::Array,
                "object" | "dict" | "map" | "hashmap" | "json" | "jsonobject" | "dictionary" | "idictionary"
                | "any" => ParamType::Object,
                _ if base.chars().next().is_some_and(|c| c.is_ascii_uppercase())
                    && base.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.') =>
                {
                    ParamType::Object
                }
                _ => return None,
            };
        Some(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamPosition {
    Query,
    Path,
    Header,
    Cookie,
    Body,
}

impl ParamPosition {
    pub fn as_str(self) -> &'static str {
        match self {
            ParamPosition::Query => "query",
            ParamPosition::Path => "path",
            ParamPosition::Header => "header",
            ParamPosition::Cookie => "cookie",
            ParamPosition::Body => "body",
        }
    }

    pub fn normalize(raw: &str) -> Option<Self> {
        let p = match raw.trim().to_ascii_lowercase().as_str() {
            "query" | "querystring" | "query_string" | "requestparam" => ParamPosition::Query,
            "path" | "pathvariable" | "url" | "route" => ParamPosition::Path,
            "header" | "headers" | "requestheader" => ParamPosition::Header,
            "cookie" | "cookies" | "cookievalue" => ParamPosition::Cookie,
            "body" | "requestbody" | "request_body" | "form" | "formdata" | "form-data" | "json" | "payload" => {
                ParamPosition::Body
            }
            _ => return None,
        };
        Some(p)
    }
}

/// Value restrictions on one parameter.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConstraintSet {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_length: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_length: Option<u64>,
    #[serde(default, rename = "enum", skip_serializing_if = "Option::is_none")]
    pub enum_values: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default_value: Option<Value>,
}

impl ConstraintSet {
    pub fn is_empty(&self) -> bool {
        *self == ConstraintSet::default()
    }

    /// Human-readable invariant violations; empty when the set is consistent.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let (Some(lo), Some(hi)) = (self.min_length, self.max_length) {
            if lo > hi {
                out.push(format!("min_length {lo} is greater than max_length {hi}"));
            }
        }
        if let (Some(lo), Some(hi)) = (&self.min, &self.max) {
            if lo.as_f64() > hi.as_f64() {
                out.push(format!("min {lo} is greater than max {hi}"));
            }
        }
        if let Some(values) = &self.enum_values {
            if values.is_empty() {
                out.push("enum must not be empty".into());
            }
            let mut seen = std::collections::HashSet::new();
            if values.iter().any(|v| !seen.insert(v)) {
                out.push("enum contains duplicates".into());
            }
        }
        out
    }

    /// Drops whichever bound pairs contradict each other.
    pub fn drop_contradictions(&mut self) -> Vec<String> {
        let mut dropped = Vec::new();
        if let (Some(lo), Some(hi)) = (self.min_length, self.max_length) {
            if lo > hi {
                self.min_length = None;
                self.max_length = None;
                dropped.push(format!("min_length {lo} > max_length {hi}"));
            }
        }
        if let (Some(lo), Some(hi)) = (&self.min, &self.max) {
            if lo.as_f64() > hi.as_f64() {
                dropped.push(format!("min {lo} > max {hi}"));
                self.min = None;
                self.max = None;
            }
        }
        dropped
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterSpec {
    pub name: String,
    #[serde(rename = "type")]
    pub param_type: ParamType,
    pub required: bool,
    pub position: ParamPosition,
    #[serde(default)]
    pub description: String,
    #[serde(default, skip_serializing_if = "ConstraintSet::is_empty")]
    pub constraints: ConstraintSet,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResponseSpec {
    pub status_code: u16,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub return_schema: Option<Value>,
    /// Type name the model reported for the returned data, e.g. `List<User>`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub return_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exception: Option<String>,
    #[serde(default)]
    pub description: String,
}

/// Stage-B result for one endpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsAndResponses {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
    pub parameters: Vec<ParameterSpec>,
    pub responses: Vec<ResponseSpec>,
}

// ---------------------------------------------------------------------------
// Reply conversion
// ---------------------------------------------------------------------------

fn as_list(value: &Value) -> Vec<&Value> {
    match value {
        Value::Array(items) => items.iter().collect(),
        Value::Null => Vec::new(),
        other => vec![other],
    }
}

fn as_object<'a>(value: &'a Value, what: &str) -> Result<&'a Map<String, Value>, String> {
    value
        .as_object()
        .ok_or_else(|| format!("{what} must be a JSON object, got {value}"))
}

fn string_field(obj: &Map<String, Value>, keys: &[&str]) -> Option<String> {
    keys.iter().find_map(|k| match obj.get(*k) {
        Some(Value::String(s)) => Some(s.trim().to_string()),
        Some(Value::Number(n)) => Some(n.to_string()),
        Some(Value::Bool(b)) => Some(b.to_string()),
        _ => None,
    })
}

fn is_absent_text(s: &str) -> bool {
    matches!(
        s.trim().to_ascii_lowercase().as_str(),
        "" | "null" | "none" | "n/a" | "na" | "nil" | "undefined" | "not specified" | "unspecified"
    )
}

/// Normalizes a model-reported path to an OAS path template.
///
/// Leading slash added, scheme/host dropped, regex anchors removed and
/// `<int:id>`, `(?P<id>...)`, `:id` placeholders rewritten to `{id}`.
pub fn normalize_path(raw: &str) -> String {
    let mut p = raw.trim().to_string();
    if let Some(idx) = p.find("://") {
        let after = &p[idx + 3..];
        p = after.find('/').map(|i| after[i..].to_string()).unwrap_or_default();
    }
    p = p.trim_start_matches('^').trim_end_matches('$').to_string();
    let mut out = String::with_capacity(p.len());
    let chars: Vec<char> = p.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c == '('
            && chars.get(i + 1) == Some(&'?')
            && chars.get(i + 2) == Some(&'P')
            && chars.get(i + 3) == Some(&'<')
        {
            // (?P<name>regex)
            let start = i + 4;
            let end = chars[start..].iter().position(|&c| c == '>').map(|e| start + e);
            if let Some(end) = end {
                let name: String = chars[start..end].iter().collect();
                let mut depth = 1;
                let mut j = end + 1;
                while j < chars.len() && depth > 0 {
                    match chars[j] {
                        '(' => depth += 1,
                        ')' => depth -= 1,
                        _ => {}
                    }
                    j += 1;
                }
                out.push('{');
                out.push_str(&name);
                out.push('}');
                i = j;
                continue;
            }
        }
        if c == '<' {
            if let Some(end) = chars[i..].iter().position(|&c| c == '>').map(|e| i + e) {
                let inner: String = chars[i + 1..end].iter().collect();
                let name = inner.rsplit(':').next().unwrap_or(&inner).trim();
                out.push('{');
                out.push_str(name);
                out.push('}');
                i = end + 1;
                continue;
            }
        }
        if c == ':' && (i == 0 || chars[i - 1] == '/') {
            let mut j = i + 1;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            if j > i + 1 {
                out.push('{');
                out.extend(&chars[i + 1..j]);
                out.push('}');
                i = j;
                continue;
            }
        }
        out.push(c);
        i += 1;
    }
    // `{id:int}` route constraints (ASP.NET) keep only the name.
    let mut cleaned = String::with_capacity(out.len());
    let mut in_brace = false;
    let mut skipping = false;
    for c in out.chars() {
        match c {
            '{' => {
                in_brace = true;
                skipping = false;
                cleaned.push(c);
            }
            '}' => {
                in_brace = false;
                skipping = false;
                cleaned.push(c);
            }
            ':' | '?' if in_brace => skipping = true,
            _ if skipping => {}
            _ => cleaned.push(c),
        }
    }
    if let Some(q) = cleaned.find('?') {
        cleaned.truncate(q);
    }
    let mut path = String::from("/");
    for segment in cleaned.split('/').filter(|s| !s.is_empty()) {
        if path.len() > 1 {
            path.push('/');
        }
        path.push_str(segment);
    }
    if cleaned.ends_with('/') && path.len() > 1 {
        path.push('/');
    }
    path
}

/// Converts a stage-A reply into endpoint methods, deduplicated by
/// (path, method) with the first occurrence kept.
pub fn parse_endpoint_methods(value: &Value) -> Result<Vec<EndpointMethod>, String> {
    let mut out: Vec<EndpointMethod> = Vec::new();
    for (i, item) in as_list(value).into_iter().enumerate() {
        let obj = as_object(item, &format!("element {i}"))?;
        let path = string_field(obj, &["endpoint_path", "path", "url"])
            .ok_or_else(|| format!("element {i} lacks a string `endpoint_path`"))?;
        let method_raw = string_field(obj, &["http_method", "method", "endpoint_method"])
            .ok_or_else(|| format!("element {i} lacks a string `http_method`"))?;
        let http_method = HttpMethod::parse(&method_raw)
            .ok_or_else(|| format!("element {i} has unsupported http_method {method_raw:?}"))?;
        let method_name = string_field(obj, &["method_name", "name", "handler"])
            .filter(|s| !s.is_empty())
            .ok_or_else(|| format!("element {i} lacks a string `method_name`"))?;
        let ep = EndpointMethod {
            endpoint_path: normalize_path(&path),
            http_method,
            method_name,
        };
        if !out.iter().any(|e| e.key() == ep.key()) {
            out.push(ep);
        }
    }
    Ok(out)
}

fn parse_bool(value: Option<&Value>) -> Result<Option<bool>, String> {
    match value {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Bool(b)) => Ok(Some(*b)),
        Some(Value::String(s)) => match s.trim().to_ascii_lowercase().as_str() {
            "true" | "yes" | "required" => Ok(Some(true)),
            "false" | "no" | "optional" => Ok(Some(false)),
            other => Err(format!("`require` must be true or false, got {other:?}")),
        },
        Some(Value::Number(n)) => Ok(Some(n.as_f64() != Some(0.0))),
        Some(other) => Err(format!("`require` must be true or false, got {other}")),
    }
}

fn parse_parameter(item: &Value, i: usize) -> Result<ParameterSpec, String> {
    let obj = as_object(item, &format!("parameter {i}"))?;
    let name = string_field(obj, &["name"])
        .filter(|s| !s.is_empty())
        .ok_or_else(|| format!("parameter {i} lacks a `name`"))?;
    let type_raw = string_field(obj, &["type", "data_type"]).unwrap_or_else(|| "string".into());
    let param_type = ParamType::normalize(&type_raw).ok_or_else(|| {
        format!("parameter `{name}` has type {type_raw:?}; use one of string, number, integer, object, array, boolean")
    })?;
    let position_raw = string_field(obj, &["position", "in", "location"]).unwrap_or_else(|| "query".into());
    let position = ParamPosition::normalize(&position_raw).ok_or_else(|| {
        format!("parameter `{name}` has position {position_raw:?}; use query, path, header, cookie or body")
    })?;
    let required = parse_bool(obj.get("require").or_else(|| obj.get("required")))?.unwrap_or(false);
    let description = string_field(obj, &["description"]).unwrap_or_default();
    Ok(ParameterSpec {
        name,
        param_type,
        required: required || position == ParamPosition::Path,
        position,
        description,
        constraints: ConstraintSet::default(),
    })
}

fn parse_status(value: Option<&Value>) -> Result<u16, String> {
    let code = match value {
        Some(Value::Number(n)) => n.as_u64(),
        Some(Value::String(s)) => s.split_whitespace().next().and_then(|t| t.parse::<u64>().ok()),
        _ => None,
    };
    match code {
        Some(c) if (100..=599).contains(&c) => Ok(c as u16),
        _ => Err(format!(
            "response status_code must be an integer between 100 and 599, got {}",
            value.map(|v| v.to_string()).unwrap_or_else(|| "nothing".into())
        )),
    }
}

fn parse_response(item: &Value) -> Result<ResponseSpec, String> {
    let obj = as_object(item, "response")?;
    let status_code = parse_status(
        obj.get("status_code")
            .or_else(|| obj.get("code"))
            .or_else(|| obj.get("status")),
    )?;
    let return_schema = obj
        .get("return_schema")
        .or_else(|| obj.get("schema"))
        .filter(|v| !v.is_null())
        .filter(|v| !matches!(v, Value::String(s) if is_absent_text(s)))
        .cloned();
    let return_type = string_field(obj, &["return_type", "type_name"]).filter(|s| !is_absent_text(s));
    let exception = string_field(obj, &["exception", "exception_message"]).filter(|s| !is_absent_text(s));
    let description = string_field(obj, &["description", "message"]).unwrap_or_default();
    Ok(ResponseSpec {
        status_code,
        return_schema,
        return_type,
        exception,
        description,
    })
}

/// Converts a stage-B reply. When the reply lists several endpoints, the one
/// matching `ep` by path and method (or else by name) is used.
pub fn parse_params_and_responses(value: &Value, ep: &EndpointMethod) -> Result<ParamsAndResponses, String> {
    let items = as_list(value);
    if items.is_empty() {
        return Err("reply is empty; expected one object describing the endpoint".into());
    }
    let pick = items
        .iter()
        .find(|item| {
            let path = item.get("endpoint_path").and_then(Value::as_str).map(normalize_path);
            let method = item
                .get("endpoint_method")
                .or_else(|| item.get("http_method"))
                .and_then(Value::as_str)
                .and_then(HttpMethod::parse);
            path.as_deref() == Some(ep.endpoint_path.as_str()) && method == Some(ep.http_method)
        })
        .or_else(|| {
            items
                .iter()
                .find(|item| item.get("method_name").and_then(Value::as_str) == Some(ep.method_name.as_str()))
        })
        .copied()
        .unwrap_or(items[0]);
    let obj = as_object(pick, "endpoint description")?;

    let mut parameters: Vec<ParameterSpec> = Vec::new();
    for (i, item) in as_list(obj.get("parameters").unwrap_or(&Value::Null))
        .into_iter()
        .enumerate()
    {
        let p = parse_parameter(item, i)?;
        if !parameters.iter().any(|q| q.name == p.name && q.position == p.position) {
            parameters.push(p);
        }
    }
    let response_value = obj
        .get("response")
        .or_else(|| obj.get("responses"))
        .unwrap_or(&Value::Null);
    let responses = as_list(response_value)
        .into_iter()
        .map(parse_response)
        .collect::<Result<Vec<_>, _>>()?;
    let summary = string_field(obj, &["description", "summary"]).filter(|s| !s.is_empty());
    Ok(ParamsAndResponses {
        summary,
        parameters,
        responses,
    })
}

fn parse_length(obj: &Map<String, Value>, key: &str) -> Result<Option<u64>, String> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::Number(n)) => match n
            .as_u64()
            .or_else(|| n.as_f64().filter(|f| *f >= 0.0 && f.fract() == 0.0).map(|f| f as u64))
        {
            Some(v) => Ok(Some(v)),
            None => Err(format!("`{key}` must be a nonnegative integer, got {n}")),
        },
        Some(Value::String(s)) if is_absent_text(s) => Ok(None),
        Some(Value::String(s)) => s
            .trim()
            .parse::<u64>()
            .map(Some)
            .map_err(|_| format!("`{key}` must be a nonnegative integer, got {s:?}")),
        Some(other) => Err(format!("`{key}` must be a nonnegative integer, got {other}")),
    }
}

fn parse_number(obj: &Map<String, Value>, keys: &[&str]) -> Result<Option<Number>, String> {
    let Some((key, value)) = keys.iter().find_map(|k| obj.get(*k).map(|v| (*k, v))) else {
        return Ok(None);
    };
    match value {
        Value::Null => Ok(None),
        Value::Number(n) => Ok(Some(n.clone())),
        Value::String(s) if is_absent_text(s) => Ok(None),
        Value::String(s) => {
            let t = s.trim();
            if let Ok(i) = t.parse::<i64>() {
                Ok(Some(Number::from(i)))
            } else if let Some(n) = t.parse::<f64>().ok().and_then(Number::from_f64) {
                Ok(Some(n))
            } else {
                Err(format!("`{key}` must be a number, got {s:?}"))
            }
        }
        other => Err(format!("`{key}` must be a number, got {other}")),
    }
}

/// Coerces a reported default to the parameter's declared type.
pub fn coerce_default(value: &Value, ty: ParamType) -> Option<Value> {
    match (ty, value) {
        (_, Value::Null) => None,
        (_, Value::String(s)) if is_absent_text(s) => None,
        (ParamType::Boolean, Value::Bool(_)) => Some(value.clone()),
        (ParamType::Boolean, Value::String(s)) => match s.trim().to_ascii_lowercase().as_str() {
            "true" => Some(Value::Bool(true)),
            "false" => Some(Value::Bool(false)),
            _ => Some(value.clone()),
        },
        (ParamType::Integer, Value::String(s)) => s.trim().parse::<i64>().map(Value::from).ok().or(Some(value.clone())),
        (ParamType::Number, Value::String(s)) => s
            .trim()
            .parse::<f64>()
            .ok()
            .and_then(Number::from_f64)
            .map(Value::Number)
            .or(Some(value.clone())),
        (ParamType::String, Value::Number(n)) => Some(Value::String(n.to_string())),
        (ParamType::String, Value::Bool(b)) => Some(Value::String(b.to_string())),
        _ => Some(value.clone()),
    }
}

/// Converts a stage-C reply for `param`. Listing several parameters is fine;
/// the element named like `param` is used.
pub fn parse_constraints(value: &Value, param: &ParameterSpec) -> Result<ConstraintSet, String> {
    let items = as_list(value);
    let pick = items
        .iter()
        .find(|v| v.get("name").and_then(Value::as_str) == Some(param.name.as_str()))
        .or_else(|| {
            items.iter().find(|v| {
                v.get("name")
                    .and_then(Value::as_str)
                    .is_some_and(|n| n.eq_ignore_ascii_case(&param.name))
            })
        })
        .or_else(|| if items.len() == 1 { items.first() } else { None })
        .copied();
    let Some(pick) = pick else {
        return if items.is_empty() {
            Ok(ConstraintSet::default())
        } else {
            Err(format!("reply does not describe parameter `{}`", param.name))
        };
    };
    let obj = as_object(pick, "parameter constraints")?;
    let enum_values = match obj.get("enum") {
        None | Some(Value::Null) => None,
        Some(Value::Array(items)) => {
            let mut seen = std::collections::HashSet::new();
            let values: Vec<String> = items
                .iter()
                .map(|v| match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .filter(|v| seen.insert(v.clone()))
                .collect();
            (!values.is_empty()).then_some(values)
        }
        Some(Value::String(s)) if is_absent_text(s) => None,
        Some(other) => return Err(format!("`enum` must be a list of values, got {other}")),
    };
    let format = string_field(obj, &["format", "pattern"]).filter(|s| !is_absent_text(s));
    // An enumeration member such as `NONE` is a real default, not a blank.
    let default_value = obj
        .get("default_value")
        .or_else(|| obj.get("default"))
        .and_then(|v| match v {
            Value::String(s) if enum_values.as_ref().is_some_and(|e| e.contains(s)) => Some(v.clone()),
            _ => coerce_default(v, param.param_type),
        });
    Ok(ConstraintSet {
        min_length: parse_length(obj, "min_length")?,
        max_length: parse_length(obj, "max_length")?,
        enum_values,
        format,
        min: parse_number(obj, &["min", "minimum"])?,
        max: parse_number(obj, &["max", "maximum"])?,
        default_value,
    })
}
