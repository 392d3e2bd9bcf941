//! JSON-Schema fragments: parameter schemas from constraint sets, and
//! structural schemas inferred from example values.

use serde_json::{json, Map, Value};

use crate::llm::{ConstraintSet, ParamType, ParameterSpec};

/// Constraint field → JSON-Schema keyword. `required` is carried on the
/// parameter object instead.
pub const KEYWORD_MAP: [(&str, &str); 7] = [
    ("min_length", "minLength"),
    ("max_length", "maxLength"),
    ("enum", "enum"),
    ("format", "format"),
    ("min", "minimum"),
    ("max", "maximum"),
    ("default_value", "default"),
];

pub fn constraints_schema(ty: ParamType, c: &ConstraintSet) -> Value {
    let mut s = Map::new();
    s.insert("type".into(), json!(ty.as_str()));
    if ty == ParamType::Array {
        s.insert("items".into(), json!({}));
    }
    if let Some(v) = c.min_length {
        s.insert("minLength".into(), json!(v));
    }
    if let Some(v) = c.max_length {
        s.insert("maxLength".into(), json!(v));
    }
    if let Some(v) = &c.enum_values {
        s.insert("enum".into(), json!(v));
    }
    if let Some(v) = &c.format {
        s.insert("format".into(), json!(v));
    }
    if let Some(v) = &c.min {
        s.insert("minimum".into(), Value::Number(v.clone()));
    }
    if let Some(v) = &c.max {
        s.insert("maximum".into(), Value::Number(v.clone()));
    }
    if let Some(v) = &c.default_value {
        s.insert("default".into(), v.clone());
    }
    Value::Object(s)
}

pub fn constraint_to_schema(param: &ParameterSpec) -> Value {
    constraints_schema(param.param_type, &param.constraints)
}

/// Structural schema of an example value: objects become `properties`,
/// arrays take the schema of their first element.
pub fn infer_schema(example: &Value) -> Value {
    match example {
        Value::Null => json!({"type": "null"}),
        Value::Bool(_) => json!({"type": "boolean"}),
        Value::Number(n) if n.is_i64() || n.is_u64() => json!({"type": "integer"}),
        Value::Number(_) => json!({"type": "number"}),
        Value::String(_) => json!({"type": "string"}),
        Value::Array(items) => match items.first() {
            Some(first) => json!({"type": "array", "items": infer_schema(first)}),
            None => json!({"type": "array", "items": {}}),
        },
        Value::Object(map) => {
            let props: Map<String, Value> = map.iter().map(|(k, v)| (k.clone(), infer_schema(v))).collect();
            json!({"type": "object", "properties": props})
        }
    }
}

/// A model-reported return type reduced to what the document needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeShape {
    Primitive(ParamType),
    Named(String),
    ArrayOf(Box<TypeShape>),
    Untyped,
    NoContent,
}

const TRANSPARENT_WRAPPERS: &[&str] = &[
    "ResponseEntity",
    "Optional",
    "Mono",
    "CompletableFuture",
    "Future",
    "Callable",
    "DeferredResult",
    "HttpEntity",
    "Response",
    "ActionResult",
    "Task",
    "ValueTask",
    "Ok",
    "JsonResponse",
    "EntityModel",
    "Resource",
];

const ARRAY_WRAPPERS: &[&str] = &[
    "List",
    "ArrayList",
    "LinkedList",
    "Collection",
    "Set",
    "HashSet",
    "TreeSet",
    "SortedSet",
    "Iterable",
    "Flux",
    "Stream",
    "Page",
    "Slice",
    "IEnumerable",
    "IList",
    "ICollection",
    "IReadOnlyList",
    "IReadOnlyCollection",
    "CollectionModel",
    "list",
    "set",
    "tuple",
    "Sequence",
];

const UNTYPED: &[&str] = &[
    "Object",
    "object",
    "Map",
    "HashMap",
    "Dictionary",
    "IDictionary",
    "dict",
    "Dict",
    "JsonNode",
    "JSONObject",
    "JsonObject",
    "IActionResult",
    "ResponseEntity",
    "Response",
    "HttpResponse",
    "Any",
    "any",
    "JsonResponse",
    "ObjectNode",
    "T",
    "?",
];

fn split_generic(s: &str) -> (&str, Option<&str>) {
    match (
        s.find('<').or_else(|| s.find('[')),
        s.rfind('>').or_else(|| s.rfind(']')),
    ) {
        (Some(open), Some(close)) if close > open => (s[..open].trim(), Some(s[open + 1..close].trim())),
        _ => (s.trim(), None),
    }
}

/// Parses names such as `ResponseEntity<Collection<ProjectStats>>`,
/// `List[User]` or `User[]`.
pub fn parse_type_name(raw: &str) -> TypeShape {
    let t = raw.trim().trim_start_matches('?').trim();
    if t.is_empty() {
        return TypeShape::Untyped;
    }
    if let Some(inner) = t.strip_suffix("[]") {
        return TypeShape::ArrayOf(Box::new(parse_type_name(inner)));
    }
    let (base, arg) = split_generic(t);
    let base = base.rsplit('.').next().unwrap_or(base);
    if matches!(base, "void" | "Void" | "None" | "NoContent" | "Unit") {
        return TypeShape::NoContent;
    }
    if let Some(arg) = arg {
        if TRANSPARENT_WRAPPERS.contains(&base) {
            return parse_type_name(arg);
        }
        if ARRAY_WRAPPERS.contains(&base) {
            return TypeShape::ArrayOf(Box::new(parse_type_name(arg)));
        }
        if matches!(base, "Map" | "HashMap" | "Dictionary" | "IDictionary" | "dict" | "Dict") {
            return TypeShape::Primitive(ParamType::Object);
        }
    }
    if UNTYPED.contains(&base) {
        return TypeShape::Untyped;
    }
    if ARRAY_WRAPPERS.contains(&base) {
        return TypeShape::ArrayOf(Box::new(TypeShape::Untyped));
    }
    match ParamType::normalize(base) {
        Some(ParamType::Object) if is_type_identifier(base) => TypeShape::Named(base.to_string()),
        Some(p) => TypeShape::Primitive(p),
        None => TypeShape::Untyped,
    }
}

fn is_type_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_uppercase()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Component names must match `^[a-zA-Z0-9._-]+$`.
pub fn sanitize_component_name(raw: &str) -> String {
    let s: String = raw
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-') {
                c
            } else {
                '_'
            }
        })
        .collect();
    if s.is_empty() {
        "Schema".into()
    } else {
        s
    }
}
