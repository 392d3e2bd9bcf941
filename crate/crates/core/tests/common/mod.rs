//! Shared helpers for the integration tests: fixture locations, directory
//! copies and an independent brute-force scanner.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use oasgen_core::criteria::{builtin_criteria, find_criteria, FrameworkCriteria};
use regex::Regex;

/// (fixture project, framework it is written for).
pub const PROJECTS: [(&str, &str); 6] = [
    ("catwatch", "spring_boot"),
    ("codebin", "jersey"),
    ("bookshelf", "flask"),
    ("polls", "django"),
    ("todo_webpy", "webpy"),
    ("inventory_aspnet", "aspnet_core"),
];

/// Projects that have a reply script and recorded fixtures.
pub const RECORDED: [&str; 2] = ["catwatch", "codebin"];

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn project(name: &str) -> PathBuf {
    fixtures().join("projects").join(name)
}

pub fn script(name: &str) -> PathBuf {
    fixtures().join("scripts").join(format!("{name}.json"))
}

pub fn recorded(name: &str) -> PathBuf {
    fixtures().join("recorded").join(name)
}

pub fn golden(name: &str) -> PathBuf {
    fixtures().join("golden").join(format!("{name}.openapi.json"))
}

pub fn truth(name: &str) -> PathBuf {
    fixtures().join("truth").join(format!("{name}.json"))
}

pub fn criteria(name: &str) -> FrameworkCriteria {
    find_criteria(&builtin_criteria(), name)
        .expect("builtin framework")
        .clone()
}

pub fn copy_dir(src: &Path, dst: &Path) {
    fs::create_dir_all(dst).unwrap();
    for entry in fs::read_dir(src).unwrap() {
        let entry = entry.unwrap();
        let target = dst.join(entry.file_name());
        if entry.file_type().unwrap().is_dir() {
            copy_dir(&entry.path(), &target);
        } else {
            fs::copy(entry.path(), &target).unwrap();
        }
    }
}

fn all_files(dir: &Path, out: &mut Vec<PathBuf>) {
    let mut entries: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap()).collect();
    entries.sort_by_key(|e| e.file_name());
    for e in entries {
        let name = e.file_name().to_string_lossy().into_owned();
        let ty = e.file_type().unwrap();
        if ty.is_dir() && !name.starts_with('.') {
            all_files(&e.path(), out);
        } else if ty.is_file() {
            out.push(e.path());
        }
    }
}

fn declares(text: &str, name: &str) -> bool {
    let re = Regex::new(&format!(r"(?m)^\s*(def|class)\s+{}\b", regex::escape(name))).unwrap();
    re.is_match(text)
}

/// Entry files and configuration files found by reading every file and
/// trying every pattern. Django handlers resolve to a `.py` file declaring
/// the handler name, preferring files next to the routing file.
pub fn brute_force(root: &Path, c: &FrameworkCriteria) -> (Vec<PathBuf>, Vec<PathBuf>) {
    let root = fs::canonicalize(root).unwrap();
    let mut files = Vec::new();
    all_files(&root, &mut files);
    let patterns: Vec<Regex> = c.regex.iter().map(|p| Regex::new(p).unwrap()).collect();
    let read = |p: &Path| String::from_utf8_lossy(&fs::read(p).unwrap()).into_owned();
    let candidates: Vec<&PathBuf> = files
        .iter()
        .filter(|f| f.file_name().unwrap().to_string_lossy().ends_with(&c.suffix))
        .collect();

    let Some(config_names) = &c.configuration_files else {
        let mut entries: Vec<PathBuf> = candidates
            .into_iter()
            .filter(|f| {
                let text = read(f);
                patterns.iter().any(|p| p.is_match(&text))
            })
            .cloned()
            .collect();
        entries.sort();
        return (entries, Vec::new());
    };

    let handler_re = Regex::new(r#"path\(\s*r?['"][^'"]*['"]\s*,\s*([A-Za-z_][\w.]*)"#).unwrap();
    let mut configs = Vec::new();
    let mut entries = Vec::new();
    for f in &candidates {
        let name = f.file_name().unwrap().to_string_lossy().into_owned();
        if !config_names.contains(&name) {
            continue;
        }
        let text = read(f);
        if !patterns.iter().any(|p| p.is_match(&text)) {
            continue;
        }
        configs.push((*f).clone());
        for caps in handler_re.captures_iter(&text) {
            let handler = caps[1].trim_end_matches(".as_view");
            if handler == "include" {
                continue;
            }
            let symbol = handler.rsplit('.').next().unwrap();
            let dir = f.parent().unwrap();
            let found = candidates
                .iter()
                .filter(|g| g.parent() == Some(dir))
                .chain(candidates.iter())
                .find(|g| declares(&read(g), symbol));
            if let Some(g) = found {
                entries.push((*g).clone());
            }
        }
    }
    entries.sort();
    entries.dedup();
    configs.sort();
    (entries, configs)
}

use oasgen_core::llm::{ChatProvider, ChatRequest, FixtureProvider, RecordingProvider, ScriptedProvider};
use oasgen_core::oas::to_json;
use oasgen_core::{generate, GenerateOutcome, RunConfig};

pub fn run_config(name: &str) -> RunConfig {
    let mut cfg = RunConfig::new(project(name));
    cfg.title = Some(name.to_string());
    cfg
}

/// Replays the committed fixtures of `name`.
pub fn run_offline(name: &str) -> GenerateOutcome {
    generate(&run_config(name), &FixtureProvider::new(recorded(name))).expect("offline generation succeeds")
}

pub fn scripted(name: &str) -> ScriptedProvider {
    ScriptedProvider::from_json(&fs::read_to_string(script(name)).unwrap()).unwrap()
}

/// Re-records the fixtures of `name` from its reply script and rewrites the
/// golden document. Only runs when `OASGEN_UPDATE_FIXTURES` is set.
pub fn maybe_regenerate(name: &str) {
    if std::env::var_os("OASGEN_UPDATE_FIXTURES").is_none() {
        return;
    }
    let dir = recorded(name);
    let _ = fs::remove_dir_all(&dir);
    let provider = RecordingProvider::new(scripted(name), FixtureProvider::new(&dir));
    let outcome = generate(&run_config(name), &provider).unwrap();
    fs::create_dir_all(golden(name).parent().unwrap()).unwrap();
    fs::write(golden(name), to_json(&outcome.document)).unwrap();
}

/// Counts requests and forwards them.
pub struct Counting<P> {
    pub inner: P,
    pub seen: std::sync::Mutex<Vec<String>>,
}

impl<P> Counting<P> {
    pub fn new(inner: P) -> Self {
        Self {
            inner,
            seen: std::sync::Mutex::new(Vec::new()),
        }
    }
}

impl<P: ChatProvider> ChatProvider for Counting<P> {
    fn complete(&self, request: &ChatRequest) -> Result<String, oasgen_core::error::ProviderError> {
        self.seen.lock().unwrap().push(request.hash());
        self.inner.complete(request)
    }
}

pub mod constraints {
    use std::collections::BTreeSet;

    use oasgen_core::eval::extract_entities;
    use oasgen_core::llm::{
        ConstraintSet, EndpointMethod, EndpointRecord, HttpMethod, ParamPosition, ParamType, ParameterSpec,
        ResponseSpec,
    };
    use oasgen_core::oas::{assemble, constraint_to_schema, to_json, validate_document, Info, KEYWORD_MAP};
    use proptest::prelude::*;
    use serde_json::{Number, Value};

    fn number() -> impl Strategy<Value = Number> {
        prop_oneof![
            (-10_000i64..10_000).prop_map(Number::from),
            (-1.0e6f64..1.0e6).prop_map(|f| Number::from_f64(f).unwrap()),
        ]
    }

    fn default_value() -> impl Strategy<Value = Value> {
        prop_oneof![
            "[a-zA-Z0-9 _-]{1,12}".prop_map(Value::String),
            (-1000i64..1000).prop_map(Value::from),
            any::<bool>().prop_map(Value::Bool),
        ]
    }

    pub fn constraint_set() -> impl Strategy<Value = ConstraintSet> {
        (
            proptest::option::of(0u64..500),
            proptest::option::of(0u64..500),
            proptest::option::of(proptest::collection::btree_set("[A-Za-z][A-Za-z0-9_]{0,7}", 1..6)),
            proptest::option::of(prop_oneof![
                Just("date-time".to_string()),
                Just("email".to_string()),
                Just("yyyy-mm-dd".to_string()),
                "[a-z]{3,10}"
            ]),
            proptest::option::of(number()),
            proptest::option::of(number()),
            proptest::option::of(default_value()),
        )
            .prop_map(
                |(min_length, max_length, enum_values, format, min, max, default_value)| ConstraintSet {
                    min_length,
                    max_length,
                    enum_values: enum_values.map(|s| s.into_iter().collect()),
                    format,
                    min,
                    max,
                    default_value,
                },
            )
    }

    pub fn parameter() -> impl Strategy<Value = ParameterSpec> {
        let ty = prop_oneof![
            Just(ParamType::String),
            Just(ParamType::Integer),
            Just(ParamType::Number),
            Just(ParamType::Boolean),
            Just(ParamType::Array),
            Just(ParamType::Object),
        ];
        let pos = prop_oneof![
            Just(ParamPosition::Query),
            Just(ParamPosition::Header),
            Just(ParamPosition::Path),
            Just(ParamPosition::Cookie),
            Just(ParamPosition::Body),
        ];
        (ty, pos, any::<bool>(), constraint_set()).prop_map(|(param_type, position, required, constraints)| {
            ParameterSpec {
                name: if position == ParamPosition::Path {
                    "id".into()
                } else {
                    "p".into()
                },
                param_type,
                required: required || position == ParamPosition::Path,
                position,
                description: String::new(),
                constraints,
            }
        })
    }

    /// Constraint text as the ground-truth files write it: integral numbers
    /// without a fraction, enumerations as a sorted JSON list.
    fn text(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Number(n) => {
                let f = n.as_f64().unwrap();
                if f.fract() == 0.0 {
                    format!("{}", f as i64)
                } else {
                    n.to_string()
                }
            }
            other => other.to_string(),
        }
    }

    fn expected(p: &ParameterSpec) -> BTreeSet<(String, String)> {
        let c = &p.constraints;
        let mut out = BTreeSet::new();
        let mut put = |k: &str, v: String| {
            out.insert((k.to_string(), v));
        };
        if let Some(v) = c.min_length {
            put("minLength", v.to_string());
        }
        if let Some(v) = c.max_length {
            put("maxLength", v.to_string());
        }
        if let Some(v) = &c.enum_values {
            let mut sorted = v.clone();
            sorted.sort();
            put("enum", serde_json::to_string(&sorted).unwrap());
        }
        if let Some(v) = &c.format {
            put("format", v.clone());
        }
        if let Some(v) = &c.min {
            put("minimum", text(&Value::Number(v.clone())));
        }
        if let Some(v) = &c.max {
            put("maximum", text(&Value::Number(v.clone())));
        }
        if let Some(v) = &c.default_value {
            put("default", text(v));
        }
        if p.required {
            put("required", "true".into());
        }
        out
    }

    /// Checks the keyword set of the emitted schema, then assembles a
    /// document, serializes it, parses it back and compares the extracted
    /// constraint entities with the ones the parameter carries.
    pub fn round_trip(p: &ParameterSpec) -> Result<(), String> {
        let schema = constraint_to_schema(p);
        let emitted: BTreeSet<&str> = schema
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .filter(|k| *k != "type" && *k != "items")
            .collect();
        let c = serde_json::to_value(&p.constraints).unwrap();
        let wanted: BTreeSet<&str> = KEYWORD_MAP
            .iter()
            .filter(|(field, _)| c.get(*field).is_some())
            .map(|(_, keyword)| *keyword)
            .collect();
        if emitted != wanted {
            return Err(format!("keywords {emitted:?}, expected {wanted:?}"));
        }

        let path = if p.position == ParamPosition::Path {
            "/r/{id}"
        } else {
            "/r"
        };
        let record = EndpointRecord {
            method: EndpointMethod {
                endpoint_path: path.into(),
                http_method: HttpMethod::Post,
                method_name: "r".into(),
            },
            summary: None,
            parameters: vec![p.clone()],
            responses: vec![ResponseSpec {
                status_code: 200,
                return_schema: None,
                return_type: None,
                exception: None,
                description: "ok".into(),
            }],
            source: "R.java".into(),
        };
        let doc = assemble(&[record], Info::default())
            .map_err(|e| e.to_string())?
            .document;
        let reparsed: Value = serde_json::from_str(&to_json(&doc)).unwrap();
        let problems = validate_document(&reparsed);
        if !problems.is_empty() {
            return Err(format!("invalid document: {problems:?}"));
        }
        let name = if p.position == ParamPosition::Path {
            "p1"
        } else {
            p.name.as_str()
        };
        let got: BTreeSet<(String, String)> = extract_entities(&reparsed)
            .parameter_constraints
            .into_iter()
            .filter(|(_, _, n, _, _)| n == name)
            .map(|(_, _, _, k, v)| (k, v))
            .collect();
        let want = expected(p);
        if got != want {
            return Err(format!("extracted {got:?}, expected {want:?}"));
        }
        Ok(())
    }
}

pub mod mutations {
    use std::fs;
    use std::path::PathBuf;

    use proptest::prelude::*;

    use super::{brute_force, criteria};

    #[derive(Debug, Clone)]
    pub enum Mutation {
        /// A file with the framework suffix whose content cannot match.
        AddPlain {
            dir_pick: usize,
            name: String,
            body: String,
        },
        /// A file with some other suffix that does contain route syntax.
        AddForeign {
            name: String,
        },
        RemoveNonEntry {
            pick: usize,
        },
    }

    pub fn mutation() -> impl Strategy<Value = Mutation> {
        prop_oneof![
            (any::<usize>(), "[a-z]{1,8}", "[a-z \n]{0,200}").prop_map(|(dir_pick, name, body)| Mutation::AddPlain {
                dir_pick,
                name,
                body
            }),
            "[a-z]{1,8}".prop_map(|name| Mutation::AddForeign { name }),
            any::<usize>().prop_map(|pick| Mutation::RemoveNonEntry { pick }),
        ]
    }

    fn dirs_of(root: &std::path::Path) -> Vec<PathBuf> {
        walkdir::WalkDir::new(root)
            .into_iter()
            .filter_map(Result::ok)
            .filter(|e| e.file_type().is_dir())
            .map(|e| e.into_path())
            .collect()
    }

    pub fn apply(root: &std::path::Path, framework: &str, m: &Mutation) {
        let c = criteria(framework);
        match m {
            Mutation::AddPlain { dir_pick, name, body } => {
                let dirs = dirs_of(root);
                let dir = &dirs[dir_pick % dirs.len()];
                let path = dir.join(format!("{name}{}", c.suffix));
                if !path.exists() {
                    fs::write(path, body).unwrap();
                }
            }
            Mutation::AddForeign { name } => {
                let text = "@GetMapping(\"/x\")\n@app.route(\"/x\")\n[HttpGet]\nurlpatterns = [path('x/', views.x)]\n";
                fs::write(root.join(format!("{name}.route.txt")), text).unwrap();
            }
            Mutation::RemoveNonEntry { pick } => {
                let (entries, configs) = brute_force(root, &c);
                let mut removable: Vec<PathBuf> = walkdir::WalkDir::new(root)
                    .into_iter()
                    .filter_map(Result::ok)
                    .filter(|e| e.file_type().is_file())
                    .map(|e| fs::canonicalize(e.path()).unwrap())
                    .filter(|p| !entries.contains(p) && !configs.contains(p))
                    // Python handlers resolve through sibling modules; keep them.
                    .filter(|p| c.configuration_files.is_none() || !p.to_string_lossy().ends_with(".py"))
                    .collect();
                removable.sort();
                if !removable.is_empty() {
                    fs::remove_file(&removable[pick % removable.len()]).unwrap();
                }
            }
        }
    }
}
