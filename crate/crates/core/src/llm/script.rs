//! A provider that answers from a hand-written reply script instead of a
//! model. Used to author fixture sets and for demos without network access.
//!
//! Script format (JSON):
//!
//! ```json
//! {
//!   "endpoints":   { "<entry file, root-relative>": <reply> },
//!   "details":     { "<METHOD> <path>": <reply> },
//!   "constraints": { "<METHOD> <path> <parameter>": <reply> }
//! }
//! ```
//!
//! A reply is either a string, sent verbatim, or any other JSON value, sent
//! as a fenced `json` block. Missing `endpoints` and `constraints` entries
//! answer `[]`; a missing `details` entry is an error.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::provider::{ChatProvider, ChatRequest};
use crate::error::ProviderError;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReplyScript {
    pub endpoints: BTreeMap<String, Value>,
    pub details: BTreeMap<String, Value>,
    pub constraints: BTreeMap<String, Value>,
}

#[derive(Debug, Clone)]
pub struct ScriptedProvider {
    script: ReplyScript,
}

/// What a request asks, recovered from its first message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Question {
    Endpoints { entry_file: String },
    Details { endpoint: String },
    Constraints { endpoint: String, parameter: String },
}

fn between<'a>(text: &'a str, start: &str, end: &str) -> Option<&'a str> {
    let i = text.find(start)? + start.len();
    let j = text[i..].find(end)?;
    Some(&text[i..i + j])
}

/// `name (GET /path)` → `GET /path`.
fn endpoint_of_label(label: &str) -> Option<String> {
    let open = label.rfind(" (")?;
    Some(label[open + 2..].trim_end_matches(')').to_string())
}

pub fn classify(prompt: &str) -> Option<Question> {
    if prompt.starts_with("Read the endpoint entry code") {
        let header = between(prompt, "File: ", "\n")?;
        return Some(Question::Endpoints {
            entry_file: header.trim().to_string(),
        });
    }
    if let Some(param) = between(prompt, "For the specific parameter: ", " in endpoint method named: ") {
        let label = between(prompt, " in endpoint method named: ", ",1.What is its type")?;
        return Some(Question::Constraints {
            endpoint: endpoint_of_label(label)?,
            parameter: param.to_string(),
        });
    }
    let label = between(
        prompt,
        "For the specific endpoint method named: ",
        ", how many parameters",
    )?;
    Some(Question::Details {
        endpoint: endpoint_of_label(label)?,
    })
}

fn render(reply: &Value) -> String {
    match reply {
        Value::String(s) => s.clone(),
        other => format!(
            "```json\n{}\n```",
            serde_json::to_string_pretty(other).expect("value serializes")
        ),
    }
}

impl ScriptedProvider {
    pub fn new(script: ReplyScript) -> Self {
        Self { script }
    }

    pub fn from_json(text: &str) -> Result<Self, ProviderError> {
        serde_json::from_str(text)
            .map(Self::new)
            .map_err(|e| ProviderError::Store(format!("reply script: {e}")))
    }
}

impl ChatProvider for ScriptedProvider {
    fn complete(&self, request: &ChatRequest) -> Result<String, ProviderError> {
        let prompt = request.messages.first().map(|m| m.content.as_str()).unwrap_or("");
        let question = classify(prompt).ok_or_else(|| ProviderError::Store("unrecognized prompt".into()))?;
        let reply = match &question {
            Question::Endpoints { entry_file } => self.script.endpoints.get(entry_file).map(render),
            Question::Details { endpoint } => Some(
                self.script
                    .details
                    .get(endpoint)
                    .map(render)
                    .ok_or_else(|| ProviderError::Store(format!("reply script has no details for `{endpoint}`")))?,
            ),
            Question::Constraints { endpoint, parameter } => self
                .script
                .constraints
                .get(&format!("{endpoint} {parameter}"))
                .map(render),
        };
        Ok(reply.unwrap_or_else(|| "[]".into()))
    }
}
