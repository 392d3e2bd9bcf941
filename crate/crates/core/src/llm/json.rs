use serde_json::Value;

use crate::error::LlmError;

/// Pulls the first JSON array or object out of a model reply.
///
/// Markdown code fences are searched first; then every `[`/`{` in the
/// reply is tried in order until one starts a complete JSON value. Anything
/// after that value is ignored.
pub fn extract_json(raw_reply: &str) -> Result<Value, LlmError> {
    // Inside a fence the value must start at the first bracket; a later
    // start would mean the fence was cut short by backticks inside a string.
    for fenced in fenced_blocks(raw_reply) {
        if let Some(v) = fenced.find(['[', '{']).and_then(|i| value_at(&fenced[i..])) {
            return Ok(v);
        }
    }
    first_value(raw_reply).ok_or(LlmError::NoJsonFound)
}

fn fenced_blocks(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut rest = text;
    while let Some(start) = rest.find("```") {
        let after = &rest[start + 3..];
        // Skip the info string (`json`, `JSON`, ...) up to the end of the line.
        let body_start = after.find('\n').map(|i| i + 1).unwrap_or(after.len());
        let body = &after[body_start..];
        match body.find("```") {
            Some(end) => {
                out.push(&body[..end]);
                rest = &body[end + 3..];
            }
            None => {
                out.push(body);
                break;
            }
        }
    }
    out
}

fn first_value(text: &str) -> Option<Value> {
    for (i, c) in text.char_indices() {
        if c != '[' && c != '{' {
            continue;
        }
        if let Some(v) = value_at(&text[i..]) {
            return Some(v);
        }
    }
    None
}

fn value_at(text: &str) -> Option<Value> {
    serde_json::Deserializer::from_str(text)
        .into_iter::<Value>()
        .next()?
        .ok()
}
