//! Chat-completion providers: a live OpenAI-compatible HTTP client, a
//! replaying fixture store and a recorder that fills that store.

use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::ProviderError;

pub const DEFAULT_API_KEY_ENV: &str = "LRASGEN_API_KEY";
pub const DEFAULT_TEMPERATURE: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ProviderConfig {
    pub endpoint_url: String,
    pub model: String,
    pub temperature: f64,
    /// Model context window in tokens.
    pub context_window: usize,
    /// Corrective re-asks after a reply fails validation.
    pub max_retries: u32,
    pub api_key_env: String,
    /// Concurrent requests in flight.
    pub max_in_flight: usize,
    /// Tokens kept free for the reply when budgeting prompts.
    pub response_reserve: usize,
    /// Resends after HTTP 429/5xx or a transport failure.
    pub transport_retries: u32,
    /// First backoff delay in milliseconds; doubles on each resend.
    pub backoff_ms: u64,
    pub timeout_secs: u64,
}

impl Default for ProviderConfig {
    fn default() -> Self {
        Self {
            endpoint_url: "https://api.openai.com/v1".into(),
            model: "gpt-4o-mini".into(),
            temperature: DEFAULT_TEMPERATURE,
            context_window: 128_000,
            max_retries: 3,
            api_key_env: DEFAULT_API_KEY_ENV.into(),
            max_in_flight: 4,
            response_reserve: crate::extract::context::DEFAULT_RESPONSE_RESERVE,
            transport_retries: 4,
            backoff_ms: 1000,
            timeout_secs: 300,
        }
    }
}

impl ProviderConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.context_window <= self.response_reserve {
            return Err(format!(
                "context_window ({}) must exceed the response reserve ({})",
                self.context_window, self.response_reserve
            ));
        }
        if !(0.0..=2.0).contains(&self.temperature) {
            return Err(format!("temperature {} is outside 0..2", self.temperature));
        }
        if self.max_in_flight == 0 {
            return Err("max_in_flight must be at least 1".into());
        }
        if self.model.trim().is_empty() {
            return Err("model must not be empty".into());
        }
        Ok(())
    }

    /// Prompt tokens available per request.
    pub fn token_budget(&self) -> usize {
        self.context_window.saturating_sub(self.response_reserve)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: String,
    pub content: String,
}

impl ChatMessage {
    pub fn user(content: impl Into<String>) -> Self {
        Self {
            role: "user".into(),
            content: content.into(),
        }
    }

    pub fn assistant(content: impl Into<String>) -> Self {
        Self {
            role: "assistant".into(),
            content: content.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatRequest {
    pub model: String,
    pub messages: Vec<ChatMessage>,
    pub temperature: f64,
}

impl ChatRequest {
    pub fn new(config: &ProviderConfig, messages: Vec<ChatMessage>) -> Self {
        Self {
            model: config.model.clone(),
            messages,
            temperature: config.temperature,
        }
    }

    /// SHA-256 (hex) of the canonical JSON payload; the fixture key.
    pub fn hash(&self) -> String {
        // serde_json::Value objects are key-sorted, so this is canonical.
        let canonical = json!({
            "messages": self.messages,
            "model": self.model,
            "temperature": self.temperature,
        });
        hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
    }
}

pub trait ChatProvider: Send + Sync {
    fn complete(&self, request: &ChatRequest) -> Result<String, ProviderError>;
}

impl<P: ChatProvider + ?Sized> ChatProvider for Box<P> {
    fn complete(&self, request: &ChatRequest) -> Result<String, ProviderError> {
        (**self).complete(request)
    }
}

impl<P: ChatProvider + ?Sized> ChatProvider for &P {
    fn complete(&self, request: &ChatRequest) -> Result<String, ProviderError> {
        (**self).complete(request)
    }
}

pub fn send_chat(
    provider: &dyn ChatProvider,
    config: &ProviderConfig,
    messages: Vec<ChatMessage>,
) -> Result<String, ProviderError> {
    provider.complete(&ChatRequest::new(config, messages))
}

/// One recorded exchange as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub request_hash: String,
    pub request: ChatRequest,
    pub reply: String,
}

/// Replays recorded replies from `<dir>/<request_hash>.json`.
#[derive(Debug, Clone)]
pub struct FixtureProvider {
    dir: PathBuf,
}

impl FixtureProvider {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.json"))
    }

    pub fn record(&self, request: &ChatRequest, reply: &str) -> Result<PathBuf, ProviderError> {
        std::fs::create_dir_all(&self.dir).map_err(|e| ProviderError::Store(format!("{}: {e}", self.dir.display())))?;
        let hash = request.hash();
        let fixture = Fixture {
            request_hash: hash.clone(),
            request: request.clone(),
            reply: reply.to_string(),
        };
        let path = self.path_for(&hash);
        let text = serde_json::to_string_pretty(&fixture).map_err(|e| ProviderError::Store(e.to_string()))?;
        std::fs::write(&path, text + "\n").map_err(|e| ProviderError::Store(format!("{}: {e}", path.display())))?;
        Ok(path)
    }
}

impl ChatProvider for FixtureProvider {
    fn complete(&self, request: &ChatRequest) -> Result<String, ProviderError> {
        let hash = request.hash();
        let path = self.path_for(&hash);
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Err(ProviderError::FixtureMiss { hash }),
            Err(e) => return Err(ProviderError::Store(format!("{}: {e}", path.display()))),
        };
        let fixture: Fixture =
            serde_json::from_str(&text).map_err(|e| ProviderError::Store(format!("{}: {e}", path.display())))?;
        Ok(fixture.reply)
    }
}

/// Forwards to `inner` and stores every successful exchange.
pub struct RecordingProvider<P> {
    inner: P,
    store: FixtureProvider,
    recorded: Mutex<Vec<PathBuf>>,
}

impl<P: ChatProvider> RecordingProvider<P> {
    pub fn new(inner: P, store: FixtureProvider) -> Self {
        Self {
            inner,
            store,
            recorded: Mutex::new(Vec::new()),
        }
    }

    pub fn recorded(&self) -> Vec<PathBuf> {
        self.recorded.lock().map(|v| v.clone()).unwrap_or_default()
    }
}

impl<P: ChatProvider> ChatProvider for RecordingProvider<P> {
    fn complete(&self, request: &ChatRequest) -> Result<String, ProviderError> {
        let reply = self.inner.complete(request)?;
        let path = self.store.record(request, &reply)?;
        if let Ok(mut v) = self.recorded.lock() {
            v.push(path);
        }
        Ok(reply)
    }
}

/// Live client for an OpenAI-compatible `/chat/completions` endpoint.
pub struct HttpProvider {
    client: reqwest::blocking::Client,
    url: String,
    api_key: String,
    transport_retries: u32,
    backoff: Duration,
}

impl HttpProvider {
    /// Reads the API key from `config.api_key_env`.
    pub fn from_config(config: &ProviderConfig) -> Result<Self, ProviderError> {
        let key = std::env::var(&config.api_key_env)
            .ok()
            .filter(|k| !k.trim().is_empty())
            .ok_or_else(|| ProviderError::MissingApiKey {
                env: config.api_key_env.clone(),
            })?;
        Self::with_api_key(config, key)
    }

    pub fn with_api_key(config: &ProviderConfig, api_key: impl Into<String>) -> Result<Self, ProviderError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(config.timeout_secs.max(1)))
            .build()
            .map_err(|e| ProviderError::Transport(e.to_string()))?;
        Ok(Self {
            client,
            url: chat_completions_url(&config.endpoint_url),
            api_key: api_key.into(),
            transport_retries: config.transport_retries,
            backoff: Duration::from_millis(config.backoff_ms),
        })
    }

    pub fn url(&self) -> &str {
        &self.url
    }
}

pub fn chat_completions_url(endpoint_url: &str) -> String {
    let base = endpoint_url.trim_end_matches('/');
    if base.ends_with("/chat/completions") {
        base.to_string()
    } else {
        format!("{base}/chat/completions")
    }
}

fn excerpt(body: &str) -> String {
    const MAX: usize = 500;
    if body.len() <= MAX {
        return body.to_string();
    }
    let mut end = MAX;
    while !body.is_char_boundary(end) {
        end -= 1;
    }
    format!("{}...", &body[..end])
}

fn retry_after(headers: &reqwest::header::HeaderMap) -> Option<Duration> {
    let secs: f64 = headers
        .get(reqwest::header::RETRY_AFTER)?
        .to_str()
        .ok()?
        .trim()
        .parse()
        .ok()?;
    (secs.is_finite() && secs >= 0.0).then(|| Duration::from_secs_f64(secs.min(120.0)))
}

/// Pulls `choices[0].message.content` out of a completion response.
pub fn completion_text(body: &Value) -> Result<String, ProviderError> {
    body.pointer("/choices/0/message/content")
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or(ProviderError::EmptyReply)
}

impl ChatProvider for HttpProvider {
    fn complete(&self, request: &ChatRequest) -> Result<String, ProviderError> {
        let mut attempt = 0;
        loop {
            let result = self
                .client
                .post(&self.url)
                .bearer_auth(&self.api_key)
                .json(request)
                .send();
            let (error, wait) = match result {
                Ok(resp) => {
                    let status = resp.status();
                    if status.is_success() {
                        let body: Value = resp.json().map_err(|e| ProviderError::Transport(e.to_string()))?;
                        return completion_text(&body);
                    }
                    let wait = retry_after(resp.headers());
                    let body = resp.text().unwrap_or_default();
                    let err = ProviderError::Status {
                        status: status.as_u16(),
                        body: excerpt(&body),
                    };
                    if !(status.as_u16() == 429 || status.is_server_error()) {
                        return Err(err);
                    }
                    (err, wait)
                }
                Err(e) => (ProviderError::Transport(e.to_string()), None),
            };
            if attempt >= self.transport_retries {
                return Err(error);
            }
            let delay = wait.unwrap_or_else(|| self.backoff.saturating_mul(1u32 << attempt.min(16)));
            log::warn!("{error}; retrying in {delay:?}");
            std::thread::sleep(delay);
            attempt += 1;
        }
    }
}
