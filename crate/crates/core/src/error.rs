use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CriteriaError {
    #[error("criteria document is not a JSON list of records: {0}")]
    Parse(String),
    #[error("malformed criteria record `{record}`, field `{field}`: {reason}")]
    Malformed {
        record: String,
        field: String,
        reason: String,
    },
}

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("project root not found: {0}")]
    RootNotFound(PathBuf),
    #[error("unknown framework `{0}`")]
    UnknownFramework(String),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
}

#[derive(Debug, Error)]
pub enum ProviderError {
    #[error("provider returned HTTP {status}: {body}")]
    Status { status: u16, body: String },
    #[error("transport error: {0}")]
    Transport(String),
    #[error("no recorded fixture for request {hash}")]
    FixtureMiss { hash: String },
    #[error("API key not set: export {env}")]
    MissingApiKey { env: String },
    #[error("fixture store error: {0}")]
    Store(String),
    #[error("provider reply has no choices[0].message.content")]
    EmptyReply,
}

#[derive(Debug, Error)]
pub enum LlmError {
    #[error("no JSON array or object found in reply")]
    NoJsonFound,
    #[error("{stage} reply violates its schema after {attempts} attempt(s): {detail}")]
    SchemaViolation {
        stage: &'static str,
        attempts: u32,
        detail: String,
    },
    #[error(transparent)]
    Provider(#[from] ProviderError),
}

#[derive(Debug, Error)]
pub enum AssemblyError {
    #[error("duplicate endpoint {method} {path}")]
    DuplicateEndpoint { path: String, method: String },
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("cannot parse {what}: {reason}")]
    Parse { what: String, reason: String },
    #[error("ground truth is inconsistent: {0}")]
    InvalidTruth(String),
}

/// Fatal failure of a whole generation run, by pipeline phase.
#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("scan: {0}")]
    Scan(#[from] ScanError),
    #[error("provider: {0}")]
    Provider(ProviderError),
    #[error("schema: {0}")]
    Schema(String),
    #[error("assembly: {0}")]
    Assembly(#[from] AssemblyError),
    #[error("io: {0}")]
    Io(String),
}

impl From<LlmError> for GenerateError {
    fn from(e: LlmError) -> Self {
        match e {
            LlmError::Provider(p) => GenerateError::Provider(p),
            other => GenerateError::Schema(other.to_string()),
        }
    }
}

impl GenerateError {
    pub fn category(&self) -> &'static str {
        match self {
            GenerateError::Config(_) => "config",
            GenerateError::Scan(_) => "scan",
            GenerateError::Provider(_) => "provider",
            GenerateError::Schema(_) => "schema",
            GenerateError::Assembly(_) => "assembly",
            GenerateError::Io(_) => "io",
        }
    }

    /// The message without the category prefix.
    pub fn detail(&self) -> String {
        match self {
            GenerateError::Config(m) | GenerateError::Schema(m) | GenerateError::Io(m) => m.clone(),
            GenerateError::Scan(e) => e.to_string(),
            GenerateError::Provider(e) => e.to_string(),
            GenerateError::Assembly(e) => e.to_string(),
        }
    }
}
