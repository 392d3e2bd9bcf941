//! Staged LLM interrogation: endpoint methods, then parameters and
//! responses, then per-parameter constraints.

pub mod json;
pub mod pipeline;
pub mod prompts;
pub mod provider;
pub mod records;
pub mod script;
pub mod stages;

pub use json::extract_json;
pub use pipeline::{run_pipeline, EndpointRecord, Extraction};
pub use provider::{
    send_chat, ChatMessage, ChatProvider, ChatRequest, Fixture, FixtureProvider, HttpProvider, ProviderConfig,
    RecordingProvider,
};
pub use records::{
    ConstraintSet, EndpointMethod, HttpMethod, ParamPosition, ParamType, ParameterSpec, ParamsAndResponses,
    ResponseSpec,
};
pub use script::{ReplyScript, ScriptedProvider};
pub use stages::{stage_a_endpoints, stage_b_params_responses, stage_c_constraints, ConstraintOutcome};
