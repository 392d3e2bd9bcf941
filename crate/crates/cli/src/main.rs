//! `oasgen`: generate, scan, evaluate, diff and record-fixtures.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Failure;

#[derive(Parser)]
#[command(
    name = "oasgen",
    version,
    about = "OpenAPI 3.1.1 documents from REST API source code"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an OpenAPI document for a project.
    Generate(GenerateArgs),
    /// List the endpoint entry files of a project.
    Scan(ScanArgs),
    /// Score a document against a ground-truth entity file.
    Evaluate(EvaluateArgs),
    /// Compare a generated document with a developer-written one.
    Diff(DiffArgs),
    /// Run generation and store every model exchange as a replayable fixture.
    RecordFixtures(RecordArgs),
}

#[derive(Clone, Copy, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Args, Clone)]
pub struct ProjectArgs {
    /// Project root directory.
    #[arg(default_value = ".")]
    pub root: PathBuf,
    /// Framework name, or `auto`.
    #[arg(long)]
    pub framework: Option<String>,
    /// JSON criteria file merged over the builtin frameworks.
    #[arg(long)]
    pub criteria: Option<PathBuf>,
}

#[derive(Args, Clone)]
pub struct ModelArgs {
    #[arg(long)]
    pub model: Option<String>,
    /// Base URL of an OpenAI-compatible API.
    #[arg(long)]
    pub endpoint_url: Option<String>,
    /// Sampling temperature [default: 0.2].
    #[arg(long)]
    pub temperature: Option<f64>,
    /// How many levels of project imports to follow [default: 1].
    #[arg(long)]
    pub import_depth: Option<usize>,
    /// Document title [default: project directory name].
    #[arg(long)]
    pub title: Option<String>,
}

#[derive(Args, Clone)]
pub struct OutputArgs {
    /// Output file [default: <api-name>.openapi.json].
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Write YAML instead of JSON.
    #[arg(long)]
    pub yaml: bool,
    /// Write a machine-readable run report (JSON) here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Write the code context of each entry file into this directory.
    #[arg(long)]
    pub dump_contexts: Option<PathBuf>,
}

#[derive(Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub project: ProjectArgs,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Replay recorded replies instead of calling the model.
    #[arg(long, requires = "fixtures")]
    pub offline: bool,
    /// Directory of recorded replies.
    #[arg(long)]
    pub fixtures: Option<PathBuf>,
}

#[derive(Args)]
pub struct RecordArgs {
    #[command(flatten)]
    pub project: ProjectArgs,
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Directory the fixtures are written to.
    #[arg(long)]
    pub fixtures: PathBuf,
    /// Answer from a reply script instead of the live model.
    #[arg(long)]
    pub script: Option<PathBuf>,
}

#[derive(Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub project: ProjectArgs,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args)]
pub struct EvaluateArgs {
    /// Document to score (JSON or YAML, OAS 3.x or Swagger 2.0).
    #[arg(long)]
    pub spec: PathBuf,
    /// Ground-truth entity file.
    #[arg(long)]
    pub truth: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Count `required: true` as a parameter constraint.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub required_as_constraint: bool,
}

#[derive(Args)]
pub struct DiffArgs {
    #[arg(long, required_unless_present = "summary", requires = "developer")]
    pub generated: Option<PathBuf>,
    #[arg(long, requires = "generated")]
    pub developer: Option<PathBuf>,
    /// Summarize a per-API count table instead (the bundled one by default).
    #[arg(long, conflicts_with_all = ["generated", "developer"])]
    pub summary: bool,
    /// Count table for `--summary`.
    #[arg(long, requires = "summary")]
    pub comparison: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub required_as_constraint: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => commands::generate(a),
        Command::Scan(a) => commands::scan(a),
        Command::Evaluate(a) => commands::evaluate(a),
        Command::Diff(a) => commands::diff(a),
        Command::RecordFixtures(a) => commands::record_fixtures(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { category, message }) => {
            eprintln!("error[{category}]: {message}");
            ExitCode::from(commands::exit_code(category))
        }
    }
}
