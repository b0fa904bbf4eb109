//! Command-line front end: one-shot summaries, scripted replays and the
//! HTTP server.
//!
//! `run` takes argv and writers so tests can drive it in-process; it returns
//! the process exit code (0 ok, 1 data/IO error, 2 usage error).

use std::fs;
use std::io::{self, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use mapvoice_core::narration::{render_corners, render_summary};
use mapvoice_core::session::full_view_description;
use mapvoice_core::{
    load_manifest, Action, ActionRecord, Dataset, GeoRect, LowWindowMode, Session, SessionConfig,
    Viewport,
};
use mapvoice_service::{AppState, ServiceConfig};

const EXIT_DATA: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "mapvoice",
    version,
    about = "Spoken-style summaries of choropleth map views"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe one viewport and its corners.
    Summarize(SummarizeArgs),
    /// Replay a script or an action log and print one announcement per line.
    Replay(ReplayArgs),
    /// Run the HTTP session service.
    Serve(ServeArgs),
}

/// A `W,S,E,N` rectangle argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectArg(pub GeoRect);

impl FromStr for RectArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [w, south, e, n] = parts.as_slice() else {
            return Err(format!("expected W,S,E,N (four numbers), got '{s}'"));
        };
        let num = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| format!("'{v}' is not a number"))
        };
        GeoRect::new(num(w)?, num(south)?, num(e)?, num(n)?)
            .map(RectArg)
            .map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Args)]
pub struct EngineArgs {
    /// Dataset manifest (TOML).
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long, default_value = "literal")]
    pub low_window: LowWindowMode,
    /// Share of the viewport span moved per pan step.
    #[arg(long, default_value_t = 0.25)]
    pub pan_fraction: f64,
    /// Comma-separated minimum zoom of each layer, overriding the manifest.
    #[arg(long, value_delimiter = ',')]
    pub zoom_bands: Option<Vec<u32>>,
}

impl EngineArgs {
    fn session_config(&self) -> SessionConfig {
        SessionConfig {
            pan_fraction: self.pan_fraction,
            low_window_mode: self.low_window,
            ..SessionConfig::default()
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SummarizeArgs {
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Viewport as W,S,E,N in degrees.
    #[arg(long, allow_hyphen_values = true)]
    pub viewport: RectArg,
    #[arg(long, default_value_t = 0)]
    pub zoom: u32,
}

#[derive(Debug, Clone, Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["script", "from_log"]))]
pub struct ReplayArgs {
    #[command(flatten)]
    pub engine: EngineArgs,
    /// One action per line: `pan left|right|up|down`, `zoom in|out`, `info`, `corners`.
    #[arg(long)]
    pub script: Option<PathBuf>,
    /// Newline-delimited action log to replay instead of a script.
    #[arg(long)]
    pub from_log: Option<PathBuf>,
    /// Session to pick from the log; defaults to the first one in it.
    #[arg(long, requires = "from_log")]
    pub session: Option<String>,
    /// Append the replayed actions to this log file.
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ServeArgs {
    /// Dataset manifests to load; repeat for several datasets.
    #[arg(
        long = "manifest",
        env = "MAPVOICE_MANIFEST",
        value_delimiter = ',',
        required = true
    )]
    pub manifests: Vec<PathBuf>,
    #[arg(long, env = "MAPVOICE_PORT", default_value_t = 8080)]
    pub port: u16,
    #[arg(long, env = "MAPVOICE_HOST", default_value = "127.0.0.1")]
    pub host: std::net::IpAddr,
    #[arg(long, env = "MAPVOICE_PAN_FRACTION", default_value_t = 0.25)]
    pub pan_fraction: f64,
    #[arg(long, env = "MAPVOICE_ZOOM_BANDS", value_delimiter = ',')]
    pub zoom_bands: Option<Vec<u32>>,
    #[arg(long, env = "MAPVOICE_LOW_WINDOW", default_value = "literal")]
    pub low_window: LowWindowMode,
    /// Action log file (newline-delimited JSON, appended).
    #[arg(long, env = "MAPVOICE_LOG")]
    pub log: Option<PathBuf>,
    /// Idle minutes before a session expires.
    #[arg(long, env = "MAPVOICE_SESSION_TTL_MINUTES", default_value_t = 30)]
    pub session_ttl_minutes: u64,
    /// Directory served under /app.
    #[arg(long, env = "MAPVOICE_STATIC_DIR")]
    pub static_dir: Option<PathBuf>,
}

/// Error carrying the exit code to use.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn data(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_DATA,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

pub fn load_dataset(manifest: &Path, zoom_bands: Option<&[u32]>) -> Result<Dataset, CliError> {
    let (dataset, reports) = load_manifest(manifest).map_err(|e| CliError::data(e.to_string()))?;
    for (layer, report) in &reports {
        if report.skipped_count() > 0 {
            tracing::warn!(layer = %layer, "{report}");
        }
    }
    match zoom_bands {
        Some(bands) => dataset.with_zoom_bands(bands).map_err(CliError::usage),
        None => Ok(dataset),
    }
}

/// Summary line followed by the corners line.
pub fn run_summarize(args: &SummarizeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let dataset = load_dataset(&args.engine.manifest, args.engine.zoom_bands.as_deref())?;
    let viewport = Viewport::new(args.viewport.0, args.zoom);
    let view = full_view_description(&dataset, &viewport, args.engine.low_window);
    writeln!(out, "{}", render_summary(&view))
        .and_then(|_| writeln!(out, "{}", render_corners(&view.corner_regions)))
        .map_err(|e| CliError::data(e.to_string()))
}

/// Parses a script, skipping blank lines and `#` comments.
pub fn parse_script(text: &str) -> Result<Vec<Action>, CliError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            l.parse::<Action>()
                .map_err(|e| CliError::usage(format!("line {}: {e}", i + 1)))
        })
        .collect()
}

/// Actions of one session from a newline-delimited log.
pub fn parse_log(text: &str, session: Option<&str>) -> Result<Vec<Action>, CliError> {
    let mut wanted = session.map(str::to_string);
    let mut actions = Vec::new();
    for (i, line) in text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
    {
        let record: ActionRecord = serde_json::from_str(line)
            .map_err(|e| CliError::usage(format!("log line {}: {e}", i + 1)))?;
        let id = wanted.get_or_insert_with(|| record.session_id.clone());
        if *id != record.session_id {
            continue;
        }
        actions.push(
            record
                .to_action()
                .map_err(|e| CliError::usage(format!("log line {}: {e}", i + 1)))?,
        );
    }
    Ok(actions)
}

pub fn run_replay(args: &ReplayArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let actions = match (&args.script, &args.from_log) {
        (Some(path), _) => parse_script(&read(path)?)?,
        (None, Some(path)) => parse_log(&read(path)?, args.session.as_deref())?,
        (None, None) => return Err(CliError::usage("either --script or --from-log is required")),
    };
    let dataset = load_dataset(&args.engine.manifest, args.engine.zoom_bands.as_deref())?;
    let mut session = Session::new("replay", Arc::new(dataset), args.engine.session_config());
    let io_err = |e: io::Error| CliError::data(e.to_string());
    for action in actions {
        let outcome = session.apply(action);
        writeln!(out, "{}", outcome.announcement).map_err(io_err)?;
    }
    if let Some(path) = &args.log {
        let mut file = fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(io_err)?;
        for record in session.log() {
            writeln!(file, "{}", record.to_json_line()).map_err(io_err)?;
        }
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::data(format!("failed to read {}: {e}", path.display())))
}

pub async fn run_serve(args: &ServeArgs) -> Result<(), CliError> {
    let datasets = args
        .manifests
        .iter()
        .map(|m| load_dataset(m, args.zoom_bands.as_deref()))
        .collect::<Result<Vec<_>, _>>()?;
    let config = ServiceConfig {
        session: SessionConfig {
            pan_fraction: args.pan_fraction,
            low_window_mode: args.low_window,
            ..SessionConfig::default()
        },
        session_ttl: Duration::from_secs(args.session_ttl_minutes * 60),
        log_path: args.log.clone(),
        static_dir: args.static_dir.clone(),
    };
    let state =
        Arc::new(AppState::new(datasets, config).map_err(|e| CliError::data(e.to_string()))?);
    let addr = SocketAddr::new(args.host, args.port);
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .map_err(|e| CliError::data(format!("cannot bind {addr}: {e}")))?;
    mapvoice_service::serve(listener, state)
        .await
        .map_err(|e| CliError::data(e.to_string()))
}

/// Runs the batch subcommands. `serve` needs an async runtime and is handled
/// by the binary.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Summarize(args) => run_summarize(args, out),
        Command::Replay(args) => run_replay(args, out),
        Command::Serve(_) => Err(CliError::usage(
            "serve must be run from the mapvoice binary",
        )),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            if e.code == EXIT_USAGE {
                let _ = writeln!(err, "run with --help for usage");
            }
            e.code
        }
    }
}
