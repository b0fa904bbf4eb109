//! HTTP front end for map exploration sessions.
//!
//! Endpoints:
//!
//! * `GET  /datasets`
//! * `POST /sessions` with `{"datasetId": ...}`
//! * `GET  /sessions/{id}`
//! * `GET  /sessions/{id}/log`
//! * `POST /sessions/{id}/actions` with an action request
//! * `GET  /app/...` static client assets, when configured
//!
//! Sessions live in memory and expire after an idle period. Every action is
//! appended to an optional newline-delimited log file before the response is
//! sent. Actions on one session are serialized by a per-session lock.

mod api;
mod store;

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use axum::routing::{get, post};
use axum::Router;
use mapvoice_core::{Dataset, SessionConfig};
use tokio::net::TcpListener;
use tower_http::services::ServeDir;

pub use api::{
    ActionRequest, ActionResponse, ApiError, DatasetInfo, LayerInfo, SessionCreated, SessionInfo,
    ZoomDirection,
};
use store::SessionStore;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub session: SessionConfig,
    /// Idle time after which a session is dropped.
    pub session_ttl: Duration,
    pub log_path: Option<PathBuf>,
    pub static_dir: Option<PathBuf>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            session: SessionConfig::default(),
            session_ttl: Duration::from_secs(30 * 60),
            log_path: None,
            static_dir: None,
        }
    }
}

/// Shared state behind every handler.
pub struct AppState {
    datasets: BTreeMap<String, Arc<Dataset>>,
    sessions: SessionStore,
    config: ServiceConfig,
    log: Option<std::sync::Mutex<File>>,
}

impl AppState {
    pub fn new(datasets: Vec<Dataset>, config: ServiceConfig) -> io::Result<Self> {
        let log = match &config.log_path {
            Some(path) => Some(std::sync::Mutex::new(
                OpenOptions::new().create(true).append(true).open(path)?,
            )),
            None => None,
        };
        Ok(Self {
            datasets: datasets
                .into_iter()
                .map(|d| (d.id().to_string(), Arc::new(d)))
                .collect(),
            sessions: SessionStore::new(config.session_ttl),
            config,
            log,
        })
    }

    pub fn session_count(&self) -> usize {
        self.sessions.len()
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    let static_dir = state.config.static_dir.clone();
    let mut app = Router::new()
        .route("/datasets", get(api::list_datasets))
        .route("/sessions", post(api::create_session))
        .route("/sessions/{id}", get(api::get_session))
        .route("/sessions/{id}/log", get(api::get_log))
        .route("/sessions/{id}/actions", post(api::apply_action))
        .with_state(state);
    if let Some(dir) = static_dir {
        app = app.nest_service("/app", ServeDir::new(dir));
    }
    app
}

/// Serves until the listener fails.
pub async fn serve(listener: TcpListener, state: Arc<AppState>) -> io::Result<()> {
    tracing::info!(addr = ?listener.local_addr()?, "listening");
    axum::serve(listener, router(state)).await
}
