use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use mapvoice_core::narration::{render_title, Direction};
use mapvoice_core::{Action, ActionRecord, Announcement, GeoRect, Session, Viewport};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::AppState;

/// Error body: `{"error": "...", "field": "..."}`; `field` names the
/// offending request member for validation failures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: u16,
    pub error: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub field: Option<String>,
}

impl ApiError {
    fn not_found(what: &str) -> Self {
        Self {
            status: StatusCode::NOT_FOUND.as_u16(),
            error: format!("{what} not found"),
            field: None,
        }
    }

    fn invalid(field: &str, message: impl Into<String>) -> Self {
        Self {
            status: StatusCode::UNPROCESSABLE_ENTITY.as_u16(),
            error: message.into(),
            field: Some(field.to_string()),
        }
    }

    fn malformed(message: impl Into<String>) -> Self {
        Self {
            status: StatusCode::BAD_REQUEST.as_u16(),
            error: message.into(),
            field: None,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self)).into_response()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZoomDirection {
    In,
    Out,
}

/// Body of `POST /sessions/{id}/actions`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ActionRequest {
    pub action: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub direction: Option<Direction>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub zoom_dir: Option<ZoomDirection>,
}

impl From<Action> for ActionRequest {
    fn from(action: Action) -> Self {
        let (direction, zoom_dir) = match action {
            Action::Pan(d) => (Some(d), None),
            Action::Zoom { inward: true } => (None, Some(ZoomDirection::In)),
            Action::Zoom { inward: false } => (None, Some(ZoomDirection::Out)),
            Action::Info | Action::Corners => (None, None),
        };
        Self {
            action: action.name().to_string(),
            direction,
            zoom_dir,
        }
    }
}

fn string_member<'a>(
    body: &'a serde_json::Map<String, Value>,
    field: &str,
) -> Result<Option<&'a str>, ApiError> {
    match body.get(field) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s)),
        Some(_) => Err(ApiError::invalid(
            field,
            format!("{field} must be a string"),
        )),
    }
}

/// Validates a raw request body into an action.
pub(crate) fn parse_action_request(bytes: &[u8]) -> Result<Action, ApiError> {
    let value: Value = serde_json::from_slice(bytes)
        .map_err(|e| ApiError::malformed(format!("malformed JSON: {e}")))?;
    let Value::Object(body) = value else {
        return Err(ApiError::malformed("request body must be a JSON object"));
    };
    let action = string_member(&body, "action")?
        .ok_or_else(|| ApiError::invalid("action", "action is required"))?;
    let direction = string_member(&body, "direction")?;
    let zoom_dir = string_member(&body, "zoomDir")?;

    match action {
        "pan" | "zoom" | "info" | "corners" => {}
        other => {
            return Err(ApiError::invalid(
                "action",
                format!("unknown action '{other}' (expected pan, zoom, info or corners)"),
            ))
        }
    }
    if action != "pan" && direction.is_some() {
        return Err(ApiError::invalid(
            "direction",
            "direction is only allowed with action pan",
        ));
    }
    if action != "zoom" && zoom_dir.is_some() {
        return Err(ApiError::invalid(
            "zoomDir",
            "zoomDir is only allowed with action zoom",
        ));
    }
    match action {
        "pan" => {
            let d = direction
                .ok_or_else(|| ApiError::invalid("direction", "pan requires direction"))?;
            Direction::parse(d).map(Action::Pan).ok_or_else(|| {
                ApiError::invalid(
                    "direction",
                    format!("invalid direction '{d}' (expected left, right, up or down)"),
                )
            })
        }
        "zoom" => match zoom_dir {
            Some("in") => Ok(Action::Zoom { inward: true }),
            Some("out") => Ok(Action::Zoom { inward: false }),
            Some(z) => Err(ApiError::invalid(
                "zoomDir",
                format!("invalid zoomDir '{z}' (expected in or out)"),
            )),
            None => Err(ApiError::invalid("zoomDir", "zoom requires zoomDir")),
        },
        "info" => Ok(Action::Info),
        _ => Ok(Action::Corners),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LayerInfo {
    pub name: String,
    pub min_zoom: u32,
    pub feature_count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DatasetInfo {
    pub id: String,
    pub title: String,
    pub dataset_label: String,
    pub units: String,
    pub bbox: GeoRect,
    pub layers: Vec<LayerInfo>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionCreated {
    pub session_id: String,
    pub announcement: Announcement,
    pub viewport: Viewport,
    pub layer_name: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ActionResponse {
    pub announcement: Announcement,
    pub viewport: Viewport,
    pub layer_name: String,
    pub out_of_bounds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionInfo {
    pub session_id: String,
    pub dataset_id: String,
    pub viewport: Viewport,
    pub layer_name: String,
    pub out_of_bounds: bool,
    pub action_count: usize,
}

pub(crate) async fn list_datasets(State(state): State<Arc<AppState>>) -> Json<Vec<DatasetInfo>> {
    Json(
        state
            .datasets
            .values()
            .map(|d| DatasetInfo {
                id: d.id().to_string(),
                title: d.title().to_string(),
                dataset_label: d.label().to_string(),
                units: d.units().to_string(),
                bbox: d.bbox(),
                layers: d
                    .layers()
                    .iter()
                    .map(|l| LayerInfo {
                        name: l.name.clone(),
                        min_zoom: l.min_zoom,
                        feature_count: l.features.len(),
                    })
                    .collect(),
            })
            .collect(),
    )
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct CreateSessionRequest {
    dataset_id: String,
}

pub(crate) async fn create_session(
    State(state): State<Arc<AppState>>,
    body: Bytes,
) -> Result<Response, ApiError> {
    let req: CreateSessionRequest = serde_json::from_slice(&body).map_err(|e| {
        if e.is_data() {
            ApiError::invalid(
                "datasetId",
                format!("datasetId is required and must be a string: {e}"),
            )
        } else {
            ApiError::malformed(format!("malformed JSON: {e}"))
        }
    })?;
    let dataset = state
        .datasets
        .get(&req.dataset_id)
        .ok_or_else(|| ApiError::not_found("dataset"))?
        .clone();
    let session = Session::new(
        uuid::Uuid::new_v4().to_string(),
        dataset.clone(),
        state.config.session.clone(),
    );
    let created = SessionCreated {
        session_id: session.id().to_string(),
        announcement: render_title(dataset.title()),
        viewport: session.viewport(),
        layer_name: session.layer().name.clone(),
    };
    state.sessions.insert(&req.dataset_id, session);
    tracing::debug!(session = %created.session_id, dataset = %req.dataset_id, "session created");
    Ok((StatusCode::CREATED, Json(created)).into_response())
}

pub(crate) async fn get_session(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Json<SessionInfo>, ApiError> {
    let slot = state
        .sessions
        .get(&id)
        .ok_or_else(|| ApiError::not_found("session"))?;
    let session = slot.session.lock().await;
    Ok(Json(SessionInfo {
        session_id: session.id().to_string(),
        dataset_id: slot.dataset_id().to_string(),
        viewport: session.viewport(),
        layer_name: session.layer().name.clone(),
        out_of_bounds: session.out_of_bounds(),
        action_count: session.log().len(),
    }))
}

pub(crate) async fn get_log(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
) -> Result<Json<Vec<ActionRecord>>, ApiError> {
    let slot = state
        .sessions
        .get(&id)
        .ok_or_else(|| ApiError::not_found("session"))?;
    let session = slot.session.lock().await;
    Ok(Json(session.log().to_vec()))
}

pub(crate) async fn apply_action(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<ActionResponse>, ApiError> {
    let slot = state
        .sessions
        .get(&id)
        .ok_or_else(|| ApiError::not_found("session"))?;
    let action = parse_action_request(&body)?;

    let mut session = slot.session.lock().await;
    let outcome = session.apply(action);
    if let Some(log) = &state.log {
        let record = session.log().last().expect("apply appends a record");
        let mut line = record.to_json_line();
        line.push('\n');
        let mut file = log.lock().unwrap();
        if let Err(e) = std::io::Write::write_all(&mut *file, line.as_bytes()) {
            tracing::error!(error = %e, "failed to append to action log");
            return Err(ApiError {
                status: StatusCode::INTERNAL_SERVER_ERROR.as_u16(),
                error: "action log unavailable".into(),
                field: None,
            });
        }
    }
    drop(session);

    Ok(Json(ActionResponse {
        announcement: outcome.announcement,
        viewport: outcome.viewport,
        layer_name: outcome.layer_name,
        out_of_bounds: outcome.out_of_bounds,
    }))
}
