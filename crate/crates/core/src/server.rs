//! HTTP service over a loaded engine: preprocessing, synthesis, settings
//! store, bank listing and curve preview.

use std::net::SocketAddr;
use std::sync::{Arc, RwLock};

use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::audio::wav_bytes;
use crate::error::{Error, Result};
use crate::prosody::{Curve, ProsodySettings};
use crate::synth::{phone_string, Engine};

pub struct AppState {
    pub engine: Engine,
    settings: RwLock<ProsodySettings>,
}

impl AppState {
    pub fn new(engine: Engine, settings: ProsodySettings) -> Arc<Self> {
        Arc::new(AppState {
            engine,
            settings: RwLock::new(settings),
        })
    }

    pub fn settings(&self) -> ProsodySettings {
        self.settings.read().expect("settings lock").clone()
    }
}

struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Usage(_) | Error::Parse { .. } | Error::Data(_) => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError(code, e.to_string())
    }
}

#[derive(Deserialize)]
struct TextRequest {
    text: String,
}

#[derive(Deserialize)]
struct SynthesizeRequest {
    text: String,
    /// Replaces the stored settings for this request only.
    settings: Option<ProsodySettings>,
    seed: Option<u64>,
    #[serde(default)]
    plan_only: bool,
}

#[derive(Deserialize)]
struct CurveRequest {
    curve: Curve,
    /// Explicit sample positions, or `samples` evenly spaced over `domain`.
    xs: Option<Vec<f64>>,
    samples: Option<usize>,
    domain: Option<(f64, f64)>,
}

#[derive(Serialize)]
struct TokenRow {
    text: String,
    tag: Option<String>,
    pronunciation: String,
    source: crate::synth::PronunciationSource,
    pause: f64,
}

async fn health() -> Json<serde_json::Value> {
    Json(json!({ "status": "ok" }))
}

async fn preprocess(
    State(st): State<Arc<AppState>>,
    Json(req): Json<TextRequest>,
) -> std::result::Result<Json<serde_json::Value>, ApiError> {
    let settings = st.settings();
    let st2 = st.clone();
    let tokens = tokio::task::spawn_blocking(move || st2.engine.resources.preprocess(&req.text, &settings))
        .await
        .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    let rows: Vec<TokenRow> = tokens
        .into_iter()
        .map(|t| TokenRow {
            pronunciation: if t.phones.is_empty() { t.text.clone() } else { phone_string(&t.phones) },
            tag: t.tag.map(|g| g.to_string()),
            text: t.text,
            source: t.source,
            pause: t.pause,
        })
        .collect();
    Ok(Json(json!({ "tokens": rows })))
}

async fn synthesize(
    State(st): State<Arc<AppState>>,
    Json(req): Json<SynthesizeRequest>,
) -> std::result::Result<Response, ApiError> {
    let mut settings = match req.settings {
        Some(s) => {
            s.validate()?;
            s
        }
        None => st.settings(),
    };
    if let Some(seed) = req.seed {
        settings.seed = seed;
    }
    let st2 = st.clone();
    let text = req.text;
    if req.plan_only {
        let utt = tokio::task::spawn_blocking(move || st2.engine.utterance(&text, &settings))
            .await
            .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
        return Ok(Json(utt).into_response());
    }
    let (bytes, report) = tokio::task::spawn_blocking(move || {
        let s = st2.engine.synthesize(&text, &settings);
        (wav_bytes(&s.samples), s.report)
    })
    .await
    .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    let report = serde_json::to_string(&report).unwrap_or_default();
    Ok((
        [
            (header::CONTENT_TYPE, "audio/wav".to_string()),
            (header::HeaderName::from_static("x-synthesis-report"), report),
        ],
        bytes,
    )
        .into_response())
}

async fn get_settings(State(st): State<Arc<AppState>>) -> Json<ProsodySettings> {
    Json(st.settings())
}

async fn put_settings(
    State(st): State<Arc<AppState>>,
    Json(s): Json<ProsodySettings>,
) -> std::result::Result<Json<ProsodySettings>, ApiError> {
    s.validate()?;
    *st.settings.write().expect("settings lock") = s.clone();
    Ok(Json(s))
}

async fn banks(State(st): State<Arc<AppState>>) -> Json<serde_json::Value> {
    let bank = &st.engine.bank;
    let report = bank.completeness();
    Json(json!({
        "banks": [{
            "name": bank.name,
            "diphones": bank.diphones.len(),
            "monophones": bank.monophones.len(),
            "complete": report.is_complete(),
            "missing": report.missing_diphones.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>(),
        }]
    }))
}

/// Curve values at the requested positions.
pub fn preview_curve(curve: &Curve, xs: &[f64]) -> Result<Vec<(f64, f64)>> {
    curve.validate()?;
    let s = curve.sampler();
    Ok(xs.iter().map(|&x| (x, s.eval(x))).collect())
}

async fn curve_preview(Json(req): Json<CurveRequest>) -> std::result::Result<Json<serde_json::Value>, ApiError> {
    let xs = match (req.xs, req.samples) {
        (Some(xs), _) => xs,
        (None, Some(n)) if n >= 2 => {
            let (a, b) = req.domain.unwrap_or((0.0, 1.0));
            (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
        }
        _ => return Err(ApiError(StatusCode::UNPROCESSABLE_ENTITY, "give xs or samples >= 2".into())),
    };
    let points = preview_curve(&req.curve, &xs)?;
    Ok(Json(json!({ "points": points })))
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/preprocess", post(preprocess))
        .route("/synthesize", post(synthesize))
        .route("/settings", get(get_settings).put(put_settings))
        .route("/banks", get(banks))
        .route("/curve", post(curve_preview))
        .with_state(state)
}

pub async fn serve(state: Arc<AppState>, addr: SocketAddr) -> Result<()> {
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .map_err(|e| Error::io(addr.to_string(), e))?;
    log::info!("listening on {addr}");
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
        .map_err(|e| Error::io(addr.to_string(), e))
}
