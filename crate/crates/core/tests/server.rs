use std::path::Path;
use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use diphone_tts::audio::wav_bytes;
use diphone_tts::bank::fixture_bank;
use diphone_tts::prosody::{Curve, Interpolation, ProsodySettings};
use diphone_tts::server::{router, AppState};
use diphone_tts::synth::{Engine, Resources};

fn state() -> Arc<AppState> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    AppState::new(
        Engine::new(Resources::load(&data).unwrap(), fixture_bank()),
        ProsodySettings::default(),
    )
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Vec<(String, String)>, Vec<u8>) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req
            .header("content-type", "application/json")
            .body(Body::from(b.to_string()))
            .unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let headers = resp
        .headers()
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_str().unwrap_or("").to_string()))
        .collect();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, headers, bytes)
}

fn header<'a>(headers: &'a [(String, String)], name: &str) -> &'a str {
    headers.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str()).unwrap()
}

#[tokio::test]
async fn health_answers_ok() {
    let app = router(state());
    let (status, _, body) = call(&app, "GET", "/health", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(serde_json::from_slice::<Value>(&body).unwrap(), json!({"status": "ok"}));
}

#[tokio::test]
async fn preprocess_lists_tags_and_pronunciations() {
    let app = router(state());
    let (status, _, body) = call(
        &app,
        "POST",
        "/preprocess",
        Some(json!({"text": "Yes, I'm going to buy 10 apples."})),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    let v: Value = serde_json::from_slice(&body).unwrap();
    let rows: Vec<(String, String)> = v["tokens"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["text"].as_str().unwrap().to_string(), t["pronunciation"].as_str().unwrap().to_string()))
        .collect();
    let texts: Vec<&str> = rows.iter().map(|(t, _)| t.as_str()).collect();
    assert_eq!(texts, ["Yes", ",", "I'm", "going", "to", "buy", "10", "apples", "."]);
    assert_eq!(rows[6].1, "T EH1 N");
    assert_eq!(rows[7].1, "AE1 P AH0 L Z");
    let tokens = v["tokens"].as_array().unwrap();
    assert_eq!(tokens[7]["tag"], "p");
    assert!(tokens[1]["tag"].is_null());
    assert!(tokens[8]["pause"].as_f64().unwrap() > 0.0);
}

#[tokio::test]
async fn synthesize_returns_the_engine_render() {
    let st = state();
    let app = router(st.clone());
    let text = "Did you record it?";
    let (status, headers, body) = call(&app, "POST", "/synthesize", Some(json!({"text": text, "seed": 3}))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(header(&headers, "content-type"), "audio/wav");
    let mut settings = ProsodySettings::default();
    settings.seed = 3;
    let direct = st.engine.synthesize(text, &settings);
    assert_eq!(body, wav_bytes(&direct.samples));
    let report: Value = serde_json::from_str(header(&headers, "x-synthesis-report")).unwrap();
    assert_eq!(report["clips"], json!(direct.report.clips));
}

#[tokio::test]
async fn plan_only_returns_the_utterance() {
    let app = router(state());
    let (status, headers, body) = call(
        &app,
        "POST",
        "/synthesize",
        Some(json!({"text": "The cat sat.", "plan_only": true})),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert!(header(&headers, "content-type").starts_with("application/json"));
    let v: Value = serde_json::from_slice(&body).unwrap();
    assert!(v.is_object());
}

#[tokio::test]
async fn settings_round_trip_and_reject_bad_clamps() {
    let app = router(state());
    let (status, _, body) = call(&app, "GET", "/settings", None).await;
    assert_eq!(status, StatusCode::OK);
    let mut s: Value = serde_json::from_slice(&body).unwrap();

    s["seed"] = json!(99);
    let (status, _, _) = call(&app, "PUT", "/settings", Some(s.clone())).await;
    assert_eq!(status, StatusCode::OK);
    let (_, _, body) = call(&app, "GET", "/settings", None).await;
    assert_eq!(serde_json::from_slice::<Value>(&body).unwrap()["seed"], 99);

    let mut bad = s.clone();
    bad["clamps"]["volume"]["min"] = json!(-1.0);
    let (status, _, body) = call(&app, "PUT", "/settings", Some(bad.clone())).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(String::from_utf8(body).unwrap().contains("volume"));
    let (_, _, body) = call(&app, "GET", "/settings", None).await;
    assert_eq!(serde_json::from_slice::<Value>(&body).unwrap(), s);

    let (status, _, _) = call(&app, "POST", "/synthesize", Some(json!({"text": "hi", "settings": bad}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn banks_reports_the_fixture_bank() {
    let app = router(state());
    let (status, _, body) = call(&app, "GET", "/banks", None).await;
    assert_eq!(status, StatusCode::OK);
    let v: Value = serde_json::from_slice(&body).unwrap();
    let b = &v["banks"][0];
    assert_eq!(b["complete"], true);
    assert_eq!(b["missing"], json!([]));
    assert!(b["diphones"].as_u64().unwrap() >= 1013);
}

#[tokio::test]
async fn curve_preview_matches_direct_evaluation() {
    let app = router(state());
    let curve = Curve::new(
        Interpolation::Quintic,
        vec![(0.0, 0.0), (0.3, 2.0), (0.7, -1.0), (1.0, 0.5)],
    )
    .unwrap();
    let (status, _, body) = call(
        &app,
        "POST",
        "/curve",
        Some(json!({"curve": curve, "samples": 100, "domain": [0.0, 1.0]})),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    let v: Value = serde_json::from_slice(&body).unwrap();
    let points = v["points"].as_array().unwrap();
    assert_eq!(points.len(), 100);
    for p in points {
        let (x, y) = (p[0].as_f64().unwrap(), p[1].as_f64().unwrap());
        assert!((y - curve.eval(x)).abs() < 1e-12);
    }
    assert_eq!(points[99][0], 1.0);

    let (status, _, _) = call(&app, "POST", "/curve", Some(json!({"curve": curve, "samples": 1}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let unsorted = json!({"kind": "linear", "points": [[0.5, 1.0], [0.2, 0.0]]});
    let (status, _, _) = call(&app, "POST", "/curve", Some(json!({"curve": unsorted, "xs": [0.1]}))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}
