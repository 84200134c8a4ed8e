use std::time::Duration;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use grim_cli::server::{router, AppState, DEFAULT_TTL};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(AppState::new(DEFAULT_TTL), None)
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri);
    let req = match body {
        Some(b) => req
            .header("content-type", "application/json")
            .body(Body::from(b.to_string())),
        None => req.body(Body::empty()),
    }
    .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = serde_json::from_slice(&bytes).unwrap_or(Value::Null);
    (status, value)
}

async fn create(app: &Router, spec: &str) -> Value {
    let (status, v) = call(app, "POST", "/v1/games", Some(json!({ "spec": spec }))).await;
    assert_eq!(status, StatusCode::CREATED, "{v}");
    v
}

fn ids(state: &Value) -> Vec<u64> {
    state["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["id"].as_u64().unwrap())
        .collect()
}

#[tokio::test]
async fn create_and_fetch() {
    let app = app();
    let g = create(&app, "wheel:7").await;
    assert_eq!(ids(&g).len(), 7);
    assert_eq!(g["edges"].as_array().unwrap().len(), 12);
    assert_eq!(g["to_move"], 1);
    assert_eq!(g["finished"], false);
    let id = g["id"].as_str().unwrap();
    let (status, fetched) = call(&app, "GET", &format!("/v1/games/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(fetched, g);
}

#[tokio::test]
async fn single_vertex_is_finished_at_creation() {
    let app = app();
    let g = create(&app, "@").await;
    assert_eq!(g["finished"], true);
    assert_eq!(g["winner"], 2);
    let id = g["id"].as_str().unwrap();
    let (status, a) = call(&app, "GET", &format!("/v1/games/{id}/analysis"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!((a["outcome"].as_str(), a["sg"].as_u64()), (Some("P"), Some(0)));
}

#[tokio::test]
async fn moves_and_errors() {
    let app = app();
    let g = create(&app, "path:4").await;
    let id = g["id"].as_str().unwrap().to_string();
    let moves = format!("/v1/games/{id}/moves");

    let (status, s) = call(&app, "POST", &moves, Some(json!({ "vertex": 0 }))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(ids(&s), vec![1, 2, 3]);
    assert_eq!(s["to_move"], 2);

    let (status, _) = call(&app, "POST", &moves, Some(json!({ "vertex": 0 }))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (_, unchanged) = call(&app, "GET", &format!("/v1/games/{id}"), None).await;
    assert_eq!(unchanged, s);

    let (status, _) = call(&app, "POST", &moves, Some(json!({ "vert": 1 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = call(&app, "POST", &moves, Some(json!("nonsense"))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    // deleting the middle vertex of P3 empties the board
    let (_, s) = call(&app, "POST", &moves, Some(json!({ "vertex": 2 }))).await;
    assert_eq!(s["finished"], true);
    assert_eq!(s["winner"], 2);
    let (status, _) = call(&app, "POST", &moves, Some(json!({ "vertex": 1 }))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    let (status, _) = call(&app, "POST", &format!("/v1/games/{id}/engine-move"), None).await;
    assert_eq!(status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn unknown_game_and_bad_spec() {
    let app = app();
    let (status, _) = call(&app, "GET", "/v1/games/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = call(&app, "POST", "/v1/games/nope/moves", Some(json!({ "vertex": 1 }))).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, v) = call(&app, "POST", "/v1/games", Some(json!({ "spec": "wheel:2" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(v["error"].is_string());
    let (status, _) = call(&app, "POST", "/v1/games", Some(json!({ "spec": "path:3", "starting_player": 5 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn engine_plays_the_hub() {
    let app = app();
    let g = create(&app, "wheel:5").await;
    let id = g["id"].as_str().unwrap();
    let (status, r) = call(&app, "POST", &format!("/v1/games/{id}/engine-move"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(r["vertex"], 4);
    assert_eq!(ids(&r["state"]), vec![0, 1, 2, 3]);
    let (_, a) = call(&app, "GET", &format!("/v1/games/{id}/analysis"), None).await;
    assert_eq!(a["outcome"], "P");
}

#[tokio::test]
async fn analysis_examples() {
    let app = app();
    let c6 = create(&app, "cycle:6").await;
    let (_, a) = call(&app, "GET", &format!("/v1/games/{}/analysis", c6["id"].as_str().unwrap()), None).await;
    assert_eq!(a["outcome"], "P");
    assert_eq!(a["winning_moves"], json!([]));
    let p5 = create(&app, "path:5").await;
    let (_, a) = call(&app, "GET", &format!("/v1/games/{}/analysis", p5["id"].as_str().unwrap()), None).await;
    assert_eq!(a["outcome"], "N");
    assert!(a["winning_moves"].as_array().unwrap().contains(&json!(2)));

    let big = create(&app, "complete:17").await;
    let (status, _) = call(&app, "GET", &format!("/v1/games/{}/analysis", big["id"].as_str().unwrap()), None).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let (status, _) = call(&app, "POST", &format!("/v1/games/{}/moves", big["id"].as_str().unwrap()), Some(json!({ "vertex": 3 }))).await;
    assert_eq!(status, StatusCode::OK);
}

/// Human plays the lowest vertex, engine replies; the state after each ply matches GET.
#[tokio::test]
async fn round_trip_and_export() {
    let app = app();
    let g = create(&app, "wheel:7").await;
    let id = g["id"].as_str().unwrap().to_string();
    let mut plies = 0;
    loop {
        let (_, s) = call(&app, "GET", &format!("/v1/games/{id}"), None).await;
        if s["finished"] == true {
            break;
        }
        let v = ids(&s)[0];
        let (_, after) = call(&app, "POST", &format!("/v1/games/{id}/moves"), Some(json!({ "vertex": v }))).await;
        plies += 1;
        let (_, fetched) = call(&app, "GET", &format!("/v1/games/{id}"), None).await;
        assert_eq!(after, fetched);
        if after["finished"] == true {
            break;
        }
        let (_, r) = call(&app, "POST", &format!("/v1/games/{id}/engine-move"), None).await;
        plies += 1;
        let (_, fetched) = call(&app, "GET", &format!("/v1/games/{id}"), None).await;
        assert_eq!(r["state"], fetched);
    }
    let (status, export) = call(&app, "GET", &format!("/v1/games/{id}/export"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(export["history"].as_array().unwrap().len(), plies);
    assert_eq!(export["initial"]["vertices"].as_array().unwrap().len(), 7);
    assert_eq!(export["spec"], "wheel:7");
}

#[tokio::test]
async fn one_shot_endpoints() {
    let app = app();
    let (status, a) = call(&app, "POST", "/v1/analyze", Some(json!({ "spec": "kpartite:1,1,2" }))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(a["outcome"], "N");
    assert_eq!(a["winning_moves"], json!([2, 3]));
    assert_eq!(a["prediction"]["outcome"], "N");

    let (status, r) = call(&app, "POST", "/v1/random", Some(json!({ "n": 3 }))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(r["histogram"]["p_counts"], json!([1, 0, 0, 1]));
    assert_eq!(r["crossings"]["roots"].as_array().unwrap().len(), 2);

    let (status, r) = call(&app, "POST", "/v1/random", Some(json!({ "n": 3, "p": 0.5, "trials": 1000, "seed": 1 }))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(r["monte_carlo"]["trials"], 1000);

    let (status, _) = call(&app, "POST", "/v1/random", Some(json!({ "n": 3, "p": 2.0 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = call(&app, "POST", "/v1/random", Some(json!({ "n": 9 }))).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn idle_sessions_expire() {
    let app = router(AppState::new(Duration::from_millis(50)), None);
    let g = create(&app, "path:3").await;
    let id = g["id"].as_str().unwrap();
    tokio::time::sleep(Duration::from_millis(120)).await;
    let (status, _) = call(&app, "GET", &format!("/v1/games/{id}"), None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn sessions_are_independent() {
    let app = app();
    let a = create(&app, "path:4").await;
    let b = create(&app, "path:4").await;
    let (ida, idb) = (a["id"].as_str().unwrap(), b["id"].as_str().unwrap());
    let (ua, ub) = (format!("/v1/games/{ida}/moves"), format!("/v1/games/{idb}/moves"));
    let (ra, rb) = tokio::join!(
        call(&app, "POST", &ua, Some(json!({ "vertex": 0 }))),
        call(&app, "POST", &ub, Some(json!({ "vertex": 3 }))),
    );
    assert_eq!(ids(&ra.1), vec![1, 2, 3]);
    assert_eq!(ids(&rb.1), vec![0, 1, 2]);
}
