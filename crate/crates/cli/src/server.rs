//! HTTP game service.
//!
//! Sessions live in memory and expire after a period without requests.
//! Requests to one session are serialized by a per-session lock; solver work
//! runs on the blocking pool.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use grim_core::random::{crossings, exact_histogram, monte_carlo, polynomial_string, w2, DEFAULT_TOLERANCE};
use grim_core::session::{Analysis, GameSession, Player};
use grim_core::{Error, Solver, Vertex};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tokio::sync::Mutex as SessionLock;
use tower_http::services::ServeDir;

use crate::view::{solve, GameExport, GameState};

pub const DEFAULT_TTL: Duration = Duration::from_secs(60 * 60);

struct Entry {
    session: GameSession,
    touched: Instant,
}

#[derive(Clone)]
pub struct AppState {
    solver: Arc<Solver>,
    sessions: Arc<Mutex<HashMap<String, Arc<SessionLock<Entry>>>>>,
    ttl: Duration,
}

impl AppState {
    pub fn new(ttl: Duration) -> Self {
        AppState {
            solver: Arc::new(Solver::new()),
            sessions: Arc::default(),
            ttl,
        }
    }

    fn insert(&self, session: GameSession) {
        let entry = Entry {
            session,
            touched: Instant::now(),
        };
        let mut map = self.sessions.lock().expect("session map poisoned");
        map.insert(entry.session.id().to_string(), Arc::new(SessionLock::new(entry)));
    }

    /// Drops expired sessions, then looks up `id`.
    fn lookup(&self, id: &str) -> Result<Arc<SessionLock<Entry>>, ApiError> {
        let mut map = self.sessions.lock().expect("session map poisoned");
        let ttl = self.ttl;
        map.retain(|_, e| e.try_lock().map_or(true, |e| e.touched.elapsed() < ttl));
        map.get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no game {id:?}")))
    }

    /// Runs `f` on the session under its lock, on the blocking pool.
    async fn with_session<T: Send + 'static>(
        &self,
        id: &str,
        f: impl FnOnce(&mut GameSession, &Solver) -> Result<T, ApiError> + Send + 'static,
    ) -> Result<T, ApiError> {
        let lock = self.lookup(id)?;
        let mut guard = lock.lock_owned().await;
        guard.touched = Instant::now();
        let solver = self.solver.clone();
        tokio::task::spawn_blocking(move || f(&mut guard.session, &solver))
            .await
            .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError {
            status,
            message: message.into(),
        }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::UnknownVertex(_) => StatusCode::NOT_FOUND,
            Error::GameFinished => StatusCode::CONFLICT,
            Error::CapExceeded { .. } => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::BAD_REQUEST,
        };
        ApiError::new(status, e.to_string())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

#[derive(Deserialize)]
struct CreateGame {
    spec: String,
    #[serde(default = "first_player")]
    starting_player: Player,
}

fn first_player() -> Player {
    1
}

#[derive(Deserialize)]
struct MoveRequest {
    vertex: Vertex,
}

#[derive(Serialize)]
struct EngineReply {
    vertex: Vertex,
    state: GameState,
}

#[derive(Deserialize)]
struct AnalyzeRequest {
    spec: String,
}

#[derive(Deserialize)]
struct RandomRequest {
    n: usize,
    p: Option<f64>,
    trials: Option<u64>,
    #[serde(default)]
    seed: u64,
}

async fn create_game(
    State(app): State<AppState>,
    body: Result<Json<CreateGame>, JsonRejection>,
) -> Result<(StatusCode, Json<GameState>), ApiError> {
    let Json(req) = body?;
    let id = uuid::Uuid::new_v4().to_string();
    let session = GameSession::create(id, &req.spec, req.starting_player)?;
    let state = GameState::of(&session);
    app.insert(session);
    Ok((StatusCode::CREATED, Json(state)))
}

async fn get_game(State(app): State<AppState>, Path(id): Path<String>) -> ApiResult<GameState> {
    app.with_session(&id, |s, _| Ok(GameState::of(s))).await.map(Json)
}

async fn human_move(
    State(app): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<MoveRequest>, JsonRejection>,
) -> ApiResult<GameState> {
    let Json(req) = body?;
    app.with_session(&id, move |s, _| {
        s.human_move(req.vertex)?;
        Ok(GameState::of(s))
    })
    .await
    .map(Json)
}

async fn engine_move(State(app): State<AppState>, Path(id): Path<String>) -> ApiResult<EngineReply> {
    app.with_session(&id, |s, solver| {
        let vertex = s.engine_move(solver)?;
        Ok(EngineReply {
            vertex,
            state: GameState::of(s),
        })
    })
    .await
    .map(Json)
}

async fn analysis(State(app): State<AppState>, Path(id): Path<String>) -> ApiResult<Analysis> {
    app.with_session(&id, |s, solver| Ok(s.analysis(solver)?))
        .await
        .map(Json)
}

async fn export(State(app): State<AppState>, Path(id): Path<String>) -> ApiResult<GameExport> {
    app.with_session(&id, |s, _| Ok(GameExport::of(s))).await.map(Json)
}

async fn analyze(
    State(app): State<AppState>,
    body: Result<Json<AnalyzeRequest>, JsonRejection>,
) -> ApiResult<Value> {
    let Json(req) = body?;
    let solver = app.solver.clone();
    let report = tokio::task::spawn_blocking(move || solve(&req.spec, &solver))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))??;
    Ok(Json(serde_json::to_value(report).expect("report serializes")))
}

fn random_report(req: RandomRequest, solver: &Solver) -> Result<Value, Error> {
    if let Some(trials) = req.trials {
        let p = req
            .p
            .ok_or_else(|| Error::InvalidArgument("sampling needs p".into()))?;
        let est = monte_carlo(req.n, p, trials, req.seed, solver)?;
        return Ok(json!({ "n": req.n, "monte_carlo": est }));
    }
    let hist = exact_histogram(req.n, solver)?;
    let roots = crossings(&hist, DEFAULT_TOLERANCE)?;
    let at_p = req.p.map(|p| w2(&hist, p)).transpose()?;
    Ok(json!({
        "n": req.n,
        "histogram": hist,
        "polynomial": polynomial_string(&hist),
        "crossings": roots,
        "w2": at_p,
    }))
}

async fn random(
    State(app): State<AppState>,
    body: Result<Json<RandomRequest>, JsonRejection>,
) -> ApiResult<Value> {
    let Json(req) = body?;
    let solver = app.solver.clone();
    let value = tokio::task::spawn_blocking(move || random_report(req, &solver))
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))??;
    Ok(Json(value))
}

pub fn router(app: AppState, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/v1/games", post(create_game))
        .route("/v1/games/{id}", get(get_game))
        .route("/v1/games/{id}/moves", post(human_move))
        .route("/v1/games/{id}/engine-move", post(engine_move))
        .route("/v1/games/{id}/analysis", get(analysis))
        .route("/v1/games/{id}/export", get(export))
        .route("/v1/analyze", post(analyze))
        .route("/v1/random", post(random))
        .with_state(app);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

pub async fn serve(port: u16, static_dir: Option<PathBuf>, ttl: Duration) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(AppState::new(ttl), static_dir)).await
}
