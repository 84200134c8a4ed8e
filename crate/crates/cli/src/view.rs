//! JSON shapes shared by the CLI and the HTTP service.

use grim_core::session::{GameSession, Ply, Player, Status};
use grim_core::theory::{classify_family, Prediction};
use grim_core::{emit_graph6, FamilySpec, Graph, Outcome, Solver, Vertex};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct VertexView {
    pub id: Vertex,
}

#[derive(Debug, Serialize)]
pub struct BoardView {
    pub vertices: Vec<VertexView>,
    pub edges: Vec<[Vertex; 2]>,
    pub graph6: Option<String>,
}

impl BoardView {
    pub fn of(g: &Graph) -> Self {
        BoardView {
            vertices: g.vertices().iter().map(|&id| VertexView { id }).collect(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            graph6: emit_graph6(g).ok(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GameState {
    pub id: String,
    pub spec: String,
    #[serde(flatten)]
    pub board: BoardView,
    pub to_move: Player,
    pub status: Status,
    pub finished: bool,
    pub winner: Option<Player>,
    pub history: Vec<Ply>,
}

impl GameState {
    pub fn of(s: &GameSession) -> Self {
        let winner = match s.status() {
            Status::Finished { winner } => Some(winner),
            Status::InProgress => None,
        };
        GameState {
            id: s.id().to_string(),
            spec: s.spec().to_string(),
            board: BoardView::of(s.current()),
            to_move: s.to_move(),
            status: s.status(),
            finished: s.is_finished(),
            winner,
            history: s.history().to_vec(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GameExport {
    pub id: String,
    pub spec: String,
    pub starting_player: Player,
    pub initial: BoardView,
    pub history: Vec<Ply>,
    pub current: BoardView,
    pub status: Status,
}

impl GameExport {
    pub fn of(s: &GameSession) -> Self {
        GameExport {
            id: s.id().to_string(),
            spec: s.spec().to_string(),
            starting_player: s.starting_player(),
            initial: BoardView::of(s.initial()),
            history: s.history().to_vec(),
            current: BoardView::of(s.current()),
            status: s.status(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub spec: String,
    #[serde(flatten)]
    pub board: BoardView,
    pub outcome: Outcome,
    pub sg: u32,
    pub winning_moves: Vec<Vertex>,
    pub prediction: Option<Prediction>,
}

/// Solves `spec` (family spec or graph6) in full.
pub fn solve(spec: &str, solver: &Solver) -> grim_core::Result<SolveReport> {
    let g = grim_core::session::parse_board(spec)?;
    let sg = solver.sg_value(&g)?;
    let winning_moves = solver.winning_moves(&g)?.into_iter().map(|m| m.0).collect();
    let prediction = spec
        .parse::<FamilySpec>()
        .ok()
        .and_then(|f| classify_family(&f, None).ok());
    Ok(SolveReport {
        spec: spec.to_string(),
        board: BoardView::of(&g),
        outcome: sg.outcome(),
        sg: sg.0,
        winning_moves,
        prediction,
    })
}
