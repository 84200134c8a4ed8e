//! Interactive play state: one game between two players on a fixed starting graph.

use serde::Serialize;

use crate::engine::{follower, normalize, Move};
use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::graph::{Graph, Vertex};
use crate::graph6::parse_graph6;
use crate::solver::{Outcome, Solver, Tiebreak};

pub type Player = u8;

fn other(p: Player) -> Player {
    3 - p
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "state", rename_all = "kebab-case")]
pub enum Status {
    InProgress,
    Finished { winner: Player },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ply {
    pub player: Player,
    pub vertex: Vertex,
    /// Vertices left after the move.
    pub remaining: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub outcome: Outcome,
    pub sg: Option<u32>,
    pub winning_moves: Vec<Vertex>,
}

#[derive(Debug, Clone)]
pub struct GameSession {
    id: String,
    spec: String,
    initial: Graph,
    current: Graph,
    starting_player: Player,
    to_move: Player,
    history: Vec<Ply>,
    status: Status,
}

/// Family spec, `g6:` spec, or bare graph6.
pub fn parse_board(spec: &str) -> Result<Graph> {
    match spec.parse::<FamilySpec>() {
        Ok(f) => f.build(),
        Err(family_err) => parse_graph6(spec).map_err(|_| family_err),
    }
}

impl GameSession {
    pub fn create(id: impl Into<String>, spec: &str, starting_player: Player) -> Result<Self> {
        if !matches!(starting_player, 1 | 2) {
            return Err(Error::InvalidArgument(format!(
                "starting player must be 1 or 2, got {starting_player}"
            )));
        }
        let board = normalize(&parse_board(spec)?);
        let status = if board.is_empty() {
            Status::Finished {
                winner: other(starting_player),
            }
        } else {
            Status::InProgress
        };
        Ok(GameSession {
            id: id.into(),
            spec: spec.to_string(),
            initial: board.clone(),
            current: board,
            starting_player,
            to_move: starting_player,
            history: Vec::new(),
            status,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn initial(&self) -> &Graph {
        &self.initial
    }

    pub fn current(&self) -> &Graph {
        &self.current
    }

    pub fn starting_player(&self) -> Player {
        self.starting_player
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    pub fn history(&self) -> &[Ply] {
        &self.history
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_finished(&self) -> bool {
        matches!(self.status, Status::Finished { .. })
    }

    /// Plays `vertex` for the side to move. On error the session is unchanged.
    pub fn human_move(&mut self, vertex: Vertex) -> Result<()> {
        if self.is_finished() {
            return Err(Error::GameFinished);
        }
        let next = follower(&self.current, Move(vertex))?;
        let player = self.to_move;
        self.history.push(Ply {
            player,
            vertex,
            remaining: next.order(),
        });
        self.current = next;
        self.to_move = other(player);
        if self.current.is_empty() {
            self.status = Status::Finished { winner: player };
        }
        Ok(())
    }

    /// Plays the solver's best move (lowest id among winners) and returns it.
    pub fn engine_move(&mut self, solver: &Solver) -> Result<Vertex> {
        if self.is_finished() {
            return Err(Error::GameFinished);
        }
        let Move(v) = solver
            .best_move(&self.current, Tiebreak::LowestId)?
            .expect("a game in progress has a move");
        self.human_move(v)?;
        Ok(v)
    }

    pub fn analysis(&self, solver: &Solver) -> Result<Analysis> {
        let sg = solver.sg_value(&self.current)?;
        let winning_moves = solver
            .winning_moves(&self.current)?
            .into_iter()
            .map(|m| m.0)
            .collect();
        Ok(Analysis {
            outcome: sg.outcome(),
            sg: Some(sg.0),
            winning_moves,
        })
    }

    /// Reapplies the history to the initial board.
    pub fn replay(&self) -> Result<Graph> {
        self.history
            .iter()
            .try_fold(self.initial.clone(), |g, ply| follower(&g, Move(ply.vertex)))
    }
}
