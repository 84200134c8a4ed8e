//! Memoized Sprague-Grundy evaluation of Grim positions.
//!
//! A position is split into connected components whose values are combined
//! by xor. Each component is evaluated as the mex of its followers' values,
//! using an explicit work stack so deep positions (long paths) do not depend
//! on the call-stack size. Component values are cached by canonical key, or
//! by length for paths and cycles, whose followers never leave the path
//! family; those two shapes are exempt from the component cap.

use std::fmt;

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form_colored, canonical_form_with_cap, CanonicalKey};
use crate::engine::{follower_at, normalize, weighted_follower_at, Move, WeightedGraph};
use crate::error::{Error, Result};
use crate::graph::{components, Graph};

pub const DEFAULT_COMPONENT_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SgValue(pub u32);

impl SgValue {
    pub fn outcome(self) -> Outcome {
        if self.0 == 0 {
            Outcome::P
        } else {
            Outcome::N
        }
    }
}

impl fmt::Display for SgValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `N`: the player to move wins with perfect play. `P`: the previous player does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    N,
    P,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::N => "N",
            Outcome::P => "P",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Tiebreak {
    #[default]
    LowestId,
    HighestId,
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Largest component (in vertices) evaluated through canonical keys.
    pub component_cap: usize,
    pub memo: bool,
    /// Split positions into components and xor their values.
    pub decompose: bool,
    /// Key path and cycle components by length and exempt them from the cap.
    pub path_shortcut: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            component_cap: DEFAULT_COMPONENT_CAP,
            memo: true,
            decompose: true,
            path_shortcut: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum UnitKey {
    Path(usize),
    Cycle(usize),
    Canon(CanonicalKey),
}

/// A piece of a position evaluated on its own.
#[derive(Debug, Default)]
struct Unit {
    graph: Graph,
    key: Option<UnitKey>,
}

struct Frame {
    unit: Unit,
    next_move: usize,
    parts: Vec<Unit>,
    part_idx: usize,
    in_follower: bool,
    acc: u32,
    seen: Vec<bool>,
    received: Option<u32>,
}

impl Frame {
    fn new(unit: Unit) -> Self {
        Frame {
            unit,
            next_move: 0,
            parts: Vec::new(),
            part_idx: 0,
            in_follower: false,
            acc: 0,
            seen: Vec::new(),
            received: None,
        }
    }

    fn mark(&mut self, v: u32) {
        let v = v as usize;
        if self.seen.len() <= v {
            self.seen.resize(v + 1, false);
        }
        self.seen[v] = true;
    }

    fn mex(&self) -> u32 {
        self.seen.iter().position(|&s| !s).unwrap_or(self.seen.len()) as u32
    }
}

/// Sprague-Grundy solver with a shared, thread-safe memo.
///
/// Memo entries are pure functions of their keys, so concurrent inserts of
/// the same key are harmless and the last write wins.
#[derive(Debug, Default)]
pub struct Solver {
    config: SolverConfig,
    memo: DashMap<UnitKey, u32>,
    weighted_memo: DashMap<CanonicalKey, u32>,
}

impl Solver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_config(config: SolverConfig) -> Self {
        Solver {
            config,
            ..Default::default()
        }
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn clear(&self) {
        self.memo.clear();
        self.weighted_memo.clear();
    }

    pub fn sg_value(&self, g: &Graph) -> Result<SgValue> {
        let g = normalize(g);
        let mut acc = 0;
        for unit in self.split(&g)? {
            acc ^= match self.lookup(&unit) {
                Some(v) => v,
                None => self.eval_unit(unit)?,
            };
        }
        Ok(SgValue(acc))
    }

    pub fn outcome(&self, g: &Graph) -> Result<Outcome> {
        Ok(self.sg_value(g)?.outcome())
    }

    /// Moves leading to a P position, in ascending id order.
    pub fn winning_moves(&self, g: &Graph) -> Result<Vec<Move>> {
        let g = normalize(g);
        let mut out = Vec::new();
        for idx in 0..g.order() {
            if self.sg_value(&follower_at(&g, idx))?.0 == 0 {
                out.push(Move(g.id_at(idx)));
            }
        }
        Ok(out)
    }

    /// A winning move if one exists, otherwise the move leaving the opponent the
    /// largest value; ties go by `tiebreak`. `None` iff the position is empty.
    pub fn best_move(&self, g: &Graph, tiebreak: Tiebreak) -> Result<Option<Move>> {
        let g = normalize(g);
        let mut order: Vec<usize> = (0..g.order()).collect();
        if tiebreak == Tiebreak::HighestId {
            order.reverse();
        }
        let mut best: Option<(u32, usize)> = None;
        for idx in order {
            let v = self.sg_value(&follower_at(&g, idx))?.0;
            if v == 0 {
                return Ok(Some(Move(g.id_at(idx))));
            }
            if best.is_none_or(|(b, _)| v > b) {
                best = Some((v, idx));
            }
        }
        Ok(best.map(|(_, idx)| Move(g.id_at(idx))))
    }

    /// Value of weighted Grim, by exhaustive search over weighted states.
    pub fn weighted_value(&self, wg: &WeightedGraph) -> Result<SgValue> {
        let wg = wg.normalize();
        if wg.is_empty() {
            return Ok(SgValue(0));
        }
        let key = if self.config.memo {
            let key = canonical_form_colored(wg.graph(), wg.weights(), self.config.component_cap)?;
            if let Some(v) = self.weighted_memo.get(&key) {
                return Ok(SgValue(*v));
            }
            Some(key)
        } else {
            None
        };
        let mut seen = Vec::new();
        for idx in 0..wg.graph().order() {
            let v = self.weighted_value(&weighted_follower_at(&wg, idx))?.0 as usize;
            if seen.len() <= v {
                seen.resize(v + 1, false);
            }
            seen[v] = true;
        }
        let value = seen.iter().position(|&s| !s).unwrap_or(seen.len()) as u32;
        if let Some(key) = key {
            self.weighted_memo.insert(key, value);
        }
        Ok(SgValue(value))
    }

    fn lookup(&self, unit: &Unit) -> Option<u32> {
        unit.key.as_ref().and_then(|k| self.memo.get(k).map(|v| *v))
    }

    fn split(&self, g: &Graph) -> Result<Vec<Unit>> {
        if g.is_empty() {
            return Ok(Vec::new());
        }
        if self.config.decompose {
            components(g)
                .into_iter()
                .map(|c| self.make_unit(c, true))
                .collect()
        } else {
            let connected = g.is_connected();
            Ok(vec![self.make_unit(g.clone(), connected)?])
        }
    }

    fn make_unit(&self, graph: Graph, connected: bool) -> Result<Unit> {
        let n = graph.order();
        let shape = if self.config.path_shortcut && connected {
            path_or_cycle(&graph)
        } else {
            None
        };
        if shape.is_none() && n > self.config.component_cap {
            return Err(Error::CapExceeded {
                what: "solver component",
                size: n,
                cap: self.config.component_cap,
            });
        }
        let key = if !self.config.memo {
            None
        } else if let Some(shape) = shape {
            Some(shape)
        } else {
            Some(UnitKey::Canon(canonical_form_with_cap(
                &graph,
                self.config.component_cap,
            )?))
        };
        Ok(Unit { graph, key })
    }

    fn eval_unit(&self, root: Unit) -> Result<u32> {
        let mut stack = vec![Frame::new(root)];
        loop {
            let frame = stack.last_mut().expect("stack is nonempty inside the loop");
            if let Some(v) = frame.received.take() {
                frame.acc ^= v;
                frame.part_idx += 1;
            }
            let mut child = None;
            loop {
                if frame.in_follower && frame.part_idx < frame.parts.len() {
                    if let Some(v) = self.lookup(&frame.parts[frame.part_idx]) {
                        frame.acc ^= v;
                        frame.part_idx += 1;
                        continue;
                    }
                    child = Some(std::mem::take(&mut frame.parts[frame.part_idx]));
                    break;
                }
                if frame.in_follower {
                    let acc = frame.acc;
                    frame.mark(acc);
                    frame.in_follower = false;
                }
                if frame.next_move >= frame.unit.graph.order() {
                    break;
                }
                let f = follower_at(&frame.unit.graph, frame.next_move);
                frame.next_move += 1;
                frame.parts = self.split(&f)?;
                frame.part_idx = 0;
                frame.acc = 0;
                frame.in_follower = true;
            }
            if let Some(unit) = child {
                stack.push(Frame::new(unit));
                continue;
            }
            let done = stack.pop().expect("frame present");
            let value = done.mex();
            if let Some(key) = done.unit.key {
                self.memo.insert(key, value);
            }
            match stack.last_mut() {
                Some(parent) => parent.received = Some(value),
                None => return Ok(value),
            }
        }
    }
}

/// Recognizes a connected path (at least 2 vertices) or cycle.
fn path_or_cycle(g: &Graph) -> Option<UnitKey> {
    let n = g.order();
    if n < 2 || (0..n).any(|i| g.degree_at(i) > 2) {
        return None;
    }
    match g.size() {
        e if e + 1 == n => Some(UnitKey::Path(n)),
        e if e == n && n >= 3 => Some(UnitKey::Cycle(n)),
        _ => None,
    }
}
