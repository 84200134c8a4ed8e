//! Grim move semantics.
//!
//! A move selects a vertex and deletes it with its edges; every vertex left
//! with degree zero is deleted in the same move. In the weighted variant a
//! selection only decrements the vertex's weight until it reaches zero, while
//! isolation still deletes a vertex whatever weight it has left.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::graph6::{emit_graph6, parse_graph6};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Move(pub Vertex);

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Removes every isolated vertex. Idempotent.
pub fn normalize(g: &Graph) -> Graph {
    let keep: Vec<usize> = (0..g.order()).filter(|&i| g.degree_at(i) > 0).collect();
    if keep.len() == g.order() {
        return g.clone();
    }
    g.induced_by_index(&keep)
}

pub fn legal_moves(g: &Graph) -> Vec<Move> {
    g.vertices().iter().map(|&v| Move(v)).collect()
}

/// The position after `m`: the vertex, its edges and any vertex thereby isolated are gone.
pub fn follower(g: &Graph, m: Move) -> Result<Graph> {
    let idx = g.index_of(m.0).ok_or(Error::UnknownVertex(m.0))?;
    Ok(follower_at(g, idx))
}

pub(crate) fn follower_at(g: &Graph, idx: usize) -> Graph {
    let nbrs = g.neighbor_indices(idx);
    let keep: Vec<usize> = (0..g.order())
        .filter(|&i| {
            if i == idx {
                return false;
            }
            let d = g.degree_at(i);
            // a neighbor whose only edge went to idx is stranded
            let lost = usize::from(nbrs.binary_search(&i).is_ok());
            d > lost
        })
        .collect();
    g.induced_by_index(&keep)
}

/// Graph whose vertices carry a positive selection count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    graph: Graph,
    weights: Vec<u32>,
}

impl WeightedGraph {
    /// `weights[i]` belongs to the vertex at position `i` (ascending id order).
    pub fn new(graph: Graph, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != graph.order() {
            return Err(Error::WeightCount {
                expected: graph.order(),
                got: weights.len(),
            });
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::InvalidWeight {
                vertex: graph.id_at(i),
                weight: 0,
            });
        }
        Ok(WeightedGraph { graph, weights })
    }

    pub fn unit(graph: Graph) -> Self {
        let weights = vec![1; graph.order()];
        WeightedGraph { graph, weights }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, v: Vertex) -> Option<u32> {
        self.graph.index_of(v).map(|i| self.weights[i])
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    /// Drops isolated vertices regardless of weight.
    pub fn normalize(&self) -> WeightedGraph {
        let keep: Vec<usize> = (0..self.graph.order())
            .filter(|&i| self.graph.degree_at(i) > 0)
            .collect();
        self.restrict(&keep)
    }

    fn restrict(&self, keep: &[usize]) -> WeightedGraph {
        WeightedGraph {
            graph: self.graph.induced_by_index(keep),
            weights: keep.iter().map(|&i| self.weights[i]).collect(),
        }
    }
}

impl fmt::Display for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let weights: Vec<String> = self.weights.iter().map(ToString::to_string).collect();
        let g6 = emit_graph6(&self.graph.densify()).map_err(|_| fmt::Error)?;
        write!(f, "wg:{g6};{}", weights.join(","))
    }
}

/// `wg:<graph6>;<w0>,<w1>,...`
impl FromStr for WeightedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .strip_prefix("wg:")
            .ok_or_else(|| Error::InvalidArgument(format!("weighted graph must start with wg: ({s})")))?;
        let (g6, weights) = body
            .split_once(';')
            .ok_or_else(|| Error::InvalidArgument("missing ';' before weights".into()))?;
        let graph = parse_graph6(g6)?;
        let weights = if weights.is_empty() {
            Vec::new()
        } else {
            weights
                .split(',')
                .map(|w| {
                    w.parse::<u32>()
                        .map_err(|_| Error::InvalidArgument(format!("bad weight {w:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        WeightedGraph::new(graph, weights)
    }
}

pub fn weighted_moves(wg: &WeightedGraph) -> Vec<Move> {
    legal_moves(&wg.graph)
}

pub fn weighted_follower(wg: &WeightedGraph, m: Move) -> Result<WeightedGraph> {
    let idx = wg.graph.index_of(m.0).ok_or(Error::UnknownVertex(m.0))?;
    Ok(weighted_follower_at(wg, idx))
}

pub(crate) fn weighted_follower_at(wg: &WeightedGraph, idx: usize) -> WeightedGraph {
    if wg.weights[idx] > 1 {
        let mut next = wg.clone();
        next.weights[idx] -= 1;
        return next;
    }
    let g = &wg.graph;
    let nbrs = g.neighbor_indices(idx);
    let keep: Vec<usize> = (0..g.order())
        .filter(|&i| {
            i != idx && g.degree_at(i) > usize::from(nbrs.binary_search(&i).is_ok())
        })
        .collect();
    wg.restrict(&keep)
}

/// Replaces each vertex of weight `t` by `t` pairwise non-adjacent copies sharing its
/// neighborhood. Copies of position `i` come before copies of position `i + 1`; ids are dense.
pub fn blowup(wg: &WeightedGraph) -> Graph {
    let g = &wg.graph;
    let mut first = Vec::with_capacity(g.order() + 1);
    let mut total = 0usize;
    for &w in &wg.weights {
        first.push(total);
        total += w as usize;
    }
    first.push(total);
    let mut adj = vec![Vec::new(); total];
    for i in 0..g.order() {
        let mut row = Vec::new();
        for &j in g.neighbor_indices(i) {
            row.extend(first[j]..first[j + 1]);
        }
        row.sort_unstable();
        for slot in &mut adj[first[i]..first[i + 1]] {
            slot.clone_from(&row);
        }
    }
    Graph::from_index_adjacency(adj)
}
