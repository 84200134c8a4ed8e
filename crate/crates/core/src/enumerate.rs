//! Exhaustive enumeration of small graphs, labeled and up to isomorphism.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::canon::{canonical_form_with_cap, canonical_graph};
use crate::graph::Graph;

/// Vertex pairs `(i, j)`, `i < j`, in mask bit order.
pub fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// Graph on `0..n` whose edge `k` (in [`pair_list`] order) is present iff bit `k` is set.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut adj = vec![Vec::new(); n];
    for (k, (i, j)) in pair_list(n).into_iter().enumerate() {
        if mask >> k & 1 == 1 {
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    for row in &mut adj {
        row.sort_unstable();
    }
    Graph::from_index_adjacency(adj)
}

/// All `2^(n(n-1)/2)` labeled graphs on `0..n`.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let m = n * n.saturating_sub(1) / 2;
    assert!(m < 64, "too many labeled graphs to enumerate");
    (0..1u64 << m).map(move |mask| graph_from_mask(n, mask))
}

/// One representative (in canonical labeling) per isomorphism class on exactly `n` vertices.
///
/// Built by extending every class on `n - 1` vertices with a new vertex in all
/// possible ways and deduplicating by canonical key.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty()];
    for k in 1..=n {
        let candidates: Vec<Graph> = level
            .par_iter()
            .flat_map_iter(|g| {
                (0..1u64 << (k - 1)).map(move |nbrs| {
                    let mut adj: Vec<Vec<usize>> =
                        (0..k - 1).map(|i| g.neighbor_indices(i).to_vec()).collect();
                    let mut last = Vec::new();
                    for (i, row) in adj.iter_mut().enumerate() {
                        if nbrs >> i & 1 == 1 {
                            row.push(k - 1);
                            last.push(i);
                        }
                    }
                    adj.push(last);
                    Graph::from_index_adjacency(adj)
                })
            })
            .collect();
        let keyed: Vec<_> = candidates
            .into_par_iter()
            .map(|g| (canonical_form_with_cap(&g, 64).expect("within cap"), g))
            .collect();
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for (key, g) in keyed {
            if seen.insert(key) {
                next.push(canonical_graph_uncapped(&g));
            }
        }
        level = next;
    }
    level
}

fn canonical_graph_uncapped(g: &Graph) -> Graph {
    if g.order() <= crate::canon::DEFAULT_CANON_CAP {
        canonical_graph(g).expect("within cap")
    } else {
        g.clone()
    }
}

/// Connected isomorphism classes on exactly `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    nonisomorphic_graphs(n)
        .into_iter()
        .filter(Graph::is_connected)
        .collect()
}
