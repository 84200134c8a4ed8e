//! Finite simple undirected graphs with stable vertex identities.
//!
//! A [`Graph`] keeps its vertex ids sorted and stores adjacency by position,
//! so deleting vertices keeps the survivors' original ids while lookups stay
//! a binary search away.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Vertex identifier. Dense (`0..n`) after construction; stable under deletion.
pub type Vertex = u32;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    ids: Vec<Vertex>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Edgeless graph on `0..n`.
    pub fn edgeless(n: usize) -> Self {
        Graph {
            ids: (0..n as Vertex).collect(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Graph on `0..n` with the given edges.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        Self::from_labeled((0..n as Vertex).collect::<Vec<_>>(), edges.iter().copied())
    }

    /// Graph with arbitrary vertex ids. Duplicate edges are merged.
    pub fn from_labeled(
        ids: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self> {
        let mut ids: Vec<Vertex> = ids.into_iter().collect();
        ids.sort_unstable();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0]));
            }
        }
        let mut adj = vec![Vec::new(); ids.len()];
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let iu = ids.binary_search(&u).map_err(|_| Error::UnknownVertex(u))?;
            let iv = ids.binary_search(&v).map_err(|_| Error::UnknownVertex(v))?;
            adj[iu].push(iv);
            adj[iv].push(iu);
        }
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
        }
        Ok(Graph { ids, adj })
    }

    /// Builds a graph on `0..n` from symmetric index adjacency without validation.
    pub(crate) fn from_index_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let ids = (0..adj.len() as Vertex).collect();
        Graph { ids, adj }
    }

    pub fn order(&self) -> usize {
        self.ids.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.ids
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.index_of(v).is_some()
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.ids.binary_search(&v).ok()
    }

    pub fn id_at(&self, idx: usize) -> Vertex {
        self.ids[idx]
    }

    /// Neighbor positions of the vertex at position `idx`, ascending.
    pub fn neighbor_indices(&self, idx: usize) -> &[usize] {
        &self.adj[idx]
    }

    pub fn neighbors(&self, v: Vertex) -> Result<impl Iterator<Item = Vertex> + '_> {
        let i = self.index_of(v).ok_or(Error::UnknownVertex(v))?;
        Ok(self.adj[i].iter().map(move |&j| self.ids[j]))
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        let i = self.index_of(v).ok_or(Error::UnknownVertex(v))?;
        Ok(self.adj[i].len())
    }

    pub fn degree_at(&self, idx: usize) -> usize {
        self.adj[idx].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.adj[i].binary_search(&j).is_ok(),
            _ => false,
        }
    }

    pub(crate) fn has_edge_at(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.size());
        for (i, row) in self.adj.iter().enumerate() {
            for &j in row {
                if i < j {
                    out.push((self.ids[i], self.ids[j]));
                }
            }
        }
        out
    }

    /// Copy with ids replaced by positions `0..n`.
    pub fn densify(&self) -> Graph {
        Graph::from_index_adjacency(self.adj.clone())
    }

    /// Relabels every vertex through `map`, which must be injective on the vertex set.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> Result<Graph> {
        let ids: Vec<Vertex> = self.ids.iter().map(|&v| map(v)).collect();
        let edges: Vec<(Vertex, Vertex)> =
            self.edges().into_iter().map(|(u, v)| (map(u), map(v))).collect();
        Graph::from_labeled(ids, edges)
    }

    /// Induced subgraph on the positions in `keep` (ascending), ids preserved.
    pub(crate) fn induced_by_index(&self, keep: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.order()];
        for (new, &old) in keep.iter().enumerate() {
            pos[old] = new;
        }
        let ids = keep.iter().map(|&i| self.ids[i]).collect();
        let adj = keep
            .iter()
            .map(|&i| {
                self.adj[i]
                    .iter()
                    .filter_map(|&j| (pos[j] != usize::MAX).then_some(pos[j]))
                    .collect()
            })
            .collect();
        Graph { ids, adj }
    }

    /// Subgraph with the given vertices (and their edges) removed; other ids kept.
    pub fn without_vertices(&self, removed: &[Vertex]) -> Graph {
        let removed: BTreeSet<Vertex> = removed.iter().copied().collect();
        let keep: Vec<usize> = (0..self.order())
            .filter(|&i| !removed.contains(&self.ids[i]))
            .collect();
        self.induced_by_index(&keep)
    }

    /// Adjacency rows as bitmasks over positions (bit `j` of row `i`). Requires `n <= 64`.
    pub fn adjacency_bits(&self) -> Vec<u64> {
        assert!(self.order() <= 64, "bit adjacency needs at most 64 vertices");
        self.adj
            .iter()
            .map(|row| row.iter().fold(0u64, |acc, &j| acc | (1u64 << j)))
            .collect()
    }

    /// Whether every vertex is reachable from every other. The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.component_indices().len() == 1
    }

    /// Connected components as sorted position lists, ordered by smallest member.
    pub(crate) fn component_indices(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut comp = Vec::new();
            while let Some(i) = stack.pop() {
                comp.push(i);
                for &j in &self.adj[i] {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.ids)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Disjoint union; `h` is shifted past `g` and the result is dense.
pub fn union(g: &Graph, h: &Graph) -> Graph {
    let offset = g.order();
    let mut adj: Vec<Vec<usize>> = g.adj.clone();
    adj.extend(
        h.adj
            .iter()
            .map(|row| row.iter().map(|&j| j + offset).collect()),
    );
    Graph::from_index_adjacency(adj)
}

/// Join: disjoint union plus every edge between the two vertex sets.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let (n, m) = (g.order(), h.order());
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(n + m);
    for row in &g.adj {
        let mut r = row.clone();
        r.extend(n..n + m);
        adj.push(r);
    }
    for row in &h.adj {
        let mut r: Vec<usize> = (0..n).collect();
        r.extend(row.iter().map(|&j| j + n));
        adj.push(r);
    }
    Graph::from_index_adjacency(adj)
}

/// Cartesian product. Vertex `(x, y)` gets id `x * |H| + y` (positions).
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    if g.is_empty() || h.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let m = h.order();
    let mut adj = vec![Vec::new(); g.order() * m];
    for x in 0..g.order() {
        for y in 0..m {
            let row = &mut adj[x * m + y];
            for &w in &g.adj[x] {
                row.push(w * m + y);
            }
            for &z in &h.adj[y] {
                row.push(x * m + z);
            }
            row.sort_unstable();
        }
    }
    Ok(Graph::from_index_adjacency(adj))
}

/// Maximal connected subgraphs with original ids, ordered by smallest id.
pub fn components(g: &Graph) -> Vec<Graph> {
    g.component_indices()
        .into_iter()
        .map(|c| g.induced_by_index(&c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n as Vertex).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::from_edges(2, &[(0, 5)]), Err(Error::UnknownVertex(5)));
        assert_eq!(
            Graph::from_labeled([1, 1], []),
            Err(Error::DuplicateVertex(1))
        );
    }

    #[test]
    fn multi_edges_collapse() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.size(), 1);
    }

    #[test]
    fn union_counts_add() {
        let g = union(&path(2), &path(2));
        assert_eq!((g.order(), g.size()), (4, 2));
        let e = union(&Graph::empty(), &path(3));
        assert_eq!(e, path(3));
    }

    #[test]
    fn join_counts() {
        let g = join(&path(3), &path(2));
        assert_eq!(g.size(), 2 + 1 + 6);
    }

    #[test]
    fn ladder_edge_count() {
        // 2 copies of P3 (2 edges each) plus 3 rungs
        let g = cartesian_product(&path(2), &path(3)).unwrap();
        assert_eq!((g.order(), g.size()), (6, 7));
        assert_eq!(
            cartesian_product(&Graph::empty(), &path(2)),
            Err(Error::EmptyOperand)
        );
    }

    #[test]
    fn components_keep_ids() {
        let g = union(&path(3), &path(3)).without_vertices(&[1]);
        let comps = components(&g);
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0].vertices(), &[0]);
        assert_eq!(comps[2].vertices(), &[3, 4, 5]);
        assert!(components(&Graph::empty()).is_empty());
        assert_eq!(components(&path(5)).len(), 1);
    }
}
