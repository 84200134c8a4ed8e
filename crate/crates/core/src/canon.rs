//! Exact canonical labeling for small graphs.
//!
//! Individualization-refinement: an ordered partition is refined until
//! equitable (every vertex in a cell sees the same number of neighbors in
//! every cell), then the first smallest non-singleton cell is split by trying
//! each of its vertices in turn. Every discrete leaf induces a relabeling; the
//! canonical one minimizes the row-major adjacency bit string. Children that
//! a known automorphism maps onto an explored sibling are skipped, which
//! includes swapping twin vertices.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::emit_graph6;

pub const DEFAULT_CANON_CAP: usize = 16;

/// Found automorphisms kept for pruning; more only costs memory.
const MAX_STORED_AUTOMORPHISMS: usize = 128;

/// Isomorphism-invariant key: graph6 of the canonically relabeled graph,
/// followed by the vertex colors in canonical order when colors were given.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", String::from_utf8_lossy(&self.0))
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalKey> {
    canonical_form_with_cap(g, DEFAULT_CANON_CAP)
}

pub fn canonical_form_with_cap(g: &Graph, cap: usize) -> Result<CanonicalKey> {
    let order = canonical_order(g, None, cap)?;
    Ok(key_from_order(g, &order, None))
}

/// Canonical key of a vertex-colored graph; `colors[i]` belongs to position `i`.
pub fn canonical_form_colored(g: &Graph, colors: &[u32], cap: usize) -> Result<CanonicalKey> {
    assert_eq!(colors.len(), g.order(), "one color per vertex");
    let order = canonical_order(g, Some(colors), cap)?;
    Ok(key_from_order(g, &order, Some(colors)))
}

/// The canonical graph itself, on `0..n`.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let order = canonical_order(g, None, DEFAULT_CANON_CAP)?;
    Ok(relabeled(g, &order))
}

/// `order[p]` is the position (in `g`) of the vertex that gets canonical label `p`.
pub fn canonical_order(g: &Graph, colors: Option<&[u32]>, cap: usize) -> Result<Vec<usize>> {
    let n = g.order();
    let limit = cap.min(64);
    if n > limit {
        return Err(Error::CapExceeded {
            what: "canonicalization",
            size: n,
            cap: limit,
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let rows = g.adjacency_bits();
    let initial = match colors {
        None => vec![(0..n).collect::<Vec<_>>()],
        Some(colors) => {
            let mut distinct: Vec<u32> = colors.to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            distinct
                .iter()
                .map(|&c| (0..n).filter(|&i| colors[i] == c).collect())
                .collect()
        }
    };
    let mut search = Search {
        n,
        rows: &rows,
        best: None,
        automorphisms: Vec::new(),
        prefix: Vec::new(),
    };
    search.descend(initial);
    Ok(search.best.expect("search visits at least one leaf").1)
}

fn relabeled(g: &Graph, order: &[usize]) -> Graph {
    let n = order.len();
    let mut pos = vec![0usize; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let mut adj = vec![Vec::new(); n];
    for (p, &v) in order.iter().enumerate() {
        adj[p] = g.neighbor_indices(v).iter().map(|&w| pos[w]).collect();
        adj[p].sort_unstable();
    }
    Graph::from_index_adjacency(adj)
}

fn key_from_order(g: &Graph, order: &[usize], colors: Option<&[u32]>) -> CanonicalKey {
    let canon = relabeled(g, order);
    let mut bytes = emit_graph6(&canon)
        .expect("canonicalization cap is below the graph6 limit")
        .into_bytes();
    if let Some(colors) = colors {
        bytes.push(b';');
        for &v in order {
            bytes.extend_from_slice(colors[v].to_string().as_bytes());
            bytes.push(b',');
        }
    }
    CanonicalKey(bytes)
}

/// Splits cells until every vertex of a cell has the same neighbor count in each cell.
/// New cells are ordered by their count vectors, so the result is labeling-invariant.
fn refine(rows: &[u64], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<u64> = cells
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let counts = masks.iter().map(|m| (rows[v] & m).count_ones()).collect();
                    (counts, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

struct Search<'a> {
    n: usize,
    rows: &'a [u64],
    /// Best permuted matrix and the order producing it.
    best: Option<(Vec<u64>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
    prefix: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, cells: Vec<Vec<usize>>) {
        let cells = refine(self.rows, cells);
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(target) = target else {
            let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
            self.leaf(order);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if explored.iter().any(|&u| self.twins(u, v)) || self.same_orbit(&explored, v) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            self.prefix.push(v);
            self.descend(child);
            self.prefix.pop();
            explored.push(v);
        }
    }

    /// Transposing twins is an automorphism fixing every other vertex.
    fn twins(&self, u: usize, v: usize) -> bool {
        let (bu, bv) = (1u64 << u, 1u64 << v);
        self.rows[u] & !bv == self.rows[v] & !bu
    }

    /// Orbit test under the stored automorphisms that fix the current prefix pointwise.
    fn same_orbit(&self, explored: &[usize], v: usize) -> bool {
        if explored.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if self.prefix.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            any = true;
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == root)
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let n = self.n;
        let mut pos = vec![0usize; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        // column q sits at bit n-1-q so integer order equals bit-string order
        let matrix: Vec<u64> = order
            .iter()
            .map(|&v| {
                let mut row = 0u64;
                let mut bits = self.rows[v];
                while bits != 0 {
                    let w = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    row |= 1 << (n - 1 - pos[w]);
                }
                row
            })
            .collect();
        match &self.best {
            None => self.best = Some((matrix, order)),
            Some((best, best_order)) => match matrix.cmp(best) {
                Ordering::Less => self.best = Some((matrix, order)),
                Ordering::Equal => {
                    if self.automorphisms.len() < MAX_STORED_AUTOMORPHISMS {
                        let mut gamma = vec![0usize; n];
                        for (p, &b) in best_order.iter().enumerate() {
                            gamma[b] = order[p];
                        }
                        self.automorphisms.push(gamma);
                    }
                }
                Ordering::Greater => {}
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{graph_from_mask, labeled_graphs};
    use crate::family::make_family;
    use proptest::prelude::*;
    use std::collections::HashSet;

    /// Oracle: minimum upper-triangle bit string over all n! relabelings.
    fn brute_canonical(g: &Graph) -> Vec<bool> {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<bool>> = None;
        loop {
            let bits: Vec<bool> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| g.has_edge_at(perm[i], perm[j]))
                .collect();
            if best.as_ref().is_none_or(|b| bits < *b) {
                best = Some(bits);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best.unwrap()
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        if p.len() < 2 {
            return false;
        }
        let mut i = p.len() - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = p.len() - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    fn class_count_oracle(n: usize) -> usize {
        labeled_graphs(n)
            .map(|g| brute_canonical(&g))
            .collect::<HashSet<_>>()
            .len()
    }

    fn class_count(n: usize) -> usize {
        labeled_graphs(n)
            .map(|g| canonical_form(&g).unwrap())
            .collect::<HashSet<_>>()
            .len()
    }

    #[test]
    fn class_counts_match_oracle() {
        assert_eq!(class_count_oracle(4), 11);
        assert_eq!(class_count(4), 11);
        for n in 0..=6 {
            assert_eq!(class_count(n), class_count_oracle(n), "n = {n}");
        }
    }

    #[test]
    fn simple_pairs() {
        let key = |s| canonical_form(&make_family(s).unwrap()).unwrap();
        assert_eq!(key("path:3"), key("star:2"));
        assert_ne!(key("path:5"), key("cycle:5"));
        assert_ne!(key("complete:4"), key("cycle:4"));
    }

    #[test]
    fn cap_enforced() {
        let g = make_family("path:17").unwrap();
        assert!(matches!(
            canonical_form(&g),
            Err(Error::CapExceeded { size: 17, .. })
        ));
        assert!(canonical_form_with_cap(&g, 20).is_ok());
    }

    #[test]
    fn symmetric_graphs_are_fast() {
        for s in [
            "complete:16",
            "kpartite:4,4,4,4",
            "cycle:16",
            "cart(cycle:4,cycle:4)",
            "union(union(union(complete:2,complete:2),union(complete:2,complete:2)),union(union(complete:2,complete:2),union(complete:2,complete:2)))",
            "union(union(cycle:4,cycle:4),union(cycle:4,cycle:4))",
        ] {
            let g = make_family(s).unwrap();
            canonical_form(&g).unwrap();
        }
        canonical_form(&Graph::edgeless(16)).unwrap();
    }

    #[test]
    fn colors_distinguish() {
        let k2 = make_family("complete:2").unwrap();
        let a = canonical_form_colored(&k2, &[2, 1], 16).unwrap();
        let b = canonical_form_colored(&k2, &[1, 2], 16).unwrap();
        let c = canonical_form_colored(&k2, &[1, 1], 16).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let p3 = make_family("path:3").unwrap();
        let end = canonical_form_colored(&p3, &[2, 1, 1], 16).unwrap();
        let mid = canonical_form_colored(&p3, &[1, 2, 1], 16).unwrap();
        assert_ne!(end, mid);
        assert_eq!(end, canonical_form_colored(&p3, &[1, 1, 2], 16).unwrap());
    }

    fn shuffled(g: &Graph, seed: u64) -> Graph {
        let n = g.order();
        let mut perm: Vec<u32> = (0..n as u32).collect();
        let mut s = seed | 1;
        for i in (1..n).rev() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            perm.swap(i, (s % (i as u64 + 1)) as usize);
        }
        g.relabel(|v| perm[v as usize]).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn invariant_under_relabeling(n in 0usize..=8, mask in any::<u64>(), seed in any::<u64>()) {
            let m = n * n.saturating_sub(1) / 2;
            let g = graph_from_mask(n, mask & ((1u64 << m) - 1));
            let h = shuffled(&g, seed);
            prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        }
    }
}
