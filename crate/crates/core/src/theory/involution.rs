//! Search for order-2 automorphisms that pair every vertex with a non-neighbor.
//!
//! If such a pairing exists the second player mirrors every move, so the
//! position is P. With exactly one fixed vertex, deleting that vertex first
//! leaves a mirrored position, so the position is N.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub const DEFAULT_AUTOMORPHISM_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Involution {
    map: BTreeMap<Vertex, Vertex>,
}

impl Involution {
    pub fn apply(&self, v: Vertex) -> Option<Vertex> {
        self.map.get(&v).copied()
    }

    pub fn fixed_points(&self) -> Vec<Vertex> {
        self.map
            .iter()
            .filter_map(|(&a, &b)| (a == b).then_some(a))
            .collect()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.map.iter().filter(|(a, b)| a < b).map(|(&a, &b)| (a, b))
    }

    /// Checks: defined on exactly the vertex set, squares to the identity,
    /// preserves adjacency, and never maps a vertex to a neighbor.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        if self.map.len() != g.order() || !g.vertices().iter().all(|v| self.map.contains_key(v)) {
            return false;
        }
        for (&v, &w) in &self.map {
            if self.map.get(&w) != Some(&v) || g.has_edge(v, w) {
                return false;
            }
        }
        g.edges().into_iter().all(|(u, v)| {
            let (a, b) = (self.map[&u], self.map[&v]);
            g.has_edge(a, b)
        })
    }

    fn from_positions(g: &Graph, sigma: &[usize]) -> Self {
        let map = sigma
            .iter()
            .enumerate()
            .map(|(i, &j)| (g.id_at(i), g.id_at(j)))
            .collect();
        Involution { map }
    }
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.order() > cap {
        return Err(Error::CapExceeded {
            what: "automorphism search",
            size: g.order(),
            cap,
        });
    }
    Ok(())
}

pub fn find_pairing_involution(g: &Graph) -> Result<Option<Involution>> {
    find_pairing_involution_with_cap(g, DEFAULT_AUTOMORPHISM_CAP)
}

/// A fixed-point-free involutive automorphism with no vertex adjacent to its image.
pub fn find_pairing_involution_with_cap(g: &Graph, cap: usize) -> Result<Option<Involution>> {
    check_cap(g, cap)?;
    if g.order() % 2 == 1 {
        return Ok(None);
    }
    let mut sigma = vec![usize::MAX; g.order()];
    Ok(PairingSearch::new(g)
        .complete(&mut sigma)
        .then(|| Involution::from_positions(g, &sigma)))
}

pub fn find_near_involution(g: &Graph) -> Result<Option<(Involution, Vertex)>> {
    find_near_involution_with_cap(g, DEFAULT_AUTOMORPHISM_CAP)
}

/// An involutive automorphism with exactly one fixed vertex and no vertex adjacent
/// to its image. The fixed vertex is returned alongside.
pub fn find_near_involution_with_cap(
    g: &Graph,
    cap: usize,
) -> Result<Option<(Involution, Vertex)>> {
    check_cap(g, cap)?;
    if (0..g.order()).any(|i| g.degree_at(i) == 0) {
        return Err(Error::IsolatedVertex);
    }
    if g.order().is_multiple_of(2) {
        return Ok(None);
    }
    let search = PairingSearch::new(g);
    for fixed in 0..g.order() {
        let mut sigma = vec![usize::MAX; g.order()];
        sigma[fixed] = fixed;
        if search.complete(&mut sigma) {
            return Ok(Some((Involution::from_positions(g, &sigma), g.id_at(fixed))));
        }
    }
    Ok(None)
}

/// Componentwise map on `G □ H` (vertex `(x, y)` at position `x * |H| + y`).
pub fn product_involution(
    g: &Graph,
    sigma_g: &Involution,
    h: &Graph,
    sigma_h: &Involution,
) -> Involution {
    let m = h.order();
    let mut map = BTreeMap::new();
    for x in 0..g.order() {
        let gx = g.index_of(sigma_g.map[&g.id_at(x)]).expect("image is a vertex");
        for y in 0..m {
            let hy = h.index_of(sigma_h.map[&h.id_at(y)]).expect("image is a vertex");
            map.insert((x * m + y) as Vertex, (gx * m + hy) as Vertex);
        }
    }
    Involution { map }
}

struct PairingSearch<'a> {
    g: &'a Graph,
    rows: Vec<u64>,
}

impl<'a> PairingSearch<'a> {
    fn new(g: &'a Graph) -> Self {
        PairingSearch {
            g,
            rows: g.adjacency_bits(),
        }
    }

    fn adj(&self, a: usize, b: usize) -> bool {
        self.rows[a] >> b & 1 == 1
    }

    /// Mapping `v <-> w` agrees with every pair already fixed.
    fn consistent(&self, sigma: &[usize], v: usize, w: usize) -> bool {
        sigma.iter().enumerate().all(|(x, &y)| {
            y == usize::MAX || (self.adj(v, x) == self.adj(w, y) && self.adj(w, x) == self.adj(v, y))
        })
    }

    /// Extends `sigma` (usize::MAX = unassigned) to a full pairing, in place.
    fn complete(&self, sigma: &mut [usize]) -> bool {
        let Some(v) = sigma.iter().position(|&s| s == usize::MAX) else {
            return true;
        };
        for w in v + 1..sigma.len() {
            if sigma[w] != usize::MAX
                || self.adj(v, w)
                || self.g.degree_at(v) != self.g.degree_at(w)
                || !self.consistent(sigma, v, w)
            {
                continue;
            }
            sigma[v] = w;
            sigma[w] = v;
            if self.complete(sigma) {
                return true;
            }
            sigma[v] = usize::MAX;
            sigma[w] = usize::MAX;
        }
        false
    }
}
