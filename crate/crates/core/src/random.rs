//! Win probabilities on Erdős–Rényi graphs `G(n, p)`.
//!
//! `W2(p)` is the probability that a random graph is a P position (the second
//! player wins), `W1(p) = 1 - W2(p)`. Exact values come from a per-edge-count
//! tally over all labeled graphs; larger `n` falls back to sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::graph_from_mask;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::solver::{Outcome, Solver};

pub const EXACT_CAP: usize = 6;
pub const GRID_STEP: f64 = 1e-3;
pub const DEFAULT_TOLERANCE: f64 = 1e-12;
/// Trials per RNG stream; the split does not depend on the thread count.
pub const MC_BLOCK: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCountHistogram {
    pub n: usize,
    pub m_max: usize,
    /// Labeled P positions with `k` edges.
    pub p_counts: Vec<u64>,
    /// `C(m_max, k)`.
    pub total_counts: Vec<u64>,
}

impl EdgeCountHistogram {
    pub fn n_counts(&self) -> Vec<u64> {
        self.total_counts
            .iter()
            .zip(&self.p_counts)
            .map(|(t, p)| t - p)
            .collect()
    }
}

fn binomial_row(m: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..m {
        let mut next = vec![1u64; row.len() + 1];
        for k in 1..row.len() {
            next[k] = row[k - 1] + row[k];
        }
        row = next;
    }
    row
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

pub fn exact_histogram(n: usize, solver: &Solver) -> Result<EdgeCountHistogram> {
    if n > EXACT_CAP {
        return Err(Error::CapExceeded {
            what: "exact histogram",
            size: n,
            cap: EXACT_CAP,
        });
    }
    let m_max = pair_count(n);
    let p_counts = (0..1u64 << m_max)
        .into_par_iter()
        .try_fold(
            || vec![0u64; m_max + 1],
            |mut acc, mask| {
                if solver.outcome(&graph_from_mask(n, mask))? == Outcome::P {
                    acc[mask.count_ones() as usize] += 1;
                }
                Ok::<_, Error>(acc)
            },
        )
        .try_reduce(
            || vec![0u64; m_max + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )?;
    Ok(EdgeCountHistogram {
        n,
        m_max,
        p_counts,
        total_counts: binomial_row(m_max),
    })
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Probability(p))
    }
}

fn evaluate(counts: &[u64], m_max: usize, p: f64) -> f64 {
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| c as f64 * p.powi(k as i32) * (1.0 - p).powi((m_max - k) as i32))
        .sum()
}

/// Probability that the second player wins on `G(n, p)`.
pub fn w2(hist: &EdgeCountHistogram, p: f64) -> Result<f64> {
    check_probability(p)?;
    Ok(evaluate(&hist.p_counts, hist.m_max, p))
}

/// Probability that the first player wins on `G(n, p)`.
pub fn w1(hist: &EdgeCountHistogram, p: f64) -> Result<f64> {
    check_probability(p)?;
    Ok(evaluate(&hist.n_counts(), hist.m_max, p))
}

/// `W2` as a sum of `c p^k (1-p)^(m-k)` terms, e.g. `(1-p)^3 + p^3`.
pub fn polynomial_string(hist: &EdgeCountHistogram) -> String {
    let terms: Vec<String> = hist
        .p_counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(k, &c)| {
            let mut t = String::new();
            if c != 1 || (k == 0 && hist.m_max == 0) {
                t.push_str(&c.to_string());
            }
            match k {
                0 => {}
                1 => t.push('p'),
                _ => t.push_str(&format!("p^{k}")),
            }
            match hist.m_max - k {
                0 => {}
                1 => t.push_str("(1-p)"),
                j => t.push_str(&format!("(1-p)^{j}")),
            }
            t
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrossingMethod {
    ExactBisection,
    MonteCarlo,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossingReport {
    pub n: usize,
    pub roots: Vec<f64>,
    pub method: CrossingMethod,
}

/// Roots of `W2(p) = 1/2` in `(0, 1)`: scan a uniform grid for sign changes
/// and bisect each bracket down to width `tol`.
pub fn crossings(hist: &EdgeCountHistogram, tol: f64) -> Result<CrossingReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let f = |p: f64| evaluate(&hist.p_counts, hist.m_max, p) - 0.5;
    let steps = (1.0 / GRID_STEP).round() as usize;
    let grid: Vec<f64> = (0..=steps).map(|i| i as f64 / steps as f64).collect();
    let mut roots = Vec::new();
    for w in grid.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (f(a), f(b));
        if fa == 0.0 && a > 0.0 {
            roots.push(a);
        } else if fa * fb < 0.0 {
            let (mut lo, mut hi, mut flo) = (a, b, fa);
            while hi - lo > tol {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
    }
    Ok(CrossingReport {
        n: hist.n,
        roots,
        method: CrossingMethod::ExactBisection,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloEstimate {
    pub n: usize,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub p_positions: u64,
    /// Estimated `W2(p)`.
    pub estimate: f64,
    pub stderr: f64,
}

pub fn sample_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n as Vertex {
        for i in 0..j {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("sampled edges are valid")
}

/// Estimates `W2(p)` from `trials` samples. Block `b` of [`MC_BLOCK`] trials
/// draws from ChaCha stream `b` under `seed`.
pub fn monte_carlo(
    n: usize,
    p: f64,
    trials: u64,
    seed: u64,
    solver: &Solver,
) -> Result<MonteCarloEstimate> {
    check_probability(p)?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let blocks = trials.div_ceil(MC_BLOCK);
    let p_positions = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let len = MC_BLOCK.min(trials - b * MC_BLOCK);
            let mut hits = 0u64;
            for _ in 0..len {
                if solver.outcome(&sample_graph(n, p, &mut rng))? == Outcome::P {
                    hits += 1;
                }
            }
            Ok(hits)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let estimate = p_positions as f64 / trials as f64;
    Ok(MonteCarloEstimate {
        n,
        p,
        trials,
        seed,
        p_positions,
        estimate,
        stderr: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
    })
}

/// Edge probability above which `W2 >= 1/2` on `n` vertices, `n` odd: the
/// complete graph alone is a P position with probability `p^(n(n-1)/2)`.
pub fn p0_bound(n: usize) -> Result<f64> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "bound needs an odd vertex count >= 3, got {n}"
        )));
    }
    Ok(0.25f64.powf(1.0 / (n * n - n) as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hist(n: usize) -> EdgeCountHistogram {
        exact_histogram(n, &Solver::new()).unwrap()
    }

    #[test]
    fn small_histograms() {
        assert_eq!(hist(2).p_counts, vec![1, 0]);
        assert_eq!(hist(3).p_counts, vec![1, 0, 0, 1]);
        // 2K2 (3 labelings), K3 + K1 (4), P4 (12), C4 (3)
        assert_eq!(hist(4).p_counts, vec![1, 0, 3, 16, 3, 0, 0]);
        assert_eq!(hist(4).total_counts, vec![1, 6, 15, 20, 15, 6, 1]);
        assert_eq!(polynomial_string(&hist(3)), "(1-p)^3 + p^3");
        assert!(exact_histogram(7, &Solver::new()).is_err());
    }

    #[test]
    fn w_values() {
        let h = hist(3);
        assert!((w2(&h, 0.5).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(w2(&h, 0.0).unwrap(), 1.0);
        assert_eq!(w2(&h, 1.0).unwrap(), 1.0);
        assert_eq!(w2(&h, 1.5), Err(Error::Probability(1.5)));
        for n in 1..=6 {
            let h = hist(n);
            for i in 0..=100 {
                let p = i as f64 / 100.0;
                let s = w1(&h, p).unwrap() + w2(&h, p).unwrap();
                assert!((s - 1.0).abs() < 1e-12, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn crossing_examples() {
        let r = crossings(&hist(3), DEFAULT_TOLERANCE).unwrap();
        let s3 = 3f64.sqrt();
        assert_eq!(r.roots.len(), 2);
        assert!((r.roots[0] - (3.0 - s3) / 6.0).abs() < 1e-9);
        assert!((r.roots[1] - (3.0 + s3) / 6.0).abs() < 1e-9);
        let r = crossings(&hist(2), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.roots, vec![0.5]);
        assert!(crossings(&hist(2), 0.0).is_err());
    }

    #[test]
    fn p0_values() {
        assert!((p0_bound(3).unwrap() - 0.793701).abs() < 1e-6);
        assert!((p0_bound(5).unwrap() - 0.933033).abs() < 1e-6);
        assert!(p0_bound(7).unwrap() > p0_bound(5).unwrap());
        assert!(p0_bound(4).is_err());
        assert!(p0_bound(1).is_err());
    }

    #[test]
    fn monte_carlo_matches_exact() {
        let s = Solver::new();
        let e = monte_carlo(3, 0.5, 100_000, 7, &s).unwrap();
        assert!((e.estimate - 0.25).abs() <= 3.0 * e.stderr);
        let exact4 = w2(&hist(4), 0.16).unwrap();
        let e = monte_carlo(4, 0.16, 100_000, 11, &s).unwrap();
        assert!((e.estimate - exact4).abs() <= 3.0 * e.stderr);
        assert_eq!(monte_carlo(5, 0.0, 100, 1, &s).unwrap().estimate, 1.0);
        assert!(monte_carlo(3, 0.5, 0, 1, &s).is_err());
    }

    #[test]
    fn monte_carlo_coverage() {
        let s = Solver::new();
        let exact = w2(&hist(3), 0.3).unwrap();
        let within = (0..100)
            .filter(|&seed| {
                let e = monte_carlo(3, 0.3, 2000, seed, &s).unwrap();
                (e.estimate - exact).abs() <= 4.0 * e.stderr
            })
            .count();
        assert!(within >= 99, "{within}/100");
    }

    #[test]
    fn monte_carlo_independent_of_threads() {
        let s = Solver::new();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| monte_carlo(5, 0.4, 20_000, 99, &s).unwrap().p_positions)
        };
        assert_eq!(run(1), run(4));
    }
}
