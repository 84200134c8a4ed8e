//! Brute-force cross-checks of the closed-form rules against the solver.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::{canonical_form_colored, DEFAULT_CANON_CAP};
use crate::engine::{blowup, WeightedGraph};
use crate::enumerate::{connected_graphs, nonisomorphic_graphs};
use crate::error::{Error, Result};
use crate::family::{complete_multipartite, FamilySpec};
use crate::graph::{cartesian_product, union, Graph};
use crate::graph6::emit_graph6;
use crate::octal::{octal6_sequence, path_equivalence_check};
use crate::engine::Move;
use crate::solver::{Outcome, Solver};
use crate::theory::classify::{classify_family, classify_multipartite, Predicted};
use crate::theory::involution::{
    find_near_involution, find_pairing_involution, product_involution,
};

/// Largest order for suites that enumerate every graph.
pub const MAX_ENUMERATED_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Complete,
    Bipartite,
    K1mn,
    MultipartiteNo1s,
    OneSingleton,
    SingletonParity,
    SingletonExcess,
    K113n,
    PathsCyclesWheels,
    UnionSelf,
    Cartesian,
    Blowup,
    OctalEquiv,
    Automorphism,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::Complete,
        Suite::Bipartite,
        Suite::K1mn,
        Suite::MultipartiteNo1s,
        Suite::OneSingleton,
        Suite::SingletonParity,
        Suite::SingletonExcess,
        Suite::K113n,
        Suite::PathsCyclesWheels,
        Suite::UnionSelf,
        Suite::Cartesian,
        Suite::Blowup,
        Suite::OctalEquiv,
        Suite::Automorphism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Complete => "complete",
            Suite::Bipartite => "bipartite",
            Suite::K1mn => "k1mn",
            Suite::MultipartiteNo1s => "multipartite-no1s",
            Suite::OneSingleton => "one-singleton",
            Suite::SingletonParity => "singleton-parity",
            Suite::SingletonExcess => "singleton-excess",
            Suite::K113n => "k113n",
            Suite::PathsCyclesWheels => "paths-cycles-wheels",
            Suite::UnionSelf => "union-self",
            Suite::Cartesian => "cartesian",
            Suite::Blowup => "blowup",
            Suite::OctalEquiv => "octal-equiv",
            Suite::Automorphism => "automorphism",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub instance: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub bound: usize,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    fn collect(suite: Suite, bound: usize, results: Vec<Option<Counterexample>>) -> Self {
        let instances = results.len();
        let mut counterexamples: Vec<_> = results.into_iter().flatten().collect();
        counterexamples.sort_by(|a, b| a.instance.cmp(&b.instance));
        let failed = counterexamples.len();
        VerificationReport {
            suite,
            bound,
            instances,
            passed: instances - failed,
            failed,
            counterexamples,
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite      {}", self.suite)?;
        writeln!(f, "bound      {}", self.bound)?;
        writeln!(f, "instances  {}", self.instances)?;
        writeln!(f, "passed     {}", self.passed)?;
        writeln!(f, "failed     {}", self.failed)?;
        if !self.counterexamples.is_empty() {
            writeln!(f, "{:<32} {:<10} actual", "instance", "expected")?;
            for c in &self.counterexamples {
                writeln!(f, "{:<32} {:<10} {}", c.instance, c.expected, c.actual)?;
            }
        }
        Ok(())
    }
}

/// Nondecreasing sequences of positive integers with sum at most `max_total`.
pub fn partitions_up_to(max_total: usize) -> Vec<Vec<usize>> {
    fn rec(min: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for p in min..=left {
            cur.push(p);
            out.push(cur.clone());
            rec(p, left - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, max_total, &mut Vec::new(), &mut out);
    out
}

fn kpartite_name(parts: &[usize]) -> String {
    let list: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
    format!("kpartite:{}", list.join(","))
}

fn check_multipartite(parts: &[usize], solver: &Solver) -> Result<Option<Counterexample>> {
    let predicted = classify_multipartite(parts)?;
    let actual = solver.outcome(&complete_multipartite(parts))?;
    Ok((predicted.outcome != Predicted::from(actual)).then(|| Counterexample {
        instance: kpartite_name(parts),
        expected: format!("{:?} ({})", predicted.outcome, predicted.rule),
        actual: actual.to_string(),
    }))
}

fn run_par<T: Sync>(
    items: &[T],
    check: impl Fn(&T) -> Result<Option<Counterexample>> + Sync + Send,
) -> Result<Vec<Option<Counterexample>>> {
    items.par_iter().map(check).collect()
}

fn multipartite_suite(
    bound: usize,
    solver: &Solver,
    keep: impl Fn(&[usize]) -> bool,
) -> Result<Vec<Option<Counterexample>>> {
    let parts: Vec<Vec<usize>> = partitions_up_to(bound)
        .into_iter()
        .filter(|p| keep(p))
        .collect();
    run_par(&parts, |p| check_multipartite(p, solver))
}

fn singletons(parts: &[usize]) -> usize {
    parts.iter().filter(|&&p| p == 1).count()
}

fn require_at_most(suite: Suite, bound: usize, cap: usize) -> Result<()> {
    if bound > cap {
        return Err(Error::InvalidArgument(format!(
            "suite {suite} supports a bound of at most {cap}, got {bound}"
        )));
    }
    Ok(())
}

fn outcome_mismatch(instance: String, expected: Outcome, actual: Outcome) -> Option<Counterexample> {
    (expected != actual).then(|| Counterexample {
        instance,
        expected: expected.to_string(),
        actual: actual.to_string(),
    })
}

/// Runs every instance of `suite` within `bound` (vertex count unless noted per suite).
pub fn verify(suite: Suite, bound: usize, solver: &Solver) -> Result<VerificationReport> {
    let results = match suite {
        Suite::Complete | Suite::SingletonParity => {
            require_at_most(suite, bound, DEFAULT_CANON_CAP)?;
            let parts: Vec<Vec<usize>> = (1..=bound).map(|t| vec![1; t]).collect();
            run_par(&parts, |p| check_multipartite(p, solver))?
        }
        Suite::Bipartite => multipartite_suite(bound, solver, |p| p.len() == 2)?,
        Suite::K1mn => multipartite_suite(bound, solver, |p| p.len() == 3 && p[0] == 1)?,
        Suite::MultipartiteNo1s => {
            multipartite_suite(bound, solver, |p| p.len() >= 3 && p[0] >= 2)?
        }
        Suite::OneSingleton => {
            multipartite_suite(bound, solver, |p| p.len() >= 4 && singletons(p) == 1)?
        }
        Suite::SingletonExcess => multipartite_suite(bound, solver, |p| {
            let k = singletons(p);
            let excess: usize = p[k..].iter().map(|n| n - 1).sum();
            p.len() > 3 && k > 1 && k < p.len() && k > excess
        })?,
        Suite::K113n => multipartite_suite(bound, solver, |p| {
            p.len() == 4 && p[..3] == [1, 1, 3] && p[3] >= 3
        })?,
        Suite::PathsCyclesWheels => paths_cycles_wheels(bound, solver)?,
        Suite::UnionSelf => {
            require_at_most(suite, bound, MAX_ENUMERATED_ORDER)?;
            let graphs: Vec<Graph> = (1..=bound).flat_map(nonisomorphic_graphs).collect();
            run_par(&graphs, |g| {
                let actual = solver.outcome(&union(g, g))?;
                Ok(outcome_mismatch(label(g)?, Outcome::P, actual))
            })?
        }
        Suite::Cartesian => cartesian(bound, solver)?,
        Suite::Blowup => blowup_suite(bound, solver)?,
        Suite::OctalEquiv => {
            let report = path_equivalence_check(bound, solver)?;
            let mut results: Vec<Option<Counterexample>> = vec![None; report.checked];
            for (slot, m) in results.iter_mut().zip(report.mismatches) {
                *slot = Some(Counterexample {
                    instance: format!("path:{}", m.n),
                    expected: m.octal_value.to_string(),
                    actual: m.path_value.to_string(),
                });
            }
            results
        }
        Suite::Automorphism => return automorphism_soundness(bound, solver),
    };
    Ok(VerificationReport::collect(suite, bound, results))
}

fn label(g: &Graph) -> Result<String> {
    Ok(format!("g6:{}", emit_graph6(g)?))
}

fn paths_cycles_wheels(bound: usize, solver: &Solver) -> Result<Vec<Option<Counterexample>>> {
    let seq = octal6_sequence(bound.max(1));
    let mut specs = Vec::new();
    specs.extend((2..=bound).map(FamilySpec::Path));
    specs.extend((3..=bound).map(FamilySpec::Cycle));
    specs.extend((4..=bound).map(FamilySpec::Wheel));
    run_par(&specs, |spec| {
        let predicted = classify_family(spec, Some(&seq))?;
        let actual = solver.outcome(&spec.build()?)?;
        Ok((predicted.outcome != Predicted::from(actual)).then(|| Counterexample {
            instance: spec.to_string(),
            expected: format!("{:?} ({})", predicted.outcome, predicted.rule),
            actual: actual.to_string(),
        }))
    })
}

/// Pairs of graphs that both admit a pairing involution, with product order at most `bound`.
fn cartesian(bound: usize, solver: &Solver) -> Result<Vec<Option<Counterexample>>> {
    require_at_most(Suite::Cartesian, bound, DEFAULT_CANON_CAP)?;
    let mut factors = Vec::new();
    for n in 2..=bound / 2 {
        for g in nonisomorphic_graphs(n) {
            if let Some(s) = find_pairing_involution(&g)? {
                factors.push((g, s));
            }
        }
    }
    let mut pairs = Vec::new();
    for i in 0..factors.len() {
        for j in i..factors.len() {
            if factors[i].0.order() * factors[j].0.order() <= bound {
                pairs.push((i, j));
            }
        }
    }
    run_par(&pairs, |&(i, j)| {
        let ((g, sg), (h, sh)) = (&factors[i], &factors[j]);
        let product = cartesian_product(g, h)?;
        let instance = format!("cart({},{})", label(g)?, label(h)?);
        if !product_involution(g, sg, h, sh).is_valid_for(&product) {
            return Ok(Some(Counterexample {
                instance,
                expected: "valid product pairing".into(),
                actual: "invalid".into(),
            }));
        }
        Ok(outcome_mismatch(instance, Outcome::P, solver.outcome(&product)?))
    })
}

/// Weighted graphs up to isomorphism (of graph plus weights) with at most
/// `bound` vertices and weights in `1..=3`.
fn blowup_suite(bound: usize, solver: &Solver) -> Result<Vec<Option<Counterexample>>> {
    const MAX_WEIGHT: u32 = 3;
    require_at_most(Suite::Blowup, bound, 5)?;
    let mut distinct = HashMap::new();
    for n in 1..=bound {
        for g in nonisomorphic_graphs(n) {
            let combos = (MAX_WEIGHT as usize).pow(n as u32);
            for c in 0..combos {
                let mut rest = c;
                let weights: Vec<u32> = (0..n)
                    .map(|_| {
                        let w = (rest % MAX_WEIGHT as usize) as u32 + 1;
                        rest /= MAX_WEIGHT as usize;
                        w
                    })
                    .collect();
                let key = canonical_form_colored(&g, &weights, DEFAULT_CANON_CAP)?;
                distinct
                    .entry(key)
                    .or_insert_with(|| WeightedGraph::new(g.clone(), weights).expect("weights >= 1"));
            }
        }
    }
    let items: Vec<WeightedGraph> = distinct.into_values().collect();
    run_par(&items, |wg| {
        let weighted = solver.weighted_value(wg)?.outcome();
        let blown = solver.outcome(&blowup(wg))?;
        Ok(outcome_mismatch(wg.to_string(), weighted, blown))
    })
}

/// Every connected graph on at most `max_n` vertices: a pairing involution must
/// give value 0, and a near-involution must give N with the fixed vertex winning.
pub fn automorphism_soundness(max_n: usize, solver: &Solver) -> Result<VerificationReport> {
    require_at_most(Suite::Automorphism, max_n, MAX_ENUMERATED_ORDER)?;
    let graphs: Vec<Graph> = (2..=max_n).flat_map(connected_graphs).collect();
    let results = run_par(&graphs, |g| {
        if find_pairing_involution(g)?.is_some() {
            let value = solver.sg_value(g)?;
            if value.0 != 0 {
                return Ok(Some(Counterexample {
                    instance: label(g)?,
                    expected: "pairing involution: value 0".into(),
                    actual: format!("value {}", value.0),
                }));
            }
        }
        if let Some((_, fixed)) = find_near_involution(g)? {
            let winning = solver.winning_moves(g)?;
            if !winning.contains(&Move(fixed)) {
                return Ok(Some(Counterexample {
                    instance: label(g)?,
                    expected: format!("near involution: N, vertex {fixed} wins"),
                    actual: format!("winning moves {:?}", winning.iter().map(|m| m.0).collect::<Vec<_>>()),
                }));
            }
        }
        Ok(None)
    })?;
    Ok(VerificationReport::collect(Suite::Automorphism, max_n, results))
}
