//! Closed-form outcome rules for complete multipartite graphs and the
//! path/cycle/wheel families.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::octal::SgSequence;
use crate::solver::Outcome;

/// Even path lengths with value 0, known exhaustively far beyond desk scale.
pub const PATH_ZERO_LIST: [usize; 12] = [4, 12, 20, 30, 46, 72, 98, 124, 150, 176, 314, 408];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Predicted {
    N,
    P,
    Unknown,
}

impl Predicted {
    pub fn known(self) -> Option<Outcome> {
        match self {
            Predicted::N => Some(Outcome::N),
            Predicted::P => Some(Outcome::P),
            Predicted::Unknown => None,
        }
    }

    fn n_iff(cond: bool) -> Self {
        if cond {
            Predicted::N
        } else {
            Predicted::P
        }
    }

    fn p_iff(cond: bool) -> Self {
        if cond {
            Predicted::P
        } else {
            Predicted::N
        }
    }
}

impl From<Outcome> for Predicted {
    fn from(o: Outcome) -> Self {
        match o {
            Outcome::N => Predicted::N,
            Outcome::P => Predicted::P,
        }
    }
}

/// Which rule produced a prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    /// One part: no edges, nothing to play.
    Edgeless,
    /// `K_t`: N iff t even.
    Complete,
    /// `K_{1,n}`: always N.
    Star,
    /// `K_{m,n}`, `m, n > 1`: N iff `m + n` odd.
    Bipartite,
    /// `K_{1,1,n}`: N iff n even.
    K11n,
    /// `K_{1,2,n}`, `n >= 2`: always N.
    K12n,
    /// `K_{1,m,n}`, `m, n >= 3`: N iff `m + n` even.
    K1mn,
    /// At least three parts, all of size >= 2: P iff the order is even.
    NoSingletons,
    /// One singleton and at least three other parts of size >= 2.
    OneSingleton,
    /// `k > 1` singletons with `k` larger than the excess `sum(n_i - 1)` of the other parts.
    SingletonExcess,
    /// `K_{1,1,3,n}`, `n >= 3`: always N.
    K113n,
    /// Odd paths: reflection through the middle vertex.
    OddPath,
    /// Path value looked up in the stored zero list.
    PathZeroList,
    /// Path value read from a computed sequence.
    PathSequence,
    /// Cycle value derived from the path one shorter.
    CycleFromPath,
    /// Wheel outcome equals the outcome of the path two shorter.
    WheelFromPath,
    NoRule,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub outcome: Predicted,
    pub rule: Rule,
    pub witness: Option<String>,
}

impl Prediction {
    fn new(outcome: Predicted, rule: Rule) -> Self {
        Prediction {
            outcome,
            rule,
            witness: None,
        }
    }

    fn hint(mut self, witness: &str) -> Self {
        if self.outcome == Predicted::N {
            self.witness = Some(witness.to_string());
        }
        self
    }

    fn unknown() -> Self {
        Prediction::new(Predicted::Unknown, Rule::NoRule)
    }
}

/// Decision table over part sizes; the first matching rule wins.
pub fn classify_multipartite(parts: &[usize]) -> Result<Prediction> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument("no parts given".into()));
    }
    if let Some(&bad) = parts.iter().find(|&&p| p == 0) {
        return Err(Error::InvalidPart(bad));
    }
    let mut parts = parts.to_vec();
    parts.sort_unstable();
    let t = parts.len();
    let total: usize = parts.iter().sum();
    let singletons = parts.iter().take_while(|&&p| p == 1).count();
    let rest = &parts[singletons..];

    let prediction = if t == 1 {
        Prediction::new(Predicted::P, Rule::Edgeless)
    } else if singletons == t {
        Prediction::new(Predicted::n_iff(t.is_multiple_of(2)), Rule::Complete).hint("any vertex")
    } else if t == 2 && parts[0] == 1 {
        Prediction::new(Predicted::N, Rule::Star).hint("delete the singleton part")
    } else if t == 2 {
        Prediction::new(Predicted::n_iff(total % 2 == 1), Rule::Bipartite)
            .hint("delete from a part of size > 2")
    } else if t == 3 && singletons == 2 {
        Prediction::new(Predicted::n_iff(parts[2].is_multiple_of(2)), Rule::K11n)
            .hint("delete from the large part")
    } else if t == 3 && singletons == 1 && parts[1] == 2 {
        Prediction::new(Predicted::N, Rule::K12n).hint(if parts[2].is_multiple_of(2) {
            "delete the singleton"
        } else {
            "delete from the part of size 2"
        })
    } else if t == 3 && singletons == 1 && parts[1] >= 3 {
        Prediction::new(Predicted::n_iff((parts[1] + parts[2]).is_multiple_of(2)), Rule::K1mn)
            .hint("delete from an odd part")
    } else if t >= 3 && singletons == 0 {
        Prediction::new(Predicted::p_iff(total.is_multiple_of(2)), Rule::NoSingletons)
            .hint("delete from an odd part")
    } else if singletons == 1 && t > 3 {
        let p = total.is_multiple_of(2) && rest.iter().all(|&n| n > 2);
        Prediction::new(Predicted::p_iff(p), Rule::OneSingleton)
    } else if singletons > 1 && singletons > rest.iter().map(|&n| n - 1).sum::<usize>() {
        let excess: usize = rest.iter().map(|&n| n - 1).sum();
        Prediction::new(
            Predicted::p_iff(singletons % 2 != excess % 2),
            Rule::SingletonExcess,
        )
    } else if t == 4 && parts[..3] == [1, 1, 3] && parts[3] >= 3 {
        Prediction::new(Predicted::N, Rule::K113n).hint(if parts[3].is_multiple_of(2) {
            "delete a singleton"
        } else {
            "delete from the part of size 3"
        })
    } else {
        Prediction::unknown()
    };
    Ok(prediction)
}

/// Status of `path:n` from the odd-path rule, the zero list, or a sequence.
fn path_status(n: usize, seq: Option<&SgSequence>) -> Prediction {
    if n == 1 {
        return Prediction::new(Predicted::P, Rule::Edgeless);
    }
    if n == 2 {
        return Prediction::new(Predicted::N, Rule::Complete).hint("any vertex");
    }
    if n % 2 == 1 {
        return Prediction::new(Predicted::N, Rule::OddPath).hint("delete the middle vertex");
    }
    if PATH_ZERO_LIST.contains(&n) {
        return Prediction::new(Predicted::P, Rule::PathZeroList);
    }
    match seq {
        Some(seq) if n <= seq.max_n() => {
            Prediction::new(Predicted::n_iff(seq.get(n) != 0), Rule::PathSequence)
        }
        _ => Prediction::unknown(),
    }
}

/// Predictions for named families; `seq` extends path coverage beyond the zero list.
pub fn classify_family(spec: &FamilySpec, seq: Option<&SgSequence>) -> Result<Prediction> {
    match spec {
        FamilySpec::Path(n) => Ok(path_status(*n, seq)),
        FamilySpec::Cycle(n) => {
            // value 1 exactly when the path one shorter is a P position
            let shorter = path_status(n - 1, seq);
            Ok(match shorter.outcome {
                Predicted::Unknown => Prediction::unknown(),
                o => Prediction::new(Predicted::n_iff(o == Predicted::P), Rule::CycleFromPath)
                    .hint("any vertex"),
            })
        }
        FamilySpec::Wheel(n) => {
            let shorter = path_status(n - 2, seq);
            Ok(match shorter.outcome {
                Predicted::Unknown => Prediction::unknown(),
                o => Prediction::new(o, Rule::WheelFromPath).hint("delete the hub"),
            })
        }
        FamilySpec::Complete(n) => classify_multipartite(&vec![1; *n]),
        FamilySpec::Star(n) => classify_multipartite(&[1, *n]),
        FamilySpec::Kpartite(parts) => classify_multipartite(parts),
        other => Err(Error::Unsupported(format!("no closed form for {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcome(parts: &[usize]) -> Predicted {
        classify_multipartite(parts).unwrap().outcome
    }

    #[test]
    fn table_examples() {
        assert_eq!(outcome(&[4, 4]), Predicted::P);
        assert_eq!(outcome(&[2, 2, 2]), Predicted::P);
        assert_eq!(outcome(&[1, 3, 3]), Predicted::N);
        assert_eq!(outcome(&[5]), Predicted::P);
        assert_eq!(outcome(&[1, 1, 1]), Predicted::P);
        assert_eq!(outcome(&[1, 1, 1, 1]), Predicted::N);
        assert_eq!(outcome(&[1, 7]), Predicted::N);
        assert_eq!(outcome(&[3, 4]), Predicted::N);
        assert_eq!(outcome(&[1, 1, 4]), Predicted::N);
        assert_eq!(outcome(&[1, 1, 5]), Predicted::P);
        assert_eq!(outcome(&[2, 1, 3]), Predicted::N);
        assert_eq!(outcome(&[1, 3, 4]), Predicted::P);
        assert_eq!(outcome(&[2, 2, 3]), Predicted::N);
        assert_eq!(outcome(&[1, 3, 3, 3]), Predicted::P);
        assert_eq!(outcome(&[1, 2, 3, 3]), Predicted::N);
        assert_eq!(outcome(&[1, 1, 3, 5]), Predicted::N);
    }

    #[test]
    fn m_equals_two_takes_the_k12n_rule() {
        let p = classify_multipartite(&[1, 2, 3]).unwrap();
        assert_eq!((p.outcome, p.rule), (Predicted::N, Rule::K12n));
    }

    #[test]
    fn rules_and_witnesses() {
        let p = classify_multipartite(&[1, 1, 1, 2]).unwrap();
        assert_eq!(p.rule, Rule::SingletonExcess);
        // k = 3, excess = 1: same parity
        assert_eq!(p.outcome, Predicted::N);
        let u = classify_multipartite(&[1, 1, 2, 2]).unwrap();
        assert_eq!(u.outcome, Predicted::Unknown);
        assert!(u.witness.is_none());
        let k = classify_multipartite(&[1, 1, 3, 4]).unwrap();
        assert_eq!(k.rule, Rule::K113n);
    }

    #[test]
    fn errors() {
        assert!(classify_multipartite(&[]).is_err());
        assert_eq!(classify_multipartite(&[2, 0]), Err(Error::InvalidPart(0)));
        assert!(classify_family(&"union(path:2,path:2)".parse().unwrap(), None).is_err());
    }

    #[test]
    fn family_examples() {
        let f = |s: &str| classify_family(&s.parse().unwrap(), None).unwrap().outcome;
        assert_eq!(f("path:7"), Predicted::N);
        assert_eq!(f("cycle:8"), Predicted::P);
        assert_eq!(f("wheel:6"), Predicted::P);
        assert_eq!(f("path:12"), Predicted::P);
        assert_eq!(f("path:6"), Predicted::Unknown);
        assert_eq!(f("cycle:13"), Predicted::N);
        assert_eq!(f("complete:3"), Predicted::P);
        assert_eq!(f("star:4"), Predicted::N);
        let seq = crate::octal::octal6_sequence(10);
        let p6 = classify_family(&"path:6".parse().unwrap(), Some(&seq)).unwrap();
        assert_eq!((p6.outcome, p6.rule), (Predicted::N, Rule::PathSequence));
    }
}
