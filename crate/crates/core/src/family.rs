//! Named graph families and the textual descriptor grammar.
//!
//! ```text
//! spec := "path:"INT | "cycle:"INT | "wheel:"INT | "complete:"INT | "star:"INT
//!       | "kpartite:"INT(","INT)* | "g6:"TEXT
//!       | "union("spec","spec")" | "join("spec","spec")" | "cart("spec","spec")"
//! ```
//!
//! No whitespace is accepted and combinators nest at most [`MAX_DEPTH`] deep.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{cartesian_product, join, union, Graph, Vertex};
use crate::graph6::{emit_graph6, parse_graph6};

pub const MAX_DEPTH: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Wheel(usize),
    Complete(usize),
    /// `K_{1,n}`: one hub and `n` leaves.
    Star(usize),
    Kpartite(Vec<usize>),
    Graph6(String),
    Union(Box<FamilySpec>, Box<FamilySpec>),
    Join(Box<FamilySpec>, Box<FamilySpec>),
    Cart(Box<FamilySpec>, Box<FamilySpec>),
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            FamilySpec::Path(n) => Ok(path(*n)),
            FamilySpec::Cycle(n) => Ok(cycle(*n)),
            FamilySpec::Wheel(n) => Ok(join(&cycle(n - 1), &Graph::edgeless(1))),
            FamilySpec::Complete(n) => Ok(complete_multipartite(&vec![1; *n])),
            FamilySpec::Star(n) => Ok(complete_multipartite(&[1, *n])),
            FamilySpec::Kpartite(parts) => Ok(complete_multipartite(parts)),
            FamilySpec::Graph6(text) => parse_graph6(text),
            FamilySpec::Union(a, b) => Ok(union(&a.build()?, &b.build()?)),
            FamilySpec::Join(a, b) => Ok(join(&a.build()?, &b.build()?)),
            FamilySpec::Cart(a, b) => cartesian_product(&a.build()?, &b.build()?),
        }
    }

    pub fn graph6(g: &Graph) -> Result<FamilySpec> {
        Ok(FamilySpec::Graph6(emit_graph6(g)?))
    }
}

/// Parses and builds a family descriptor in one step.
pub fn make_family(spec: &str) -> Result<Graph> {
    spec.parse::<FamilySpec>()?.build()
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<(Vertex, Vertex)> = (1..n as Vertex).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path edges are valid")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    let mut edges: Vec<(Vertex, Vertex)> = (1..n as Vertex).map(|i| (i - 1, i)).collect();
    edges.push((n as Vertex - 1, 0));
    Graph::from_edges(n, &edges).expect("cycle edges are valid")
}

/// Complete multipartite graph; parts occupy consecutive id ranges in the given order.
pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let n: usize = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (p, &size) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(p, size));
    }
    let adj = (0..n)
        .map(|i| (0..n).filter(|&j| part_of[j] != part_of[i]).collect())
        .collect();
    Graph::from_index_adjacency(adj)
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { src: s, pos: 0 };
        let spec = p.spec(0)?;
        if p.pos != s.len() {
            return Err(p.fail("trailing input"));
        }
        Ok(spec)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn fail(&self, reason: impl Into<String>) -> Error {
        Error::FamilySpec {
            spec: self.src.to_string(),
            reason: format!("{} at byte {}", reason.into(), self.pos),
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.fail(format!("expected {token:?}")))
        }
    }

    fn int(&mut self) -> Result<usize> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.fail("expected integer"));
        }
        let text = &self.rest()[..digits];
        let value = text
            .parse::<usize>()
            .map_err(|_| self.fail("integer out of range"))?;
        self.pos += digits;
        Ok(value)
    }

    fn sized(&mut self, min: usize, family: &str) -> Result<usize> {
        let n = self.int()?;
        if n < min {
            return Err(self.fail(format!("{family} needs size >= {min}, got {n}")));
        }
        Ok(n)
    }

    fn spec(&mut self, depth: usize) -> Result<FamilySpec> {
        if depth > MAX_DEPTH {
            return Err(self.fail(format!("nesting deeper than {MAX_DEPTH}")));
        }
        if self.eat("path:") {
            return Ok(FamilySpec::Path(self.sized(1, "path")?));
        }
        if self.eat("cycle:") {
            return Ok(FamilySpec::Cycle(self.sized(3, "cycle")?));
        }
        if self.eat("wheel:") {
            return Ok(FamilySpec::Wheel(self.sized(4, "wheel")?));
        }
        if self.eat("complete:") {
            return Ok(FamilySpec::Complete(self.sized(1, "complete")?));
        }
        if self.eat("star:") {
            return Ok(FamilySpec::Star(self.sized(1, "star")?));
        }
        if self.eat("kpartite:") {
            let mut parts = vec![self.sized(1, "kpartite part")?];
            while self.eat(",") {
                // a comma followed by a non-digit belongs to an enclosing combinator
                if !self.rest().starts_with(|c: char| c.is_ascii_digit()) {
                    self.pos -= 1;
                    break;
                }
                parts.push(self.sized(1, "kpartite part")?);
            }
            return Ok(FamilySpec::Kpartite(parts));
        }
        if self.eat("g6:") {
            let len = self
                .rest()
                .bytes()
                .take_while(|b| (63..=126).contains(b))
                .count();
            if len == 0 {
                return Err(self.fail("empty graph6 text"));
            }
            let text = self.rest()[..len].to_string();
            self.pos += len;
            parse_graph6(&text).map_err(|e| self.fail(e.to_string()))?;
            return Ok(FamilySpec::Graph6(text));
        }
        type Ctor = fn(Box<FamilySpec>, Box<FamilySpec>) -> FamilySpec;
        let combinators: [(&str, Ctor); 3] = [
            ("union(", FamilySpec::Union),
            ("join(", FamilySpec::Join),
            ("cart(", FamilySpec::Cart),
        ];
        for (token, ctor) in combinators {
            if self.eat(token) {
                let a = self.spec(depth + 1)?;
                self.expect(",")?;
                let b = self.spec(depth + 1)?;
                self.expect(")")?;
                return Ok(ctor(Box::new(a), Box::new(b)));
            }
        }
        Err(self.fail("unknown family"))
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Wheel(n) => write!(f, "wheel:{n}"),
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::Star(n) => write!(f, "star:{n}"),
            FamilySpec::Kpartite(parts) => {
                let parts: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "kpartite:{}", parts.join(","))
            }
            FamilySpec::Graph6(t) => write!(f, "g6:{t}"),
            FamilySpec::Union(a, b) => write!(f, "union({a},{b})"),
            FamilySpec::Join(a, b) => write!(f, "join({a},{b})"),
            FamilySpec::Cart(a, b) => write!(f, "cart({a},{b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;

    #[test]
    fn basic_families() {
        let p3 = make_family("path:3").unwrap();
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        let w5 = make_family("wheel:5").unwrap();
        assert_eq!((w5.order(), w5.size()), (5, 8));
        let s = make_family("star:2").unwrap();
        assert_eq!((s.order(), s.size()), (3, 2));
        let k = make_family("kpartite:2,2").unwrap();
        assert_eq!((k.order(), k.size()), (4, 4));
        assert_eq!(
            canonical_form(&k).unwrap(),
            canonical_form(&make_family("cycle:4").unwrap()).unwrap()
        );
    }

    #[test]
    fn combinators() {
        let w5 = make_family("join(cycle:4,complete:1)").unwrap();
        assert_eq!(w5, make_family("wheel:5").unwrap());
        assert_eq!(
            make_family("join(complete:1,complete:1)").unwrap(),
            make_family("complete:2").unwrap()
        );
        let k122 = make_family("join(kpartite:2,2,complete:1)").unwrap();
        assert_eq!(
            canonical_form(&k122).unwrap(),
            canonical_form(&make_family("kpartite:1,2,2").unwrap()).unwrap()
        );
        let two_triangles = make_family("union(cycle:3,cycle:3)").unwrap();
        let by_hand =
            Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(
            canonical_form(&two_triangles).unwrap(),
            canonical_form(&by_hand).unwrap()
        );
        let sq = make_family("cart(path:2,path:2)").unwrap();
        assert_eq!(
            canonical_form(&sq).unwrap(),
            canonical_form(&make_family("cycle:4").unwrap()).unwrap()
        );
        let p5 = make_family("path:5").unwrap();
        assert_eq!(
            canonical_form(&make_family("cart(complete:1,path:5)").unwrap()).unwrap(),
            canonical_form(&p5).unwrap()
        );
    }

    #[test]
    fn graph6_specs() {
        let g = make_family("g6:Bw").unwrap();
        assert_eq!(g, make_family("complete:3").unwrap());
        let u = make_family("union(g6:Bw,kpartite:1,2)").unwrap();
        assert_eq!(u.order(), 6);
    }

    #[test]
    fn rejects() {
        for bad in [
            "path:0",
            "cycle:2",
            "wheel:3",
            "path: 3",
            "path:3 ",
            "kpartite:",
            "kpartite:2,0",
            "hexagon:6",
            "union(path:2)",
            "union(path:2,path:2",
            "g6:",
            "g6:B",
            "path:99999999999999999999999",
        ] {
            assert!(bad.parse::<FamilySpec>().is_err(), "{bad} should fail");
        }
    }

    #[test]
    fn depth_limit() {
        let mut s = "path:2".to_string();
        for _ in 0..8 {
            s = format!("union({s},path:1)");
        }
        assert!(s.parse::<FamilySpec>().is_ok());
        s = format!("union({s},path:1)");
        assert!(s.parse::<FamilySpec>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["path:3", "kpartite:1,2,3", "cart(union(cycle:3,g6:Bw),star:4)"] {
            assert_eq!(s.parse::<FamilySpec>().unwrap().to_string(), s);
        }
    }
}
