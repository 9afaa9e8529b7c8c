//! Flat topology spec strings.
//!
//! | spec                  | generating graph                          |
//! |-----------------------|-------------------------------------------|
//! | `mb:<n>`              | cycle `1-2-...-n-1`                       |
//! | `bubble:<n>`          | path `1-2-...-n`                          |
//! | `star:<n>`            | star centred at 1                         |
//! | `ug:<n>:c=<c>`        | cycle on `1..=c`, then a path `c..=n`     |
//! | `edges:<k-l,...> n=<n>` | explicit pairs (`n` defaults to the largest label) |

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::cayley::{build_cayley, CayleyGraph};
use crate::error::{Error, Result};
use crate::genset::{build_generating_graph, GeneratingGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopologySpec {
    ModifiedBubble(usize),
    Bubble(usize),
    Star(usize),
    Unicyclic { n: usize, cycle: usize },
    Edges { n: usize, pairs: Vec<(u8, u8)> },
}

fn parse_err(token: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        token: token.to_string(),
        reason: reason.into(),
    }
}

fn parse_arity(token: &str) -> Result<usize> {
    let n: usize = token
        .parse()
        .map_err(|_| parse_err(token, "expected a positive integer"))?;
    if n == 0 {
        return Err(parse_err(token, "arity must be at least 1"));
    }
    Ok(n)
}

fn parse_pair(token: &str) -> Result<(u8, u8)> {
    let (a, b) = token
        .split_once('-')
        .ok_or_else(|| parse_err(token, "expected a pair like 1-2"))?;
    let label = |s: &str| {
        s.trim()
            .parse::<u8>()
            .map_err(|_| parse_err(token, format!("`{s}` is not a position")))
    };
    Ok((label(a)?, label(b)?))
}

impl FromStr for TopologySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = s
            .split_once(':')
            .ok_or_else(|| parse_err(s, "expected <family>:<arguments>"))?;
        match head {
            "mb" => Ok(Self::ModifiedBubble(parse_arity(rest)?)),
            "bubble" => Ok(Self::Bubble(parse_arity(rest)?)),
            "star" => Ok(Self::Star(parse_arity(rest)?)),
            "ug" => {
                let (n, c) = rest
                    .split_once(':')
                    .ok_or_else(|| parse_err(s, "expected ug:<n>:c=<cycle length>"))?;
                let c = c
                    .strip_prefix("c=")
                    .ok_or_else(|| parse_err(c, "expected c=<cycle length>"))?;
                Ok(Self::Unicyclic {
                    n: parse_arity(n)?,
                    cycle: parse_arity(c)?,
                })
            }
            "edges" => {
                let mut pairs = Vec::new();
                let mut n = None;
                for token in rest.split([' ', '\t', ';']).filter(|t| !t.is_empty()) {
                    if let Some(v) = token.strip_prefix("n=") {
                        if n.replace(parse_arity(v)?).is_some() {
                            return Err(parse_err(token, "n given twice"));
                        }
                    } else {
                        for p in token.split(',').filter(|p| !p.is_empty()) {
                            pairs.push(parse_pair(p)?);
                        }
                    }
                }
                if pairs.is_empty() {
                    return Err(parse_err(s, "no edges listed"));
                }
                let n = match n {
                    Some(n) => n,
                    None => pairs
                        .iter()
                        .map(|&(a, b)| a.max(b) as usize)
                        .max()
                        .unwrap_or(0),
                };
                Ok(Self::Edges { n, pairs })
            }
            _ => Err(parse_err(
                head,
                "unknown family; expected mb, bubble, star, ug or edges",
            )),
        }
    }
}

impl fmt::Display for TopologySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::ModifiedBubble(n) => write!(f, "mb:{n}"),
            Self::Bubble(n) => write!(f, "bubble:{n}"),
            Self::Star(n) => write!(f, "star:{n}"),
            Self::Unicyclic { n, cycle } => write!(f, "ug:{n}:c={cycle}"),
            Self::Edges { n, pairs } => {
                f.write_str("edges:")?;
                for (i, (a, b)) in pairs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}-{b}")?;
                }
                write!(f, " n={n}")
            }
        }
    }
}

impl Serialize for TopologySpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl TopologySpec {
    pub fn arity(&self) -> usize {
        match *self {
            Self::ModifiedBubble(n) | Self::Bubble(n) | Self::Star(n) => n,
            Self::Unicyclic { n, .. } | Self::Edges { n, .. } => n,
        }
    }

    pub fn generating_graph(&self) -> Result<GeneratingGraph> {
        match self {
            Self::ModifiedBubble(n) => GeneratingGraph::cycle(*n),
            Self::Bubble(n) => GeneratingGraph::path(*n),
            Self::Star(n) => GeneratingGraph::star(*n),
            Self::Unicyclic { n, cycle } => GeneratingGraph::cycle_with_tail(*n, *cycle),
            Self::Edges { n, pairs } => build_generating_graph(*n, pairs),
        }
    }

    pub fn build(&self) -> Result<CayleyGraph> {
        build_cayley(&self.generating_graph()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genset::GenClass;

    #[test]
    fn presets_round_trip() {
        for s in [
            "mb:4",
            "bubble:5",
            "star:4",
            "ug:6:c=4",
            "edges:1-2,2-3,3-4,1-4,4-5 n=5",
        ] {
            let t: TopologySpec = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
        }
    }

    #[test]
    fn presets_resolve() {
        let g = "ug:5:c=4"
            .parse::<TopologySpec>()
            .unwrap()
            .generating_graph()
            .unwrap();
        assert_eq!(g.class(), GenClass::UnicyclicTriangleFree);
        assert_eq!(g.edges(), &[(1, 2), (1, 4), (2, 3), (3, 4), (4, 5)]);
        let g = "edges:1-2,2-3"
            .parse::<TopologySpec>()
            .unwrap()
            .generating_graph()
            .unwrap();
        assert_eq!((g.n(), g.class()), (3, GenClass::Path));
    }

    #[test]
    fn errors_name_the_token() {
        let msg = |s: &str| s.parse::<TopologySpec>().unwrap_err().to_string();
        assert!(msg("cube:4").contains("`cube`"));
        assert!(msg("mb:x").contains("`x`"));
        assert!(msg("ug:5:k=4").contains("`k=4`"));
        assert!(msg("edges:1-2,2+3 n=3").contains("`2+3`"));
        assert!(msg("edges: n=3").contains("no edges"));
    }

    #[test]
    fn triangle_is_a_validation_error() {
        let t: TopologySpec = "edges:1-2,2-3,1-3 n=3".parse().unwrap();
        assert!(matches!(t.generating_graph(), Err(Error::Validation(_))));
    }

    #[test]
    fn capacity_is_checked_at_build() {
        let t: TopologySpec = "mb:9".parse().unwrap();
        assert!(matches!(t.build(), Err(Error::Capacity { .. })));
    }
}
