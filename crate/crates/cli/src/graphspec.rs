//! `complete:<v>` | `morris:<v>,<a>,<b>,<m>` | `tesler:<v>,<a>,<b>` | `file:<path>`,
//! and recognition of the netflows that have closed forms.

use std::fs;

use flowcat_core::graph::build_graph;
use flowcat_core::{Error, GraphKind, Multigraph, NetflowVector, Result};

pub struct ParsedGraph {
    pub kind: GraphKind,
    pub graph: Multigraph,
}

pub fn parse_graph(spec: &str) -> Result<ParsedGraph> {
    let (family, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::InvalidGraph(format!("graph spec `{spec}` has no `<family>:` prefix")))?;
    if family == "file" {
        let text = fs::read_to_string(rest)
            .map_err(|e| Error::InvalidGraph(format!("cannot read `{rest}`: {e}")))?;
        let graph: Multigraph = serde_json::from_str(&text)?;
        let kind = GraphKind::Custom {
            vertices: graph.vertex_count(),
            edges: graph.edges().iter().map(|e| (e.source, e.target, e.multiplicity)).collect(),
        };
        return Ok(ParsedGraph { kind, graph });
    }
    let params = parse_list(rest).map_err(|_| Error::InvalidGraph(format!("bad parameters in `{spec}`")))?;
    let kind = GraphKind::from_params(family, &params)?;
    let graph = build_graph(&kind)?;
    Ok(ParsedGraph { kind, graph })
}

pub fn parse_list(s: &str) -> std::result::Result<Vec<i64>, std::num::ParseIntError> {
    s.split(',').map(|x| x.trim().parse()).collect()
}

/// A volume that one of the product formulas covers, with the parameters
/// of the matching constant term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `K_{n+1}` with `(1, 1, 0, ..., 0, -2)`.
    TwoSource { n: usize },
    /// `K_{n+1}^{a,b,m}` with `(1, 0, ..., 0, -1)`; `K_{n+1}` is the case
    /// `a = b = m = 1` since edges out of vertex 1 beyond the first carry
    /// no volume there.
    Morris { n: usize, a: u64, b: u64, m: u64 },
    /// `K_{n+1}^{a,b}` with `(1, ..., 1, -n)`.
    Tesler { n: usize, a: u64, b: u64 },
}

pub fn recognize(kind: &GraphKind, a: &NetflowVector) -> Option<Family> {
    let p = a.prefix();
    let n = p.len();
    let unit = p.first() == Some(&1) && p[1..].iter().all(|&x| x == 0);
    let ones = p.iter().all(|&x| x == 1);
    let two = n >= 2 && p[0] == 1 && p[1] == 1 && p[2..].iter().all(|&x| x == 0);
    match *kind {
        GraphKind::Complete { .. } if n >= 2 && two => Some(Family::TwoSource { n }),
        GraphKind::Complete { .. } if n >= 2 && unit => Some(Family::Morris { n, a: 1, b: 1, m: 1 }),
        GraphKind::Complete { .. } if n >= 2 && ones => Some(Family::Tesler { n, a: 1, b: 1 }),
        GraphKind::Morris { a: ea, b, m, .. } if n >= 2 && unit && ea >= 1 => {
            Some(Family::Morris { n, a: ea, b, m })
        }
        GraphKind::Tesler { a: ea, b, .. } if n >= 2 && ones => Some(Family::Tesler { n, a: ea, b }),
        _ => None,
    }
}
