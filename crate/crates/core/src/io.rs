//! Text formats: the edge list, DOT export and serializable index records.
//!
//! Edge list: a header `n k` (k = 0 for a plain graph), then one `u v` pair
//! per line, 0-indexed. `#` starts a comment. A k-tree is written with its
//! elimination order in a trailing `# elim: ...` comment.

use serde::Serialize;

use crate::error::ParseError;
use crate::graph::{Edge, Graph};
use crate::indices::{IndexFamily, IndexParams, IndexValue};
use crate::ktree::KTree;
use crate::scalar::Scalar;

fn parse_usize(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| ParseError::Malformed {
        line,
        msg: format!("expected a non-negative integer, got {tok:?}"),
    })
}

fn pair(rest: &str, line: usize, what: &str) -> Result<(usize, usize), ParseError> {
    let toks: Vec<&str> = rest.split_whitespace().collect();
    match toks[..] {
        [a, b] => Ok((parse_usize(a, line)?, parse_usize(b, line)?)),
        _ => Err(ParseError::Malformed {
            line,
            msg: format!("expected {what}, got {} fields", toks.len()),
        }),
    }
}

/// Parses the edge-list format into a graph and its declared k.
pub fn parse_edge_list(text: &str) -> Result<(Graph, usize), ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<Edge> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((n, _)) = header else {
            header = Some(pair(body, line, "header \"n k\"")?);
            continue;
        };
        let (u, v) = pair(body, line, "an edge \"u v\"")?;
        if let Some(&vertex) = [u, v].iter().find(|&&x| x >= n) {
            return Err(ParseError::OutOfRange { line, vertex });
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        edges.push((u, v));
    }
    let (n, k) = header.ok_or(ParseError::MissingHeader)?;
    let g = Graph::from_edges(n, &edges).expect("endpoints checked while parsing");
    Ok((g, k))
}

pub fn write_edge_list(g: &Graph, k: usize) -> String {
    let mut out = format!("{} {}\n", g.n(), k);
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Edge list plus the `# elim:` line listing removed vertices then the
/// residual clique.
pub fn write_ktree(t: &KTree) -> String {
    let mut out = write_edge_list(t.graph(), t.k());
    let e = t.elimination();
    let order: Vec<String> = e.order.iter().chain(&e.residue).map(|v| v.to_string()).collect();
    out.push_str(&format!("# elim: {}\n", order.join(" ")));
    out
}

pub fn to_dot(g: &Graph, name: &str) -> String {
    let mut out = format!("graph {name} {{\n");
    for v in 0..g.n() {
        out.push_str(&format!("  {v};\n"));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

/// The exponent as it should appear in JSON: integers without a fraction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Exponent {
    Int(u64),
    Real(f64),
}

impl Exponent {
    pub fn from_scalar<F: Scalar>(c: F) -> Self {
        match c.as_exact_exponent() {
            Some(e) => Exponent::Int(e.into()),
            None => Exponent::Real(c.to_f64().unwrap_or(f64::NAN)),
        }
    }
}

/// One index value for machine consumption. `exact` is a decimal string and
/// must not be read as a float.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexRecord {
    pub family: IndexFamily,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<Exponent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log10: Option<f64>,
}

impl IndexRecord {
    pub fn new<F: Scalar>(params: IndexParams<F>, value: &IndexValue<F>) -> Self {
        IndexRecord {
            family: params.family,
            c: (params.family == IndexFamily::Pi1c).then(|| Exponent::from_scalar(params.c)),
            exact: value.exact.as_ref().map(|x| x.to_string()),
            log10: value.log10().and_then(|l| l.to_f64()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ktree::gen_kpath;

    #[test]
    fn parses_triangle_with_comments() {
        let (g, k) = parse_edge_list("# a triangle\n3 2\n0 1\n0 2 # trailing\n\n1 2\n").unwrap();
        assert_eq!((g.n(), g.edge_count(), k), (3, 3, 2));
    }

    #[test]
    fn rejects_bad_input() {
        let e = parse_edge_list("3 2\n0 3").unwrap_err();
        assert_eq!(e.to_string(), "line 2: vertex 3 out of range");
        assert!(matches!(parse_edge_list("3 2\n1 1"), Err(ParseError::SelfLoop { line: 2, vertex: 1 })));
        assert!(matches!(parse_edge_list("3 2\n0 x"), Err(ParseError::Malformed { line: 2, .. })));
        assert!(matches!(parse_edge_list("3\n"), Err(ParseError::Malformed { line: 1, .. })));
        assert_eq!(parse_edge_list("# nothing\n"), Err(ParseError::MissingHeader));
    }

    #[test]
    fn ktree_round_trip() {
        let t = gen_kpath(2, 6).unwrap();
        let text = write_ktree(&t);
        assert!(text.starts_with("6 2\n"));
        assert!(text.lines().last().unwrap().starts_with("# elim: "));
        let (g, k) = parse_edge_list(&text).unwrap();
        assert_eq!((&g, k), (t.graph(), 2));
    }

    #[test]
    fn dot_of_triangle() {
        let dot = to_dot(&Graph::complete(3), "k3");
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert_eq!(dot, "graph k3 {\n  0;\n  1;\n  2;\n  0 -- 1;\n  0 -- 2;\n  1 -- 2;\n}\n");
    }
}
