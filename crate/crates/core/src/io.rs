//! Plain-text graph files.
//!
//! ```text
//! # comment
//! graph 3
//! edge 0 1 1
//! edge 1 2 3/2
//! ```
//!
//! Vertices are 0-based. Weights are conductances, written as an integer
//! or `p/q`. Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::linalg::{parse_rational, render};

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        message: message.into(),
    })
}

fn parse_index(line: usize, field: &str, what: &str) -> Result<usize> {
    field.parse().or_else(|_| {
        parse_err(
            line,
            format!("{what} must be a nonnegative integer, got {field:?}"),
        )
    })
}

pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let mut graph: Option<Multigraph> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match (fields[0], graph.as_mut()) {
            ("graph", None) => {
                if fields.len() != 2 {
                    return parse_err(line, "expected `graph <vertex_count>`");
                }
                graph = Some(Multigraph::new(parse_index(
                    line,
                    fields[1],
                    "vertex count",
                )?));
            }
            ("graph", Some(_)) => return parse_err(line, "duplicate `graph` header"),
            ("edge", None) => return parse_err(line, "`edge` before `graph` header"),
            ("edge", Some(g)) => {
                if fields.len() != 4 {
                    return parse_err(line, "expected `edge <u> <v> <weight>`");
                }
                let u = parse_index(line, fields[1], "vertex")?;
                let v = parse_index(line, fields[2], "vertex")?;
                let Some(w) = parse_rational(fields[3]) else {
                    return parse_err(line, format!("bad weight {:?}", fields[3]));
                };
                g.add_edge(u, v, w)
                    .or_else(|e| parse_err(line, e.to_string()))?;
            }
            (other, _) => return parse_err(line, format!("unknown directive {other:?}")),
        }
    }
    graph.ok_or(Error::Parse {
        line: 0,
        message: "missing `graph` header".into(),
    })
}

pub fn write_graph(g: &Multigraph) -> String {
    let mut out = format!("graph {}\n", g.vertex_count());
    for e in g.edges() {
        writeln!(out, "edge {} {} {}", e.u, e.v, render(&e.weight)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_gmnp, build_kmn_over_tree, complete_bipartite};
    use crate::linalg::{frac, int};

    #[test]
    fn parses_comments_and_fractions() {
        let g =
            parse_graph("# triangle\n\ngraph 3\nedge 0 1 1\n  edge 1 2 3/2\n# end\nedge 2 0 4/2\n")
                .unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges()[1].weight, frac(3, 2));
        assert_eq!(g.edges()[2].weight, int(2));
    }

    #[test]
    fn round_trip() {
        for g in [
            complete_bipartite(2, 2).unwrap(),
            build_gmnp(3, 3, 3).unwrap(),
            build_kmn_over_tree(3, 4, 2, 2).unwrap(),
            Multigraph::from_edges(2, [(0, 1, frac(7, 3)), (1, 0, int(1))]).unwrap(),
            Multigraph::new(0),
        ] {
            assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        }
    }

    #[test]
    fn reports_line_numbers() {
        let cases = [
            ("edge 0 1 1\n", 1),
            ("graph 2\nedge 0 0 1\n", 2),
            ("graph 2\n\nedge 0 2 1\n", 3),
            ("graph 2\nedge 0 1 0\n", 2),
            ("graph 2\nedge 0 1 -1\n", 2),
            ("graph 2\nedge 0 1 1/0\n", 2),
            ("graph 2\nedge 0 1\n", 2),
            ("graph x\n", 1),
            ("graph 2\ngraph 2\n", 2),
            ("graph 2\nvertex 3\n", 2),
            ("# nothing\n", 0),
        ];
        for (text, line) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }
}
