//! Plain-text instance and graph files.
//!
//! Instance files:
//!
//! ```text
//! c optional comments anywhere
//! p setpack N n k
//! w r1 r2 ... rn          (optional; integers or p/q)
//! e1 e2 ...               (n lines, 1-based element ids)
//! ```
//!
//! Graph files, used to encode vertex-weighted graphs as instances:
//!
//! ```text
//! p graph V E
//! w r1 ... rV             (optional)
//! u v                     (E lines, 1-based vertex ids)
//! ```

use std::fmt::Write as _;

use super::Instance;
use crate::{Error, Rational, Result};

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        let is_comment = line == "c" || line.starts_with("c ") || line.starts_with("c\t");
        (!line.is_empty() && !is_comment).then_some((i + 1, line))
    })
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{tok}`")))
}

fn parse_rational(tok: &str, line: usize) -> Result<Rational> {
    crate::parse_rational(tok).ok_or_else(|| syntax(line, format!("invalid rational `{tok}`")))
}

fn parse_header<'a>(
    lines: &mut std::iter::Peekable<impl Iterator<Item = (usize, &'a str)>>,
    kind: &str,
    fields: usize,
) -> Result<(usize, Vec<usize>)> {
    let (no, line) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing `p` header"))?;
    let toks: Vec<&str> = line.split_whitespace().collect();
    if toks.len() != fields + 2 || toks[0] != "p" || toks[1] != kind {
        return Err(syntax(
            no,
            format!("expected `p {kind}` header with {fields} fields"),
        ));
    }
    let vals = toks[2..]
        .iter()
        .map(|t| parse_usize(t, no, "header field"))
        .collect::<Result<_>>()?;
    Ok((no, vals))
}

fn parse_weights<'a>(
    lines: &mut std::iter::Peekable<impl Iterator<Item = (usize, &'a str)>>,
    expected: usize,
) -> Result<Option<Vec<Rational>>> {
    match lines.peek() {
        Some(&(no, line)) if line.starts_with("w ") || line == "w" => {
            lines.next();
            let w = line
                .split_whitespace()
                .skip(1)
                .map(|t| parse_rational(t, no))
                .collect::<Result<Vec<_>>>()?;
            if w.len() != expected {
                return Err(syntax(
                    no,
                    format!("expected {expected} weights, found {}", w.len()),
                ));
            }
            Ok(Some(w))
        }
        _ => Ok(None),
    }
}

/// Parses an instance file. Element ids are 1-based in the file and
/// 0-based in memory; each set is sorted on input.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = content_lines(text).peekable();
    let (header_line, h) = parse_header(&mut lines, "setpack", 3)?;
    let (universe, n, k) = (h[0], h[1], h[2]);
    let weights = parse_weights(&mut lines, n)?;
    let mut sets = Vec::with_capacity(n);
    let mut last_line = header_line;
    for (no, line) in lines {
        last_line = no;
        if sets.len() == n {
            return Err(syntax(
                no,
                format!("header declares {n} sets but more follow"),
            ));
        }
        let set = line
            .split_whitespace()
            .map(|t| match parse_usize(t, no, "element id")? {
                0 => Err(syntax(no, "element ids are 1-based")),
                e => Ok(e - 1),
            })
            .collect::<Result<Vec<_>>>()?;
        sets.push(set);
    }
    if sets.len() != n {
        return Err(syntax(
            last_line,
            format!("header declares {n} sets, found {}", sets.len()),
        ));
    }
    Instance::new(universe, k, sets, weights)
}

pub fn serialize_instance(instance: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "p setpack {} {} {}",
        instance.universe_size(),
        instance.num_sets(),
        instance.k()
    );
    if let Some(w) = instance.weights() {
        out.push('w');
        for x in w {
            let _ = write!(out, " {x}");
        }
        out.push('\n');
    }
    for s in instance.sets() {
        let line: Vec<String> = s.iter().map(|e| (e + 1).to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// A vertex-weighted simple graph read from a graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub weights: Option<Vec<Rational>>,
}

impl GraphSpec {
    pub fn to_instance(&self) -> Result<Instance> {
        Instance::from_graph(self.vertex_count, &self.edges, self.weights.clone())
    }
}

pub fn parse_graph(text: &str) -> Result<GraphSpec> {
    let mut lines = content_lines(text).peekable();
    let (header_line, h) = parse_header(&mut lines, "graph", 2)?;
    let (vertex_count, m) = (h[0], h[1]);
    let weights = parse_weights(&mut lines, vertex_count)?;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (no, line) in lines {
        last_line = no;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(syntax(no, "edge lines hold exactly two vertex ids"));
        }
        let mut ends = [0usize; 2];
        for (slot, t) in ends.iter_mut().zip(&toks) {
            let v = parse_usize(t, no, "vertex id")?;
            if v == 0 || v > vertex_count {
                return Err(syntax(no, format!("vertex {v} outside 1..={vertex_count}")));
            }
            *slot = v - 1;
        }
        if ends[0] == ends[1] {
            return Err(syntax(no, "loops are not allowed"));
        }
        edges.push((ends[0], ends[1]));
    }
    if edges.len() != m {
        return Err(syntax(
            last_line,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Ok(GraphSpec {
        vertex_count,
        edges,
        weights,
    })
}

pub fn serialize_graph(graph: &GraphSpec) -> String {
    let mut out = format!("p graph {} {}\n", graph.vertex_count, graph.edges.len());
    if let Some(w) = &graph.weights {
        out.push('w');
        for x in w {
            let _ = write!(out, " {x}");
        }
        out.push('\n');
    }
    for (u, v) in &graph.edges {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{fixtures, int, ratio};

    #[test]
    fn fano_round_trip() {
        let fano = fixtures::fano_plane();
        let text = serialize_instance(&fano);
        assert!(text.starts_with("p setpack 7 7 3\n"));
        let back = parse_instance(&text).unwrap();
        assert_eq!(back.num_sets(), 7);
        assert!(back.sets().iter().all(|s| s.len() == 3));
        assert_eq!(back, fano);
        assert_eq!(serialize_instance(&back), text);
    }

    #[test]
    fn count_mismatch_is_a_syntax_error() {
        let text = "p setpack 6 2 2\n1 2\n3 4\n5 6\n";
        match parse_instance(text) {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        let short = "p setpack 6 3 2\n1 2\n";
        assert!(matches!(
            parse_instance(short),
            Err(Error::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn weighted_round_trip_keeps_exact_rationals() {
        let inst = Instance::new(
            4,
            2,
            vec![vec![0, 1], vec![2, 3]],
            Some(vec![ratio(7, 3), int(5)]),
        )
        .unwrap();
        let text = serialize_instance(&inst);
        assert!(text.contains("w 7/3 5\n"));
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn comments_and_unsorted_sets() {
        let text = "c hello\np setpack 4 2 3\nc between\n3 1\n\n4\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.sets(), &[vec![0, 2], vec![3]]);
    }

    #[test]
    fn invalid_tokens() {
        assert!(matches!(
            parse_instance("p setpack 4 1 2\n0 1\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_instance("p setpack 4 1 2\nx\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_instance("p setpack 4 1\n"),
            Err(Error::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_instance("p setpack 4 1 2\nw 1/0\n1\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_instance("p setpack 4 1 2\n1 5\n"),
            Err(Error::InvalidInstance(_))
        ));
        assert!(matches!(parse_instance(""), Err(Error::Syntax { .. })));
    }

    #[test]
    fn graph_file_round_trip() {
        let (spec, _) = fixtures::five_two_graph_spec();
        let text = serialize_graph(&spec);
        assert_eq!(parse_graph(&text).unwrap(), spec);
        assert!(matches!(
            parse_graph("p graph 2 1\n1 1\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("p graph 2 1\n1 3\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
    }
}
