//! θ₃ relaxation in SDPA sparse format.
//!
//! `maximize ⟨J, X⟩` subject to `X_ij = 0` for every edge, `trace X = 1`,
//! `X ⪰ 0`, written as the dual form of an SDPA problem with a single
//! block. Entries are upper triangle, 1-based.

use std::fmt::Write as _;

use crate::{ConflictGraph, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SdpaEntry {
    /// 0 is the objective matrix.
    pub matrix: usize,
    pub block: usize,
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdpaProblem {
    pub block_sizes: Vec<i64>,
    pub rhs: Vec<f64>,
    pub entries: Vec<SdpaEntry>,
}

impl SdpaProblem {
    pub fn constraint_count(&self) -> usize {
        self.rhs.len()
    }
}

pub fn export_theta3_sdp(graph: &ConflictGraph) -> String {
    let n = graph.vertex_count();
    let edges: Vec<(usize, usize)> = graph.edges().collect();
    let m = edges.len() + 1;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "\"theta3 relaxation: {n} vertices, {} edges",
        edges.len()
    );
    let _ = writeln!(out, "{m}");
    let _ = writeln!(out, "1");
    let _ = writeln!(out, "{n}");
    let rhs: Vec<&str> = edges
        .iter()
        .map(|_| "0")
        .chain(std::iter::once("1"))
        .collect();
    let _ = writeln!(out, "{}", rhs.join(" "));
    for i in 1..=n {
        for j in i..=n {
            let _ = writeln!(out, "0 1 {i} {j} 1");
        }
    }
    for (c, (u, v)) in edges.iter().enumerate() {
        let _ = writeln!(out, "{} 1 {} {} 1", c + 1, u + 1, v + 1);
    }
    for i in 1..=n {
        let _ = writeln!(out, "{m} 1 {i} {i} 1");
    }
    out
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses SDPA sparse text. Lines starting with `"` or `*` are comments;
/// `,`, `(`, `)`, `{` and `}` count as whitespace.
pub fn parse_sdpa(text: &str) -> Result<SdpaProblem> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.replace([',', '(', ')', '{', '}'], " ")))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with(['"', '*']));

    let mut header = |what: &str| {
        lines
            .next()
            .ok_or_else(|| syntax(0, format!("missing {what}")))
    };
    let (ln, l) = header("constraint count")?;
    let m: usize = first_token(&l)
        .parse()
        .map_err(|_| syntax(ln, "bad constraint count"))?;
    let (ln, l) = header("block count")?;
    let nblocks: usize = first_token(&l)
        .parse()
        .map_err(|_| syntax(ln, "bad block count"))?;
    let (ln, l) = header("block sizes")?;
    let block_sizes: Vec<i64> = l
        .split_whitespace()
        .take(nblocks)
        .map(|t| t.parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| syntax(ln, "bad block size"))?;
    let (ln, l) = header("right-hand side")?;
    let rhs: Vec<f64> = l
        .split_whitespace()
        .take(m)
        .map(|t| t.parse())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| syntax(ln, "bad right-hand side"))?;
    if block_sizes.len() != nblocks || rhs.len() != m {
        return Err(syntax(ln, "header vectors are too short"));
    }

    let mut entries = Vec::new();
    for (ln, l) in lines {
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.len() < 5 {
            return Err(syntax(ln, "entry needs five fields"));
        }
        let idx = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| syntax(ln, format!("bad index `{s}`")))
        };
        let entry = SdpaEntry {
            matrix: idx(t[0])?,
            block: idx(t[1])?,
            row: idx(t[2])?,
            col: idx(t[3])?,
            value: t[4].parse().map_err(|_| syntax(ln, "bad value"))?,
        };
        let size = entry
            .block
            .checked_sub(1)
            .and_then(|b| block_sizes.get(b))
            .ok_or_else(|| syntax(ln, "block out of range"))?
            .unsigned_abs() as usize;
        if entry.matrix > m
            || entry.row == 0
            || entry.col == 0
            || entry.row > size
            || entry.col > size
        {
            return Err(syntax(ln, "entry index out of range"));
        }
        if entry.row > entry.col {
            return Err(syntax(ln, "entry below the diagonal"));
        }
        entries.push(entry);
    }
    Ok(SdpaProblem {
        block_sizes,
        rhs,
        entries,
    })
}

fn first_token(line: &str) -> &str {
    line.split_whitespace().next().unwrap_or("")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn edgeless_has_only_trace() {
        let g = ConflictGraph::unweighted(4, &[]).unwrap();
        let p = parse_sdpa(&export_theta3_sdp(&g)).unwrap();
        assert_eq!(p.constraint_count(), 1);
        assert_eq!(p.rhs, vec![1.0]);
        assert_eq!(p.block_sizes, vec![4]);
        assert_eq!(p.entries.iter().filter(|e| e.matrix == 0).count(), 10);
        assert_eq!(p.entries.iter().filter(|e| e.matrix == 1).count(), 4);
    }

    #[test]
    fn fano_round_trip() {
        let g = ConflictGraph::from_instance(&fixtures::fano_plane());
        let p = parse_sdpa(&export_theta3_sdp(&g)).unwrap();
        assert_eq!(p.constraint_count(), 22);
        assert_eq!(p.rhs.iter().filter(|&&r| r == 0.0).count(), 21);
        for (c, (u, v)) in g.edges().enumerate() {
            let es: Vec<&SdpaEntry> = p.entries.iter().filter(|e| e.matrix == c + 1).collect();
            assert_eq!(es.len(), 1);
            assert_eq!((es[0].row, es[0].col), (u + 1, v + 1));
        }
    }

    #[test]
    fn parser_rejects_bad_input() {
        assert!(parse_sdpa("").is_err());
        assert!(parse_sdpa("1\n1\n2\n1\n1 1 3 3 1\n").is_err());
        assert!(parse_sdpa("1\n1\n2\n1\n1 1 2 1 1\n").is_err());
        assert!(parse_sdpa("1\n1\n2\n1\n1 1 1\n").is_err());
        assert!(parse_sdpa("* comment\n1\n1\n{2}\n1.0\n1 1 1 2 1\n").is_ok());
    }
}
