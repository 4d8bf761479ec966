use crate::bitset::BitSet;
use crate::{ConflictGraph, Error, Result};

pub const DEFAULT_CLIQUE_CAP: usize = 100_000;

/// All maximal cliques (Bron–Kerbosch with pivoting), each sorted, in
/// lexicographic order. Fails once more than `cap` cliques are found.
pub fn enumerate_maximal_cliques(graph: &ConflictGraph, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = graph.vertex_count();
    let mut out = Vec::new();
    let mut r = Vec::new();
    expand(
        graph,
        &mut r,
        BitSet::full(n),
        BitSet::new(n),
        cap,
        &mut out,
    )?;
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    Ok(out)
}

fn expand(
    graph: &ConflictGraph,
    r: &mut Vec<usize>,
    mut p: BitSet,
    mut x: BitSet,
    cap: usize,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    if p.is_empty() {
        if x.is_empty() && !r.is_empty() {
            if out.len() >= cap {
                return Err(Error::CapExceeded {
                    what: "maximal cliques",
                    size: out.len() + 1,
                    cap,
                });
            }
            out.push(r.clone());
        }
        return Ok(());
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| {
            (
                p.intersection_count(graph.neighbor_bits(u)),
                std::cmp::Reverse(u),
            )
        })
        .expect("p is non-empty");
    for v in p.difference(graph.neighbor_bits(pivot)).to_vec() {
        let nv = graph.neighbor_bits(v);
        r.push(v);
        expand(graph, r, p.intersection(nv), x.intersection(nv), cap, out)?;
        r.pop();
        p.remove(v);
        x.insert(v);
    }
    Ok(())
}
