//! Multigraphs with loops and parallel edges, and constructive searches
//! for small induced subgraphs with more edges than vertices.
//!
//! [`find_dense_subgraph_min_deg3`] works on graphs of minimum degree 3:
//! a breadth-first tree from the start vertex must contain a shallow
//! vertex with at most one child, whose extra edge closes a cycle. When
//! that cycle alone is not dense enough it is contracted to a single vertex
//! and a second cycle through the contracted vertex is added.
//!
//! [`find_dense_subgraph`] handles any graph with
//! `h·|E| ≥ (h+1)·|V|` by stripping pendant vertices and long chains of
//! degree-2 vertices, contracting the remaining chains into single edges,
//! and re-expanding the chains that the min-degree-3 search uses.

use std::collections::VecDeque;

use crate::{Budget, Error, Result};

/// Undirected multigraph. Loops contribute 2 to the degree of their vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    incidence: Vec<Vec<usize>>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut incidence = vec![Vec::new(); vertex_count];
        for (id, &(u, v)) in edges.iter().enumerate() {
            for x in [u, v] {
                if x >= vertex_count {
                    return Err(Error::IndexOutOfRange {
                        index: x,
                        size: vertex_count,
                    });
                }
            }
            incidence[u].push(id);
            if u != v {
                incidence[v].push(id);
            }
        }
        Ok(Multigraph {
            vertex_count,
            edges,
            incidence,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge ids incident to `v`, each listed once (loops included).
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v]
            .iter()
            .map(|&e| {
                if self.edges[e].0 == self.edges[e].1 {
                    2
                } else {
                    1
                }
            })
            .sum()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.vertex_count).map(|v| self.degree(v)).min()
    }

    fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    fn membership(&self, vertices: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.vertex_count];
        for &v in vertices {
            inside[v] = true;
        }
        inside
    }

    /// Number of edges with both endpoints in `vertices`.
    pub fn induced_edge_count(&self, vertices: &[usize]) -> usize {
        let inside = self.membership(vertices);
        self.edges
            .iter()
            .filter(|&&(u, v)| inside[u] && inside[v])
            .count()
    }

    /// Whether the subgraph induced by `vertices` is connected (and nonempty).
    pub fn is_connected_induced(&self, vertices: &[usize]) -> bool {
        let Some(&start) = vertices.first() else {
            return false;
        };
        let inside = self.membership(vertices);
        let mut seen = vec![false; self.vertex_count];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &e in &self.incidence[u] {
                let w = self.other_end(e, u);
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == count_distinct(vertices)
    }

    /// Whether `vertices` induces strictly more edges than it has vertices.
    pub fn is_dense(&self, vertices: &[usize]) -> bool {
        self.induced_edge_count(vertices) > count_distinct(vertices)
    }
}

fn count_distinct(vertices: &[usize]) -> usize {
    let mut v = vertices.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

/// Result of the min-degree-3 search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseSubgraph {
    /// Sorted vertex set of the original graph.
    pub vertices: Vec<usize>,
    /// Size of the first cycle structure found around the start vertex.
    pub first_part: usize,
    /// Vertices added after contracting the first part (0 if not needed).
    pub second_part: usize,
}

impl DenseSubgraph {
    /// `true` when one of the two parts is larger than `2·log₂ n`, the
    /// per-part size the bound `4·log₂ n − 1` is assembled from.
    pub fn exceeds_part_bound(&self, n: usize) -> bool {
        let part = 2.0 * (n as f64).log2();
        self.first_part as f64 > part || self.second_part as f64 > part
    }
}

/// `4·log₂ n − 1`, the size bound for the min-degree-3 search.
pub fn min_deg3_size_bound(n: usize) -> f64 {
    4.0 * (n as f64).log2() - 1.0
}

/// Vertices of the closed structure found by breadth-first search from
/// `root`: the tree paths from `root` to `u` and to `w`, where `{u, w}` is
/// a non-tree edge (loop, parallel edge or cross edge) at the shallowest
/// vertex `u` (lowest id on ties) that has at most one child and some
/// non-tree edge. The structure has at least as many edges as vertices.
fn bfs_cycle_structure(g: &Multigraph, root: usize) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut children = vec![0usize; n];
    let mut order = Vec::new();
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &e in g.incident_edges(u) {
            let w = g.other_end(e, u);
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent_edge[w] = e;
                children[u] += 1;
                queue.push_back(w);
            }
        }
    }
    let non_tree = |u: usize| {
        g.incident_edges(u)
            .iter()
            .copied()
            .find(|&e| e != parent_edge[u] && parent_edge[g.other_end(e, u)] != e)
    };
    let (u, e) = order
        .iter()
        .filter(|&&u| children[u] <= 1)
        .filter_map(|&u| non_tree(u).map(|e| (u, e)))
        .min_by_key(|&(u, _)| (dist[u], u))?;
    let w = g.other_end(e, u);
    let mut out = Vec::new();
    for mut x in [u, w] {
        loop {
            out.push(x);
            if x == root {
                break;
            }
            x = g.other_end(parent_edge[x], x);
        }
    }
    out.sort_unstable();
    out.dedup();
    Some(out)
}

fn check_min_degree(g: &Multigraph, min: usize) -> Result<()> {
    match (0..g.vertex_count()).find(|&v| g.degree(v) < min) {
        Some(v) => Err(Error::Precondition(format!(
            "vertex {v} has degree {} < {min}",
            g.degree(v)
        ))),
        None => Ok(()),
    }
}

/// Connected induced subgraph containing `v` with more edges than
/// vertices, in a multigraph of minimum degree 3.
pub fn find_dense_subgraph_min_deg3(g: &Multigraph, v: usize) -> Result<DenseSubgraph> {
    if v >= g.vertex_count() {
        return Err(Error::IndexOutOfRange {
            index: v,
            size: g.vertex_count(),
        });
    }
    check_min_degree(g, 3)?;
    let first = bfs_cycle_structure(g, v).expect("minimum degree 3 forces a non-tree edge");
    if g.is_dense(&first) {
        return Ok(DenseSubgraph {
            first_part: first.len(),
            second_part: 0,
            vertices: first,
        });
    }

    // Contract the first part to a single vertex `y`; its internal edges
    // disappear, edges leaving it are re-attached to `y`.
    let inside = g.membership(&first);
    let mut new_id = vec![usize::MAX; g.vertex_count()];
    let mut old_id = Vec::new();
    for x in 0..g.vertex_count() {
        if !inside[x] {
            new_id[x] = old_id.len();
            old_id.push(x);
        }
    }
    let y = old_id.len();
    let map = |x: usize| if inside[x] { y } else { new_id[x] };
    let edges = g
        .edges()
        .iter()
        .filter(|&&(a, b)| !(inside[a] && inside[b]))
        .map(|&(a, b)| (map(a), map(b)))
        .collect();
    let contracted = Multigraph::new(y + 1, edges)?;
    let second = bfs_cycle_structure(&contracted, y)
        .expect("the contracted vertex has outside neighbours of degree at least 3");

    let mut vertices = first.clone();
    vertices.extend(second.iter().filter(|&&x| x != y).map(|&x| old_id[x]));
    vertices.sort_unstable();
    let result = DenseSubgraph {
        first_part: first.len(),
        second_part: vertices.len() - first.len(),
        vertices,
    };
    debug_assert!(g.is_dense(&result.vertices));
    Ok(result)
}

/// Chain of degree-2 vertices found while reducing a graph.
#[derive(Debug)]
struct Chain {
    interior: Vec<usize>,
    /// Endpoints outside the chain; `None` for an isolated cycle.
    ends: Option<(usize, usize)>,
}

fn alive_degree(g: &Multigraph, alive: &[bool], v: usize) -> usize {
    g.incident_edges(v)
        .iter()
        .filter(|&&e| alive[g.other_end(e, v)])
        .map(|&e| if g.edges[e].0 == g.edges[e].1 { 2 } else { 1 })
        .sum()
}

fn alive_edges<'a>(
    g: &'a Multigraph,
    alive: &'a [bool],
    v: usize,
) -> impl Iterator<Item = usize> + 'a {
    g.incident_edges(v)
        .iter()
        .copied()
        .filter(move |&e| alive[g.other_end(e, v)])
}

/// Maximal chain through the degree-2 vertex `start`.
fn chain_through(g: &Multigraph, alive: &[bool], degree: &[usize], start: usize) -> Chain {
    let first_edges: Vec<usize> = alive_edges(g, alive, start).collect();
    if first_edges.len() == 1 {
        // a lone loop
        return Chain {
            interior: vec![start],
            ends: None,
        };
    }
    let mut interior = vec![start];
    let mut ends = [usize::MAX; 2];
    for (side, &e0) in first_edges.iter().enumerate() {
        let (mut prev, mut edge) = (start, e0);
        loop {
            let next = g.other_end(edge, prev);
            if next == start {
                return Chain {
                    interior,
                    ends: None,
                };
            }
            if degree[next] != 2 {
                ends[side] = next;
                break;
            }
            if side == 0 {
                interior.push(next);
            } else {
                interior.insert(0, next);
            }
            edge = alive_edges(g, alive, next)
                .find(|&f| f != edge)
                .expect("degree 2");
            prev = next;
        }
    }
    Chain {
        interior,
        ends: Some((ends[0], ends[1])),
    }
}

/// Subgraph `X` with more edges than vertices and `|X| < 4·h·log₂ n`, for
/// multigraphs with `h·|E| ≥ (h+1)·|V|`.
pub fn find_dense_subgraph(g: &Multigraph, h: usize) -> Result<Vec<usize>> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    if h == 0 {
        return Err(Error::Precondition("h must be positive".into()));
    }
    if n == 0 || h * m < (h + 1) * n {
        return Err(Error::Precondition(format!(
            "|E| = {m} < (h+1)/h·|V| for h = {h}, |V| = {n}"
        )));
    }

    // Strip pendant vertices and chains of at least h degree-2 vertices;
    // both removals preserve h·|E| ≥ (h+1)·|V|.
    let mut alive = vec![true; n];
    loop {
        let degree: Vec<usize> = (0..n)
            .map(|v| {
                if alive[v] {
                    alive_degree(g, &alive, v)
                } else {
                    0
                }
            })
            .collect();
        if let Some(v) = (0..n).find(|&v| alive[v] && degree[v] <= 1) {
            alive[v] = false;
            continue;
        }
        let mut removed = false;
        for v in (0..n).filter(|&v| alive[v] && degree[v] == 2) {
            let chain = chain_through(g, &alive, &degree, v);
            if chain.ends.is_none() || chain.interior.len() >= h {
                for &x in &chain.interior {
                    alive[x] = false;
                }
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }

    // Contract the remaining short chains into single edges.
    let degree: Vec<usize> = (0..n)
        .map(|v| {
            if alive[v] {
                alive_degree(g, &alive, v)
            } else {
                0
            }
        })
        .collect();
    let core: Vec<usize> = (0..n).filter(|&v| alive[v] && degree[v] >= 3).collect();
    let mut core_id = vec![usize::MAX; n];
    for (i, &v) in core.iter().enumerate() {
        core_id[v] = i;
    }
    let mut edges = Vec::new();
    let mut expansions: Vec<Vec<usize>> = Vec::new();
    for &(a, b) in g.edges() {
        if alive[a] && alive[b] && degree[a] >= 3 && degree[b] >= 3 {
            edges.push((core_id[a], core_id[b]));
            expansions.push(Vec::new());
        }
    }
    let mut in_chain = vec![false; n];
    for v in (0..n).filter(|&v| alive[v] && degree[v] == 2) {
        if in_chain[v] {
            continue;
        }
        let chain = chain_through(g, &alive, &degree, v);
        let (x, y) = chain.ends.expect("isolated cycles were removed");
        for &c in &chain.interior {
            in_chain[c] = true;
        }
        edges.push((core_id[x], core_id[y]));
        expansions.push(chain.interior);
    }
    let reduced = Multigraph::new(core.len(), edges)?;
    let found = find_dense_subgraph_min_deg3(&reduced, 0)?;

    // Re-expand m+1 edges of the dense core subgraph: a spanning tree of
    // shortest chains, then the two shortest remaining chains.
    let inside = reduced.membership(&found.vertices);
    let mut internal: Vec<usize> = (0..reduced.edge_count())
        .filter(|&e| {
            let (a, b) = reduced.edges()[e];
            inside[a] && inside[b]
        })
        .collect();
    internal.sort_by_key(|&e| (expansions[e].len(), e));
    let mut parent: Vec<usize> = (0..reduced.vertex_count()).collect();
    fn root(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut chosen = Vec::new();
    let mut spare = Vec::new();
    for e in internal {
        let (a, b) = reduced.edges()[e];
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            chosen.push(e);
        } else {
            spare.push(e);
        }
    }
    chosen.extend(spare.into_iter().take(2));
    let mut vertices: Vec<usize> = found.vertices.iter().map(|&c| core[c]).collect();
    for &e in &chosen {
        vertices.extend(&expansions[e]);
    }
    vertices.sort_unstable();
    debug_assert!(g.is_dense(&vertices));
    Ok(vertices)
}

/// `4·h·log₂ n`, the strict size bound for [`find_dense_subgraph`].
pub fn dense_size_bound(n: usize, h: usize) -> f64 {
    4.0 * h as f64 * (n as f64).log2()
}

pub const EXHAUSTIVE_CAP: usize = 20;

/// Exhaustive check for a vertex set of size at most `size_bound` inducing
/// more edges than vertices.
pub fn has_small_dense_subgraph(g: &Multigraph, size_bound: usize) -> Result<bool> {
    let n = g.vertex_count();
    if n > EXHAUSTIVE_CAP {
        return Err(Error::CapExceeded {
            what: "multigraph",
            size: n,
            cap: EXHAUSTIVE_CAP,
        });
    }
    let masks: Vec<u32> = g
        .edges()
        .iter()
        .map(|&(u, v)| (1 << u) | (1 << v))
        .collect();
    Ok((1u32..(1 << n)).any(|set| {
        let size = set.count_ones() as usize;
        size <= size_bound && masks.iter().filter(|&&m| m & !set == 0).count() > size
    }))
}

/// Enumerates connected vertex sets of size at most `size_bound` that
/// induce more edges than vertices, smallest start vertex first, and
/// stops at the first set for which `visit` returns `true`. Every
/// enumerated set costs one unit of `budget`.
pub fn search_dense_connected<F>(
    g: &Multigraph,
    size_bound: usize,
    budget: &mut Budget,
    mut visit: F,
) -> Result<bool>
where
    F: FnMut(&[usize]) -> bool,
{
    let n = g.vertex_count();
    let mut neighbours = vec![Vec::new(); n];
    for &(a, b) in g.edges() {
        if a != b {
            neighbours[a].push(b);
            neighbours[b].push(a);
        }
    }
    for list in &mut neighbours {
        list.sort_unstable();
        list.dedup();
    }

    struct Search<'a, F> {
        g: &'a Multigraph,
        neighbours: &'a [Vec<usize>],
        bound: usize,
        budget: &'a mut Budget,
        visit: F,
    }

    impl<F: FnMut(&[usize]) -> bool> Search<'_, F> {
        // Each connected set containing `root` as its smallest vertex is
        // produced exactly once.
        fn extend(
            &mut self,
            sub: &mut Vec<usize>,
            mut ext: Vec<usize>,
            root: usize,
        ) -> Result<bool> {
            self.budget.tick(1)?;
            if self.g.is_dense(sub) && (self.visit)(sub) {
                return Ok(true);
            }
            if sub.len() == self.bound {
                return Ok(false);
            }
            while let Some(w) = ext.pop() {
                let mut next_ext = ext.clone();
                for &u in &self.neighbours[w] {
                    let exclusive = u > root
                        && !sub.contains(&u)
                        && u != w
                        && !sub
                            .iter()
                            .any(|&s| self.neighbours[s].binary_search(&u).is_ok())
                        && !next_ext.contains(&u);
                    if exclusive {
                        next_ext.push(u);
                    }
                }
                sub.push(w);
                let done = self.extend(sub, next_ext, root)?;
                sub.pop();
                if done {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }

    let mut search = Search {
        g,
        neighbours: &neighbours,
        bound: size_bound,
        budget,
        visit: &mut visit,
    };
    for (root, adjacent) in neighbours.iter().enumerate() {
        if size_bound == 0 {
            break;
        }
        let ext: Vec<usize> = adjacent
            .iter()
            .copied()
            .filter(|&u| u > root)
            .rev()
            .collect();
        if search.extend(&mut vec![root], ext, root)? {
            return Ok(true);
        }
    }
    Ok(false)
}
