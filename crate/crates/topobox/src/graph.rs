//! Finite simple graphs: DIMACS parsing, generators, the common-neighbor
//! operator, coloring solvers, and Kneser representations.

use std::fmt::Write as _;

use rand::Rng;
use thiserror::Error;

use crate::bitset::BitSet;
use crate::set_system::SetSystem;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("malformed DIMACS input at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("graph size {got} below minimum {min}")]
    SizeTooSmall { got: usize, min: usize },
    #[error("vertex order is not a permutation of the vertex set")]
    NotAPermutation,
    #[error("solver budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("graph has an isolated vertex ({0})")]
    IsolatedVertex(usize),
    #[error("vertex map is not a graph homomorphism")]
    NotAHomomorphism,
    #[error("graph contains a 4-cycle ({0}, {1}, {2}, {3})")]
    HasFourCycle(usize, usize, usize, usize),
    #[error("could not sample a graph without isolated vertices in {0} attempts")]
    SamplingFailed(usize),
    #[error("edge probability {0} outside [0, 1]")]
    BadProbability(f64),
}

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BitSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adj: vec![BitSet::new(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange { v: u, n: self.n });
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { v, n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::len).sum::<usize>() / 2
    }

    pub fn isolated_vertex(&self) -> Option<usize> {
        (0..self.n).find(|&v| self.adj[v].is_empty())
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }

    /// Common neighbors of a vertex set: all vertices adjacent to every
    /// element of `set`. The empty set has every vertex as a common
    /// neighbor (the condition is vacuous).
    pub fn common_neighbors(&self, set: &BitSet) -> BitSet {
        let mut cn = BitSet::full(self.n);
        for v in set.iter() {
            cn.intersect_with(&self.adj[v]);
        }
        cn
    }

    pub fn common_neighbors_of(&self, verts: &[usize]) -> Result<BitSet, GraphError> {
        for &v in verts {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { v, n: self.n });
            }
        }
        Ok(self.common_neighbors(&BitSet::from_iter(self.n, verts.iter().copied())))
    }

    /// Searches for a 4-cycle by brute force over vertex quadruples.
    pub fn find_four_cycle(&self) -> Option<(usize, usize, usize, usize)> {
        // u - v - w - x - u with u != w, v != x.
        for u in 0..self.n {
            for w in u + 1..self.n {
                let mut common = self.adj[u].clone();
                common.intersect_with(&self.adj[w]);
                let cs = common.to_vec();
                if cs.len() >= 2 {
                    return Some((u, cs[0], w, cs[1]));
                }
            }
        }
        None
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// A proper vertex coloring with 0-based color indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    assignment: Vec<usize>,
    colors_used: usize,
}

impl Coloring {
    /// Validates properness against `g`.
    pub fn new(g: &Graph, assignment: Vec<usize>) -> Result<Self, GraphError> {
        assert_eq!(assignment.len(), g.n());
        for (u, v) in g.edges() {
            if assignment[u] == assignment[v] {
                return Err(GraphError::NotAHomomorphism);
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        seen.extend(assignment.iter().copied());
        Ok(Coloring {
            colors_used: seen.len(),
            assignment,
        })
    }

    pub fn color(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn colors_used(&self) -> usize {
        self.colors_used
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }
}

/// A total map between the vertex sets of two graphs.
#[derive(Clone, Debug)]
pub struct VertexMap {
    pub source: Graph,
    pub target: Graph,
    pub map: Vec<usize>,
}

impl VertexMap {
    pub fn new(source: Graph, target: Graph, map: Vec<usize>) -> Result<Self, GraphError> {
        if map.len() != source.n() {
            return Err(GraphError::NotAPermutation);
        }
        if let Some(&v) = map.iter().find(|&&v| v >= target.n()) {
            return Err(GraphError::VertexOutOfRange { v, n: target.n() });
        }
        Ok(VertexMap { source, target, map })
    }

    /// A proper coloring viewed as a homomorphism into the complete graph.
    pub fn from_coloring(g: &Graph, c: &Coloring, m: usize) -> Result<Self, GraphError> {
        VertexMap::new(g.clone(), complete_graph(m)?, c.assignment().to_vec())
    }
}

/// True iff every edge of the source maps to an edge of the target.
pub fn check_homomorphism(f: &VertexMap) -> bool {
    f.source
        .edges()
        .iter()
        .all(|&(u, v)| f.map[u] != f.map[v] && f.target.has_edge(f.map[u], f.map[v]))
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

pub fn complete_graph(m: usize) -> Result<Graph, GraphError> {
    if m < 1 {
        return Err(GraphError::SizeTooSmall { got: m, min: 1 });
    }
    let mut g = Graph::new(m);
    for u in 0..m {
        for v in u + 1..m {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

pub fn cycle_graph(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::SizeTooSmall { got: n, min: 3 });
    }
    let mut g = Graph::new(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n)?;
    }
    Ok(g)
}

pub fn path_graph(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::SizeTooSmall { got: n, min: 2 });
    }
    let mut g = Graph::new(n);
    for i in 0..n - 1 {
        g.add_edge(i, i + 1)?;
    }
    Ok(g)
}

/// Erdős–Rényi G(n, p), re-sampled until no vertex is isolated.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::SizeTooSmall { got: n, min: 2 });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::BadProbability(p));
    }
    const ATTEMPTS: usize = 10_000;
    for _ in 0..ATTEMPTS {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    g.add_edge(u, v)?;
                }
            }
        }
        if g.isolated_vertex().is_none() {
            return Ok(g);
        }
    }
    Err(GraphError::SamplingFailed(ATTEMPTS))
}

// ---------------------------------------------------------------------------
// DIMACS edge format
// ---------------------------------------------------------------------------

/// Parses the DIMACS edge format: a `p edge n m` header followed by
/// `e u v` lines with 1-based endpoints. Duplicate edge lines are idempotent.
pub fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') {
            continue;
        }
        let mut parts = l.split_whitespace();
        match parts.next() {
            Some("p") => {
                if graph.is_some() {
                    return Err(GraphError::Parse {
                        line,
                        msg: "duplicate problem line".into(),
                    });
                }
                let fmt = parts.next();
                if fmt != Some("edge") && fmt != Some("col") {
                    return Err(GraphError::Parse {
                        line,
                        msg: "expected `p edge n m`".into(),
                    });
                }
                let n: usize = parse_field(parts.next(), line, "vertex count")?;
                let _m: usize = parse_field(parts.next(), line, "edge count")?;
                graph = Some(Graph::new(n));
            }
            Some("e") => {
                let g = graph.as_mut().ok_or(GraphError::Parse {
                    line,
                    msg: "edge before problem line".into(),
                })?;
                let u: usize = parse_field(parts.next(), line, "endpoint")?;
                let v: usize = parse_field(parts.next(), line, "endpoint")?;
                if u == 0 || v == 0 || u > g.n() || v > g.n() {
                    return Err(GraphError::VertexOutOfRange {
                        v: u.max(v),
                        n: g.n(),
                    });
                }
                g.add_edge(u - 1, v - 1)?;
            }
            Some(tok) => {
                return Err(GraphError::Parse {
                    line,
                    msg: format!("unknown line type `{tok}`"),
                })
            }
            None => unreachable!(),
        }
    }
    graph.ok_or(GraphError::Parse {
        line: 0,
        msg: "missing problem line".into(),
    })
}

fn parse_field(field: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    field
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| GraphError::Parse {
            line,
            msg: format!("missing or invalid {what}"),
        })
}

pub fn to_dimacs(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = String::new();
    let _ = writeln!(out, "p edge {} {}", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

// ---------------------------------------------------------------------------
// Coloring solvers
// ---------------------------------------------------------------------------

/// Colors vertices in the given order, assigning each the least color not
/// used on an already-colored neighbor.
pub fn greedy_coloring(g: &Graph, order: &[usize]) -> Result<Coloring, GraphError> {
    if order.len() != g.n() {
        return Err(GraphError::NotAPermutation);
    }
    let mut seen = vec![false; g.n()];
    for &v in order {
        if v >= g.n() || seen[v] {
            return Err(GraphError::NotAPermutation);
        }
        seen[v] = true;
    }
    let mut color = vec![usize::MAX; g.n()];
    for &v in order {
        let mut used = vec![false; g.degree(v) + 1];
        for u in g.neighbors(v).iter() {
            if color[u] < used.len() {
                used[color[u]] = true;
            }
        }
        color[v] = used.iter().position(|&b| !b).unwrap();
    }
    Coloring::new(g, color)
}

/// Vertices sorted by descending degree, ties by index. The deterministic
/// default order for greedy bounds and the exact solver.
pub fn degree_order(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// Greedily grows a clique along the degree order; a lower bound for χ.
fn greedy_clique(g: &Graph) -> usize {
    let mut clique: Vec<usize> = Vec::new();
    for v in degree_order(g) {
        if clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
        }
    }
    clique.len().max(1)
}

/// Exact chromatic number by backtracking over k-colorability, with k
/// running from a clique lower bound to the greedy upper bound. The
/// search is deterministic; `budget` caps the number of search nodes.
pub fn exact_chromatic_number(g: &Graph, budget: u64) -> Result<usize, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::SizeTooSmall { got: 0, min: 1 });
    }
    let order = degree_order(g);
    let upper = greedy_coloring(g, &order)?.colors_used();
    let lower = greedy_clique(g);
    let mut nodes = 0u64;
    for k in lower..upper {
        if k_colorable(g, &order, k, budget, &mut nodes)? {
            return Ok(k);
        }
    }
    Ok(upper)
}

fn k_colorable(
    g: &Graph,
    order: &[usize],
    k: usize,
    budget: u64,
    nodes: &mut u64,
) -> Result<bool, GraphError> {
    let mut color = vec![usize::MAX; g.n()];
    color_rec(g, order, 0, k, 0, &mut color, budget, nodes)
}

#[allow(clippy::too_many_arguments)]
fn color_rec(
    g: &Graph,
    order: &[usize],
    pos: usize,
    k: usize,
    max_used: usize,
    color: &mut [usize],
    budget: u64,
    nodes: &mut u64,
) -> Result<bool, GraphError> {
    *nodes += 1;
    if *nodes > budget {
        return Err(GraphError::BudgetExhausted(budget));
    }
    if pos == order.len() {
        return Ok(true);
    }
    let v = order[pos];
    // Allowing at most one fresh color breaks color-permutation symmetry.
    let limit = k.min(max_used + 1);
    for c in 0..limit {
        if g.neighbors(v).iter().all(|u| color[u] != c) {
            color[v] = c;
            if color_rec(g, order, pos + 1, k, max_used.max(c + 1), color, budget, nodes)? {
                return Ok(true);
            }
            color[v] = usize::MAX;
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Kneser representations
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RepresentationMode {
    /// One ground element per non-edge plus one private marker per vertex.
    Augmented,
    /// Ground elements are the cliques of a greedy clique cover of the
    /// complement's edges (singleton cliques pad vertices that would
    /// otherwise get an empty or duplicate set).
    CliqueCover,
}

/// Represents `g` as a Kneser graph: returns a system of distinct nonempty
/// sets, one per vertex, such that two vertices are adjacent iff their sets
/// are disjoint (`kneser_graph_of` on the result rebuilds `g` vertex for
/// vertex).
pub fn kneser_representation(g: &Graph, mode: RepresentationMode) -> SetSystem {
    match mode {
        RepresentationMode::Augmented => {
            let nonedges = g.complement().edges();
            let ground = nonedges.len() + g.n();
            let mut sets: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
            for (i, &(u, v)) in nonedges.iter().enumerate() {
                sets[u].push(i);
                sets[v].push(i);
            }
            for (v, set) in sets.iter_mut().enumerate() {
                set.push(nonedges.len() + v);
            }
            SetSystem::new(ground, sets).expect("augmented representation is valid")
        }
        RepresentationMode::CliqueCover => {
            representation_from_cover(g, greedy_clique_cover(&g.complement()))
                .expect("greedy cover is valid")
        }
    }
}

/// Kneser representation from a caller-chosen clique cover of the
/// complement's edges (any cover yields a valid representation; the greedy
/// one used by `kneser_representation` is only a default). Cliques must be
/// cliques of the complement and together cover all of its edges.
pub fn representation_from_cover(
    g: &Graph,
    cover: Vec<Vec<usize>>,
) -> Result<SetSystem, GraphError> {
    let complement = g.complement();
    let mut covered = vec![BitSet::new(g.n()); g.n()];
    for clique in &cover {
        for (i, &u) in clique.iter().enumerate() {
            if u >= g.n() {
                return Err(GraphError::VertexOutOfRange { v: u, n: g.n() });
            }
            for &v in &clique[i + 1..] {
                if !complement.has_edge(u, v) {
                    return Err(GraphError::NotAHomomorphism);
                }
                covered[u].insert(v);
                covered[v].insert(u);
            }
        }
    }
    for (u, v) in complement.edges() {
        if !covered[u].contains(v) {
            return Err(GraphError::NotAHomomorphism);
        }
    }
    Ok(build_cover_sets(g, cover))
}

fn build_cover_sets(g: &Graph, cover: Vec<Vec<usize>>) -> SetSystem {
    let mut cliques = cover;
    let mut sets: Vec<Vec<usize>> = loop {
        let mut sets: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
        for (i, c) in cliques.iter().enumerate() {
            for &v in c {
                sets[v].push(i);
            }
        }
        // Pad empty or duplicate member sets with private singleton
        // cliques; singletons cover no edges, so the cover stays valid.
        let mut bad: Vec<usize> = Vec::new();
        for v in 0..g.n() {
            let dup = (0..v).any(|u| sets[u] == sets[v]);
            if sets[v].is_empty() || dup {
                bad.push(v);
            }
        }
        if bad.is_empty() {
            break sets;
        }
        for v in bad {
            cliques.push(vec![v]);
        }
    };
    for s in &mut sets {
        s.sort_unstable();
    }
    SetSystem::new(cliques.len(), sets).expect("clique cover representation is valid")
}

/// Covers all edges of `h` by cliques of `h`: repeatedly grows a maximal
/// clique around the least uncovered edge. Any cover yields a valid
/// representation; minimizing it is NP-hard, so greedy is fine.
fn greedy_clique_cover(h: &Graph) -> Vec<Vec<usize>> {
    let mut covered = vec![BitSet::new(h.n()); h.n()];
    let mut cliques = Vec::new();
    loop {
        let mut seed = None;
        'outer: for u in 0..h.n() {
            for v in h.neighbors(u).iter() {
                if u < v && !covered[u].contains(v) {
                    seed = Some((u, v));
                    break 'outer;
                }
            }
        }
        let Some((u, v)) = seed else { break };
        let mut clique = vec![u, v];
        let mut common = h.neighbors(u).clone();
        common.intersect_with(h.neighbors(v));
        for w in 0..h.n() {
            if common.contains(w) {
                clique.push(w);
                common.intersect_with(h.neighbors(w));
            }
        }
        clique.sort_unstable();
        for i in 0..clique.len() {
            for j in i + 1..clique.len() {
                covered[clique[i]].insert(clique[j]);
                covered[clique[j]].insert(clique[i]);
            }
        }
        cliques.push(clique);
    }
    cliques
}
