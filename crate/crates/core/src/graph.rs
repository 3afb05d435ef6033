//! Finite simple graphs and digraphs, vertex sets, and the boundary, depth,
//! diameter and growth primitives everything else is built from.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Internal "not reached" marker for BFS arrays; never escapes this module.
const UNSEEN: usize = usize::MAX;

/// A finite simple graph or digraph stored as sorted adjacency lists.
///
/// Undirected graphs store each edge in both endpoint lists. Digraphs keep a
/// second set of lists for in-neighbours.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    out: Vec<Vec<Vertex>>,
    inn: Vec<Vec<Vertex>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.edge_count())
            .field("directed", &self.directed)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range ids. For undirected graphs `(u, v)` and `(v, u)` are the
    /// same edge.
    pub fn from_edges<I>(n: usize, directed: bool, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut out = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            out[u].push(v);
            if !directed {
                out[v].push(u);
            }
        }
        for (u, list) in out.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = if directed || u < w[0] { (u, w[0]) } else { (w[0], u) };
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        Ok(Self::from_sorted_lists(directed, out))
    }

    /// Builds a graph from arcs, silently merging duplicates. Loops and bad
    /// ids are still errors. Generators use this where a connection set may
    /// produce the same edge twice (e.g. `+1` and `-1` on a cycle).
    pub fn from_arcs_merged<I>(n: usize, directed: bool, arcs: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut out = vec![Vec::new(); n];
        for (u, v) in arcs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            out[u].push(v);
            if !directed {
                out[v].push(u);
            }
        }
        for list in &mut out {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_sorted_lists(directed, out))
    }

    fn from_sorted_lists(directed: bool, out: Vec<Vec<Vertex>>) -> Graph {
        let inn = if directed {
            let mut inn = vec![Vec::new(); out.len()];
            for (u, list) in out.iter().enumerate() {
                for &v in list {
                    inn[v].push(u);
                }
            }
            inn
        } else {
            Vec::new()
        };
        Graph { directed, out, inn }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Out-neighbours (all neighbours for undirected graphs), sorted.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out[v]
    }

    /// In-neighbours, sorted. Equal to [`Graph::neighbors`] when undirected.
    pub fn in_neighbors(&self, v: Vertex) -> &[Vertex] {
        if self.directed {
            &self.inn[v]
        } else {
            &self.out[v]
        }
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_neighbors(v).len()
    }

    pub fn max_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The common out-degree, if every vertex has the same one.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.out.first().map_or(0, Vec::len);
        self.out.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Number of edges (arcs for digraphs).
    pub fn edge_count(&self) -> usize {
        let total: usize = self.out.iter().map(Vec::len).sum();
        if self.directed {
            total
        } else {
            total / 2
        }
    }

    /// Edges with `u < v` for undirected graphs; all arcs for digraphs.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let directed = self.directed;
        self.out.iter().enumerate().flat_map(move |(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| directed || u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.out[u].binary_search(&v).is_ok()
    }

    /// The underlying undirected graph (identity for undirected input).
    pub fn underlying(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let arcs: Vec<_> = self.edges().collect();
        Graph::from_arcs_merged(self.n(), false, arcs).expect("arcs of a valid digraph")
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub(crate) fn check_set(&self, a: &VertexSet) -> Result<()> {
        if a.universe != self.n() {
            if let Some(&v) = a.members.iter().find(|&&v| v >= self.n()) {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
            }
            return Err(Error::InvalidParameters(format!(
                "vertex set over {} vertices used with a graph on {}",
                a.universe,
                self.n()
            )));
        }
        Ok(())
    }

    /// Neighbours in the underlying undirected graph (may repeat a vertex for
    /// digraphs with antiparallel arcs).
    pub(crate) fn both_neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let extra: &[Vertex] = if self.directed { &self.inn[v] } else { &[] };
        self.out[v].iter().chain(extra.iter()).copied()
    }
}

/// A sorted set of distinct vertex ids drawn from `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    members: Vec<Vertex>,
    universe: usize,
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.members).finish()
    }
}

impl VertexSet {
    /// Collects `ids` into a set; duplicates are merged, out-of-range ids are
    /// an error.
    pub fn new<I: IntoIterator<Item = Vertex>>(universe: usize, ids: I) -> Result<VertexSet> {
        let mut members: Vec<Vertex> = ids.into_iter().collect();
        if let Some(&v) = members.iter().find(|&&v| v >= universe) {
            return Err(Error::VertexOutOfRange { vertex: v, n: universe });
        }
        members.sort_unstable();
        members.dedup();
        Ok(VertexSet { members, universe })
    }

    pub fn empty(universe: usize) -> VertexSet {
        VertexSet {
            members: Vec::new(),
            universe,
        }
    }

    pub fn full(universe: usize) -> VertexSet {
        VertexSet {
            members: (0..universe).collect(),
            universe,
        }
    }

    pub fn from_mask(mask: &[bool]) -> VertexSet {
        VertexSet {
            members: (0..mask.len()).filter(|&v| mask[v]).collect(),
            universe: mask.len(),
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.members
    }

    pub fn min(&self) -> Option<Vertex> {
        self.members.first().copied()
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.universe];
        for &v in &self.members {
            m[v] = true;
        }
        m
    }

    pub fn complement(&self) -> VertexSet {
        let mask = self.mask();
        VertexSet {
            members: (0..self.universe).filter(|&v| !mask[v]).collect(),
            universe: self.universe,
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut members: Vec<Vertex> = self.members.iter().chain(&other.members).copied().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet {
            members,
            universe: self.universe.max(other.universe),
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            members: self.iter().filter(|&v| other.contains(v)).collect(),
            universe: self.universe,
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            members: self.iter().filter(|&v| !other.contains(v)).collect(),
            universe: self.universe,
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter().copied()
    }
}

/// The boundary data of a vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryProfile {
    /// ∂A: vertices outside A with an in-neighbour... for undirected graphs
    /// simply the vertices outside A adjacent to A.
    pub vertex_boundary: VertexSet,
    /// |δA|, counting arcs leaving A for digraphs.
    pub edge_cut_size: usize,
    /// ∂⁺A: heads of arcs leaving A.
    pub out_boundary: VertexSet,
    /// ∂⁻A: tails of arcs entering A.
    pub in_boundary: VertexSet,
}

impl BoundaryProfile {
    /// |δ⁺A|.
    pub fn out_cut_size(&self) -> usize {
        self.edge_cut_size
    }
}

fn bfs_core(g: &Graph, sources: &[Vertex], reverse: bool) -> Vec<usize> {
    let mut dist = vec![UNSEEN; g.n()];
    let mut queue = VecDeque::with_capacity(g.n());
    for &s in sources {
        if dist[s] == UNSEEN {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let next = if reverse { g.in_neighbors(u) } else { g.neighbors(u) };
        for &w in next {
            if dist[w] == UNSEEN {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

pub(crate) fn bfs_raw(g: &Graph, src: Vertex) -> Vec<usize> {
    bfs_core(g, &[src], false)
}

pub(crate) fn is_unseen(d: usize) -> bool {
    d == UNSEEN
}

/// Multi-source BFS distances along out-arcs. `None` marks unreachable
/// vertices.
pub fn bfs_distances(g: &Graph, src: &VertexSet) -> Result<Vec<Option<usize>>> {
    g.check_set(src)?;
    if src.is_empty() {
        return Err(Error::EmptySource);
    }
    Ok(bfs_core(g, src.as_slice(), false)
        .into_iter()
        .map(|d| (d != UNSEEN).then_some(d))
        .collect())
}

/// Distance from `u` to `v` along out-arcs.
pub fn distance(g: &Graph, u: Vertex, v: Vertex) -> Result<Option<usize>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let d = bfs_core(g, &[u], false)[v];
    Ok((d != UNSEEN).then_some(d))
}

/// ∂A (out-boundary for digraphs).
pub fn boundary(g: &Graph, a: &VertexSet) -> Result<VertexSet> {
    g.check_set(a)?;
    let inside = a.mask();
    let mut hit = vec![false; g.n()];
    for u in a {
        for &w in g.neighbors(u) {
            if !inside[w] {
                hit[w] = true;
            }
        }
    }
    Ok(VertexSet::from_mask(&hit))
}

pub fn boundary_profile(g: &Graph, a: &VertexSet) -> Result<BoundaryProfile> {
    g.check_set(a)?;
    let inside = a.mask();
    let mut out_hit = vec![false; g.n()];
    let mut in_hit = vec![false; g.n()];
    let mut cut = 0usize;
    for u in a {
        for &w in g.neighbors(u) {
            if !inside[w] {
                out_hit[w] = true;
                cut += 1;
            }
        }
        if g.is_directed() {
            for &w in g.in_neighbors(u) {
                if !inside[w] {
                    in_hit[w] = true;
                }
            }
        }
    }
    let out_boundary = VertexSet::from_mask(&out_hit);
    let in_boundary = if g.is_directed() {
        VertexSet::from_mask(&in_hit)
    } else {
        out_boundary.clone()
    };
    Ok(BoundaryProfile {
        vertex_boundary: out_boundary.clone(),
        edge_cut_size: cut,
        out_boundary,
        in_boundary,
    })
}

/// |δ⁻A|: arcs entering A.
pub fn in_cut_size(g: &Graph, a: &VertexSet) -> Result<usize> {
    g.check_set(a)?;
    let inside = a.mask();
    Ok(a.iter()
        .map(|u| g.in_neighbors(u).iter().filter(|&&w| !inside[w]).count())
        .sum())
}

/// Per-vertex depth in `A`: distance to the complement, `None` outside A.
pub fn vertex_depths(g: &Graph, a: &VertexSet) -> Result<Vec<Option<usize>>> {
    g.check_set(a)?;
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if a.len() == g.n() {
        return Err(Error::DepthOfFullSet);
    }
    let comp = a.complement();
    // distance *to* the complement, so walk arcs backwards from it
    let dist = bfs_core(g, comp.as_slice(), true);
    let mut out = vec![None; g.n()];
    for v in a {
        if dist[v] == UNSEEN {
            return Err(Error::InfiniteDepth(v));
        }
        out[v] = Some(dist[v]);
    }
    Ok(out)
}

/// depth(A) = max over v in A of dist(v, V \ A).
pub fn depth(g: &Graph, a: &VertexSet) -> Result<usize> {
    Ok(vertex_depths(g, a)?.into_iter().flatten().max().unwrap_or(0))
}

/// Maximum distance, measured in all of `g`, between two members of `a`.
pub fn diameter_of_set(g: &Graph, a: &VertexSet) -> Result<usize> {
    g.check_set(a)?;
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let members = a.as_slice();
    let per_source = crate::par::map(members, |&x| {
        let dist = bfs_core(g, &[x], false);
        let mut best = 0;
        for &y in members {
            if dist[y] == UNSEEN {
                return Err(Error::InfiniteDiameter(x, y));
            }
            best = best.max(dist[y]);
        }
        Ok(best)
    });
    let mut best = 0;
    for r in per_source {
        best = best.max(r?);
    }
    Ok(best)
}

/// Eccentricity of `x`; `None` if some vertex is unreachable.
pub fn eccentricity(g: &Graph, x: Vertex) -> Result<Option<usize>> {
    g.check_vertex(x)?;
    let dist = bfs_core(g, &[x], false);
    Ok(if dist.contains(&UNSEEN) {
        None
    } else {
        dist.into_iter().max()
    })
}

/// diam(G).
pub fn diameter(g: &Graph) -> Result<usize> {
    diameter_of_set(g, &VertexSet::full(g.n()))
}

/// [b(0), ..., b(kmax)] with b(k) = |B(x, k)|.
pub fn ball_growth(g: &Graph, x: Vertex, kmax: usize) -> Result<Vec<usize>> {
    g.check_vertex(x)?;
    let dist = bfs_core(g, &[x], false);
    let mut counts = vec![0usize; kmax + 1];
    for d in dist {
        if d != UNSEEN && d <= kmax {
            counts[d] += 1;
        }
    }
    for k in 1..=kmax {
        counts[k] += counts[k - 1];
    }
    Ok(counts)
}

/// B(x, r).
pub fn ball(g: &Graph, x: Vertex, r: usize) -> Result<VertexSet> {
    g.check_vertex(x)?;
    let dist = bfs_core(g, &[x], false);
    Ok(VertexSet {
        members: (0..g.n()).filter(|&v| dist[v] <= r).collect(),
        universe: g.n(),
    })
}

/// Weakly connected components of the subgraph induced on `mask`, each
/// sorted, listed by smallest member.
pub fn components_of_mask(g: &Graph, mask: &[bool]) -> Vec<Vec<Vertex>> {
    let mut comp = vec![UNSEEN; g.n()];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for s in 0..g.n() {
        if !mask[s] || comp[s] != UNSEEN {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        stack.push(s);
        let mut members = Vec::new();
        while let Some(u) = stack.pop() {
            members.push(u);
            for w in g.both_neighbors(u) {
                if mask[w] && comp[w] == UNSEEN {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Components of `g` minus `removed`.
pub fn components_without(g: &Graph, removed: &VertexSet) -> Result<Vec<VertexSet>> {
    g.check_set(removed)?;
    let mask: Vec<bool> = removed.mask().into_iter().map(|r| !r).collect();
    Ok(components_of_mask(g, &mask)
        .into_iter()
        .map(|members| VertexSet {
            members,
            universe: g.n(),
        })
        .collect())
}

pub fn is_connected(g: &Graph) -> bool {
    g.n() == 0 || components_of_mask(g, &vec![true; g.n()]).len() == 1
}

/// Whether G[A ∪ ∂A] is connected. Empty A gives `false`.
pub fn check_connected_with_boundary(g: &Graph, a: &VertexSet) -> bool {
    if a.is_empty() || g.check_set(a).is_err() {
        return false;
    }
    let Ok(bd) = boundary(g, a) else {
        return false;
    };
    let mut mask = a.mask();
    for v in &bd {
        mask[v] = true;
    }
    components_of_mask(g, &mask).len() == 1
}
