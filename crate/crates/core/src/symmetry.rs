//! Permutations, automorphism search, orbit and block-system computations,
//! and quotient graphs.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::graph::{self, Graph, Vertex, VertexSet};

/// A bijection of `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<Vertex>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.image)
    }
}

impl Permutation {
    pub fn new(image: Vec<Vertex>) -> Result<Permutation> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n {
                return Err(Error::InvalidPermutation(format!("image {x} out of range 0..{n}")));
            }
            if seen[x] {
                return Err(Error::InvalidPermutation(format!("image {x} repeated")));
            }
            seen[x] = true;
        }
        Ok(Permutation { image })
    }

    /// Builds `i -> f(i)`; panics if `f` is not a bijection (constructors
    /// only use it with closed-form maps).
    pub(crate) fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Permutation {
        Permutation::new((0..n).map(f).collect()).expect("closed-form permutation")
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, x: Vertex) -> Vertex {
        self.image[x]
    }

    pub fn images(&self) -> &[Vertex] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { image: inv }
    }

    pub fn apply_set(&self, a: &VertexSet) -> VertexSet {
        VertexSet::new(a.universe(), a.iter().map(|v| self.image[v])).expect("permutation stays in range")
    }

    /// First edge (or arc) of `g` whose image is not an edge, if any.
    pub fn broken_edge(&self, g: &Graph) -> Option<(Vertex, Vertex)> {
        if self.len() != g.n() {
            return Some((0, 0));
        }
        g.edges().find(|&(u, v)| !g.has_edge(self.image[u], self.image[v]))
    }

    pub fn is_automorphism(&self, g: &Graph) -> bool {
        self.len() == g.n() && self.broken_edge(g).is_none()
    }
}

fn check_gens(n: usize, gens: &[Permutation]) -> Result<()> {
    for (i, p) in gens.iter().enumerate() {
        if p.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "generator {i} has length {}, expected {n}",
                p.len()
            )));
        }
    }
    Ok(())
}

/// Checks every generator against `g`, naming the first broken edge.
pub fn check_automorphisms(g: &Graph, gens: &[Permutation]) -> Result<()> {
    check_gens(g.n(), gens)?;
    for (i, p) in gens.iter().enumerate() {
        if let Some((u, v)) = p.broken_edge(g) {
            return Err(Error::NotAutomorphism(format!(
                "generator {i} maps edge {u}-{v} to non-edge {}-{}",
                p.apply(u),
                p.apply(v)
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub transitive: bool,
    /// Orbits, each sorted, listed by smallest member.
    pub orbits: Vec<Vec<Vertex>>,
}

/// Orbit partition of the group generated by `gens`. When `g` is supplied,
/// every generator must be an automorphism of it.
pub fn orbit_transitivity(n: usize, gens: &[Permutation], g: Option<&Graph>) -> Result<OrbitReport> {
    check_gens(n, gens)?;
    if let Some(g) = g {
        if g.n() != n {
            return Err(Error::InvalidParameters(format!("graph has {} vertices, expected {n}", g.n())));
        }
        check_automorphisms(g, gens)?;
    }
    let orbits = orbits(n, gens);
    Ok(OrbitReport {
        transitive: orbits.len() <= 1,
        orbits,
    })
}

pub(crate) fn orbits(n: usize, gens: &[Permutation]) -> Vec<Vec<Vertex>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut orbit = vec![s];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            i += 1;
            for p in gens {
                let y = p.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

fn orbit_of(x: Vertex, n: usize, gens: &[Permutation]) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        for p in gens {
            let z = p.apply(y);
            if !seen[z] {
                seen[z] = true;
                stack.push(z);
            }
        }
    }
    seen
}

/// All elements of the group generated by `gens`.
pub fn group_elements(n: usize, gens: &[Permutation], limit: usize) -> Result<Vec<Permutation>> {
    check_gens(n, gens)?;
    let id = Permutation::identity(n);
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        let x = out[i].clone();
        i += 1;
        for p in gens {
            let y = p.compose(&x);
            if seen.insert(y.clone()) {
                if out.len() >= limit {
                    return Err(Error::BudgetExhausted(format!("group has more than {limit} elements")));
                }
                out.push(y);
            }
        }
    }
    Ok(out)
}

/// Result of [`find_automorphisms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutGroup {
    /// A strong generating set relative to `base`.
    pub gens: Vec<Permutation>,
    pub base: Vec<Vertex>,
    /// Orbit length of each base point in the stabiliser of the earlier ones.
    pub orbit_sizes: Vec<usize>,
}

impl AutGroup {
    /// |Aut(G)|, or `None` if it does not fit in 128 bits.
    pub fn order(&self) -> Option<u128> {
        self.orbit_sizes
            .iter()
            .try_fold(1u128, |acc, &s| acc.checked_mul(s as u128))
    }
}

struct AutSearch<'a> {
    g: &'a Graph,
    dist: Vec<Vec<usize>>,
    order: Vec<Vertex>,
    nodes: AtomicUsize,
    limit: usize,
}

impl AutSearch<'_> {
    fn compatible(&self, v: Vertex, w: Vertex, map: &[usize]) -> bool {
        if self.g.degree(v) != self.g.degree(w) || self.g.in_degree(v) != self.g.in_degree(w) {
            return false;
        }
        for (x, &fx) in map.iter().enumerate() {
            if fx == usize::MAX {
                continue;
            }
            if self.dist[v][x] != self.dist[w][fx] || self.dist[x][v] != self.dist[fx][w] {
                return false;
            }
        }
        true
    }

    fn tick(&self) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.limit {
            return Err(Error::BudgetExhausted(format!(
                "automorphism search exceeded {} nodes",
                self.limit
            )));
        }
        Ok(())
    }

    /// Extends the partial map to a full automorphism, if one exists.
    fn extend(&self, map: &mut Vec<usize>, used: &mut Vec<bool>, idx: usize) -> Result<bool> {
        let n = self.g.n();
        let mut idx = idx;
        while idx < n && map[self.order[idx]] != usize::MAX {
            idx += 1;
        }
        if idx == n {
            return Ok(true);
        }
        let v = self.order[idx];
        for w in 0..n {
            if used[w] || !self.compatible(v, w, map) {
                continue;
            }
            self.tick()?;
            map[v] = w;
            used[w] = true;
            if self.extend(map, used, idx + 1)? {
                return Ok(true);
            }
            map[v] = usize::MAX;
            used[w] = false;
        }
        Ok(false)
    }
}

/// Computes Aut(g) by backtracking with distance-profile pruning.
///
/// `node_limit` bounds the number of search nodes over the whole run.
pub fn find_automorphisms(g: &Graph, node_limit: usize) -> Result<AutGroup> {
    let n = g.n();
    if n == 0 {
        return Ok(AutGroup {
            gens: Vec::new(),
            base: Vec::new(),
            orbit_sizes: Vec::new(),
        });
    }
    let dist: Vec<Vec<usize>> = crate::par::map_range(n, |v| graph::bfs_raw(g, v));
    // Visit vertices so that each new one is near those already mapped.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for s in 0..n {
        if placed[s] {
            continue;
        }
        let mut q = VecDeque::from([s]);
        placed[s] = true;
        while let Some(u) = q.pop_front() {
            order.push(u);
            for w in g.both_neighbors(u) {
                if !placed[w] {
                    placed[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    let search = AutSearch {
        g,
        dist,
        order: order.clone(),
        nodes: AtomicUsize::new(0),
        limit: node_limit,
    };

    // Bottom-up over the base: stabiliser generators are known before the
    // level that needs them.
    let mut gens: Vec<Permutation> = Vec::new();
    let mut sizes = vec![1usize; n];
    for level in (0..n).rev() {
        let b = order[level];
        let fixed = &order[..level];
        let mut in_orbit = orbit_of(b, n, &gens);
        let candidates: Vec<Vertex> = (0..n).filter(|&c| !in_orbit[c]).collect();
        let found = crate::par::map(&candidates, |&c| -> Result<Option<Permutation>> {
            let mut map = vec![usize::MAX; n];
            let mut used = vec![false; n];
            for &x in fixed {
                map[x] = x;
                used[x] = true;
            }
            if used[c] || !search.compatible(b, c, &map) {
                return Ok(None);
            }
            map[b] = c;
            used[c] = true;
            if search.extend(&mut map, &mut used, 0)? {
                Ok(Some(Permutation { image: map }))
            } else {
                Ok(None)
            }
        });
        for (c, r) in candidates.iter().zip(found) {
            let Some(p) = r? else { continue };
            if !in_orbit[*c] {
                debug_assert!(p.is_automorphism(g));
                gens.push(p);
                in_orbit = orbit_of(b, n, &gens);
            }
        }
        sizes[level] = in_orbit.iter().filter(|&&x| x).count();
    }
    Ok(AutGroup {
        gens,
        base: order,
        orbit_sizes: sizes,
    })
}

/// A partition of the vertex set into blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BlockSystem {
    blocks: Vec<VertexSet>,
    block_of: Vec<usize>,
}

impl fmt::Debug for BlockSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.blocks).finish()
    }
}

impl BlockSystem {
    /// Builds the partition from any labelling; blocks are renumbered in
    /// order of their smallest member.
    pub fn from_labels(labels: &[usize]) -> BlockSystem {
        let n = labels.len();
        let mut relabel = std::collections::HashMap::new();
        let mut block_of = vec![0; n];
        for v in 0..n {
            let next = relabel.len();
            block_of[v] = *relabel.entry(labels[v]).or_insert(next);
        }
        let mut members = vec![Vec::new(); relabel.len()];
        for v in 0..n {
            members[block_of[v]].push(v);
        }
        let blocks = members
            .into_iter()
            .map(|m| VertexSet::new(n, m).expect("labels in range"))
            .collect();
        BlockSystem { blocks, block_of }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<Vertex>]) -> Result<BlockSystem> {
        let mut labels = vec![usize::MAX; n];
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if labels[v] != usize::MAX {
                    return Err(Error::InvalidParameters(format!("vertex {v} in two blocks")));
                }
                labels[v] = i;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidParameters(format!("vertex {v} in no block")));
        }
        Ok(BlockSystem::from_labels(&labels))
    }

    pub fn singletons(n: usize) -> BlockSystem {
        BlockSystem::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn full(n: usize) -> BlockSystem {
        BlockSystem::from_labels(&vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.block_of.len()
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &VertexSet {
        &self.blocks[i]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, v: Vertex) -> usize {
        self.block_of[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    /// The common block size, if all blocks have the same size.
    pub fn block_size(&self) -> Option<usize> {
        let s = self.blocks.first().map_or(0, VertexSet::len);
        self.blocks.iter().all(|b| b.len() == s).then_some(s)
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() <= 1 || self.blocks.len() == self.n()
    }

    /// The block permutation induced by `p`, or an error naming a block
    /// that is not mapped onto a block.
    pub fn induced(&self, p: &Permutation) -> Result<Vec<usize>> {
        let mut img = vec![usize::MAX; self.blocks.len()];
        for (i, b) in self.blocks.iter().enumerate() {
            let first = self.block_of[p.apply(b.as_slice()[0])];
            if b.iter().any(|v| self.block_of[p.apply(v)] != first) {
                return Err(Error::InvalidParameters(format!("block {i} is split by a generator")));
            }
            img[i] = first;
        }
        Ok(img)
    }

    pub fn is_invariant(&self, gens: &[Permutation]) -> bool {
        gens.iter().all(|p| p.len() == self.n() && self.induced(p).is_ok())
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Finest block system coarser than the given pairs: merge images of merged
/// pairs under every generator until nothing changes.
fn block_closure(n: usize, gens: &[Permutation], pairs: impl IntoIterator<Item = (usize, usize)>) -> BlockSystem {
    let mut uf = UnionFind::new(n);
    let mut queue = VecDeque::new();
    for (a, b) in pairs {
        if uf.union(a, b) {
            queue.push_back((a, b));
        }
    }
    while let Some((a, b)) = queue.pop_front() {
        for p in gens {
            let (x, y) = (p.apply(a), p.apply(b));
            if uf.union(x, y) {
                queue.push_back((x, y));
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    BlockSystem::from_labels(&labels)
}

fn require_transitive(n: usize, gens: &[Permutation]) -> Result<()> {
    check_gens(n, gens)?;
    let k = orbits(n, gens).len();
    if k > 1 {
        return Err(Error::Intransitive(k));
    }
    Ok(())
}

/// The minimal block system in which `seed.0` and `seed.1` share a block.
pub fn minimal_block_system(n: usize, gens: &[Permutation], seed: (Vertex, Vertex)) -> Result<BlockSystem> {
    require_transitive(n, gens)?;
    for v in [seed.0, seed.1] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if seed.0 == seed.1 {
        return Err(Error::InvalidParameters("seed vertices must be distinct".into()));
    }
    let sys = block_closure(n, gens, [seed]);
    if !sys.is_invariant(gens) {
        return Err(Error::Inconsistency("block closure is not invariant".into()));
    }
    Ok(sys)
}

/// All block systems of the group generated by `gens`, finest first.
///
/// The minimal systems for seeds `(0, v)` are closed under joins, which
/// yields every system (each block through 0 is a union of minimal ones).
pub fn enumerate_block_systems(n: usize, gens: &[Permutation]) -> Result<Vec<BlockSystem>> {
    require_transitive(n, gens)?;
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    found.insert(BlockSystem::singletons(n).labels().to_vec());
    if n > 1 {
        found.insert(BlockSystem::full(n).labels().to_vec());
    }
    let minimal = crate::par::map_range(n.saturating_sub(1), |i| {
        block_closure(n, gens, [(0, i + 1)]).labels().to_vec()
    });
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    for m in minimal {
        if found.insert(m.clone()) {
            frontier.push(m);
        }
    }
    let atoms = frontier.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for sys in &frontier {
            for atom in &atoms {
                let pairs = (0..n).flat_map(|v| [(v, sys[v]), (v, atom[v])]);
                let joined = block_closure(n, gens, pairs).labels().to_vec();
                if found.insert(joined.clone()) {
                    next.push(joined);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<BlockSystem> = found.iter().map(|l| BlockSystem::from_labels(l)).collect();
    out.sort_by(|a, b| {
        b.num_blocks()
            .cmp(&a.num_blocks())
            .then_with(|| a.labels().cmp(b.labels()))
    });
    Ok(out)
}

/// G^σ: one vertex per block, blocks adjacent when some edge joins them.
pub fn quotient_graph(g: &Graph, sys: &BlockSystem) -> Result<Graph> {
    if sys.n() != g.n() {
        return Err(Error::InvalidParameters(format!(
            "block system over {} vertices, graph has {}",
            sys.n(),
            g.n()
        )));
    }
    let arcs = g
        .edges()
        .map(|(u, v)| (sys.block_of(u), sys.block_of(v)))
        .filter(|(a, b)| a != b)
        .collect::<Vec<_>>();
    Graph::from_arcs_merged(sys.num_blocks(), g.is_directed(), arcs)
}

/// The action of `gens` on the blocks of `sys`.
pub fn quotient_gens(sys: &BlockSystem, gens: &[Permutation]) -> Result<Vec<Permutation>> {
    gens.iter()
        .map(|p| Permutation::new(sys.induced(p)?))
        .collect()
}
