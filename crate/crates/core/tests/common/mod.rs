//! Brute-force reference implementations used by the integration tests.
//! Nothing here calls into the library's algorithms; graphs are plain
//! adjacency lists and sets are bitmasks or bool vectors.

#![allow(dead_code)]

use std::collections::VecDeque;

use vtsep::{Graph, VertexSet};

/// Out- and in-adjacency lists.
#[derive(Clone, Debug)]
pub struct Adj {
    pub n: usize,
    pub out: Vec<Vec<usize>>,
    pub inn: Vec<Vec<usize>>,
    pub directed: bool,
}

impl Adj {
    pub fn new(n: usize, directed: bool, edges: &[(usize, usize)]) -> Adj {
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in edges {
            out[u].push(v);
            inn[v].push(u);
            if !directed {
                out[v].push(u);
                inn[u].push(v);
            }
        }
        for l in out.iter_mut().chain(inn.iter_mut()) {
            l.sort_unstable();
            l.dedup();
        }
        Adj { n, out, inn, directed }
    }

    pub fn of(g: &Graph) -> Adj {
        let edges: Vec<_> = g.edges().collect();
        Adj::new(g.n(), g.is_directed(), &edges)
    }

    /// Union of in- and out-neighbours.
    pub fn both(&self, v: usize) -> Vec<usize> {
        let mut b: Vec<usize> = self.out[v].iter().chain(&self.inn[v]).copied().collect();
        b.sort_unstable();
        b.dedup();
        b
    }
}

pub fn circulant_edges(n: usize, conn: &[i64], directed: bool) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in 0..n {
        for &c in conn {
            let j = (i as i64 + c).rem_euclid(n as i64) as usize;
            if directed || i < j {
                e.push((i, j));
            }
        }
    }
    e.sort_unstable();
    e.dedup();
    e
}

/// C_n × K_2 with `(i, side)` at `2i + side`.
pub fn prism_edges(n: usize) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for i in 0..n {
        e.push((2 * i, 2 * i + 1));
        for s in 0..2 {
            let (a, b) = (2 * i + s, 2 * ((i + 1) % n) + s);
            e.push((a.min(b), a.max(b)));
        }
    }
    e.sort_unstable();
    e.dedup();
    e
}

pub fn torus_edges(m: usize, n: usize) -> Vec<(usize, usize)> {
    let id = |r: usize, c: usize| r * n + c;
    let mut e = Vec::new();
    for r in 0..m {
        for c in 0..n {
            for (a, b) in [(id(r, c), id(r, (c + 1) % n)), (id(r, c), id((r + 1) % m, c))] {
                if a != b {
                    e.push((a.min(b), a.max(b)));
                }
            }
        }
    }
    e.sort_unstable();
    e.dedup();
    e
}

pub fn mask_of(n: usize, ids: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut m = vec![false; n];
    for v in ids {
        m[v] = true;
    }
    m
}

pub fn members(mask: &[bool]) -> Vec<usize> {
    (0..mask.len()).filter(|&v| mask[v]).collect()
}

pub fn set(n: usize, mask: &[bool]) -> VertexSet {
    VertexSet::new(n, members(mask)).unwrap()
}

/// ∂⁺A: out-neighbours of A outside A (the plain boundary when undirected).
pub fn boundary(g: &Adj, a: &[bool]) -> Vec<bool> {
    let mut b = vec![false; g.n];
    for v in 0..g.n {
        if a[v] {
            for &w in &g.out[v] {
                if !a[w] {
                    b[w] = true;
                }
            }
        }
    }
    b
}

/// Boundary in the underlying undirected graph.
pub fn boundary_underlying(g: &Adj, a: &[bool]) -> Vec<bool> {
    let mut b = vec![false; g.n];
    for v in 0..g.n {
        if a[v] {
            for w in g.both(v) {
                if !a[w] {
                    b[w] = true;
                }
            }
        }
    }
    b
}

/// Number of arcs (edges when undirected) leaving A.
pub fn edge_cut(g: &Adj, a: &[bool]) -> usize {
    (0..g.n).filter(|&v| a[v]).map(|v| g.out[v].iter().filter(|&&w| !a[w]).count()).sum()
}

pub fn count(mask: &[bool]) -> usize {
    mask.iter().filter(|&&b| b).count()
}

/// Directed BFS distances from `src`.
pub fn bfs(g: &Adj, src: usize) -> Vec<Option<usize>> {
    let mut d = vec![None; g.n];
    d[src] = Some(0);
    let mut q = VecDeque::from([src]);
    while let Some(x) = q.pop_front() {
        for &y in &g.out[x] {
            if d[y].is_none() {
                d[y] = Some(d[x].unwrap() + 1);
                q.push_back(y);
            }
        }
    }
    d
}

/// Components of the underlying graph restricted to `keep`.
pub fn components(g: &Adj, keep: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n];
    let mut out = Vec::new();
    for s in 0..g.n {
        if !keep[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            i += 1;
            for y in g.both(x) {
                if keep[y] && !seen[y] {
                    seen[y] = true;
                    comp.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn connected(g: &Adj, keep: &[bool]) -> bool {
    components(g, keep).len() == 1
}

/// Max distance in g between members of A.
pub fn set_diameter(g: &Adj, a: &[bool]) -> Option<usize> {
    let mut best = 0;
    for x in members(a) {
        let d = bfs(g, x);
        for y in members(a) {
            best = best.max(d[y]?);
        }
    }
    Some(best)
}

/// depth(A): max over A of the distance to the complement.
pub fn depth(g: &Adj, a: &[bool]) -> usize {
    members(a)
        .into_iter()
        .map(|v| {
            let d = bfs(g, v);
            (0..g.n).filter(|&w| !a[w]).filter_map(|w| d[w]).min().expect("complement reachable")
        })
        .max()
        .unwrap_or(0)
}

/// Every subset of `0..n` as a bool mask (n ≤ 20).
pub fn all_subsets(n: usize) -> impl Iterator<Item = Vec<bool>> {
    assert!(n <= 20);
    (0u32..1 << n).map(move |bits| (0..n).map(|i| bits >> i & 1 == 1).collect())
}

/// Independent tree-decomposition validator.
pub fn td_valid(g: &Adj, tree_edges: &[(usize, usize)], bags: &[Vec<usize>]) -> Result<usize, String> {
    let b = bags.len();
    if b == 0 || tree_edges.len() + 1 != b {
        return Err("wrong number of tree edges".into());
    }
    let t = Adj::new(b, false, tree_edges);
    if !connected(&t, &vec![true; b]) {
        return Err("tree disconnected".into());
    }
    for v in 0..g.n {
        let holding: Vec<bool> = bags.iter().map(|bag| bag.contains(&v)).collect();
        if count(&holding) == 0 {
            return Err(format!("{v} in no bag"));
        }
        if components(&t, &holding).len() != 1 {
            return Err(format!("bags of {v} not a subtree"));
        }
    }
    for u in 0..g.n {
        for &v in &g.out[u] {
            if !bags.iter().any(|bag| bag.contains(&u) && bag.contains(&v)) {
                return Err(format!("edge {u} {v} uncovered"));
            }
        }
    }
    Ok(bags.iter().map(Vec::len).max().unwrap() - 1)
}

/// Largest number of W-vertices in a component of G − S.
pub fn max_w_in_component(g: &Adj, s: &[bool], w: &[bool]) -> usize {
    let keep: Vec<bool> = s.iter().map(|&x| !x).collect();
    components(g, &keep)
        .iter()
        .map(|c| c.iter().filter(|&&v| w[v]).count())
        .max()
        .unwrap_or(0)
}

/// A + B in ℤ_p.
pub fn sumset_mod(p: usize, a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut hit = vec![false; p];
    for &x in a {
        for &y in b {
            hit[(x + y) % p] = true;
        }
    }
    members(&hit)
}
