//! Tree decompositions: validation, the orientation argument for balanced
//! separators, and a small exact search.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{components_without, is_connected, Graph, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub tree: Graph,
    pub bags: Vec<VertexSet>,
}

impl TreeDecomposition {
    pub fn new(tree: Graph, bags: Vec<VertexSet>) -> Self {
        TreeDecomposition { tree, bags }
    }

    /// A path of bags.
    pub fn path(bags: Vec<VertexSet>) -> Result<Self> {
        let t = bags.len();
        let tree = Graph::from_edges(t, false, (1..t).map(|i| (i - 1, i)))?;
        Ok(TreeDecomposition { tree, bags })
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(VertexSet::len).max().unwrap_or(0).saturating_sub(1)
    }
}

fn td_error(msg: String) -> Error {
    Error::InvalidTreeDecomposition(msg)
}

/// Checks the tree and the three axioms; returns the width.
pub fn verify_td(g: &Graph, td: &TreeDecomposition) -> Result<usize> {
    let t = td.bags.len();
    if t == 0 || td.tree.n() != t {
        return Err(td_error(format!("{} tree nodes for {t} bags", td.tree.n())));
    }
    if td.tree.is_directed() || td.tree.edge_count() + 1 != t || !is_connected(&td.tree) {
        return Err(td_error("tree is not a tree".into()));
    }
    for (i, bag) in td.bags.iter().enumerate() {
        if bag.universe() != g.n() {
            return Err(td_error(format!("bag {i} is over {} vertices, graph has {}", bag.universe(), g.n())));
        }
    }
    let holders = holders(g.n(), td);
    if let Some(v) = (0..g.n()).find(|&v| holders[v].is_empty()) {
        return Err(td_error(format!("vertex {v} is in no bag")));
    }
    for (u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(u) && b.contains(v)) {
            return Err(td_error(format!("edge {u}-{v} uncovered")));
        }
    }
    for v in 0..g.n() {
        let inside: Vec<bool> = (0..t).map(|i| td.bags[i].contains(v)).collect();
        if crate::graph::components_of_mask(&td.tree, &inside).len() != 1 {
            return Err(td_error(format!("bags containing vertex {v} do not form a subtree")));
        }
    }
    Ok(td.width())
}

fn holders(n: usize, td: &TreeDecomposition) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); n];
    for (i, bag) in td.bags.iter().enumerate() {
        for v in bag {
            out[v].push(i);
        }
    }
    out
}

/// Contracts tree edges whose bags are nested, keeping the larger bag.
/// Returns the reduced decomposition and the original index of each node.
fn make_minimal(td: &TreeDecomposition) -> Result<(TreeDecomposition, Vec<usize>)> {
    let mut alive: Vec<bool> = vec![true; td.bags.len()];
    let mut adj: Vec<Vec<usize>> = (0..td.bags.len()).map(|i| td.tree.neighbors(i).to_vec()).collect();
    loop {
        let found = (0..adj.len()).filter(|&i| alive[i]).find_map(|s| {
            adj[s].iter().copied().find(|&t| td.bags[s].is_subset(&td.bags[t])).map(|t| (s, t))
        });
        let Some((s, t)) = found else { break };
        alive[s] = false;
        for x in std::mem::take(&mut adj[s]) {
            adj[x].retain(|&y| y != s);
            if x != t {
                adj[x].push(t);
                adj[t].push(x);
            }
        }
    }
    let keep: Vec<usize> = (0..alive.len()).filter(|&i| alive[i]).collect();
    let mut index = vec![usize::MAX; alive.len()];
    for (j, &i) in keep.iter().enumerate() {
        index[i] = j;
    }
    let mut edges = Vec::new();
    for &i in &keep {
        for &x in &adj[i] {
            if i < x {
                edges.push((index[i], index[x]));
            }
        }
    }
    let tree = Graph::from_edges(keep.len(), false, edges)?;
    let bags = keep.iter().map(|&i| td.bags[i].clone()).collect();
    Ok((TreeDecomposition { tree, bags }, keep))
}

/// Nodes on the `t` side of tree edge `s`-`t`.
fn side_of(tree: &Graph, s: usize, t: usize) -> Vec<bool> {
    let mut seen = vec![false; tree.n()];
    seen[t] = true;
    let mut q = VecDeque::from([t]);
    while let Some(x) = q.pop_front() {
        for &y in tree.neighbors(x) {
            if !seen[y] && !(x == t && y == s) {
                seen[y] = true;
                q.push_back(y);
            }
        }
    }
    seen
}

/// A bag whose removal leaves no component holding more than `|W|/2`
/// vertices of `W`. Tree edges are oriented towards the side containing a
/// heavy component of `G − (Y_s ∩ Y_t)`; the bag of a sink is returned.
pub fn balanced_separator(g: &Graph, td: &TreeDecomposition, w: &VertexSet, k: usize) -> Result<VertexSet> {
    let width = verify_td(g, td)?;
    if width >= k {
        return Err(Error::InvalidParameters(format!("decomposition width {width} is not below {k}")));
    }
    g.check_set(w)?;
    if w.is_empty() {
        return Ok(VertexSet::empty(g.n()));
    }
    let (td, _) = make_minimal(td)?;
    let heavy = |c: &VertexSet| 2 * c.intersection(w).len() > w.len();
    let holder: Vec<usize> = holders(g.n(), &td).into_iter().map(|h| h[0]).collect();
    let t = td.bags.len();
    let mut out_degree = vec![0usize; t];
    for (s, u) in td.tree.edges() {
        let sep = td.bags[s].intersection(&td.bags[u]);
        let towards_u = side_of(&td.tree, s, u);
        for c in components_without(g, &sep)? {
            if heavy(&c) {
                let from = if towards_u[holder[c.as_slice()[0]]] { s } else { u };
                out_degree[from] += 1;
            }
        }
    }
    if let Some(x) = (0..t).find(|&x| out_degree[x] > 1) {
        return Err(Error::Inconsistency(format!("tree node {x} has out-degree {}", out_degree[x])));
    }
    let sink = (0..t)
        .rev()
        .find(|&x| out_degree[x] == 0)
        .ok_or_else(|| Error::Inconsistency("orientation has no sink".into()))?;
    let s = td.bags[sink].clone();
    if let Some(c) = components_without(g, &s)?.into_iter().find(|c| heavy(c)) {
        return Err(Error::Inconsistency(format!(
            "component containing {} keeps {} of {} weighted vertices",
            c.as_slice()[0],
            c.intersection(w).len(),
            w.len()
        )));
    }
    Ok(s)
}

/// Searches elimination orderings for a decomposition of width below `k`.
/// `Ok(None)` means none exists; running out of `budget` states is an error.
pub fn greedy_td_search(g: &Graph, k: usize, budget: u64) -> Result<Option<TreeDecomposition>> {
    let n = g.n();
    if n > 128 {
        return Err(Error::InvalidParameters(format!("search handles at most 128 vertices, got {n}")));
    }
    if n == 0 {
        return Ok(None);
    }
    let g = g.underlying();
    let adj: Vec<u128> = (0..n).map(|v| g.neighbors(v).iter().fold(0u128, |m, &w| m | (1 << w))).collect();
    let mut search = Search {
        adj,
        n,
        k,
        budget,
        spent: 0,
        failed: HashSet::new(),
    };
    let mut order = Vec::with_capacity(n);
    if !search.run(0, &mut order)? {
        return Ok(None);
    }
    Ok(Some(from_elimination(&search, &order)?))
}

struct Search {
    adj: Vec<u128>,
    n: usize,
    k: usize,
    budget: u64,
    spent: u64,
    failed: HashSet<u128>,
}

impl Search {
    /// Neighbours of `v` in the graph with `gone` eliminated.
    fn filled(&self, gone: u128, v: Vertex) -> u128 {
        let mut seen = 1u128 << v;
        let mut stack = vec![v];
        let mut out = 0u128;
        while let Some(x) = stack.pop() {
            let mut nb = self.adj[x] & !seen;
            seen |= nb;
            while nb != 0 {
                let y = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if gone >> y & 1 == 1 {
                    stack.push(y);
                } else {
                    out |= 1 << y;
                }
            }
        }
        out
    }

    fn run(&mut self, gone: u128, order: &mut Vec<Vertex>) -> Result<bool> {
        if order.len() == self.n {
            return Ok(true);
        }
        if self.failed.contains(&gone) {
            return Ok(false);
        }
        self.spent += 1;
        if self.spent > self.budget {
            return Err(Error::BudgetExhausted(format!("{} elimination states", self.budget)));
        }
        let mut cands: Vec<(u32, Vertex)> = (0..self.n)
            .filter(|&v| gone >> v & 1 == 0)
            .map(|v| (self.filled(gone, v).count_ones(), v))
            .filter(|&(d, _)| (d as usize) < self.k)
            .collect();
        cands.sort_unstable();
        for (_, v) in cands {
            order.push(v);
            if self.run(gone | (1 << v), order)? {
                return Ok(true);
            }
            order.pop();
        }
        self.failed.insert(gone);
        Ok(false)
    }
}

fn from_elimination(s: &Search, order: &[Vertex]) -> Result<TreeDecomposition> {
    let n = s.n;
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut gone = 0u128;
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let nb = s.filled(gone, v);
        let members = (0..n).filter(|&w| w == v || nb >> w & 1 == 1);
        bags.push(VertexSet::new(n, members)?);
        if i + 1 < n {
            let parent = (0..n).filter(|&w| nb >> w & 1 == 1).map(|w| pos[w]).min().unwrap_or(i + 1);
            edges.push((i, parent));
        }
        gone |= 1 << v;
    }
    Ok(TreeDecomposition {
        tree: Graph::from_edges(n, false, edges)?,
        bags,
    })
}
