//! Cyclic systems of imprimitivity, ring-like certificates, cohesiveness,
//! interval covers, and the periodic (two-ended) counterparts.

mod flow;
pub mod periodic;

pub use periodic::{
    detect_periodic_ring, find_periodic_automorphisms, kappa_infinity, shift_type, verify_periodic_ring,
    KappaReport, PeriodicAutomorphism, PeriodicRing, PeriodicRingCertificate, ShiftType,
};

use crate::error::{Error, Result};
use crate::graph::{self, boundary, check_connected_with_boundary, Graph, VertexSet};
use crate::symmetry::{check_automorphisms, enumerate_block_systems, group_elements, BlockSystem, Permutation};

/// A block system with a circular order of its blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSystem {
    pub system: BlockSystem,
    /// Block indices in circular order.
    pub order: Vec<usize>,
    pub gens: Vec<Permutation>,
    pos: Vec<usize>,
}

impl CyclicSystem {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Position of block `b` in the circular order.
    pub fn position(&self, b: usize) -> usize {
        self.pos[b]
    }

    /// Position of the block holding vertex `v`.
    pub fn position_of_vertex(&self, v: usize) -> usize {
        self.pos[self.system.block_of(v)]
    }

    /// Distance between two positions along the circuit.
    pub fn circular_distance(&self, p: usize, q: usize) -> usize {
        let d = p.abs_diff(q);
        d.min(self.len() - d)
    }
}

fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (i, &b) in order.iter().enumerate() {
        pos[b] = i;
    }
    pos
}

pub fn verify_cyclic_system(g: &Graph, sys: &BlockSystem, order: &[usize], gens: &[Permutation]) -> Result<CyclicSystem> {
    let m = sys.num_blocks();
    if sys.n() != g.n() {
        return Err(Error::InvalidCyclicSystem(format!("block system over {} vertices, graph has {}", sys.n(), g.n())));
    }
    if m < 3 {
        return Err(Error::InvalidCyclicSystem(format!("a circuit needs at least 3 blocks, got {m}")));
    }
    let mut seen = vec![false; m];
    if order.len() != m || order.iter().any(|&b| b >= m || std::mem::replace(&mut seen[b], true)) {
        return Err(Error::InvalidCyclicSystem("order is not a permutation of the blocks".into()));
    }
    check_automorphisms(g, gens)?;
    let pos = positions(order);
    for (gi, p) in gens.iter().enumerate() {
        let img = sys
            .induced(p)
            .map_err(|e| Error::InvalidCyclicSystem(format!("generator {gi}: {e}")))?;
        for i in 0..m {
            let (a, b) = (order[i], order[(i + 1) % m]);
            let (pa, pb) = (pos[img[a]], pos[img[b]]);
            let d = pa.abs_diff(pb);
            if d != 1 && d != m - 1 {
                return Err(Error::InvalidCyclicSystem(format!(
                    "generator {gi} maps consecutive blocks {a},{b} to non-consecutive blocks {},{}",
                    img[a], img[b]
                )));
            }
        }
    }
    Ok(CyclicSystem {
        system: sys.clone(),
        order: order.to_vec(),
        gens: gens.to_vec(),
        pos,
    })
}

/// Evidence that a graph is (s,t)-ring-like.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingCertificate {
    pub cyclic: CyclicSystem,
    pub s: usize,
    pub t: usize,
    pub tight: bool,
    pub cohesive_q: usize,
}

impl RingCertificate {
    pub fn st(&self) -> usize {
        self.s * self.t
    }
}

fn span(g: &Graph, c: &CyclicSystem) -> usize {
    g.edges()
        .map(|(u, v)| c.circular_distance(c.position_of_vertex(u), c.position_of_vertex(v)))
        .max()
        .unwrap_or(0)
}

fn neighborly(g: &Graph, x: &VertexSet, y: &VertexSet) -> bool {
    let toward = |from: &VertexSet, to: &VertexSet| from.iter().all(|v| g.both_neighbors(v).any(|w| to.contains(w)));
    toward(x, y) && toward(y, x)
}

fn is_tight(g: &Graph, c: &CyclicSystem, t: usize) -> bool {
    let m = c.len();
    (0..m).all(|p| {
        let x = c.system.block(c.order[p]);
        let y = c.system.block(c.order[(p + t) % m]);
        neighborly(g, x, y)
    })
}

/// Smallest q such that vertices in equal or consecutive blocks are joined
/// by a path of length at most q.
pub fn cohesiveness_index(g: &Graph, c: &CyclicSystem) -> Result<usize> {
    let m = c.len();
    let per_vertex = crate::par::map_range(g.n(), |x| -> Result<usize> {
        let dist = graph::bfs_raw(g, x);
        let p = c.position_of_vertex(x);
        let mut worst = 0;
        for q in [(p + m - 1) % m, p, (p + 1) % m] {
            for y in c.system.block(c.order[q]) {
                if graph::is_unseen(dist[y]) {
                    return Err(Error::Disconnected(format!("no path from {x} to {y}")));
                }
                worst = worst.max(dist[y]);
            }
        }
        Ok(worst)
    });
    per_vertex.into_iter().try_fold(0, |acc, r| Ok(acc.max(r?)))
}

pub fn verify_ring_like(g: &Graph, c: &CyclicSystem) -> Result<RingCertificate> {
    let s = c
        .system
        .block_size()
        .ok_or_else(|| Error::NotRingLike("blocks have unequal sizes".into()))?;
    let t = span(g, c);
    Ok(RingCertificate {
        s,
        t,
        tight: is_tight(g, c, t),
        cohesive_q: cohesiveness_index(g, c)?,
        cyclic: c.clone(),
    })
}

/// Outcome of [`detect_ring_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSearch {
    pub best: Option<RingCertificate>,
    /// True when every block system was settled: either a circular order
    /// was ruled out or all candidate orders were checked.
    pub exhaustive: bool,
    pub systems_examined: usize,
}

/// Work cap (candidate orders times blocks) for one block system.
const ORDER_WORK_CAP: usize = 50_000_000;

/// Candidate circular orders for a transitive block group `h` on `m` blocks.
///
/// A transitive subgroup of the dihedral group either contains the rotation
/// by one step (an m-cycle), or has index-2 rotation subgroup containing the
/// rotation by two steps (two m/2-cycles). Every preserved order therefore
/// arises from one of these elements. Returns `(orders, complete)`.
fn candidate_orders(h: &[Permutation], m: usize) -> (Vec<Vec<usize>>, bool) {
    let cycle_from = |p: &Permutation, start: usize| {
        let mut out = vec![start];
        let mut x = p.apply(start);
        while x != start {
            out.push(x);
            x = p.apply(x);
        }
        out
    };
    let mut orders = Vec::new();
    for p in h {
        let c = cycle_from(p, 0);
        if c.len() == m {
            orders.push(c);
        }
    }
    if !orders.is_empty() || m % 2 == 1 {
        return (orders, true);
    }
    let halves: Vec<(Vec<usize>, Vec<usize>)> = h
        .iter()
        .filter_map(|p| {
            let even = cycle_from(p, 0);
            if even.len() != m / 2 {
                return None;
            }
            let other = (0..m).find(|x| !even.contains(x))?;
            let odd = cycle_from(p, other);
            (odd.len() == m / 2).then_some((even, odd))
        })
        .collect();
    if halves.len() * (m / 2) * m > ORDER_WORK_CAP {
        return (Vec::new(), false);
    }
    for (even, odd) in &halves {
        for shift in 0..m / 2 {
            let mut order = Vec::with_capacity(m);
            for i in 0..m / 2 {
                order.push(even[i]);
                order.push(odd[(i + shift) % (m / 2)]);
            }
            orders.push(order);
        }
    }
    (orders, true)
}

/// Valid cyclic systems with span at most `max_t`, as `(s, t, system)`,
/// plus whether every block system was settled.
fn cyclic_candidates(g: &Graph, gens: &[Permutation], max_t: usize) -> Result<(Vec<(usize, usize, CyclicSystem)>, bool, usize)> {
    check_automorphisms(g, gens)?;
    let systems = enumerate_block_systems(g.n(), gens)?;
    let candidates: Vec<&BlockSystem> = systems.iter().filter(|s| s.num_blocks() >= 3).collect();
    let results = crate::par::map(&candidates, |sys| -> Result<(Vec<(usize, usize, CyclicSystem)>, bool)> {
        let m = sys.num_blocks();
        let qgens = crate::symmetry::quotient_gens(sys, gens)?;
        // the block group must embed in the dihedral group of order 2m
        let h = match group_elements(m, &qgens, 2 * m) {
            Ok(h) => h,
            Err(e) if e.is_budget() => return Ok((Vec::new(), true)),
            Err(e) => return Err(e),
        };
        let (orders, complete) = candidate_orders(&h, m);
        let s = sys.block_size().unwrap_or(0);
        let mut seen = std::collections::BTreeSet::new();
        let mut found = Vec::new();
        for order in orders {
            if !seen.insert(canonical_order(&order)) {
                continue;
            }
            let Ok(c) = verify_cyclic_system(g, sys, &order, gens) else {
                continue;
            };
            let t = span(g, &c);
            if t <= max_t {
                found.push((s, t, c));
            }
        }
        Ok((found, complete))
    });
    let mut all = Vec::new();
    let mut exhaustive = true;
    for r in results {
        let (found, complete) = r?;
        exhaustive &= complete;
        all.extend(found);
    }
    all.sort_by_key(|(s, t, _)| (s * t, *s));
    Ok((all, exhaustive, candidates.len()))
}

/// Rotation and reflection invariant form of a circular order.
fn canonical_order(order: &[usize]) -> Vec<usize> {
    let m = order.len();
    let start = (0..m).min_by_key(|&i| order[i]).unwrap_or(0);
    let fwd: Vec<usize> = (0..m).map(|i| order[(start + i) % m]).collect();
    let bwd: Vec<usize> = (0..m).map(|i| order[(start + m - i) % m]).collect();
    fwd.min(bwd)
}

/// Searches all block systems of ⟨gens⟩ for a cyclic order with span at most
/// `max_t`, returning the certificate with the smallest `s·t` (then `s`).
pub fn detect_ring_search(g: &Graph, gens: &[Permutation], max_t: usize) -> Result<RingSearch> {
    let (all, exhaustive, systems_examined) = cyclic_candidates(g, gens, max_t)?;
    let best = match all.first() {
        Some((_, _, c)) => Some(verify_ring_like(g, c)?),
        None => None,
    };
    Ok(RingSearch {
        best,
        exhaustive,
        systems_examined,
    })
}

/// Every certificate with span at most `max_t`, ordered by `s·t` then `s`,
/// and whether the search was exhaustive.
pub fn ring_certificates(g: &Graph, gens: &[Permutation], max_t: usize) -> Result<(Vec<RingCertificate>, bool)> {
    let (all, exhaustive, _) = cyclic_candidates(g, gens, max_t)?;
    let certs = all.iter().map(|(_, _, c)| verify_ring_like(g, c)).collect::<Result<Vec<_>>>()?;
    Ok((certs, exhaustive))
}

pub fn detect_ring(g: &Graph, gens: &[Permutation], max_t: usize) -> Result<Option<RingCertificate>> {
    Ok(detect_ring_search(g, gens, max_t)?.best)
}

/// The shortest interval of blocks covering a set, and its excess.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalCover {
    /// Block indices of J in circular order.
    pub blocks: Vec<usize>,
    pub q: VertexSet,
    pub excess: usize,
    /// |∂A|
    pub k: usize,
    /// 2s²t²k + 2stk
    pub bound: usize,
    pub within: bool,
}

pub fn interval_cover(g: &Graph, cert: &RingCertificate, a: &VertexSet) -> Result<Option<IntervalCover>> {
    g.check_set(a)?;
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    if !check_connected_with_boundary(g, a) {
        return Err(Error::Hypothesis("A together with its boundary is not connected".into()));
    }
    if 2 * a.len() > g.n() {
        return Err(Error::Hypothesis("|A| exceeds half the vertex count".into()));
    }
    let c = &cert.cyclic;
    let m = c.len();
    let mut hit = vec![false; m];
    for v in a {
        hit[c.position_of_vertex(v)] = true;
    }
    if hit.iter().all(|&h| h) {
        return Ok(None);
    }
    // the cover is the complement of the longest run of empty positions
    let mut best = (0usize, 0usize);
    for start in 0..m {
        if hit[start] || !hit[(start + m - 1) % m] {
            continue;
        }
        let len = (0..m).take_while(|&i| !hit[(start + i) % m]).count();
        if len > best.0 {
            best = (len, start);
        }
    }
    let (gap, gap_start) = best;
    let first = (gap_start + gap) % m;
    let blocks: Vec<usize> = (0..m - gap).map(|i| c.order[(first + i) % m]).collect();
    let q = VertexSet::new(g.n(), blocks.iter().flat_map(|&b| c.system.block(b).iter()))?;
    let k = boundary(g, a)?.len();
    let (s, t) = (cert.s, cert.t);
    let bound = 2 * s * s * t * t * k + 2 * s * t * k;
    let excess = q.len() - a.len();
    Ok(Some(IntervalCover {
        blocks,
        q,
        excess,
        k,
        bound,
        within: excess <= bound,
    }))
}
