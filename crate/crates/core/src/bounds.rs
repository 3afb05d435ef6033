//! Exhaustive small-instance checks of the classical connectivity bounds,
//! sumsets, and the depth-ratio explorer.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::generators::GroupTable;
use crate::graph::{bfs_raw, is_connected, is_unseen, Graph, Vertex, VertexSet};
use crate::symmetry::{check_automorphisms, orbit_transitivity, Permutation};

pub const MAX_CONNECTED_N: usize = 30;
pub const MAX_SUBSET_N: usize = 20;

/// Word-sized adjacency for graphs up to 64 vertices.
#[derive(Debug, Clone)]
struct Masks {
    n: usize,
    out: Vec<u64>,
    /// Underlying adjacency, used for (weak) connectivity.
    both: Vec<u64>,
}

impl Masks {
    fn new(g: &Graph) -> Masks {
        let n = g.n();
        let mut out = vec![0u64; n];
        let mut both = vec![0u64; n];
        for u in 0..n {
            for &v in g.neighbors(u) {
                out[u] |= 1 << v;
                both[u] |= 1 << v;
                both[v] |= 1 << u;
            }
        }
        Masks { n, out, both }
    }

    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn out_boundary(&self, a: u64) -> u64 {
        bits(a).fold(0, |acc, v| acc | self.out[v]) & !a
    }

    fn out_cut(&self, a: u64) -> usize {
        bits(a).map(|v| (self.out[v] & !a).count_ones() as usize).sum()
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = Vertex> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            v
        })
    })
}

fn to_set(n: usize, m: u64) -> VertexSet {
    VertexSet::new(n, bits(m)).expect("in range")
}

/// Calls `visit` on every weakly connected vertex set of size at most
/// `max_size`, each exactly once. Work is split by the smallest member.
fn fold_connected<A: Send>(
    masks: &Masks,
    max_size: usize,
    budget: u64,
    init: impl Fn() -> A + Sync,
    visit: impl Fn(&mut A, u64) + Sync,
) -> Result<Vec<A>> {
    let counter = AtomicU64::new(0);
    let parts = crate::par::map_range(masks.n, |v| {
        let mut acc = init();
        let above = !((1u64 << v) | ((1u64 << v) - 1)) & masks.full();
        let start = 1u64 << v;
        let ok = extend(masks, max_size, budget, &counter, start, start | masks.both[v], masks.both[v] & above, above, &mut acc, &visit);
        ok.then_some(acc)
    });
    let done: Option<Vec<A>> = parts.into_iter().collect();
    done.ok_or_else(|| Error::BudgetExhausted(format!("more than {budget} connected sets")))
}

#[allow(clippy::too_many_arguments)]
fn extend<A>(
    masks: &Masks,
    max_size: usize,
    budget: u64,
    counter: &AtomicU64,
    sub: u64,
    closed: u64,
    mut ext: u64,
    above: u64,
    acc: &mut A,
    visit: &(impl Fn(&mut A, u64) + Sync),
) -> bool {
    if counter.fetch_add(1, Ordering::Relaxed) >= budget {
        return false;
    }
    visit(acc, sub);
    if sub.count_ones() as usize >= max_size {
        return true;
    }
    while ext != 0 {
        let w = ext.trailing_zeros() as usize;
        ext &= ext - 1;
        let fresh = masks.both[w] & !closed & above;
        if !extend(masks, max_size, budget, counter, sub | (1 << w), closed | masks.both[w] | (1 << w), ext | fresh, above, acc, visit) {
            return false;
        }
    }
    true
}

/// Which sets a profile ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileConstraint {
    pub connected: bool,
    /// Skip sets with `A ∪ ∂A = V` (∂⁺ on digraphs).
    pub exclude_spanning: bool,
    /// Defaults to `n - 1`.
    pub max_size: Option<usize>,
}

impl Default for ProfileConstraint {
    fn default() -> Self {
        ProfileConstraint {
            connected: true,
            exclude_spanning: false,
            max_size: None,
        }
    }
}

/// Exact minima over all qualifying sets of one size. On digraphs the
/// boundary and cut are the outgoing ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileEntry {
    pub size: usize,
    pub min_vertex_boundary: usize,
    pub min_edge_cut: usize,
    pub vertex_witness: VertexSet,
    pub edge_witness: VertexSet,
}

#[derive(Clone, Copy)]
struct Best {
    vb: (usize, u64),
    ec: (usize, u64),
}

fn masks_for(g: &Graph, c: &ProfileConstraint) -> Result<Masks> {
    let limit = if c.connected { MAX_CONNECTED_N } else { MAX_SUBSET_N };
    if g.n() > limit {
        return Err(Error::BudgetExhausted(format!(
            "exhaustive profile limited to {limit} vertices, graph has {}",
            g.n()
        )));
    }
    Ok(Masks::new(g))
}

pub fn min_boundary_profile(g: &Graph, constraint: &ProfileConstraint, budget: u64) -> Result<Vec<ProfileEntry>> {
    let m = masks_for(g, constraint)?;
    let n = g.n();
    let max_size = constraint.max_size.unwrap_or(n.saturating_sub(1)).min(n.saturating_sub(1));
    let full = m.full();
    let step = |acc: &mut Vec<Option<Best>>, a: u64| {
        let size = a.count_ones() as usize;
        if size > max_size {
            return;
        }
        let b = m.out_boundary(a);
        if constraint.exclude_spanning && a | b == full {
            return;
        }
        let (vb, ec) = (b.count_ones() as usize, m.out_cut(a));
        let slot = &mut acc[size];
        match slot {
            None => *slot = Some(Best { vb: (vb, a), ec: (ec, a) }),
            Some(best) => {
                best.vb = best.vb.min((vb, a));
                best.ec = best.ec.min((ec, a));
            }
        }
    };
    let init = || vec![None; n + 1];
    let parts = if constraint.connected {
        fold_connected(&m, max_size, budget, init, step)?
    } else {
        let total = 1u64 << n;
        if total > budget {
            return Err(Error::BudgetExhausted(format!("{total} subsets exceed budget {budget}")));
        }
        let chunks = 64u64.min(total);
        crate::par::map_range(chunks as usize, |c| {
            let mut acc = init();
            let mut a = c as u64;
            while a < total {
                if a != 0 {
                    step(&mut acc, a);
                }
                a += chunks;
            }
            acc
        })
    };
    let mut merged: Vec<Option<Best>> = init();
    for part in parts {
        for (size, best) in part.into_iter().enumerate() {
            if let Some(b) = best {
                merged[size] = Some(match merged[size] {
                    None => b,
                    Some(cur) => Best {
                        vb: cur.vb.min(b.vb),
                        ec: cur.ec.min(b.ec),
                    },
                });
            }
        }
    }
    Ok(merged
        .into_iter()
        .enumerate()
        .filter_map(|(size, b)| {
            b.map(|b| ProfileEntry {
                size,
                min_vertex_boundary: b.vb.0,
                min_edge_cut: b.ec.0,
                vertex_witness: to_set(n, b.vb.1),
                edge_witness: to_set(n, b.ec.1),
            })
        })
        .collect())
}

/// One lower bound compared with the exhaustive minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub observed: usize,
    /// Smallest integer allowed by the bound.
    pub bound: usize,
    pub witness: VertexSet,
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        self.observed >= self.bound
    }

    pub fn tight(&self) -> bool {
        self.observed == self.bound
    }
}

/// `|∂A|·(diam(A)+1) ≥ |A|` over connected `A` with `|A| ≤ |V|/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioCheck {
    pub sets: u64,
    pub violations: u64,
    /// Set minimising `|∂A|·(diam(A)+1) / |A|`, as (numerator, denominator).
    pub tightest: (usize, usize, VertexSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub degree: usize,
    pub directed: bool,
    /// Edge connectivity against `d` (undirected only).
    pub mader: Option<BoundCheck>,
    /// Vertex boundary against `⌈2(d+1)/3⌉` (undirected only).
    pub watkins: Option<BoundCheck>,
    /// Out-boundary against `⌈(d+1)/2⌉`.
    pub hamidoune: BoundCheck,
    pub babai_szegedy: Option<RatioCheck>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.mader.as_ref().is_none_or(BoundCheck::holds)
            && self.watkins.as_ref().is_none_or(BoundCheck::holds)
            && self.hamidoune.holds()
            && self.babai_szegedy.as_ref().is_none_or(|r| r.violations == 0)
    }
}

fn best_over(profile: &[ProfileEntry], key: impl Fn(&ProfileEntry) -> (usize, &VertexSet)) -> Option<(usize, VertexSet)> {
    profile.iter().map(key).min_by_key(|(v, _)| *v).map(|(v, w)| (v, w.clone()))
}

pub fn bound_report(g: &Graph, gens: &[Permutation], budget: u64) -> Result<BoundReport> {
    check_automorphisms(g, gens)?;
    let orb = orbit_transitivity(g.n(), gens, Some(g))?;
    if !orb.transitive {
        return Err(Error::Intransitive(orb.orbits.len()));
    }
    if !is_connected(g) {
        return Err(Error::Disconnected("bounds need a connected graph".into()));
    }
    let d = g.regular_degree().expect("transitive graphs are regular");
    let directed = g.is_directed();
    let all = min_boundary_profile(g, &ProfileConstraint::default(), budget)?;
    let non_spanning = min_boundary_profile(
        g,
        &ProfileConstraint {
            exclude_spanning: true,
            ..ProfileConstraint::default()
        },
        budget,
    )?;
    let mader = (!directed).then(|| best_over(&all, |e| (e.min_edge_cut, &e.edge_witness))).flatten().map(|(o, w)| BoundCheck {
        observed: o,
        bound: d,
        witness: w,
    });
    let vb = best_over(&non_spanning, |e| (e.min_vertex_boundary, &e.vertex_witness));
    let watkins = match (&vb, directed) {
        (Some((o, w)), false) => Some(BoundCheck {
            observed: *o,
            bound: (2 * (d + 1)).div_ceil(3),
            witness: w.clone(),
        }),
        _ => None,
    };
    let (o, w) = vb.unwrap_or((usize::MAX, VertexSet::empty(g.n())));
    let hamidoune = BoundCheck {
        observed: o,
        bound: (d + 1).div_ceil(2),
        witness: w,
    };
    let babai_szegedy = if directed { None } else { Some(babai_szegedy_check(g, budget)?) };
    Ok(BoundReport {
        degree: d,
        directed,
        mader,
        watkins,
        hamidoune,
        babai_szegedy,
    })
}

/// Checks `|∂A| / |A| ≥ 1 / (diam(A) + 1)` over every connected `A` with
/// `|A| ≤ |V|/2`, distances taken in `g`.
pub fn babai_szegedy_check(g: &Graph, budget: u64) -> Result<RatioCheck> {
    let m = masks_for(g, &ProfileConstraint::default())?;
    let n = g.n();
    let dist: Vec<Vec<usize>> = crate::par::map_range(n, |v| bfs_raw(g, v));
    // (sets, violations, best numerator, best denominator, witness)
    type Acc = (u64, u64, usize, usize, u64);
    let parts = fold_connected(
        &m,
        n / 2,
        budget,
        || (0u64, 0u64, usize::MAX, 1usize, 0u64),
        |acc: &mut Acc, a| {
            let size = a.count_ones() as usize;
            let mut diam = 0;
            for x in bits(a) {
                for y in bits(a) {
                    diam = diam.max(if is_unseen(dist[x][y]) { usize::MAX / 4 } else { dist[x][y] });
                }
            }
            let num = m.out_boundary(a).count_ones() as usize * (diam + 1);
            acc.0 += 1;
            if num < size {
                acc.1 += 1;
            }
            if num * acc.3 < acc.2.saturating_mul(size) {
                (acc.2, acc.3, acc.4) = (num, size, a);
            }
        },
    )?;
    let mut out = (0u64, 0u64, usize::MAX, 1usize, 0u64);
    for p in parts {
        out.0 += p.0;
        out.1 += p.1;
        if p.4 != 0 && (out.4 == 0 || p.2 * out.3 < out.2 * p.3) {
            (out.2, out.3, out.4) = (p.2, p.3, p.4);
        }
    }
    Ok(RatioCheck {
        sets: out.0,
        violations: out.1,
        tightest: (out.2, out.3, to_set(n, out.4)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `{a·b}`
    Left,
    /// `{b·a}`
    Right,
}

/// The product set `A·B` (`Left`) or `B·A` (`Right`).
pub fn sumset(tbl: &GroupTable, a: &[usize], b: &[usize], side: Side) -> Result<Vec<usize>> {
    for &x in a.iter().chain(b) {
        tbl.check_element(x)?;
    }
    let mut hit = vec![false; tbl.order()];
    for &x in a {
        for &y in b {
            let z = match side {
                Side::Left => tbl.mul(x, y),
                Side::Right => tbl.mul(y, x),
            };
            hit[z] = true;
        }
    }
    Ok((0..hit.len()).filter(|&z| hit[z]).collect())
}

/// `|A + B| ≥ min(p, |A| + |B| − 1)` in ℤ_p.
pub fn cauchy_davenport(p: usize, a: &[usize], b: &[usize]) -> Result<bool> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let s = sumset(&GroupTable::cyclic(p)?, a, b, Side::Left)?;
    Ok(s.len() >= p.min(a.len() + b.len() - 1))
}

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthRatio {
    /// `|∂A|·depth(A)` and `|A|` of the minimiser.
    pub numerator: usize,
    pub denominator: usize,
    pub witness: VertexSet,
    pub sets: u64,
    /// False when the search was sampled rather than exhaustive.
    pub exhaustive: bool,
}

impl DepthRatio {
    pub fn ratio(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

fn depth_of_mask(g: &Graph, m: &Masks, a: u64) -> Option<usize> {
    let set = to_set(m.n, a);
    crate::graph::depth(g, &set).ok()
}

/// Minimum of `|∂A|·depth(A)/|A|` over connected `A` with `|A| ≤ |V|/2`.
/// Exhaustive within `budget`; beyond it, `budget` random connected sets
/// grown from random seeds are sampled instead.
pub fn depth_ratio_explorer(g: &Graph, budget: u64, seed: u64) -> Result<DepthRatio> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidParameters("need at least two vertices".into()));
    }
    let consider = |best: &mut Option<(usize, usize, u64)>, a: u64, m: &Masks| {
        let Some(dep) = depth_of_mask(g, m, a) else {
            return;
        };
        let num = m.out_boundary(a).count_ones() as usize * dep;
        let den = a.count_ones() as usize;
        if best.is_none_or(|(bn, bd, _)| num * bd < bn * den) {
            *best = Some((num, den, a));
        }
    };
    if n <= MAX_CONNECTED_N {
        let m = Masks::new(g);
        if let Ok(parts) = fold_connected(&m, n / 2, budget, || None, |acc, a| consider(acc, a, &m)) {
            let best = parts.into_iter().flatten().min_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)));
            let (num, den, a) = best.ok_or(Error::EmptySet)?;
            return Ok(DepthRatio {
                numerator: num,
                denominator: den,
                witness: to_set(n, a),
                sets: count_connected(&m, n / 2),
                exhaustive: true,
            });
        }
    }
    sampled_depth_ratio(g, budget, seed)
}

fn count_connected(m: &Masks, max_size: usize) -> u64 {
    fold_connected(m, max_size, u64::MAX, || 0u64, |c, _| *c += 1)
        .map(|v| v.into_iter().sum())
        .unwrap_or(0)
}

fn sampled_depth_ratio(g: &Graph, samples: u64, seed: u64) -> Result<DepthRatio> {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(usize, usize, VertexSet)> = None;
    for _ in 0..samples.max(1) {
        let target = rng.gen_range(1..=n / 2);
        let start = rng.gen_range(0..n);
        let mut inside = vec![false; n];
        inside[start] = true;
        let mut members = vec![start];
        let mut frontier: Vec<Vertex> = g.neighbors(start).to_vec();
        while members.len() < target && !frontier.is_empty() {
            let v = frontier.swap_remove(rng.gen_range(0..frontier.len()));
            if inside[v] {
                continue;
            }
            inside[v] = true;
            members.push(v);
            frontier.extend(g.neighbors(v).iter().filter(|&&w| !inside[w]));
        }
        let a = VertexSet::from_mask(&inside);
        let Ok(dep) = crate::graph::depth(g, &a) else {
            continue;
        };
        let num = crate::graph::boundary(g, &a)?.len() * dep;
        let den = a.len();
        if best.as_ref().is_none_or(|(bn, bd, _)| num * bd < bn * den) {
            best = Some((num, den, a));
        }
    }
    let (numerator, denominator, witness) = best.ok_or(Error::EmptySet)?;
    Ok(DepthRatio {
        numerator,
        denominator,
        witness,
        sets: samples,
        exhaustive: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{make_circulant, petersen};

    #[test]
    fn esu_counts_connected_sets_of_a_cycle() {
        let g = make_circulant(6, &[1, -1], false).unwrap().graph;
        // 6 arcs for each size 1..5, plus the whole cycle
        assert_eq!(count_connected(&Masks::new(&g), 6), 31);
    }

    #[test]
    fn mader_on_squared_cycle() {
        let g = make_circulant(8, &[1, -1, 2, -2], false).unwrap();
        let rep = bound_report(&g.graph, &g.gens, 1 << 24).unwrap();
        let mader = rep.mader.as_ref().unwrap();
        assert_eq!((mader.observed, mader.bound), (4, 4));
        assert!(rep.all_hold());
    }

    #[test]
    fn watkins_on_petersen() {
        let g = petersen();
        let rep = bound_report(&g.graph, &g.gens, 1 << 24).unwrap();
        let w = rep.watkins.unwrap();
        assert_eq!((w.observed, w.bound), (3, 3));
    }

    #[test]
    fn hamidoune_on_directed_circulant() {
        let g = make_circulant(7, &[1, 2], true).unwrap();
        let rep = bound_report(&g.graph, &g.gens, 1 << 24).unwrap();
        assert_eq!((rep.hamidoune.observed, rep.hamidoune.bound), (2, 2));
        assert_eq!(rep.hamidoune.witness.len(), 1);
        assert!(rep.mader.is_none() && rep.babai_szegedy.is_none());
    }

    #[test]
    fn cycle_profile_separates_spanning_sets() {
        let g = make_circulant(6, &[1, -1], false).unwrap().graph;
        let all = min_boundary_profile(&g, &ProfileConstraint::default(), 1 << 20).unwrap();
        assert_eq!(all.iter().map(|e| e.min_vertex_boundary).collect::<Vec<_>>(), vec![2, 2, 2, 2, 1]);
        let restricted = ProfileConstraint {
            exclude_spanning: true,
            ..ProfileConstraint::default()
        };
        let rest = min_boundary_profile(&g, &restricted, 1 << 20).unwrap();
        assert!(rest.iter().all(|e| e.min_vertex_boundary == 2));
        let unrestricted = ProfileConstraint {
            connected: false,
            ..ProfileConstraint::default()
        };
        let any = min_boundary_profile(&g, &unrestricted, 1 << 20).unwrap();
        assert_eq!(any.len(), 5);
    }

    #[test]
    fn sumsets() {
        let z7 = GroupTable::cyclic(7).unwrap();
        assert_eq!(sumset(&z7, &[0, 1], &[0, 2], Side::Left).unwrap(), vec![0, 1, 2, 3]);
        let z5 = GroupTable::cyclic(5).unwrap();
        assert_eq!(sumset(&z5, &[0, 1, 2], &[0, 1, 2], Side::Right).unwrap().len(), 5);
        assert_eq!(sumset(&z7, &[0], &[3, 5], Side::Left).unwrap(), vec![3, 5]);
        assert!(cauchy_davenport(7, &[0, 1], &[0, 2]).unwrap());
    }

    #[test]
    fn depth_ratio_on_cycle() {
        let g = make_circulant(12, &[1, -1], false).unwrap().graph;
        let r = depth_ratio_explorer(&g, 1 << 20, 0).unwrap();
        assert!(r.exhaustive);
        // even intervals have boundary 2 and depth |A|/2
        assert_eq!(r.numerator, r.denominator);
        assert_eq!(r.sets, 12 * 6);
    }
}
