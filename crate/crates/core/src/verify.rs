//! End-to-end checkers for the separation dichotomy and its corollaries.
//!
//! Incomplete searches only ever yield `Inconclusive`; `Violation` is
//! reserved for exhaustive failures.

use std::sync::atomic::{AtomicBool, Ordering};

use crate::error::{Error, Result};
use crate::generators::{make_cayley, make_periodic, GroupTable, PeriodicPresentation};
use crate::graph::{
    ball_growth, boundary, check_connected_with_boundary, depth, diameter, Graph, Vertex, VertexSet,
};
use crate::ringstruct::{
    detect_periodic_ring, detect_ring_search, find_periodic_automorphisms, interval_cover, ring_certificates,
    PeriodicAutomorphism, PeriodicRingCertificate, RingCertificate,
};
use crate::symmetry::{check_automorphisms, orbit_transitivity, Permutation};
use crate::treewidth::{greedy_td_search, verify_td, TreeDecomposition};

/// `31(k+1)²`
pub fn diameter_threshold(k: usize) -> usize {
    31 * (k + 1) * (k + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    Shallow,
    RingInterval,
    PreconditionFailed,
    Inconclusive,
    Violation,
}

impl Case {
    pub fn tag(self) -> &'static str {
        match self {
            Case::Shallow => "shallow",
            Case::RingInterval => "ring_interval",
            Case::PreconditionFailed => "precondition_failed",
            Case::Inconclusive => "inconclusive",
            Case::Violation => "VIOLATION",
        }
    }
}

/// Case (i): `depth(A) ≤ k`, `|A| ≤ size_bound`, `2d ≤ 3k − 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShallowEvidence {
    pub depth: usize,
    pub size: usize,
    pub size_bound: usize,
    pub degree: usize,
    /// The depth and degree conditions are part of the check.
    pub check_depth_degree: bool,
    pub holds: bool,
}

/// Case (ii): a certificate with small `st` and an interval cover of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingEvidence {
    pub s: usize,
    pub t: usize,
    pub interval_blocks: usize,
    pub excess: usize,
    /// Twice the allowed excess, kept integral.
    pub twice_excess_bound: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DichotomyOutcome {
    pub case: Case,
    pub k: usize,
    pub shallow: Option<ShallowEvidence>,
    pub ring: Option<RingEvidence>,
    /// Both cases verified.
    pub both: bool,
    pub reason: Option<String>,
}

impl DichotomyOutcome {
    fn failed(k: usize, reason: String) -> Self {
        DichotomyOutcome {
            case: Case::PreconditionFailed,
            k,
            shallow: None,
            ring: None,
            both: false,
            reason: Some(reason),
        }
    }

    /// `case k depth |A| s t excess`, with `-` for missing values.
    pub fn tsv(&self) -> String {
        let dash = || "-".to_string();
        let depth = self.shallow.as_ref().map_or_else(dash, |s| s.depth.to_string());
        let size = self.shallow.as_ref().map_or_else(dash, |s| s.size.to_string());
        let (s, t, e) = match &self.ring {
            Some(r) => (r.s.to_string(), r.t.to_string(), r.excess.to_string()),
            None => (dash(), dash(), dash()),
        };
        format!("{}\t{}\t{depth}\t{size}\t{s}\t{t}\t{e}", self.case.tag(), self.k)
    }
}

/// Constants of one form of the dichotomy, as functions of the boundary
/// size used in the hypotheses.
#[derive(Clone, Copy)]
struct Constants {
    /// Case (i) size bound.
    size: fn(usize) -> usize,
    /// Twice the case (ii) excess bound.
    twice_excess: fn(usize) -> usize,
    /// Largest admissible `st`, as `2st ≤ value`.
    twice_st: fn(usize) -> usize,
    depth_degree: bool,
}

const MAIN: Constants = Constants {
    size: |k| 2 * k * k * k + k * k,
    twice_excess: |k| k * k * k + 2 * k * k,
    twice_st: |k| k,
    depth_degree: true,
};

const EULERIAN: Constants = Constants {
    size: |k| 16 * k.pow(6) + 4 * k.pow(4),
    twice_excess: |k| 8 * k.pow(6) + 8 * k.pow(4),
    twice_st: |k| 2 * k * k,
    depth_degree: false,
};

/// Per-graph data shared by many dichotomy checks.
pub struct MainContext<'a> {
    g: &'a Graph,
    /// Graph for boundaries and connectivity (underlying for digraphs).
    plain: Graph,
    diameter: Option<usize>,
    degree: usize,
    transitive: bool,
    rings: Vec<RingCertificate>,
    ring_exhaustive: bool,
}

impl<'a> MainContext<'a> {
    /// Precomputes the diameter and every ring certificate that could serve
    /// a set with boundary at most `k_max`.
    pub fn new(g: &'a Graph, gens: &[Permutation], k_max: usize) -> Result<Self> {
        Self::build(g, gens, k_max, &MAIN, None)
    }

    fn build(g: &'a Graph, gens: &[Permutation], k_max: usize, c: &Constants, diameter_override: Option<Option<usize>>) -> Result<Self> {
        check_automorphisms(g, gens)?;
        let transitive = orbit_transitivity(g.n(), gens, Some(g))?.transitive;
        let diameter = match diameter_override {
            Some(d) => d,
            None => diameter(g).ok(),
        };
        let degree = g.max_degree();
        let max_t = (c.twice_st)(k_max) / 2;
        let (rings, ring_exhaustive) = if transitive && max_t > 0 && diameter.is_some() {
            ring_certificates(g, gens, max_t)?
        } else {
            (Vec::new(), true)
        };
        Ok(MainContext {
            g,
            plain: g.underlying(),
            diameter,
            degree,
            transitive,
            rings,
            ring_exhaustive,
        })
    }

    pub fn diameter(&self) -> Option<usize> {
        self.diameter
    }

    pub fn rings(&self) -> &[RingCertificate] {
        &self.rings
    }

    pub fn check(&self, a: &VertexSet) -> Result<DichotomyOutcome> {
        self.g.check_set(a)?;
        let k = boundary(&self.plain, a)?.len();
        if let Some(reason) = self.precondition(a, diameter_threshold(k)) {
            return Ok(DichotomyOutcome::failed(k, reason));
        }
        Ok(self.decide(a, k, &MAIN))
    }

    fn precondition(&self, a: &VertexSet, need_diameter: usize) -> Option<String> {
        if !self.transitive {
            return Some("generators are not transitive".into());
        }
        if a.is_empty() {
            return Some("A is empty".into());
        }
        if 2 * a.len() > self.g.n() {
            return Some(format!("|A| = {} exceeds half of {}", a.len(), self.g.n()));
        }
        if !check_connected_with_boundary(&self.plain, a) {
            return Some("G[A ∪ ∂A] is not connected".into());
        }
        match self.diameter {
            None => Some("diameter is infinite".into()),
            Some(d) if d < need_diameter => Some(format!("diameter {d} < {need_diameter}")),
            _ => None,
        }
    }

    fn decide(&self, a: &VertexSet, k: usize, c: &Constants) -> DichotomyOutcome {
        let dep = depth(&self.plain, a).unwrap_or(usize::MAX);
        let size_bound = (c.size)(k);
        let mut shallow_ok = a.len() <= size_bound;
        if c.depth_degree {
            shallow_ok &= dep <= k && 2 * self.degree + 2 <= 3 * k;
        }
        let shallow = ShallowEvidence {
            depth: dep,
            size: a.len(),
            size_bound,
            degree: self.degree,
            check_depth_degree: c.depth_degree,
            holds: shallow_ok,
        };
        let mut ring = None;
        for cert in self.rings.iter().filter(|r| 2 * r.st() <= (c.twice_st)(k)) {
            let Ok(Some(cover)) = interval_cover(&self.plain, cert, a) else {
                continue;
            };
            let twice_excess_bound = (c.twice_excess)(k);
            let ev = RingEvidence {
                s: cert.s,
                t: cert.t,
                interval_blocks: cover.blocks.len(),
                excess: cover.excess,
                twice_excess_bound,
                holds: 2 * cover.excess <= twice_excess_bound,
            };
            let done = ev.holds;
            if ring.is_none() || done {
                ring = Some(ev);
            }
            if done {
                break;
            }
        }
        let ring_ok = ring.as_ref().is_some_and(|r| r.holds);
        let case = match (shallow_ok, ring_ok) {
            (true, _) => Case::Shallow,
            (false, true) => Case::RingInterval,
            (false, false) if self.ring_exhaustive => Case::Violation,
            _ => Case::Inconclusive,
        };
        DichotomyOutcome {
            case,
            k,
            shallow: Some(shallow),
            ring,
            both: shallow_ok && ring_ok,
            reason: None,
        }
    }
}

pub fn main_dichotomy(g: &Graph, gens: &[Permutation], a: &VertexSet) -> Result<DichotomyOutcome> {
    if g.is_directed() {
        return Err(Error::InvalidParameters("the dichotomy is stated for undirected graphs".into()));
    }
    g.check_set(a)?;
    let k = boundary(g, a)?.len();
    MainContext::new(g, gens, k)?.check(a)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanSummary {
    pub candidates: usize,
    pub shallow: usize,
    pub ring_interval: usize,
    pub both: usize,
    pub precondition_failed: usize,
    pub inconclusive: usize,
    /// First violation found; the scan stops there.
    pub violation: Option<(VertexSet, DichotomyOutcome)>,
    /// Candidate enumeration hit the budget.
    pub budget_exhausted: bool,
    pub rows: Vec<(VertexSet, DichotomyOutcome)>,
}

impl ScanSummary {
    fn tally(rows: Vec<(VertexSet, DichotomyOutcome)>, budget_exhausted: bool) -> Self {
        let count = |c: Case| rows.iter().filter(|(_, o)| o.case == c).count();
        ScanSummary {
            candidates: rows.len(),
            shallow: count(Case::Shallow),
            ring_interval: count(Case::RingInterval),
            both: rows.iter().filter(|(_, o)| o.both).count(),
            precondition_failed: count(Case::PreconditionFailed),
            inconclusive: count(Case::Inconclusive),
            violation: rows.iter().find(|(_, o)| o.case == Case::Violation).cloned(),
            budget_exhausted,
            rows,
        }
    }
}

/// Checks every listed set, in parallel, stopping at the first violation.
pub fn scan_sets(ctx: &MainContext<'_>, sets: &[VertexSet]) -> Result<ScanSummary> {
    let stop = AtomicBool::new(false);
    let results = crate::par::map(sets, |a| {
        if stop.load(Ordering::Relaxed) {
            return None;
        }
        let out = ctx.check(a);
        if matches!(&out, Ok(o) if o.case == Case::Violation) {
            stop.store(true, Ordering::Relaxed);
        }
        Some(out.map(|o| (a.clone(), o)))
    });
    let mut rows = Vec::new();
    for r in results.into_iter().flatten() {
        let row = r?;
        let bad = row.1.case == Case::Violation;
        rows.push(row);
        if bad {
            break;
        }
    }
    Ok(ScanSummary::tally(rows, false))
}

/// Enumerates connected sets through vertex 0 (enough up to automorphism)
/// with `|A| ≤ |V|/2`, keeps those with `|∂A| ≤ k_max` and `G[A ∪ ∂A]`
/// connected, and checks each.
pub fn scan_main(g: &Graph, gens: &[Permutation], k_max: usize, budget: u64) -> Result<ScanSummary> {
    let ctx = MainContext::new(g, gens, k_max)?;
    let mut sets = Vec::new();
    let exhausted = connected_sets_through(g, 0, g.n() / 2, budget, &mut |a: &[Vertex]| {
        let set = VertexSet::new(g.n(), a.iter().copied()).expect("in range");
        if boundary(g, &set).map(|b| b.len() <= k_max).unwrap_or(false) && check_connected_with_boundary(g, &set) {
            sets.push(set);
        }
    });
    let mut summary = scan_sets(&ctx, &sets)?;
    summary.budget_exhausted = exhausted;
    Ok(summary)
}

/// Visits every connected set containing `root` of size at most `max_size`
/// once. Returns true if `budget` ran out first.
pub fn connected_sets_through(g: &Graph, root: Vertex, max_size: usize, budget: u64, visit: &mut dyn FnMut(&[Vertex])) -> bool {
    if g.n() == 0 || max_size == 0 {
        return false;
    }
    let h = g.underlying();
    let mut cover = vec![0u32; h.n()];
    let mut sub = vec![root];
    cover[root] += 1;
    for &x in h.neighbors(root) {
        cover[x] += 1;
    }
    let ext: Vec<Vertex> = h.neighbors(root).to_vec();
    let mut left = budget;
    !esu(&h, root, max_size, &mut sub, &mut cover, ext, &mut left, visit)
}

#[allow(clippy::too_many_arguments)]
fn esu(
    h: &Graph,
    root: Vertex,
    max_size: usize,
    sub: &mut Vec<Vertex>,
    cover: &mut Vec<u32>,
    mut ext: Vec<Vertex>,
    left: &mut u64,
    visit: &mut dyn FnMut(&[Vertex]),
) -> bool {
    if *left == 0 {
        return false;
    }
    *left -= 1;
    visit(sub);
    if sub.len() >= max_size {
        return true;
    }
    while let Some(w) = ext.pop() {
        let mut next = ext.clone();
        next.extend(h.neighbors(w).iter().copied().filter(|&u| cover[u] == 0 && u != root));
        cover[w] += 1;
        for &x in h.neighbors(w) {
            cover[x] += 1;
        }
        sub.push(w);
        let ok = esu(h, root, max_size, sub, cover, next, left, visit);
        sub.pop();
        cover[w] -= 1;
        for &x in h.neighbors(w) {
            cover[x] -= 1;
        }
        if !ok {
            return false;
        }
    }
    true
}

/// Where a growth sequence comes from.
pub enum GrowthInput<'a> {
    /// A finite graph standing in for an infinite one; balls must avoid
    /// the frontier.
    Window {
        graph: &'a Graph,
        center: Vertex,
        frontier: Option<&'a VertexSet>,
    },
    Periodic {
        presentation: &'a PeriodicPresentation,
        /// Affine automorphisms used for ring detection; found automatically
        /// when empty.
        gens: &'a [PeriodicAutomorphism],
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthReport {
    /// `b(0), …, b(n_max)`.
    pub growth: Vec<usize>,
    /// Smallest `n` with `b(n) ≤ n(n+1)/2`.
    pub first_failure: Option<usize>,
    /// Smallest `n` whose ball has `depth > |∂|`, so a ring is required.
    pub ring_required_at: Option<usize>,
    pub ring: Option<PeriodicRingCertificate>,
    /// `2st ≤ |∂B(x, n)|` at `ring_required_at`.
    pub ring_small_enough: Option<bool>,
}

impl GrowthReport {
    /// Growth exceeds the bound everywhere, or a ring certificate exempts it.
    pub fn holds(&self) -> bool {
        let growth_ok = self.first_failure.is_none() || self.ring.is_some();
        let clause_ok = self.ring_required_at.is_none() || self.ring_small_enough == Some(true);
        growth_ok && clause_ok
    }
}

pub fn growth_cor17(input: GrowthInput<'_>, n_max: usize) -> Result<GrowthReport> {
    // b(0..=n_max+1): the extra term gives |∂B(x, n_max)|
    let (growth, ring) = match input {
        GrowthInput::Window { graph, center, frontier } => {
            let growth = ball_growth(graph, center, n_max + 1)?;
            if let Some(f) = frontier {
                let reach = crate::graph::ball(graph, center, n_max + 1)?;
                if let Some(v) = reach.intersection(f).iter().next() {
                    return Err(Error::Frontier(format!("ball of radius {} reaches frontier vertex {v}", n_max + 1)));
                }
            }
            (growth, None)
        }
        GrowthInput::Periodic { presentation, gens } => {
            let m = presentation.max_jump().max(1);
            let w = crate::generators::window(presentation, (n_max + 3) * m)?;
            let x = w.vertex(0, 0).expect("centre");
            let growth = ball_growth(&w.graph, x, n_max + 1)?;
            let reach = crate::graph::ball(&w.graph, x, n_max + 1)?;
            if let Some(v) = reach.iter().find(|&v| w.is_frontier(v)) {
                return Err(Error::Frontier(format!("ball reaches frontier vertex {v}")));
            }
            let found;
            let gens = if gens.is_empty() {
                found = find_periodic_automorphisms(presentation)?;
                &found[..]
            } else {
                gens
            };
            let ring = detect_periodic_ring(presentation, gens, 4, n_max.max(1))?;
            (growth, ring)
        }
    };
    let first_failure = (0..=n_max).find(|&n| 2 * growth[n] <= n * (n + 1));
    let ring_required_at = (0..=n_max).find(|&n| n + 1 > growth[n + 1] - growth[n]);
    let ring_small_enough = ring_required_at.map(|n| ring.as_ref().is_some_and(|r| 2 * r.st() <= growth[n + 1] - growth[n]));
    Ok(GrowthReport {
        growth: growth[..=n_max].to_vec(),
        first_failure,
        ring_required_at,
        ring,
        ring_small_enough,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianOutcome {
    pub outcome: DichotomyOutcome,
    /// `k = |∂⁺A|`.
    pub k: usize,
    /// `|∂A|` in the underlying graph, and whether it is at most `2k²`.
    pub undirected_boundary: usize,
    pub derived_bound_holds: bool,
    /// Directed diameter, used for the diameter hypothesis.
    pub directed_diameter: Option<usize>,
    pub underlying_diameter: Option<usize>,
    /// The hypothesis also holds for the underlying diameter.
    pub underlying_hypothesis: bool,
}

/// The first vertex whose in- and out-degree differ.
pub fn check_eulerian(dg: &Graph) -> Result<()> {
    if let Some(v) = (0..dg.n()).find(|&v| dg.in_degree(v) != dg.degree(v)) {
        return Err(Error::NotEulerian(format!(
            "vertex {v} has in-degree {} and out-degree {}; without balance a directed path can have out-boundary 1",
            dg.in_degree(v),
            dg.degree(v)
        )));
    }
    Ok(())
}

/// The Eulerian digraph form: `k = |∂⁺A|`, diameter at least
/// `31(2k²+1)²`, then `|A| ≤ 16k⁶+4k⁴` or a ring with `st ≤ k²` and an
/// interval with excess at most `4k⁶+4k⁴`.
pub fn eulerian_cor110(dg: &Graph, gens: &[Permutation], a: &VertexSet) -> Result<EulerianOutcome> {
    if !dg.is_directed() {
        return Err(Error::InvalidParameters("expected a directed graph".into()));
    }
    check_eulerian(dg)?;
    dg.check_set(a)?;
    let k = boundary(dg, a)?.len();
    let directed_diameter = diameter(dg).ok();
    let ctx = MainContext::build(dg, gens, k, &EULERIAN, Some(directed_diameter))?;
    let underlying_diameter = diameter(&ctx.plain).ok();
    let undirected_boundary = boundary(&ctx.plain, a)?.len();
    let need = diameter_threshold(2 * k * k);
    let outcome = match ctx.precondition(a, need) {
        Some(reason) => DichotomyOutcome::failed(k, reason),
        None => {
            let mut o = ctx.decide(a, k, &EULERIAN);
            o.k = k;
            o
        }
    };
    Ok(EulerianOutcome {
        outcome,
        k,
        undirected_boundary,
        derived_bound_holds: undirected_boundary <= 2 * k * k,
        directed_diameter,
        underlying_diameter,
        underlying_hypothesis: underlying_diameter.is_some_and(|d| d >= need),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cor19Outcome {
    /// (i): ring-like with `2st ≤ k`.
    RingLike { s: usize, t: usize },
    /// (ii): exhaustive search found no decomposition of width below `k`.
    TreeWidthAtLeast,
    /// (iii): degree at most `k − 1` and diameter below `31(k+1)²`.
    SmallDegreeDiameter { degree: usize, diameter: usize },
    Inconclusive(String),
    /// All three fail; carries the decomposition of width below `k`.
    Violation { td: TreeDecomposition },
}

pub fn cor19_check(g: &Graph, gens: &[Permutation], k: usize, td_hint: Option<&TreeDecomposition>, budget: u64) -> Result<Cor19Outcome> {
    if k == 0 {
        return Err(Error::InvalidParameters("k must be positive".into()));
    }
    check_automorphisms(g, gens)?;
    let orb = orbit_transitivity(g.n(), gens, Some(g))?;
    if !orb.transitive {
        return Err(Error::Intransitive(orb.orbits.len()));
    }
    let diam = diameter(g)?;
    let search = detect_ring_search(g, gens, k / 2)?;
    if let Some(c) = search.best.as_ref().filter(|c| 2 * c.st() <= k) {
        return Ok(Cor19Outcome::RingLike { s: c.s, t: c.t });
    }
    let degree = g.max_degree();
    if degree < k && diam < diameter_threshold(k) {
        return Ok(Cor19Outcome::SmallDegreeDiameter { degree, diameter: diam });
    }
    let td = match td_hint {
        Some(td) => {
            if verify_td(g, td)? >= k {
                return Err(Error::InvalidParameters("hint has width at least k".into()));
            }
            td.clone()
        }
        None => match greedy_td_search(g, k, budget) {
            Ok(Some(td)) => td,
            Ok(None) => return Ok(Cor19Outcome::TreeWidthAtLeast),
            Err(e) if e.is_budget() || matches!(e, Error::InvalidParameters(_)) => {
                return Ok(Cor19Outcome::Inconclusive(e.to_string()));
            }
            Err(e) => return Err(e),
        },
    };
    if search.exhaustive {
        Ok(Cor19Outcome::Violation { td })
    } else {
        Ok(Cor19Outcome::Inconclusive("ring search was not exhaustive".into()))
    }
}

/// Groups accepted by the product-set check. Elements are integer vectors:
/// `[index]` for tables, `[n]` for ℤ, reduced words over `±1..=±rank` for
/// free groups.
#[derive(Debug, Clone)]
pub enum ProductGroup {
    Finite(GroupTable),
    Integers,
    Free(usize),
}

pub type Element = Vec<i64>;

impl ProductGroup {
    pub fn identity(&self) -> Element {
        match self {
            ProductGroup::Finite(t) => vec![t.identity() as i64],
            ProductGroup::Integers => vec![0],
            ProductGroup::Free(_) => Vec::new(),
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        match self {
            ProductGroup::Finite(t) => vec![t.mul(x[0] as usize, y[0] as usize) as i64],
            ProductGroup::Integers => vec![x[0] + y[0]],
            ProductGroup::Free(_) => {
                let mut out = x.clone();
                for &l in y {
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                out
            }
        }
    }

    pub fn inverse(&self, x: &Element) -> Element {
        match self {
            ProductGroup::Finite(t) => vec![t.inverse(x[0] as usize) as i64],
            ProductGroup::Integers => vec![-x[0]],
            ProductGroup::Free(_) => x.iter().rev().map(|l| -l).collect(),
        }
    }

    fn check(&self, x: &Element) -> Result<()> {
        let ok = match self {
            ProductGroup::Finite(t) => x.len() == 1 && x[0] >= 0 && (x[0] as usize) < t.order(),
            ProductGroup::Integers => x.len() == 1,
            ProductGroup::Free(r) => {
                x.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= *r) && x.windows(2).all(|w| w[0] != -w[1])
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("{x:?} is not a reduced group element")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quotient {
    Cyclic,
    Dihedral,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductReport {
    pub a_size: usize,
    pub ba_size: usize,
    /// `|BA| < |A| + ½|A|^{1/3}`, decided exactly as `(2(|BA|−|A|))³ < |A|`.
    pub hypothesis: bool,
    /// `|A| − (2(|BA|−|A|))³`; positive exactly when the hypothesis holds.
    pub margin: i128,
    /// The group is finite, outside the infinite-group setting.
    pub finite_caveat: bool,
    pub n_size: Option<usize>,
    /// `64|N|³ < |A|`, the exact form of `|N| < ¼|A|^{1/3}`.
    pub n_small: Option<bool>,
    pub quotient: Option<Quotient>,
}

pub fn thm3_check(group: &ProductGroup, b: &[Element], a: &[Element]) -> Result<ProductReport> {
    for x in b.iter().chain(a) {
        group.check(x)?;
    }
    let id = group.identity();
    if !b.contains(&id) {
        return Err(Error::InvalidParameters("B does not contain the identity".into()));
    }
    if let Some(x) = b.iter().find(|x| !b.contains(&group.inverse(x))) {
        return Err(Error::InvalidParameters(format!("B is not symmetric: {x:?} lacks its inverse")));
    }
    check_generates(group, b)?;
    let mut aset: Vec<Element> = a.to_vec();
    aset.sort();
    aset.dedup();
    let mut ba: Vec<Element> = b.iter().flat_map(|x| aset.iter().map(move |y| group.mul(x, y))).collect();
    ba.sort();
    ba.dedup();
    let excess = (ba.len() - aset.len()) as i128;
    let margin = aset.len() as i128 - (2 * excess).pow(3);
    let mut report = ProductReport {
        a_size: aset.len(),
        ba_size: ba.len(),
        hypothesis: margin > 0,
        margin,
        finite_caveat: matches!(group, ProductGroup::Finite(_)),
        n_size: None,
        n_small: None,
        quotient: None,
    };
    if !report.hypothesis {
        return Ok(report);
    }
    let n_and_quotient = match group {
        ProductGroup::Integers | ProductGroup::Free(1) => {
            // the Cayley graph is a periodic presentation with a one-vertex cell
            let jumps: Vec<(usize, usize, i64)> = b.iter().filter(|x| x[0] > 0).map(|x| (0, 0, x[0])).collect();
            let p = make_periodic(1, &[], &jumps)?;
            let gens = find_periodic_automorphisms(&p)?;
            detect_periodic_ring(&p, &gens, 1, excess.max(1) as usize)?.map(|r| (r.s, Quotient::Cyclic))
        }
        ProductGroup::Free(_) => None,
        ProductGroup::Finite(t) => finite_normal_subgroup(t, b, excess as usize)?,
    };
    if let Some((n, q)) = n_and_quotient {
        report.n_size = Some(n);
        report.n_small = Some(64 * (n as i128).pow(3) < aset.len() as i128);
        report.quotient = Some(q);
    }
    Ok(report)
}

fn check_generates(group: &ProductGroup, b: &[Element]) -> Result<()> {
    let ok = match group {
        ProductGroup::Finite(t) => {
            let idx: Vec<usize> = b.iter().map(|x| x[0] as usize).collect();
            t.generated(&idx).iter().all(|&x| x)
        }
        ProductGroup::Integers => b.iter().fold(0i64, |g, x| gcd(g, x[0].abs())) == 1,
        ProductGroup::Free(r) => (1..=*r as i64).all(|l| b.contains(&vec![l])),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameters("B does not generate the group".into()))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Block of the identity in the best ring structure of the Cayley graph,
/// accepted when it is a normal subgroup.
fn finite_normal_subgroup(t: &GroupTable, b: &[Element], k: usize) -> Result<Option<(usize, Quotient)>> {
    let conn: Vec<usize> = b.iter().map(|x| x[0] as usize).filter(|&x| x != t.identity()).collect();
    let cay = make_cayley(t, &conn, false)?;
    let Some(cert) = detect_ring_search(&cay.graph, &cay.gens, (k / 2).max(1))?.best else {
        return Ok(None);
    };
    let sys = &cert.cyclic.system;
    let n: Vec<usize> = sys.block(sys.block_of(t.identity())).iter().collect();
    let closed = n.iter().all(|&x| n.iter().all(|&y| n.contains(&t.mul(x, y))));
    let normal = (0..t.order()).all(|g| n.iter().all(|&x| n.contains(&t.mul(t.mul(g, x), t.inverse(g)))));
    if !(closed && normal) {
        return Ok(None);
    }
    let m = t.order() / n.len();
    let in_n = |x: usize| n.contains(&x);
    let quotient_order = |g: usize| {
        let mut x = g;
        let mut j = 1;
        while !in_n(x) {
            x = t.mul(x, g);
            j += 1;
        }
        j
    };
    let q = if (0..t.order()).any(|g| quotient_order(g) == m) {
        Quotient::Cyclic
    } else if m.is_multiple_of(2)
        && (0..t.order()).any(|r| {
            quotient_order(r) == m / 2
                && (0..t.order()).any(|s| {
                    quotient_order(s) == 2 && in_n(t.mul(t.mul(t.mul(s, r), s), r)) && {
                        // s outside ⟨r⟩N
                        let mut x = r;
                        let mut outside = true;
                        for _ in 0..m / 2 {
                            if in_n(t.mul(s, t.inverse(x))) {
                                outside = false;
                            }
                            x = t.mul(x, r);
                        }
                        outside
                    }
                })
        })
    {
        Quotient::Dihedral
    } else {
        Quotient::Other
    };
    Ok(Some((n.len(), q)))
}
