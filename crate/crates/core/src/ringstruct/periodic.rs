//! Ring structure on periodic presentations of two-ended graphs: affine
//! automorphisms, shift types, layer-periodic cyclic orders, cohesiveness,
//! and κ∞ by max-flow on windows.

use std::collections::VecDeque;

use super::flow::min_vertex_cut;
use crate::error::{Error, Result};
use crate::generators::{window, PeriodicPresentation};
use crate::graph::{self, Vertex};
use crate::symmetry::Permutation;

/// `(u, i) -> (cell_map[u], sign * i + offsets[u])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicAutomorphism {
    pub cell_map: Vec<Vertex>,
    pub sign: i64,
    pub offsets: Vec<i64>,
}

impl PeriodicAutomorphism {
    /// `(u, i) -> (u, i + k)`.
    pub fn translation(cell_size: usize, k: i64) -> Self {
        PeriodicAutomorphism {
            cell_map: (0..cell_size).collect(),
            sign: 1,
            offsets: vec![k; cell_size],
        }
    }

    pub fn apply(&self, u: Vertex, i: i64) -> (Vertex, i64) {
        (self.cell_map[u], self.sign * i + self.offsets[u])
    }

    /// Preserves each end.
    pub fn is_shift(&self) -> bool {
        self.sign == 1
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let c = self.cell_map.len();
        PeriodicAutomorphism {
            cell_map: (0..c).map(|u| self.cell_map[other.cell_map[u]]).collect(),
            sign: self.sign * other.sign,
            offsets: (0..c)
                .map(|u| self.sign * other.offsets[u] + self.offsets[other.cell_map[u]])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let c = self.cell_map.len();
        let mut inv = vec![0; c];
        for u in 0..c {
            inv[self.cell_map[u]] = u;
        }
        PeriodicAutomorphism {
            offsets: (0..c).map(|w| -self.sign * self.offsets[inv[w]]).collect(),
            cell_map: inv,
            sign: self.sign,
        }
    }

    pub fn verify(&self, p: &PeriodicPresentation) -> Result<()> {
        let c = p.cell_size();
        if self.cell_map.len() != c || self.offsets.len() != c || self.sign.abs() != 1 {
            return Err(Error::InvalidPermutation("malformed periodic map".into()));
        }
        Permutation::new(self.cell_map.clone())?;
        for u in 0..c {
            let pu = self.cell_map[u];
            let target = p.neighbor_offsets(pu);
            let mut images: Vec<(Vertex, i64)> = p
                .neighbor_offsets(u)
                .into_iter()
                .map(|(v, d)| (self.cell_map[v], self.sign * d + self.offsets[v] - self.offsets[u]))
                .collect();
            images.sort_unstable();
            if images != target {
                return Err(Error::NotAutomorphism(format!(
                    "neighbourhood of cell vertex {u} is not mapped onto that of {pu}"
                )));
            }
        }
        Ok(())
    }
}

/// Undirected "cell multigraph" adjacency: `(v, d)` means `(u,0) ~ (v,d)`.
fn cell_links(p: &PeriodicPresentation) -> Vec<Vec<(Vertex, i64)>> {
    (0..p.cell_size()).map(|u| p.neighbor_offsets(u)).collect()
}

/// Order in which cell vertices are reached from 0, with the parent link.
fn spanning_order(p: &PeriodicPresentation) -> Result<Vec<(Vertex, Option<(Vertex, i64)>)>> {
    let c = p.cell_size();
    let links = cell_links(p);
    let mut seen = vec![false; c];
    let mut out = Vec::with_capacity(c);
    if c == 0 {
        return Ok(out);
    }
    seen[0] = true;
    out.push((0, None));
    let mut q = VecDeque::from([0]);
    while let Some(u) = q.pop_front() {
        for &(v, d) in &links[u] {
            if !seen[v] {
                seen[v] = true;
                out.push((v, Some((u, d))));
                q.push_back(v);
            }
        }
    }
    if out.len() < c {
        return Err(Error::Disconnected("cell vertices fall into several classes".into()));
    }
    Ok(out)
}

/// Whether the infinite graph is connected: the cell multigraph must be
/// connected and its cycle voltages must generate ℤ.
pub fn is_connected(p: &PeriodicPresentation) -> bool {
    let Ok(order) = spanning_order(p) else {
        return false;
    };
    let mut pot = vec![0i64; p.cell_size()];
    for &(v, parent) in &order[1..] {
        let (u, d) = parent.expect("non-root");
        pot[v] = pot[u] + d;
    }
    let mut g = 0i64;
    for (u, links) in cell_links(p).iter().enumerate() {
        for &(v, d) in links {
            g = gcd(g, (pot[u] + d - pot[v]).abs());
        }
    }
    g == 1
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

const MAX_CELL_FOR_AUT: usize = 8;

/// All affine automorphisms fixing the layer of cell vertex 0, plus the unit
/// translation. Together they generate every automorphism of this form.
pub fn find_periodic_automorphisms(p: &PeriodicPresentation) -> Result<Vec<PeriodicAutomorphism>> {
    let c = p.cell_size();
    if c > MAX_CELL_FOR_AUT {
        return Err(Error::BudgetExhausted(format!("cell of size {c} is too large for affine search")));
    }
    let order = spanning_order(p)?;
    let links = cell_links(p);
    let perms = crate::generators::GroupTable::permutations(c);
    let per_perm = crate::par::map(&perms, |pi| {
        let mut found = Vec::new();
        for sign in [1i64, -1] {
            let mut offsets = vec![0i64; c];
            assign(p, &links, &order, 1, pi, sign, &mut offsets, &mut found);
        }
        found
    });
    let mut out = vec![PeriodicAutomorphism::translation(c, 1)];
    for a in per_perm.into_iter().flatten() {
        if !out.contains(&a) {
            out.push(a);
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn assign(
    p: &PeriodicPresentation,
    links: &[Vec<(Vertex, i64)>],
    order: &[(Vertex, Option<(Vertex, i64)>)],
    idx: usize,
    pi: &[Vertex],
    sign: i64,
    offsets: &mut Vec<i64>,
    found: &mut Vec<PeriodicAutomorphism>,
) {
    if idx == order.len() {
        let a = PeriodicAutomorphism {
            cell_map: pi.to_vec(),
            sign,
            offsets: offsets.clone(),
        };
        if a.verify(p).is_ok() && !a.cell_map.iter().enumerate().all(|(u, &x)| u == x && a.offsets[u] == 0 && sign == 1) {
            found.push(a);
        }
        return;
    }
    let (v, parent) = order[idx];
    let (u, d) = parent.expect("non-root");
    // (u,0)~(v,d) must map to (pi u, o_u) ~ (pi v, sign*d + o_v)
    let mut options: Vec<i64> = links[pi[u]]
        .iter()
        .filter(|&&(w, _)| w == pi[v])
        .map(|&(_, k)| offsets[u] + k - sign * d)
        .collect();
    options.sort_unstable();
    options.dedup();
    for o in options {
        offsets[v] = o;
        assign(p, links, order, idx + 1, pi, sign, offsets, found);
    }
}

/// Orbits of the shift subgroup, read off from generator evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftType {
    /// Each class is `{(u, i) : u in list, i in ℤ}`.
    pub shift_classes: Vec<Vec<Vertex>>,
    /// The generated group is transitive on vertices.
    pub transitive: bool,
    /// 1 or 2 when transitive.
    pub type_index: Option<usize>,
}

/// Classifies generators into shifts and reflections and counts the shift
/// orbits. The unit translation is always included.
pub fn shift_type(p: &PeriodicPresentation, gens: &[PeriodicAutomorphism]) -> Result<ShiftType> {
    let c = p.cell_size();
    for a in gens {
        a.verify(p)?;
    }
    let mut all = vec![PeriodicAutomorphism::translation(c, 1)];
    all.extend(gens.iter().cloned());
    // Schreier generators of the shift subgroup for transversal {1, r}
    let r = all.iter().find(|a| !a.is_shift()).cloned();
    let mut schreier = Vec::new();
    for g in &all {
        match (&r, g.is_shift()) {
            (_, true) => {
                schreier.push(g.clone());
                if let Some(r) = &r {
                    schreier.push(r.compose(g).compose(&r.inverse()));
                }
            }
            (Some(r), false) => {
                schreier.push(g.compose(&r.inverse()));
                schreier.push(r.compose(g));
            }
            (None, false) => unreachable!("a reflection exists"),
        }
    }
    let to_perm = |a: &PeriodicAutomorphism| Permutation::new(a.cell_map.clone()).expect("verified");
    let shift_perms: Vec<Permutation> = schreier.iter().map(to_perm).collect();
    let all_perms: Vec<Permutation> = all.iter().map(to_perm).collect();
    let shift_classes = crate::symmetry::orbits(c, &shift_perms);
    let transitive = crate::symmetry::orbits(c, &all_perms).len() == 1;
    Ok(ShiftType {
        type_index: (transitive && shift_classes.len() <= 2).then_some(shift_classes.len()),
        shift_classes,
        transitive,
    })
}

/// Blocks `period * i + offsets[u]` on a periodic presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicRing {
    pub period: usize,
    pub offsets: Vec<i64>,
}

impl PeriodicRing {
    pub fn block(&self, u: Vertex, i: i64) -> i64 {
        self.period as i64 * i + self.offsets[u]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicRingCertificate {
    pub ring: PeriodicRing,
    pub s: usize,
    pub t: usize,
    pub tight: bool,
    pub cohesive_q: usize,
}

impl PeriodicRingCertificate {
    pub fn st(&self) -> usize {
        self.s * self.t
    }
}

/// Block size, span and tightness without the cohesiveness computation.
fn ring_shape(p: &PeriodicPresentation, ring: &PeriodicRing, gens: &[PeriodicAutomorphism]) -> Result<(usize, usize, bool)> {
    let c = p.cell_size();
    let per = ring.period as i64;
    if ring.period == 0 || ring.offsets.len() != c {
        return Err(Error::NotRingLike("malformed periodic ring".into()));
    }
    let mut counts = vec![0usize; ring.period];
    for &o in &ring.offsets {
        counts[o.rem_euclid(per) as usize] += 1;
    }
    let s = counts[0];
    if s == 0 || counts.iter().any(|&x| x != s) {
        return Err(Error::NotRingLike(format!("blocks have unequal sizes {counts:?}")));
    }
    for (gi, a) in gens.iter().enumerate() {
        let shift_of = |u: usize| per * a.offsets[u] + ring.offsets[a.cell_map[u]] - a.sign * ring.offsets[u];
        let c0 = shift_of(0);
        if let Some(u) = (1..c).find(|&u| shift_of(u) != c0) {
            return Err(Error::NotRingLike(format!(
                "generator {gi} does not map blocks to blocks (cell vertices 0 and {u})"
            )));
        }
    }
    let mut t = 0usize;
    for u in 0..c {
        for (v, d) in p.neighbor_offsets(u) {
            t = t.max((ring.block(v, d) - ring.block(u, 0)).unsigned_abs() as usize);
        }
    }
    let tight = (0..c).all(|u| {
        let deltas: Vec<i64> = p
            .neighbor_offsets(u)
            .into_iter()
            .map(|(v, d)| ring.block(v, d) - ring.block(u, 0))
            .collect();
        deltas.contains(&(t as i64)) && deltas.contains(&-(t as i64))
    });
    Ok((s, t, tight))
}

pub fn verify_periodic_ring(p: &PeriodicPresentation, ring: &PeriodicRing, gens: &[PeriodicAutomorphism]) -> Result<PeriodicRingCertificate> {
    for a in gens {
        a.verify(p)?;
    }
    let (s, t, tight) = ring_shape(p, ring, gens)?;
    Ok(PeriodicRingCertificate {
        cohesive_q: periodic_cohesiveness(p, ring)?,
        ring: ring.clone(),
        s,
        t,
        tight,
    })
}

const MAX_RADIUS: usize = 4096;

/// Largest distance, in the infinite graph, between vertices in equal or
/// consecutive blocks. Windows grow until every geodesic fits.
pub fn periodic_cohesiveness(p: &PeriodicPresentation, ring: &PeriodicRing) -> Result<usize> {
    if !is_connected(p) {
        return Err(Error::Disconnected("periodic graph is not connected".into()));
    }
    let c = p.cell_size();
    let per = ring.period as i64;
    // members of blocks -1..=period, enough to cover one period of pairs
    let members = |b: i64| -> Vec<(Vertex, i64)> {
        (0..c)
            .filter(|&u| (b - ring.offsets[u]).rem_euclid(per) == 0)
            .map(|u| (u, (b - ring.offsets[u]).div_euclid(per)))
            .collect()
    };
    let extent = (-1..=per)
        .flat_map(members)
        .map(|(_, i)| i.unsigned_abs() as usize)
        .max()
        .unwrap_or(0);
    let m = p.max_jump().max(1);
    let mut radius = extent + 4 * m;
    loop {
        let w = window(p, radius)?;
        let mut worst = 0usize;
        for b in 0..per {
            let sources = members(b);
            let targets: Vec<(Vertex, i64)> = (b - 1..=b + 1).flat_map(members).collect();
            for &(u, i) in &sources {
                let x = w.vertex(u, i).expect("inside window");
                let dist = graph::bfs_raw(&w.graph, x);
                for &(v, j) in &targets {
                    let y = w.vertex(v, j).expect("inside window");
                    worst = worst.max(dist[y]);
                }
            }
        }
        if !graph::is_unseen(worst) && extent + worst * m <= radius {
            return Ok(worst);
        }
        if radius >= MAX_RADIUS {
            return Err(Error::NotStabilized("cohesiveness window limit reached".into()));
        }
        let need = if graph::is_unseen(worst) { 2 * radius } else { extent + worst * m };
        radius = need.max(radius + 1).min(MAX_RADIUS);
    }
}

/// Exhaustive search over periods `1..=max_period` and block offsets with
/// span at most `max_t`; returns the certificate with smallest `s·t`,
/// preferring tight ones, then shorter periods.
pub fn detect_periodic_ring(
    p: &PeriodicPresentation,
    gens: &[PeriodicAutomorphism],
    max_period: usize,
    max_t: usize,
) -> Result<Option<PeriodicRingCertificate>> {
    for a in gens {
        a.verify(p)?;
    }
    let order = spanning_order(p)?;
    let c = p.cell_size();
    let mut best: Option<((usize, bool, usize), PeriodicRing)> = None;
    for period in 1..=max_period {
        let mut offsets = vec![0i64; c];
        let mut found = Vec::new();
        ring_offsets(p, &order, 1, period as i64, max_t as i64, &mut offsets, &mut found);
        for off in found {
            let ring = PeriodicRing { period, offsets: off };
            let Ok((s, t, tight)) = ring_shape(p, &ring, gens) else {
                continue;
            };
            let key = (s * t, !tight, period);
            if best.as_ref().is_none_or(|(k, _)| key < *k) {
                best = Some((key, ring));
            }
        }
    }
    match best {
        Some((_, ring)) => Ok(Some(verify_periodic_ring(p, &ring, gens)?)),
        None => Ok(None),
    }
}

fn ring_offsets(
    p: &PeriodicPresentation,
    order: &[(Vertex, Option<(Vertex, i64)>)],
    idx: usize,
    period: i64,
    max_t: i64,
    offsets: &mut Vec<i64>,
    found: &mut Vec<Vec<i64>>,
) {
    if found.len() > 1_000_000 {
        return;
    }
    if idx == order.len() {
        found.push(offsets.clone());
        return;
    }
    let (v, parent) = order[idx];
    let (u, d) = parent.expect("non-root");
    // block(v,d) - block(u,0) = period*d + o_v - o_u must lie in [-max_t, max_t]
    let centre = offsets[u] - period * d;
    let placed: Vec<Vertex> = order[..idx].iter().map(|&(w, _)| w).collect();
    for o in centre - max_t..=centre + max_t {
        offsets[v] = o;
        let ok = p.neighbor_offsets(v).into_iter().all(|(w, k)| {
            !placed.contains(&w) || (period * k + offsets[w] - o).abs() <= max_t
        });
        if ok {
            ring_offsets(p, order, idx + 1, period, max_t, offsets, found);
        }
    }
}

/// κ∞ with a witness separator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KappaReport {
    pub value: usize,
    /// Separator vertices as `(cell vertex, layer)`.
    pub cut: Vec<(Vertex, i64)>,
    /// Radius of the larger of the two agreeing windows.
    pub radius: usize,
}

fn window_cut(p: &PeriodicPresentation, radius: usize) -> Result<Option<(usize, Vec<(Vertex, i64)>)>> {
    let w = window(p, radius)?;
    let m = p.max_jump() as i64;
    let r = radius as i64;
    let source: Vec<bool> = w.layer_of.iter().map(|&i| i < -r + m).collect();
    let sink: Vec<bool> = w.layer_of.iter().map(|&i| i > r - m).collect();
    Ok(min_vertex_cut(&w.graph, &source, &sink)
        .map(|c| (c.value, c.cut.into_iter().map(|v| (w.cell_of[v], w.layer_of[v])).collect())))
}

/// Minimum number of vertices separating the two ends, via max-flow between
/// the outer `max_jump` layers of growing windows. Accepted once windows of
/// radius `L` and `L + max(2, max_jump)` agree.
pub fn kappa_infinity(p: &PeriodicPresentation) -> Result<KappaReport> {
    let m = p.max_jump();
    if m == 0 {
        return Err(Error::InvalidParameters("presentation has no jumps, so it is not two-ended".into()));
    }
    if !is_connected(p) {
        return Err(Error::Disconnected("periodic graph is not connected".into()));
    }
    let step = m.max(2);
    let limit = 40 * m + 10 * p.cell_size() + 40;
    let mut radius = (3 * m).max(2);
    let mut prev = window_cut(p, radius)?;
    while radius + step <= limit {
        radius += step;
        let cur = window_cut(p, radius)?;
        if let (Some((a, _)), Some((b, cut))) = (&prev, &cur) {
            if a == b {
                return Ok(KappaReport {
                    value: *b,
                    cut: cut.clone(),
                    radius,
                });
            }
        }
        prev = cur;
    }
    Err(Error::NotStabilized(format!("no agreement up to window radius {limit}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{figure2, ladder, make_periodic, path, prism_periodic, squared_path};

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa_infinity(&ladder()).unwrap().value, 2);
        assert_eq!(kappa_infinity(&path()).unwrap().value, 1);
        assert_eq!(kappa_infinity(&squared_path()).unwrap().value, 2);
        let k = kappa_infinity(&prism_periodic()).unwrap();
        assert_eq!((k.value, k.cut.len()), (2, 2));
        let split = make_periodic(1, &[], &[(0, 0, 2)]).unwrap();
        assert!(matches!(kappa_infinity(&split), Err(Error::Disconnected(_))));
    }

    #[test]
    fn automorphism_algebra() {
        let p = figure2();
        let auts = find_periodic_automorphisms(&p).unwrap();
        for a in &auts {
            a.verify(&p).unwrap();
            assert!(a.compose(&a.inverse()).offsets.iter().all(|&o| o == 0));
        }
        assert!(auts.iter().any(|a| !a.is_shift()));
    }

    #[test]
    fn figure2_is_type_two() {
        let p = figure2();
        let auts = find_periodic_automorphisms(&p).unwrap();
        let ty = shift_type(&p, &auts).unwrap();
        assert_eq!(ty.type_index, Some(2));
        assert_eq!(ty.shift_classes, vec![vec![0], vec![1]]);
        assert_eq!(shift_type(&ladder(), &find_periodic_automorphisms(&ladder()).unwrap()).unwrap().type_index, Some(1));
    }

    #[test]
    fn rings_on_presentations() {
        for (p, s, t) in [(ladder(), 2, 1), (squared_path(), 1, 2), (prism_periodic(), 2, 1), (figure2(), 1, 3)] {
            let gens = find_periodic_automorphisms(&p).unwrap();
            let cert = detect_periodic_ring(&p, &gens, 4, 6).unwrap().unwrap();
            assert_eq!((cert.s, cert.t), (s, t), "{p:?}");
            assert!(cert.tight);
            assert!(cert.cohesive_q <= 2 * cert.st());
            assert_eq!(kappa_infinity(&p).unwrap().value, cert.st());
        }
    }

    #[test]
    fn connectivity_of_presentations() {
        assert!(is_connected(&ladder()));
        assert!(!is_connected(&make_periodic(1, &[], &[(0, 0, 2), (0, 0, 4)]).unwrap()));
        assert!(is_connected(&make_periodic(1, &[], &[(0, 0, 2), (0, 0, 3)]).unwrap()));
    }
}
