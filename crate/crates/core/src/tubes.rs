//! (s,t)-tubes: verification, boundary-partition discovery, merging, and
//! the balloon check for cuts concentrated near one vertex.

use crate::error::{Error, Result};
use crate::graph::{self, boundary, check_connected_with_boundary, vertex_depths, Graph, Vertex, VertexSet};
use crate::uncrossing::{regions, RegionDecomposition};

/// A verified (s,t)-tube with its boundary partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TubeCertificate {
    pub a: VertexSet,
    pub l: VertexSet,
    pub r: VertexSet,
    pub s: usize,
    pub t: usize,
}

/// Distances from every vertex of `sources` (rows follow `sources` order).
fn distance_rows(g: &Graph, sources: &[Vertex]) -> Vec<Vec<usize>> {
    crate::par::map(sources, |&x| graph::bfs_raw(g, x))
}

fn fmt_dist(d: usize) -> String {
    if graph::is_unseen(d) {
        "unreachable".into()
    } else {
        d.to_string()
    }
}

/// Tight parameters of a boundary partition: the largest distance inside a
/// side, and the smallest distance between the sides (both directions).
pub fn tight_parameters(g: &Graph, l: &VertexSet, r: &VertexSet) -> Result<(usize, usize)> {
    g.check_set(l)?;
    g.check_set(r)?;
    let all: Vec<Vertex> = l.union(r).iter().collect();
    let rows = distance_rows(g, &all);
    let mut s = 0;
    let mut t = usize::MAX;
    for (i, &x) in all.iter().enumerate() {
        for &y in &all {
            let d = rows[i][y];
            if l.contains(x) == l.contains(y) {
                if graph::is_unseen(d) {
                    return Err(Error::InfiniteDiameter(x, y));
                }
                s = s.max(d);
            } else {
                t = t.min(d);
            }
        }
    }
    Ok((s, t))
}

pub fn verify_tube(g: &Graph, a: &VertexSet, l: &VertexSet, r: &VertexSet, s: usize, t: usize) -> Result<TubeCertificate> {
    for set in [a, l, r] {
        g.check_set(set)?;
    }
    if l.is_empty() || r.is_empty() {
        return Err(Error::InvalidTube("empty side".into()));
    }
    if !l.is_disjoint(r) {
        return Err(Error::InvalidTube("sides overlap".into()));
    }
    let bd = boundary(g, a)?;
    if l.union(r) != bd {
        return Err(Error::InvalidTube(format!("sides do not partition the boundary {:?}", bd.as_slice())));
    }
    if !check_connected_with_boundary(g, a) {
        return Err(Error::InvalidTube("A together with its boundary is not connected".into()));
    }
    let all: Vec<Vertex> = bd.iter().collect();
    let rows = distance_rows(g, &all);
    for (i, &x) in all.iter().enumerate() {
        for &y in &all {
            let d = rows[i][y];
            let same = l.contains(x) == l.contains(y);
            if same && (graph::is_unseen(d) || d > s) {
                return Err(Error::InvalidTube(format!(
                    "same-side pair {x},{y} at distance {} > s = {s}",
                    fmt_dist(d)
                )));
            }
            if !same && d < t {
                return Err(Error::InvalidTube(format!("cross pair {x},{y} at distance {d} < t = {t}")));
            }
        }
    }
    Ok(TubeCertificate {
        a: a.clone(),
        l: l.clone(),
        r: r.clone(),
        s,
        t,
    })
}

/// Splits ∂A into two sides by single-linkage clustering at threshold `s`,
/// merging the closest clusters while more than two remain, then validates.
pub fn find_boundary_partition(g: &Graph, a: &VertexSet, s: usize, t: usize) -> Result<Option<(VertexSet, VertexSet)>> {
    let bd = boundary(g, a)?;
    if bd.len() < 2 {
        return Ok(None);
    }
    let pts: Vec<Vertex> = bd.iter().collect();
    let rows = distance_rows(g, &pts);
    let m = pts.len();
    // symmetric distance for clustering: the shorter direction
    let d = |i: usize, j: usize| rows[i][pts[j]].min(rows[j][pts[i]]);
    let mut cluster: Vec<usize> = (0..m).collect();
    let relabel = |cluster: &mut Vec<usize>, from: usize, to: usize| {
        for c in cluster.iter_mut() {
            if *c == from {
                *c = to;
            }
        }
    };
    for i in 0..m {
        for j in i + 1..m {
            if d(i, j) <= s && cluster[i] != cluster[j] {
                let (from, to) = (cluster[j].max(cluster[i]), cluster[j].min(cluster[i]));
                relabel(&mut cluster, from, to);
            }
        }
    }
    loop {
        let mut ids: Vec<usize> = cluster.clone();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() < 2 {
            return Ok(None);
        }
        if ids.len() == 2 {
            break;
        }
        let mut best = (usize::MAX, 0, 0);
        for i in 0..m {
            for j in 0..m {
                if cluster[i] < cluster[j] && d(i, j) < best.0 {
                    best = (d(i, j), cluster[i], cluster[j]);
                }
            }
        }
        relabel(&mut cluster, best.2, best.1);
    }
    let first = cluster[0];
    let l = VertexSet::new(g.n(), (0..m).filter(|&i| cluster[i] == first).map(|i| pts[i]))?;
    let r = bd.difference(&l);
    Ok(verify_tube(g, a, &l, &r, s, t).ok().map(|_| (l, r)))
}

/// Which merge conditions hold for two tubes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeReport {
    pub regions: RegionDecomposition,
    pub p_nonempty: bool,
    pub s_nonempty: bool,
    pub x_nonempty: bool,
    pub z_nonempty: bool,
    /// {Q, Y} = {L₁, R₁}
    pub first_sides_match: bool,
    /// {T, W} = {L₂, R₂}
    pub second_sides_match: bool,
    /// Implied by a merge.
    pub u_empty: bool,
}

impl MergeReport {
    pub fn merges(&self) -> bool {
        self.p_nonempty
            && self.s_nonempty
            && self.x_nonempty
            && self.z_nonempty
            && self.first_sides_match
            && self.second_sides_match
    }
}

fn same_pair(a: &VertexSet, b: &VertexSet, c: &VertexSet, d: &VertexSet) -> bool {
    (a == c && b == d) || (a == d && b == c)
}

pub fn merge_status(g: &Graph, c1: &TubeCertificate, c2: &TubeCertificate) -> Result<MergeReport> {
    let r = regions(g, &c1.a, &c2.a)?;
    Ok(MergeReport {
        p_nonempty: !r.p.is_empty(),
        s_nonempty: !r.s.is_empty(),
        x_nonempty: !r.x.is_empty(),
        z_nonempty: !r.z.is_empty(),
        first_sides_match: same_pair(&r.q, &r.y, &c1.l, &c1.r),
        second_sides_match: same_pair(&r.t, &r.w, &c2.l, &c2.r),
        u_empty: r.u.is_empty(),
        regions: r,
    })
}

/// The merged tube on P ∪ Q ∪ S ∪ T ∪ X with sides {Y, W}.
///
/// Each new side is one old side, so `s' = max(s₁, s₂)` stays valid; `t'`
/// is recomputed as the exact distance between the new sides.
pub fn merge_tubes(g: &Graph, c1: &TubeCertificate, c2: &TubeCertificate) -> Result<TubeCertificate> {
    let status = merge_status(g, c1, c2)?;
    if !status.merges() {
        return Err(Error::InvalidTube("tubes do not merge".into()));
    }
    let r = &status.regions;
    let a = r.union_side();
    let (_, t) = tight_parameters(g, &r.y, &r.w)?;
    verify_tube(g, &a, &r.y, &r.w, c1.s.max(c2.s), t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalloonComponent {
    pub vertices: VertexSet,
    pub depth: usize,
    /// Touches the frontier of a window, so stands in for an infinite
    /// component; `depth` is then only a lower bound.
    pub infinite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalloonReport {
    pub components: Vec<BalloonComponent>,
    /// Components with depth at least k + 2.
    pub deep: usize,
    pub holds: bool,
}

/// Checks that a cut within distance `k` of `y` leaves at most one component
/// of depth ≥ k + 2 whenever some finite component is that deep.
pub fn balloon_check(g: &Graph, x: &VertexSet, y: Vertex, k: usize, frontier: Option<&VertexSet>) -> Result<BalloonReport> {
    g.check_set(x)?;
    g.check_vertex(y)?;
    if x.is_empty() {
        return Err(Error::InvalidParameters("empty cut: nothing is separated".into()));
    }
    let dist = graph::bfs_raw(g, y);
    if let Some(far) = x.iter().find(|&v| graph::is_unseen(dist[v]) || dist[v] > k) {
        return Err(Error::Hypothesis(format!(
            "vertex {far} of the cut is at distance {} > k = {k} from {y}",
            fmt_dist(dist[far])
        )));
    }
    let parts = graph::components_without(g, x)?;
    let components: Vec<BalloonComponent> = crate::par::map(&parts, |c| {
        let depth = if c.len() == g.n() {
            usize::MAX
        } else {
            vertex_depths(g, c)
                .map(|d| d.into_iter().flatten().max().unwrap_or(0))
                .unwrap_or(usize::MAX)
        };
        BalloonComponent {
            vertices: c.clone(),
            depth,
            infinite: frontier.is_some_and(|f| c.iter().any(|v| f.contains(v))),
        }
    });
    let is_deep = |c: &BalloonComponent| c.depth >= k + 2;
    let deep = components.iter().filter(|c| is_deep(c)).count();
    let finite_deep = components.iter().any(|c| is_deep(c) && !c.infinite);
    Ok(BalloonReport {
        holds: !(finite_deep && deep >= 2),
        deep,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, false, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn set(n: usize, ids: impl IntoIterator<Item = usize>) -> VertexSet {
        VertexSet::new(n, ids).unwrap()
    }

    #[test]
    fn tube_on_c20() {
        let g = cycle(20);
        let c = verify_tube(&g, &set(20, 1..9), &set(20, [0]), &set(20, [9]), 1, 9).unwrap();
        assert_eq!((c.s, c.t), (1, 9));
        assert!(verify_tube(&g, &set(20, 1..9), &set(20, [0]), &set(20, [9]), 1, 10).is_err());
        let err = verify_tube(&g, &set(20, 1..9), &set(20, [0, 9]), &VertexSet::empty(20), 1, 9).unwrap_err();
        assert!(err.to_string().contains("empty side"));
    }

    #[test]
    fn partition_discovery() {
        let g = cycle(20);
        let (l, r) = find_boundary_partition(&g, &set(20, 1..9), 1, 5).unwrap().unwrap();
        assert_eq!((l.as_slice(), r.as_slice()), (&[0][..], &[9][..]));
        assert_eq!(find_boundary_partition(&g, &set(20, 1..19), 0, 2).unwrap(), None);
        assert_eq!(find_boundary_partition(&g, &set(20, 1..19), 1, 2).unwrap(), None);
        let path = Graph::from_edges(4, false, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(find_boundary_partition(&path, &set(4, [0]), 1, 1).unwrap(), None);
    }

    #[test]
    fn merge_on_c40() {
        let g = cycle(40);
        let c1 = verify_tube(&g, &set(40, 1..21), &set(40, [0]), &set(40, [21]), 1, 19).unwrap();
        let c2 = verify_tube(&g, &set(40, 11..31), &set(40, [10]), &set(40, [31]), 1, 19).unwrap();
        let st = merge_status(&g, &c1, &c2).unwrap();
        assert!(st.merges() && st.u_empty);
        assert_eq!(st.regions.p, set(40, 11..21));
        let m = merge_tubes(&g, &c1, &c2).unwrap();
        assert_eq!(m.a, set(40, 1..31));
        assert_eq!((m.l.as_slice(), m.r.as_slice()), (&[0][..], &[31][..]));
        assert_eq!((m.s, m.t), (1, 9));
        assert!(!merge_status(&g, &c1, &c1).unwrap().merges());
        assert!(merge_tubes(&g, &c1, &c1).is_err());
    }

    #[test]
    fn balloon_on_c30() {
        let g = cycle(30);
        let rep = balloon_check(&g, &set(30, [0, 1]), 0, 1, None).unwrap();
        assert_eq!(rep.components.len(), 1);
        assert_eq!(rep.components[0].depth, 14);
        assert!(rep.holds);
        assert!(balloon_check(&g, &VertexSet::empty(30), 0, 1, None).is_err());
        let err = balloon_check(&g, &set(30, [0, 5]), 0, 1, None).unwrap_err();
        assert!(err.to_string().contains("vertex 5"));
    }
}
