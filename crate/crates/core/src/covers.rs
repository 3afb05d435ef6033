//! ℤ-voltage maps, their derived covers, elementary equivalences and the
//! tube voltages μ_φ.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{components_of_mask, is_connected, Graph, Vertex, VertexSet};
use crate::symmetry::Permutation;
use crate::tubes::TubeCertificate;

/// Antisymmetric integer labels on the arcs of an undirected base graph.
/// Only the orientation `u < v` is stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoltageMap {
    base: Graph,
    values: BTreeMap<(Vertex, Vertex), i64>,
}

impl VoltageMap {
    pub fn zero(base: &Graph) -> Result<VoltageMap> {
        if base.is_directed() {
            return Err(Error::InvalidParameters("voltage maps live on undirected graphs".into()));
        }
        Ok(VoltageMap {
            values: base.edges().map(|e| (e, 0)).collect(),
            base: base.clone(),
        })
    }

    /// Arcs `(u, v, k)` meaning μ(u,v) = k; unlisted edges carry 0.
    pub fn new(base: &Graph, arcs: &[(Vertex, Vertex, i64)]) -> Result<VoltageMap> {
        let mut mu = VoltageMap::zero(base)?;
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v, k) in arcs {
            if !base.has_edge(u, v) {
                return Err(Error::InvalidParameters(format!("{u}-{v} is not an edge of the base graph")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            mu.set(u, v, k);
        }
        Ok(mu)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    fn set(&mut self, u: Vertex, v: Vertex, k: i64) {
        if u < v {
            self.values.insert((u, v), k);
        } else {
            self.values.insert((v, u), -k);
        }
    }

    /// μ(u,v); panics if `uv` is not an edge.
    pub fn value(&self, u: Vertex, v: Vertex) -> i64 {
        if u < v {
            self.values[&(u, v)]
        } else {
            -self.values[&(v, u)]
        }
    }

    pub fn max_abs(&self) -> i64 {
        self.values.values().map(|k| k.abs()).max().unwrap_or(0)
    }

    /// `(u, v, μ(u,v))` with `u < v`.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex, i64)> + '_ {
        self.values.iter().map(|(&(u, v), &k)| (u, v, k))
    }

    pub fn negated(&self) -> VoltageMap {
        let mut out = self.clone();
        for k in out.values.values_mut() {
            *k = -*k;
        }
        out
    }

    /// μ + δ_S^m: arcs leaving S gain m, arcs entering S lose m.
    pub fn add_delta(&self, s: &VertexSet, m: i64) -> Result<VoltageMap> {
        self.base.check_set(s)?;
        let mut out = self.clone();
        for (&(u, v), k) in out.values.iter_mut() {
            match (s.contains(u), s.contains(v)) {
                (true, false) => *k += m,
                (false, true) => *k -= m,
                _ => {}
            }
        }
        Ok(out)
    }

    /// Sum of μ along a closed walk `walk[0], walk[1], …, walk[0]`.
    pub fn cycle_sum(&self, walk: &[Vertex]) -> Result<i64> {
        let mut sum = 0;
        for (i, &u) in walk.iter().enumerate() {
            let v = walk[(i + 1) % walk.len()];
            if !self.base.has_edge(u, v) {
                return Err(Error::InvalidParameters(format!("{u}-{v} is not an edge of the base graph")));
            }
            sum += self.value(u, v);
        }
        Ok(sum)
    }

    /// Voltage of the fundamental cycle of every non-tree edge of a BFS forest,
    /// in edge order. Elementary equivalences fix or negate all of them.
    pub fn fundamental_cycle_sums(&self) -> Vec<i64> {
        let n = self.base.n();
        let mut pot: Vec<Option<i64>> = vec![None; n];
        let mut tree = std::collections::BTreeSet::new();
        for root in 0..n {
            if pot[root].is_some() {
                continue;
            }
            pot[root] = Some(0);
            let mut q = std::collections::VecDeque::from([root]);
            while let Some(u) = q.pop_front() {
                for &v in self.base.neighbors(u) {
                    if pot[v].is_none() {
                        pot[v] = Some(pot[u].unwrap() + self.value(u, v));
                        tree.insert((u.min(v), u.max(v)));
                        q.push_back(v);
                    }
                }
            }
        }
        self.arcs()
            .filter(|&(u, v, _)| !tree.contains(&(u, v)))
            .map(|(u, v, k)| pot[u].unwrap() + k - pot[v].unwrap())
            .collect()
    }
}

/// The slab `V(base) × [−L, L]` of 𝒞(base, μ). Vertex `(u, i)` has id
/// `(i + L)·n + u`.
#[derive(Debug, Clone)]
pub struct CoverWindow {
    pub graph: Graph,
    pub projection: Vec<Vertex>,
    pub layer_of: Vec<i64>,
    /// Vertices within `max|μ|` layers of either end.
    pub frontier: VertexSet,
    pub radius: usize,
}

impl CoverWindow {
    pub fn vertex(&self, u: Vertex, layer: i64) -> Option<Vertex> {
        let n = self.graph.n() / (2 * self.radius + 1);
        let r = self.radius as i64;
        (u < n && layer.abs() <= r).then(|| (layer + r) as usize * n + u)
    }
}

pub fn build_cover_window(mu: &VoltageMap, radius: usize) -> Result<CoverWindow> {
    if radius == 0 {
        return Err(Error::InvalidParameters("window radius must be positive".into()));
    }
    let n = mu.base.n();
    let r = radius as i64;
    let layers = 2 * radius + 1;
    let id = |u: Vertex, i: i64| (i + r) as usize * n + u;
    let mut edges = Vec::new();
    for (u, v, k) in mu.arcs() {
        for i in -r..=r {
            let j = i + k;
            if j.abs() <= r {
                edges.push((id(u, i), id(v, j)));
            }
        }
    }
    let graph = Graph::from_edges(n * layers, false, edges)?;
    let layer_of: Vec<i64> = (0..n * layers).map(|x| (x / n) as i64 - r).collect();
    let m = mu.max_abs();
    let frontier = VertexSet::new(n * layers, (0..n * layers).filter(|&x| r - layer_of[x].abs() < m))?;
    Ok(CoverWindow {
        graph,
        projection: (0..n * layers).map(|x| x % n).collect(),
        layer_of,
        frontier,
        radius,
    })
}

/// μ_φ: +1 on arcs from φ(L) into φ(A), −1 on the reverse arcs.
pub fn mu_from_tube(g: &Graph, cert: &TubeCertificate, phi: &Permutation) -> Result<VoltageMap> {
    if phi.len() != g.n() {
        return Err(Error::InvalidPermutation(format!("length {} for a graph on {} vertices", phi.len(), g.n())));
    }
    if let Some((u, v)) = phi.broken_edge(g) {
        return Err(Error::NotAutomorphism(format!("maps edge {u}-{v} to a non-edge")));
    }
    let l = phi.apply_set(&cert.l);
    let a = phi.apply_set(&cert.a);
    let mut mu = VoltageMap::zero(g)?;
    for (u, v) in g.edges() {
        if l.contains(u) && a.contains(v) {
            mu.set(u, v, 1);
        } else if l.contains(v) && a.contains(u) {
            mu.set(u, v, -1);
        }
    }
    Ok(mu)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerReport {
    pub radius: usize,
    /// The window of 𝒞(G, μ) is connected before any deletion.
    pub cover_connected: bool,
    /// Components after deleting lifted L–A edges, counted.
    pub components: usize,
    /// Every component is exactly one layer `V × {i}`.
    pub components_are_layers: bool,
}

impl LayerReport {
    pub fn passes(&self) -> bool {
        self.cover_connected && self.components_are_layers
    }
}

/// Builds the window of 𝒞(G, μ), removes lifts of the base edges listed in
/// `cut`, and compares the remaining components with the layers.
pub fn layer_components(mu: &VoltageMap, cut: &[(Vertex, Vertex)], radius: usize) -> Result<LayerReport> {
    let w = build_cover_window(mu, radius)?;
    let n = mu.base.n();
    let cut: std::collections::BTreeSet<(Vertex, Vertex)> = cut.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let kept = w.graph.edges().filter(|&(x, y)| {
        let (u, v) = (w.projection[x], w.projection[y]);
        !cut.contains(&(u.min(v), u.max(v)))
    });
    let h = Graph::from_edges(w.graph.n(), false, kept.collect::<Vec<_>>())?;
    let comps = components_of_mask(&h, &vec![true; h.n()]);
    let components_are_layers = comps
        .iter()
        .all(|c| c.len() == n && c.iter().all(|&x| w.layer_of[x] == w.layer_of[c[0]]));
    Ok(LayerReport {
        radius,
        cover_connected: is_connected(&w.graph),
        components: comps.len(),
        components_are_layers,
    })
}

/// For a tube `(A, L, R)`: `G ∖ E[A, L]` must be connected, and the window of
/// 𝒞(G, μ₁) minus the lifted `L`–`A` edges must split into its layers.
pub fn layer_decomposition_check(g: &Graph, cert: &TubeCertificate, radius: usize) -> Result<LayerReport> {
    let cut: Vec<(Vertex, Vertex)> = g
        .edges()
        .filter(|&(u, v)| (cert.l.contains(u) && cert.a.contains(v)) || (cert.l.contains(v) && cert.a.contains(u)))
        .collect();
    let rest = Graph::from_edges(g.n(), false, g.edges().filter(|e| !cut.contains(e)).collect::<Vec<_>>())?;
    if !is_connected(&rest) {
        return Err(Error::Hypothesis("G minus the edges between A and L is disconnected".into()));
    }
    let mu = mu_from_tube(g, cert, &Permutation::identity(g.n()))?;
    layer_components(&mu, &cut, radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::components_of_mask;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, false, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn zero_voltage_gives_copies() {
        let w = build_cover_window(&VoltageMap::zero(&cycle(4)).unwrap(), 2).unwrap();
        let comps = components_of_mask(&w.graph, &vec![true; w.graph.n()]);
        assert_eq!(comps.len(), 5);
        assert!(comps.iter().all(|c| c.len() == 4));
        assert!(w.frontier.is_empty());
    }

    #[test]
    fn triangle_unrolls_to_a_path() {
        let mu = VoltageMap::new(&cycle(3), &[(2, 0, 1)]).unwrap();
        let w = build_cover_window(&mu, 3).unwrap();
        assert_eq!(w.graph.n(), 21);
        assert!(is_connected(&w.graph));
        assert_eq!(w.graph.edge_count(), 20);
        let c = w.vertex(2, -3).unwrap();
        assert!(w.graph.has_edge(c, w.vertex(0, -2).unwrap()));
    }

    #[test]
    fn k2_matching() {
        let k2 = Graph::from_edges(2, false, [(0, 1)]).unwrap();
        let mu = VoltageMap::new(&k2, &[(0, 1, 1)]).unwrap();
        let w = build_cover_window(&mu, 2).unwrap();
        let edges: Vec<_> = w.graph.edges().collect();
        assert_eq!(edges.len(), 4);
        for (x, y) in edges {
            assert_eq!((w.layer_of[y] - w.layer_of[x]).abs(), 1);
        }
    }

    #[test]
    fn delta_and_negation() {
        let g = cycle(4);
        let mu = VoltageMap::zero(&g).unwrap().add_delta(&VertexSet::new(4, [0]).unwrap(), 1).unwrap();
        assert_eq!((mu.value(0, 1), mu.value(1, 0), mu.value(3, 0), mu.value(1, 2)), (1, -1, -1, 0));
        assert_eq!(mu.negated().negated(), mu);
        let tri = VoltageMap::new(&cycle(3), &[(2, 0, 1)]).unwrap();
        let moved = tri.add_delta(&VertexSet::new(3, [0]).unwrap(), -1).unwrap();
        assert_eq!(moved.cycle_sum(&[0, 1, 2]).unwrap(), 1);
        assert_eq!(tri.fundamental_cycle_sums(), moved.fundamental_cycle_sums());
    }

    #[test]
    fn tube_voltages() {
        let g = cycle(20);
        let cert = crate::tubes::verify_tube(
            &g,
            &VertexSet::new(20, 1..9).unwrap(),
            &VertexSet::new(20, [0]).unwrap(),
            &VertexSet::new(20, [9]).unwrap(),
            0,
            9,
        )
        .unwrap();
        let mu = mu_from_tube(&g, &cert, &Permutation::identity(20)).unwrap();
        assert_eq!(mu.arcs().filter(|a| a.2 != 0).collect::<Vec<_>>(), vec![(0, 1, 1)]);
        let rot = Permutation::new((0..20).map(|i| (i + 5) % 20).collect()).unwrap();
        let mu5 = mu_from_tube(&g, &cert, &rot).unwrap();
        assert_eq!(mu5.arcs().filter(|a| a.2 != 0).collect::<Vec<_>>(), vec![(5, 6, 1)]);
        let rep = layer_decomposition_check(&g, &cert, 3).unwrap();
        assert!(rep.passes(), "{rep:?}");
        assert_eq!(rep.components, 7);
        let control = layer_components(&VoltageMap::zero(&g).unwrap(), &[], 3).unwrap();
        assert!(control.components_are_layers && !control.cover_connected);
    }
}
