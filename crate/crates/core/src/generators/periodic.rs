use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// A ℤ-edge: `(u, i) ~ (v, i + k)` for every layer `i`. Stored with `k > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Jump {
    pub u: Vertex,
    pub v: Vertex,
    pub k: i64,
}

/// A two-ended graph presented as a finite cell repeated along ℤ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicPresentation {
    cell: Graph,
    jumps: Vec<Jump>,
}

/// Builds a presentation; jumps are normalised to positive `k`.
pub fn make_periodic(
    cell_size: usize,
    cell_edges: &[(Vertex, Vertex)],
    jumps: &[(Vertex, Vertex, i64)],
) -> Result<PeriodicPresentation> {
    let cell = Graph::from_edges(cell_size, false, cell_edges.iter().copied())?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(jumps.len());
    for &(u, v, k) in jumps {
        for w in [u, v] {
            if w >= cell_size {
                return Err(Error::VertexOutOfRange { vertex: w, n: cell_size });
            }
        }
        if k == 0 {
            return Err(Error::InvalidParameters(format!(
                "jump ({u},{v},0) has zero offset; use a cell edge"
            )));
        }
        let j = if k > 0 { Jump { u, v, k } } else { Jump { u: v, v: u, k: -k } };
        if !seen.insert(j) {
            return Err(Error::InvalidParameters(format!(
                "duplicate jump ({},{},{}) after normalisation",
                j.u, j.v, j.k
            )));
        }
        out.push(j);
    }
    out.sort();
    Ok(PeriodicPresentation { cell, jumps: out })
}

impl PeriodicPresentation {
    pub fn cell(&self) -> &Graph {
        &self.cell
    }

    pub fn cell_size(&self) -> usize {
        self.cell.n()
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    pub fn max_jump(&self) -> usize {
        self.jumps.iter().map(|j| j.k as usize).max().unwrap_or(0)
    }

    /// Neighbours of `(u, i)` in the infinite graph as `(v, layer offset)`.
    pub fn neighbor_offsets(&self, u: Vertex) -> Vec<(Vertex, i64)> {
        let mut out: Vec<(Vertex, i64)> = self.cell.neighbors(u).iter().map(|&v| (v, 0)).collect();
        for j in &self.jumps {
            if j.u == u {
                out.push((j.v, j.k));
            }
            if j.v == u {
                out.push((j.u, -j.k));
            }
        }
        out.sort_unstable();
        out
    }

    /// Degree of `(u, i)` in the infinite graph.
    pub fn degree(&self, u: Vertex) -> usize {
        self.neighbor_offsets(u).len()
    }

    /// Whether `(u,i) ~ (v,j)` in the infinite graph.
    pub fn adjacent(&self, u: Vertex, i: i64, v: Vertex, j: i64) -> bool {
        let d = j - i;
        if d == 0 {
            return self.cell.has_edge(u, v);
        }
        self.jumps
            .iter()
            .any(|jp| (jp.u == u && jp.v == v && jp.k == d) || (jp.u == v && jp.v == u && jp.k == -d))
    }
}

/// A finite slab `layers -radius..=radius` of a periodic graph.
#[derive(Debug, Clone)]
pub struct WindowGraph {
    pub graph: Graph,
    pub layer_of: Vec<i64>,
    pub cell_of: Vec<Vertex>,
    /// Vertices whose infinite neighbourhood may be truncated.
    pub frontier: VertexSet,
    pub radius: usize,
    pub cell_size: usize,
}

impl WindowGraph {
    /// Id of `(u, layer)` if it lies in the window.
    pub fn vertex(&self, u: Vertex, layer: i64) -> Option<Vertex> {
        let r = self.radius as i64;
        (u < self.cell_size && (-r..=r).contains(&layer)).then(|| (layer + r) as usize * self.cell_size + u)
    }

    pub fn is_frontier(&self, v: Vertex) -> bool {
        self.frontier.contains(v)
    }

    /// All vertices of the given layer.
    pub fn layer(&self, layer: i64) -> Vec<Vertex> {
        (0..self.cell_size).filter_map(|u| self.vertex(u, layer)).collect()
    }
}

/// Materialises layers `-l..=l`. Layers within `max_jump - 1` of either end
/// are marked as frontier.
pub fn window(p: &PeriodicPresentation, l: usize) -> Result<WindowGraph> {
    if l < 1 {
        return Err(Error::InvalidParameters("window radius must be at least 1".into()));
    }
    let c = p.cell_size();
    let r = l as i64;
    let layers = 2 * l + 1;
    let id = |u: Vertex, i: i64| (i + r) as usize * c + u;
    let mut arcs = Vec::new();
    for i in -r..=r {
        for (a, b) in p.cell.edges() {
            arcs.push((id(a, i), id(b, i)));
        }
        for j in &p.jumps {
            if i + j.k <= r {
                arcs.push((id(j.u, i), id(j.v, i + j.k)));
            }
        }
    }
    let graph = Graph::from_edges(layers * c, false, arcs)?;
    let mj = p.max_jump() as i64;
    let layer_of: Vec<i64> = (0..layers * c).map(|v| (v / c) as i64 - r).collect();
    let frontier = VertexSet::from_mask(&layer_of.iter().map(|&i| mj > 0 && r - i.abs() < mj).collect::<Vec<_>>());
    Ok(WindowGraph {
        graph,
        cell_of: (0..layers * c).map(|v| v % c).collect(),
        layer_of,
        frontier,
        radius: l,
        cell_size: c,
    })
}

/// The cyclic quotient on `modulus` layers: a finite graph covered by the
/// periodic one. Errors if wrapping would create loops or parallel edges.
pub fn periodic_wrap(p: &PeriodicPresentation, modulus: usize) -> Result<Graph> {
    if modulus < 3 || modulus <= 2 * p.max_jump() {
        return Err(Error::InvalidParameters(format!(
            "wrap modulus {modulus} must exceed twice the largest jump {}",
            p.max_jump()
        )));
    }
    let c = p.cell_size();
    let m = modulus as i64;
    let id = |u: Vertex, i: i64| (i.rem_euclid(m)) as usize * c + u;
    let mut edges = Vec::new();
    for i in 0..m {
        for (a, b) in p.cell.edges() {
            edges.push((id(a, i), id(b, i)));
        }
        for j in &p.jumps {
            edges.push((id(j.u, i), id(j.v, i + j.k)));
        }
    }
    Graph::from_edges(modulus * c, false, edges)
}

/// ℤ × K_2.
pub fn ladder() -> PeriodicPresentation {
    make_periodic(2, &[(0, 1)], &[(0, 0, 1), (1, 1, 1)]).expect("ladder")
}

/// The two-way-infinite path.
pub fn path() -> PeriodicPresentation {
    make_periodic(1, &[], &[(0, 0, 1)]).expect("path")
}

/// ℤ with jumps 1 and 2.
pub fn squared_path() -> PeriodicPresentation {
    make_periodic(1, &[], &[(0, 0, 1), (0, 0, 2)]).expect("squared path")
}

/// ℤ × K_2 with a 2-rung cell: prism-style period of length two.
pub fn prism_periodic() -> PeriodicPresentation {
    // cell: rungs (0,1) and (2,3); 0-2 and 1-3 inside the cell, then on to
    // the next cell.
    make_periodic(4, &[(0, 1), (2, 3), (0, 2), (1, 3)], &[(2, 0, 1), (3, 1, 1)]).expect("prism")
}

/// The two-ended Type 2 graph used as the `figure2` family.
///
/// Cell `{a = 0, b = 1}` with the rung `a b`; each colour class is a path
/// (`a_i a_{i+1}`, `b_i b_{i+1}`) and `a_i` is also joined to `b_{i+1}` and
/// `b_{i+3}`. The cross offsets `{0, 1, 3}` are not symmetric, so no
/// end-preserving automorphism swaps colours, while `a_i -> b_{-i}`,
/// `b_i -> a_{-i}` is a reflection: vertex-transitive with two shift orbits.
pub fn figure2() -> PeriodicPresentation {
    make_periodic(2, &[(0, 1)], &[(0, 0, 1), (1, 1, 1), (0, 1, 1), (0, 1, 3)]).expect("figure2")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_examples() {
        assert_eq!(ladder().degree(0), 3);
        assert_eq!(path().degree(0), 2);
        assert_eq!(squared_path().degree(0), 4);
        assert_eq!(prism_periodic().degree(0), 3);
        assert!((0..2).all(|u| figure2().degree(u) == 5));
        assert!(make_periodic(1, &[], &[(0, 0, 1), (0, 0, -1)]).is_err());
        assert!(make_periodic(2, &[], &[(0, 1, 2), (1, 0, -2)]).is_err());
        assert!(make_periodic(1, &[], &[(0, 0, 0)]).is_err());
    }

    #[test]
    fn window_examples() {
        let w = window(&ladder(), 5).unwrap();
        assert_eq!(w.graph.n(), 22);
        assert_eq!(w.frontier.len(), 4);
        assert!(w.frontier.iter().all(|v| w.layer_of[v].abs() == 5));

        let w = window(&path(), 3).unwrap();
        assert_eq!((w.graph.n(), w.graph.edge_count()), (7, 6));
        assert_eq!(w.frontier.as_slice(), &[0, 6]);

        let w = window(&squared_path(), 3).unwrap();
        let layers: Vec<i64> = w.frontier.iter().map(|v| w.layer_of[v]).collect();
        assert_eq!(layers, vec![-3, -2, 2, 3]);
    }

    #[test]
    fn interior_degrees_match_infinite_graph() {
        for p in [ladder(), squared_path(), prism_periodic(), figure2()] {
            let w = window(&p, 6).unwrap();
            for v in 0..w.graph.n() {
                if !w.is_frontier(v) {
                    assert_eq!(w.graph.degree(v), p.degree(w.cell_of[v]));
                }
            }
        }
    }

    #[test]
    fn wrap_is_regular() {
        let g = periodic_wrap(&figure2(), 11).unwrap();
        assert_eq!(g.regular_degree(), Some(5));
        assert!(periodic_wrap(&squared_path(), 4).is_err());
    }
}
