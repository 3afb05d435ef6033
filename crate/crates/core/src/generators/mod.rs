//! Graph families used as test substrates, with automorphism evidence.

mod group;
mod periodic;

use std::str::FromStr;

pub use group::GroupTable;
pub use periodic::{
    figure2, ladder, make_periodic, path, periodic_wrap, prism_periodic, squared_path, window, Jump,
    PeriodicPresentation, WindowGraph,
};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::symmetry::Permutation;

/// A constructed graph with the evidence its constructor can attach.
#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    /// Automorphisms of `graph`; transitive for vertex-transitive families.
    pub gens: Vec<Permutation>,
    /// Vertices whose neighbourhoods are truncated (windows, tree balls).
    pub frontier: Option<VertexSet>,
    /// Layer index per vertex for periodic windows.
    pub layer_of: Option<Vec<i64>>,
}

impl Generated {
    fn finite(graph: Graph, gens: Vec<Permutation>) -> Generated {
        Generated {
            graph,
            gens,
            frontier: None,
            layer_of: None,
        }
    }
}

/// The circulant on ℤ_n. Attached generators: the rotation, plus the
/// reflection `i -> -i` when undirected.
pub fn make_circulant(n: usize, connection: &[i64], directed: bool) -> Result<Generated> {
    if n < 3 {
        return Err(Error::InvalidParameters("circulant needs n >= 3".into()));
    }
    if connection.is_empty() {
        return Err(Error::InvalidParameters("empty connection set".into()));
    }
    let m = n as i64;
    let mut res: Vec<usize> = connection.iter().map(|&s| s.rem_euclid(m) as usize).collect();
    res.sort_unstable();
    res.dedup();
    if res.contains(&0) {
        return Err(Error::InvalidParameters("connection set contains 0 mod n".into()));
    }
    if !directed {
        if let Some(&s) = res.iter().find(|&&s| res.binary_search(&(n - s)).is_err()) {
            return Err(Error::InvalidParameters(format!(
                "undirected circulant needs a symmetric connection set; {} is missing",
                n - s
            )));
        }
    }
    let arcs = (0..n).flat_map(|i| res.iter().map(move |&s| (i, (i + s) % n)));
    let graph = Graph::from_arcs_merged(n, directed, arcs)?;
    let mut gens = vec![Permutation::from_fn(n, |i| (i + 1) % n)];
    if !directed {
        gens.push(Permutation::from_fn(n, |i| (n - i) % n));
    }
    Ok(Generated::finite(graph, gens))
}

/// Cay(tbl, C) with arcs `x -> a·x`. Right multiplications by a
/// generating set are attached as automorphisms.
pub fn make_cayley(tbl: &GroupTable, connection: &[usize], directed: bool) -> Result<Generated> {
    let mut conn = connection.to_vec();
    conn.sort_unstable();
    conn.dedup();
    for &a in &conn {
        tbl.check_element(a)?;
    }
    if conn.contains(&tbl.identity()) {
        return Err(Error::InvalidParameters("connection set contains the identity (loops)".into()));
    }
    if !directed {
        if let Some(&a) = conn.iter().find(|&&a| conn.binary_search(&tbl.inverse(a)).is_err()) {
            return Err(Error::InvalidParameters(format!(
                "undirected Cayley graph needs an inverse-closed connection set; inverse of {a} missing"
            )));
        }
    }
    let n = tbl.order();
    let arcs = (0..n).flat_map(|x| conn.iter().map(move |&a| (x, tbl.mul(a, x))));
    let graph = Graph::from_arcs_merged(n, directed, arcs)?;
    let gens = tbl
        .generating_set()
        .into_iter()
        .map(|g| Permutation::from_fn(n, |x| tbl.mul(x, g)))
        .collect();
    Ok(Generated::finite(graph, gens))
}

/// Named families accepted by [`make_family`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Prism,
    Torus,
    Petersen,
    Figure2,
    TreeBall,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Ok(match s {
            "prism" => Family::Prism,
            "torus" => Family::Torus,
            "petersen" => Family::Petersen,
            "figure2" => Family::Figure2,
            "tree_ball" | "tree-ball" => Family::TreeBall,
            other => return Err(Error::InvalidParameters(format!("unknown family {other:?}"))),
        })
    }
}

/// Default window radius for `figure2` when no parameter is given.
pub const FIGURE2_DEFAULT_RADIUS: usize = 8;

fn want(params: &[usize], k: usize, name: &str) -> Result<()> {
    if params.len() != k {
        return Err(Error::InvalidParameters(format!("{name} takes {k} parameter(s), got {}", params.len())));
    }
    Ok(())
}

pub fn make_family(family: Family, params: &[usize]) -> Result<Generated> {
    match family {
        Family::Prism => {
            want(params, 1, "prism")?;
            prism(params[0])
        }
        Family::Torus => {
            want(params, 2, "torus")?;
            torus(params[0], params[1])
        }
        Family::Petersen => {
            want(params, 0, "petersen")?;
            Ok(petersen())
        }
        Family::TreeBall => {
            want(params, 2, "tree_ball")?;
            tree_ball(params[0], params[1])
        }
        Family::Figure2 => {
            if params.len() > 1 {
                return Err(Error::InvalidParameters("figure2 takes at most one parameter".into()));
            }
            let l = params.first().copied().unwrap_or(FIGURE2_DEFAULT_RADIUS);
            let w = window(&figure2(), l)?;
            Ok(Generated {
                graph: w.graph,
                gens: Vec::new(),
                frontier: Some(w.frontier),
                layer_of: Some(w.layer_of),
            })
        }
    }
}

/// C_n × K_2 with `(i, side)` at id `2i + side`.
pub fn prism(n: usize) -> Result<Generated> {
    if n < 3 {
        return Err(Error::InvalidParameters("prism needs n >= 3".into()));
    }
    let id = |i: usize, side: usize| 2 * (i % n) + side;
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((id(i, 0), id(i, 1)));
        edges.push((id(i, 0), id(i + 1, 0)));
        edges.push((id(i, 1), id(i + 1, 1)));
    }
    let graph = Graph::from_edges(2 * n, false, edges)?;
    let gens = vec![
        Permutation::from_fn(2 * n, |v| id(v / 2 + 1, v % 2)),
        Permutation::from_fn(2 * n, |v| id(n - v / 2, v % 2)),
        Permutation::from_fn(2 * n, |v| v ^ 1),
    ];
    Ok(Generated::finite(graph, gens))
}

/// C_m □ C_n with `(i, j)` at id `i*n + j`.
pub fn torus(m: usize, n: usize) -> Result<Generated> {
    if m < 3 || n < 3 {
        return Err(Error::InvalidParameters("torus needs both sides >= 3".into()));
    }
    let id = |i: usize, j: usize| (i % m) * n + (j % n);
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..n {
            edges.push((id(i, j), id(i + 1, j)));
            edges.push((id(i, j), id(i, j + 1)));
        }
    }
    let graph = Graph::from_edges(m * n, false, edges)?;
    let mut gens = vec![
        Permutation::from_fn(m * n, |v| id(v / n + 1, v % n)),
        Permutation::from_fn(m * n, |v| id(v / n, v % n + 1)),
        Permutation::from_fn(m * n, |v| id(m - v / n, v % n)),
        Permutation::from_fn(m * n, |v| id(v / n, n - v % n)),
    ];
    if m == n {
        gens.push(Permutation::from_fn(m * n, |v| id(v % n, v / n)));
    }
    Ok(Generated::finite(graph, gens))
}

/// The Petersen graph as the Kneser graph K(5,2), with S_5 generators.
pub fn petersen() -> Generated {
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let index = |a: usize, b: usize| {
        let (x, y) = if a < b { (a, b) } else { (b, a) };
        pairs.iter().position(|&p| p == (x, y)).expect("pair")
    };
    let mut edges = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate().skip(i + 1) {
            if a != c && a != d && b != c && b != d {
                edges.push((i, j));
            }
        }
    }
    let graph = Graph::from_edges(10, false, edges).expect("petersen");
    let lift = |s: [usize; 5]| Permutation::from_fn(10, |v| index(s[pairs[v].0], s[pairs[v].1]));
    let gens = vec![lift([1, 2, 3, 4, 0]), lift([1, 0, 2, 3, 4])];
    Generated::finite(graph, gens)
}

/// Ball of radius `r` around a vertex of the `d`-regular tree, in BFS
/// order; the leaves are the frontier.
pub fn tree_ball(d: usize, r: usize) -> Result<Generated> {
    if d < 2 {
        return Err(Error::InvalidParameters("tree degree must be >= 2".into()));
    }
    let mut edges = Vec::new();
    let mut level: Vec<usize> = vec![0];
    let mut next_id = 1usize;
    let mut depth_of = vec![0i64];
    for depth in 1..=r {
        let mut next = Vec::new();
        for &p in &level {
            let children = if p == 0 { d } else { d - 1 };
            for _ in 0..children {
                edges.push((p, next_id));
                next.push(next_id);
                depth_of.push(depth as i64);
                next_id += 1;
                if next_id > 50_000_000 {
                    return Err(Error::InvalidParameters("tree ball too large".into()));
                }
            }
        }
        level = next;
    }
    let graph = Graph::from_edges(next_id, false, edges)?;
    let frontier = VertexSet::new(next_id, level)?;
    Ok(Generated {
        graph,
        gens: Vec::new(),
        frontier: Some(frontier),
        layer_of: Some(depth_of),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::orbit_transitivity;

    fn transitive(g: &Generated) -> bool {
        orbit_transitivity(g.graph.n(), &g.gens, Some(&g.graph)).unwrap().transitive
    }

    #[test]
    fn circulant_examples() {
        let c6 = make_circulant(6, &[1, -1], false).unwrap();
        assert_eq!((c6.graph.edge_count(), c6.graph.regular_degree()), (6, Some(2)));
        let c8 = make_circulant(8, &[1, -1, 2, -2], false).unwrap();
        assert_eq!((c8.graph.edge_count(), c8.graph.regular_degree()), (16, Some(4)));
        let z7 = make_circulant(7, &[1, 2], true).unwrap();
        assert!((0..7).all(|v| z7.graph.degree(v) == 2 && z7.graph.in_degree(v) == 2));
        assert!(make_circulant(7, &[1, 2], false).is_err());
        for g in [c6, c8, z7] {
            assert!(transitive(&g));
        }
    }

    #[test]
    fn cayley_examples() {
        let z5 = GroupTable::cyclic(5).unwrap();
        let c5 = make_cayley(&z5, &[1, 4], false).unwrap();
        assert_eq!(c5.graph, make_circulant(5, &[1, -1], false).unwrap().graph);
        let s3 = GroupTable::symmetric(3).unwrap();
        let g = make_cayley(&s3, &s3.elements_of_order(2), false).unwrap();
        assert_eq!(g.graph.regular_degree(), Some(3));
        assert!(crate::graph::is_connected(&g.graph));
        assert!(transitive(&g));
        assert!(make_cayley(&z5, &[0, 1, 4], false).is_err());
    }

    #[test]
    fn family_examples() {
        let p = make_family(Family::Prism, &[6]).unwrap();
        assert_eq!((p.graph.n(), p.graph.edge_count(), p.graph.regular_degree()), (12, 18, Some(3)));
        let t = make_family(Family::Torus, &[4, 4]).unwrap();
        assert_eq!((t.graph.n(), t.graph.regular_degree()), (16, Some(4)));
        let tb = make_family(Family::TreeBall, &[3, 2]).unwrap();
        assert_eq!((tb.graph.n(), tb.frontier.as_ref().unwrap().len()), (10, 6));
        let pet = make_family(Family::Petersen, &[]).unwrap();
        assert_eq!((pet.graph.n(), pet.graph.edge_count()), (10, 15));
        for g in [p, t, pet] {
            assert!(transitive(&g));
        }
        assert!(make_family(Family::Torus, &[4]).is_err());
        assert!("hypercube".parse::<Family>().is_err());
    }

    #[test]
    fn prism_edge_count_formula() {
        for n in 3..20 {
            let p = prism(n).unwrap();
            assert_eq!(p.graph.edge_count(), 3 * n);
            assert_eq!(p.graph.regular_degree(), Some(3));
        }
    }
}
