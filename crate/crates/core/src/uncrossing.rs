//! The nine-region decomposition of two crossing sets and the three
//! uncrossing inequalities.

use crate::error::{Error, Result};
use crate::graph::{boundary, Graph, VertexSet};

/// The regions cut out by A₁, ∂A₁, A₂, ∂A₂.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionDecomposition {
    pub p: VertexSet,
    pub q: VertexSet,
    pub s: VertexSet,
    pub t: VertexSet,
    pub u: VertexSet,
    pub w: VertexSet,
    pub x: VertexSet,
    pub y: VertexSet,
    pub z: VertexSet,
}

impl RegionDecomposition {
    /// The decomposition with the roles of A₁ and A₂ exchanged.
    pub fn swapped(&self) -> RegionDecomposition {
        RegionDecomposition {
            p: self.p.clone(),
            q: self.t.clone(),
            s: self.x.clone(),
            t: self.q.clone(),
            u: self.u.clone(),
            w: self.y.clone(),
            x: self.s.clone(),
            y: self.w.clone(),
            z: self.z.clone(),
        }
    }

    /// P ∪ Q ∪ S ∪ T ∪ X, which equals A₁ ∪ A₂.
    pub fn union_side(&self) -> VertexSet {
        self.p.union(&self.q).union(&self.s).union(&self.t).union(&self.x)
    }

    fn named(&self) -> [(&'static str, &VertexSet); 9] {
        [
            ("P", &self.p),
            ("Q", &self.q),
            ("S", &self.s),
            ("T", &self.t),
            ("U", &self.u),
            ("W", &self.w),
            ("X", &self.x),
            ("Y", &self.y),
            ("Z", &self.z),
        ]
    }
}

/// Regions that cannot reach the second group through an (out-)edge.
const FORBIDDEN: [([&str; 3], [&str; 3]); 2] = [(["P", "Q", "S"], ["X", "Y", "Z"]), (["P", "T", "X"], ["S", "W", "Z"])];

fn forbidden(from: &str, to: &str) -> bool {
    FORBIDDEN.iter().any(|(a, b)| a.contains(&from) && b.contains(&to))
}

pub fn regions(g: &Graph, a1: &VertexSet, a2: &VertexSet) -> Result<RegionDecomposition> {
    g.check_set(a1)?;
    g.check_set(a2)?;
    let b1 = boundary(g, a1)?;
    let b2 = boundary(g, a2)?;
    let c1 = a1.union(&b1);
    let c2 = a2.union(&b2);
    let n = g.n();
    let d = RegionDecomposition {
        p: a1.intersection(a2),
        q: b1.intersection(a2),
        t: b2.intersection(a1),
        u: b1.intersection(&b2),
        s: a2.difference(&c1),
        w: b2.difference(&c1),
        x: a1.difference(&c2),
        y: b1.difference(&c2),
        z: VertexSet::full(n).difference(&c1.union(&c2)),
    };
    let mut label = vec![""; n];
    for (name, set) in d.named() {
        for v in set {
            if !label[v].is_empty() {
                return Err(Error::Inconsistency(format!("vertex {v} in regions {} and {name}", label[v])));
            }
            label[v] = name;
        }
    }
    if let Some(v) = label.iter().position(|l| l.is_empty()) {
        return Err(Error::Inconsistency(format!("vertex {v} in no region")));
    }
    for (u, v) in g.edges() {
        let (a, b) = (label[u], label[v]);
        if forbidden(a, b) || (!g.is_directed() && forbidden(b, a)) {
            return Err(Error::Inconsistency(format!("edge {u}-{v} joins regions {a} and {b}")));
        }
    }
    Ok(d)
}

/// One side-by-side inequality `lhs <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inequality {
    pub lhs: usize,
    pub rhs: usize,
}

impl Inequality {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }
}

/// The third inequality, read as `2|Q ∪ U| >= k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfBound {
    pub k: usize,
    pub q_union_u: usize,
}

impl HalfBound {
    pub fn holds(&self) -> bool {
        2 * self.q_union_u >= self.k
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncrossingReport {
    pub regions: RegionDecomposition,
    /// |∂P| + |∂(A₁ ∪ A₂)| ≤ |∂A₁| + |∂A₂|
    pub first: Inequality,
    /// |∂S| + |∂X| ≤ |∂A₁| + |∂A₂|
    pub second: Inequality,
    /// `None` unless |∂A₂| = |∂P| = |∂S|.
    pub third: Option<HalfBound>,
}

impl UncrossingReport {
    pub fn all_hold(&self) -> bool {
        self.first.holds() && self.second.holds() && self.third.is_none_or(|h| h.holds())
    }
}

pub fn uncrossing_report(g: &Graph, a1: &VertexSet, a2: &VertexSet) -> Result<UncrossingReport> {
    let r = regions(g, a1, a2)?;
    let bd = |s: &VertexSet| boundary(g, s).map(|b| b.len());
    let rhs = bd(a1)? + bd(a2)?;
    let k = bd(a2)?;
    let (bp, bs) = (bd(&r.p)?, bd(&r.s)?);
    let first = Inequality {
        lhs: bp + bd(&r.union_side())?,
        rhs,
    };
    let second = Inequality {
        lhs: bs + bd(&r.x)?,
        rhs,
    };
    let third = (k == bp && k == bs).then(|| HalfBound {
        k,
        q_union_u: r.q.len() + r.u.len(),
    });
    Ok(UncrossingReport {
        regions: r,
        first,
        second,
        third,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, false, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn range(n: usize, r: std::ops::Range<usize>) -> VertexSet {
        VertexSet::new(n, r).unwrap()
    }

    #[test]
    fn crossing_intervals_on_c12() {
        let g = cycle(12);
        let rep = uncrossing_report(&g, &range(12, 0..6), &range(12, 3..9)).unwrap();
        let r = &rep.regions;
        assert_eq!(r.p.as_slice(), &[3, 4, 5]);
        assert_eq!(r.q.as_slice(), &[6]);
        assert_eq!(r.s.as_slice(), &[7, 8]);
        assert_eq!(r.t.as_slice(), &[2]);
        assert!(r.u.is_empty());
        assert_eq!(r.w.as_slice(), &[9]);
        assert_eq!(r.x.as_slice(), &[0, 1]);
        assert_eq!(r.y.as_slice(), &[11]);
        assert_eq!(r.z.as_slice(), &[10]);
        assert_eq!(rep.first, Inequality { lhs: 4, rhs: 4 });
        assert_eq!(rep.second, Inequality { lhs: 4, rhs: 4 });
        assert_eq!(rep.third, Some(HalfBound { k: 2, q_union_u: 1 }));
        assert!(rep.all_hold());
    }

    #[test]
    fn identical_sets() {
        let g = cycle(12);
        let a = range(12, 0..6);
        let rep = uncrossing_report(&g, &a, &a).unwrap();
        assert_eq!(rep.regions.p, a);
        assert_eq!(rep.regions.u.as_slice(), &[6, 11]);
        assert!(rep.regions.q.is_empty() && rep.regions.s.is_empty() && rep.regions.x.is_empty());
        assert_eq!(rep.first, Inequality { lhs: 4, rhs: 4 });
    }

    #[test]
    fn far_apart_sets() {
        let g = cycle(20);
        let rep = uncrossing_report(&g, &range(20, 0..2), &range(20, 10..12)).unwrap();
        let r = &rep.regions;
        assert!(r.p.is_empty() && r.q.is_empty() && r.t.is_empty() && r.u.is_empty());
        assert_eq!(r.x.as_slice(), &[0, 1]);
        assert_eq!(r.s.as_slice(), &[10, 11]);
        assert_eq!(rep.second, Inequality { lhs: 4, rhs: 4 });
        assert_eq!(regions(&g, &range(20, 10..12), &range(20, 0..2)).unwrap(), r.swapped());
    }
}
