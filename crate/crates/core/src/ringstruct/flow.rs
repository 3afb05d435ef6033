//! Unit vertex-capacity max-flow for minimum vertex cuts.

use std::collections::VecDeque;

use crate::graph::{Graph, Vertex};

const INF: u32 = u32::MAX / 4;

struct Arc {
    to: usize,
    cap: u32,
}

struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    /// BFS tree of the residual network; `None` entries are unreached.
    fn residual_bfs(&self, s: usize) -> Vec<Option<usize>> {
        let mut via = vec![None; self.out.len()];
        via[s] = Some(usize::MAX);
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &a in &self.out[x] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && via[arc.to].is_none() {
                    via[arc.to] = Some(a);
                    q.push_back(arc.to);
                }
            }
        }
        via
    }
}

/// Result of [`min_vertex_cut`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct VertexCut {
    pub value: usize,
    /// Non-terminal vertices forming a minimum separator.
    pub cut: Vec<Vertex>,
}

/// Minimum number of non-terminal vertices meeting every path from a source
/// to a sink. `None` if some source is adjacent to (or is) a sink.
pub(crate) fn min_vertex_cut(g: &Graph, source: &[bool], sink: &[bool]) -> Option<VertexCut> {
    let n = g.n();
    if (0..n).any(|v| source[v] && (sink[v] || g.neighbors(v).iter().any(|&w| sink[w]))) {
        return None;
    }
    let (s, t) = (2 * n, 2 * n + 1);
    let mut net = Network::new(2 * n + 2);
    for v in 0..n {
        let terminal = source[v] || sink[v];
        net.add(2 * v, 2 * v + 1, if terminal { INF } else { 1 });
        for &w in g.neighbors(v) {
            net.add(2 * v + 1, 2 * w, INF);
        }
        if source[v] {
            net.add(s, 2 * v, INF);
        }
        if sink[v] {
            net.add(2 * v + 1, t, INF);
        }
    }
    let mut value = 0;
    loop {
        let via = net.residual_bfs(s);
        if via[t].is_none() {
            let cut = (0..n)
                .filter(|&v| via[2 * v].is_some() && via[2 * v + 1].is_none())
                .collect();
            return Some(VertexCut { value, cut });
        }
        let mut x = t;
        while x != s {
            let a = via[x].expect("on path");
            net.arcs[a].cap -= 1;
            net.arcs[a ^ 1].cap += 1;
            x = net.arcs[a ^ 1].to;
        }
        value += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_needs_two() {
        let g = Graph::from_edges(8, false, (0..8).map(|i| (i, (i + 1) % 8))).unwrap();
        let mut src = vec![false; 8];
        let mut snk = vec![false; 8];
        src[0] = true;
        snk[4] = true;
        let c = min_vertex_cut(&g, &src, &snk).unwrap();
        assert_eq!(c.value, 2);
        assert_eq!(c.cut.len(), 2);
        snk[1] = true;
        assert_eq!(min_vertex_cut(&g, &src, &snk), None);
    }
}
