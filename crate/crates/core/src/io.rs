//! Line-oriented text formats. Blank lines and lines starting with `#` are
//! ignored; errors carry 1-based line numbers.

use std::collections::HashSet;
use std::fmt::Write;

use crate::covers::VoltageMap;
use crate::error::{Error, Result};
use crate::generators::{make_periodic, GroupTable, PeriodicPresentation};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::symmetry::Permutation;
use crate::treewidth::TreeDecomposition;

/// Non-empty, non-comment lines with their line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i, l.split_whitespace().collect()))
}

fn num<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse().map_err(|_| Error::parse(line, format!("expected a number, found `{tok}`")))
}

fn header<'a>(it: &mut impl Iterator<Item = (usize, Vec<&'a str>)>, word: &str, arity: usize) -> Result<(usize, Vec<&'a str>)> {
    let (line, toks) = it.next().ok_or_else(|| Error::parse(1, format!("missing `{word}` header")))?;
    if toks.first() != Some(&word) || toks.len() != arity + 1 {
        return Err(Error::parse(line, format!("expected `{word}` header with {arity} fields")));
    }
    Ok((line, toks[1..].to_vec()))
}

fn vertex(line: usize, tok: &str, n: usize) -> Result<Vertex> {
    let v: Vertex = num(line, tok)?;
    if v >= n {
        return Err(Error::parse(line, format!("vertex {v} out of range 0..{n}")));
    }
    Ok(v)
}

/// `graph <n> <m> <undirected|directed>` then `m` lines `u v`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut it = lines(text);
    let (hl, h) = header(&mut it, "graph", 3)?;
    let n: usize = num(hl, h[0])?;
    let m: usize = num(hl, h[1])?;
    let directed = match h[2] {
        "undirected" => false,
        "directed" => true,
        other => return Err(Error::parse(hl, format!("unknown orientation `{other}`"))),
    };
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(m);
    for (line, toks) in it.by_ref().take(m) {
        if toks.len() != 2 {
            return Err(Error::parse(line, "expected `u v`"));
        }
        let (u, v) = (vertex(line, toks[0], n)?, vertex(line, toks[1], n)?);
        if u == v {
            return Err(Error::parse(line, format!("self-loop at {u}")));
        }
        let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
        if !seen.insert(key) {
            return Err(Error::parse(line, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::parse(hl, format!("header promises {m} edges, found {}", edges.len())));
    }
    if let Some((line, _)) = it.next() {
        return Err(Error::parse(line, "trailing content"));
    }
    Graph::from_edges(n, directed, edges)
}

pub fn write_graph(g: &Graph) -> String {
    let kind = if g.is_directed() { "directed" } else { "undirected" };
    let mut out = format!("graph {} {} {kind}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// One line of whitespace-separated ids; an empty file is the empty set.
pub fn parse_set(text: &str, n: usize) -> Result<VertexSet> {
    let mut ids = Vec::new();
    for (line, toks) in lines(text) {
        for t in toks {
            ids.push(vertex(line, t, n)?);
        }
    }
    VertexSet::new(n, ids)
}

pub fn write_set(s: &VertexSet) -> String {
    let ids: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    ids.join(" ") + "\n"
}

/// One permutation per line, `n` images each.
pub fn parse_perms(text: &str, n: usize) -> Result<Vec<Permutation>> {
    lines(text)
        .map(|(line, toks)| {
            if toks.len() != n {
                return Err(Error::parse(line, format!("expected {n} images, found {}", toks.len())));
            }
            let images = toks.iter().map(|t| vertex(line, t, n)).collect::<Result<Vec<_>>>()?;
            Permutation::new(images).map_err(|e| Error::parse(line, e.to_string()))
        })
        .collect()
}

pub fn write_perms(perms: &[Permutation]) -> String {
    perms
        .iter()
        .map(|p| p.images().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

/// `periodic <c> <m> <j>`, then `m` cell edges `u v`, then `j` jumps `u v k`.
pub fn parse_periodic(text: &str) -> Result<PeriodicPresentation> {
    let mut it = lines(text);
    let (hl, h) = header(&mut it, "periodic", 3)?;
    let c: usize = num(hl, h[0])?;
    let m: usize = num(hl, h[1])?;
    let j: usize = num(hl, h[2])?;
    let mut edges = Vec::with_capacity(m);
    let mut jumps = Vec::with_capacity(j);
    for (line, toks) in it.by_ref().take(m + j) {
        if edges.len() < m {
            if toks.len() != 2 {
                return Err(Error::parse(line, "expected cell edge `u v`"));
            }
            edges.push((vertex(line, toks[0], c)?, vertex(line, toks[1], c)?));
        } else {
            if toks.len() != 3 {
                return Err(Error::parse(line, "expected jump `u v k`"));
            }
            jumps.push((vertex(line, toks[0], c)?, vertex(line, toks[1], c)?, num(line, toks[2])?));
        }
    }
    if edges.len() + jumps.len() != m + j {
        return Err(Error::parse(hl, "fewer lines than the header promises"));
    }
    if let Some((line, _)) = it.next() {
        return Err(Error::parse(line, "trailing content"));
    }
    make_periodic(c, &edges, &jumps)
}

pub fn write_periodic(p: &PeriodicPresentation) -> String {
    let mut out = format!("periodic {} {} {}\n", p.cell_size(), p.cell().edge_count(), p.jumps().len());
    for (u, v) in p.cell().edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    for j in p.jumps() {
        let _ = writeln!(out, "{} {} {}", j.u, j.v, j.k);
    }
    out
}

/// Lines `u v k` meaning μ(u,v) = k; unlisted edges carry 0.
pub fn parse_voltage(text: &str, base: &Graph) -> Result<VoltageMap> {
    let mut arcs = Vec::new();
    for (line, toks) in lines(text) {
        if toks.len() != 3 {
            return Err(Error::parse(line, "expected `u v k`"));
        }
        let (u, v) = (vertex(line, toks[0], base.n())?, vertex(line, toks[1], base.n())?);
        if !base.has_edge(u, v) {
            return Err(Error::parse(line, format!("{u} {v} is not an edge")));
        }
        arcs.push((u, v, num(line, toks[2])?));
    }
    VoltageMap::new(base, &arcs)
}

pub fn write_voltage(mu: &VoltageMap) -> String {
    mu.arcs().map(|(u, v, k)| format!("{u} {v} {k}\n")).collect()
}

/// `td <b> <n>`, then `b` lines `bag <i> v…`, then `b − 1` lines `tedge i j`.
pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    let mut it = lines(text);
    let (hl, h) = header(&mut it, "td", 2)?;
    let b: usize = num(hl, h[0])?;
    let n: usize = num(hl, h[1])?;
    let mut bags: Vec<Option<VertexSet>> = vec![None; b];
    let mut edges = Vec::new();
    for (line, toks) in it {
        match toks[0] {
            "bag" if toks.len() >= 2 => {
                let i = vertex(line, toks[1], b)?;
                if bags[i].is_some() {
                    return Err(Error::parse(line, format!("bag {i} given twice")));
                }
                let ids = toks[2..].iter().map(|t| vertex(line, t, n)).collect::<Result<Vec<_>>>()?;
                bags[i] = Some(VertexSet::new(n, ids)?);
            }
            "tedge" if toks.len() == 3 => edges.push((vertex(line, toks[1], b)?, vertex(line, toks[2], b)?)),
            _ => return Err(Error::parse(line, "expected `bag i v…` or `tedge i j`")),
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, bag)| bag.ok_or_else(|| Error::parse(hl, format!("bag {i} missing"))))
        .collect::<Result<Vec<_>>>()?;
    if edges.len() + 1 != b {
        return Err(Error::parse(hl, format!("{} tree edges for {b} bags", edges.len())));
    }
    let tree = Graph::from_edges(b, false, edges)?;
    Ok(TreeDecomposition::new(tree, bags))
}

pub fn write_td(td: &TreeDecomposition) -> String {
    let n = td.bags.first().map_or(0, |b| b.universe());
    let mut out = format!("td {} {n}\n", td.bags.len());
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(out, "bag {i}");
        for v in bag {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    for (i, j) in td.tree.edges() {
        let _ = writeln!(out, "tedge {i} {j}");
    }
    out
}

/// `group <n>` then `n` rows of the multiplication table.
pub fn parse_group(text: &str) -> Result<GroupTable> {
    let mut it = lines(text);
    let (hl, h) = header(&mut it, "group", 1)?;
    let n: usize = num(hl, h[0])?;
    let mut rows = Vec::with_capacity(n);
    for (line, toks) in it {
        if toks.len() != n {
            return Err(Error::parse(line, format!("expected {n} entries")));
        }
        rows.push(toks.iter().map(|t| vertex(line, t, n)).collect::<Result<Vec<_>>>()?);
    }
    if rows.len() != n {
        return Err(Error::parse(hl, format!("expected {n} rows, found {}", rows.len())));
    }
    GroupTable::from_table(rows)
}

pub fn write_group(t: &GroupTable) -> String {
    let n = t.order();
    let mut out = format!("group {n}\n");
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| t.mul(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
