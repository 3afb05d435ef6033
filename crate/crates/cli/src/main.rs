use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use vtsep::bounds::{self, Side};
use vtsep::covers::{self, VoltageMap};
use vtsep::generators::{self, Family, GroupTable, PeriodicPresentation};
use vtsep::graph::{self, Graph, VertexSet};
use vtsep::ringstruct::{self, periodic};
use vtsep::symmetry::{self, Permutation};
use vtsep::treewidth;
use vtsep::tubes::{self, TubeCertificate};
use vtsep::uncrossing;
use vtsep::verify::{self, Case, Cor19Outcome, Element, GrowthInput, ProductGroup};
use vtsep::{io, Error};

#[derive(Parser)]
#[command(name = "vtsep", version, about = "Small separations in vertex-transitive graphs")]
struct Cli {
    /// Seed for sampled enumerations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Work budget for exhaustive searches.
    #[arg(long, global = true, default_value_t = 50_000_000)]
    budget: u64,
    /// Tab-separated output with a single header line.
    #[arg(long, global = true)]
    tsv: bool,
    /// Window radius for covers and periodic windows.
    #[arg(long = "window", global = true, default_value_t = 12)]
    window: usize,
    /// Largest boundary size scanned.
    #[arg(long, global = true, default_value_t = 3)]
    kmax: usize,
    /// Largest ring span searched.
    #[arg(long, global = true, default_value_t = 4)]
    tmax: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a graph, periodic presentation or group table.
    Gen {
        /// circulant, cayley, prism, torus, petersen, tree_ball, figure2,
        /// ladder, path, squared-path, prism-periodic, figure2-periodic,
        /// group-cyclic, group-dihedral, group-symmetric
        family: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<String>,
        #[arg(long)]
        directed: bool,
        /// Output file (stdout if absent).
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also write the known automorphism generators here.
        #[arg(long)]
        gens: Option<PathBuf>,
    },
    /// ∂A, δA and, on digraphs, ∂⁺A and ∂⁻A.
    Boundary { graph: PathBuf, set: PathBuf },
    /// depth(A) and diam(A).
    Depth { graph: PathBuf, set: PathBuf },
    /// Ball sizes b(0..=n) around a vertex.
    Growth {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        center: usize,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Automorphism group by backtracking.
    Aut {
        graph: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// All block systems of the group generated by the permutations.
    Blocks { graph: PathBuf, gens: PathBuf },
    /// Quotient by the minimal block system containing u and v.
    Quotient {
        graph: PathBuf,
        gens: PathBuf,
        u: usize,
        v: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Region decomposition and the three uncrossing inequalities.
    Uncross { graph: PathBuf, a1: PathBuf, a2: PathBuf },
    /// Find and verify an (s,t)-tube structure on A.
    Tube { graph: PathBuf, set: PathBuf, s: usize, t: usize },
    /// Merge two (s,t)-tubes.
    Merge {
        graph: PathBuf,
        a1: PathBuf,
        a2: PathBuf,
        s: usize,
        t: usize,
    },
    /// Detect ring-like structure on a graph (with generators) or a periodic presentation.
    Ring {
        input: PathBuf,
        gens: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        max_period: usize,
    },
    /// κ∞ of a periodic presentation.
    Kappa { periodic: PathBuf },
    /// Shortest ring interval covering A.
    Interval { graph: PathBuf, gens: PathBuf, set: PathBuf },
    /// Window of the voltage cover; with --tube, the layer decomposition check.
    Cover {
        graph: PathBuf,
        voltage: Option<PathBuf>,
        /// Tube set A; L and R are found with --s and --t.
        #[arg(long)]
        tube: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Mader, Watkins, Hamidoune and Babai–Szegedy checks.
    Bounds { graph: PathBuf, gens: Option<PathBuf> },
    /// Product set of two subsets of a group table.
    Sumset {
        group: PathBuf,
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        right: bool,
    },
    /// Minimum of |∂A|·depth(A)/|A| over connected sets.
    Conjecture { graph: PathBuf },
    /// Verify a tree decomposition, or search one of width < k.
    Td {
        graph: PathBuf,
        td: Option<PathBuf>,
        #[arg(long)]
        search: Option<usize>,
    },
    /// Balanced separator from a tree decomposition of width < k.
    Balsep { graph: PathBuf, td: PathBuf, w: PathBuf, k: usize },
    /// Main dichotomy for one set, or a scan of small connected sets.
    VerifyMain {
        graph: PathBuf,
        gens: PathBuf,
        set: Option<PathBuf>,
    },
    /// Eulerian digraph form of the dichotomy.
    VerifyCor110 { graph: PathBuf, gens: PathBuf, set: PathBuf },
    /// Quadratic growth or ring-like structure.
    VerifyCor17 {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        center: usize,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Ring-like, large tree-width, or small degree and diameter.
    VerifyCor19 {
        graph: PathBuf,
        gens: PathBuf,
        k: usize,
        #[arg(long)]
        td: Option<PathBuf>,
    },
    /// Small doubling forces a cyclic or dihedral quotient.
    VerifyThm3 {
        /// `z`, `free:<rank>`, or a group table file.
        group: String,
        b: PathBuf,
        a: PathBuf,
    },
}

const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;
const INCONCLUSIVE: u8 = 3;

/// One command's output: a table plus an optional human rendering.
struct Report {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    human: Option<Vec<String>>,
    status: u8,
}

impl Report {
    fn new(columns: &[&'static str]) -> Self {
        Report {
            columns: columns.to_vec(),
            rows: Vec::new(),
            human: None,
            status: PASS,
        }
    }

    fn row(mut self, values: Vec<String>) -> Self {
        self.rows.push(values);
        self
    }

    fn status(mut self, status: u8) -> Self {
        self.status = status;
        self
    }

    fn print(&self, tsv: bool) {
        if self.columns.is_empty() {
            return;
        }
        if tsv {
            println!("{}", self.columns.join("\t"));
            for r in &self.rows {
                println!("{}", r.join("\t"));
            }
        } else if let Some(lines) = &self.human {
            for l in lines {
                println!("{l}");
            }
        } else {
            for r in &self.rows {
                let parts: Vec<String> = self.columns.iter().zip(r).map(|(c, v)| format!("{c}={v}")).collect();
                println!("{}", parts.join(" "));
            }
        }
    }
}

fn ids(s: &VertexSet) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    if v.is_empty() {
        "-".into()
    } else {
        v.join(",")
    }
}

fn yn(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "-".into(), |v| v.to_string())
}

type Res<T> = std::result::Result<T, CliError>;

/// Errors carry their exit code.
struct CliError {
    code: u8,
    msg: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if e.is_budget() { INCONCLUSIVE } else { USAGE };
        CliError { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError { code: USAGE, msg: msg.into() }
}

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: vtsep::Result<T>) -> Res<T> {
    r.map_err(|e| {
        let mut c = CliError::from(e);
        c.msg = format!("{}: {}", path.display(), c.msg);
        c
    })
}

fn load_graph(p: &Path) -> Res<Graph> {
    with_path(p, io::parse_graph(&read(p)?))
}

fn load_set(p: &Path, n: usize) -> Res<VertexSet> {
    with_path(p, io::parse_set(&read(p)?, n))
}

fn load_perms(p: &Path, n: usize) -> Res<Vec<Permutation>> {
    with_path(p, io::parse_perms(&read(p)?, n))
}

fn load_periodic(p: &Path) -> Res<PeriodicPresentation> {
    with_path(p, io::parse_periodic(&read(p)?))
}

enum Input {
    Graph(Graph),
    Periodic(PeriodicPresentation),
}

fn load_any(p: &Path) -> Res<Input> {
    let text = read(p)?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.starts_with("periodic") {
        Ok(Input::Periodic(with_path(p, io::parse_periodic(&text))?))
    } else {
        Ok(Input::Graph(with_path(p, io::parse_graph(&text))?))
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Res<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn nums<T: std::str::FromStr>(params: &[String]) -> Res<Vec<T>> {
    params
        .iter()
        .map(|s| s.parse().map_err(|_| usage(format!("bad parameter `{s}`"))))
        .collect()
}

fn gen(family: &str, params: &[String], directed: bool, out: &Option<PathBuf>, gens_out: &Option<PathBuf>) -> Res<Report> {
    let periodic = match family {
        "ladder" => Some(generators::ladder()),
        "path" => Some(generators::path()),
        "squared-path" => Some(generators::squared_path()),
        "prism-periodic" => Some(generators::prism_periodic()),
        "figure2-periodic" => Some(generators::figure2()),
        _ => None,
    };
    if let Some(p) = periodic {
        emit(out, &io::write_periodic(&p))?;
        return Ok(Report::new(&[]));
    }
    let table = match family {
        "group-cyclic" => Some(GroupTable::cyclic(one(params)?)?),
        "group-dihedral" => Some(GroupTable::dihedral(one(params)?)?),
        "group-symmetric" => Some(GroupTable::symmetric(one(params)?)?),
        _ => None,
    };
    if let Some(t) = table {
        emit(out, &io::write_group(&t))?;
        return Ok(Report::new(&[]));
    }
    let g = match family {
        "circulant" => {
            let v: Vec<i64> = nums(params)?;
            let (&n, conn) = v.split_first().ok_or_else(|| usage("circulant needs n and a connection set"))?;
            if n <= 0 {
                return Err(usage("circulant needs n > 0"));
            }
            generators::make_circulant(n as usize, conn, directed)?
        }
        "cayley" => {
            let (file, rest) = params.split_first().ok_or_else(|| usage("cayley needs a group file"))?;
            let p = Path::new(file);
            let t = with_path(p, io::parse_group(&read(p)?))?;
            generators::make_cayley(&t, &nums::<usize>(rest)?, directed)?
        }
        other => {
            let fam: Family = other.parse()?;
            generators::make_family(fam, &nums::<usize>(params)?)?
        }
    };
    emit(out, &io::write_graph(&g.graph))?;
    if let Some(p) = gens_out {
        fs::write(p, io::write_perms(&g.gens)).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    }
    Ok(Report::new(&[]))
}

fn one(params: &[String]) -> Res<usize> {
    match nums::<usize>(params)?.as_slice() {
        [n] => Ok(*n),
        _ => Err(usage("expected one numeric parameter")),
    }
}

fn find_gens(g: &Graph) -> Res<Vec<Permutation>> {
    Ok(symmetry::find_automorphisms(g, 10_000_000)?.gens)
}

fn run(cli: &Cli) -> Res<Report> {
    let budget = cli.budget;
    Ok(match &cli.cmd {
        Cmd::Gen {
            family,
            params,
            directed,
            out,
            gens,
        } => gen(family, params, *directed, out, gens)?,
        Cmd::Boundary { graph, set } => {
            let g = load_graph(graph)?;
            let a = load_set(set, g.n())?;
            let b = graph::boundary_profile(&g, &a)?;
            let mut r = Report::new(&["boundary", "size", "edge_cut", "out_boundary", "in_boundary"]).row(vec![
                ids(&b.vertex_boundary),
                b.vertex_boundary.len().to_string(),
                b.edge_cut_size.to_string(),
                ids(&b.out_boundary),
                ids(&b.in_boundary),
            ]);
            let mut h = vec![format!("boundary: {}", ids(&b.vertex_boundary)), format!("|boundary| = {}", b.vertex_boundary.len()), format!("|edge cut| = {}", b.edge_cut_size)];
            if g.is_directed() {
                h.push(format!("out-boundary: {}", ids(&b.out_boundary)));
                h.push(format!("in-boundary: {}", ids(&b.in_boundary)));
            }
            r.human = Some(h);
            r
        }
        Cmd::Depth { graph, set } => {
            let g = load_graph(graph)?;
            let a = load_set(set, g.n())?;
            let d = graph::depth(&g, &a)?;
            let diam = graph::diameter_of_set(&g, &a)?;
            Report::new(&["size", "depth", "diameter"]).row(vec![a.len().to_string(), d.to_string(), diam.to_string()])
        }
        Cmd::Growth { graph, center, n } => {
            let g = load_graph(graph)?;
            let b = graph::ball_growth(&g, *center, *n)?;
            let mut r = Report::new(&["n", "b"]);
            for (i, x) in b.iter().enumerate() {
                r = r.row(vec![i.to_string(), x.to_string()]);
            }
            r
        }
        Cmd::Aut { graph, out } => {
            let g = load_graph(graph)?;
            let aut = symmetry::find_automorphisms(&g, budget as usize)?;
            let orb = symmetry::orbit_transitivity(g.n(), &aut.gens, Some(&g))?;
            if let Some(p) = out {
                fs::write(p, io::write_perms(&aut.gens)).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            }
            Report::new(&["order", "generators", "orbits", "transitive"]).row(vec![
                opt(aut.order()),
                aut.gens.len().to_string(),
                orb.orbits.len().to_string(),
                yn(orb.transitive),
            ])
        }
        Cmd::Blocks { graph, gens } => {
            let g = load_graph(graph)?;
            let gens = load_perms(gens, g.n())?;
            symmetry::check_automorphisms(&g, &gens)?;
            let systems = symmetry::enumerate_block_systems(g.n(), &gens)?;
            let mut r = Report::new(&["index", "blocks", "block_size", "partition"]);
            for (i, s) in systems.iter().enumerate() {
                let part: Vec<String> = s.blocks().iter().map(ids).collect();
                r = r.row(vec![i.to_string(), s.num_blocks().to_string(), opt(s.block_size()), part.join("|")]);
            }
            r
        }
        Cmd::Quotient { graph, gens, u, v, out } => {
            let g = load_graph(graph)?;
            let gens = load_perms(gens, g.n())?;
            symmetry::check_automorphisms(&g, &gens)?;
            let sys = symmetry::minimal_block_system(g.n(), &gens, (*u, *v))?;
            let q = symmetry::quotient_graph(&g, &sys)?;
            emit(out, &io::write_graph(&q))?;
            Report::new(&[])
        }
        Cmd::Uncross { graph, a1, a2 } => {
            let g = load_graph(graph)?;
            let (x1, x2) = (load_set(a1, g.n())?, load_set(a2, g.n())?);
            let rep = uncrossing::uncrossing_report(&g, &x1, &x2)?;
            let d = &rep.regions;
            let sizes: Vec<String> = [&d.p, &d.q, &d.s, &d.t, &d.u, &d.w, &d.x, &d.y, &d.z].iter().map(|s| s.len().to_string()).collect();
            let third = rep.third.map_or("n/a".to_string(), |h| format!("{}>={}", 2 * h.q_union_u, h.k));
            Report::new(&["regions_pqstuwxyz", "first", "second", "third", "holds"])
                .row(vec![
                    sizes.join(","),
                    format!("{}<={}", rep.first.lhs, rep.first.rhs),
                    format!("{}<={}", rep.second.lhs, rep.second.rhs),
                    third,
                    yn(rep.all_hold()),
                ])
                .status(if rep.all_hold() { PASS } else { FAIL })
        }
        Cmd::Tube { graph, set, s, t } => {
            let g = load_graph(graph)?;
            let a = load_set(set, g.n())?;
            let cols = ["found", "left", "right", "s", "t"];
            match tube_of(&g, &a, *s, *t)? {
                Some(c) => Report::new(&cols).row(vec![yn(true), ids(&c.l), ids(&c.r), c.s.to_string(), c.t.to_string()]),
                None => Report::new(&cols).row(vec![yn(false), "-".into(), "-".into(), s.to_string(), t.to_string()]).status(FAIL),
            }
        }
        Cmd::Merge { graph, a1, a2, s, t } => {
            let g = load_graph(graph)?;
            let (x1, x2) = (load_set(a1, g.n())?, load_set(a2, g.n())?);
            let c1 = tube_of(&g, &x1, *s, *t)?.ok_or_else(|| CliError { code: FAIL, msg: "first set is not a tube".into() })?;
            let c2 = tube_of(&g, &x2, *s, *t)?.ok_or_else(|| CliError { code: FAIL, msg: "second set is not a tube".into() })?;
            let st = tubes::merge_status(&g, &c1, &c2)?;
            let cols = ["merges", "p", "s", "x", "z", "u_empty", "merged"];
            let merged = if st.merges() { ids(&tubes::merge_tubes(&g, &c1, &c2)?.a) } else { "-".into() };
            Report::new(&cols)
                .row(vec![
                    yn(st.merges()),
                    yn(st.p_nonempty),
                    yn(st.s_nonempty),
                    yn(st.x_nonempty),
                    yn(st.z_nonempty),
                    yn(st.u_empty),
                    merged,
                ])
                .status(if st.merges() { PASS } else { FAIL })
        }
        Cmd::Ring { input, gens, max_period } => {
            let cols = ["found", "s", "t", "tight", "cohesive_q", "blocks", "exhaustive"];
            match load_any(input)? {
                Input::Periodic(p) => {
                    let auts = periodic::find_periodic_automorphisms(&p)?;
                    match periodic::detect_periodic_ring(&p, &auts, *max_period, cli.tmax)? {
                        Some(c) => Report::new(&cols).row(vec![yn(true), c.s.to_string(), c.t.to_string(), yn(c.tight), c.cohesive_q.to_string(), "inf".into(), yn(true)]),
                        None => Report::new(&cols).row(vec![yn(false), "-".into(), "-".into(), "-".into(), "-".into(), "-".into(), yn(true)]).status(FAIL),
                    }
                }
                Input::Graph(g) => {
                    let gens = match gens {
                        Some(p) => load_perms(p, g.n())?,
                        None => find_gens(&g)?,
                    };
                    let search = ringstruct::detect_ring_search(&g, &gens, cli.tmax)?;
                    match &search.best {
                        Some(c) => Report::new(&cols).row(vec![yn(true), c.s.to_string(), c.t.to_string(), yn(c.tight), c.cohesive_q.to_string(), c.cyclic.len().to_string(), yn(search.exhaustive)]),
                        None => Report::new(&cols)
                            .row(vec![yn(false), "-".into(), "-".into(), "-".into(), "-".into(), "-".into(), yn(search.exhaustive)])
                            .status(if search.exhaustive { FAIL } else { INCONCLUSIVE }),
                    }
                }
            }
        }
        Cmd::Kappa { periodic: path } => {
            let p = load_periodic(path)?;
            let k = periodic::kappa_infinity(&p)?;
            let cut: Vec<String> = k.cut.iter().map(|(u, i)| format!("({u},{i})")).collect();
            let mut r = Report::new(&["kappa", "cut", "radius"]).row(vec![k.value.to_string(), cut.join(","), k.radius.to_string()]);
            r.human = Some(vec![k.value.to_string()]);
            r
        }
        Cmd::Interval { graph, gens, set } => {
            let g = load_graph(graph)?;
            let gens = load_perms(gens, g.n())?;
            let a = load_set(set, g.n())?;
            let cols = ["s", "t", "interval_blocks", "excess", "k", "bound", "within"];
            let Some(cert) = ringstruct::detect_ring(&g, &gens, cli.tmax)? else {
                return Err(CliError { code: FAIL, msg: "no ring certificate found".into() });
            };
            match ringstruct::interval_cover(&g, &cert, &a)? {
                Some(c) => Report::new(&cols)
                    .row(vec![cert.s.to_string(), cert.t.to_string(), c.blocks.len().to_string(), c.excess.to_string(), c.k.to_string(), c.bound.to_string(), yn(c.within)])
                    .status(if c.within { PASS } else { FAIL }),
                None => return Err(CliError { code: FAIL, msg: "A is not covered by a proper interval".into() }),
            }
        }
        Cmd::Cover {
            graph: gpath,
            voltage,
            tube,
            s,
            t,
            out,
        } => {
            let g = load_graph(gpath)?;
            let radius = cli.window;
            if let Some(tp) = tube {
                let a = load_set(tp, g.n())?;
                let cert = tube_of(&g, &a, *s, *t)?.ok_or_else(|| CliError { code: FAIL, msg: "set is not a tube".into() })?;
                let rep = covers::layer_decomposition_check(&g, &cert, radius)?;
                Report::new(&["radius", "cover_connected", "components", "components_are_layers", "passes"])
                    .row(vec![rep.radius.to_string(), yn(rep.cover_connected), rep.components.to_string(), yn(rep.components_are_layers), yn(rep.passes())])
                    .status(if rep.passes() { PASS } else { FAIL })
            } else {
                let mu = match voltage {
                    Some(p) => with_path(p, io::parse_voltage(&read(p)?, &g))?,
                    None => VoltageMap::zero(&g)?,
                };
                let w = covers::build_cover_window(&mu, radius)?;
                let comps = graph::components_of_mask(&w.graph, &vec![true; w.graph.n()]).len();
                if let Some(p) = out {
                    fs::write(p, io::write_graph(&w.graph)).map_err(|e| usage(format!("{}: {e}", p.display())))?;
                }
                let sums: Vec<String> = mu.fundamental_cycle_sums().iter().map(|x| x.to_string()).collect();
                Report::new(&["radius", "vertices", "edges", "components", "cycle_sums"]).row(vec![
                    radius.to_string(),
                    w.graph.n().to_string(),
                    w.graph.edge_count().to_string(),
                    comps.to_string(),
                    if sums.is_empty() { "-".into() } else { sums.join(",") },
                ])
            }
        }
        Cmd::Bounds { graph, gens } => {
            let g = load_graph(graph)?;
            let gens = match gens {
                Some(p) => load_perms(p, g.n())?,
                None => find_gens(&g)?,
            };
            let rep = bounds::bound_report(&g, &gens, budget)?;
            let mut r = Report::new(&["bound", "observed", "required", "holds", "tight", "witness"]);
            let mut add = |name: &str, c: &bounds::BoundCheck| {
                r.rows.push(vec![name.into(), c.observed.to_string(), c.bound.to_string(), yn(c.holds()), yn(c.tight()), ids(&c.witness)]);
            };
            if let Some(c) = &rep.mader {
                add("mader", c);
            }
            if let Some(c) = &rep.watkins {
                add("watkins", c);
            }
            add("hamidoune", &rep.hamidoune);
            if let Some(b) = &rep.babai_szegedy {
                let (num, den, w) = &b.tightest;
                r.rows.push(vec!["babai_szegedy".into(), format!("{num}/{den}"), "1".into(), yn(b.violations == 0), yn(num == den), ids(w)]);
            }
            r.status(if rep.all_hold() { PASS } else { FAIL })
        }
        Cmd::Sumset { group, a, b, right } => {
            let t = with_path(group, io::parse_group(&read(group)?))?;
            let xa: Vec<usize> = load_set(a, t.order())?.iter().collect();
            let xb: Vec<usize> = load_set(b, t.order())?.iter().collect();
            let side = if *right { Side::Right } else { Side::Left };
            let sum = bounds::sumset(&t, &xa, &xb, side)?;
            let p = t.order();
            let (cd, ok) = if bounds::is_prime(p) {
                let ok = bounds::cauchy_davenport(p, &xa, &xb)?;
                (yn(ok), ok)
            } else {
                ("n/a".into(), true)
            };
            let set = VertexSet::new(p, sum.iter().copied())?;
            Report::new(&["sumset", "size", "cauchy_davenport"]).row(vec![ids(&set), sum.len().to_string(), cd]).status(if ok { PASS } else { FAIL })
        }
        Cmd::Conjecture { graph } => {
            let g = load_graph(graph)?;
            let d = bounds::depth_ratio_explorer(&g, budget, cli.seed)?;
            Report::new(&["seed", "numerator", "denominator", "ratio", "sets", "exhaustive", "witness"]).row(vec![
                cli.seed.to_string(),
                d.numerator.to_string(),
                d.denominator.to_string(),
                format!("{:.6}", d.ratio()),
                d.sets.to_string(),
                yn(d.exhaustive),
                ids(&d.witness),
            ])
        }
        Cmd::Td { graph, td, search } => {
            let g = load_graph(graph)?;
            match (td, search) {
                (Some(p), None) => {
                    let td = with_path(p, io::parse_td(&read(p)?))?;
                    match treewidth::verify_td(&g, &td) {
                        Ok(w) => Report::new(&["valid", "width"]).row(vec![yn(true), w.to_string()]),
                        Err(e @ Error::InvalidTreeDecomposition(_)) => return Err(CliError { code: FAIL, msg: e.to_string() }),
                        Err(e) => return Err(e.into()),
                    }
                }
                (None, Some(k)) => match treewidth::greedy_td_search(&g, *k, budget)? {
                    Some(td) => {
                        let mut r = Report::new(&["found", "width"]).row(vec![yn(true), td.width().to_string()]);
                        r.human = Some(io::write_td(&td).lines().map(String::from).collect());
                        r
                    }
                    None => Report::new(&["found", "width"]).row(vec![yn(false), "-".into()]).status(FAIL),
                },
                _ => return Err(usage("give either a decomposition file or --search k")),
            }
        }
        Cmd::Balsep { graph, td, w, k } => {
            let g = load_graph(graph)?;
            let tdv = with_path(td, io::parse_td(&read(td)?))?;
            let wset = load_set(w, g.n())?;
            let sep = treewidth::balanced_separator(&g, &tdv, &wset, *k)?;
            let worst = graph::components_without(&g, &sep)?
                .iter()
                .map(|c| c.intersection(&wset).len())
                .max()
                .unwrap_or(0);
            Report::new(&["separator", "size", "max_component_w", "w_size"]).row(vec![ids(&sep), sep.len().to_string(), worst.to_string(), wset.len().to_string()])
        }
        Cmd::VerifyMain { graph, gens, set } => {
            let g = load_graph(graph)?;
            let gens = load_perms(gens, g.n())?;
            match set {
                Some(p) => {
                    let a = load_set(p, g.n())?;
                    let o = verify::main_dichotomy(&g, &gens, &a)?;
                    outcome_report(&o)
                }
                None => {
                    let sum = verify::scan_main(&g, &gens, cli.kmax, budget)?;
                    let status = if sum.violation.is_some() {
                        FAIL
                    } else if sum.budget_exhausted || sum.inconclusive > 0 {
                        INCONCLUSIVE
                    } else {
                        PASS
                    };
                    Report::new(&["candidates", "shallow", "ring_interval", "both", "precondition_failed", "inconclusive", "violation", "budget_exhausted"])
                        .row(vec![
                            sum.candidates.to_string(),
                            sum.shallow.to_string(),
                            sum.ring_interval.to_string(),
                            sum.both.to_string(),
                            sum.precondition_failed.to_string(),
                            sum.inconclusive.to_string(),
                            sum.violation.as_ref().map_or("-".into(), |(a, _)| ids(a)),
                            yn(sum.budget_exhausted),
                        ])
                        .status(status)
                }
            }
        }
        Cmd::VerifyCor110 { graph, gens, set } => {
            let g = load_graph(graph)?;
            let gens = load_perms(gens, g.n())?;
            let a = load_set(set, g.n())?;
            let e = verify::eulerian_cor110(&g, &gens, &a)?;
            let mut r = outcome_report(&e.outcome);
            r.columns.extend(["undirected_boundary", "derived_bound", "directed_diameter", "underlying_diameter", "underlying_hypothesis"]);
            r.rows[0].extend([
                e.undirected_boundary.to_string(),
                yn(e.derived_bound_holds),
                opt(e.directed_diameter),
                opt(e.underlying_diameter),
                yn(e.underlying_hypothesis),
            ]);
            r.human = None;
            r
        }
        Cmd::VerifyCor17 { input, center, n } => {
            let rep = match load_any(input)? {
                Input::Periodic(p) => verify::growth_cor17(GrowthInput::Periodic { presentation: &p, gens: &[] }, *n)?,
                Input::Graph(g) => verify::growth_cor17(
                    GrowthInput::Window {
                        graph: &g,
                        center: *center,
                        frontier: None,
                    },
                    *n,
                )?,
            };
            let growth: Vec<String> = rep.growth.iter().map(|x| x.to_string()).collect();
            Report::new(&["growth", "first_failure", "ring_required_at", "ring_st", "holds"])
                .row(vec![
                    growth.join(","),
                    opt(rep.first_failure),
                    opt(rep.ring_required_at),
                    rep.ring.as_ref().map_or("-".into(), |c| format!("{}x{}", c.s, c.t)),
                    yn(rep.holds()),
                ])
                .status(if rep.holds() { PASS } else { FAIL })
        }
        Cmd::VerifyCor19 { graph, gens, k, td } => {
            let g = load_graph(graph)?;
            let gens = load_perms(gens, g.n())?;
            let hint = match td {
                Some(p) => Some(with_path(p, io::parse_td(&read(p)?))?),
                None => None,
            };
            let o = verify::cor19_check(&g, &gens, *k, hint.as_ref(), budget)?;
            let (case, detail, status) = match &o {
                Cor19Outcome::RingLike { s, t } => ("ring_like", format!("s={s} t={t}"), PASS),
                Cor19Outcome::TreeWidthAtLeast => ("treewidth_at_least_k", "-".into(), PASS),
                Cor19Outcome::SmallDegreeDiameter { degree, diameter } => ("small_degree_diameter", format!("degree={degree} diameter={diameter}"), PASS),
                Cor19Outcome::Inconclusive(why) => ("inconclusive", why.clone(), INCONCLUSIVE),
                Cor19Outcome::Violation { td } => ("VIOLATION", format!("width={}", td.width()), FAIL),
            };
            Report::new(&["case", "k", "detail"]).row(vec![case.into(), k.to_string(), detail]).status(status)
        }
        Cmd::VerifyThm3 { group, b, a } => {
            let grp = if group == "z" {
                ProductGroup::Integers
            } else if let Some(r) = group.strip_prefix("free:") {
                ProductGroup::Free(r.parse().map_err(|_| usage(format!("bad rank `{r}`")))?)
            } else {
                let p = Path::new(group);
                ProductGroup::Finite(with_path(p, io::parse_group(&read(p)?))?)
            };
            let (xb, xa) = (load_elements(b)?, load_elements(a)?);
            let rep = verify::thm3_check(&grp, &xb, &xa)?;
            let good_quotient = matches!(rep.quotient, Some(verify::Quotient::Cyclic | verify::Quotient::Dihedral));
            let status = if !rep.hypothesis || (rep.n_small == Some(true) && good_quotient) {
                PASS
            } else if rep.finite_caveat || rep.quotient.is_none() {
                INCONCLUSIVE
            } else {
                FAIL
            };
            Report::new(&["a", "ba", "hypothesis", "margin", "finite", "n", "n_small", "quotient"])
                .row(vec![
                    rep.a_size.to_string(),
                    rep.ba_size.to_string(),
                    yn(rep.hypothesis),
                    rep.margin.to_string(),
                    yn(rep.finite_caveat),
                    opt(rep.n_size),
                    rep.n_small.map_or("-".into(), yn),
                    rep.quotient.map_or("-".into(), |q| format!("{q:?}").to_lowercase()),
                ])
                .status(status)
        }
    })
}

/// One element per line: integers for ℤ and tables, signed letters for free
/// groups, `e` for the identity word.
fn load_elements(p: &Path) -> Res<Vec<Element>> {
    let text = read(p)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "e" {
            out.push(Vec::new());
            continue;
        }
        let el = line
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| usage(format!("{}: line {}: bad element `{line}`", p.display(), i + 1)))?;
        out.push(el);
    }
    Ok(out)
}

fn tube_of(g: &Graph, a: &VertexSet, s: usize, t: usize) -> Res<Option<TubeCertificate>> {
    Ok(match tubes::find_boundary_partition(g, a, s, t)? {
        Some((l, r)) => Some(tubes::verify_tube(g, a, &l, &r, s, t)?),
        None => None,
    })
}

fn outcome_report(o: &verify::DichotomyOutcome) -> Report {
    let status = match o.case {
        Case::Violation => FAIL,
        Case::Inconclusive => INCONCLUSIVE,
        _ => PASS,
    };
    let fields: Vec<String> = o.tsv().split('\t').map(String::from).collect();
    let mut r = Report::new(&["case", "k", "depth", "size", "s", "t", "excess", "both"]);
    let mut row = fields;
    row.push(yn(o.both));
    r.rows.push(row);
    let mut line = o.tsv().replace('\t', " ");
    if let Some(why) = &o.reason {
        line.push_str(&format!(" ({why})"));
    }
    r.human = Some(vec![line]);
    r.status(status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { PASS });
        }
    };
    #[cfg(feature = "parallel")]
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = cli.jobs;
    match run(&cli) {
        Ok(r) => {
            r.print(cli.tsv);
            ExitCode::from(r.status)
        }
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
