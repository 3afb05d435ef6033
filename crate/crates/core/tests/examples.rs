//! Worked examples for every module, run through the public API.

use vtsep::covers::{self, VoltageMap};
use vtsep::generators::{self, ladder, make_cayley, make_circulant, path, petersen, prism, squared_path, torus, tree_ball, window, GroupTable};
use vtsep::graph::{self, Graph, VertexSet};
use vtsep::ringstruct::{self, periodic};
use vtsep::symmetry::{self, BlockSystem, Permutation};
use vtsep::treewidth::{self, TreeDecomposition};
use vtsep::tubes;
use vtsep::uncrossing::{regions, uncrossing_report};
use vtsep::verify::{self, Case, Cor19Outcome, Element, ProductGroup, Quotient};
use vtsep::Error;

fn cycle(n: usize) -> Graph {
    make_circulant(n, &[1, -1], false).unwrap().graph
}

fn vs(n: usize, ids: impl IntoIterator<Item = usize>) -> VertexSet {
    VertexSet::new(n, ids).unwrap()
}

fn rotation(n: usize, k: usize) -> Permutation {
    Permutation::new((0..n).map(|i| (i + k) % n).collect()).unwrap()
}

#[test]
fn distances() {
    let d = graph::bfs_distances(&cycle(6), &vs(6, [0])).unwrap();
    assert_eq!(d[3], Some(3));
    let d = graph::bfs_distances(&cycle(6), &vs(6, [0, 3])).unwrap();
    assert_eq!((d[1], d[2]), (Some(1), Some(1)));
    let two = Graph::from_edges(2, false, []).unwrap();
    assert_eq!(graph::bfs_distances(&two, &vs(2, [0])).unwrap()[1], None);
}

#[test]
fn boundaries() {
    let p = graph::boundary_profile(&cycle(6), &vs(6, [0, 1])).unwrap();
    assert_eq!(p.vertex_boundary, vs(6, [2, 5]));
    assert_eq!(p.edge_cut_size, 2);
    assert_eq!(graph::boundary(&cycle(12), &vs(12, [3, 4, 5])).unwrap(), vs(12, [2, 6]));
    let z7 = make_circulant(7, &[1, 2], true).unwrap().graph;
    let p = graph::boundary_profile(&z7, &vs(7, [0])).unwrap();
    assert_eq!(p.out_boundary, vs(7, [1, 2]));
    assert_eq!(p.in_boundary, vs(7, [5, 6]));
}

#[test]
fn depth_diameter_growth() {
    assert_eq!(graph::depth(&cycle(9), &vs(9, 0..5)).unwrap(), 3);
    assert_eq!(graph::depth(&petersen().graph, &vs(10, [4])).unwrap(), 1);
    let t = torus(7, 7).unwrap().graph;
    let centre = 3 * 7 + 3;
    assert_eq!(graph::depth(&t, &graph::ball(&t, centre, 2).unwrap()).unwrap(), 3);

    assert_eq!(graph::diameter_of_set(&cycle(10), &VertexSet::full(10)).unwrap(), 5);
    assert_eq!(graph::diameter_of_set(&cycle(12), &vs(12, [0, 1, 2])).unwrap(), 2);
    assert_eq!(graph::diameter(&petersen().graph).unwrap(), 2);

    assert_eq!(graph::ball_growth(&cycle(10), 0, 6).unwrap(), vec![1, 3, 5, 7, 9, 10, 10]);
    assert_eq!(graph::ball_growth(&torus(9, 9).unwrap().graph, 0, 2).unwrap(), vec![1, 5, 13]);
    assert_eq!(graph::ball_growth(&tree_ball(3, 4).unwrap().graph, 0, 2).unwrap(), vec![1, 4, 10]);

    let c12 = cycle(12);
    assert!(graph::check_connected_with_boundary(&c12, &vs(12, [0, 1, 2])));
    assert!(!graph::check_connected_with_boundary(&c12, &vs(12, [0, 1, 6, 7])));
    assert!(graph::check_connected_with_boundary(&c12, &vs(12, [0, 1, 3, 4])));
}

#[test]
fn generators() {
    let c6 = make_circulant(6, &[1, -1], false).unwrap().graph;
    assert_eq!((c6.edge_count(), c6.regular_degree()), (6, Some(2)));
    let c8 = make_circulant(8, &[1, -1, 2, -2], false).unwrap().graph;
    assert_eq!((c8.edge_count(), c8.regular_degree()), (16, Some(4)));
    let z7 = make_circulant(7, &[1, 2], true).unwrap().graph;
    assert!((0..7).all(|v| z7.degree(v) == 2 && z7.in_degree(v) == 2));

    let z5 = make_cayley(&GroupTable::cyclic(5).unwrap(), &[1, 4], false).unwrap().graph;
    assert_eq!(z5, cycle(5));
    let s3 = GroupTable::symmetric(3).unwrap();
    let transpositions = s3.elements_of_order(2);
    let g = make_cayley(&s3, &transpositions, false).unwrap().graph;
    assert_eq!((g.n(), g.regular_degree()), (6, Some(3)));
    assert!(graph::is_connected(&g));
    assert!(make_cayley(&s3, &[s3.identity()], false).is_err());

    let p6 = prism(6).unwrap().graph;
    assert_eq!((p6.n(), p6.edge_count(), p6.regular_degree()), (12, 18, Some(3)));
    let t = torus(4, 4).unwrap().graph;
    assert_eq!((t.n(), t.regular_degree()), (16, Some(4)));
    let tb = tree_ball(3, 2).unwrap();
    assert_eq!(tb.graph.n(), 10);
    assert_eq!(tb.frontier.unwrap().len(), 6);
}

#[test]
fn periodic_presentations_and_windows() {
    let w = window(&ladder(), 5).unwrap();
    assert_eq!(w.graph.n(), 22);
    assert_eq!(w.frontier.len(), 4);
    assert!(w.frontier.iter().all(|v| w.layer_of[v].abs() == 5));
    let w = window(&path(), 3).unwrap();
    assert_eq!(w.graph, Graph::from_edges(7, false, (0..6).map(|i| (i, i + 1))).unwrap());
    assert_eq!(w.frontier.len(), 2);
    let w = window(&squared_path(), 3).unwrap();
    let layers: Vec<i64> = w.frontier.iter().map(|v| w.layer_of[v]).collect();
    for l in [-3, -2, 2, 3] {
        assert!(layers.contains(&l));
    }
}

#[test]
fn automorphisms_orbits_blocks() {
    assert_eq!(symmetry::find_automorphisms(&cycle(5), 100_000).unwrap().order(), Some(10));
    let k4 = Graph::from_edges(4, false, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    assert_eq!(symmetry::find_automorphisms(&k4, 100_000).unwrap().order(), Some(24));
    assert_eq!(symmetry::find_automorphisms(&petersen().graph, 1_000_000).unwrap().order(), Some(120));

    let rot = vec![rotation(6, 1)];
    assert!(symmetry::orbit_transitivity(6, &rot, Some(&cycle(6))).unwrap().transitive);
    let p3 = Graph::from_edges(3, false, [(0, 1), (1, 2)]).unwrap();
    let flip = vec![Permutation::new(vec![2, 1, 0]).unwrap()];
    let orb = symmetry::orbit_transitivity(3, &flip, Some(&p3)).unwrap();
    assert_eq!(orb.orbits, vec![vec![0, 2], vec![1]]);
    assert!(!orb.transitive);
    let pr = prism(6).unwrap();
    assert!(symmetry::orbit_transitivity(12, &pr.gens, Some(&pr.graph)).unwrap().transitive);

    let b = symmetry::minimal_block_system(6, &rot, (0, 3)).unwrap();
    assert_eq!(b.blocks(), &[vs(6, [0, 3]), vs(6, [1, 4]), vs(6, [2, 5])]);
    let b = symmetry::minimal_block_system(6, &rot, (0, 2)).unwrap();
    assert_eq!(b.blocks(), &[vs(6, [0, 2, 4]), vs(6, [1, 3, 5])]);
    assert_eq!(symmetry::minimal_block_system(6, &rot, (0, 1)).unwrap().num_blocks(), 1);

    let nontrivial = |n: usize, gens: &[Permutation]| -> Vec<BlockSystem> {
        symmetry::enumerate_block_systems(n, gens).unwrap().into_iter().filter(|s| !s.is_trivial()).collect()
    };
    let sizes: Vec<Option<usize>> = nontrivial(6, &rot).iter().map(|s| s.block_size()).collect();
    assert_eq!(sizes.len(), 2);
    assert!(sizes.contains(&Some(2)) && sizes.contains(&Some(3)));
    assert!(nontrivial(5, &[rotation(5, 1)]).is_empty());
    let rungs = BlockSystem::from_blocks(12, &(0..6).map(|i| vec![2 * i, 2 * i + 1]).collect::<Vec<_>>()).unwrap();
    assert!(nontrivial(12, &pr.gens).contains(&rungs));

    assert_eq!(symmetry::quotient_graph(&pr.graph, &rungs).unwrap(), cycle(6));
    let antipodal = BlockSystem::from_blocks(6, &[vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap();
    assert_eq!(symmetry::quotient_graph(&cycle(6), &antipodal).unwrap(), cycle(3));
    assert_eq!(symmetry::quotient_graph(&cycle(6), &BlockSystem::singletons(6)).unwrap(), cycle(6));
}

#[test]
fn uncrossing_examples() {
    let c12 = cycle(12);
    let r = regions(&c12, &vs(12, 0..6), &vs(12, 3..9)).unwrap();
    assert_eq!(
        (&r.p, &r.q, &r.s, &r.t, &r.u, &r.w, &r.x, &r.y, &r.z),
        (&vs(12, [3, 4, 5]), &vs(12, [6]), &vs(12, [7, 8]), &vs(12, [2]), &vs(12, []), &vs(12, [9]), &vs(12, [0, 1]), &vs(12, [11]), &vs(12, [10]))
    );
    let rep = uncrossing_report(&c12, &vs(12, 0..6), &vs(12, 3..9)).unwrap();
    assert_eq!((rep.first.lhs, rep.first.rhs, rep.second.lhs, rep.second.rhs), (4, 4, 4, 4));
    let third = rep.third.unwrap();
    assert_eq!((third.k, third.q_union_u), (2, 1));

    let same = regions(&c12, &vs(12, 0..6), &vs(12, 0..6)).unwrap();
    assert_eq!(same.p, vs(12, 0..6));
    assert_eq!(same.u, vs(12, [6, 11]));
    assert!(same.q.is_empty() && same.s.is_empty() && same.x.is_empty() && same.w.is_empty());
    let rep = uncrossing_report(&c12, &vs(12, 0..6), &vs(12, 0..6)).unwrap();
    assert_eq!(rep.first.lhs, rep.first.rhs);

    let c20 = cycle(20);
    let far = regions(&c20, &vs(20, [0, 1]), &vs(20, [10, 11])).unwrap();
    assert!(far.p.is_empty() && far.q.is_empty() && far.t.is_empty() && far.u.is_empty());
    assert_eq!((far.x.clone(), far.s.clone(), far.y.clone(), far.w.clone()), (vs(20, [0, 1]), vs(20, [10, 11]), vs(20, [2, 19]), vs(20, [9, 12])));
    let rep = uncrossing_report(&c20, &vs(20, [0, 1]), &vs(20, [10, 11])).unwrap();
    assert_eq!((rep.second.lhs, rep.second.rhs), (4, 4));
}

#[test]
fn tube_examples() {
    let c20 = cycle(20);
    let a = vs(20, 1..9);
    assert!(tubes::verify_tube(&c20, &a, &vs(20, [0]), &vs(20, [9]), 1, 9).is_ok());
    let err = tubes::verify_tube(&c20, &a, &vs(20, [0, 9]), &vs(20, []), 1, 9).unwrap_err();
    assert!(err.to_string().contains("empty side"));
    let p20 = prism(20).unwrap().graph;
    assert!(tubes::verify_tube(&p20, &vs(40, 2..18), &vs(40, [0, 1]), &vs(40, [18, 19]), 1, 9).is_ok());

    assert_eq!(tubes::find_boundary_partition(&c20, &a, 1, 5).unwrap(), Some((vs(20, [0]), vs(20, [9]))));
    assert_eq!(tubes::find_boundary_partition(&c20, &vs(20, 1..19), 1, 2).unwrap(), None);
    let p = Graph::from_edges(3, false, [(0, 1), (1, 2)]).unwrap();
    assert_eq!(tubes::find_boundary_partition(&p, &vs(3, [0]), 1, 1).unwrap(), None);
}

#[test]
fn merge_examples() {
    let c40 = cycle(40);
    let t1 = tubes::verify_tube(&c40, &vs(40, 1..21), &vs(40, [0]), &vs(40, [21]), 1, 9).unwrap();
    let t2 = tubes::verify_tube(&c40, &vs(40, 11..31), &vs(40, [10]), &vs(40, [31]), 1, 9).unwrap();
    let st = tubes::merge_status(&c40, &t1, &t2).unwrap();
    assert!(st.merges());
    assert_eq!(st.regions.p, vs(40, 11..21));
    let m = tubes::merge_tubes(&c40, &t1, &t2).unwrap();
    assert_eq!((m.a.clone(), m.l.clone(), m.r.clone(), m.t), (vs(40, 1..31), vs(40, [0]), vs(40, [31]), 9));

    let far = tubes::verify_tube(&c40, &vs(40, 25..30), &vs(40, [24]), &vs(40, [30]), 1, 6).unwrap();
    let near = tubes::verify_tube(&c40, &vs(40, 1..6), &vs(40, [0]), &vs(40, [6]), 1, 6).unwrap();
    assert!(!tubes::merge_status(&c40, &near, &far).unwrap().merges());
    assert!(!tubes::merge_status(&c40, &t1, &t1).unwrap().merges());
    assert!(tubes::merge_tubes(&c40, &near, &far).is_err());

    let p40 = prism(40).unwrap().graph;
    let r = |a: usize, b: usize| vs(80, 2 * a..2 * b);
    let q1 = tubes::verify_tube(&p40, &r(1, 21), &r(0, 1), &r(21, 22), 1, 9).unwrap();
    let q2 = tubes::verify_tube(&p40, &r(11, 31), &r(10, 11), &r(31, 32), 1, 9).unwrap();
    assert_eq!(tubes::merge_tubes(&p40, &q1, &q2).unwrap().a, r(1, 31));
}

#[test]
fn balloon_examples() {
    let rep = tubes::balloon_check(&cycle(30), &vs(30, [0, 1]), 0, 1, None).unwrap();
    assert!(rep.holds);
    assert_eq!(rep.components.len(), 1);
    assert_eq!(rep.components[0].depth, 14);
    let t = torus(9, 9).unwrap().graph;
    let c = 4 * 9 + 4;
    let ring = graph::boundary(&t, &vs(81, [c])).unwrap();
    let rep = tubes::balloon_check(&t, &ring, c, 2, None).unwrap();
    assert!(rep.holds && rep.deep == 1);
    assert!(tubes::balloon_check(&t, &vs(81, []), c, 2, None).is_err());
}

#[test]
fn cyclic_systems_and_rings() {
    let c6 = cycle(6);
    let sing = BlockSystem::singletons(6);
    let cs = ringstruct::verify_cyclic_system(&c6, &sing, &[0, 1, 2, 3, 4, 5], &[rotation(6, 1)]).unwrap();
    let cert = ringstruct::verify_ring_like(&c6, &cs).unwrap();
    assert_eq!((cert.s, cert.t, cert.tight, cert.cohesive_q), (1, 1, true, 1));

    let p8 = prism(8).unwrap();
    let rungs = BlockSystem::from_blocks(16, &(0..8).map(|i| vec![2 * i, 2 * i + 1]).collect::<Vec<_>>()).unwrap();
    let order: Vec<usize> = (0..8).map(|i| rungs.block_of(2 * i)).collect();
    let cs = ringstruct::verify_cyclic_system(&p8.graph, &rungs, &order, &p8.gens).unwrap();
    let cert = ringstruct::verify_ring_like(&p8.graph, &cs).unwrap();
    assert_eq!((cert.s, cert.t, cert.tight, cert.cohesive_q), (2, 1, true, 2));

    let antipodal = BlockSystem::from_blocks(6, &[vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap();
    let reflection = Permutation::new((0..6).map(|i| (6 - i) % 6).collect()).unwrap();
    let order: Vec<usize> = [0, 1, 2].iter().map(|&v| antipodal.block_of(v)).collect();
    assert!(ringstruct::verify_cyclic_system(&c6, &antipodal, &order, &[reflection]).is_ok());

    let c12 = make_circulant(12, &[1, -1, 2, -2], false).unwrap();
    let cs = ringstruct::verify_cyclic_system(&c12.graph, &BlockSystem::singletons(12), &(0..12).collect::<Vec<_>>(), &c12.gens).unwrap();
    let cert = ringstruct::verify_ring_like(&c12.graph, &cs).unwrap();
    assert_eq!((cert.s, cert.t, cert.tight, cert.cohesive_q), (1, 2, true, 1));

    let c100 = make_circulant(100, &[1, -1], false).unwrap();
    let cert = ringstruct::detect_ring(&c100.graph, &c100.gens, 3).unwrap().unwrap();
    assert_eq!((cert.s, cert.t), (1, 1));
    let p30 = prism(30).unwrap();
    let cert = ringstruct::detect_ring(&p30.graph, &p30.gens, 3).unwrap().unwrap();
    assert_eq!((cert.s, cert.t), (2, 1));
    let pet = petersen();
    let search = ringstruct::detect_ring_search(&pet.graph, &pet.gens, 5).unwrap();
    assert!(search.best.is_none() && search.exhaustive);
}

#[test]
fn kappa_examples() {
    assert_eq!(periodic::kappa_infinity(&ladder()).unwrap().value, 2);
    assert_eq!(periodic::kappa_infinity(&path()).unwrap().value, 1);
    assert_eq!(periodic::kappa_infinity(&squared_path()).unwrap().value, 2);
}

#[test]
fn interval_cover_examples() {
    let c = make_circulant(600, &[1, -1], false).unwrap();
    let cert = ringstruct::detect_ring(&c.graph, &c.gens, 2).unwrap().unwrap();
    let ic = ringstruct::interval_cover(&c.graph, &cert, &vs(600, 0..100)).unwrap().unwrap();
    assert_eq!((ic.blocks.len(), ic.excess, ic.k, ic.bound, ic.within), (100, 0, 2, 8, true));
    let holed = vs(600, (0..100).filter(|&v| v != 51));
    let ic = ringstruct::interval_cover(&c.graph, &cert, &holed).unwrap().unwrap();
    assert_eq!((ic.q.clone(), ic.excess, ic.k), (vs(600, 0..100), 1, 3));
    assert!(ic.within);
    let ic = ringstruct::interval_cover(&c.graph, &cert, &vs(600, [7])).unwrap().unwrap();
    assert_eq!(ic.excess, cert.s - 1);
}

#[test]
fn voltage_examples() {
    let g = cycle(4);
    let mu = VoltageMap::zero(&g).unwrap().add_delta(&vs(4, [0]), 1).unwrap();
    assert_eq!((mu.value(0, 1), mu.value(0, 3), mu.value(1, 0), mu.value(3, 0)), (1, 1, -1, -1));
    assert_eq!(mu.negated().negated(), mu);
    let tri = VoltageMap::new(&cycle(3), &[(2, 0, 1)]).unwrap();
    assert_eq!(tri.add_delta(&vs(3, [0]), -1).unwrap().cycle_sum(&[0, 1, 2]).unwrap(), 1);

    let c20 = cycle(20);
    let cert = tubes::verify_tube(&c20, &vs(20, 1..9), &vs(20, [0]), &vs(20, [9]), 1, 9).unwrap();
    let mu = covers::mu_from_tube(&c20, &cert, &Permutation::identity(20)).unwrap();
    assert_eq!(mu.arcs().filter(|a| a.2 != 0).collect::<Vec<_>>(), vec![(0, 1, 1)]);
    let mu5 = covers::mu_from_tube(&c20, &cert, &rotation(20, 5)).unwrap();
    assert_eq!(mu5.arcs().filter(|a| a.2 != 0).collect::<Vec<_>>(), vec![(5, 6, 1)]);

    let p20 = prism(20).unwrap().graph;
    let pc = tubes::verify_tube(&p20, &vs(40, 2..18), &vs(40, [0, 1]), &vs(40, [18, 19]), 1, 9).unwrap();
    let pmu = covers::mu_from_tube(&p20, &pc, &Permutation::identity(40)).unwrap();
    let nonzero: Vec<_> = pmu.arcs().filter(|a| a.2 != 0).collect();
    assert_eq!(nonzero, vec![(0, 2, 1), (1, 3, 1)]);
    assert!(covers::layer_decomposition_check(&c20, &cert, 3).unwrap().passes());
    assert!(covers::layer_decomposition_check(&p20, &pc, 3).unwrap().passes());
    let control = covers::layer_components(&VoltageMap::zero(&c20).unwrap(), &[], 3).unwrap();
    assert!(control.components_are_layers && !control.passes());
}

#[test]
fn bound_examples() {
    use vtsep::bounds::{self, ProfileConstraint, Side};
    let c6 = cycle(6);
    let all = ProfileConstraint {
        connected: false,
        exclude_spanning: false,
        max_size: None,
    };
    let prof = bounds::min_boundary_profile(&c6, &all, u64::MAX).unwrap();
    assert_eq!(prof.iter().map(|e| e.min_vertex_boundary).collect::<Vec<_>>(), vec![2, 2, 2, 2, 1]);
    let strict = ProfileConstraint {
        exclude_spanning: true,
        ..all
    };
    let prof = bounds::min_boundary_profile(&c6, &strict, u64::MAX).unwrap();
    assert!(prof.iter().all(|e| e.min_vertex_boundary == 2));

    let z7 = make_circulant(7, &[1, 2], true).unwrap();
    let rep = bounds::bound_report(&z7.graph, &z7.gens, u64::MAX).unwrap();
    assert!(rep.hamidoune.tight());
    assert_eq!(rep.hamidoune.witness.len(), 1);

    let z7t = GroupTable::cyclic(7).unwrap();
    assert_eq!(bounds::sumset(&z7t, &[0, 1], &[0, 2], Side::Left).unwrap(), vec![0, 1, 2, 3]);
    let z5 = GroupTable::cyclic(5).unwrap();
    assert_eq!(bounds::sumset(&z5, &[0, 1, 2], &[0, 1, 2], Side::Left).unwrap(), vec![0, 1, 2, 3, 4]);
    let s3 = GroupTable::symmetric(3).unwrap();
    let b = vec![1, 3, 5];
    assert_eq!(bounds::sumset(&s3, &[s3.identity()], &b, Side::Left).unwrap(), b);

    let r = bounds::depth_ratio_explorer(&cycle(12), u64::MAX, 0).unwrap();
    assert!(r.exhaustive && r.numerator >= r.denominator);
    let t6 = torus(6, 6).unwrap().graph;
    let r = bounds::depth_ratio_explorer(&t6, 200_000, 0).unwrap();
    assert!(graph::check_connected_with_boundary(&t6, &r.witness));
    let one = bounds::depth_ratio_explorer(&Graph::from_edges(2, false, [(0, 1)]).unwrap(), u64::MAX, 0).unwrap();
    assert_eq!((one.numerator, one.denominator), (1, 1));
}

#[test]
fn tree_decomposition_examples() {
    let p7 = Graph::from_edges(7, false, (0..6).map(|i| (i, i + 1))).unwrap();
    let td = TreeDecomposition::path((0..6).map(|i| vs(7, [i, i + 1])).collect()).unwrap();
    assert_eq!(treewidth::verify_td(&p7, &td).unwrap(), 1);
    let k4 = Graph::from_edges(4, false, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let single = TreeDecomposition::path(vec![VertexSet::full(4)]).unwrap();
    assert_eq!(treewidth::verify_td(&k4, &single).unwrap(), 3);
    let broken = TreeDecomposition::path((0..6).filter(|&i| i != 3).map(|i| vs(7, [i, i + 1])).collect()).unwrap();
    let err = treewidth::verify_td(&p7, &broken).unwrap_err();
    assert!(err.to_string().contains("edge 3-4 uncovered"));

    let sep = treewidth::balanced_separator(&p7, &td, &VertexSet::full(7), 2).unwrap();
    assert_eq!(sep, vs(7, [3, 4]));
    let star = Graph::from_edges(6, false, (1..6).map(|i| (0, i))).unwrap();
    let std = TreeDecomposition::path((1..6).map(|i| vs(6, [0, i])).collect()).unwrap();
    let sep = treewidth::balanced_separator(&star, &std, &vs(6, 1..6), 2).unwrap();
    assert!(sep.contains(0) && sep.len() <= 2);
    assert!(treewidth::balanced_separator(&p7, &td, &vs(7, []), 2).unwrap().is_empty());

    let c100 = cycle(100);
    assert_eq!(treewidth::greedy_td_search(&c100, 3, 1_000_000).unwrap().unwrap().width(), 2);
    let k5 = Graph::from_edges(5, false, (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j)))).unwrap();
    assert!(treewidth::greedy_td_search(&k5, 4, 1_000_000).unwrap().is_none());
    let tree = tree_ball(3, 3).unwrap().graph;
    assert_eq!(treewidth::greedy_td_search(&tree, 2, 1_000_000).unwrap().unwrap().width(), 1);
}

#[test]
fn dichotomy_examples() {
    let c = make_circulant(600, &[1, -1], false).unwrap();
    let o = verify::main_dichotomy(&c.graph, &c.gens, &vs(600, 0..100)).unwrap();
    assert_eq!(o.case, Case::RingInterval);
    let r = o.ring.unwrap();
    assert_eq!((r.s, r.t, r.excess, o.k), (1, 1, 0, 2));
    let o = verify::main_dichotomy(&c.graph, &c.gens, &vs(600, [0])).unwrap();
    assert_eq!(o.case, Case::Shallow);
    let sh = o.shallow.unwrap();
    assert_eq!((sh.depth, sh.size, sh.size_bound, sh.degree), (1, 1, 20, 2));
    let pet = petersen();
    for a in [vs(10, [0]), vs(10, [0, 1])] {
        assert_eq!(verify::main_dichotomy(&pet.graph, &pet.gens, &a).unwrap().case, Case::PreconditionFailed);
    }
    let s = verify::scan_main(&c.graph, &c.gens, 2, 10_000_000).unwrap();
    assert!(s.violation.is_none() && !s.budget_exhausted);
    assert_eq!(s.shallow + s.ring_interval + s.precondition_failed, s.candidates);
    let s = verify::scan_main(&pet.graph, &pet.gens, 3, 10_000_000).unwrap();
    assert_eq!(s.precondition_failed, s.candidates);
}

#[test]
fn corollary_examples() {
    let z = make_circulant(5100, &[1, 2], true).unwrap();
    let e = verify::eulerian_cor110(&z.graph, &z.gens, &vs(5100, 0..120)).unwrap();
    assert_eq!(e.k, 2);
    let r = e.outcome.ring.as_ref().unwrap();
    assert!(r.holds && r.s * r.t <= 4);
    let whole = verify::eulerian_cor110(&z.graph, &z.gens, &VertexSet::full(5100));
    assert!(matches!(&whole, Ok(o) if o.outcome.case == Case::PreconditionFailed) || whole.is_err());

    let tb = tree_ball(3, 8).unwrap();
    let layer = tb.layer_of.clone().unwrap();
    let arcs: Vec<(usize, usize)> = tb.graph.edges().map(|(u, v)| if layer[u] < layer[v] { (u, v) } else { (v, u) }).collect();
    let dg = Graph::from_edges(tb.graph.n(), true, arcs).unwrap();
    let err = verify::eulerian_cor110(&dg, &[], &vs(dg.n(), [0])).unwrap_err();
    assert!(matches!(err, Error::NotEulerian(_)));

    let c100 = make_circulant(100, &[1, -1], false).unwrap();
    assert_eq!(verify::cor19_check(&c100.graph, &c100.gens, 2, None, 100_000).unwrap(), Cor19Outcome::RingLike { s: 1, t: 1 });

    let b: Vec<Element> = vec![vec![-1], vec![0], vec![1]];
    let a: Vec<Element> = (0..100).map(|i| vec![i]).collect();
    let r = verify::thm3_check(&ProductGroup::Integers, &b, &a).unwrap();
    assert_eq!((r.ba_size, r.hypothesis, r.n_size, r.quotient), (102, true, Some(1), Some(Quotient::Cyclic)));
    assert!(verify::thm3_check(&ProductGroup::Integers, &[vec![-1], vec![1]], &a).is_err());
    let f = ProductGroup::Free(2);
    let gens: Vec<Element> = vec![vec![], vec![1], vec![-1], vec![2], vec![-2]];
    let mut ball: Vec<Element> = vec![vec![]];
    for radius in 1..=3 {
        let next: Vec<Element> = ball.iter().flat_map(|x| gens.iter().map(|y| f.mul(x, y))).collect();
        ball = next;
        ball.sort();
        ball.dedup();
        assert!(!verify::thm3_check(&f, &gens, &ball).unwrap().hypothesis, "radius {radius}");
    }
}

#[test]
fn generated_families_are_vertex_transitive() {
    for g in [prism(7).unwrap(), torus(3, 5).unwrap(), petersen(), make_circulant(9, &[1, -1, 3, -3], false).unwrap()] {
        symmetry::check_automorphisms(&g.graph, &g.gens).unwrap();
        assert!(symmetry::orbit_transitivity(g.graph.n(), &g.gens, Some(&g.graph)).unwrap().transitive);
    }
    let fig = generators::make_family("figure2".parse().unwrap(), &[]).unwrap();
    assert!(fig.frontier.is_some());
}
