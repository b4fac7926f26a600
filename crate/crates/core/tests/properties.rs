mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use yao_connectivity::claims::{rotation_advances_cone, sample_half_cone_triple, BOUNDARY_GUARD};
use yao_connectivity::geometry::apply_transform;
use yao_connectivity::instances::{random_connected_instance, InstanceConfig, Model};
use yao_connectivity::{
    cone_of, connectivity_radius, d_rhombus, disk_graph, euclid, l_inf, yao_directed, yao_of_disk,
    Cones, Point, PointSet, Radius, Transform,
};

fn arcs(s: &PointSet, d: f64, k: usize) -> BTreeSet<(usize, usize)> {
    let g = disk_graph(s, d).unwrap();
    yao_directed(&g, Cones::new(k).unwrap().into())
        .unwrap()
        .pairs()
        .collect()
}

fn point_set(max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..max).prop_map(|c| {
        let mut s = PointSet::new();
        for (x, y) in c {
            let _ = s.push(Point::new(x, y));
        }
        s
    })
}

fn point() -> impl Strategy<Value = Point> {
    (-10.0f64..10.0, -10.0f64..10.0).prop_map(|(x, y)| Point::new(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn yao_is_a_subgraph_with_one_arc_per_cone(s in point_set(25), d in 0.1f64..6.0, k in 2usize..9) {
        let g = disk_graph(&s, d).unwrap();
        let y = yao_directed(&g, Cones::new(k).unwrap().into()).unwrap();
        let cones = Cones::new(k).unwrap();
        for e in y.edges() {
            prop_assert!(g.has_edge(e.source.min(e.target), e.source.max(e.target)));
        }
        let mut used = BTreeSet::new();
        for (u, v) in y.pairs() {
            let c = cone_of(&s[u], &s[v], cones).unwrap();
            prop_assert!(used.insert((u, c.index())), "two arcs from {} in cone {}", u, c.index());
        }
        for u in 0..s.len() {
            prop_assert!(y.pairs().filter(|&(a, _)| a == u).count() <= k);
        }
    }

    #[test]
    fn arcs_are_nested_in_the_radius(s in point_set(20), d1 in 0.1f64..4.0, extra in 0.0f64..4.0, k in 2usize..7) {
        let small = arcs(&s, d1, k);
        let large = arcs(&s, d1 + extra, k);
        prop_assert!(small.is_subset(&large));
    }

    #[test]
    fn power_of_two_scaling_preserves_everything(s in point_set(15), d in 0.2f64..4.0, j in -4i32..5, k in 2usize..6) {
        let f = 2f64.powi(j);
        let scaled = PointSet::from_points(s.iter().map(|p| Point::new(p.x * f, p.y * f))).unwrap();
        prop_assert_eq!(arcs(&s, d, k), arcs(&scaled, d * f, k));
        let cones = Cones::new(k).unwrap();
        let r = connectivity_radius(&s, cones, 8.0).unwrap().radius;
        let rs = connectivity_radius(&scaled, cones, 8.0 * f).unwrap().radius;
        match (r, rs) {
            (Radius::Finite(a), Radius::Finite(b)) => prop_assert_eq!(a * f, b),
            (a, b) => prop_assert_eq!(a, b),
        }
    }

    #[test]
    fn translation_by_a_power_of_two_grid_step_preserves_yao(s in point_set(15), d in 0.2f64..4.0, k in 2usize..6) {
        let t = Transform::translation(1024.0, -2048.0);
        let moved = apply_transform(&s, &t);
        prop_assert_eq!(arcs(&s, d, k), arcs(&moved, d, k));
    }

    #[test]
    fn yao_matches_the_brute_force_scan(s in point_set(9), d in 0.1f64..8.0, k in 2usize..9) {
        prop_assume!(common::clear_of_boundaries(&s, Cones::new(k).unwrap(), BOUNDARY_GUARD));
        prop_assert_eq!(arcs(&s, d, k), common::brute_yao(&s, k, d));
    }

    #[test]
    fn turning_by_a_cone_width_moves_to_the_next_cone(a in point(), q in point(), k in 2usize..9) {
        prop_assume!(a != q);
        if let Some(ok) = rotation_advances_cone(&a, &q, Cones::new(k).unwrap()) {
            prop_assert!(ok);
        }
    }

    #[test]
    fn chebyshev_sandwich(a in point(), b in point()) {
        let (inf, e) = (l_inf(&a, &b), euclid(&a, &b));
        prop_assert!(inf <= e && e <= std::f64::consts::SQRT_2 * inf + 1e-12);
    }

    #[test]
    fn rhombus_distance_is_symmetric_and_sandwiched(a in point(), b in point()) {
        prop_assume!(a != b);
        let k3 = Cones::THREE;
        let (ab, ba, e) = (d_rhombus(&a, &b, k3), d_rhombus(&b, &a, k3), euclid(&a, &b));
        prop_assert!((ab - ba).abs() <= 1e-9);
        prop_assert!(3f64.sqrt() / 2.0 * ab - 1e-12 <= e && e <= ab + 1e-12);
    }

    #[test]
    fn four_cone_rhombus_distance_is_chebyshev(a in point(), b in point()) {
        prop_assume!(a != b);
        prop_assert!((d_rhombus(&a, &b, Cones::FOUR) - l_inf(&a, &b)).abs() <= 1e-12 * (1.0 + l_inf(&a, &b)));
    }

    #[test]
    fn half_cone_triples_contract(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (a, b, c) = sample_half_cone_triple(&mut rng);
        let k3 = Cones::THREE;
        prop_assert!(d_rhombus(&b, &c, k3) < d_rhombus(&a, &b, k3));
    }

    #[test]
    fn random_instances_are_unit_connected_and_boundary_clear(seed in any::<u64>(), n in 2usize..40, grid in any::<bool>()) {
        let model = if grid { Model::PerturbedGrid } else { Model::IncrementalDisk };
        let s = random_connected_instance(&InstanceConfig::new(n, seed, model)).unwrap();
        prop_assert_eq!(s.len(), n);
        prop_assert!(yao_connectivity::is_connected(&disk_graph(&s, 1.0).unwrap()));
        for k in [3, 4] {
            prop_assert!(common::clear_of_boundaries(&s, Cones::new(k).unwrap(), 1e-12));
        }
    }
}

#[test]
fn oracle_cone_agrees_with_known_directions() {
    let o = Point::new(0.0, 0.0);
    assert_eq!(common::oracle_cone(&o, &Point::new(-1.0, -0.01), 3), 1);
    assert_eq!(common::oracle_cone(&o, &Point::new(1.0, 0.0), 4), 0);
    assert_eq!(common::oracle_cone(&o, &Point::new(0.0, 1.0), 4), 1);
    assert_eq!(common::oracle_cone(&o, &Point::new(-1.0, 0.0), 2), 1);
    assert_eq!(
        cone_of(&o, &Point::new(-1.0, -0.01), Cones::THREE)
            .unwrap()
            .index(),
        2
    );
}

#[test]
fn linear_scan_agrees_on_a_collinear_set() {
    let s = PointSet::from_points((0..4).map(|i| Point::new(i as f64, 0.0))).unwrap();
    assert_eq!(common::linear_scan_radius(&s, 3, 10.0), Some(1.0));
    let r = connectivity_radius(&s, Cones::THREE, 10.0).unwrap();
    assert_eq!(r.radius, Radius::Finite(1.0));
    assert!(yao_of_disk(&s, 1.0, Cones::THREE).unwrap().edge_count() == 3);
}
