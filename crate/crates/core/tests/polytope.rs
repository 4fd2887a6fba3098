use proptest::prelude::*;

use wythoff_homology::catalog::{alternating_group, dihedral_group, mathieu};
use wythoff_homology::group::symmetric_group;
use wythoff_homology::polytope::{
    check_convex_position, is_edge, neighbours, orbit_count, orbit_points, RationalPoint,
};

fn threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

#[test]
fn orbit_sizes() {
    let m10 = mathieu(10).unwrap();
    let v = RationalPoint::from_ints(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
    let pts = orbit_points(&m10, &v, 10_000).unwrap();
    assert_eq!(pts.len(), 720);
    check_convex_position(&pts).unwrap();
    assert_eq!(orbit_count(&m10, &v, 10_000).unwrap(), 720);
    assert!(orbit_points(&m10, &v, 100).is_err());

    let mut w = vec![0i64; 24];
    w[..5].copy_from_slice(&[1, 2, 3, 4, 5]);
    assert_eq!(orbit_count(&mathieu(24).unwrap(), &RationalPoint::from_ints(&w), 0).unwrap(), 5_100_480);

    // two repeated values take the breadth-first path
    let s4 = symmetric_group(4);
    assert_eq!(orbit_count(&s4, &RationalPoint::from_ints(&[1, 1, 2, 2]), 100).unwrap(), 6);
}

#[test]
fn m10_vertex_degree() {
    let m10 = mathieu(10).unwrap();
    let v = RationalPoint::from_ints(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
    let pts = orbit_points(&m10, &v, 10_000).unwrap();
    let first = neighbours(0, &pts, threads()).unwrap();
    // cross-checked against a floating point LP on the separating-functional side
    assert_eq!(first.len(), 264);
    let other = neighbours(517, &pts, threads()).unwrap();
    assert_eq!(other.len(), first.len());
    let image = neighbours(first[0], &pts, threads()).unwrap();
    assert!(image.contains(&0));
}

#[test]
fn cube_as_orbit() {
    // the hyperoctahedral orbit of (1,1,1) with sign changes is the cube: degree 3
    let pts: Vec<RationalPoint> = (0..8)
        .map(|i| RationalPoint::from_ints(&[1 - 2 * (i & 1), 1 - 2 * ((i >> 1) & 1), 1 - 2 * ((i >> 2) & 1)]))
        .collect();
    check_convex_position(&pts).unwrap();
    for u in 0..8 {
        let nb = neighbours(u, &pts, 1).unwrap();
        assert_eq!(nb.len(), 3);
        assert!(nb.iter().all(|&w| (u ^ w).count_ones() == 1));
    }
}

#[test]
fn permutahedron_degree() {
    // permutahedron of order 4: simple 3-polytope, 24 vertices of degree 3
    let pts = orbit_points(&symmetric_group(4), &RationalPoint::from_ints(&[1, 2, 3, 4]), 100).unwrap();
    assert_eq!(pts.len(), 24);
    let edges: usize = (0..24).map(|u| neighbours(u, &pts, 2).unwrap().len()).sum();
    assert_eq!(edges, 72);
}

fn distinct(xs: Vec<i64>) -> bool {
    let mut s = xs.clone();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hexagon_degree_two(v in prop::collection::vec(-50i64..50, 3).prop_filter("distinct", |v| distinct(v.clone()))) {
        let pts = orbit_points(&symmetric_group(3), &RationalPoint::from_ints(&v), 10).unwrap();
        for u in 0..pts.len() {
            prop_assert_eq!(neighbours(u, &pts, 1).unwrap().len(), 2);
        }
    }

    #[test]
    fn edges_symmetric_and_invariant(
        v in prop::collection::vec(-20i64..20, 4).prop_filter("distinct", |v| distinct(v.clone())),
        which in 0usize..3,
    ) {
        let g = [alternating_group(4), dihedral_group(4), symmetric_group(4)][which].clone();
        let pts = orbit_points(&g, &RationalPoint::from_ints(&v), 100).unwrap();
        for u in 0..pts.len() {
            for w in u + 1..pts.len() {
                let e = is_edge(u, w, &pts).unwrap();
                prop_assert_eq!(e, is_edge(w, u, &pts).unwrap());
                for s in g.generators() {
                    let gu = pts.iter().position(|p| *p == pts[u].permuted(s)).unwrap();
                    let gw = pts.iter().position(|p| *p == pts[w].permuted(s)).unwrap();
                    prop_assert_eq!(e, is_edge(gu, gw, &pts).unwrap());
                }
            }
        }
    }
}

#[test]
fn large_coordinates() {
    let big = |s: &str| s.parse::<RationalPoint>().unwrap();
    let v = big("1/3,100000000000000000000000000007,-200000000000000000000000000000/7");
    let pts = orbit_points(&symmetric_group(3), &v, 10).unwrap();
    for u in 0..6 {
        assert_eq!(neighbours(u, &pts, 1).unwrap().len(), 2);
    }
}
