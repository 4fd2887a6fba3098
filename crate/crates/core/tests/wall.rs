use std::sync::Arc;

use wythoff_homology::catalog::{abelian_group, alternating_group, dihedral_group};
use wythoff_homology::complex::{Base, DComplex};
use wythoff_homology::equivariant::orbit_decompose;
use wythoff_homology::finite::FiniteGroup;
use wythoff_homology::group::{cyclic_group, symmetric_group};
use wythoff_homology::wall::{
    default_resolver, regular_representation, twisted_tensor, wall_assemble, NonFreeComplex,
};
use wythoff_homology::matrix::int;
use wythoff_homology::zg::{bar_resolution, resolution_small};
use wythoff_homology::{AbelianInvariants, GenGroup, Permutation};

fn fg(g: &GenGroup) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::new(g).unwrap())
}

fn tor(t: &[u64]) -> AbelianInvariants {
    AbelianInvariants::from_torsion(t, 0)
}

fn solid(base: &Base, v: u64, g: &GenGroup, max_dim: usize) -> NonFreeComplex {
    let e = orbit_decompose(base, v, g, max_dim).unwrap();
    NonFreeComplex::from_cells(&e, fg(g)).unwrap()
}

fn rotation(n: usize) -> GenGroup {
    let r = Permutation::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect()).unwrap();
    GenGroup::new(n, vec![r]).unwrap()
}

#[test]
fn z4_as_extension_of_z2_by_z2() {
    let z4 = cyclic_group(4);
    let n = GenGroup::new(4, vec![z4.generators()[0].pow(2)]).unwrap();
    let a = twisted_tensor(fg(&z4), &n, 4, &default_resolver).unwrap();
    assert_eq!(a.resolution.ranks()[..5], [1, 2, 3, 4, 5]);
    for (k, t) in [(1, vec![4]), (2, vec![]), (3, vec![4]), (4, vec![])] {
        assert_eq!(a.resolution.homology(k).unwrap(), tor(&t), "H_{k}");
    }
}

#[test]
fn direct_product_gives_kunneth() {
    let v4 = abelian_group(&[2, 2]);
    let n = GenGroup::new(4, vec![v4.generators()[0].clone()]).unwrap();
    let a = twisted_tensor(fg(&v4), &n, 3, &default_resolver).unwrap();
    assert_eq!(a.resolution.ranks()[..4], [1, 2, 3, 4]);
    assert_eq!(a.resolution.homology(1).unwrap(), tor(&[2, 2]));
    assert_eq!(a.resolution.homology(2).unwrap(), tor(&[2]));
    assert_eq!(a.resolution.homology(3).unwrap(), tor(&[2, 2, 2]));
}

#[test]
fn s3_as_semidirect_product() {
    let s3 = symmetric_group(3);
    let a3 = GenGroup::from_cycles(3, &["(1,2,3)"]).unwrap();
    let a = twisted_tensor(fg(&s3), &a3, 3, &default_resolver).unwrap();
    assert_eq!(a.resolution.homology(1).unwrap(), tor(&[2]));
    assert_eq!(a.resolution.homology(2).unwrap(), tor(&[]));
    assert_eq!(a.resolution.homology(3).unwrap(), tor(&[2, 3]));
    let with_h = a.resolution.clone().with_solved_homotopy().unwrap();
    with_h.check_homotopy(1).unwrap();
}

#[test]
fn cyclic_groups_on_polygons() {
    for n in [3usize, 4, 5, 6] {
        let g = rotation(n);
        let c = solid(&Base::Complex(DComplex::polygon(n)), 0b01, &g, 2);
        c.check_exact(2).unwrap();
        let a = wall_assemble(&c, 5, &default_resolver).unwrap();
        for k in 1..=5 {
            let expect = if k % 2 == 1 { AbelianInvariants::from_orders(&[int(n as i64)]).unwrap() } else { tor(&[]) };
            assert_eq!(a.resolution.homology(k).unwrap(), expect, "Z{n} H_{k}");
        }
    }
}

#[test]
fn spliced_polygons_are_periodic() {
    for n in [4usize, 5] {
        let g = rotation(n);
        let c = solid(&Base::Complex(DComplex::polygon(n)), 0b01, &g, 2);
        let s = NonFreeComplex::splice(&c, 7).unwrap();
        s.check_exact(6).unwrap();
        let a = wall_assemble(&s, 6, &default_resolver).unwrap();
        // free cells: the spliced complex is already a resolution
        assert_eq!(a.resolution.ranks(), &[1; 8]);
        for k in 1..=6 {
            let h = a.resolution.homology(k).unwrap();
            assert_eq!(h.torsion_order(), if k % 2 == 1 { n as u128 } else { 1 }, "Z{n} H_{k}");
        }
    }
}

#[test]
fn spliced_simplex_stays_acyclic() {
    let g = GenGroup::trivial(4);
    let c = solid(&Base::Complex(DComplex::simplex_boundary(4).unwrap()), 0b001, &g, 3);
    let s = NonFreeComplex::splice(&c, 9).unwrap();
    let ch = s.materialize().unwrap();
    for k in 1..9 {
        assert!(ch.homology(k).unwrap().is_trivial(), "H_{k}");
    }
}

#[test]
fn s3_on_its_hexagon() {
    let s3 = symmetric_group(3);
    let c = solid(&Base::simplex(3).unwrap(), 0b11, &s3, 2);
    assert!(!c.modules[1][0].orientation_preserving());
    let a = wall_assemble(&c, 3, &default_resolver).unwrap();
    let bar = bar_resolution(fg(&s3), 4).unwrap();
    for k in 1..=3 {
        assert_eq!(a.resolution.homology(k).unwrap(), bar.homology(k).unwrap(), "H_{k}");
    }
    assert_eq!(a.resolution.homology(3).unwrap(), tor(&[2, 3]));
}

#[test]
fn regular_simplex_matches_oracles() {
    let groups = vec![
        ("Z2", cyclic_group(2)),
        ("Z3", cyclic_group(3)),
        ("Z4", cyclic_group(4)),
        ("Z6", cyclic_group(6)),
        ("Z2xZ2", abelian_group(&[2, 2])),
        ("S3", symmetric_group(3)),
        ("D4", dihedral_group(4)),
        ("A4", alternating_group(4)),
    ];
    for (name, g) in groups {
        let f = fg(&g);
        let reg = regular_representation(&f).unwrap();
        let n = 3;
        let c = solid(&Base::simplex(f.order()).unwrap(), 0b1, &reg, n + 1);
        let a = wall_assemble(&c, n, &default_resolver).unwrap();
        let small = resolution_small(f.clone(), n + 1).unwrap();
        for k in 1..=n {
            assert_eq!(a.resolution.homology(k).unwrap(), small.homology(k).unwrap(), "{name} H_{k}");
        }
    }
}

#[test]
fn m11_from_free_vertex_orbit() {
    // sharply 4-transitive: flags of four points have trivial stabilizers
    let g = wythoff_homology::catalog::mathieu(11).unwrap();
    let c = solid(&Base::simplex(11).unwrap(), 0b1111, &g, 6);
    let a = wall_assemble(&c, 5, &default_resolver).unwrap();
    assert_eq!(a.resolution.ranks()[0], 1);
    let want: [&[u64]; 5] = [&[], &[], &[8], &[], &[2]];
    for (k, t) in want.iter().enumerate() {
        assert_eq!(a.resolution.homology(k + 1).unwrap(), tor(t), "H_{}", k + 1);
    }
}
