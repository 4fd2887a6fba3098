use wythoff_homology::catalog;
use wythoff_homology::orbit::{self, act_packed_flag, pack_flag};
use wythoff_homology::sylow::{self, SearchConfig};

#[test]
fn m24_five_point_stabilizer() {
    let g = catalog::mathieu(24).unwrap();
    let s = g.iterated_stabilizer(&[0, 1, 2, 3, 4]).unwrap();
    assert_eq!(s.order(), 48);
}

#[test]
fn m11_is_sharply_four_transitive() {
    let g = catalog::mathieu(11).unwrap();
    assert_eq!(7920 / (11 * 10 * 9 * 8), 1);
    assert_eq!(g.iterated_stabilizer(&[0, 1, 2, 3]).unwrap().order(), 1);
    assert_eq!(g.iterated_stabilizer(&[3, 7, 1]).unwrap().order(), 8);
}

#[test]
fn m10_order() {
    assert_eq!(catalog::mathieu(10).unwrap().order(), 720);
}

#[test]
fn weyl_exponents_of_small_mathieu_groups() {
    let cfg = SearchConfig::default();
    let m21 = catalog::mathieu(21).unwrap();
    assert_eq!(sylow::weyl_exponent(&m21, 5, cfg).unwrap().unwrap().exponent, 2);
    let m11 = catalog::mathieu(11).unwrap();
    let w = sylow::weyl_exponent(&m11, 11, cfg).unwrap().unwrap();
    assert_eq!(w.exponent, 5);
    for (m, wit) in w.residues.iter().zip(&w.witnesses) {
        assert!(m11.contains(wit));
        assert_eq!(w.sylow_generator.conj(wit), w.sylow_generator.pow(*m));
    }
}

#[test]
fn m23_five_chain_flags_form_two_orbits() {
    let g = catalog::mathieu(23).unwrap();
    let seed = pack_flag(&[0b1, 0b11, 0b111, 0b1111, 0b11111], 23);
    let o = orbit::orbit(g.generators(), seed, act_packed_flag, 1 << 23).unwrap();
    let first = o.len();
    let total = 23 * 22 * 21 * 20 * 19;
    assert!(first < total);
    // a flag outside the first orbit
    let other = (4..23u64)
        .map(|e| pack_flag(&[0b1, 0b11, 0b111, 0b1111, 0b1111 | (1 << e)], 23))
        .find(|k| o.position(k).is_none())
        .expect("second orbit");
    let second = orbit::orbit_size(g.generators(), other, act_packed_flag, 1 << 23).unwrap();
    assert_eq!(first + second, total);
}

#[test]
fn sylow_three_of_m12() {
    let g = catalog::mathieu(12).unwrap();
    let p = sylow::sylow_ascent(&g, 3, SearchConfig::default()).unwrap();
    assert_eq!(p.order(), 27);
    assert!(p.generators().iter().all(|x| g.contains(x)));
}

#[test]
fn double_cosets_of_sylow_eleven_in_m11() {
    let g = catalog::mathieu(11).unwrap();
    let w = sylow::weyl_exponent(&g, 11, SearchConfig::default()).unwrap().unwrap();
    let p = g.subgroup(vec![w.sylow_generator.clone()]).unwrap();
    let dc = sylow::double_cosets(&g, &p, 1_000_000).unwrap();
    assert_eq!(dc.iter().map(|d| d.1).sum::<usize>(), 7920);
    // sizes are 11 (normalizer cosets) or 121
    assert!(dc.iter().all(|d| d.1 == 11 || d.1 == 121));
    let small = dc.iter().filter(|d| d.1 == 11).count();
    assert_eq!(small, 55 / 11);
}
