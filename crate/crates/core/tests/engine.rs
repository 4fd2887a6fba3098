use std::sync::Arc;

use wythoff_homology::catalog::{alternating_group, mathieu};
use wythoff_homology::engine::{ce_ppart_general, ce_self_test, cyclic_pattern, cyclic_sylow_ppart, sylow_homology, Convention};
use wythoff_homology::finite::FiniteGroup;
use wythoff_homology::group::symmetric_group;
use wythoff_homology::sylow::{sylow_ascent, weyl_exponent, SearchConfig};
use wythoff_homology::zg::resolution_small;

const TABLE: [(usize, [Option<u64>; 4]); 6] = [
    (11, [Some(4), None, Some(5), None]),
    (12, [Some(4), None, Some(5), None]),
    (21, [Some(2), Some(3), None, None]),
    (22, [Some(4), Some(3), Some(5), None]),
    (23, [Some(4), Some(3), Some(5), Some(11)]),
    (24, [Some(4), Some(3), Some(10), Some(11)]),
];
const PRIMES: [u64; 4] = [5, 7, 11, 23];

#[test]
fn mathieu_periodic_patterns() {
    let cfg = SearchConfig::default();
    for (m, row) in TABLE {
        let g = mathieu(m).unwrap();
        for (p, want) in PRIMES.iter().zip(row) {
            let got = weyl_exponent(&g, *p, cfg).unwrap().map(|w| w.exponent);
            assert_eq!(got, want, "M{m} at {p}");
            if let Some(e) = want {
                let n = (2 * e - 1) as usize;
                assert_eq!(cyclic_pattern(*p, e, n).torsion, vec![*p]);
                assert_eq!(cyclic_pattern(*p, e, 3 * n + 2).torsion, vec![*p]);
                assert!((1..n).all(|k| cyclic_pattern(*p, e, k).is_trivial()));
            }
        }
    }
}

#[test]
fn degree_five_slices() {
    let cfg = SearchConfig::default();
    let big = [5, 7, 11, 23];
    for m in [22, 23] {
        let (h, parts) = sylow_homology(&mathieu(m).unwrap(), 5, Some(&big), Convention::ConjX, cfg).unwrap();
        assert_eq!(h.torsion, vec![7], "M{m}");
        assert!(parts.iter().all(|p| p.method != "double_cosets"));
    }
    let m24 = mathieu(24).unwrap();
    for n in [3, 4] {
        let (h, _) = sylow_homology(&m24, n, Some(&big), Convention::ConjX, cfg).unwrap();
        assert!(h.is_trivial());
    }
}

#[test]
fn both_conventions_pass_self_test() {
    let t = ce_self_test(SearchConfig::default()).unwrap();
    assert!(t.conj_x && t.conj_x_inverse);
    assert!(t.cases.len() >= 12);
}

#[test]
fn double_cosets_agree_with_closed_form() {
    let cfg = SearchConfig::default();
    let cases = [(symmetric_group(5), 5u64, 8usize), (alternating_group(5), 5, 6), (mathieu(11).unwrap(), 11, 10)];
    for (g, p, top) in cases {
        let sylow = sylow_ascent(&g, p, cfg).unwrap();
        for n in 1..=top {
            let (closed, _) = cyclic_sylow_ppart(&g, p, n, cfg).unwrap();
            let ce = ce_ppart_general(&g, &sylow, n, Convention::ConjX).unwrap();
            assert_eq!(ce.invariants, closed, "p={p} n={n}");
        }
    }
}

#[test]
fn a5_two_part() {
    let cfg = SearchConfig::default();
    let (h, parts) = sylow_homology(&alternating_group(5), 3, None, Convention::ConjXInverse, cfg).unwrap();
    let a5 = Arc::new(FiniteGroup::new(&alternating_group(5)).unwrap());
    let direct = resolution_small(a5, 4).unwrap().homology(3).unwrap();
    assert_eq!(h, direct);
    assert_eq!(h.torsion_order(), 30);
    assert_eq!(parts.len(), 3);
}
