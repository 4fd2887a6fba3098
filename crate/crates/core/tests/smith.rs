use proptest::prelude::*;

use wythoff_homology::matrix::{int, snf, Int, IntMatrix};

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=40, 1usize..=40)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-1000i64..=1000, c), r))
}

fn sparse_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=25, 1usize..=25).prop_flat_map(|(r, c)| {
        prop::collection::vec(
            prop::collection::vec(prop_oneof![6 => Just(0i64), 1 => -3i64..=3, 1 => -1000i64..=1000], c),
            r,
        )
    })
}

fn check_divisibility(diag: &[Int], rank: usize) {
    for (i, d) in diag.iter().enumerate() {
        if i < rank {
            assert!(*d > int(0));
            if i + 1 < rank {
                assert_eq!(&diag[i + 1] % d, int(0));
            }
        } else {
            assert_eq!(*d, int(0));
        }
    }
}

fn scramble(m: &IntMatrix, ops: &[(bool, usize, usize, i64)]) -> IntMatrix {
    let mut out = m.clone();
    for &(rows, a, b, k) in ops {
        if rows {
            let (a, b) = (a % m.rows(), b % m.rows());
            if a == b {
                continue;
            }
            for j in 0..m.cols() {
                let v = out.get(a, j) + int(k) * out.get(b, j);
                out.set(a, j, v);
            }
        } else {
            let (a, b) = (a % m.cols(), b % m.cols());
            if a == b {
                continue;
            }
            for i in 0..m.rows() {
                let v = out.get(i, a) + int(k) * out.get(i, b);
                out.set(i, a, v);
            }
        }
    }
    out
}

#[test]
fn known_forms() {
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = snf(&m, false);
    assert_eq!(s.diag, vec![int(2), int(6), int(12)]);
    let z = snf(&IntMatrix::zeros(3, 2), true);
    assert_eq!(z.rank, 0);
    let one = snf(&IntMatrix::from_rows(&[vec![0, 0], vec![0, -7]]), false);
    assert_eq!(one.diag, vec![int(7), int(0)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn transforms_diagonalize(rows in matrix()) {
        let m = IntMatrix::from_rows(&rows);
        let s = snf(&m, true);
        let (u, v, ui) = (s.u.clone().unwrap(), s.v.clone().unwrap(), s.u_inv.clone().unwrap());
        prop_assert_eq!(u.mul(&m).mul(&v), s.diagonal_matrix(m.rows(), m.cols()));
        prop_assert_eq!(u.mul(&ui), IntMatrix::identity(m.rows()));
        check_divisibility(&s.diag, s.rank);
    }

    #[test]
    fn sparse_transforms_diagonalize(rows in sparse_matrix()) {
        let m = IntMatrix::from_rows(&rows);
        let s = snf(&m, true);
        let d = s.diagonal_matrix(m.rows(), m.cols());
        prop_assert_eq!(s.u.unwrap().mul(&m).mul(&s.v.unwrap()), d);
        check_divisibility(&s.diag, s.rank);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unimodular_invariance(
        rows in sparse_matrix(),
        ops in prop::collection::vec((any::<bool>(), 0usize..40, 0usize..40, -3i64..=3), 0..30),
    ) {
        let m = IntMatrix::from_rows(&rows);
        let a = snf(&m, false);
        let b = snf(&scramble(&m, &ops), false);
        prop_assert_eq!(a.diag, b.diag);
        prop_assert_eq!(a.rank, b.rank);
    }
}
