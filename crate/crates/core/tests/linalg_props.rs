mod common;

use common::fixed_config;
use hopfg::linalg::Matrix;
use hopfg::scalar::CycNumber;
use proptest::prelude::*;

const N: u32 = 12;

fn entry() -> impl Strategy<Value = CycNumber> {
    prop_oneof![
        2 => Just(CycNumber::zero(N)),
        3 => (-3i64..=3, 0i64..N as i64)
            .prop_map(|(c, k)| &CycNumber::from_integer(N, c) * &CycNumber::root_of_unity(N, k)),
    ]
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(proptest::collection::vec(entry(), cols), rows)
        .prop_map(|rows| Matrix::from_dense(N, &rows))
}

fn square() -> impl Strategy<Value = (Matrix, Matrix)> {
    (1usize..=4).prop_flat_map(|n| (matrix(n, n), matrix(n, n)))
}

fn naive_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(a.rows(), b.cols(), N);
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = CycNumber::zero(N);
            for k in 0..a.cols() {
                acc += &(&a.get(i, k) * &b.get(k, j));
            }
            out.set(i, j, acc);
        }
    }
    out
}

fn indices(p: usize, q: usize, r: usize, s: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..p).flat_map(move |i| (0..q).flat_map(move |j| (0..r).flat_map(move |k| (0..s).map(move |l| (i, j, k, l)))))
}

proptest! {
    #![proptest_config(fixed_config(96, 0x11a7))]

    #[test]
    fn product_matches_definition((a, b) in square()) {
        prop_assert_eq!(a.mul(&b).to_dense(), naive_mul(&a, &b).to_dense());
    }

    #[test]
    fn kron_is_functorial(
        (a, c) in (1usize..=3, 1usize..=3, 1usize..=3).prop_flat_map(|(p, q, s)| (matrix(p, q), matrix(q, s))),
        (b, d) in (1usize..=3, 1usize..=3, 1usize..=3).prop_flat_map(|(p, q, s)| (matrix(p, q), matrix(q, s))),
    ) {
        let lhs = a.kron(&b).mul(c.kron(&d));
        let rhs = a.mul(&c).kron(b.mul(&d));
        prop_assert_eq!(lhs.to_dense(), rhs.to_dense());
        let ab = a.kron(&b);
        for (i, j, k, l) in indices(a.rows(), a.cols(), b.rows(), b.cols()) {
            prop_assert_eq!(ab.get(i * b.rows() + k, j * b.cols() + l), &a.get(i, j) * &b.get(k, l));
        }
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in square()) {
        let lhs = a.mul(&b).det().unwrap();
        prop_assert_eq!(lhs, &a.det().unwrap() * &b.det().unwrap());
        prop_assert_eq!(a.transpose().det().unwrap(), a.det().unwrap());
    }

    #[test]
    fn solve_and_inverse((a, b) in square()) {
        let x: Vec<CycNumber> = b.column(0);
        let rhs = a.mul_vec(&x);
        let sol = a.solve(&rhs).unwrap();
        prop_assert_eq!(a.mul_vec(&sol), rhs);
        if !a.det().unwrap().is_zero() {
            prop_assert!(a.mul(a.inverse().unwrap()).is_identity());
            prop_assert_eq!(sol, x);
        }
    }

    #[test]
    fn rank_nullity((a, _b) in square()) {
        let null = a.nullspace();
        prop_assert_eq!(a.rank() + null.len(), a.cols());
        for v in null {
            prop_assert!(a.mul_vec(&v).iter().all(CycNumber::is_zero));
        }
    }
}
