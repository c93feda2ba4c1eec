use conjcount::counting::{count_roots, ConjSystem, Count};
use conjcount::forms::signature;
use conjcount::oracle::{oracle_count, OracleConfig};
use conjcount::parse::parse_system;
use conjcount::{GaussianRational as G, HermitianMatrix, Matrix};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn hermitian(n: usize, vals: &[(i64, i64)]) -> Vec<Vec<G>> {
    let mut rows = vec![vec![G::from_ints(0, 0); n]; n];
    let mut it = vals.iter();
    for i in 0..n {
        for j in i..n {
            let &(re, im) = it.next().unwrap();
            if i == j {
                rows[i][j] = G::from_ints(re, 0);
            } else {
                rows[i][j] = G::from_ints(re, im);
                rows[j][i] = G::from_ints(re, -im);
            }
        }
    }
    rows
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signature_matches_float_eigenvalues(
        n in 1usize..6,
        vals in prop::collection::vec((-4i64..5, -4i64..5), 15),
    ) {
        let rows = hermitian(n, &vals);
        let f = DMatrix::from_fn(n, n, |i, j| rows[i][j].to_complex64());
        let eig = f.symmetric_eigenvalues();
        prop_assume!(eig.iter().all(|e| e.abs() > 1e-6 || *e == 0.0));
        let h = HermitianMatrix::new(Matrix::from_rows(rows), Vec::new()).unwrap();
        let sig = signature(&h).unwrap();
        let pos = eig.iter().filter(|e| **e > 1e-6).count();
        let neg = eig.iter().filter(|e| **e < -1e-6).count();
        prop_assert_eq!((sig.n_pos, sig.n_neg, sig.n_pos + sig.n_neg + sig.n_zero), (pos, neg, n));
    }

    #[test]
    fn char_poly_constant_is_signed_det(
        n in 1usize..6,
        vals in prop::collection::vec((-4i64..5, -4i64..5), 15),
    ) {
        let rows = hermitian(n, &vals);
        let f = DMatrix::from_fn(n, n, |i, j| rows[i][j].to_complex64());
        let cp = Matrix::from_rows(rows).char_poly();
        let det: Complex64 = f.determinant();
        let c0 = cp[0].to_complex64();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((c0 - det * sign).norm() < 1e-6 * (1.0 + det.norm()));
    }
}

#[test]
fn exact_count_matches_numeric_points() {
    let cases = [
        "z^2 + conj(z)",
        "z^3 + 2*conj(z) - 1",
        "z^2 + 1/2*conj(z)^2 + 1",
        "conj(z)^3 + (1+i)*z + 1/3",
        "z^2*conj(z) - 1; z + conj(z) - 1",
    ];
    for src in cases {
        let sys = ConjSystem::new(parse_system(src).unwrap()).unwrap();
        let rep = count_roots(&sys, None).unwrap();
        let num = oracle_count(&conjcount::counting::build_conjugate_ideal(&sys), &OracleConfig::default()).unwrap();
        assert_eq!(rep.count, Count::Finite(num.count.singles as i64), "{src}");
        assert_eq!(rep.rank, num.count.singles + 2 * num.count.pairs, "{src}");
    }
}
