use bathent::eigen::hermitian_eigenvalues;
use bathent::generator::{dissipator, dissipator_blockform};
use bathent::matrix::kron;
use bathent::qubit::partial_transpose_second;
use bathent::sample::{random_density_matrix, random_kossakowski};
use bathent::{ComplexMatrix, C64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), dim * dim).prop_map(move |v| {
        ComplexMatrix::from_row_major(v.into_iter().map(|(re, im)| C64::new(re, im)).collect()).unwrap()
    })
}

fn hermitian(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(dim).prop_map(|m| m.hermitian_part())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_mixed_product(a in matrix(2), b in matrix(2), c in matrix(2), d in matrix(2)) {
        let lhs = kron(&a, &b).matmul(&kron(&c, &d));
        let rhs = kron(&a.matmul(&c), &b.matmul(&d));
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn partial_transpose_is_linear_involution(x in matrix(4), y in matrix(4), s in -3.0..3.0f64) {
        let combo = &x + &y.scale_real(s);
        let lhs = partial_transpose_second(&combo).unwrap();
        let rhs = &partial_transpose_second(&x).unwrap() + &partial_transpose_second(&y).unwrap().scale_real(s);
        prop_assert!(lhs.approx_eq(&rhs, 1e-12));
        prop_assert_eq!(partial_transpose_second(&lhs).unwrap(), combo.clone());
        prop_assert!((lhs.trace() - combo.trace()).norm() < 1e-12);
    }

    #[test]
    fn partial_transpose_keeps_hermiticity(h in hermitian(4)) {
        prop_assert!(partial_transpose_second(&h).unwrap().hermitian_defect() < 1e-15);
    }

    #[test]
    fn eigenvalues_match_trace_invariants(h in hermitian(6)) {
        let ev = hermitian_eigenvalues(&h).unwrap();
        let sum: f64 = ev.iter().sum();
        let sum_sq: f64 = ev.iter().map(|x| x * x).sum();
        prop_assert!((sum - h.trace().re).abs() < 1e-10);
        prop_assert!((sum_sq - h.matmul(&h).trace().re).abs() < 1e-9);
        prop_assert!(ev.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn dissipator_forms_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_kossakowski(&mut rng);
        let rho = random_density_matrix(&mut rng);
        let lhs = dissipator(&d, rho.matrix());
        prop_assert!(lhs.approx_eq(&dissipator_blockform(d.a(), d.b(), d.c(), rho.matrix()), 1e-12));
        prop_assert!(lhs.trace().norm() < 1e-13);
    }
}
