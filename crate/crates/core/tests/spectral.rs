mod common;

use common::{dense_adjacency, jacobi_eigenvalues, matmul, max_diff, operators, rng, sparse_rows, to_rows};
use proptest::prelude::*;
use rand::Rng;
use sgc::spectral::{
    augmented_scaled_adjacency, dense_eigendecomposition, dense_eigendecomposition_capped, extreme_eigenvalues,
    extreme_eigenvalues_with, filter_coefficient, filter_response, lanczos_extremes, laplacian,
    null_vector_residual, spectral_coefficients, verify_spectrum_theorem, EigenOptions, DEFAULT_THEOREM_TOL,
};
use sgc::{
    build_graph, build_propagation, csr_from_triplets, DenseMatrix, DuplicatePolicy, Error, Graph, PropagationKind,
    PropagationSpec, SparseMatrix,
};

fn graph(edges: &[(usize, usize)], n: usize) -> Graph {
    let e: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
    build_graph(&e, n, DuplicatePolicy::Error).unwrap()
}

fn p2() -> Graph {
    graph(&[(0, 1)], 2)
}

fn k3() -> Graph {
    graph(&[(0, 1), (1, 2), (0, 2)], 3)
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn laplacian_p2() {
    assert_eq!(sparse_rows(&laplacian(&p2(), false, 0.0).unwrap()), vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);
    assert_eq!(sparse_rows(&laplacian(&p2(), true, 1.0).unwrap()), vec![vec![0.5, -0.5], vec![-0.5, 0.5]]);
}

#[test]
fn laplacian_is_identity_minus_operator() {
    let mut r = rng(4);
    for _ in 0..20 {
        let n = r.gen_range(3..30);
        let g = common::weighted_graph(&mut r, n, 0.3);
        let gamma = r.gen_range(0.2..3.0);
        let pairs = [
            (false, PropagationKind::NormalizedAdjacency),
            (true, PropagationKind::AugNormalizedAdjacency),
        ];
        for (aug, kind) in pairs {
            let lap = sparse_rows(&laplacian(&g, aug, gamma).unwrap());
            let s = sparse_rows(&build_propagation(&g, &PropagationSpec::new(kind, 1).with_gamma(gamma)).unwrap());
            assert!(max_diff(&lap, &operators::identity_minus(&s)) <= 1e-15);
        }
    }
}

#[test]
fn laplacian_errors() {
    let g = graph(&[(0, 1)], 3);
    assert!(matches!(laplacian(&g, false, 0.0), Err(Error::IsolatedNode(2))));
    assert!(laplacian(&g, true, 1.0).is_ok());
    assert!(laplacian(&p2(), true, 0.0).is_err());
}

#[test]
fn extremes_small_examples() {
    let (lo, hi) = extreme_eigenvalues(&laplacian(&p2(), false, 0.0).unwrap(), 1e-10).unwrap();
    assert!(close(lo, 0.0, 1e-12) && close(hi, 2.0, 1e-12));
    let (lo, hi) = extreme_eigenvalues(&laplacian(&p2(), true, 1.0).unwrap(), 1e-10).unwrap();
    assert!(close(lo, 0.0, 1e-12) && close(hi, 1.0, 1e-12));
    let lap = laplacian(&k3(), false, 0.0).unwrap();
    let oracle = jacobi_eigenvalues(&sparse_rows(&lap));
    let (lo, hi) = extreme_eigenvalues(&lap, 1e-10).unwrap();
    assert!(close(lo, oracle[0], 1e-12) && close(hi, oracle[2], 1e-12));
    assert!(close(hi, 1.5, 1e-12));
}

#[test]
fn extremes_errors() {
    let asym = csr_from_triplets(&[(0, 1, 1.0), (1, 0, 0.5)], 2, 2).unwrap();
    assert!(matches!(extreme_eigenvalues(&asym, 1e-8), Err(Error::Asymmetric { .. })));
    let lap = laplacian(&p2(), false, 0.0).unwrap();
    assert!(extreme_eigenvalues(&lap, 0.0).is_err());
}

#[test]
fn dense_decomposition_examples() {
    let (vals, _) = dense_eigendecomposition(&SparseMatrix::identity(3)).unwrap();
    assert_eq!(vals.len(), 3);
    assert!(vals.iter().all(|v| close(*v, 1.0, 1e-14)));

    let (vals, _) = dense_eigendecomposition(&laplacian(&k3(), false, 0.0).unwrap()).unwrap();
    for (v, want) in vals.iter().zip([0.0, 1.5, 1.5]) {
        assert!(close(*v, want, 1e-12), "{vals:?}");
    }
}

#[test]
fn dense_decomposition_reconstructs_random_symmetric() {
    let mut r = rng(12);
    let n = 20;
    let mut t = Vec::new();
    for i in 0..n {
        for j in i..n {
            let v: f64 = r.gen_range(-1.0..1.0);
            t.push((i, j, v));
            if i != j {
                t.push((j, i, v));
            }
        }
    }
    let m = csr_from_triplets(&t, n, n).unwrap();
    let (vals, u) = dense_eigendecomposition(&m).unwrap();
    assert!(vals.windows(2).all(|w| w[0] <= w[1]));
    let ud = to_rows(&u);
    let ut = to_rows(&u.transpose());
    let lam: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { vals[i] } else { 0.0 }).collect()).collect();
    let rebuilt = matmul(&matmul(&ud, &lam), &ut);
    assert!(max_diff(&rebuilt, &sparse_rows(&m)) <= 1e-8);

    let eye: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    assert!(max_diff(&matmul(&ut, &ud), &eye) <= 1e-8);

    let norm = m.inf_norm();
    let mu = matmul(&sparse_rows(&m), &ud);
    for j in 0..n {
        let res: f64 = (0..n).map(|i| (mu[i][j] - vals[j] * ud[i][j]).powi(2)).sum::<f64>().sqrt();
        assert!(res <= 1e-8 * norm);
    }
    let jac = jacobi_eigenvalues(&sparse_rows(&m));
    for (a, b) in vals.iter().zip(&jac) {
        assert!(close(*a, *b, 1e-10));
    }
}

#[test]
fn dense_decomposition_size_cap() {
    let m = SparseMatrix::identity(5);
    assert!(matches!(dense_eigendecomposition_capped(&m, 4), Err(Error::Size { n: 5, cap: 4 })));
}

#[test]
fn lanczos_agrees_with_dense() {
    let mut r = rng(99);
    let forced = EigenOptions { dense_cap: 0, ..EigenOptions::default() };
    for trial in 0..6 {
        let n = 150 + 40 * trial;
        let g = common::weighted_graph(&mut r, n, 0.04);
        for m in [laplacian(&g, false, 0.0).unwrap(), laplacian(&g, true, 1.0).unwrap()] {
            let (dlo, dhi) = extreme_eigenvalues(&m, 1e-10).unwrap();
            let (llo, lhi) = extreme_eigenvalues_with(&m, 1e-10, &forced).unwrap();
            assert!(close(dlo, llo, 1e-6) && close(dhi, lhi, 1e-6), "n={n}: dense ({dlo}, {dhi}) lanczos ({llo}, {lhi})");
        }
    }
}

#[test]
fn lanczos_residual_within_tolerance() {
    let mut r = rng(7);
    let g = common::weighted_graph(&mut r, 400, 0.02);
    let m = laplacian(&g, true, 1.0).unwrap();
    let tol = 1e-9;
    let (lo, hi) = lanczos_extremes(&m, tol, &EigenOptions::default()).unwrap();
    assert!(lo.residual <= tol * m.inf_norm());
    assert!(hi.residual <= tol * m.inf_norm());
    assert!(lo.value > -1e-9 && hi.value < 2.0);
}

#[test]
fn filter_examples() {
    for kind in PropagationKind::ALL {
        for k in 0..5 {
            let want = if kind == PropagationKind::FirstOrderCheby { 2f64.powi(k as i32) } else { 1.0 };
            assert_eq!(filter_coefficient(kind, k, 0.0), want);
        }
    }
    assert_eq!(filter_coefficient(PropagationKind::NormalizedAdjacency, 3, 2.0), -1.0);
    assert_eq!(filter_coefficient(PropagationKind::FirstOrderCheby, 6, 0.0), 64.0);
    let curve = filter_response(PropagationKind::AugNormalizedAdjacency, 2, &[0.0, 0.5, 1.5]);
    assert_eq!(curve.points, vec![(0.0, 1.0), (0.5, 0.25), (1.5, 0.25)]);
    let csv = curve.to_csv();
    assert!(csv.starts_with("lambda,g_hat\n"));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn filter_response_matches_operator_spectrum() {
    // Eigenvalues of S^K equal the filter applied to the matching Laplacian spectrum.
    let mut r = rng(31);
    let g = common::connected_er(&mut r, 25, 0.25);
    for (kind, aug) in [
        (PropagationKind::AugNormalizedAdjacency, true),
        (PropagationKind::NormalizedAdjacency, false),
        (PropagationKind::FirstOrderCheby, false),
    ] {
        let k = 3;
        let s = sparse_rows(&build_propagation(&g, &PropagationSpec::new(kind, 1)).unwrap());
        let sk = matmul(&matmul(&s, &s), &s);
        let mut want = jacobi_eigenvalues(&sk);
        let lam = jacobi_eigenvalues(&sparse_rows(&laplacian(&g, aug, 1.0).unwrap()));
        let mut got: Vec<f64> = lam.iter().map(|&l| filter_coefficient(kind, k, l)).collect();
        got.sort_by(f64::total_cmp);
        want.sort_by(f64::total_cmp);
        for (a, b) in got.iter().zip(&want) {
            assert!(close(*a, *b, 1e-9), "{kind}: {a} vs {b}");
        }
    }
}

#[test]
fn fourier_identity_and_parseval() {
    let x = [1.0, -2.0, 0.5];
    assert_eq!(spectral_coefficients(&DenseMatrix::identity(3), &x).unwrap(), x.to_vec());
    assert!(matches!(spectral_coefficients(&DenseMatrix::identity(3), &[1.0]), Err(Error::Shape(_))));

    let mut r = rng(2);
    let g = common::connected_er(&mut r, 40, 0.2);
    let (_, u) = dense_eigendecomposition(&laplacian(&g, true, 1.0).unwrap()).unwrap();
    let x: Vec<f64> = (0..40).map(|_| r.gen_range(-1.0..1.0)).collect();
    let xh = spectral_coefficients(&u, &x).unwrap();
    let n1: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let n2: f64 = xh.iter().map(|v| v * v).sum::<f64>().sqrt();
    assert!(close(n1, n2, 1e-10));
}

#[test]
fn theorem_p2_and_k3() {
    let r = verify_spectrum_theorem(&p2(), 1.0, DEFAULT_THEOREM_TOL).unwrap();
    assert!(close(r.lambda_min, 0.0, 1e-12) && close(r.lambda_max, 2.0, 1e-12));
    assert!(close(r.aug_lambda_min, 0.0, 1e-12) && close(r.aug_lambda_max, 1.0, 1e-12));
    assert!(r.theorem1_holds);

    let r = verify_spectrum_theorem(&k3(), 1.0, DEFAULT_THEOREM_TOL).unwrap();
    assert!(close(r.lambda_min, 0.0, 1e-12) && close(r.lambda_max, 1.5, 1e-12));
    assert!(close(r.aug_lambda_min, 0.0, 1e-12) && close(r.aug_lambda_max, 1.0, 1e-12));
    assert!(r.theorem1_holds && r.lemma3_lower_holds && r.lemma3_upper_holds && r.lemma3_upper_dmax_holds);
}

#[test]
fn report_fields_match_oracle_eigenvalues() {
    let mut r = rng(17);
    let g = common::connected_er(&mut r, 30, 0.2);
    let gamma = 0.7;
    let rep = verify_spectrum_theorem(&g, gamma, DEFAULT_THEOREM_TOL).unwrap();
    let a = dense_adjacency(&g);
    let beta = jacobi_eigenvalues(&operators::norm_adj(&a));
    let alpha = jacobi_eigenvalues(&operators::aug_scaled(&a, gamma));
    let lam = jacobi_eigenvalues(&operators::identity_minus(&operators::norm_adj(&a)));
    let lam_aug = jacobi_eigenvalues(&operators::identity_minus(&operators::aug_norm_adj(&a, gamma)));
    assert!(close(rep.beta_min, beta[0], 1e-10) && close(rep.beta_max, beta[29], 1e-10));
    assert!(close(rep.alpha_min, alpha[0], 1e-10) && close(rep.alpha_max, alpha[29], 1e-10));
    assert!(close(rep.lambda_max, lam[29], 1e-10) && close(rep.aug_lambda_max, lam_aug[29], 1e-10));
    let sparse = sparse_rows(&augmented_scaled_adjacency(&g, gamma).unwrap());
    assert!(max_diff(&sparse, &operators::aug_scaled(&a, gamma)) <= 1e-15);
}

#[test]
fn path_p3_violates_min_degree_bound() {
    // Hand value: D̃^-1/2 A D̃^-1/2 of the 3-node path with γ = 1 has largest
    // eigenvalue 1/√3, above d_min / (γ + d_min) = 1/2.
    let r = verify_spectrum_theorem(&graph(&[(0, 1), (1, 2)], 3), 1.0, DEFAULT_THEOREM_TOL).unwrap();
    assert!(close(r.alpha_max, 1.0 / 3f64.sqrt(), 1e-12));
    assert!(!r.lemma3_upper_holds);
    assert!(r.lemma3_upper_dmax_holds && r.lemma3_lower_holds && r.theorem1_holds);
}

#[test]
fn theorem_preconditions() {
    let two = graph(&[(0, 1), (2, 3)], 4);
    assert!(matches!(verify_spectrum_theorem(&two, 1.0, 1e-8), Err(Error::Disconnected { .. })));
    let iso = graph(&[(0, 1)], 3);
    assert!(matches!(verify_spectrum_theorem(&iso, 1.0, 1e-8), Err(Error::IsolatedNode(2))));
    assert!(verify_spectrum_theorem(&p2(), 0.0, 1e-8).is_err());
}

#[test]
fn random_graphs_chain_and_lower_bound() {
    let mut r = rng(2024);
    for _ in 0..40 {
        let n = r.gen_range(5..=50);
        let g = common::connected_er(&mut r, n, 0.2);
        for gamma in [0.5, 1.0, 2.0] {
            let rep = verify_spectrum_theorem(&g, gamma, DEFAULT_THEOREM_TOL).unwrap();
            assert!(rep.theorem1_holds && rep.lemma3_lower_holds && rep.lemma3_upper_dmax_holds);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn augmented_laplacian_psd_with_known_null_vector(seed in any::<u64>(), n in 2usize..=50, gamma in 0.1f64..4.0) {
        let mut r = rng(seed);
        let g = common::weighted_graph(&mut r, n, 0.2);
        let ev = jacobi_eigenvalues(&sparse_rows(&laplacian(&g, true, gamma).unwrap()));
        prop_assert!(ev[0] >= -1e-9);
        prop_assert!(null_vector_residual(&g, gamma).unwrap() <= 1e-10);
    }

    #[test]
    fn self_loops_shrink_largest_eigenvalue(seed in any::<u64>(), n in 3usize..=40, gamma in 0.1f64..4.0) {
        let mut r = rng(seed);
        let g = common::connected_er(&mut r, n, 0.3);
        let rep = verify_spectrum_theorem(&g, gamma, DEFAULT_THEOREM_TOL).unwrap();
        prop_assert!(rep.theorem1_holds);
        prop_assert!(rep.aug_lambda_max < rep.lambda_max);
    }
}
