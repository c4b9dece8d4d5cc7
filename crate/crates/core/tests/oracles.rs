//! Cross-checks of the sparse pipeline against independent, brute-force
//! computations.

use leibniz_core::algebra::{adjoint_bimodule, check_bimodule_axioms, leibniz_defects, IdentityKind};
use leibniz_core::catalog::{self, irreducible_sl2_module, simple_leibniz_sl2, sl2, x_index, E, F, H};
use leibniz_core::cochain::{coboundary_matrix, CochainIndex};
use leibniz_core::cohomology::{cocycles, graded_cohomology, hl_dim, GradedCocycles};
use leibniz_core::linalg::{certify_rank, kernel_basis, modular_rank, rank};
use leibniz_core::{AlgebraStructure, Bimodule, Rational, SparseRationalMatrix, SparseVector};

/// `d^n` built column by column from the bracket on vectors, evaluating the
/// coboundary of each basis cochain at each basis tuple.
fn dense_coboundary(a: &AlgebraStructure, n: usize) -> SparseRationalMatrix {
    let dim = a.dim();
    let src = CochainIndex::new(n, dim, dim);
    let dst = CochainIndex::new(n + 1, dim, dim);
    let basis = |i: usize| a.basis_vector(i);
    let mut triplets = Vec::new();
    for col in 0..src.len() {
        let (fargs, fk) = src.tuple(col);
        // f is the basis cochain sending the tuple `fargs` to b_fk.
        let f = |args: &[SparseVector]| -> SparseVector {
            let mut coeff = Rational::ONE;
            for (v, &want) in args.iter().zip(&fargs) {
                coeff = &coeff * &v.get(want);
            }
            SparseVector::unit(dim, fk).scale(&coeff)
        };
        for t in 0..dim.pow(n as u32 + 1) {
            let (xs, _) = dst.tuple(t * dim);
            let x: Vec<SparseVector> = xs.iter().map(|&i| basis(i)).collect();
            let mut acc = a.bracket(&x[0], &f(&x[1..]));
            for i in 2..=n + 1 {
                let rest: Vec<SparseVector> = (0..=n).filter(|&p| p != i - 1).map(|p| x[p].clone()).collect();
                let sign = if i % 2 == 0 { Rational::ONE } else { -Rational::ONE };
                acc = acc.add_scaled(&sign, &a.bracket(&f(&rest), &x[i - 1]));
            }
            for i in 1..=n + 1 {
                for j in i + 1..=n + 1 {
                    let mut args: Vec<SparseVector> = Vec::new();
                    for p in 0..=n {
                        if p == j - 1 {
                            continue;
                        }
                        args.push(if p == i - 1 { a.bracket(&x[i - 1], &x[j - 1]) } else { x[p].clone() });
                    }
                    let sign = if j % 2 == 0 { -Rational::ONE } else { Rational::ONE };
                    acc = acc.add_scaled(&sign, &f(&args));
                }
            }
            for (k, c) in acc.iter() {
                triplets.push((t * dim + k, col, c.clone()));
            }
        }
    }
    SparseRationalMatrix::from_triplets(dst.len(), src.len(), triplets).unwrap()
}

#[test]
fn sparse_coboundary_matches_dense_evaluation() {
    let (l2, _) = simple_leibniz_sl2(2).unwrap();
    let adj = adjoint_bimodule(&l2);
    for n in 0..=2 {
        assert_eq!(coboundary_matrix(&l2, &adj, n).unwrap(), dense_coboundary(&l2, n), "n={n}");
    }
    let g = sl2();
    assert_eq!(coboundary_matrix(&g, &adjoint_bimodule(&g), 2).unwrap(), dense_coboundary(&g, 2));
}

#[test]
fn modular_and_exact_ranks_agree() {
    for m in 2..=6 {
        let (l, _) = simple_leibniz_sl2(m).unwrap();
        let adj = adjoint_bimodule(&l);
        for n in 1..=2 {
            let d = coboundary_matrix(&l, &adj, n).unwrap();
            assert_eq!(modular_rank(&d), rank(&d), "m={m} n={n}");
        }
    }
}

#[test]
fn rank_certificate_from_graded_kernels() {
    let (l5, g) = simple_leibniz_sl2(5).unwrap();
    let d2 = coboundary_matrix(&l5, &adjoint_bimodule(&l5), 2).unwrap();
    let z = GradedCocycles::compute(&l5, &g).unwrap().embedded_sum().unwrap();
    assert_eq!(z.dim(), 77);
    assert!(certify_rank(&d2, &z, d2.cols() - 77));
}

#[test]
fn leibniz_perturbation_is_detected() {
    let (l2, grading) = simple_leibniz_sl2(2).unwrap();
    let records = l2.nonzero_products().map(|(i, j, k, c)| {
        let c = if (i, j, k) == (x_index(1), E, x_index(0)) { Rational::from_int(-3) } else { c.clone() };
        (i, j, k, c)
    });
    let bad = AlgebraStructure::new(l2.labels().to_vec(), records.collect::<Vec<_>>()).unwrap();
    let defects = leibniz_defects(&bad);
    assert!(!defects.is_empty());
    assert!(defects.iter().all(|d| d.kind == IdentityKind::Leibniz));
    let at = |t| defects.iter().find(|d| d.triple == t);
    assert_eq!(at((x_index(1), E, F)).unwrap().defect, SparseVector::unit(6, x_index(1)));
    assert!(at((x_index(1), E, H)).is_none());

    let file = catalog::load(concat!(env!("CARGO_MANIFEST_DIR"), "/../cli/tests/fixtures/l2_perturbed.alg")).unwrap();
    assert_eq!(file.algebra, bad);
    assert_eq!(file.grading.as_ref(), Some(&grading));
}

#[test]
fn bimodule_perturbation_is_detected() {
    let v2 = irreducible_sl2_module(2);
    let mut right: Vec<SparseRationalMatrix> = (0..3).map(|x| v2.right_action(x).clone()).collect();
    let entries: Vec<_> = right[E]
        .entries()
        .map(|(r, c, v)| if (r, c) == (0, 1) { (r, c, Rational::from_int(-1)) } else { (r, c, v.clone()) })
        .collect();
    right[E] = SparseRationalMatrix::from_triplets(3, 3, entries).unwrap();
    let broken = Bimodule::from_right_action(3, right).unwrap();
    let v = check_bimodule_axioms(&sl2(), &broken).unwrap();
    assert!(v.iter().any(|x| x.kind == IdentityKind::ModuleRight && x.triple == (0, E, F)));
}

#[test]
fn file_round_trip_preserves_cohomology() {
    let (l3, g) = simple_leibniz_sl2(3).unwrap();
    let back = catalog::parse(&catalog::to_text(&l3, Some(&g))).unwrap();
    let before = graded_cohomology(&l3, &g, 2).unwrap();
    let after = graded_cohomology(&back.algebra, back.grading.as_ref().unwrap(), 2).unwrap();
    assert_eq!(before, after);
}

#[test]
fn relabeled_basis_gives_same_dimensions() {
    // Reverse the basis order of L_3; dimensions must not change.
    let (l3, _) = simple_leibniz_sl2(3).unwrap();
    let n = l3.dim();
    let p = |i: usize| n - 1 - i;
    let records: Vec<_> = l3.nonzero_products().map(|(i, j, k, c)| (p(i), p(j), p(k), c.clone())).collect();
    let labels: Vec<String> = (0..n).map(|i| l3.labels()[p(i)].clone()).collect();
    let rev = AlgebraStructure::new(labels, records).unwrap();
    let adj = adjoint_bimodule(&rev);
    assert_eq!(hl_dim(&rev, &adj, 2).unwrap(), 0);
    assert_eq!(cocycles(&rev, &adj, 2).unwrap().dim(), 45);
    assert_eq!(kernel_basis(&coboundary_matrix(&rev, &adj, 1).unwrap()).dim(), 4);
}

#[test]
fn abelian_cohomology_is_everything() {
    // For abelian L with adjoint coefficients every cochain is a cocycle.
    let a = AlgebraStructure::abelian(2);
    let adj = adjoint_bimodule(&a);
    assert_eq!(hl_dim(&a, &adj, 2).unwrap(), 8);
    assert_eq!(hl_dim(&a, &adj, 1).unwrap(), 4);
}
