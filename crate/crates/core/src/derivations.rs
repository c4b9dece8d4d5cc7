//! Derivation algebras and the decomposition `d = R_a + λ P_I + Δ` for
//! algebras split as `G ∔ I` by a grading.
//!
//! Operators on `L` are `n x n` matrices (`mat[(q, p)]` is the coefficient of
//! `b_q` in `d(b_p)`). As 1-cochains they are vectors of length `n^2` with
//! coordinate `p * n + q`, matching [`crate::cochain::CochainIndex`].

use crate::algebra::{adjoint_bimodule, AlgebraStructure, Grading};
use crate::cochain::coboundary_matrix;
use crate::error::DerivationError;
use crate::linalg::{kernel_basis, Rational, SparseRationalMatrix, SparseVector, Subspace};

/// Flattens an operator into 1-cochain coordinates.
pub fn operator_to_cochain(op: &SparseRationalMatrix) -> SparseVector {
    let n = op.cols();
    SparseVector::from_pairs(n * n, op.entries().map(|(q, p, v)| (p * n + q, v.clone())))
}

/// Inverse of [`operator_to_cochain`] for an `n`-dimensional algebra.
pub fn cochain_to_operator(v: &SparseVector, n: usize) -> SparseRationalMatrix {
    SparseRationalMatrix::from_triplets(n, n, v.iter().map(|(c, x)| (c % n, c / n, x.clone())))
        .expect("cochain length is n^2")
}

/// Matrix of `z -> [z, x]`.
pub fn right_mult_operator(a: &AlgebraStructure, x: &SparseVector) -> SparseRationalMatrix {
    a.right_multiplication(x)
}

/// Whether `d([x, y]) = [d(x), y] + [x, d(y)]` on all basis pairs.
pub fn is_derivation(a: &AlgebraStructure, d: &SparseRationalMatrix) -> bool {
    let n = a.dim();
    if d.rows() != n || d.cols() != n {
        return false;
    }
    let image = |p: usize| d.mul_vec(&a.basis_vector(p));
    (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs = d.mul_vec(a.product(i, j));
            let rhs = a.bracket(&image(i), &a.basis_vector(j)).add_scaled(&Rational::ONE, &a.bracket(&a.basis_vector(i), &image(j)));
            lhs == rhs
        })
    })
}

/// All derivations of `a`, as a subspace of 1-cochains (ambient `n^2`).
///
/// Solved directly from the derivation equation; in debug builds the result
/// is compared with the kernel of `d^1` on adjoint coefficients.
pub fn derivation_space(a: &AlgebraStructure) -> Subspace {
    let n = a.dim();
    let var = |q: usize, p: usize| p * n + q;
    let mut triplets = Vec::new();
    let mut row = 0;
    for i in 0..n {
        for j in 0..n {
            // coefficient of b_k in d([b_i,b_j]) - [d b_i, b_j] - [b_i, d b_j]
            let mut eq: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
            for (r, c) in a.product(i, j).iter() {
                for (k, e) in eq.iter_mut().enumerate() {
                    e.push((var(k, r), c.clone()));
                }
            }
            for r in 0..n {
                for (k, c) in a.product(r, j).iter() {
                    eq[k].push((var(r, i), -c));
                }
                for (k, c) in a.product(i, r).iter() {
                    eq[k].push((var(r, j), -c));
                }
            }
            for e in eq {
                triplets.extend(e.into_iter().map(|(col, c)| (row, col, c)));
                row += 1;
            }
        }
    }
    let system = SparseRationalMatrix::from_triplets(row, n * n, triplets).expect("indices in range");
    let space = kernel_basis(&system);
    debug_assert_eq!(Some(&space), derivations_from_coboundary(a).as_ref());
    space
}

/// Kernel of `d^1 : CL^1(A, A) -> CL^2(A, A)`.
pub fn derivations_from_coboundary(a: &AlgebraStructure) -> Option<Subspace> {
    let d1 = coboundary_matrix(a, &adjoint_bimodule(a), 1).ok()?;
    Some(kernel_basis(&d1))
}

/// Basis of `Der(A)` as operators.
pub fn derivation_basis(a: &AlgebraStructure) -> Vec<SparseRationalMatrix> {
    derivation_space(a).basis().iter().map(|v| cochain_to_operator(v, a.dim())).collect()
}

/// `d = R_a + λ P_I + Δ + residual` for `L = G ∔ I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationDecomposition {
    /// Coefficients of `a` over the basis vectors spanning `G`.
    pub a: Vec<Rational>,
    pub lambda: Rational,
    /// Map `G -> I`, zero on `I`.
    pub delta: SparseRationalMatrix,
    pub residual: SparseRationalMatrix,
}

impl DerivationDecomposition {
    pub fn is_exact(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn has_delta(&self) -> bool {
        !self.delta.is_zero()
    }
}

fn split(a: &AlgebraStructure, g: &Grading) -> (Vec<usize>, Vec<usize>) {
    let gens: Vec<usize> = g.component(0);
    let ideal: Vec<usize> = (0..a.dim()).filter(|i| g.degree(*i) != 0).collect();
    (gens, ideal)
}

/// Projection `P_I` onto the nonzero-degree part, zero on `G`.
pub fn ideal_projection(a: &AlgebraStructure, g: &Grading) -> SparseRationalMatrix {
    let n = a.dim();
    let (_, ideal) = split(a, g);
    SparseRationalMatrix::from_triplets(n, n, ideal.into_iter().map(|i| (i, i, Rational::ONE))).unwrap()
}

/// Solves `d = R_a + λ P_I + Δ` jointly, where `G` is the degree-0 part of
/// `g`, `I` the rest, and `Δ` ranges over all maps `G -> I`.
///
/// Fails if `{R_x : x in G} ∪ {P_I} ∪ {E_{p->q}}` is linearly dependent
/// (`P_I` is left out when `I = 0`).
/// A `d` outside their span comes back with a nonzero residual.
pub fn decompose_derivation(
    a: &AlgebraStructure,
    g: &Grading,
    d: &SparseRationalMatrix,
) -> Result<DerivationDecomposition, DerivationError> {
    let n = a.dim();
    if d.rows() != n || d.cols() != n {
        return Err(DerivationError::Shape { rows: d.rows(), cols: d.cols(), dim: n });
    }
    if g.len() != n {
        return Err(crate::error::AlgebraError::GradingLength { expected: n, got: g.len() }.into());
    }
    let (gens, ideal) = split(a, g);
    let mut generators: Vec<SparseVector> = gens
        .iter()
        .map(|&x| operator_to_cochain(&right_mult_operator(a, &a.basis_vector(x))))
        .collect();
    // With I = 0 the projection is the zero map and λ is meaningless.
    let with_lambda = !ideal.is_empty();
    if with_lambda {
        generators.push(operator_to_cochain(&ideal_projection(a, g)));
    }
    let delta_offset = gens.len() + usize::from(with_lambda);
    let delta_slots: Vec<(usize, usize)> = gens.iter().flat_map(|&p| ideal.iter().map(move |&q| (p, q))).collect();
    generators.extend(delta_slots.iter().map(|&(p, q)| SparseVector::unit(n * n, p * n + q)));

    // Rows [generator | unit tag]; after reduction each row records which
    // combination of generators it is.
    let count = generators.len();
    let width = n * n + count;
    let tagged: Vec<SparseVector> = generators
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut pairs: Vec<(usize, Rational)> = v.iter().map(|(c, x)| (c, x.clone())).collect();
            pairs.push((n * n + i, Rational::ONE));
            SparseVector::from_pairs(width, pairs)
        })
        .collect();
    let reduced = Subspace::span(width, &tagged);
    let pivots = reduced.pivots();
    let rank = pivots.iter().filter(|&&p| p < n * n).count();
    if rank != count {
        return Err(DerivationError::DependentGenerators { rank, count });
    }

    let target = operator_to_cochain(d);
    let mut residual = target.clone();
    let mut coeffs = SparseVector::zero(count);
    for (row, &p) in reduced.basis().iter().zip(&pivots) {
        let t = target.get(p);
        if t.is_zero() {
            continue;
        }
        let (head, tag): (Vec<_>, Vec<_>) = row.iter().map(|(c, x)| (c, x.clone())).partition(|(c, _)| *c < n * n);
        residual = residual.add_scaled(&-&t, &SparseVector::from_pairs(n * n, head));
        coeffs = coeffs.add_scaled(&t, &SparseVector::from_pairs(count, tag.into_iter().map(|(c, x)| (c - n * n, x))));
    }

    let a_coeffs = (0..gens.len()).map(|i| coeffs.get(i)).collect();
    let lambda = if with_lambda { coeffs.get(gens.len()) } else { Rational::ZERO };
    let delta = SparseRationalMatrix::from_triplets(
        n,
        n,
        delta_slots.iter().enumerate().map(|(s, &(p, q))| (q, p, coeffs.get(delta_offset + s))),
    )
    .unwrap();
    Ok(DerivationDecomposition { a: a_coeffs, lambda, delta, residual: cochain_to_operator(&residual, n) })
}

/// Basis of the derivations mapping `G` into `I` and vanishing on `I`, each
/// scaled so that the image of the first basis vector of `G` has first
/// nonzero coordinate 1.
pub fn delta_generators(a: &AlgebraStructure, g: &Grading) -> Vec<SparseRationalMatrix> {
    let n = a.dim();
    let (gens, ideal) = split(a, g);
    let coords: Vec<usize> = gens.iter().flat_map(|&p| ideal.iter().map(move |&q| p * n + q)).collect();
    let space = derivation_space(a).restrict_to_coords(&coords).expect("coordinates in range");
    space
        .basis()
        .iter()
        .map(|v| {
            let lead = gens
                .first()
                .and_then(|&e| ideal.iter().map(|&q| v.get(e * n + q)).find(|c| !c.is_zero()))
                .or_else(|| v.iter().next().map(|(_, c)| c.clone()))
                .expect("basis vectors are nonzero");
            cochain_to_operator(&v.scale(&lead.recip()), n)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{direct_sum, simple_leibniz_sl2, sl2, x_index, E, F, H};
    use crate::linalg::rank;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn dimensions() {
        assert_eq!(derivation_space(&sl2()).dim(), 3);
        for m in 2..=7 {
            let (l, _) = simple_leibniz_sl2(m).unwrap();
            assert_eq!(derivation_space(&l).dim(), if m == 2 { 5 } else { 4 }, "m={m}");
        }
        assert_eq!(derivation_space(&AlgebraStructure::abelian(2)).dim(), 4);
    }

    #[test]
    fn matches_coboundary_kernel() {
        for m in 2..=3 {
            let (l, _) = simple_leibniz_sl2(m).unwrap();
            assert_eq!(Some(derivation_space(&l)), derivations_from_coboundary(&l));
        }
    }

    #[test]
    fn right_multiplications() {
        let (l3, _) = simple_leibniz_sl2(3).unwrap();
        for k in 0..=3 {
            assert!(right_mult_operator(&l3, &l3.basis_vector(x_index(k))).is_zero());
        }
        let space = derivation_space(&l3);
        for x in 0..l3.dim() {
            let rx = right_mult_operator(&l3, &l3.basis_vector(x));
            assert!(is_derivation(&l3, &rx));
            assert!(space.contains(&operator_to_cochain(&rx)));
        }
        let g = sl2();
        let rh = right_mult_operator(&g, &g.basis_vector(H));
        assert_eq!(rh.get(E, E), r(2));
        assert_eq!(rh.get(F, F), r(-2));
        assert_eq!(rh.nnz(), 2);
        assert!(right_mult_operator(&AlgebraStructure::abelian(3), &SparseVector::unit(3, 1)).is_zero());
    }

    #[test]
    fn cochain_round_trip() {
        let (l2, _) = simple_leibniz_sl2(2).unwrap();
        let re = right_mult_operator(&l2, &l2.basis_vector(E));
        assert_eq!(cochain_to_operator(&operator_to_cochain(&re), 6), re);
    }

    #[test]
    fn inner_and_projection() {
        let (l3, g) = simple_leibniz_sl2(3).unwrap();
        let re = right_mult_operator(&l3, &l3.basis_vector(E));
        let dec = decompose_derivation(&l3, &g, &re).unwrap();
        assert_eq!(dec.a, vec![r(1), r(0), r(0)]);
        assert!(dec.lambda.is_zero() && !dec.has_delta() && dec.is_exact());

        let p = ideal_projection(&l3, &g);
        assert!(is_derivation(&l3, &p));
        let dec = decompose_derivation(&l3, &g, &p).unwrap();
        assert!(dec.a.iter().all(Rational::is_zero));
        assert_eq!(dec.lambda, r(1));
        assert!(!dec.has_delta() && dec.is_exact());
    }

    #[test]
    fn basis_decompositions() {
        for m in 2..=6 {
            let (l, g) = simple_leibniz_sl2(m).unwrap();
            let decs: Vec<_> = derivation_basis(&l).iter().map(|d| decompose_derivation(&l, &g, d).unwrap()).collect();
            assert!(decs.iter().all(DerivationDecomposition::is_exact));
            let deltas: Vec<SparseVector> = decs.iter().map(|d| operator_to_cochain(&d.delta)).collect();
            let delta_rank = Subspace::span(l.dim() * l.dim(), &deltas).dim();
            assert_eq!(delta_rank, usize::from(m == 2), "m={m}");
        }
    }

    #[test]
    fn delta_generator_for_l2() {
        let (l2, g) = simple_leibniz_sl2(2).unwrap();
        let gens = delta_generators(&l2, &g);
        assert_eq!(gens.len(), 1);
        let delta = &gens[0];
        assert!(is_derivation(&l2, delta));
        let de = delta.mul_vec(&SparseVector::unit(6, E));
        let first = de.iter().next().unwrap();
        assert_eq!(first.1, &Rational::ONE);
        let (l3, g3) = simple_leibniz_sl2(3).unwrap();
        assert!(delta_generators(&l3, &g3).is_empty());
    }

    #[test]
    fn non_derivation_leaves_residual() {
        let (l3, g) = simple_leibniz_sl2(3).unwrap();
        let mut bad = vec![(0, 0, r(1))];
        bad.push((x_index(0), x_index(1), r(1)));
        let d = SparseRationalMatrix::from_triplets(7, 7, bad).unwrap();
        assert!(!is_derivation(&l3, &d));
        assert!(!decompose_derivation(&l3, &g, &d).unwrap().is_exact());
        assert!(matches!(
            decompose_derivation(&l3, &g, &SparseRationalMatrix::zeros(3, 3)),
            Err(DerivationError::Shape { .. })
        ));
    }

    #[test]
    fn dependent_generators_reported() {
        // Abelian degree-0 part: R_x = 0 for every x in G.
        let a = AlgebraStructure::abelian(2);
        let g = Grading::new(vec![0, 1]);
        let d = SparseRationalMatrix::zeros(2, 2);
        assert!(matches!(decompose_derivation(&a, &g, &d), Err(DerivationError::DependentGenerators { .. })));
    }

    #[test]
    fn lie_algebra_in_degree_zero() {
        let g = sl2();
        let grading = Grading::trivial(3);
        for d in derivation_basis(&g) {
            let dec = decompose_derivation(&g, &grading, &d).unwrap();
            assert!(dec.is_exact() && dec.lambda.is_zero() && !dec.has_delta());
        }
    }

    #[test]
    fn direct_sum_derivations() {
        let s = direct_sum(&sl2(), &sl2());
        assert_eq!(derivation_space(&s).dim(), 6);
        let (l3, _) = simple_leibniz_sl2(3).unwrap();
        let s = direct_sum(&sl2(), &l3);
        assert_eq!(derivation_space(&s).dim(), 7);
    }

    #[test]
    fn corollary_link() {
        for m in 2..=5 {
            let (l, _) = simple_leibniz_sl2(m).unwrap();
            let n = l.dim();
            let d1 = coboundary_matrix(&l, &adjoint_bimodule(&l), 1).unwrap();
            assert_eq!(rank(&d1), n * n - derivation_space(&l).dim());
        }
    }
}
