//! Exact linear algebra over the rationals.
//!
//! Every dimension reported by this crate comes from [`rank`] or
//! [`kernel_basis`], which run sparse elimination in exact rational
//! arithmetic. [`modular_rank`] is a faster lower bound used for
//! cross-checking and for the rank sandwich in [`certify_rank`].

mod echelon;
mod field;
mod rational;
mod sparse;
mod subspace;

pub use field::{Field, Fp, PRIME_A, PRIME_B, PRIME_C};
pub use rational::Rational;
pub use sparse::{SparseRationalMatrix, SparseVector};
pub use subspace::Subspace;

pub(crate) use sparse::Row;

use echelon::eliminate;

/// Exact rank over `Q`.
pub fn rank(m: &SparseRationalMatrix) -> usize {
    eliminate(m.cols(), m.row_data().to_vec()).rank()
}

/// Null space of `m` as a subspace of `Q^cols`.
pub fn kernel_basis(m: &SparseRationalMatrix) -> Subspace {
    let kernel = eliminate(m.cols(), m.row_data().to_vec()).kernel();
    Subspace::from_rows(m.cols(), kernel)
}

/// Image (column space) of `m` as a subspace of `Q^rows`.
pub fn image(m: &SparseRationalMatrix) -> Subspace {
    Subspace::from_rows(m.rows(), m.transpose().row_data().to_vec())
}

/// Rank of `m` reduced modulo the prime `P`, or `None` if `P` divides a
/// denominator. Never exceeds the rational rank.
pub fn rank_mod<const P: u64>(m: &SparseRationalMatrix) -> Option<usize> {
    let mut rows = Vec::with_capacity(m.rows());
    for r in m.row_data() {
        let mut row = Vec::with_capacity(r.len());
        for (c, v) in r {
            let x = Fp::<P>::from_rational(v)?;
            if x.value() != 0 {
                row.push((*c, x));
            }
        }
        rows.push(row);
    }
    Some(eliminate(m.cols(), rows).rank())
}

/// Largest rank over three word-size primes. Each modular rank is a lower
/// bound for the rational rank, so the maximum is too.
pub fn modular_rank(m: &SparseRationalMatrix) -> usize {
    [rank_mod::<PRIME_A>(m), rank_mod::<PRIME_B>(m), rank_mod::<PRIME_C>(m)]
        .into_iter()
        .flatten()
        .max()
        .unwrap_or(0)
}

/// Which route produced a rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankMethod {
    Exact,
    Modular,
}

/// Computes `rank(m)` using the cheapest route selected by `method`.
///
/// `Modular` returns only a lower bound on its own; callers that need an
/// exact value must pair it with an upper bound (see [`certify_rank`]).
pub fn rank_with(m: &SparseRationalMatrix, method: RankMethod) -> usize {
    match method {
        RankMethod::Exact => rank(m),
        RankMethod::Modular => modular_rank(m),
    }
}

/// Certifies `rank(m) == expected` without exact elimination, given a set of
/// exactly verified kernel vectors.
///
/// The modular rank is a lower bound, and `cols - dim span(kernel)` is an
/// upper bound once every kernel vector is checked to satisfy `m v = 0` in
/// exact arithmetic. Returns `true` only if both bounds meet at `expected`.
pub fn certify_rank(m: &SparseRationalMatrix, kernel: &Subspace, expected: usize) -> bool {
    if kernel.ambient_dim() != m.cols() {
        return false;
    }
    if !kernel.basis().iter().all(|v| m.mul_vec(v).is_zero()) {
        return false;
    }
    modular_rank(m) == expected && m.cols() - kernel.dim() == expected
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseRationalMatrix::zeros(5, 5)), 0);
        assert_eq!(rank(&SparseRationalMatrix::identity(3)), 3);
        assert_eq!(rank(&SparseRationalMatrix::from_int_rows(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&SparseRationalMatrix::identity(4)).dim(), 0);
        assert_eq!(kernel_basis(&SparseRationalMatrix::zeros(2, 7)).dim(), 7);
        let row = SparseRationalMatrix::from_int_rows(&[&[1, 1, 0]]);
        let k = kernel_basis(&row);
        assert_eq!(k.dim(), 2);
        for v in k.basis() {
            assert!(row.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn image_of_projection() {
        let m = SparseRationalMatrix::from_int_rows(&[&[1, 0], &[0, 0], &[2, 0]]);
        let im = image(&m);
        assert_eq!(im.dim(), 1);
        assert_eq!(im.ambient_dim(), 3);
    }

    #[test]
    fn certificate_requires_both_bounds() {
        let m = SparseRationalMatrix::from_int_rows(&[&[1, 1, 0], &[2, 2, 0]]);
        let k = kernel_basis(&m);
        assert!(certify_rank(&m, &k, 1));
        assert!(!certify_rank(&m, &Subspace::zero(3), 1));
        assert!(!certify_rank(&m, &k, 2));
    }

    #[test]
    fn modular_rank_skips_bad_primes() {
        let m = SparseRationalMatrix::from_dense(&[vec![Rational::new(1, PRIME_C as i64)]]);
        assert_eq!(rank_mod::<PRIME_C>(&m), None);
        assert_eq!(modular_rank(&m), 1);
    }

    fn small_matrix() -> impl Strategy<Value = SparseRationalMatrix> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r).prop_map(|rows| {
                let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
                SparseRationalMatrix::from_int_rows(&refs)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.dim(), m.cols());
            for v in k.basis() {
                prop_assert!(m.mul_vec(v).is_zero());
            }
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
            prop_assert_eq!(modular_rank(&m), rank(&m));
        }

        #[test]
        fn projection_bounds(m in small_matrix(), mask in proptest::collection::vec(any::<bool>(), 7)) {
            let s = kernel_basis(&m);
            let coords: Vec<usize> = (0..m.cols()).filter(|&i| mask[i]).collect();
            let proj = s.project(&coords).unwrap().dim();
            let supp = s.restrict_to_coords(&coords).unwrap().dim();
            prop_assert!(supp <= proj);
            prop_assert!(proj <= s.dim());
        }
    }
}
