//! Algebras and bimodules given by structure constants, and checkers for the
//! identities they are supposed to satisfy.
//!
//! Conventions used throughout the crate:
//!
//! * The bracket is a right Leibniz bracket:
//!   `[x,[y,z]] = [[x,y],z] - [[x,z],y]`.
//! * Linear maps are stored as matrices acting on column vectors, so
//!   `matrix[(q, p)]` is the coefficient of basis vector `q` in the image of
//!   basis vector `p`.

use std::fmt;

use crate::error::AlgebraError;
use crate::linalg::{Rational, SparseRationalMatrix, SparseVector, Subspace};

/// A finite-dimensional algebra: basis labels and the products `[b_i, b_j]`.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraStructure {
    labels: Vec<String>,
    /// `table[i * dim + j]` holds `[b_i, b_j]`.
    table: Vec<SparseVector>,
}

impl AlgebraStructure {
    /// Builds an algebra from `(i, j, k, c)` records meaning `[b_i, b_j]`
    /// has coefficient `c` on `b_k`. Repeated records are summed.
    pub fn new(
        labels: Vec<String>,
        products: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        let mut pairs: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in products {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(AlgebraError::IndexOutOfRange { index: idx, dim });
                }
            }
            pairs[i * dim + j].push((k, c));
        }
        let table = pairs.into_iter().map(|p| SparseVector::from_pairs(dim, p)).collect();
        Ok(AlgebraStructure { labels, table })
    }

    /// The algebra with all products zero.
    pub fn abelian(dim: usize) -> Self {
        let labels = (0..dim).map(|i| format!("b{i}")).collect();
        AlgebraStructure::new(labels, std::iter::empty()).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `[b_i, b_j]`.
    pub fn product(&self, i: usize, j: usize) -> &SparseVector {
        &self.table[i * self.dim() + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.product(i, j).get(k)
    }

    /// Nonzero structure constants as `(i, j, k, c)`, sorted by `(i, j, k)`.
    pub fn nonzero_products(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> + '_ {
        let n = self.dim();
        self.table
            .iter()
            .enumerate()
            .flat_map(move |(ij, v)| v.iter().map(move |(k, c)| (ij / n, ij % n, k, c)))
    }

    /// Bilinear extension of the bracket to arbitrary vectors.
    pub fn bracket(&self, u: &SparseVector, v: &SparseVector) -> SparseVector {
        let n = self.dim();
        let mut acc: Vec<(usize, Rational)> = Vec::new();
        for (i, a) in u.iter() {
            for (j, b) in v.iter() {
                let ab = a * b;
                for (k, c) in self.product(i, j).iter() {
                    acc.push((k, &ab * c));
                }
            }
        }
        SparseVector::from_pairs(n, acc)
    }

    pub fn basis_vector(&self, i: usize) -> SparseVector {
        SparseVector::unit(self.dim(), i)
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (i..n).all(|j| self.product(i, j).add_scaled(&Rational::ONE, self.product(j, i)).is_zero())
        })
    }

    /// Structure constants of the subalgebra spanned by the given basis
    /// vectors, or `None` if their span is not closed under the bracket.
    pub fn restrict(&self, indices: &[usize]) -> Option<AlgebraStructure> {
        let mut pos = vec![usize::MAX; self.dim()];
        for (p, &i) in indices.iter().enumerate() {
            pos[i] = p;
        }
        let mut records = Vec::new();
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                for (k, c) in self.product(i, j).iter() {
                    if pos[k] == usize::MAX {
                        return None;
                    }
                    records.push((a, b, pos[k], c.clone()));
                }
            }
        }
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        AlgebraStructure::new(labels, records).ok()
    }

    /// Right multiplication `z -> [z, x]` as a matrix.
    pub fn right_multiplication(&self, x: &SparseVector) -> SparseRationalMatrix {
        let n = self.dim();
        let triplets = (0..n).flat_map(|p| {
            let image = self.bracket(&self.basis_vector(p), x);
            image.iter().map(|(q, c)| (q, p, c.clone())).collect::<Vec<_>>()
        });
        SparseRationalMatrix::from_triplets(n, n, triplets).unwrap()
    }

    /// Left multiplication `z -> [x, z]` as a matrix.
    pub fn left_multiplication(&self, x: &SparseVector) -> SparseRationalMatrix {
        let n = self.dim();
        let triplets = (0..n).flat_map(|p| {
            let image = self.bracket(x, &self.basis_vector(p));
            image.iter().map(|(q, c)| (q, p, c.clone())).collect::<Vec<_>>()
        });
        SparseRationalMatrix::from_triplets(n, n, triplets).unwrap()
    }
}

impl fmt::Debug for AlgebraStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "AlgebraStructure(dim {}, basis {:?})", self.dim(), self.labels)?;
        for (i, j, k, c) in self.nonzero_products() {
            writeln!(f, "  [{}, {}] += {:?} {}", self.labels[i], self.labels[j], c, self.labels[k])?;
        }
        Ok(())
    }
}

/// Integer degree of each basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grading {
    degrees: Vec<i32>,
}

impl Grading {
    pub fn new(degrees: Vec<i32>) -> Self {
        Grading { degrees }
    }

    /// Everything in degree 0.
    pub fn trivial(dim: usize) -> Self {
        Grading { degrees: vec![0; dim] }
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Basis indices of the given degree, ascending.
    pub fn component(&self, degree: i32) -> Vec<usize> {
        (0..self.degrees.len()).filter(|&i| self.degrees[i] == degree).collect()
    }

    /// Distinct degrees that occur, ascending.
    pub fn support(&self) -> Vec<i32> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d.dedup();
        d
    }
}

/// Left and right actions of an algebra on a coefficient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    algebra_dim: usize,
    module_dim: usize,
    /// `left[x]` is the matrix of `m -> [x, m]`.
    left: Vec<SparseRationalMatrix>,
    /// `right[x]` is the matrix of `m -> [m, x]`.
    right: Vec<SparseRationalMatrix>,
}

impl Bimodule {
    pub fn new(
        module_dim: usize,
        left: Vec<SparseRationalMatrix>,
        right: Vec<SparseRationalMatrix>,
    ) -> Result<Self, AlgebraError> {
        if left.len() != right.len() {
            return Err(AlgebraError::DimensionMismatch { algebra: right.len(), module_over: left.len() });
        }
        for m in left.iter().chain(&right) {
            if m.rows() != module_dim || m.cols() != module_dim {
                return Err(AlgebraError::InvalidParameter(format!(
                    "action matrix is {}x{}, expected {module_dim}x{module_dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Bimodule { algebra_dim: right.len(), module_dim, left, right })
    }

    /// Right actions only; the left action is zero.
    pub fn from_right_action(module_dim: usize, right: Vec<SparseRationalMatrix>) -> Result<Self, AlgebraError> {
        let left = vec![SparseRationalMatrix::zeros(module_dim, module_dim); right.len()];
        Bimodule::new(module_dim, left, right)
    }

    /// The symmetric Leibniz module of a right Lie module: `[x, m] = -[m, x]`.
    pub fn symmetric_from_right_action(
        module_dim: usize,
        right: Vec<SparseRationalMatrix>,
    ) -> Result<Self, AlgebraError> {
        let neg = -Rational::ONE;
        let left = right
            .iter()
            .map(|m| {
                SparseRationalMatrix::from_triplets(m.rows(), m.cols(), m.entries().map(|(r, c, v)| (r, c, v * &neg)))
                    .unwrap()
            })
            .collect();
        Bimodule::new(module_dim, left, right)
    }

    /// Zero actions of a `algebra_dim`-dimensional algebra.
    pub fn trivial(algebra_dim: usize, module_dim: usize) -> Self {
        let zero = SparseRationalMatrix::zeros(module_dim, module_dim);
        Bimodule { algebra_dim, module_dim, left: vec![zero.clone(); algebra_dim], right: vec![zero; algebra_dim] }
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn left_action(&self, x: usize) -> &SparseRationalMatrix {
        &self.left[x]
    }

    pub fn right_action(&self, x: usize) -> &SparseRationalMatrix {
        &self.right[x]
    }

    pub fn has_zero_left_action(&self) -> bool {
        self.left.iter().all(SparseRationalMatrix::is_zero)
    }
}

/// Which identity a violation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityKind {
    /// `[x,[y,z]] = [[x,y],z] - [[x,z],y]`, triple `(x, y, z)`.
    Leibniz,
    /// `[m,[x,y]] = [[m,x],y] - [[m,y],x]`, triple `(m, x, y)`.
    ModuleRight,
    /// `[x,[m,y]] = [[x,m],y] - [[x,y],m]`, triple `(x, m, y)`.
    ModuleMiddle,
    /// `[x,[y,m]] = [[x,y],m] - [[x,m],y]`, triple `(x, y, m)`.
    ModuleLeft,
}

/// A basis triple on which an identity fails, with `defect = LHS - RHS`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityViolation {
    pub kind: IdentityKind,
    pub triple: (usize, usize, usize),
    pub defect: SparseVector,
}

/// Every basis triple violating the Leibniz identity.
pub fn leibniz_defects(a: &AlgebraStructure) -> Vec<IdentityViolation> {
    let n = a.dim();
    let one = Rational::ONE;
    let minus = -Rational::ONE;
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let xy = a.product(x, y);
            for z in 0..n {
                let lhs = a.bracket(&a.basis_vector(x), a.product(y, z));
                let xy_z = a.bracket(xy, &a.basis_vector(z));
                let xz_y = a.bracket(a.product(x, z), &a.basis_vector(y));
                let defect = lhs.add_scaled(&minus, &xy_z).add_scaled(&one, &xz_y);
                if !defect.is_zero() {
                    out.push(IdentityViolation { kind: IdentityKind::Leibniz, triple: (x, y, z), defect });
                }
            }
        }
    }
    out
}

/// Span of the polarized squares `[b_i,b_j] + [b_j,b_i]`, `i <= j`.
///
/// For a Leibniz algebra this is the two-sided ideal generated by all
/// squares `[x,x]`.
pub fn squares_ideal(a: &AlgebraStructure) -> Subspace {
    let n = a.dim();
    let mut gens = Vec::new();
    for i in 0..n {
        for j in i..n {
            let s = a.product(i, j).add_scaled(&Rational::ONE, a.product(j, i));
            if !s.is_zero() {
                gens.push(s);
            }
        }
    }
    let ideal = Subspace::span(n, &gens);
    debug_assert!(
        !leibniz_defects(a).is_empty() || is_two_sided_ideal(a, &ideal),
        "span of squares is not closed under multiplication"
    );
    ideal
}

/// Whether `s` is closed under left and right multiplication by `a`.
pub fn is_two_sided_ideal(a: &AlgebraStructure, s: &Subspace) -> bool {
    (0..a.dim()).all(|x| {
        let bx = a.basis_vector(x);
        s.basis().iter().all(|v| s.contains(&a.bracket(&bx, v)) && s.contains(&a.bracket(v, &bx)))
    })
}

/// Span of all products of elements of `s`.
pub fn derived_subspace(a: &AlgebraStructure, s: &Subspace) -> Subspace {
    let prods: Vec<SparseVector> = s
        .basis()
        .iter()
        .flat_map(|u| s.basis().iter().map(move |v| a.bracket(u, v)))
        .collect();
    Subspace::span(a.dim(), &prods)
}

/// Dimensions of `S = S^[1], S^[2] = [S,S], ...`, at most `max_steps` terms,
/// stopping after the first zero term.
pub fn derived_series_of(a: &AlgebraStructure, s: &Subspace, max_steps: usize) -> Vec<usize> {
    let mut dims = vec![s.dim()];
    let mut current = s.clone();
    while dims.len() < max_steps.max(1) && !current.is_zero() {
        let next = derived_subspace(a, &current);
        dims.push(next.dim());
        if next.dim() == current.dim() {
            // Stable from here on.
            while dims.len() < max_steps {
                dims.push(next.dim());
            }
            break;
        }
        current = next;
    }
    dims
}

pub fn derived_series(a: &AlgebraStructure, max_steps: usize) -> Vec<usize> {
    derived_series_of(a, &Subspace::full(a.dim()), max_steps)
}

/// Whether the subalgebra spanned by `s` is solvable.
pub fn is_solvable_subalgebra(a: &AlgebraStructure, s: &Subspace) -> bool {
    derived_series_of(a, s, s.dim() + 2).last() == Some(&0)
}

pub fn is_solvable(a: &AlgebraStructure) -> bool {
    is_solvable_subalgebra(a, &Subspace::full(a.dim()))
}

/// Whether every nonzero `[b_i, b_j]` lies in degree `deg(i) + deg(j)`.
pub fn check_grading(a: &AlgebraStructure, g: &Grading) -> bool {
    g.len() == a.dim()
        && a.nonzero_products().all(|(i, j, k, _)| g.degree(k) == g.degree(i) + g.degree(j))
}

fn apply(m: &SparseRationalMatrix, v: &SparseVector) -> SparseVector {
    m.mul_vec(v)
}

/// Every basis triple on which one of the three bimodule axioms fails.
pub fn check_bimodule_axioms(
    a: &AlgebraStructure,
    module: &Bimodule,
) -> Result<Vec<IdentityViolation>, AlgebraError> {
    if module.algebra_dim() != a.dim() {
        return Err(AlgebraError::DimensionMismatch { algebra: a.dim(), module_over: module.algebra_dim() });
    }
    let n = a.dim();
    let d = module.module_dim();
    let minus = -Rational::ONE;
    let one = Rational::ONE;
    // Action of an arbitrary algebra element.
    let act = |mats: &[SparseRationalMatrix], x: &SparseVector, v: &SparseVector| {
        let mut acc = SparseVector::zero(d);
        for (i, c) in x.iter() {
            acc = acc.add_scaled(c, &apply(&mats[i], v));
        }
        acc
    };
    let mut out = Vec::new();
    for m in 0..d {
        let mv = SparseVector::unit(d, m);
        for x in 0..n {
            for y in 0..n {
                let xy = a.product(x, y);
                let rx = apply(&module.right[x], &mv);
                let ry = apply(&module.right[y], &mv);
                let lx = apply(&module.left[x], &mv);
                // [m,[x,y]] = [[m,x],y] - [[m,y],x]
                let defect = act(&module.right, xy, &mv)
                    .add_scaled(&minus, &apply(&module.right[y], &rx))
                    .add_scaled(&one, &apply(&module.right[x], &ry));
                if !defect.is_zero() {
                    out.push(IdentityViolation { kind: IdentityKind::ModuleRight, triple: (m, x, y), defect });
                }
                // [x,[m,y]] = [[x,m],y] - [[x,y],m]
                let defect = apply(&module.left[x], &ry)
                    .add_scaled(&minus, &apply(&module.right[y], &lx))
                    .add_scaled(&one, &act(&module.left, xy, &mv));
                if !defect.is_zero() {
                    out.push(IdentityViolation { kind: IdentityKind::ModuleMiddle, triple: (x, m, y), defect });
                }
                // [x,[y,m]] = [[x,y],m] - [[x,m],y]
                let ly = apply(&module.left[y], &mv);
                let defect = apply(&module.left[x], &ly)
                    .add_scaled(&minus, &act(&module.left, xy, &mv))
                    .add_scaled(&one, &apply(&module.right[y], &lx));
                if !defect.is_zero() {
                    out.push(IdentityViolation { kind: IdentityKind::ModuleLeft, triple: (x, y, m), defect });
                }
            }
        }
    }
    Ok(out)
}

/// The algebra acting on itself by left and right multiplication.
pub fn adjoint_bimodule(a: &AlgebraStructure) -> Bimodule {
    let n = a.dim();
    let left = (0..n).map(|x| a.left_multiplication(&a.basis_vector(x))).collect();
    let right = (0..n).map(|x| a.right_multiplication(&a.basis_vector(x))).collect();
    Bimodule { algebra_dim: n, module_dim: n, left, right }
}

/// Checks that `a` is antisymmetric and satisfies the Jacobi identity
/// (equivalently, antisymmetric and Leibniz).
pub fn check_lie(a: &AlgebraStructure) -> Result<(), AlgebraError> {
    if !a.is_antisymmetric() {
        return Err(AlgebraError::NotLie("bracket is not antisymmetric".into()));
    }
    let defects = leibniz_defects(a);
    if let Some(v) = defects.first() {
        return Err(AlgebraError::NotLie(format!(
            "Jacobi identity fails on {} triples, first {:?}",
            defects.len(),
            v.triple
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_dim_square() -> AlgebraStructure {
        AlgebraStructure::new(vec!["b".into()], vec![(0, 0, 0, Rational::ONE)]).unwrap()
    }

    #[test]
    fn abelian_is_leibniz_and_solvable() {
        let a = AlgebraStructure::abelian(3);
        assert!(leibniz_defects(&a).is_empty());
        assert_eq!(squares_ideal(&a).dim(), 0);
        assert_eq!(derived_series(&a, 5), vec![3, 0]);
        assert!(is_solvable(&a));
        let adj = adjoint_bimodule(&a);
        assert!((0..3).all(|x| adj.left_action(x).is_zero() && adj.right_action(x).is_zero()));
    }

    #[test]
    fn one_dim_with_square() {
        // [b,b] = b is not Leibniz ([b,[b,b]] = b but [[b,b],b] - [[b,b],b] = 0),
        // but its span of squares is still computed.
        let a = one_dim_square();
        assert_eq!(squares_ideal(&a).dim(), 1);
        assert_eq!(leibniz_defects(&a).len(), 1);
    }

    #[test]
    fn out_of_range_records_rejected() {
        assert!(AlgebraStructure::new(vec!["a".into()], vec![(0, 1, 0, Rational::ONE)]).is_err());
    }

    #[test]
    fn trivial_grading_always_valid() {
        let a = one_dim_square();
        assert!(check_grading(&a, &Grading::trivial(1)));
        assert!(!check_grading(&a, &Grading::new(vec![1])));
        assert!(!check_grading(&a, &Grading::new(vec![0, 0])));
    }

    #[test]
    fn zero_actions_satisfy_axioms() {
        let a = AlgebraStructure::abelian(2);
        assert!(check_bimodule_axioms(&a, &Bimodule::trivial(2, 3)).unwrap().is_empty());
        assert!(check_bimodule_axioms(&a, &Bimodule::trivial(3, 3)).is_err());
    }
}
