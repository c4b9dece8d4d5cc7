use super::echelon::{eliminate, rref};
use super::rational::Rational;
use super::sparse::{Row, SparseVector};
use crate::error::LinalgError;

/// A linear subspace of `Q^ambient_dim`, kept in reduced row echelon form.
///
/// Basis vectors are the rows of the RREF matrix (leading entry 1, leading
/// columns strictly increasing, each leading column zero in every other
/// basis vector). Two subspaces are equal exactly when their bases are.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<SparseVector>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| SparseVector::unit(ambient_dim, i)).collect(),
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span<'a>(ambient_dim: usize, vectors: impl IntoIterator<Item = &'a SparseVector>) -> Self {
        let rows = vectors.into_iter().map(|v| {
            assert_eq!(v.dim(), ambient_dim, "vector dimension does not match ambient dimension");
            v.entries().to_vec()
        });
        Self::from_rows(ambient_dim, rows)
    }

    pub(crate) fn from_rows(ambient_dim: usize, rows: impl IntoIterator<Item = Row<Rational>>) -> Self {
        let basis = rref(ambient_dim, rows)
            .into_iter()
            .map(|r| SparseVector::from_sorted(ambient_dim, r))
            .collect();
        Subspace { ambient_dim, basis }
    }

    /// The span of the given coordinate axes.
    pub fn coordinate(ambient_dim: usize, coords: &[usize]) -> Result<Self, LinalgError> {
        check_coords(ambient_dim, coords)?;
        let mut c = coords.to_vec();
        c.sort_unstable();
        c.dedup();
        Ok(Subspace { ambient_dim, basis: c.into_iter().map(|i| SparseVector::unit(ambient_dim, i)).collect() })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[SparseVector] {
        &self.basis
    }

    /// Leading column of each basis vector.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|v| v.entries()[0].0).collect()
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        assert_eq!(v.dim(), self.ambient_dim, "dimension mismatch");
        let mut r = v.clone();
        for b in &self.basis {
            let lead = b.entries()[0].0;
            let c = r.get(lead);
            if !c.is_zero() {
                r = r.add_scaled(&-&c, b);
            }
        }
        r.is_zero()
    }

    /// Image under the coordinate projection onto `coords` (in the given
    /// order); the result lives in `Q^coords.len()`.
    pub fn project(&self, coords: &[usize]) -> Result<Subspace, LinalgError> {
        check_coords(self.ambient_dim, coords)?;
        let map = position_map(self.ambient_dim, coords);
        let rows = self.basis.iter().map(|v| remap(v, &map));
        Ok(Self::from_rows(coords.len(), rows))
    }

    /// Vectors of this subspace that vanish outside `coords`, in the full
    /// ambient space.
    pub fn restrict_to_coords(&self, coords: &[usize]) -> Result<Subspace, LinalgError> {
        check_coords(self.ambient_dim, coords)?;
        let mut inside = vec![false; self.ambient_dim];
        for &c in coords {
            inside[c] = true;
        }
        // Columns of the constraint system are basis vectors, rows are the
        // outside coordinates that must cancel.
        let mut constraint: Vec<Row<Rational>> = vec![Vec::new(); self.ambient_dim];
        for (k, v) in self.basis.iter().enumerate() {
            for (i, x) in v.iter() {
                if !inside[i] {
                    constraint[i].push((k, x.clone()));
                }
            }
        }
        let constraint: Vec<Row<Rational>> = constraint.into_iter().filter(|r| !r.is_empty()).collect();
        let kernel = eliminate(self.dim(), constraint).kernel();
        let combos = kernel.into_iter().map(|lambda| {
            let mut acc = SparseVector::zero(self.ambient_dim);
            for (k, l) in &lambda {
                acc = acc.add_scaled(l, &self.basis[*k]);
            }
            acc.entries().to_vec()
        });
        Ok(Self::from_rows(self.ambient_dim, combos))
    }

    /// Dimension of the kernel of the projection onto `coords`.
    pub fn projection_kernel_dim(&self, coords: &[usize]) -> Result<usize, LinalgError> {
        Ok(self.dim() - self.project(coords)?.dim())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let rows = self.basis.iter().chain(other.basis.iter()).map(|v| v.entries().to_vec());
        Ok(Self::from_rows(self.ambient_dim, rows))
    }

    pub fn sum_dim(&self, other: &Subspace) -> Result<usize, LinalgError> {
        Ok(self.sum(other)?.dim())
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_ambient(other)?;
        Ok(self.basis == other.basis)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_ambient(other)?;
        Ok(self.basis.iter().all(|v| other.contains(v)))
    }

    /// Places this subspace into a larger ambient space: local coordinate `k`
    /// becomes coordinate `coords[k]`.
    pub fn embed(&self, ambient_dim: usize, coords: &[usize]) -> Result<Subspace, LinalgError> {
        if coords.len() != self.ambient_dim {
            return Err(LinalgError::AmbientMismatch { left: self.ambient_dim, right: coords.len() });
        }
        check_coords(ambient_dim, coords)?;
        let rows = self.basis.iter().map(|v| {
            let mut r: Row<Rational> = v.iter().map(|(i, x)| (coords[i], x.clone())).collect();
            r.sort_by_key(|(c, _)| *c);
            r
        });
        Ok(Self::from_rows(ambient_dim, rows))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch { left: self.ambient_dim, right: other.ambient_dim });
        }
        Ok(())
    }
}

fn check_coords(ambient: usize, coords: &[usize]) -> Result<(), LinalgError> {
    match coords.iter().find(|&&c| c >= ambient) {
        Some(&c) => Err(LinalgError::IndexOutOfRange { index: c, bound: ambient }),
        None => Ok(()),
    }
}

fn position_map(ambient: usize, coords: &[usize]) -> Vec<Vec<usize>> {
    let mut map = vec![Vec::new(); ambient];
    for (pos, &c) in coords.iter().enumerate() {
        map[c].push(pos);
    }
    map
}

fn remap(v: &SparseVector, map: &[Vec<usize>]) -> Row<Rational> {
    let mut r: Row<Rational> = Vec::new();
    for (i, x) in v.iter() {
        for &p in &map[i] {
            r.push((p, x.clone()));
        }
    }
    r.sort_by_key(|(c, _)| *c);
    r
}
