use std::fmt;

use super::rational::Rational;
use crate::error::LinalgError;

/// Sorted `(index, value)` pairs with no stored zeros.
pub(crate) type Row<F> = Vec<(usize, F)>;

/// A coordinate vector over the rationals, stored sparsely.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVector {
    dim: usize,
    entries: Vec<(usize, Rational)>,
}

impl SparseVector {
    pub fn zero(dim: usize) -> Self {
        SparseVector { dim, entries: Vec::new() }
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        assert!(index < dim, "unit vector index {index} out of range for dimension {dim}");
        SparseVector { dim, entries: vec![(index, Rational::ONE)] }
    }

    /// Builds a vector from unsorted pairs, summing repeated indices.
    pub fn from_pairs(dim: usize, pairs: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut entries: Vec<(usize, Rational)> = pairs.into_iter().collect();
        for (i, _) in &entries {
            assert!(*i < dim, "index {i} out of range for dimension {dim}");
        }
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Rational)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc = &*acc + &v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        SparseVector { dim, entries: out }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVector {
            dim: values.len(),
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub(crate) fn from_sorted(dim: usize, entries: Vec<(usize, Rational)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(i, v)| *i < dim && !v.is_zero()));
        SparseVector { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Rational {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Rational::ZERO,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        let mut out = vec![Rational::ZERO; self.dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, factor: &Rational, other: &SparseVector) -> SparseVector {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        if factor.is_zero() {
            return self.clone();
        }
        SparseVector { dim: self.dim, entries: axpy(&self.entries, factor, &other.entries) }
    }

    pub fn scale(&self, factor: &Rational) -> SparseVector {
        if factor.is_zero() {
            return SparseVector::zero(self.dim);
        }
        SparseVector {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, v)| (*i, v * factor)).collect(),
        }
    }

    pub fn dot(&self, other: &SparseVector) -> Rational {
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        let mut acc = Rational::ZERO;
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            match i.cmp(j) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => {
                    acc = &acc + &(x * y);
                    a.next();
                    b.next();
                }
            }
        }
        acc
    }
}

impl fmt::Debug for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseVector[{}]{{", self.dim)?;
        for (n, (i, v)) in self.entries.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {v:?}")?;
        }
        write!(f, "}}")
    }
}

/// `a + factor * b` on sorted sparse rows, generic over the field.
pub(crate) fn axpy<F: super::field::Field>(a: &[(usize, F)], factor: &F, b: &[(usize, F)]) -> Row<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = factor.mul(&b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.add(&factor.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A sparse matrix over the rationals, stored row-major with sorted rows.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Row<Rational>>,
}

impl SparseRationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseRationalMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, Rational::ONE)]).collect();
        SparseRationalMatrix { rows: n, cols: n, data }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Repeated positions
    /// are summed and zero results dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self, LinalgError> {
        let mut data: Vec<Row<Rational>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows {
                return Err(LinalgError::IndexOutOfRange { index: r, bound: rows });
            }
            if c >= cols {
                return Err(LinalgError::IndexOutOfRange { index: c, bound: cols });
            }
            data[r].push((c, v));
        }
        for row in &mut data {
            normalize_row(row);
        }
        Ok(SparseRationalMatrix { rows, cols, data })
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged dense matrix");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (i, v.clone()))
                    .collect()
            })
            .collect();
        SparseRationalMatrix { rows: rows.len(), cols, data }
    }

    /// Convenience constructor for small integer matrices.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&v| Rational::from_int(v)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        match self.data[row].binary_search_by_key(&col, |(c, _)| *c) {
            Ok(pos) => self.data[row][pos].1.clone(),
            Err(_) => Rational::ZERO,
        }
    }

    pub fn row(&self, row: usize) -> &[(usize, Rational)] {
        &self.data[row]
    }

    pub(crate) fn row_data(&self) -> &[Row<Rational>] {
        &self.data
    }

    /// All stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> SparseRationalMatrix {
        let mut data: Vec<Row<Rational>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        SparseRationalMatrix { rows: self.cols, cols: self.rows, data }
    }

    /// Exact product `self * rhs`.
    pub fn mul(&self, rhs: &SparseRationalMatrix) -> Result<SparseRationalMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: Vec<(usize, Rational)> = Vec::new();
                for (k, a) in row {
                    for (c, b) in &rhs.data[*k] {
                        acc.push((*c, a * b));
                    }
                }
                normalize_row(&mut acc);
                acc
            })
            .collect();
        Ok(SparseRationalMatrix { rows: self.rows, cols: rhs.cols, data })
    }

    pub fn mul_vec(&self, v: &SparseVector) -> SparseVector {
        assert_eq!(v.dim(), self.cols, "dimension mismatch");
        let entries = self
            .data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let x = SparseVector::from_sorted(self.cols, row.clone()).dot(v);
                (!x.is_zero()).then_some((r, x))
            })
            .collect();
        SparseVector::from_sorted(self.rows, entries)
    }

    /// Submatrix on the given rows and columns, in the order given.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<SparseRationalMatrix, LinalgError> {
        let mut col_map = vec![usize::MAX; self.cols];
        for (pos, &c) in cols.iter().enumerate() {
            if c >= self.cols {
                return Err(LinalgError::IndexOutOfRange { index: c, bound: self.cols });
            }
            col_map[c] = pos;
        }
        let mut data = Vec::with_capacity(rows.len());
        for &r in rows {
            if r >= self.rows {
                return Err(LinalgError::IndexOutOfRange { index: r, bound: self.rows });
            }
            let mut row: Row<Rational> = self.data[r]
                .iter()
                .filter(|(c, _)| col_map[*c] != usize::MAX)
                .map(|(c, v)| (col_map[*c], v.clone()))
                .collect();
            row.sort_by_key(|(c, _)| *c);
            data.push(row);
        }
        Ok(SparseRationalMatrix { rows: rows.len(), cols: cols.len(), data })
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &SparseRationalMatrix) -> Result<SparseRationalMatrix, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(SparseRationalMatrix { rows: data.len(), cols: self.cols, data })
    }
}

fn normalize_row(row: &mut Row<Rational>) {
    row.sort_by_key(|(c, _)| *c);
    let mut out: Row<Rational> = Vec::with_capacity(row.len());
    for (c, v) in row.drain(..) {
        match out.last_mut() {
            Some((last, acc)) if *last == c => *acc = &*acc + &v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    *row = out;
}

impl fmt::Debug for SparseRationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseRationalMatrix {}x{} ({} nnz)", self.rows, self.cols, self.nnz())?;
        if self.rows <= 16 && self.cols <= 16 {
            for r in 0..self.rows {
                let cells: Vec<String> = (0..self.cols).map(|c| format!("{:?}", self.get(r, c))).collect();
                writeln!(f, "  [{}]", cells.join(" "))?;
            }
        }
        Ok(())
    }
}
