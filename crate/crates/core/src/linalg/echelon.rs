//! Sparse Gaussian elimination.
//!
//! Pivots are chosen greedily: the active column with the fewest live
//! entries, then the shortest row in that column (ties broken by the
//! smaller pivot value, then by row index so results are deterministic).
//! The pivot row is scaled to 1 and subtracted from every other row that
//! touches the pivot column.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::field::Field;
use super::sparse::{axpy, Row};

/// Result of eliminating a matrix: the pivot rows in the order they were
/// chosen. Row `t` has a 1 in column `pivot_cols[t]` and its remaining
/// entries lie in free columns or in pivot columns chosen after step `t`.
pub(crate) struct Echelon<F> {
    cols: usize,
    pivot_cols: Vec<usize>,
    pivot_rows: Vec<Row<F>>,
}

impl<F: Field> Echelon<F> {
    pub(crate) fn rank(&self) -> usize {
        self.pivot_cols.len()
    }

    /// Basis of the null space: one vector per free column, with a 1 in that
    /// column and 0 in every other free column.
    pub(crate) fn kernel(&self) -> Vec<Row<F>> {
        let mut is_pivot = vec![false; self.cols];
        for &c in &self.pivot_cols {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Vec::with_capacity(free.len());
        let mut x = vec![F::zero(); self.cols];
        for &f in &free {
            x.iter_mut().for_each(|v| *v = F::zero());
            x[f] = F::one();
            for t in (0..self.pivot_rows.len()).rev() {
                let pc = self.pivot_cols[t];
                let mut acc = F::zero();
                for (c, a) in &self.pivot_rows[t] {
                    if *c != pc && !x[*c].is_zero() {
                        acc = acc.add(&a.mul(&x[*c]));
                    }
                }
                x[pc] = acc.neg();
            }
            out.push(x.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect());
        }
        out
    }
}

pub(crate) fn eliminate<F: Field>(cols: usize, rows: Vec<Row<F>>) -> Echelon<F> {
    let mut rows: Vec<Option<Row<F>>> = rows.into_iter().map(|r| (!r.is_empty()).then_some(r)).collect();
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); cols];
    let mut col_count = vec![0usize; cols];
    for (r, row) in rows.iter().enumerate() {
        if let Some(row) = row {
            for (c, _) in row {
                col_rows[*c].push(r);
                col_count[*c] += 1;
            }
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..cols).filter(|&c| col_count[c] > 0).map(|c| Reverse((col_count[c], c))).collect();
    let mut done = vec![false; cols];
    let mut pivot_cols = Vec::new();
    let mut pivot_rows = Vec::new();
    let mut candidates: Vec<usize> = Vec::new();
    let mut touched: Vec<usize> = Vec::new();

    while let Some(Reverse((count, col))) = heap.pop() {
        if done[col] || count != col_count[col] || count == 0 {
            continue;
        }
        if pivot_cols.len() == cols {
            break;
        }
        // Live rows containing `col`; the index may hold stale or repeated ids.
        candidates.clear();
        let mut list = std::mem::take(&mut col_rows[col]);
        list.sort_unstable();
        list.dedup();
        for &r in &list {
            if let Some(row) = &rows[r] {
                if row.binary_search_by_key(&col, |(c, _)| *c).is_ok() {
                    candidates.push(r);
                }
            }
        }
        if candidates.is_empty() {
            col_count[col] = 0;
            continue;
        }
        let pivot_id = *candidates
            .iter()
            .min_by_key(|&&r| {
                let row = rows[r].as_ref().unwrap();
                let pos = row.binary_search_by_key(&col, |(c, _)| *c).unwrap();
                (row.len(), row[pos].1.height(), r)
            })
            .unwrap();
        let mut pivot = rows[pivot_id].take().unwrap();
        let pos = pivot.binary_search_by_key(&col, |(c, _)| *c).unwrap();
        let inv = pivot[pos].1.inv();
        if inv != F::one() {
            for (_, v) in pivot.iter_mut() {
                *v = v.mul(&inv);
            }
        }
        done[col] = true;
        touched.clear();
        for (c, _) in &pivot {
            col_count[*c] -= 1;
            touched.push(*c);
        }

        for &r in &candidates {
            if r == pivot_id {
                continue;
            }
            let row = rows[r].take().unwrap();
            let pos = row.binary_search_by_key(&col, |(c, _)| *c).unwrap();
            let factor = row[pos].1.neg();
            let updated = axpy(&row, &factor, &pivot);
            // Column membership diff between `row` and `updated`.
            let (mut i, mut j) = (0, 0);
            while i < row.len() || j < updated.len() {
                let a = row.get(i).map(|(c, _)| *c);
                let b = updated.get(j).map(|(c, _)| *c);
                match (a, b) {
                    (Some(x), Some(y)) if x == y => {
                        i += 1;
                        j += 1;
                    }
                    (Some(x), Some(y)) if x < y => {
                        col_count[x] -= 1;
                        touched.push(x);
                        i += 1;
                    }
                    (Some(x), None) => {
                        col_count[x] -= 1;
                        touched.push(x);
                        i += 1;
                    }
                    (_, Some(y)) => {
                        col_count[y] += 1;
                        col_rows[y].push(r);
                        touched.push(y);
                        j += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            if !updated.is_empty() {
                rows[r] = Some(updated);
            }
        }
        // Rows that still contain `col` after elimination cannot exist.
        col_count[col] = 0;
        touched.sort_unstable();
        touched.dedup();
        for &c in &touched {
            if !done[c] && col_count[c] > 0 {
                heap.push(Reverse((col_count[c], c)));
            }
        }
        pivot_cols.push(col);
        pivot_rows.push(pivot);
    }
    Echelon { cols, pivot_cols, pivot_rows }
}

/// Reduced row echelon form of the span of `rows`: leading entries equal 1,
/// sorted by leading column, and each leading column zero in every other row.
pub(crate) fn rref<F: Field>(cols: usize, rows: impl IntoIterator<Item = Row<F>>) -> Vec<Row<F>> {
    let mut basis: Vec<(usize, Row<F>)> = Vec::new();
    let mut dense = vec![F::zero(); cols];
    for row in rows {
        if row.is_empty() {
            continue;
        }
        for (c, v) in &row {
            dense[*c] = v.clone();
        }
        // Basis rows are fully reduced, so one pass in pivot order suffices.
        for (pc, brow) in &basis {
            let coef = dense[*pc].clone();
            if coef.is_zero() {
                continue;
            }
            for (c, v) in brow {
                dense[*c] = dense[*c].sub(&coef.mul(v));
            }
        }
        let lead = dense.iter().position(|v| !v.is_zero());
        let Some(lead) = lead else {
            continue;
        };
        let inv = dense[lead].inv();
        let mut new_row: Row<F> = Vec::new();
        for (c, v) in dense.iter_mut().enumerate() {
            if !v.is_zero() {
                new_row.push((c, v.mul(&inv)));
                *v = F::zero();
            }
        }
        for (_, brow) in basis.iter_mut() {
            if let Ok(pos) = brow.binary_search_by_key(&lead, |(c, _)| *c) {
                let coef = brow[pos].1.neg();
                *brow = axpy(brow, &coef, &new_row);
            }
        }
        basis.push((lead, new_row));
    }
    basis.sort_by_key(|(pc, _)| *pc);
    basis.into_iter().map(|(_, r)| r).collect()
}
