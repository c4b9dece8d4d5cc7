//! Built-in algebras: `sl2`, its irreducible modules `V_m`, the simple
//! Leibniz algebras `L_m = sl2 + V_m`, plus direct sums.
//!
//! Basis order for `L_m` is fixed as `(e, f, h, x_0, ..., x_m)`.

mod format;

pub use format::{load, parse, save, to_text, AlgebraFile, MAX_FILE_DIM};

use crate::algebra::{check_lie, AlgebraStructure, Bimodule, Grading};
use crate::error::AlgebraError;
use crate::linalg::{Rational, SparseRationalMatrix};

pub const E: usize = 0;
pub const F: usize = 1;
pub const H: usize = 2;

/// Index of `x_k` in `L_m`.
pub const fn x_index(k: usize) -> usize {
    3 + k
}

fn sl2_products() -> Vec<(usize, usize, usize, Rational)> {
    let r = Rational::from_int;
    vec![
        (E, H, E, r(2)),
        (H, F, F, r(2)),
        (E, F, H, r(1)),
        (H, E, E, r(-2)),
        (F, H, F, r(-2)),
        (F, E, H, r(-1)),
    ]
}

/// `sl2` on the basis `(e, f, h)`.
pub fn sl2() -> AlgebraStructure {
    AlgebraStructure::new(vec!["e".into(), "f".into(), "h".into()], sl2_products()).unwrap()
}

/// Right action of `sl2` on `V_m` (basis `x_0..x_m`), as `(x, k, target, coeff)`:
/// `[x_k, e] = -k(m+1-k) x_{k-1}`, `[x_k, f] = x_{k+1}`, `[x_k, h] = (m-2k) x_k`.
fn vm_right_action(m: usize) -> Vec<(usize, usize, usize, Rational)> {
    let mi = m as i64;
    let mut out = Vec::new();
    for k in 1..=m {
        let ki = k as i64;
        out.push((E, k, k - 1, Rational::from_int(-ki * (mi + 1 - ki))));
    }
    for k in 0..m {
        out.push((F, k, k + 1, Rational::ONE));
    }
    for k in 0..=m {
        let c = mi - 2 * k as i64;
        if c != 0 {
            out.push((H, k, k, Rational::from_int(c)));
        }
    }
    out
}

/// The `(m+1)`-dimensional irreducible right `sl2`-module with zero left action.
pub fn irreducible_sl2_module(m: usize) -> Bimodule {
    let d = m + 1;
    let mut right: Vec<Vec<(usize, usize, Rational)>> = vec![Vec::new(); 3];
    for (x, k, t, c) in vm_right_action(m) {
        right[x].push((t, k, c));
    }
    let right = right
        .into_iter()
        .map(|t| SparseRationalMatrix::from_triplets(d, d, t).unwrap())
        .collect();
    Bimodule::from_right_action(d, right).unwrap()
}

/// `V_m` as a symmetric Leibniz module over `sl2`: `[x, v] = -[v, x]`.
pub fn symmetric_sl2_module(m: usize) -> Bimodule {
    let vm = irreducible_sl2_module(m);
    let right = (0..3).map(|x| vm.right_action(x).clone()).collect();
    Bimodule::symmetric_from_right_action(m + 1, right).unwrap()
}

/// The `(m+4)`-dimensional simple Leibniz algebra `sl2 + V_m` with its
/// grading `(0,0,0,1,...,1)`. Requires `m >= 2`.
pub fn simple_leibniz_sl2(m: usize) -> Result<(AlgebraStructure, Grading), AlgebraError> {
    if m < 2 {
        return Err(AlgebraError::InvalidParameter(format!("m must be at least 2, got {m}")));
    }
    let mut labels: Vec<String> = vec!["e".into(), "f".into(), "h".into()];
    labels.extend((0..=m).map(|k| format!("x{k}")));
    let mut products = sl2_products();
    for (x, k, t, c) in vm_right_action(m) {
        products.push((x_index(k), x, x_index(t), c));
    }
    // Nothing is listed with a left factor in sl2 and right factor in V_m,
    // so that action is zero.
    let algebra = AlgebraStructure::new(labels, products)?;
    debug_assert!((0..3).all(|g| (0..=m).all(|k| algebra.product(g, x_index(k)).is_zero())));
    let mut degrees = vec![0; 3];
    degrees.extend(std::iter::repeat(1).take(m + 1));
    Ok((algebra, Grading::new(degrees)))
}

/// Returns a Lie algebra unchanged after checking antisymmetry and Jacobi;
/// every Lie algebra is a Leibniz algebra.
pub fn lie_as_leibniz(table: &AlgebraStructure) -> Result<AlgebraStructure, AlgebraError> {
    check_lie(table)?;
    Ok(table.clone())
}

/// Block-diagonal direct sum. Labels of `b` that clash with labels of `a`
/// get a `'` suffix.
pub fn direct_sum(a: &AlgebraStructure, b: &AlgebraStructure) -> AlgebraStructure {
    let n = a.dim();
    let mut labels: Vec<String> = a.labels().to_vec();
    for l in b.labels() {
        let mut label = l.clone();
        while labels.contains(&label) {
            label.push('\'');
        }
        labels.push(label);
    }
    let records = a
        .nonzero_products()
        .map(|(i, j, k, c)| (i, j, k, c.clone()))
        .chain(b.nonzero_products().map(|(i, j, k, c)| (i + n, j + n, k + n, c.clone())))
        .collect::<Vec<_>>();
    AlgebraStructure::new(labels, records).unwrap()
}

/// Concatenated gradings for a direct sum.
pub fn direct_sum_grading(a: &Grading, b: &Grading) -> Grading {
    let mut d = a.degrees().to_vec();
    d.extend_from_slice(b.degrees());
    Grading::new(d)
}
