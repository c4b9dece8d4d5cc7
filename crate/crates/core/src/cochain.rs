//! Leibniz cochain complexes `CL^n(L, M) = Hom(L^{⊗n}, M)` and their
//! coboundary matrices.
//!
//! A cochain coordinate is a tuple `(i_1, ..., i_n; k)`: the coefficient of
//! `m_k` in `f(b_{i_1}, ..., b_{i_n})`. Coordinates are ordered
//! lexicographically, so the flat index is the base-`dim L` number
//! `i_1 ... i_n` times `dim M`, plus `k`.
//!
//! The coboundary is
//!
//! ```text
//! (d f)(x_1..x_{n+1}) = [x_1, f(x_2..x_{n+1})]
//!                     + sum_{i=2}^{n+1} (-1)^i [f(x_1..^x_i..x_{n+1}), x_i]
//!                     + sum_{i<j} (-1)^{j+1} f(x_1..x_{i-1}, [x_i,x_j], x_{i+1}..^x_j..x_{n+1})
//! ```

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{AlgebraStructure, Bimodule, Grading};
use crate::error::CohomologyError;
use crate::linalg::{Rational, Row, SparseRationalMatrix};

/// Highest cochain degree for which coboundaries are assembled.
pub const MAX_DEGREE: usize = 3;

/// Enumeration of the coordinates of `CL^n(L, M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CochainIndex {
    pub n: usize,
    pub algebra_dim: usize,
    pub module_dim: usize,
}

impl CochainIndex {
    pub fn new(n: usize, algebra_dim: usize, module_dim: usize) -> Self {
        CochainIndex { n, algebra_dim, module_dim }
    }

    pub fn len(&self) -> usize {
        self.algebra_dim.pow(self.n as u32) * self.module_dim
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn flat(&self, args: &[usize], k: usize) -> usize {
        debug_assert_eq!(args.len(), self.n);
        let t = args.iter().fold(0usize, |acc, &a| acc * self.algebra_dim + a);
        t * self.module_dim + k
    }

    pub fn tuple(&self, flat: usize) -> (Vec<usize>, usize) {
        let k = flat % self.module_dim;
        let mut t = flat / self.module_dim;
        let mut args = vec![0; self.n];
        for slot in args.iter_mut().rev() {
            *slot = t % self.algebra_dim;
            t /= self.algebra_dim;
        }
        (args, k)
    }

    /// Homogeneity degree of a coordinate: target degree minus the sum of
    /// argument degrees.
    pub fn degree(&self, flat: usize, g: &Grading, mg: &Grading) -> i32 {
        let (args, k) = self.tuple(flat);
        mg.degree(k) - args.iter().map(|&a| g.degree(a)).sum::<i32>()
    }
}

/// Matrix of `d^n : CL^n(L, M) -> CL^{n+1}(L, M)`.
pub fn coboundary_matrix(
    a: &AlgebraStructure,
    module: &Bimodule,
    n: usize,
) -> Result<SparseRationalMatrix, CohomologyError> {
    if n > MAX_DEGREE {
        return Err(CohomologyError::DegreeTooHigh(n));
    }
    if module.algebra_dim() != a.dim() {
        return Err(crate::error::AlgebraError::DimensionMismatch {
            algebra: a.dim(),
            module_over: module.algebra_dim(),
        }
        .into());
    }
    let dim = a.dim();
    let dm = module.module_dim();
    let src = CochainIndex::new(n, dim, dm);
    let dst = CochainIndex::new(n + 1, dim, dm);
    let actions = |left: bool| -> Vec<Vec<(usize, usize, Rational)>> {
        (0..dim)
            .map(|x| {
                let m = if left { module.left_action(x) } else { module.right_action(x) };
                m.entries().map(|(q, p, v)| (q, p, v.clone())).collect()
            })
            .collect()
    };
    let left = actions(true);
    let right = actions(false);
    let tuples = dim.pow(n as u32 + 1);

    let rows: Vec<Row<Rational>> = (0..tuples)
        .into_par_iter()
        .flat_map_iter(|t| {
            let (xs, _) = dst.tuple(t * dm);
            let mut rows: Vec<Row<Rational>> = vec![Vec::new(); dm];
            let mut scratch = Vec::with_capacity(n);
            // [x_1, f(x_2..)]
            for (q, p, v) in &left[xs[0]] {
                rows[*q].push((src.flat(&xs[1..], *p), v.clone()));
            }
            // (-1)^i [f(..^x_i..), x_i]
            for i in 2..=n + 1 {
                scratch.clear();
                scratch.extend(xs.iter().enumerate().filter(|(pos, _)| *pos != i - 1).map(|(_, &x)| x));
                let negate = i % 2 == 1;
                for (q, p, v) in &right[xs[i - 1]] {
                    let v = if negate { -v } else { v.clone() };
                    rows[*q].push((src.flat(&scratch, *p), v));
                }
            }
            // (-1)^{j+1} f(.., [x_i, x_j], .., ^x_j, ..)
            for i in 1..=n + 1 {
                for j in i + 1..=n + 1 {
                    let negate = j % 2 == 0;
                    for (c_idx, c) in a.product(xs[i - 1], xs[j - 1]).iter() {
                        scratch.clear();
                        for (pos, &x) in xs.iter().enumerate() {
                            if pos == j - 1 {
                                continue;
                            }
                            scratch.push(if pos == i - 1 { c_idx } else { x });
                        }
                        let c = if negate { -c } else { c.clone() };
                        for (k, row) in rows.iter_mut().enumerate() {
                            row.push((src.flat(&scratch, k), c.clone()));
                        }
                    }
                }
            }
            rows
        })
        .collect();
    let triplets = rows
        .into_iter()
        .enumerate()
        .flat_map(|(r, row)| row.into_iter().map(move |(c, v)| (r, c, v)));
    Ok(SparseRationalMatrix::from_triplets(dst.len(), src.len(), triplets)?)
}

/// Column indices of `CL^n_(i)`: coordinates whose target degree minus the
/// sum of argument degrees equals `degree`.
pub fn graded_columns(g: &Grading, mg: &Grading, n: usize, degree: i32) -> Vec<usize> {
    let idx = CochainIndex::new(n, g.len(), mg.len());
    (0..idx.len()).filter(|&c| idx.degree(c, g, mg) == degree).collect()
}

/// Every degree `i` for which `CL^n_(i)` is nonzero, ascending.
pub fn cochain_degrees(g: &Grading, mg: &Grading, n: usize) -> Vec<i32> {
    let idx = CochainIndex::new(n, g.len(), mg.len());
    let mut d: Vec<i32> = (0..idx.len()).map(|c| idx.degree(c, g, mg)).collect();
    d.sort_unstable();
    d.dedup();
    d
}

/// Restriction of `d^n` to `CL^n_(i) -> CL^{n+1}_(i)`.
///
/// Fails if some column of degree `i` has an entry in a row of another
/// degree, which means the grading is not compatible with the bracket.
pub fn graded_submatrix(
    d: &SparseRationalMatrix,
    g: &Grading,
    mg: &Grading,
    n: usize,
    degree: i32,
) -> Result<SparseRationalMatrix, CohomologyError> {
    let src = CochainIndex::new(n, g.len(), mg.len());
    let dst = CochainIndex::new(n + 1, g.len(), mg.len());
    if d.cols() != src.len() || d.rows() != dst.len() {
        return Err(crate::error::LinalgError::ShapeMismatch {
            left: (d.rows(), d.cols()),
            right: (dst.len(), src.len()),
        }
        .into());
    }
    let col_deg: Vec<i32> = (0..src.len()).map(|c| src.degree(c, g, mg)).collect();
    let mut rows = Vec::new();
    for r in 0..dst.len() {
        let row_deg = dst.degree(r, g, mg);
        for (c, _) in d.row(r) {
            if col_deg[*c] == degree && row_deg != degree {
                return Err(CohomologyError::GradationBroken { row: r, col: *c, degree });
            }
        }
        if row_deg == degree {
            rows.push(r);
        }
    }
    let cols: Vec<usize> = (0..src.len()).filter(|&c| col_deg[c] == degree).collect();
    Ok(d.select(&rows, &cols)?)
}

/// Argument degrees and target degree of a block of cochain coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSignature {
    pub args: Vec<i32>,
    pub target: i32,
}

impl BlockSignature {
    pub fn new(args: Vec<i32>, target: i32) -> Self {
        BlockSignature { args, target }
    }

    /// Homogeneity degree of coordinates in this block.
    pub fn degree(&self) -> i32 {
        self.target - self.args.iter().sum::<i32>()
    }

    /// Parses the compact form used on the command line, e.g. `GxI->G`,
    /// where `G` is degree 0 and `I` is degree 1.
    pub fn parse(s: &str) -> Option<Self> {
        let (args, target) = s.split_once("->")?;
        let tag = |t: &str| match t.trim() {
            "G" => Some(0),
            "I" => Some(1),
            other => other.strip_prefix('L').and_then(|d| d.parse().ok()),
        };
        let args = args.split('x').map(tag).collect::<Option<Vec<i32>>>()?;
        Some(BlockSignature { args, target: tag(target)? })
    }
}

impl fmt::Display for BlockSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = |d: i32| match d {
            0 => "G".to_string(),
            1 => "I".to_string(),
            d => format!("L{d}"),
        };
        let args: Vec<String> = self.args.iter().map(|&d| tag(d)).collect();
        write!(f, "{}->{}", args.join("x"), tag(self.target))
    }
}

/// The coordinates of `CL^n` sharing one argument/target degree pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBlock {
    pub n: usize,
    pub degree: i32,
    pub signature: BlockSignature,
    /// Flat indices into `CL^n`, ascending.
    pub coords: Vec<usize>,
}

/// All blocks of degree `degree` in `CL^n`, sorted by signature. Together
/// they partition the columns of `CL^n_(i)`.
pub fn graded_blocks(g: &Grading, mg: &Grading, n: usize, degree: i32) -> Vec<GradedBlock> {
    let idx = CochainIndex::new(n, g.len(), mg.len());
    let mut blocks: std::collections::BTreeMap<BlockSignature, Vec<usize>> = Default::default();
    for c in 0..idx.len() {
        let (args, k) = idx.tuple(c);
        let sig = BlockSignature::new(args.iter().map(|&a| g.degree(a)).collect(), mg.degree(k));
        if sig.degree() == degree {
            blocks.entry(sig).or_default().push(c);
        }
    }
    blocks
        .into_iter()
        .map(|(signature, coords)| GradedBlock { n, degree, signature, coords })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::adjoint_bimodule;
    use crate::catalog::{simple_leibniz_sl2, sl2, x_index, E, F, H};
    use crate::linalg::kernel_basis;

    #[test]
    fn index_round_trip() {
        let idx = CochainIndex::new(2, 5, 3);
        assert_eq!(idx.len(), 75);
        for c in 0..idx.len() {
            let (args, k) = idx.tuple(c);
            assert_eq!(idx.flat(&args, k), c);
        }
        assert_eq!(idx.flat(&[1, 2], 0), (5 + 2) * 3);
    }

    #[test]
    fn abelian_coboundaries_vanish() {
        let a = AlgebraStructure::abelian(2);
        let m = Bimodule::trivial(2, 2);
        for n in 0..=3 {
            let d = coboundary_matrix(&a, &m, n).unwrap();
            assert!(d.is_zero());
            assert_eq!(d.cols(), 2usize.pow(n as u32) * 2);
            assert_eq!(d.rows(), 2usize.pow(n as u32 + 1) * 2);
        }
        assert!(coboundary_matrix(&a, &m, 4).is_err());
    }

    /// Hand expansion of `(d^1 t)(x, y) = [x, t(y)] + [t(x), y] - t([x, y])`
    /// and `(d^2 φ)(x, y, z) = [x, φ(y,z)] - [φ(x,y), z] + [φ(x,z), y]
    /// + φ(x, [y,z]) - φ([x,y], z) + φ([x,z], y)` at chosen entries of L_2.
    #[test]
    fn pinned_entries_l2() {
        let (l2, _) = simple_leibniz_sl2(2).unwrap();
        let adj = adjoint_bimodule(&l2);
        let d1 = coboundary_matrix(&l2, &adj, 1).unwrap();
        let c1 = CochainIndex::new(1, 6, 6);
        let c2 = CochainIndex::new(2, 6, 6);
        let x0 = x_index(0);
        let x1 = x_index(1);
        // t = E_{h -> h}: (d t)(e, h) = [e, t(h)] + [t(e), h] - t([e,h]) = [e,h] = 2e.
        let col = c1.flat(&[H], H);
        assert_eq!(d1.get(c2.flat(&[E, H], E), col), Rational::from_int(2));
        // t = E_{e -> e}: (d t)(e, h)_e = [t(e),h]_e - t(2e)_e = 2 - 2 = 0.
        assert_eq!(d1.get(c2.flat(&[E, H], E), c1.flat(&[E], E)), Rational::ZERO);
        // t = E_{x0 -> x0}: (d t)(x1, e) = [x1, t(e)] + [t(x1), e] - t([x1, e]) = -t(-2 x0) = 2 x0.
        assert_eq!(d1.get(c2.flat(&[x1, E], x0), c1.flat(&[x0], x0)), Rational::from_int(2));

        let d2 = coboundary_matrix(&l2, &adj, 2).unwrap();
        let c3 = CochainIndex::new(3, 6, 6);
        let phi = c2.flat(&[E, F], H);
        // φ = E_{(e,f)->h}, (d φ)(f, e, f) = [f, h] + φ(f, [e,f]) - φ([f,e], f) = -2f.
        assert_eq!(d2.get(c3.flat(&[F, E, F], F), phi), Rational::from_int(-2));
        // (d φ)(e, f, e) = -[φ(e,f), e] = -[h, e] = 2e.
        assert_eq!(d2.get(c3.flat(&[E, F, E], E), phi), Rational::from_int(2));
        // (d φ)(e, f, h): -[h,h] + φ(e, -2f) + φ(2e, f) = 0.
        assert!(d2.get(c3.flat(&[E, F, H], H), phi).is_zero());
        // (d φ)(x0, e, f) with φ = E_{(x0,h)->x0}: φ(x0, [e,f]) = φ(x0, h) = x0.
        assert_eq!(d2.get(c3.flat(&[x0, E, F], x0), c2.flat(&[x0, H], x0)), Rational::ONE);
    }

    #[test]
    fn complex_property_small() {
        for m in 2..=3 {
            let (l, _) = simple_leibniz_sl2(m).unwrap();
            let adj = adjoint_bimodule(&l);
            let d: Vec<_> = (0..=2).map(|n| coboundary_matrix(&l, &adj, n).unwrap()).collect();
            assert!(d[1].mul(&d[0]).unwrap().is_zero());
            assert!(d[2].mul(&d[1]).unwrap().is_zero());
        }
    }

    #[test]
    fn derivation_kernels() {
        let g = sl2();
        let d1 = coboundary_matrix(&g, &adjoint_bimodule(&g), 1).unwrap();
        assert_eq!(kernel_basis(&d1).dim(), 3);
        let (l2, _) = simple_leibniz_sl2(2).unwrap();
        let d1 = coboundary_matrix(&l2, &adjoint_bimodule(&l2), 1).unwrap();
        assert_eq!(kernel_basis(&d1).dim(), 5);
    }

    #[test]
    fn graded_column_sets() {
        for m in [2usize, 3] {
            let (l, g) = simple_leibniz_sl2(m).unwrap();
            let cols = graded_columns(&g, &g, 2, 1);
            assert_eq!(cols.len(), 9 * (m + 1));
            let blocks = graded_blocks(&g, &g, 2, 1);
            assert_eq!(blocks.len(), 1);
            assert_eq!(blocks[0].signature.to_string(), "GxG->I");
            let low = graded_blocks(&g, &g, 2, -2);
            assert_eq!(low.len(), 1);
            assert_eq!(low[0].signature.to_string(), "IxI->G");
            assert!(graded_columns(&g, &g, 2, 5).is_empty());
            let zero: Vec<String> = graded_blocks(&g, &g, 2, 0).iter().map(|b| b.signature.to_string()).collect();
            assert_eq!(zero, ["GxG->G", "GxI->I", "IxG->I"]);
            let minus: Vec<String> = graded_blocks(&g, &g, 2, -1).iter().map(|b| b.signature.to_string()).collect();
            assert_eq!(minus, ["GxI->G", "IxG->G", "IxI->I"]);
            // Degrees partition CL^2.
            let total: usize = cochain_degrees(&g, &g, 2).iter().map(|&i| graded_columns(&g, &g, 2, i).len()).sum();
            assert_eq!(total, (m + 4).pow(3));
            let _ = l;
        }
    }

    #[test]
    fn graded_kernels_small() {
        let (l3, g3) = simple_leibniz_sl2(3).unwrap();
        let d2 = coboundary_matrix(&l3, &adjoint_bimodule(&l3), 2).unwrap();
        let sub = graded_submatrix(&d2, &g3, &g3, 2, 0).unwrap();
        assert_eq!(kernel_basis(&sub).dim(), 21);
        let (l2, g2) = simple_leibniz_sl2(2).unwrap();
        let d2 = coboundary_matrix(&l2, &adjoint_bimodule(&l2), 2).unwrap();
        let sub = graded_submatrix(&d2, &g2, &g2, 2, -2).unwrap();
        assert_eq!(kernel_basis(&sub).dim(), 0);
    }

    #[test]
    fn invalid_grading_detected() {
        let (l2, _) = simple_leibniz_sl2(2).unwrap();
        let bad = Grading::new(vec![1, 0, 0, 1, 1, 1]);
        let d2 = coboundary_matrix(&l2, &adjoint_bimodule(&l2), 2).unwrap();
        let broken = cochain_degrees(&bad, &bad, 2)
            .into_iter()
            .any(|i| graded_submatrix(&d2, &bad, &bad, 2, i).is_err());
        assert!(broken);
    }

    #[test]
    fn signature_parse() {
        let s = BlockSignature::parse("GxI->G").unwrap();
        assert_eq!(s, BlockSignature::new(vec![0, 1], 0));
        assert_eq!(s.degree(), -1);
        assert_eq!(BlockSignature::parse("IxL2->L-1").unwrap(), BlockSignature::new(vec![1, 2], -1));
        assert!(BlockSignature::parse("GxQ->G").is_none());
    }
}
