//! Cocycles, coboundaries and cohomology of Leibniz algebras, their graded
//! pieces, block analyses of graded 2-cocycles, and Chevalley–Eilenberg
//! cohomology for Lie cross-checks.
//!
//! All dimensions are exact ranks over `Q`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{adjoint_bimodule, check_bimodule_axioms, check_grading, check_lie};
use crate::algebra::{AlgebraStructure, Bimodule, Grading};
use crate::cochain::{coboundary_matrix, graded_blocks, graded_columns, graded_submatrix, BlockSignature, CochainIndex};
use crate::error::{AlgebraError, CohomologyError};
use crate::linalg::{kernel_basis, rank, SparseRationalMatrix, Subspace};

fn check_degree(n: usize, max: usize) -> Result<(), CohomologyError> {
    if n > max {
        Err(CohomologyError::DegreeTooHigh(n))
    } else {
        Ok(())
    }
}

/// `dim ZL^n(A, M)`, for `n <= 3`.
pub fn zl_dim(a: &AlgebraStructure, module: &Bimodule, n: usize) -> Result<usize, CohomologyError> {
    check_degree(n, crate::cochain::MAX_DEGREE)?;
    let d = coboundary_matrix(a, module, n)?;
    Ok(d.cols() - rank(&d))
}

/// `dim BL^n(A, M)`, for `n <= 2`.
pub fn bl_dim(a: &AlgebraStructure, module: &Bimodule, n: usize) -> Result<usize, CohomologyError> {
    check_degree(n, 2)?;
    if n == 0 {
        return Ok(0);
    }
    Ok(rank(&coboundary_matrix(a, module, n - 1)?))
}

/// `dim HL^n(A, M)`, for `n <= 2`.
pub fn hl_dim(a: &AlgebraStructure, module: &Bimodule, n: usize) -> Result<usize, CohomologyError> {
    check_degree(n, 2)?;
    Ok(zl_dim(a, module, n)? - bl_dim(a, module, n)?)
}

/// Cocycle space `ZL^n(A, M)` inside `CL^n`.
pub fn cocycles(a: &AlgebraStructure, module: &Bimodule, n: usize) -> Result<Subspace, CohomologyError> {
    check_degree(n, crate::cochain::MAX_DEGREE)?;
    Ok(kernel_basis(&coboundary_matrix(a, module, n)?))
}

/// Coboundary space `BL^n(A, M)` inside `CL^n`, for `1 <= n <= 3`.
pub fn coboundaries(a: &AlgebraStructure, module: &Bimodule, n: usize) -> Result<Subspace, CohomologyError> {
    check_degree(n, crate::cochain::MAX_DEGREE)?;
    if n == 0 {
        return Ok(Subspace::zero(module.module_dim()));
    }
    Ok(crate::linalg::image(&coboundary_matrix(a, module, n - 1)?))
}

/// Dimensions of one graded piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeDims {
    pub degree: i32,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
}

/// `ZL^n`, `BL^n`, `HL^n` with adjoint coefficients, in total and per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub n: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
    /// Ascending by degree; empty when no grading was used.
    pub per_degree: Vec<DegreeDims>,
}

impl CohomologyReport {
    pub fn degree(&self, degree: i32) -> Option<&DegreeDims> {
        self.per_degree.iter().find(|d| d.degree == degree)
    }
}

/// Ungraded report for `HL^n(A, A)`.
pub fn cohomology(a: &AlgebraStructure, n: usize) -> Result<CohomologyReport, CohomologyError> {
    let adj = adjoint_bimodule(a);
    let dim_z = zl_dim(a, &adj, n)?;
    let dim_b = bl_dim(a, &adj, n)?;
    Ok(CohomologyReport { n, dim_z, dim_b, dim_h: dim_z - dim_b, per_degree: Vec::new() })
}

/// Graded report for `HL^n(A, A)` under the grading `g`, `n <= 2`.
///
/// Totals are computed from the full coboundaries and checked against the
/// sum of the graded pieces.
pub fn graded_cohomology(a: &AlgebraStructure, g: &Grading, n: usize) -> Result<CohomologyReport, CohomologyError> {
    check_degree(n, 2)?;
    if !check_grading(a, g) {
        return Err(CohomologyError::InvalidGrading);
    }
    let adj = adjoint_bimodule(a);
    let dn = coboundary_matrix(a, &adj, n)?;
    let prev = if n > 0 { Some(coboundary_matrix(a, &adj, n - 1)?) } else { None };
    let dim_z = dn.cols() - rank(&dn);
    let dim_b = prev.as_ref().map_or(0, rank);

    let mut per_degree = Vec::new();
    for degree in crate::cochain::cochain_degrees(g, g, n) {
        let block = graded_submatrix(&dn, g, g, n, degree)?;
        let z = block.cols() - rank(&block);
        let b = match &prev {
            Some(d) if !graded_columns(g, g, n - 1, degree).is_empty() => {
                rank(&graded_submatrix(d, g, g, n - 1, degree)?)
            }
            _ => 0,
        };
        per_degree.push(DegreeDims { degree, dim_z: z, dim_b: b, dim_h: z - b });
    }
    assert_eq!(per_degree.iter().map(|d| d.dim_z).sum::<usize>(), dim_z, "graded cocycles do not sum to total");
    assert_eq!(per_degree.iter().map(|d| d.dim_b).sum::<usize>(), dim_b, "graded coboundaries do not sum to total");
    Ok(CohomologyReport { n, dim_z, dim_b, dim_h: dim_z - dim_b, per_degree })
}

/// Dimensions of graded 2-cocycles restricted to a union of blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockAnalysis {
    pub degree: i32,
    /// Signatures joined by `+`, e.g. `GxI->G+IxG->G`.
    pub signature: String,
    pub cocycle_dim: usize,
    /// Dimension of the image of `ZL^2_(i)` under projection onto the block.
    pub projection_dim: usize,
    /// Dimension of the cocycles in `ZL^2_(i)` that vanish off the block.
    pub supported_dim: usize,
    pub projection_injective: bool,
}

/// `ZL^2_(i)(A, A)` for every degree `i`, in local coordinates of `CL^2_(i)`.
#[derive(Clone, Debug)]
pub struct GradedCocycles {
    grading: Grading,
    ambient: usize,
    pieces: BTreeMap<i32, (Vec<usize>, Subspace)>,
}

impl GradedCocycles {
    pub fn compute(a: &AlgebraStructure, g: &Grading) -> Result<Self, CohomologyError> {
        if !check_grading(a, g) {
            return Err(CohomologyError::InvalidGrading);
        }
        let d2 = coboundary_matrix(a, &adjoint_bimodule(a), 2)?;
        let mut pieces = BTreeMap::new();
        for degree in crate::cochain::cochain_degrees(g, g, 2) {
            let block = graded_submatrix(&d2, g, g, 2, degree)?;
            let cols = graded_columns(g, g, 2, degree);
            pieces.insert(degree, (cols, kernel_basis(&block)));
        }
        Ok(GradedCocycles { grading: g.clone(), ambient: d2.cols(), pieces })
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.pieces.keys().copied()
    }

    /// `ZL^2_(i)` in the coordinates of `CL^2_(i)`.
    pub fn local(&self, degree: i32) -> Option<&Subspace> {
        self.pieces.get(&degree).map(|(_, s)| s)
    }

    /// Flat `CL^2` indices of the coordinates of `CL^2_(i)`.
    pub fn columns(&self, degree: i32) -> Option<&[usize]> {
        self.pieces.get(&degree).map(|(c, _)| c.as_slice())
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.local(degree).map_or(0, Subspace::dim)
    }

    /// Direct sum of the graded pieces, embedded in `CL^2`.
    pub fn embedded_sum(&self) -> Result<Subspace, CohomologyError> {
        let mut acc = Subspace::zero(self.ambient);
        for (cols, s) in self.pieces.values() {
            acc = acc.sum(&s.embed(self.ambient, cols)?)?;
        }
        Ok(acc)
    }

    /// Projection and support dimensions of `ZL^2_(i)` on a union of blocks.
    pub fn block(&self, degree: i32, blocks: &[BlockSignature]) -> Result<BlockAnalysis, CohomologyError> {
        let label = blocks.iter().map(ToString::to_string).collect::<Vec<_>>().join("+");
        let invalid = || CohomologyError::InvalidBlock { block: label.clone(), degree };
        let (cols, z) = self.pieces.get(&degree).ok_or_else(invalid)?;
        let available = graded_blocks(&self.grading, &self.grading, 2, degree);
        let mut positions = Vec::new();
        for sig in blocks {
            let b = available.iter().find(|b| &b.signature == sig).ok_or_else(invalid)?;
            positions.extend(b.coords.iter().map(|c| cols.binary_search(c).expect("block coordinate in degree")));
        }
        if blocks.is_empty() {
            return Err(invalid());
        }
        positions.sort_unstable();
        positions.dedup();
        let projection_dim = z.project(&positions)?.dim();
        let supported_dim = z.restrict_to_coords(&positions)?.dim();
        Ok(BlockAnalysis {
            degree,
            signature: label,
            cocycle_dim: z.dim(),
            projection_dim,
            supported_dim,
            projection_injective: projection_dim == z.dim(),
        })
    }

    /// Analyses of every single block in every degree, ordered by degree then
    /// signature.
    pub fn all_blocks(&self) -> Result<Vec<BlockAnalysis>, CohomologyError> {
        let mut out = Vec::new();
        for degree in self.degrees() {
            for b in graded_blocks(&self.grading, &self.grading, 2, degree) {
                out.push(self.block(degree, std::slice::from_ref(&b.signature))?);
            }
        }
        Ok(out)
    }
}

/// Block analysis of `ZL^2_(i)(A, A)` on the union of `blocks`.
pub fn block_analysis(
    a: &AlgebraStructure,
    g: &Grading,
    degree: i32,
    blocks: &[BlockSignature],
) -> Result<BlockAnalysis, CohomologyError> {
    GradedCocycles::compute(a, g)?.block(degree, blocks)
}

/// Projection of `ZL^2_(0)` onto the `GxG->G` block, where `G` is the
/// degree-0 component, in local coordinates `(i, j; k)` over `G`.
fn gg_projection(z: &GradedCocycles, g: &Grading) -> Result<(Vec<usize>, Subspace), CohomologyError> {
    let gens = g.component(0);
    let sig = BlockSignature::new(vec![0, 0], 0);
    let cols = z.columns(0).ok_or(CohomologyError::InvalidBlock { block: sig.to_string(), degree: 0 })?;
    let idx = CochainIndex::new(2, g.len(), g.len());
    let r = gens.len();
    let local = |x: usize| gens.binary_search(&x).ok();
    // Positions inside CL^2_(0), ordered as the local index (i * r + j) * r + k.
    let mut positions = vec![0; r * r * r];
    for (p, &c) in cols.iter().enumerate() {
        let (args, k) = idx.tuple(c);
        if let (Some(i), Some(j), Some(k)) = (local(args[0]), local(args[1]), local(k)) {
            positions[(i * r + j) * r + k] = p;
        }
    }
    let proj = z.local(0).expect("degree 0 present").project(&positions)?;
    Ok((gens, proj))
}

/// Whether every cochain in the `GxG->G` projection of `ZL^2_(0)` is
/// skew-symmetric in its arguments.
pub fn gg_block_is_skew(a: &AlgebraStructure, g: &Grading) -> Result<bool, CohomologyError> {
    let z = GradedCocycles::compute(a, g)?;
    let (gens, proj) = gg_projection(&z, g)?;
    Ok(all_skew(&proj, gens.len()))
}

fn all_skew(s: &Subspace, r: usize) -> bool {
    s.basis().iter().all(|v| {
        (0..r).all(|i| (0..r).all(|j| (0..r).all(|k| v.get((i * r + j) * r + k) == -v.get((j * r + i) * r + k))))
    })
}

/// Lie 2-coboundaries `(x, y) -> [t(x), y] + [x, t(y)] - t([x, y])` of the
/// degree-0 subalgebra, as a subspace of `Hom(G⊗G, G)`.
fn lie_coboundaries(gl: &AlgebraStructure) -> Subspace {
    let d1 = coboundary_matrix(gl, &adjoint_bimodule(gl), 1).expect("degree 1 is supported");
    crate::linalg::image(&d1)
}

/// Whether the `GxG->G` projection of `ZL^2_(0)` is skew-symmetric and
/// equals the Lie 2-coboundaries of `G`, where `G` is the degree-0
/// component of `g`.
pub fn gg_block_is_lie_coboundary(a: &AlgebraStructure, g: &Grading) -> Result<bool, CohomologyError> {
    let z = GradedCocycles::compute(a, g)?;
    let (gens, proj) = gg_projection(&z, g)?;
    let gl = a
        .restrict(&gens)
        .ok_or(CohomologyError::InvalidBlock { block: "GxG->G".into(), degree: 0 })?;
    Ok(all_skew(&proj, gens.len()) && proj.equals(&lie_coboundaries(&gl))?)
}

/// Increasing `n`-subsets of `0..dim`, in lexicographic order.
fn subsets(dim: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, dim: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            go(i + 1, dim, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, dim, n, &mut Vec::new(), &mut out);
    out
}

/// Sorts `t` in place and returns the permutation sign, or `None` if `t`
/// has a repeated entry.
fn sort_sign(t: &mut [usize]) -> Option<bool> {
    let mut negative = false;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(negative)
    }
}

/// Chevalley–Eilenberg differential `Hom(Λ^n G, M) -> Hom(Λ^{n+1} G, M)`
/// for the Lie action `ρ(x) m = -[m, x]`.
fn ce_differential(gl: &AlgebraStructure, module: &Bimodule, n: usize) -> SparseRationalMatrix {
    let dim = gl.dim();
    let dm = module.module_dim();
    let src: Vec<Vec<usize>> = subsets(dim, n);
    let dst: Vec<Vec<usize>> = subsets(dim, n + 1);
    let col_of: BTreeMap<&[usize], usize> = src.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let mut triplets = Vec::new();
    for (r, xs) in dst.iter().enumerate() {
        // sum_i (-1)^i ρ(x_i) ω(.. ^x_i ..)
        for i in 0..=n {
            let rest: Vec<usize> = xs.iter().enumerate().filter(|(p, _)| *p != i).map(|(_, &x)| x).collect();
            let c = col_of[rest.as_slice()];
            for (q, p, v) in module.right_action(xs[i]).entries() {
                let v = if i % 2 == 0 { -v } else { v.clone() };
                triplets.push((r * dm + q, c * dm + p, v));
            }
        }
        // sum_{i<j} (-1)^{i+j} ω([x_i, x_j], .. ^x_i .. ^x_j ..)
        for i in 0..=n {
            for j in i + 1..=n {
                for (t, coef) in gl.product(xs[i], xs[j]).iter() {
                    let mut args = vec![t];
                    args.extend(xs.iter().enumerate().filter(|(p, _)| *p != i && *p != j).map(|(_, &x)| x));
                    let Some(negative) = sort_sign(&mut args) else { continue };
                    let c = col_of[args.as_slice()];
                    let v = if negative ^ ((i + j) % 2 == 1) { -coef } else { coef.clone() };
                    for k in 0..dm {
                        triplets.push((r * dm + k, c * dm + k, v.clone()));
                    }
                }
            }
        }
    }
    SparseRationalMatrix::from_triplets(dst.len() * dm, src.len() * dm, triplets).expect("indices in range")
}

/// `dim H^n(G, M)` (Chevalley–Eilenberg), `n` in `{0, 1, 2}`, with `G`
/// acting by `ρ(x) m = -[m, x]` through the right action of `module`.
pub fn lie_ce_h(gl: &AlgebraStructure, module: &Bimodule, n: usize) -> Result<usize, CohomologyError> {
    check_degree(n, 2)?;
    check_lie(gl)?;
    if module.algebra_dim() != gl.dim() {
        return Err(AlgebraError::DimensionMismatch { algebra: gl.dim(), module_over: module.algebra_dim() }.into());
    }
    let dn = ce_differential(gl, module, n);
    let z = dn.cols() - rank(&dn);
    let b = if n == 0 { 0 } else { rank(&ce_differential(gl, module, n - 1)) };
    Ok(z - b)
}

/// `dim HL^n(G, M)` after checking the bimodule axioms, `n <= 2`.
pub fn leibniz_h_with_coefficients(
    a: &AlgebraStructure,
    module: &Bimodule,
    n: usize,
) -> Result<usize, CohomologyError> {
    check_degree(n, 2)?;
    let violations = check_bimodule_axioms(a, module)?;
    if !violations.is_empty() {
        return Err(AlgebraError::ModuleAxioms(violations.len()).into());
    }
    hl_dim(a, module, n)
}
