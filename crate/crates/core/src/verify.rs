//! The claim ledger checked by `leibniz verify-paper`.
//!
//! [`verify_m`] runs every claim for one `L_m` and returns a
//! [`VerificationReport`]; [`verify_range`] runs several `m` in parallel and
//! returns the reports in ascending `m`. Claim ids are stable strings.
//! Timings are kept out of the serialized form so JSON output depends only
//! on the inputs.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebra::{adjoint_bimodule, check_bimodule_axioms, check_grading, leibniz_defects, squares_ideal};
use crate::catalog::{irreducible_sl2_module, simple_leibniz_sl2, sl2, symmetric_sl2_module, x_index};
use crate::cochain::{coboundary_matrix, BlockSignature};
use crate::cohomology::{graded_cohomology, lie_ce_h, GradedCocycles};
use crate::derivations::{decompose_derivation, derivation_basis, derivation_space, derivations_from_coboundary, operator_to_cochain};
use crate::linalg::{kernel_basis, rank, SparseRationalMatrix, Subspace};

/// Version of the serialized report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Largest `m` for which the `d^3 d^2 = 0` check runs in deep mode.
pub const DEEP_MAX_M: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ClaimValue {
    Count(u64),
    Flag(bool),
    None,
}

impl From<usize> for ClaimValue {
    fn from(v: usize) -> Self {
        ClaimValue::Count(v as u64)
    }
}

impl From<bool> for ClaimValue {
    fn from(v: bool) -> Self {
        ClaimValue::Flag(v)
    }
}

impl std::fmt::Display for ClaimValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClaimValue::Count(v) => write!(f, "{v}"),
            ClaimValue::Flag(v) => write!(f, "{v}"),
            ClaimValue::None => f.write_str("-"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimRecord {
    pub id: String,
    /// The statement being checked, as a formula.
    pub anchor: String,
    pub expected: ClaimValue,
    pub computed: ClaimValue,
    pub status: ClaimStatus,
}

/// A reported quantity with no target value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub id: String,
    pub value: ClaimValue,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub m: usize,
    pub pass: bool,
    pub claims: Vec<ClaimRecord>,
    pub observations: Vec<Observation>,
    #[serde(skip)]
    pub timings: Vec<(String, Duration)>,
}

impl VerificationReport {
    pub fn claim(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimRecord> {
        self.claims.iter().filter(|c| c.status == ClaimStatus::Fail)
    }
}

/// Reports for a range of `m`, in ascending order.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub pass: bool,
    pub reports: Vec<VerificationReport>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Also check `d^3 d^2 = 0` (only for `m <= DEEP_MAX_M`).
    pub deep: bool,
    /// Worker threads for [`verify_range`]; `None` uses the rayon default.
    pub workers: Option<usize>,
}

struct Ledger {
    claims: Vec<ClaimRecord>,
    observations: Vec<Observation>,
    timings: Vec<(String, Duration)>,
    clock: Instant,
}

impl Ledger {
    fn new() -> Self {
        Ledger { claims: Vec::new(), observations: Vec::new(), timings: Vec::new(), clock: Instant::now() }
    }

    fn check(&mut self, id: &str, anchor: &str, expected: impl Into<ClaimValue>, computed: impl Into<ClaimValue>) {
        let (expected, computed) = (expected.into(), computed.into());
        let status = if expected == computed { ClaimStatus::Pass } else { ClaimStatus::Fail };
        self.claims.push(ClaimRecord { id: id.into(), anchor: anchor.into(), expected, computed, status });
    }

    fn skip(&mut self, id: &str, anchor: &str, expected: impl Into<ClaimValue>) {
        self.claims.push(ClaimRecord {
            id: id.into(),
            anchor: anchor.into(),
            expected: expected.into(),
            computed: ClaimValue::None,
            status: ClaimStatus::Skipped,
        });
    }

    fn observe(&mut self, id: &str, value: impl Into<ClaimValue>) {
        self.observations.push(Observation { id: id.into(), value: value.into() });
    }

    fn stage(&mut self, name: &str) {
        let now = Instant::now();
        self.timings.push((name.into(), now - self.clock));
        self.clock = now;
    }
}

fn composes_to_zero(outer: &SparseRationalMatrix, inner: &SparseRationalMatrix) -> bool {
    outer.mul(inner).map(|p| p.is_zero()).unwrap_or(false)
}

fn sig(s: &str) -> BlockSignature {
    BlockSignature::parse(s).expect("valid signature literal")
}

/// Runs the full claim ledger for `L_m`. Requires `m >= 2`.
pub fn verify_m(m: usize, opts: &VerifyOptions) -> VerificationReport {
    let mut l = Ledger::new();
    let (alg, grading) = match simple_leibniz_sl2(m) {
        Ok(x) => x,
        Err(_) => {
            l.check("algebra_defined", "m >= 2", true, false);
            return finish(m, l);
        }
    };
    let n = alg.dim();
    let total = if m == 2 { n * n - 5 } else { n * n - 4 };
    let three = 3 * (m + 1);

    // Structure.
    l.check("leibniz_defects", "[x,[y,z]] = [[x,y],z] - [[x,z],y]", 0, leibniz_defects(&alg).len());
    l.check("grading_valid", "[L_i, L_j] in L_{i+j}", true, check_grading(&alg, &grading));
    let sq = squares_ideal(&alg);
    l.check("squares_ideal_dim", "dim I = m + 1", m + 1, sq.dim());
    let xs: Vec<usize> = (0..=m).map(x_index).collect();
    let span_x = Subspace::coordinate(n, &xs).expect("indices in range");
    l.check("squares_ideal_span", "I = span{x_0..x_m}", true, sq.equals(&span_x).unwrap_or(false));
    let axioms = check_bimodule_axioms(&sl2(), &irreducible_sl2_module(m)).map(|v| v.len()).unwrap_or(usize::MAX);
    l.check("module_axioms", "V_m is a Leibniz bimodule over sl2", 0, axioms);
    l.stage("structure");

    // Complex.
    let adj = adjoint_bimodule(&alg);
    let d0 = coboundary_matrix(&alg, &adj, 0).expect("degree 0");
    let d1 = coboundary_matrix(&alg, &adj, 1).expect("degree 1");
    let d2 = coboundary_matrix(&alg, &adj, 2).expect("degree 2");
    l.check("d1_d0_zero", "d^1 d^0 = 0", true, composes_to_zero(&d1, &d0));
    l.check("d2_d1_zero", "d^2 d^1 = 0", true, composes_to_zero(&d2, &d1));
    if opts.deep && m <= DEEP_MAX_M {
        let d3 = coboundary_matrix(&alg, &adj, 3).expect("degree 3");
        l.check("d3_d2_zero", "d^3 d^2 = 0", true, composes_to_zero(&d3, &d2));
    } else {
        l.skip("d3_d2_zero", "d^3 d^2 = 0", true);
    }
    l.stage("complex");

    // Totals.
    let full_kernel = kernel_basis(&d2);
    let dim_z = full_kernel.dim();
    let dim_b = rank(&d1);
    let total_anchor = if m == 2 { "dim ZL^2 = (m+4)^2 - 5" } else { "dim ZL^2 = (m+4)^2 - 4" };
    l.check("ZL2_dim", total_anchor, total, dim_z);
    l.check("BL2_dim", "dim BL^2 = dim ZL^2", total, dim_b);
    l.check("HL2_dim", "HL^2(L, L) = 0", 0, dim_z - dim_b);
    l.stage("totals");

    // Derivations.
    let der = derivation_space(&alg);
    l.check("der_dim", if m == 2 { "dim Der = dim G + 2" } else { "dim Der = dim G + 1" }, if m == 2 { 5 } else { 4 }, der.dim());
    let same = derivations_from_coboundary(&alg).is_some_and(|k| k == der);
    l.check("der_equals_d1_kernel", "Der(L) = ker d^1", true, same);
    let decs: Vec<_> = derivation_basis(&alg).iter().map(|d| decompose_derivation(&alg, &grading, d)).collect();
    let exact = decs.iter().all(|d| d.as_ref().is_ok_and(|d| d.is_exact()));
    l.check("der_decomposition_exact", "d = R_a + lambda P_I + Delta", true, exact);
    let deltas: Vec<_> = decs.iter().flatten().map(|d| operator_to_cochain(&d.delta)).collect();
    l.check(
        "der_delta_rank",
        if m == 2 { "dim Der_(1) = 1" } else { "Delta = 0 when dim G != dim I" },
        usize::from(m == 2),
        Subspace::span(n * n, &deltas).dim(),
    );
    l.check("BL2_from_der", "dim BL^2 = (m+4)^2 - dim Der", n * n - der.dim(), dim_b);
    l.stage("derivations");

    // Graded ladder.
    match graded_cohomology(&alg, &grading, 2) {
        Ok(report) => {
            let z = |i: i32| report.degree(i).map_or(0, |d| d.dim_z);
            let b = |i: i32| report.degree(i).map_or(0, |d| d.dim_b);
            l.check("ZL2_deg_m2", "ZL^2_(-2) = 0", 0, z(-2));
            l.check("ZL2_deg_m1", "dim ZL^2_(-1) = 3(m+1)", three, z(-1));
            l.check("ZL2_deg_0", "dim ZL^2_(0) = m^2 + 2m + 6", m * m + 2 * m + 6, z(0));
            let (deg1, anchor1) = if m == 2 { (8, "dim ZL^2_(1) = dim G dim I - 1") } else { (three, "dim ZL^2_(1) = 3(m+1)") };
            l.check("ZL2_deg_1", anchor1, deg1, z(1));
            for (i, id) in [(-2, "BL2_deg_m2"), (-1, "BL2_deg_m1"), (0, "BL2_deg_0"), (1, "BL2_deg_1")] {
                l.check(id, "dim BL^2_(i) = dim ZL^2_(i)", z(i), b(i));
            }
            l.check("HL2_graded_zero", "HL^2_(i) = 0 for all i", true, report.per_degree.iter().all(|d| d.dim_h == 0));
        }
        Err(_) => l.check("graded_cohomology", "graded ZL^2, BL^2 computable", true, false),
    }
    l.stage("graded");

    // Blocks.
    match GradedCocycles::compute(&alg, &grading) {
        Ok(z) => {
            let get = |deg: i32, s: &[&str]| z.block(deg, &s.iter().map(|x| sig(x)).collect::<Vec<_>>()).ok();
            let gi0 = get(0, &["GxI->I"]);
            l.check("phi0_GI_proj", "Phi^0_{G,I} = 0", 0, gi0.map_or(usize::MAX, |b| b.projection_dim));
            let gg0 = get(0, &["GxG->G"]);
            l.check("phi0_GG_proj", "dim Phi^0_{G,G} = (dim G)^2 - dim G", 6, gg0.map_or(usize::MAX, |b| b.projection_dim));
            let skew = crate::cohomology::gg_block_is_skew(&alg, &grading).unwrap_or(false);
            l.check("phi0_GG_skew", "phi_0(x,y) = -phi_0(y,x) on G", true, skew);
            let lie = crate::cohomology::gg_block_is_lie_coboundary(&alg, &grading).unwrap_or(false);
            l.check("phi0_GG_lie_coboundary", "Phi^0_{G,G} = B^2(G, G)", true, lie);
            let ig0 = get(0, &["IxG->I"]);
            l.check("phi0_IG_dim", "dim Phi^0_{I,G} = m^2 + 2m", m * m + 2 * m, ig0.map_or(usize::MAX, |b| b.supported_dim));
            let both = get(-1, &["GxI->G", "IxG->G"]);
            l.check(
                "phim1_GI_IG_injective",
                "ZL^2_(-1) embeds in Phi^{-1}_{G,I} + Phi^{-1}_{I,G}",
                true,
                both.is_some_and(|b| b.projection_injective),
            );
            let gi = get(-1, &["GxI->G"]);
            l.check("phim1_GI_proj", "dim Phi^{-1}_{G,I} = 3(m+1)", three, gi.as_ref().map_or(usize::MAX, |b| b.projection_dim));
            l.check(
                "phim1_GI_injective",
                "dim ZL^2_(-1) = dim Phi^{-1}_{G,I}",
                true,
                gi.is_some_and(|b| b.projection_injective),
            );
            if let Some(ig) = get(-1, &["IxG->G"]) {
                l.observe("phim1_IG_proj", ig.projection_dim);
            }
            let sum_equal = z.embedded_sum().map(|s| s == full_kernel).unwrap_or(false);
            l.check("graded_sum_equals_kernel", "ZL^2 = sum_i ZL^2_(i)", true, sum_equal);
        }
        Err(_) => l.check("graded_cocycles", "graded ZL^2 computable", true, false),
    }
    l.stage("blocks");

    // Lie-theoretic desk checks for V_m and the adjoint module.
    let g = sl2();
    let vm = irreducible_sl2_module(m);
    let sym = symmetric_sl2_module(m);
    let gadj = adjoint_bimodule(&g);
    let val = |r: Result<usize, _>| r.unwrap_or(usize::MAX);
    l.check("ce_H1_Vm", "H^1(sl2, V_m) = 0", 0, val(lie_ce_h(&g, &vm, 1)));
    l.check("ce_H2_Vm", "H^2(sl2, V_m) = 0", 0, val(lie_ce_h(&g, &vm, 2)));
    l.check("ce_H2_adjoint", "H^2(sl2, sl2) = 0", 0, val(lie_ce_h(&g, &gadj, 2)));
    let hl = |module, k| val(crate::cohomology::leibniz_h_with_coefficients(&g, module, k));
    l.check("hl1_Vm", "HL^1(sl2, V_m^sym) = 0", 0, hl(&sym, 1));
    l.check("hl2_Vm", "HL^2(sl2, V_m^sym) = 0", 0, hl(&sym, 2));
    l.check("hl2_Vm_antisym", "HL^2(sl2, V_m^anti) = 0", 0, hl(&vm, 2));
    l.check("hl2_adjoint", "HL^2(sl2, sl2) = 0", 0, hl(&gadj, 2));
    l.stage("desk");

    finish(m, l)
}

fn finish(m: usize, l: Ledger) -> VerificationReport {
    let pass = l.claims.iter().all(|c| c.status != ClaimStatus::Fail);
    VerificationReport { m, pass, claims: l.claims, observations: l.observations, timings: l.timings }
}

/// Runs [`verify_m`] for every `m` in `ms`, concurrently, returning reports
/// in ascending `m`.
pub fn verify_range(ms: std::ops::RangeInclusive<usize>, opts: &VerifyOptions) -> SuiteReport {
    use rayon::prelude::*;
    let run = || ms.clone().into_par_iter().map(|m| verify_m(m, opts)).collect::<Vec<_>>();
    let reports = match opts.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map(|pool| pool.install(run))
            .unwrap_or_else(|_| run()),
        None => run(),
    };
    let pass = reports.iter().all(|r| r.pass);
    SuiteReport { schema_version: SCHEMA_VERSION, pass, reports }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_m_passes() {
        for m in 2..=3 {
            let r = verify_m(m, &VerifyOptions { deep: true, workers: None });
            let failed: Vec<_> = r.failures().map(|c| c.id.clone()).collect();
            assert!(r.pass, "m={m}: {failed:?}");
            assert_eq!(r.claim("d3_d2_zero").unwrap().status, ClaimStatus::Pass);
        }
    }

    #[test]
    fn m2_total_is_31() {
        let r = verify_m(2, &VerifyOptions::default());
        let c = r.claim("ZL2_dim").unwrap();
        assert_eq!(c.expected, ClaimValue::Count(31));
        assert_eq!(c.status, ClaimStatus::Pass);
        assert_eq!(r.claim("d3_d2_zero").unwrap().status, ClaimStatus::Skipped);
        assert!(r.pass);
    }

    #[test]
    fn invalid_m_fails() {
        let r = verify_m(1, &VerifyOptions::default());
        assert!(!r.pass);
    }

    #[test]
    fn range_is_ordered() {
        let s = verify_range(2..=4, &VerifyOptions { deep: false, workers: Some(2) });
        assert_eq!(s.reports.iter().map(|r| r.m).collect::<Vec<_>>(), vec![2, 3, 4]);
        assert!(s.pass);
        let ids: Vec<&str> = s.reports[0].claims.iter().map(|c| c.id.as_str()).collect();
        let ids4: Vec<&str> = s.reports[2].claims.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ids4);
    }
}
