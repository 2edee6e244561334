//! Structural criteria for TGRS codes: MDS, AMDS, Singleton defect ℓ,
//! ℓ-MDS and self-duality, each decided from the evaluation points and
//! twist coefficients without enumerating codewords.

use std::collections::HashMap;
use std::time::Instant;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, Gf};
use crate::matrix::{det_raw, Matrix};
use crate::oracle::{self, EnumOptions, OracleError};
use crate::poly::{product_of_linear, ESeq};
use crate::tgrs::{SpecError, SpecJson, TgrsSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("outside theorem scope: {0}")]
    OutOfScope(String),
    #[error("the code is MDS; the criterion only applies to non-MDS codes")]
    AlreadyMds,
    #[error("eta_{0} is zero")]
    ZeroEta(usize),
    #[error("no closed form for ell = {ell} with k = {k}")]
    NoFastPath { ell: usize, k: usize },
    #[error("subset has {got} indices, expected {expected}")]
    SubsetSize { expected: usize, got: usize },
    #[error("subset index {0} out of range")]
    SubsetIndex(usize),
}

pub type Result<T> = std::result::Result<T, ClassifyError>;

/// Descending coefficients `c_0 = 1, ..., c_m` of `∏_{i∈I} (x - α_i)`.
fn subset_coeffs(f: &Field, alpha: &[u64], subset: &[usize]) -> Vec<u64> {
    let mut c = product_of_linear(f, subset.iter().map(|&i| alpha[i]));
    c.reverse();
    c
}

/// The η-independent part of Ω for one k-subset: `g[t][col]` is
/// `g_{k-ℓ+col}^{(t)} = -Σ_{i=0}^{min(t, k-j)} e_{t-i} c_{j+i}` with `j = ℓ - col`.
fn omega_g(f: &Field, c: &[u64], k: usize, ell: usize) -> Vec<u64> {
    let e = ESeq::from_raw(f, c, ell);
    let e = e.raw();
    let cj = |i: usize| c.get(i).copied().unwrap_or(0);
    let mut g = vec![0u64; ell * ell];
    for t in 0..ell {
        for col in 0..ell {
            let j = ell - col;
            let top = t.min(k - j);
            let s = (0..=top).fold(0, |acc, i| f.add_raw(acc, f.mul_raw(e[t - i], cj(j + i))));
            g[t * ell + col] = f.neg_raw(s);
        }
    }
    g
}

/// Entry `(t, col)` of Ω is `[t = col] + η_{t+1} g[t][col]`.
fn omega_from_g(f: &Field, g: &[u64], eta: &[u64]) -> Vec<u64> {
    let ell = eta.len();
    let mut m = vec![0u64; ell * ell];
    for t in 0..ell {
        for col in 0..ell {
            let v = f.mul_raw(eta[t], g[t * ell + col]);
            m[t * ell + col] = if t == col { f.add_raw(v, 1) } else { v };
        }
    }
    m
}

fn check_subset(spec: &TgrsSpec, subset: &[usize], size: usize) -> Result<()> {
    if subset.len() != size {
        return Err(ClassifyError::SubsetSize {
            expected: size,
            got: subset.len(),
        });
    }
    if let Some(&i) = subset.iter().find(|&&i| i >= spec.n()) {
        return Err(ClassifyError::SubsetIndex(i));
    }
    Ok(())
}

fn raw(xs: &[Gf]) -> Vec<u64> {
    xs.iter().map(Gf::raw).collect()
}

/// The ℓ x ℓ matrix whose determinant decides whether the k columns
/// indexed by `subset` are independent. Rows are `t = 0..ℓ-1`, columns
/// `g_{k-ℓ}, ..., g_{k-1}`.
pub fn omega_matrix(spec: &TgrsSpec, subset: &[usize]) -> Result<Matrix> {
    check_subset(spec, subset, spec.k())?;
    let f = spec.field();
    let c = subset_coeffs(f, &raw(spec.alpha()), subset);
    let g = omega_g(f, &c, spec.k(), spec.ell());
    let m = omega_from_g(f, &g, &raw(spec.eta()));
    Ok(Matrix::from_raw(f, spec.ell(), spec.ell(), m))
}

/// Per-subset data for one `(α, k, ℓ)`, reusable across many η.
#[derive(Clone, Debug)]
pub struct OmegaTable {
    field: Field,
    k: usize,
    ell: usize,
    subsets: Vec<Vec<usize>>,
    /// Descending coefficients per subset.
    coeffs: Vec<Vec<u64>>,
    /// ℓ x ℓ g-blocks per subset, row-major.
    g: Vec<u64>,
}

impl OmegaTable {
    pub fn new(field: &Field, alpha: &[Gf], k: usize, ell: usize) -> Self {
        let alpha = raw(alpha);
        let subsets: Vec<Vec<usize>> = (0..alpha.len()).combinations(k).collect();
        let mut coeffs = Vec::with_capacity(subsets.len());
        let mut g = Vec::with_capacity(subsets.len() * ell * ell);
        for s in &subsets {
            let c = subset_coeffs(field, &alpha, s);
            g.extend(omega_g(field, &c, k, ell));
            coeffs.push(c);
        }
        OmegaTable {
            field: Field::clone(field),
            k,
            ell,
            subsets,
            coeffs,
            g,
        }
    }

    pub fn for_spec(spec: &TgrsSpec) -> Self {
        Self::new(spec.field(), spec.alpha(), spec.k(), spec.ell())
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// `det Ω` for subset number `s`.
    pub fn determinant(&self, s: usize, eta: &[u64]) -> u64 {
        let l2 = self.ell * self.ell;
        let mut m = omega_from_g(&self.field, &self.g[s * l2..(s + 1) * l2], eta);
        det_raw(&self.field, self.ell, &mut m)
    }

    /// First subset (lexicographic) with `det Ω = 0`.
    pub fn first_failure(&self, eta: &[u64]) -> Option<usize> {
        (0..self.subsets.len()).find(|&s| self.determinant(s, eta) == 0)
    }

    pub fn fast_available(&self) -> bool {
        matches!((self.ell, self.k), (2, k) if k >= 3) || matches!((self.ell, self.k), (3, k) if k >= 5)
    }

    /// Closed-form determinant for ℓ ∈ {2, 3}.
    pub fn fast_determinant(&self, s: usize, eta: &[u64]) -> u64 {
        let f = &self.field;
        let c = &self.coeffs[s];
        match self.ell {
            2 => det_ell2(f, c, eta),
            3 => det_ell3(f, c, eta),
            _ => unreachable!("guarded by fast_available"),
        }
    }

    pub fn first_failure_fast(&self, eta: &[u64]) -> Option<usize> {
        (0..self.subsets.len()).find(|&s| self.fast_determinant(s, eta) == 0)
    }
}

/// `1 + η₂(c₁² - c₂) - η₁c₂ + η₁η₂(c₂² - c₁c₃)`.
fn det_ell2(f: &Field, c: &[u64], eta: &[u64]) -> u64 {
    let (c1, c2, c3) = (c[1], c[2], c.get(3).copied().unwrap_or(0));
    let (e1, e2) = (eta[0], eta[1]);
    let a = f.sub_raw(f.mul_raw(c1, c1), c2);
    let b = f.sub_raw(f.mul_raw(c2, c2), f.mul_raw(c1, c3));
    let mut d = f.add_raw(1, f.mul_raw(e2, a));
    d = f.sub_raw(d, f.mul_raw(e1, c2));
    f.add_raw(d, f.mul_raw(f.mul_raw(e1, e2), b))
}

/// The 3 x 3 determinant with `e₀ = 1, e₁ = -c₁, e₂ = c₁² - c₂` written out.
fn det_ell3(f: &Field, c: &[u64], eta: &[u64]) -> u64 {
    let e1 = f.neg_raw(c[1]);
    let e2 = f.sub_raw(f.mul_raw(c[1], c[1]), c[2]);
    // g^{(0)}_j = -c_j, g^{(1)}_j = -(e₁c_j + c_{j+1}), g^{(2)}_j = -(e₂c_j + e₁c_{j+1} + c_{j+2})
    let g0 = |j: usize| f.neg_raw(c[j]);
    let g1 = |j: usize| f.neg_raw(f.add_raw(f.mul_raw(e1, c[j]), c[j + 1]));
    let g2 = |j: usize| {
        f.neg_raw(f.add_raw(
            f.add_raw(f.mul_raw(e2, c[j]), f.mul_raw(e1, c[j + 1])),
            c[j + 2],
        ))
    };
    let mut m = [[0u64; 3]; 3];
    for col in 0..3 {
        let j = 3 - col;
        m[0][col] = f.mul_raw(eta[0], g0(j));
        m[1][col] = f.mul_raw(eta[1], g1(j));
        m[2][col] = f.mul_raw(eta[2], g2(j));
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = f.add_raw(row[i], 1);
    }
    let term = |a: u64, b: u64, c: u64| f.mul_raw(f.mul_raw(a, b), c);
    let pos = f.add_raw(
        f.add_raw(term(m[0][0], m[1][1], m[2][2]), term(m[0][1], m[1][2], m[2][0])),
        term(m[0][2], m[1][0], m[2][1]),
    );
    let neg = f.add_raw(
        f.add_raw(term(m[0][2], m[1][1], m[2][0]), term(m[0][0], m[1][2], m[2][1])),
        term(m[0][1], m[1][0], m[2][2]),
    );
    f.sub_raw(pos, neg)
}

/// MDS verdict with the first failing k-subset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdsVerdict {
    pub mds: bool,
    pub witness: Option<Vec<usize>>,
}

impl MdsVerdict {
    fn from_failure(table: &OmegaTable, failure: Option<usize>) -> Self {
        MdsVerdict {
            mds: failure.is_none(),
            witness: failure.map(|s| table.subsets[s].clone()),
        }
    }
}

/// MDS iff `det Ω ≠ 0` for every k-subset of the evaluation points.
pub fn is_mds(spec: &TgrsSpec) -> MdsVerdict {
    let table = OmegaTable::for_spec(spec);
    let fail = table.first_failure(&raw(spec.eta()));
    MdsVerdict::from_failure(&table, fail)
}

/// Same verdict as [`is_mds`] from the closed forms; ℓ = 2 needs k ≥ 3,
/// ℓ = 3 needs k ≥ 5.
pub fn is_mds_fast(spec: &TgrsSpec) -> Result<MdsVerdict> {
    let table = OmegaTable::for_spec(spec);
    if !table.fast_available() {
        return Err(ClassifyError::NoFastPath {
            ell: spec.ell(),
            k: spec.k(),
        });
    }
    let fail = table.first_failure_fast(&raw(spec.eta()));
    Ok(MdsVerdict::from_failure(&table, fail))
}

fn subset_mask(s: &[usize]) -> u128 {
    s.iter().fold(0u128, |m, &i| m | (1u128 << i))
}

/// AMDS test for a non-MDS code: every (k+1)-subset must contain a k-subset
/// with `det Ω ≠ 0`. Returns the first (k+1)-subset that fails, if any.
pub fn amds_failure(spec: &TgrsSpec) -> Result<Option<Vec<usize>>> {
    let (n, k) = (spec.n(), spec.k());
    if n > 128 {
        return Err(ClassifyError::OutOfScope("AMDS test supports n <= 128".into()));
    }
    let table = OmegaTable::for_spec(spec);
    let eta = raw(spec.eta());
    let nonsingular: HashMap<u128, bool> = table
        .subsets
        .iter()
        .enumerate()
        .map(|(s, sub)| (subset_mask(sub), table.determinant(s, &eta) != 0))
        .collect();
    if nonsingular.values().all(|&ok| ok) {
        return Err(ClassifyError::AlreadyMds);
    }
    for big in (0..n).combinations(k + 1) {
        let mask = subset_mask(&big);
        let covered = big.iter().any(|&drop| nonsingular[&(mask & !(1u128 << drop))]);
        if !covered {
            return Ok(Some(big));
        }
    }
    Ok(None)
}

pub fn is_amds(spec: &TgrsSpec) -> Result<bool> {
    Ok(amds_failure(spec)?.is_none())
}

/// Ascending coefficients `a` of `∏_{i∈I}(x - α_i)`, `|I| = k+ℓ-1`, satisfy
/// the twist relations `a_{k+t} = η_{t+1} a_{k-ℓ+t}` for `t < ℓ`, i.e. the
/// product itself lies in the evaluation space.
fn in_twisted_space(f: &Field, a: &[u64], k: usize, eta: &[u64]) -> bool {
    let ell = eta.len();
    (0..ell).all(|t| a[k + t] == f.mul_raw(eta[t], a[k - ell + t]))
}

/// Singleton defect equals ℓ iff some (k+ℓ-1)-subset's vanishing polynomial
/// is itself a twisted message polynomial. Returns the first such subset.
pub fn defect_is_l(spec: &TgrsSpec) -> (bool, Option<Vec<usize>>) {
    let (n, k, ell) = (spec.n(), spec.k(), spec.ell());
    let size = k + ell - 1;
    if size > n {
        return (false, None);
    }
    let f = spec.field();
    let alpha = raw(spec.alpha());
    let eta = raw(spec.eta());
    let hit = (0..n).combinations(size).find(|s| {
        let a = product_of_linear(f, s.iter().map(|&i| alpha[i]));
        in_twisted_space(f, &a, k, &eta)
    });
    (hit.is_some(), hit)
}

/// Twist coefficients making `subset` (of size k+ℓ-1) a defect-ℓ witness:
/// `η_{t+1} = a_{k+t} / a_{k-ℓ+t}`. `None` if some divisor vanishes.
pub fn defect_l_witness(spec: &TgrsSpec, subset: &[usize]) -> Result<Option<Vec<Gf>>> {
    let (k, ell) = (spec.k(), spec.ell());
    check_subset(spec, subset, k + ell - 1)?;
    let f = spec.field();
    let a = product_of_linear(f, subset.iter().map(|&i| spec.alpha()[i].raw()));
    let mut eta = Vec::with_capacity(ell);
    for t in 0..ell {
        let Some(inv) = f.inv_raw(a[k - ell + t]) else {
            return Ok(None);
        };
        eta.push(f.wrap(f.mul_raw(a[k + t], inv)));
    }
    Ok(Some(eta))
}

/// The 2ℓ x ℓ system whose consistency for some (n-k+ℓ-1)-subset `J`
/// decides whether the dual also has defect ℓ:
/// `M[r][j] = [r ≤ j] σ_{j-r} - η_{ℓ-j} [r ≤ ℓ+j] σ_{ℓ+j-r}`,
/// right side `d_{2ℓ-1-r}` from the descending coefficients of `∏_{i∈J}(x - α_i)`.
pub fn dual_defect_system(spec: &TgrsSpec, subset: &[usize]) -> Result<(Matrix, Vec<Gf>)> {
    let (n, k, ell) = (spec.n(), spec.k(), spec.ell());
    check_subset(spec, subset, n - k + ell - 1)?;
    let f = spec.field();
    let sigma = raw(&spec.u_weights().sigma);
    let sig = |i: usize| sigma.get(i).copied().unwrap_or(0);
    let eta = raw(spec.eta());
    let mut m = Matrix::zeros(f, 2 * ell, ell);
    for r in 0..2 * ell {
        for j in 0..ell {
            let lower = if r <= j { sig(j - r) } else { 0 };
            let upper = if r <= ell + j { sig(ell + j - r) } else { 0 };
            m.set_raw(r, j, f.sub_raw(lower, f.mul_raw(eta[ell - 1 - j], upper)));
        }
    }
    let d = subset_coeffs(f, &raw(spec.alpha()), subset);
    let rhs = (0..2 * ell).map(|r| f.wrap(d[2 * ell - 1 - r])).collect();
    Ok((m, rhs))
}

/// ℓ-MDS iff the code has defect ℓ and the dual-side system is consistent
/// for some (n-k+ℓ-1)-subset. Requires every η nonzero and ℓ ≤ n-k.
pub fn is_l_mds(spec: &TgrsSpec) -> Result<bool> {
    if let Some(i) = spec.eta().iter().position(Gf::is_zero) {
        return Err(ClassifyError::ZeroEta(i + 1));
    }
    let (n, k, ell) = (spec.n(), spec.k(), spec.ell());
    if ell > n - k {
        return Err(ClassifyError::OutOfScope(format!(
            "ell = {ell} exceeds n - k = {}",
            n - k
        )));
    }
    if !defect_is_l(spec).0 {
        return Ok(false);
    }
    for j in (0..n).combinations(n - k + ell - 1) {
        let (m, rhs) = dual_defect_system(spec, &j)?;
        if m.solve(&rhs).expect("dimensions match").is_consistent() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// How far a self-duality verdict is backed by the criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// `ℓ ≤ ⌊(k-1)/3⌋`: the conditions are necessary and sufficient.
    Full,
    /// Larger ℓ: the conditions hold, which suffices for self-duality.
    SufficientOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum SelfDualFailure {
    /// `v_i² / u_i` differs from `v_1² / u_1`.
    MultiplierRatio { index: usize },
    /// A σ_j that must vanish does not.
    SigmaNonzero { index: usize },
    /// `1/η_i + 1/η_{ℓ+1-i} ≠ σ_ℓ`.
    EtaPairing { index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfDualReport {
    pub holds: bool,
    pub first_failure: Option<SelfDualFailure>,
    pub scope: Scope,
    /// The common value of `v_i² / u_i` when it exists.
    pub lambda: Option<u64>,
}

fn self_dual_conditions(spec: &TgrsSpec) -> (Option<SelfDualFailure>, Option<u64>) {
    let ell = spec.ell();
    let w = spec.u_weights();
    let ratios: Vec<Gf> = spec
        .v()
        .iter()
        .zip(&w.u)
        .map(|(v, u)| &(v * v) / u)
        .collect();
    if let Some(i) = ratios.iter().position(|r| *r != ratios[0]) {
        return (Some(SelfDualFailure::MultiplierRatio { index: i }), None);
    }
    let lambda = Some(ratios[0].raw());
    let sigma = &w.sigma;
    let sig = |i: usize| sigma.get(i).cloned().unwrap_or_else(|| spec.field().zero());
    for j in (1..2 * ell).filter(|&j| j != ell) {
        if !sig(j).is_zero() {
            return (Some(SelfDualFailure::SigmaNonzero { index: j }), lambda);
        }
    }
    let eta = spec.eta();
    for i in 1..=(ell + 2) / 2 {
        let lhs = &eta[i - 1].inv().expect("nonzero eta") + &eta[ell - i].inv().expect("nonzero eta");
        if lhs != sig(ell) {
            return (Some(SelfDualFailure::EtaPairing { index: i }), lambda);
        }
    }
    (None, lambda)
}

/// Self-duality for `n = 2k` with every η nonzero.
///
/// Inside `ℓ ≤ ⌊(k-1)/3⌋` the verdict is exact. Beyond that, holding
/// conditions still prove self-duality and are reported with
/// [`Scope::SufficientOnly`], while failing conditions decide nothing and
/// produce [`ClassifyError::OutOfScope`].
pub fn is_self_dual(spec: &TgrsSpec) -> Result<SelfDualReport> {
    let (n, k, ell) = (spec.n(), spec.k(), spec.ell());
    if n != 2 * k {
        return Err(ClassifyError::OutOfScope(format!("self-duality needs n = 2k, got n = {n}, k = {k}")));
    }
    if let Some(i) = spec.eta().iter().position(Gf::is_zero) {
        return Err(ClassifyError::ZeroEta(i + 1));
    }
    let scope = if 3 * ell < k { Scope::Full } else { Scope::SufficientOnly };
    let (first_failure, lambda) = self_dual_conditions(spec);
    if first_failure.is_some() && scope == Scope::SufficientOnly {
        return Err(ClassifyError::OutOfScope(format!(
            "conditions fail ({first_failure:?}) and ell = {ell} > floor((k-1)/3) = {}",
            (k - 1) / 3
        )));
    }
    Ok(SelfDualReport {
        holds: first_failure.is_none(),
        first_failure,
        scope,
        lambda,
    })
}

/// Options for [`classify`].
#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    /// Brute-force defects when the enumeration fits.
    pub oracle: Option<EnumOptions>,
    pub self_dual: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            oracle: Some(EnumOptions::default()),
            self_dual: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict<T> {
    Value { value: T },
    OutOfScope { reason: String },
    Skipped { reason: String },
}

impl<T> Verdict<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Verdict::Value { value } => Some(value),
            _ => None,
        }
    }
}

fn verdict<T>(r: Result<T>) -> Verdict<T> {
    match r {
        Ok(value) => Verdict::Value { value },
        Err(e) => Verdict::OutOfScope { reason: e.to_string() },
    }
}

/// Everything the criteria say about one spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub spec: SpecJson,
    pub is_grs: bool,
    pub is_mds: bool,
    pub witness_subset: Option<Vec<usize>>,
    /// Minimum distance implied by the criteria, when they pin it down.
    pub distance: Option<usize>,
    pub is_amds: Verdict<bool>,
    pub defect_is_l: bool,
    pub defect_l_witness: Option<Vec<usize>>,
    pub is_l_mds: Verdict<bool>,
    /// Brute-force Singleton defect of the code.
    pub defect: Option<usize>,
    /// Brute-force Singleton defect of the dual.
    pub dual_defect: Option<usize>,
    pub oracle_note: Option<String>,
    pub self_dual: Option<Verdict<SelfDualReport>>,
    /// Wall-clock microseconds per stage.
    pub timings_us: Vec<(String, u64)>,
}

pub fn classify(spec: &TgrsSpec, opts: ClassifyOptions) -> ClassificationReport {
    let mut timings = Vec::new();
    let mut timed = |name: &str, start: Instant| {
        timings.push((name.to_string(), start.elapsed().as_micros() as u64));
    };
    let (n, k, ell) = (spec.n(), spec.k(), spec.ell());

    let t = Instant::now();
    let mds = is_mds(spec);
    timed("mds", t);

    let t = Instant::now();
    let amds = if mds.mds {
        Verdict::Skipped { reason: "code is MDS".into() }
    } else {
        verdict(is_amds(spec))
    };
    timed("amds", t);

    let t = Instant::now();
    let (dl, dl_witness) = defect_is_l(spec);
    timed("defect", t);

    let t = Instant::now();
    let l_mds = verdict(is_l_mds(spec));
    timed("l_mds", t);

    let distance = if mds.mds {
        Some(n - k + 1)
    } else if dl {
        Some(n - k + 1 - ell)
    } else if amds.value() == Some(&true) {
        Some(n - k)
    } else {
        None
    };

    let (mut defect, mut dual_defect, mut oracle_note) = (None, None, None);
    if let Some(eo) = opts.oracle {
        let t = Instant::now();
        match oracle::singleton_defect(spec, eo) {
            Ok(s) => defect = Some(s),
            Err(e) => oracle_note = Some(e.to_string()),
        }
        let dual = oracle::dual_bruteforce(&spec.generator_matrix());
        match oracle::min_distance_bruteforce(&dual, eo) {
            Ok(d) => dual_defect = Some(k + 1 - d),
            Err(OracleError::Empty) => {}
            Err(e) => oracle_note = Some(e.to_string()),
        }
        timed("oracle", t);
    }

    let self_dual = opts.self_dual.then(|| {
        let t = Instant::now();
        let v = verdict(is_self_dual(spec));
        timed("self_dual", t);
        v
    });

    ClassificationReport {
        spec: spec.to_json(),
        is_grs: spec.is_grs(),
        is_mds: mds.mds,
        witness_subset: mds.witness,
        distance,
        is_amds: amds,
        defect_is_l: dl,
        defect_l_witness: dl_witness,
        is_l_mds: l_mds,
        defect,
        dual_defect,
        oracle_note,
        self_dual,
        timings_us: timings,
    }
}
