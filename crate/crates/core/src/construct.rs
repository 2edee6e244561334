//! Explicit self-dual TGRS codes from the roots of `(x^{q^s} - x)/(x^ℓ - a)`,
//! and exhaustive searches over twist coefficients.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{self, ClassifyError, OmegaTable, Scope};
use crate::field::{sqrt_in_extension, Embedding, Field, FieldCtx, FieldError, Gf};
use crate::poly::{Poly, PolyError};
use crate::tgrs::{Regime, SpecError, SpecJson, TgrsSpec};

/// Default cap on the number of η tuples a search may scan.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("gcd(q, ell) = gcd({q}, {ell}) is not 1")]
    NotCoprime { q: u64, ell: usize },
    #[error("7*ell = {} exceeds q^ell - 1 for q = {q}, ell = {ell}", 7 * .ell)]
    BoundFails { q: u64, ell: usize },
    #[error("ell must be at least 1")]
    ZeroEll,
    #[error("a must be a nonzero element of the base field")]
    ZeroA,
    #[error("free eta_{index} = {value} is forbidden (0 or 1/a)")]
    ForbiddenEta { index: usize, value: u64 },
    #[error("middle eta_{index} must equal 2/a = {expected}, got {got}")]
    MiddleEta { index: usize, expected: u64, got: u64 },
    #[error("expected {expected} free eta values, got {got}")]
    FreeCount { expected: String, got: usize },
    #[error("x^ell - a does not split in any extension of degree <= ell")]
    NoSplitting,
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("eta tuple {0:?} has the wrong length")]
    TupleLength(Vec<u64>),
    #[error("search needs {needed} eta tuples, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
}

pub type Result<T> = std::result::Result<T, ConstructError>;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Completes `η_1..η_ℓ` from the free leading values so that
/// `1/η_i + 1/η_{ℓ+1-i} = a` for every pair, via `η_{ℓ+1-i} = 1/(a - 1/η_i)`.
///
/// Even ℓ takes ℓ/2 free values. Odd ℓ takes (ℓ-1)/2, or (ℓ+1)/2 when the
/// middle value is spelled out; the middle index pairs with itself, which
/// forces it to `2/a`.
pub fn eta_chain(field: &Field, ell: usize, a: &Gf, free: &[Gf]) -> Result<Vec<Gf>> {
    if ell == 0 {
        return Err(ConstructError::ZeroEll);
    }
    if a.is_zero() {
        return Err(ConstructError::ZeroA);
    }
    let half = ell / 2;
    let allowed = if ell.is_multiple_of(2) {
        free.len() == half
    } else {
        free.len() == half || free.len() == half + 1
    };
    if !allowed {
        let expected = if ell.is_multiple_of(2) {
            half.to_string()
        } else {
            format!("{half} or {}", half + 1)
        };
        return Err(ConstructError::FreeCount {
            expected,
            got: free.len(),
        });
    }
    for x in free {
        if !crate::field::same_field(x.field(), field) {
            return Err(FieldError::FieldMismatch.into());
        }
    }
    let a_inv = a.inv()?;
    let mut eta = vec![field.zero(); ell];
    for (i, x) in free.iter().take(half).enumerate() {
        if x.is_zero() || *x == a_inv {
            return Err(ConstructError::ForbiddenEta {
                index: i + 1,
                value: x.raw(),
            });
        }
        eta[i] = x.clone();
        eta[ell - 1 - i] = (a - &x.inv()?).inv()?;
    }
    if ell % 2 == 1 {
        let middle = &field.int(2) / a;
        if let Some(given) = free.get(half) {
            if *given != middle {
                return Err(ConstructError::MiddleEta {
                    index: half + 1,
                    expected: middle.raw(),
                    got: given.raw(),
                });
            }
        }
        eta[half] = middle;
    }
    Ok(eta)
}

/// Output of [`construct_self_dual`].
#[derive(Clone, Debug)]
pub struct SelfDualRecipe {
    pub base: Field,
    /// GF(q^s), home of the evaluation points.
    pub split: Field,
    /// GF(q^{2s}), home of the code.
    pub code_field: Field,
    pub ell: usize,
    pub a: Gf,
    pub s: usize,
    pub free_etas: Vec<Gf>,
    /// η over the base field.
    pub eta: Vec<Gf>,
    /// `(x^{q^s} - x)/(x^ℓ - a)`, divided by `x` as well for even ℓ; over GF(q^s).
    pub m: Poly,
    pub spec: TgrsSpec,
    pub scope: Scope,
    /// `3ℓ ≤ k`, the working condition behind the distance bound.
    pub three_ell_le_k: bool,
    /// `7ℓ ≤ q^ℓ - 1`; always true for a returned recipe.
    pub seven_ell_bound: bool,
}

impl SelfDualRecipe {
    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn k(&self) -> usize {
        self.spec.k()
    }

    /// Guaranteed lower bound on the minimum distance.
    pub fn distance_bound(&self) -> usize {
        let qs = self.split.order() as usize;
        if self.ell % 2 == 1 {
            (qs + 2 - 3 * self.ell) / 2
        } else {
            (qs + 1 - 3 * self.ell) / 2
        }
    }

    /// α as elements of GF(q^s).
    pub fn roots(&self) -> Vec<Gf> {
        self.m.roots_in_field().expect("split field within scan limit")
    }

    pub fn to_json(&self) -> RecipeJson {
        RecipeJson {
            q: self.base.order(),
            base_field: self.base.spec_string(),
            split_field: self.split.spec_string(),
            ell: self.ell,
            a: self.a.raw(),
            s: self.s,
            free_etas: self.free_etas.iter().map(Gf::raw).collect(),
            eta: self.eta.iter().map(Gf::raw).collect(),
            m: self.m.raw_coeffs().to_vec(),
            spec: self.spec.to_json(),
            scope: self.scope,
            three_ell_le_k: self.three_ell_le_k,
            seven_ell_bound: self.seven_ell_bound,
            distance_bound: self.distance_bound(),
        }
    }
}

/// Wire form of a recipe: the spec plus how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeJson {
    pub q: u64,
    pub base_field: String,
    pub split_field: String,
    pub ell: usize,
    pub a: u64,
    pub s: usize,
    pub free_etas: Vec<u64>,
    pub eta: Vec<u64>,
    /// Ascending coefficients over the split field.
    pub m: Vec<u64>,
    pub spec: SpecJson,
    pub scope: Scope,
    pub three_ell_le_k: bool,
    pub seven_ell_bound: bool,
    pub distance_bound: usize,
}

/// Least `s` with `x^{q^s} ≡ x (mod f)`: the degree of the splitting field
/// of a squarefree `f` over GF(q).
pub fn splitting_degree(f: &Poly, max: usize) -> Result<usize> {
    let field = f.field();
    let q = field.order();
    let x = Poly::from_raw(field, vec![0, 1]).rem(f)?;
    let mut cur = x.clone();
    for s in 1..=max {
        cur = cur.pow_mod(q, f)?;
        if cur == x {
            return Ok(s);
        }
    }
    Err(ConstructError::NoSplitting)
}

fn extension(base: &Field, degree: usize) -> Result<(Field, Embedding)> {
    if degree == 1 {
        return Ok((Field::clone(base), Embedding::new(base, base)?));
    }
    let big = FieldCtx::new(base.characteristic(), base.degree() * degree, None)?;
    let emb = Embedding::new(base, &big)?;
    Ok((big, emb))
}

/// Builds the self-dual code over GF(q^{2s}) from `x^ℓ - a`.
///
/// `code_modulus` optionally fixes the modulus of GF(q^{2s}) over GF(p)
/// (ascending, monic); otherwise the default modulus is used.
pub fn construct_self_dual(
    base: &Field,
    ell: usize,
    a: &Gf,
    free: &[Gf],
    code_modulus: Option<&[u64]>,
) -> Result<SelfDualRecipe> {
    let q = base.order();
    if ell == 0 {
        return Err(ConstructError::ZeroEll);
    }
    if gcd(q, ell as u64) != 1 {
        return Err(ConstructError::NotCoprime { q, ell });
    }
    let q_pow = (q as u128).checked_pow(ell as u32);
    if q_pow.is_some_and(|qp| 7 * ell as u128 > qp - 1) {
        return Err(ConstructError::BoundFails { q, ell });
    }
    if !crate::field::same_field(a.field(), base) {
        return Err(FieldError::FieldMismatch.into());
    }
    if a.is_zero() {
        return Err(ConstructError::ZeroA);
    }
    let eta = eta_chain(base, ell, a, free)?;

    // f = x^ℓ - a over GF(q)
    let mut fc = vec![base.zero(); ell + 1];
    fc[0] = -a;
    fc[ell] = base.one();
    let f = Poly::new(base, &fc)?;
    let df = f.derivative();
    if f.gcd(&df)?.degree() != Some(0) {
        return Err(ConstructError::Postcondition("x^ell - a is not squarefree".into()));
    }
    let s = splitting_degree(&f, ell)?;

    let (split, to_split) = extension(base, s)?;
    let p = base.characteristic();
    let code_field = FieldCtx::new(p, split.degree() * 2, code_modulus)?;
    let to_code = Embedding::new(&split, &code_field)?;

    let qs = split.order();
    let f_split = f.map_into(&to_split)?;
    let mut xq = vec![0u64; qs as usize + 1];
    xq[qs as usize] = 1;
    xq[1] = split.neg_raw(1);
    let xq = Poly::from_raw(&split, xq);
    let den = if ell % 2 == 1 {
        f_split.clone()
    } else {
        f_split.mul(&Poly::from_raw(&split, vec![0, 1]))?
    };
    let m = xq.divide_exact(&den)?;

    let roots = m.roots_with_multiplicity()?;
    let deg = m.degree().expect("nonzero quotient");
    if roots.len() != deg || roots.iter().any(|(_, mult)| *mult != 1) {
        return Err(ConstructError::Postcondition(format!(
            "m has {} distinct roots in GF({qs}), expected {deg} simple ones",
            roots.len()
        )));
    }
    let dm = m.derivative();
    let mut alpha = Vec::with_capacity(deg);
    let mut v = Vec::with_capacity(deg);
    for (r, _) in &roots {
        let w = dm.eval(r).inv()?;
        let y = sqrt_in_extension(&w, &to_code)?;
        alpha.push(to_code.apply(r)?);
        v.push(y);
    }
    let to_code_from_base = to_split.then(&to_code)?;
    let eta_code = eta
        .iter()
        .map(|e| to_code_from_base.apply(e))
        .collect::<std::result::Result<Vec<_>, _>>()?;

    let n = alpha.len();
    let k = n / 2;
    let regime = if Regime::Standard.admits(n, k, ell) {
        Regime::Standard
    } else {
        Regime::Extended
    };
    let spec = TgrsSpec::with_regime(&code_field, k, alpha, v, eta_code, regime)?;

    // σ_ℓ = a and its neighbours vanish, i.e. m = x^n + a x^{n-ℓ} + ...
    let a_split = to_split.apply(a)?;
    if m.coeff(n - ell) != a_split {
        return Err(ConstructError::Postcondition("sigma_ell differs from a".into()));
    }
    let report = classify::is_self_dual(&spec)?;
    if !report.holds {
        return Err(ConstructError::Postcondition(format!(
            "self-duality conditions fail: {:?}",
            report.first_failure
        )));
    }
    let g = spec.generator_matrix();
    if !g.mul(&g.transpose()).map_err(|e| ConstructError::Postcondition(e.to_string()))?.is_zero() {
        return Err(ConstructError::Postcondition("G G^T is not zero".into()));
    }
    Ok(SelfDualRecipe {
        base: Field::clone(base),
        split,
        code_field,
        ell,
        a: a.clone(),
        s,
        free_etas: free.to_vec(),
        eta,
        m,
        spec,
        scope: report.scope,
        three_ell_le_k: 3 * ell <= k,
        seven_ell_bound: true,
    })
}

/// Which η tuples a search scans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EtaDomain {
    /// All of GF(q)^ℓ.
    All,
    /// An explicit list of raw-encoded tuples.
    Explicit(Vec<Vec<u64>>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub workers: usize,
    /// Keep the full list of MDS tuples.
    pub list: bool,
    /// Use the closed-form determinants when ℓ ∈ {2, 3}.
    pub fast: bool,
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: 1,
            list: false,
            fast: true,
            budget: DEFAULT_SEARCH_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub scanned: u64,
    pub count: u64,
    /// MDS tuples in lexicographic order of their raw encodings.
    pub mds_tuples: Option<Vec<Vec<u64>>>,
    pub elapsed_us: u64,
}

impl SearchResult {
    /// Minimum distance of every code counted.
    pub fn distance(&self) -> usize {
        self.n - self.k + 1
    }
}

/// Counts the η tuples for which the code with points `alpha` and
/// dimension `k` is MDS. Results do not depend on the worker count.
pub fn search_mds(
    field: &Field,
    alpha: &[Gf],
    k: usize,
    ell: usize,
    domain: &EtaDomain,
    opts: SearchOptions,
) -> Result<SearchResult> {
    let start = Instant::now();
    let ones = vec![field.one(); alpha.len()];
    TgrsSpec::with_regime(field, k, alpha.to_vec(), ones, vec![field.zero(); ell], Regime::Extended)?;
    let q = field.order();
    let total: u64 = match domain {
        EtaDomain::All => (q as u128)
            .checked_pow(ell as u32)
            .filter(|&t| t <= u64::MAX as u128)
            .map_or(u64::MAX, |t| t as u64),
        EtaDomain::Explicit(list) => {
            for t in list {
                if t.len() != ell {
                    return Err(ConstructError::TupleLength(t.clone()));
                }
                for &x in t {
                    field.elem(x)?;
                }
            }
            list.len() as u64
        }
    };
    if total > opts.budget {
        return Err(ConstructError::BudgetExceeded {
            needed: total,
            budget: opts.budget,
        });
    }
    let table = OmegaTable::new(field, alpha, k, ell);
    let fast = opts.fast && table.fast_available();
    let tuple_at = |idx: u64| -> Vec<u64> {
        match domain {
            EtaDomain::All => {
                let mut t = vec![0u64; ell];
                let mut x = idx;
                for slot in t.iter_mut().rev() {
                    *slot = x % q;
                    x /= q;
                }
                t
            }
            EtaDomain::Explicit(list) => list[idx as usize].clone(),
        }
    };
    let scan = |lo: u64, hi: u64| -> (u64, Vec<Vec<u64>>) {
        let mut count = 0;
        let mut found = Vec::new();
        for idx in lo..hi {
            let eta = tuple_at(idx);
            let fail = if fast {
                table.first_failure_fast(&eta)
            } else {
                table.first_failure(&eta)
            };
            if fail.is_none() {
                count += 1;
                if opts.list {
                    found.push(eta);
                }
            }
        }
        (count, found)
    };
    let workers = (opts.workers.max(1) as u64).min(total.max(1));
    let (count, mut found) = if workers <= 1 {
        scan(0, total)
    } else {
        let chunk = total.div_ceil(workers);
        std::thread::scope(|sc| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let lo = (w * chunk).min(total);
                    let hi = ((w + 1) * chunk).min(total);
                    let scan = &scan;
                    sc.spawn(move || scan(lo, hi))
                })
                .collect();
            handles.into_iter().fold((0, Vec::new()), |(c, mut f), h| {
                let (hc, hf) = h.join().expect("search worker panicked");
                f.extend(hf);
                (c + hc, f)
            })
        })
    };
    if opts.list {
        found.sort_unstable();
    }
    Ok(SearchResult {
        n: alpha.len(),
        k,
        ell,
        scanned: total,
        count,
        mds_tuples: opts.list.then_some(found),
        elapsed_us: start.elapsed().as_micros() as u64,
    })
}
