//! Twisted generalized Reed-Solomon codes with ℓ twists.
//!
//! A spec fixes evaluation points `α`, column multipliers `v` and twist
//! coefficients `η_1..η_ℓ`. The message `f_0..f_{k-1}` becomes the polynomial
//!
//! ```text
//! f(x) = Σ_{i<k} f_i x^i + Σ_{t<ℓ} η_{t+1} f_{k-ℓ+t} x^{k+t}
//! ```
//!
//! and the codeword is `(v_1 f(α_1), ..., v_n f(α_n))`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{same_field, Field, FieldCtx, FieldError, Gf};
use crate::matrix::Matrix;
use crate::poly::{product_of_linear, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("alpha has {alpha} entries, v has {v}, expected n = {n}")]
    LengthMismatch { n: usize, alpha: usize, v: usize },
    #[error("evaluation points {0} and {1} coincide")]
    DuplicateAlpha(usize, usize),
    #[error("column multiplier v_{0} is zero")]
    ZeroMultiplier(usize),
    #[error("need 1 <= k < n, got k = {k}, n = {n}")]
    Dimension { n: usize, k: usize },
    #[error("length n = {n} exceeds the field order {q}")]
    TooLong { n: usize, q: u64 },
    #[error("ell = {ell} outside the {regime} range for n = {n}, k = {k}")]
    EllOutOfRange {
        ell: usize,
        n: usize,
        k: usize,
        regime: Regime,
    },
    #[error("message has {got} symbols, expected k = {k}")]
    MessageLength { k: usize, got: usize },
    #[error("eta_{0} is zero; the explicit parity-check matrix needs every twist coefficient nonzero")]
    ZeroEta(usize),
    #[error("ell = {ell} exceeds the redundancy n - k = {redundancy}")]
    EllExceedsRedundancy { ell: usize, redundancy: usize },
    #[error("malformed spec: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, SpecError>;

/// Admissible range of the twist count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `1 <= ℓ < min(k, n - k)`.
    #[default]
    Standard,
    /// `1 <= ℓ <= k`; needed by the larger-k search tables and by
    /// constructions with `ℓ = k = n - k`.
    Extended,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::Standard => "standard (1 <= ell < min(k, n-k))",
            Regime::Extended => "extended (1 <= ell <= k)",
        })
    }
}

impl Regime {
    pub fn admits(self, n: usize, k: usize, ell: usize) -> bool {
        match self {
            Regime::Standard => ell >= 1 && ell < k.min(n - k),
            Regime::Extended => ell >= 1 && ell <= k,
        }
    }
}

/// A validated code description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TgrsSpec {
    field: Field,
    k: usize,
    alpha: Vec<Gf>,
    v: Vec<Gf>,
    eta: Vec<Gf>,
    regime: Regime,
}

/// `u_i = ∏_{j≠i} (α_i - α_j)^{-1}` and the descending coefficients
/// `σ_0 = 1, ..., σ_n` of `∏ (x - α_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UWeights {
    pub u: Vec<Gf>,
    pub sigma: Vec<Gf>,
}

/// Errors if two points coincide.
pub fn u_weights(alpha: &[Gf]) -> Result<UWeights> {
    let field = alpha
        .first()
        .map(|a| Field::clone(a.field()))
        .ok_or_else(|| SpecError::Malformed("no evaluation points".into()))?;
    check_distinct(alpha)?;
    let f = &field;
    let mut u = Vec::with_capacity(alpha.len());
    for (i, ai) in alpha.iter().enumerate() {
        let mut prod = 1u64;
        for (j, aj) in alpha.iter().enumerate() {
            if i != j {
                prod = f.mul_raw(prod, f.sub_raw(ai.raw(), aj.raw()));
            }
        }
        u.push(f.wrap(f.inv_raw(prod).expect("distinct points")));
    }
    let asc = product_of_linear(f, alpha.iter().map(Gf::raw));
    let sigma = asc.iter().rev().map(|&c| f.wrap(c)).collect();
    Ok(UWeights { u, sigma })
}

fn check_distinct(alpha: &[Gf]) -> Result<()> {
    let mut seen: HashMap<u64, usize> = HashMap::new();
    for (i, a) in alpha.iter().enumerate() {
        if let Some(&j) = seen.get(&a.raw()) {
            return Err(SpecError::DuplicateAlpha(j, i));
        }
        seen.insert(a.raw(), i);
    }
    Ok(())
}

impl TgrsSpec {
    /// Validates in the [`Regime::Standard`] range.
    pub fn new(field: &Field, k: usize, alpha: Vec<Gf>, v: Vec<Gf>, eta: Vec<Gf>) -> Result<Self> {
        Self::with_regime(field, k, alpha, v, eta, Regime::Standard)
    }

    /// Validates in the [`Regime::Extended`] range.
    pub fn new_extended(
        field: &Field,
        k: usize,
        alpha: Vec<Gf>,
        v: Vec<Gf>,
        eta: Vec<Gf>,
    ) -> Result<Self> {
        Self::with_regime(field, k, alpha, v, eta, Regime::Extended)
    }

    pub fn with_regime(
        field: &Field,
        k: usize,
        alpha: Vec<Gf>,
        v: Vec<Gf>,
        eta: Vec<Gf>,
        regime: Regime,
    ) -> Result<Self> {
        let n = alpha.len();
        if v.len() != n {
            return Err(SpecError::LengthMismatch {
                n,
                alpha: n,
                v: v.len(),
            });
        }
        if alpha.iter().chain(&v).chain(&eta).any(|x| !same_field(x.field(), field)) {
            return Err(FieldError::FieldMismatch.into());
        }
        if k == 0 || k >= n {
            return Err(SpecError::Dimension { n, k });
        }
        if n as u64 > field.order() {
            return Err(SpecError::TooLong {
                n,
                q: field.order(),
            });
        }
        check_distinct(&alpha)?;
        if let Some(i) = v.iter().position(Gf::is_zero) {
            return Err(SpecError::ZeroMultiplier(i));
        }
        if !regime.admits(n, k, eta.len()) {
            return Err(SpecError::EllOutOfRange {
                ell: eta.len(),
                n,
                k,
                regime,
            });
        }
        Ok(TgrsSpec {
            field: Field::clone(field),
            k,
            alpha,
            v,
            eta,
            regime,
        })
    }

    /// Integer-encoded convenience constructor; `v = None` means all ones.
    pub fn from_ints(
        field: &Field,
        k: usize,
        alpha: &[u64],
        v: Option<&[u64]>,
        eta: &[u64],
        regime: Regime,
    ) -> Result<Self> {
        let conv = |xs: &[u64]| xs.iter().map(|&x| field.elem(x)).collect::<std::result::Result<Vec<_>, _>>();
        let alpha = conv(alpha)?;
        let v = match v {
            Some(v) => conv(v)?,
            None => vec![field.one(); alpha.len()],
        };
        Self::with_regime(field, k, alpha, v, conv(eta)?, regime)
    }

    /// Same code family with different twist coefficients.
    pub fn with_eta(&self, eta: Vec<Gf>) -> Result<Self> {
        Self::with_regime(
            &self.field,
            self.k,
            self.alpha.clone(),
            self.v.clone(),
            eta,
            self.regime,
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.eta.len()
    }

    pub fn alpha(&self) -> &[Gf] {
        &self.alpha
    }

    pub fn v(&self) -> &[Gf] {
        &self.v
    }

    pub fn eta(&self) -> &[Gf] {
        &self.eta
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn is_grs(&self) -> bool {
        self.eta.iter().all(Gf::is_zero)
    }

    /// The twisted message polynomial.
    pub fn message_polynomial(&self, message: &[Gf]) -> Result<Poly> {
        let (k, ell) = (self.k, self.ell());
        if message.len() != k {
            return Err(SpecError::MessageLength {
                k,
                got: message.len(),
            });
        }
        if message.iter().any(|m| !same_field(m.field(), &self.field)) {
            return Err(FieldError::FieldMismatch.into());
        }
        let mut coeffs: Vec<Gf> = message.to_vec();
        for t in 0..ell {
            coeffs.push(&self.eta[t] * &message[k - ell + t]);
        }
        Ok(Poly::new(&self.field, &coeffs).expect("same field"))
    }

    pub fn encode(&self, message: &[Gf]) -> Result<Codeword> {
        let f = self.message_polynomial(message)?;
        Ok(Codeword(
            self.alpha
                .iter()
                .zip(&self.v)
                .map(|(a, v)| v * f.eval(a))
                .collect(),
        ))
    }

    /// `k x n`; row `i < k-ℓ` is `v_j α_j^i`, row `k-ℓ+t` is
    /// `v_j (α_j^{k-ℓ+t} + η_{t+1} α_j^{k+t})`.
    pub fn generator_matrix(&self) -> Matrix {
        let f = &self.field;
        let (n, k, ell) = (self.n(), self.k, self.ell());
        let mut g = Matrix::zeros(f, k, n);
        for (j, (a, v)) in self.alpha.iter().zip(&self.v).enumerate() {
            let (a, v) = (a.raw(), v.raw());
            let mut pow = 1u64;
            let mut powers = Vec::with_capacity(k + ell);
            for _ in 0..k + ell {
                powers.push(pow);
                pow = f.mul_raw(pow, a);
            }
            for i in 0..k {
                let mut x = powers[i];
                if i >= k - ell {
                    let t = i - (k - ell);
                    x = f.add_raw(x, f.mul_raw(self.eta[t].raw(), powers[k + t]));
                }
                g.set_raw(i, j, f.mul_raw(v, x));
            }
        }
        g
    }

    pub fn u_weights(&self) -> UWeights {
        u_weights(&self.alpha).expect("validated points are distinct")
    }

    /// The explicit `(n-k) x n` parity-check matrix. Row `i < n-k-ℓ` is
    /// `(u_j/v_j) α_j^i`; row `n-k-ℓ+t` is
    /// `(u_j/v_j) α_j^{n-k-ℓ} (Σ_{i≤t} σ_{t-i} α_j^i - η_{ℓ-t} Σ_{i≤t+ℓ} σ_{t+ℓ-i} α_j^i)`.
    pub fn parity_check_matrix(&self) -> Result<Matrix> {
        if let Some(i) = self.eta.iter().position(Gf::is_zero) {
            return Err(SpecError::ZeroEta(i + 1));
        }
        let (n, k, ell) = (self.n(), self.k, self.ell());
        if ell > n - k {
            return Err(SpecError::EllExceedsRedundancy {
                ell,
                redundancy: n - k,
            });
        }
        let f = &self.field;
        let UWeights { u, sigma } = self.u_weights();
        let sigma: Vec<u64> = sigma.iter().map(Gf::raw).collect();
        let sig = |i: usize| sigma.get(i).copied().unwrap_or(0);
        let base = n - k - ell;
        let mut h = Matrix::zeros(f, n - k, n);
        for j in 0..n {
            let a = self.alpha[j].raw();
            let w = f.mul_raw(u[j].raw(), f.inv_raw(self.v[j].raw()).expect("nonzero v"));
            let mut powers = Vec::with_capacity(base + 2 * ell);
            let mut pw = 1u64;
            for _ in 0..base.max(2 * ell) + 1 {
                powers.push(pw);
                pw = f.mul_raw(pw, a);
            }
            for i in 0..base {
                h.set_raw(i, j, f.mul_raw(w, powers[i]));
            }
            for t in 0..ell {
                let lower = (0..=t).fold(0, |acc, i| f.add_raw(acc, f.mul_raw(sig(t - i), powers[i])));
                let upper = (0..=t + ell).fold(0, |acc, i| {
                    f.add_raw(acc, f.mul_raw(sig(t + ell - i), powers[i]))
                });
                let eta = self.eta[ell - 1 - t].raw();
                let inner = f.sub_raw(lower, f.mul_raw(eta, upper));
                h.set_raw(base + t, j, f.mul_raw(f.mul_raw(w, powers[base]), inner));
            }
        }
        Ok(h)
    }

    pub fn to_json(&self) -> SpecJson {
        SpecJson {
            field: self.field.spec_string(),
            n: self.n(),
            k: self.k,
            ell: self.ell(),
            alpha: self.alpha.iter().map(Gf::raw).collect(),
            v: self.v.iter().map(Gf::raw).collect(),
            eta: self.eta.iter().map(Gf::raw).collect(),
            regime: Some(self.regime),
        }
    }
}

/// A codeword of some spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword(pub Vec<Gf>);

impl Codeword {
    pub fn values(&self) -> &[Gf] {
        &self.0
    }

    pub fn to_ints(&self) -> Vec<u64> {
        self.0.iter().map(Gf::raw).collect()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|x| !x.is_zero()).count()
    }
}

/// Wire form of a spec. Elements are integers `Σ c_i p^i`; `v` defaults
/// to all ones and `regime` to standard when absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecJson {
    pub field: String,
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub alpha: Vec<u64>,
    #[serde(default)]
    pub v: Vec<u64>,
    pub eta: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regime: Option<Regime>,
}

impl SpecJson {
    pub fn to_spec(&self) -> Result<TgrsSpec> {
        let field = FieldCtx::parse(&self.field)?;
        self.to_spec_in(&field)
    }

    /// Builds the spec over an already constructed field equal to `self.field`.
    pub fn to_spec_in(&self, field: &Field) -> Result<TgrsSpec> {
        if self.alpha.len() != self.n {
            return Err(SpecError::Malformed(format!(
                "n = {} but alpha has {} entries",
                self.n,
                self.alpha.len()
            )));
        }
        if self.eta.len() != self.ell {
            return Err(SpecError::Malformed(format!(
                "ell = {} but eta has {} entries",
                self.ell,
                self.eta.len()
            )));
        }
        let v = (!self.v.is_empty()).then_some(self.v.as_slice());
        TgrsSpec::from_ints(
            field,
            self.k,
            &self.alpha,
            v,
            &self.eta,
            self.regime.unwrap_or_default(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf13() -> Field {
        FieldCtx::prime(13).unwrap()
    }

    const EX37_ALPHA: [u64; 10] = [0, 1, 2, 3, 4, 5, 6, 9, 10, 12];

    #[test]
    fn validation_examples() {
        let f = gf13();
        assert!(TgrsSpec::from_ints(&f, 5, &EX37_ALPHA, None, &[2, 3, 6], Regime::Standard).is_ok());
        let err = TgrsSpec::from_ints(&f, 3, &[0, 1, 2, 3, 4, 5, 6], None, &[1, 1, 1], Regime::Standard);
        assert!(matches!(err, Err(SpecError::EllOutOfRange { ell: 3, .. })));
        let err = TgrsSpec::from_ints(&f, 3, &[0, 1, 2, 3, 4, 2, 6], None, &[1], Regime::Standard);
        assert_eq!(err.unwrap_err(), SpecError::DuplicateAlpha(2, 5));
        let err = TgrsSpec::from_ints(&f, 2, &[0, 1, 2, 3, 4], Some(&[1, 1, 0, 1, 1]), &[1], Regime::Standard);
        assert_eq!(err.unwrap_err(), SpecError::ZeroMultiplier(2));
        let long: Vec<u64> = (0..13).collect();
        assert!(TgrsSpec::from_ints(&f, 5, &long, None, &[1], Regime::Standard).is_ok());
        // ℓ = k is admitted only in the extended range
        let alpha = [1, 4, 5, 6, 7, 8, 9, 12];
        assert!(TgrsSpec::from_ints(&f, 4, &alpha, None, &[1, 3, 2, 7], Regime::Standard).is_err());
        assert!(TgrsSpec::from_ints(&f, 4, &alpha, None, &[1, 3, 2, 7], Regime::Extended).is_ok());
    }

    #[test]
    fn encode_examples() {
        let f = gf13();
        let spec = TgrsSpec::from_ints(&f, 5, &EX37_ALPHA, Some(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]), &[2, 3, 6], Regime::Standard).unwrap();
        let unit: Vec<Gf> = (0..5).map(|i| f.int((i == 0) as i64)).collect();
        assert_eq!(spec.encode(&unit).unwrap().values(), spec.v());
        let zero = vec![f.zero(); 5];
        assert_eq!(spec.encode(&zero).unwrap().weight(), 0);
        // f_4 = 1 encodes x^4 + 6x^7
        let mut m = zero.clone();
        m[4] = f.one();
        let oracle = Poly::from_ints(&f, &[0, 0, 0, 0, 1, 0, 0, 6]).unwrap();
        let cw = spec.encode(&m).unwrap();
        for j in 0..10 {
            assert_eq!(cw.values()[j], &spec.v()[j] * &oracle.eval(&spec.alpha()[j]));
        }
        assert!(matches!(spec.encode(&m[..3]), Err(SpecError::MessageLength { k: 5, got: 3 })));
    }

    #[test]
    fn generator_rows_are_encoded_units() {
        let f = gf13();
        let spec = TgrsSpec::from_ints(&f, 5, &EX37_ALPHA, None, &[2, 3, 6], Regime::Standard).unwrap();
        let g = spec.generator_matrix();
        for i in 0..5 {
            let unit: Vec<Gf> = (0..5).map(|j| f.int((i == j) as i64)).collect();
            assert_eq!(spec.encode(&unit).unwrap().values(), g.row(i).as_slice());
        }
        let grs = spec.with_eta(vec![f.zero(); 3]).unwrap().generator_matrix();
        for i in 0..5 {
            for j in 0..10 {
                assert_eq!(grs.get(i, j), f.int(EX37_ALPHA[j] as i64).pow(i as u64));
            }
        }
    }

    #[test]
    fn u_weight_examples() {
        let f = gf13();
        let alpha: Vec<Gf> = [0, 1, 2].iter().map(|&a| f.int(a)).collect();
        let w = u_weights(&alpha).unwrap();
        assert_eq!(w.u, vec![f.int(7), f.int(12), f.int(7)]);
        // x(x-1)(x-2) = x^3 - 3x^2 + 2x
        assert_eq!(w.sigma, vec![f.int(1), f.int(-3), f.int(2), f.int(0)]);
        let dup: Vec<Gf> = [0, 1, 1].iter().map(|&a| f.int(a)).collect();
        assert_eq!(u_weights(&dup).unwrap_err(), SpecError::DuplicateAlpha(1, 2));
    }

    #[test]
    fn parity_check_annihilates_generator() {
        let f = gf13();
        let spec = TgrsSpec::from_ints(&f, 5, &EX37_ALPHA, Some(&[3, 1, 4, 1, 5, 9, 2, 6, 5, 3]), &[2, 3, 6], Regime::Standard).unwrap();
        let h = spec.parity_check_matrix().unwrap();
        assert_eq!((h.rows(), h.cols()), (5, 10));
        assert!(spec.generator_matrix().mul(&h.transpose()).unwrap().is_zero());
        assert_eq!(h.rank(), 5);
        let zero_eta = spec.with_eta(vec![f.int(2), f.zero(), f.int(6)]).unwrap();
        assert_eq!(zero_eta.parity_check_matrix().unwrap_err(), SpecError::ZeroEta(2));
    }

    #[test]
    fn json_round_trip() {
        let f = FieldCtx::parse("13^2/2,7,1").unwrap();
        let alpha: Vec<Gf> = [0u64, 1, 2, 3, 4, 5, 6, 9, 10, 12].iter().map(|&a| f.elem(a).unwrap()).collect();
        let v: Vec<Gf> = (1..=10).map(|x| f.elem(x * 13 + 1).unwrap()).collect();
        let eta = vec![f.int(2), f.int(3), f.int(6)];
        let spec = TgrsSpec::new(&f, 5, alpha, v, eta).unwrap();
        let text = serde_json::to_string(&spec.to_json()).unwrap();
        let back: SpecJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_spec().unwrap(), spec);
        let minimal: SpecJson = serde_json::from_str(
            r#"{"field":"13","n":10,"k":5,"ell":3,"alpha":[0,1,2,3,4,5,6,9,10,12],"eta":[2,3,6]}"#,
        )
        .unwrap();
        assert!(minimal.to_spec().unwrap().v().iter().all(Gf::is_one));
    }
}
