//! Univariate polynomials over a [`Field`], plus the two triangular
//! Toeplitz sequences used by the MDS and duality criteria.

use std::fmt;

use thiserror::Error;

use crate::field::{same_field, Field, FieldError, Gf, TABLE_LIMIT};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division leaves a nonzero remainder")]
    NotExact,
    #[error("repeated root {0}")]
    DuplicateRoot(u64),
    #[error("leading coefficient must be 1, got {0}")]
    NotNormalized(u64),
    #[error("empty coefficient sequence")]
    Empty,
}

pub type Result<T> = std::result::Result<T, PolyError>;

/// Polynomial with ascending coefficients and no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u64>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    /// From ascending coefficients; trailing zeros are dropped.
    pub fn new(field: &Field, coeffs: &[Gf]) -> Result<Self> {
        let mut raw = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if !same_field(c.field(), field) {
                return Err(FieldError::FieldMismatch.into());
            }
            raw.push(c.raw());
        }
        Ok(Self::from_raw(field, raw))
    }

    /// From ascending raw element encodings.
    pub fn from_ints(field: &Field, coeffs: &[u64]) -> Result<Self> {
        for &c in coeffs {
            field.elem(c)?;
        }
        Ok(Self::from_raw(field, coeffs.to_vec()))
    }

    pub(crate) fn from_raw(field: &Field, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            field: Field::clone(field),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_raw(field, Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        Self::from_raw(field, vec![1])
    }

    /// `c * x^d`.
    pub fn monomial(c: &Gf, d: usize) -> Self {
        let mut v = vec![0; d + 1];
        v[d] = c.raw();
        Self::from_raw(c.field(), v)
    }

    /// The monic polynomial `∏ (x - r)` over distinct roots; `1` when empty.
    pub fn from_roots(field: &Field, roots: &[Gf]) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for r in roots {
            if !same_field(r.field(), field) {
                return Err(FieldError::FieldMismatch.into());
            }
            if !seen.insert(r.raw()) {
                return Err(PolyError::DuplicateRoot(r.raw()));
            }
        }
        Ok(Self::from_raw(field, product_of_linear(field, roots.iter().map(Gf::raw))))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn raw_coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Gf {
        self.field.wrap(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn coeffs(&self) -> Vec<Gf> {
        self.coeffs.iter().map(|&c| self.field.wrap(c)).collect()
    }

    /// Descending view `c_0 = lead, c_1, ..., c_deg`; so for a monic
    /// `∏(x - α_i)` of degree k, `c_j` is the coefficient of `x^{k-j}`.
    pub fn descending(&self) -> Vec<Gf> {
        self.coeffs.iter().rev().map(|&c| self.field.wrap(c)).collect()
    }

    pub fn leading(&self) -> Option<Gf> {
        self.coeffs.last().map(|&c| self.field.wrap(c))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch.into())
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| {
                f.add_raw(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Ok(Self::from_raw(f, v))
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Self::from_raw(f, self.coeffs.iter().map(|&c| f.neg_raw(c)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let f = &self.field;
        let mut v = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add_raw(v[i + j], f.mul_raw(a, b));
            }
        }
        Ok(Self::from_raw(f, v))
    }

    pub fn scale(&self, c: &Gf) -> Result<Poly> {
        if !same_field(c.field(), &self.field) {
            return Err(FieldError::FieldMismatch.into());
        }
        let f = &self.field;
        Ok(Self::from_raw(
            f,
            self.coeffs.iter().map(|&a| f.mul_raw(a, c.raw())).collect(),
        ))
    }

    pub fn div_rem(&self, den: &Poly) -> Result<(Poly, Poly)> {
        self.check(den)?;
        let dd = den.degree().ok_or(PolyError::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv_raw(den.coeffs[dd]).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(dn) = self.degree() else {
            return Ok((Self::zero(f), Self::zero(f)));
        };
        if dn < dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![0u64; dn - dd + 1];
        for i in (dd..=dn).rev() {
            let c = f.mul_raw(rem[i], lead_inv);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in den.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.sub_raw(rem[idx], f.mul_raw(c, b));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_raw(f, quot), Self::from_raw(f, rem)))
    }

    /// Quotient of an exact division.
    pub fn divide_exact(&self, den: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(den)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotExact)
        }
    }

    pub fn rem(&self, den: &Poly) -> Result<Poly> {
        Ok(self.div_rem(den)?.1)
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let p = f.characteristic();
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul_raw(c, (i as u64) % p))
            .collect();
        Self::from_raw(f, v)
    }

    /// Horner evaluation. Panics if `x` lives in another field.
    pub fn eval(&self, x: &Gf) -> Gf {
        self.try_eval(x).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn try_eval(&self, x: &Gf) -> Result<Gf> {
        if !same_field(x.field(), &self.field) {
            return Err(FieldError::FieldMismatch.into());
        }
        Ok(self.field.wrap(self.eval_raw(x.raw())))
    }

    pub(crate) fn eval_raw(&self, x: u64) -> u64 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add_raw(f.mul_raw(acc, x), c))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        match a.leading() {
            Some(l) => a.scale(&l.inv()?),
            None => Ok(a),
        }
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Self::one(&self.field).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?.rem(m)?;
            }
            base = base.mul(&base)?.rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Distinct roots in the coefficient field with their multiplicities,
    /// in canonical element order, by scanning every element.
    pub fn roots_with_multiplicity(&self) -> Result<Vec<(Gf, usize)>> {
        let f = &self.field;
        if f.order() > TABLE_LIMIT {
            return Err(FieldError::ScanLimit(f.order()).into());
        }
        if self.is_zero() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for x in f.canonical_elements() {
            if self.eval_raw(x.raw()) != 0 {
                continue;
            }
            let lin = Self::from_raw(f, vec![f.neg_raw(x.raw()), 1]);
            let mut mult = 0;
            let mut cur = self.clone();
            loop {
                let (q, r) = cur.div_rem(&lin)?;
                if !r.is_zero() {
                    break;
                }
                mult += 1;
                cur = q;
            }
            out.push((x, mult));
        }
        Ok(out)
    }

    /// Distinct roots in canonical order.
    pub fn roots_in_field(&self) -> Result<Vec<Gf>> {
        Ok(self
            .roots_with_multiplicity()?
            .into_iter()
            .map(|(r, _)| r)
            .collect())
    }

    /// Coefficients mapped through a field embedding.
    pub fn map_into(&self, emb: &crate::field::Embedding) -> Result<Poly> {
        let cs = self
            .coeffs()
            .iter()
            .map(|c| emb.apply(c))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Poly::new(emb.target(), &cs)
    }
}

/// Ascending coefficients of `∏ (x - r)` over raw roots.
pub(crate) fn product_of_linear(field: &Field, roots: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut c = vec![1u64];
    for r in roots {
        let nr = field.neg_raw(r);
        c.push(0);
        for i in (0..c.len()).rev() {
            let lower = if i > 0 { c[i - 1] } else { 0 };
            c[i] = field.add_raw(lower, field.mul_raw(c[i], nr));
        }
    }
    c
}

/// Solves `Σ_{j ≤ i} s_j x_{i-j} = [i = 0]` for `i = 0..len` given `s_0 = 1`,
/// i.e. the first column of the inverse of the unit lower-triangular
/// Toeplitz matrix with first column `s`.
fn toeplitz_inverse(field: &Field, s: &[u64], len: usize) -> Vec<u64> {
    let mut x = Vec::with_capacity(len);
    for i in 0..len {
        if i == 0 {
            x.push(1);
            continue;
        }
        let mut acc = 0;
        for j in 1..=i.min(s.len() - 1) {
            acc = field.add_raw(acc, field.mul_raw(s[j], x[i - j]));
        }
        x.push(field.neg_raw(acc));
    }
    x
}

fn check_normalized(field: &Field, seq: &[Gf]) -> Result<Vec<u64>> {
    let first = seq.first().ok_or(PolyError::Empty)?;
    let mut raw = Vec::with_capacity(seq.len());
    for s in seq {
        if !same_field(s.field(), field) {
            return Err(FieldError::FieldMismatch.into());
        }
        raw.push(s.raw());
    }
    if !first.is_one() {
        return Err(PolyError::NotNormalized(first.raw()));
    }
    Ok(raw)
}

/// `e_0 = 1, e_i = -Σ_{j<i} e_j c_{i-j}` for a descending coefficient list `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ESeq {
    field: Field,
    e: Vec<u64>,
}

impl ESeq {
    /// `c = (1, c_1, ..., c_t)`; returns `e_0..e_t`.
    pub fn new(field: &Field, c: &[Gf]) -> Result<Self> {
        let raw = check_normalized(field, c)?;
        Ok(Self::from_raw(field, &raw, raw.len()))
    }

    /// `len` terms from a raw `c` with `c[0] = 1`; `c` is padded with zeros.
    pub(crate) fn from_raw(field: &Field, c: &[u64], len: usize) -> Self {
        ESeq {
            field: Field::clone(field),
            e: toeplitz_inverse(field, c, len),
        }
    }

    pub fn values(&self) -> Vec<Gf> {
        self.e.iter().map(|&v| self.field.wrap(v)).collect()
    }

    pub(crate) fn raw(&self) -> &[u64] {
        &self.e
    }

    pub fn len(&self) -> usize {
        self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e.is_empty()
    }

    /// Recomputes the recursion against `c`.
    pub fn verify(&self, c: &[Gf]) -> bool {
        let Ok(raw) = check_normalized(&self.field, c) else {
            return false;
        };
        self.e == toeplitz_inverse(&self.field, &raw, self.e.len())
    }
}

/// Solution of `Σ_j σ_j Λ_{i-j} = [i = 0]`, `0 ≤ i ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSeq {
    field: Field,
    lambda: Vec<u64>,
}

impl LambdaSeq {
    /// `sigma = (1, σ_1, ..., σ_n)` descending; returns `Λ_0..Λ_n`.
    pub fn new(field: &Field, sigma: &[Gf]) -> Result<Self> {
        let raw = check_normalized(field, sigma)?;
        Ok(LambdaSeq {
            field: Field::clone(field),
            lambda: toeplitz_inverse(field, &raw, raw.len()),
        })
    }

    pub fn values(&self) -> Vec<Gf> {
        self.lambda.iter().map(|&v| self.field.wrap(v)).collect()
    }

    /// Convolution of `sigma` with Λ gives `(1, 0, ..., 0)`.
    pub fn verify(&self, sigma: &[Gf]) -> bool {
        let f = &self.field;
        if sigma.len() != self.lambda.len() {
            return false;
        }
        (0..sigma.len()).all(|i| {
            let s = (0..=i).fold(0, |acc, j| {
                f.add_raw(acc, f.mul_raw(sigma[j].raw(), self.lambda[i - j]))
            });
            s == u64::from(i == 0)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn gf13() -> Field {
        FieldCtx::prime(13).unwrap()
    }

    fn p(f: &Field, c: &[u64]) -> Poly {
        Poly::from_ints(f, c).unwrap()
    }

    fn ints(f: &Field, v: &[i64]) -> Vec<Gf> {
        v.iter().map(|&x| f.int(x)).collect()
    }

    #[test]
    fn from_roots_examples() {
        let f = gf13();
        let r = Poly::from_roots(&f, &ints(&f, &[1, 2, 3])).unwrap();
        assert_eq!(r, p(&f, &[7, 11, 7, 1]));
        let desc: Vec<u64> = r.descending().iter().map(Gf::raw).collect();
        assert_eq!(desc, vec![1, 7, 11, 7]);
        assert_eq!(Poly::from_roots(&f, &[]).unwrap(), Poly::one(&f));
        assert_eq!(Poly::from_roots(&f, &ints(&f, &[0])).unwrap(), p(&f, &[0, 1]));
        assert_eq!(
            Poly::from_roots(&f, &ints(&f, &[4, 4])).unwrap_err(),
            PolyError::DuplicateRoot(4)
        );
    }

    #[test]
    fn divide_exact_examples() {
        let f = gf13();
        let mut xq = vec![0u64; 14];
        xq[13] = 1;
        xq[1] = 12;
        let xq = p(&f, &xq);
        let m = xq.divide_exact(&p(&f, &[8, 0, 0, 1])).unwrap();
        let mut want = vec![0u64; 11];
        want[10] = 1;
        want[7] = 5;
        want[4] = 12;
        want[1] = 8;
        assert_eq!(m, p(&f, &want));
        let den = p(&f, &[0, 10, 0, 0, 0, 1]);
        assert_eq!(xq.divide_exact(&den).unwrap(), p(&f, &[9, 0, 0, 0, 3, 0, 0, 0, 1]));
        assert_eq!(xq.divide_exact(&xq).unwrap(), Poly::one(&f));
        assert_eq!(xq.divide_exact(&p(&f, &[1, 3, 1])).unwrap_err(), PolyError::NotExact);
        assert_eq!(xq.divide_exact(&Poly::zero(&f)).unwrap_err(), PolyError::DivisionByZero);
    }

    #[test]
    fn derivative_examples() {
        let f = gf13();
        let m = p(&f, &[9, 0, 0, 0, 3, 0, 0, 0, 1]);
        assert_eq!(m.derivative(), p(&f, &[0, 0, 0, 12, 0, 0, 0, 8]));
        assert!(p(&f, &[5]).derivative().is_zero());
        let mut x13 = vec![0u64; 14];
        x13[13] = 1;
        assert!(p(&f, &x13).derivative().is_zero());
    }

    #[test]
    fn eval_examples() {
        let f = gf13();
        assert_eq!(p(&f, &[2, 7, 1]).eval(&f.int(0)), f.int(2));
        let dm = p(&f, &[0, 0, 0, 12, 0, 0, 0, 8]);
        assert_eq!(dm.eval(&f.int(1)), f.int(7));
        assert_eq!(dm.eval(&f.int(1)).inv().unwrap(), f.int(2));
    }

    #[test]
    fn root_examples() {
        let f = gf13();
        let roots = |c: &[u64]| -> Vec<u64> {
            p(&f, c).roots_in_field().unwrap().iter().map(Gf::raw).collect()
        };
        assert_eq!(roots(&[8, 0, 0, 1]), vec![7, 8, 11]);
        assert_eq!(roots(&[10, 0, 0, 0, 1]), vec![2, 3, 10, 11]);
        assert_eq!(roots(&[1, 0, 1]), vec![5, 8]);
        let sq = p(&f, &[3, 9, 1]).mul(&p(&f, &[3, 9, 1])).unwrap();
        let rm: Vec<(u64, usize)> = sq
            .roots_with_multiplicity()
            .unwrap()
            .into_iter()
            .map(|(r, m)| (r.raw(), m))
            .collect();
        // x^2 + 9x + 3 = (x - 1)(x - 3)
        assert_eq!(rm, vec![(1, 2), (3, 2)]);
    }

    #[test]
    fn e_sequence_examples() {
        let f = gf13();
        let e = ESeq::new(&f, &ints(&f, &[1, 7, 11, 7])).unwrap();
        assert_eq!(e.values(), ints(&f, &[1, 6, 12, 12]));
        let (c1, c2) = (f.int(4), f.int(9));
        let e = ESeq::new(&f, &[f.one(), c1.clone(), c2.clone()]).unwrap();
        assert_eq!(e.values(), vec![f.one(), -&c1, &(&c1 * &c1) - &c2]);
        let e = ESeq::new(&f, &ints(&f, &[1, 0, 0, 0])).unwrap();
        assert_eq!(e.values(), ints(&f, &[1, 0, 0, 0]));
        assert_eq!(
            ESeq::new(&f, &ints(&f, &[2, 1])).unwrap_err(),
            PolyError::NotNormalized(2)
        );
    }

    #[test]
    fn lambda_sequence_examples() {
        let f = gf13();
        let (s1, s2) = (f.int(5), f.int(11));
        let l = LambdaSeq::new(&f, &[f.one(), s1.clone(), s2.clone(), f.int(3)]).unwrap();
        let v = l.values();
        assert_eq!(v[0], f.one());
        assert_eq!(v[1], -&s1);
        assert_eq!(v[2], &(&s1 * &s1) - &s2);
        assert!(l.verify(&[f.one(), s1, s2, f.int(3)]));
        let l = LambdaSeq::new(&f, &ints(&f, &[1, 0, 0])).unwrap();
        assert_eq!(l.values(), ints(&f, &[1, 0, 0]));
    }

    #[test]
    fn gcd_and_pow_mod() {
        let f = gf13();
        let a = Poly::from_roots(&f, &ints(&f, &[1, 2, 5])).unwrap();
        let b = Poly::from_roots(&f, &ints(&f, &[2, 5, 7])).unwrap();
        assert_eq!(a.gcd(&b).unwrap(), Poly::from_roots(&f, &ints(&f, &[2, 5])).unwrap());
        // x^13 ≡ x mod any polynomial over GF(13) that splits into distinct linear factors
        let x = p(&f, &[0, 1]);
        assert_eq!(x.pow_mod(13, &a).unwrap(), x);
    }

    #[test]
    fn display_is_readable() {
        let f = gf13();
        assert_eq!(p(&f, &[9, 0, 0, 0, 3, 0, 0, 0, 1]).to_string(), "x^8 + 3x^4 + 9");
        assert_eq!(Poly::zero(&f).to_string(), "0");
    }
}
