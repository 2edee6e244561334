//! Finite fields GF(p^m) with a runtime-chosen characteristic and modulus.
//!
//! An element is stored as the integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! of its coefficient vector in the polynomial basis `1, x, ..., x^{m-1}`.
//! That integer is also the wire encoding used by the JSON and CLI formats,
//! so prime-field elements are simply their residues.
//!
//! Fields of order at most [`TABLE_LIMIT`] carry discrete-log tables, built
//! once at construction, which back multiplication, inversion and square
//! roots. Larger fields fall back to polynomial arithmetic and
//! Tonelli-Shanks.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

/// Fields up to this order get log/antilog tables and may be scanned exhaustively.
pub const TABLE_LIMIT: u64 = 1_000_000;

/// Largest `p^m - 1` that [`FieldCtx::find_generator`] will factor by trial division.
pub const FACTOR_LIMIT: u64 = 1_000_000_000_000;

const ORDER_LIMIT: u64 = 1 << 62;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not a prime >= 3")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus must be a monic polynomial of degree {0} with coefficients below p")]
    BadModulus(usize),
    #[error("modulus is reducible over GF({0})")]
    Reducible(u64),
    #[error("a modulus is only meaningful for extension degree > 1")]
    UnexpectedModulus,
    #[error("field order p^m exceeds 2^62")]
    TooLarge,
    #[error("element {value} is out of range for a field of order {order}")]
    OutOfRange { value: u64, order: u64 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("p^m - 1 = {0} exceeds the factoring limit")]
    FactorLimit(u64),
    #[error("field of order {0} exceeds the exhaustive scan limit")]
    ScanLimit(u64),
    #[error("no embedding: {0}")]
    Embedding(String),
    #[error("cannot parse field `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, FieldError>;

/// Shared handle to a field; elements, polynomials and matrices all hold one.
pub type Field = Arc<FieldCtx>;

struct LogTables {
    /// `exp[i] = g^i` for `0 <= i < order - 1`.
    exp: Vec<u32>,
    /// `log[v]` for nonzero raw value `v`; `log[0]` is unused.
    log: Vec<u32>,
    generator: u64,
}

/// A finite field GF(p^m). Immutable once built.
pub struct FieldCtx {
    p: u64,
    m: usize,
    /// Ascending coefficients, monic, length `m + 1`. Absent for prime fields.
    modulus: Option<Vec<u64>>,
    order: u64,
    tables: Option<LogTables>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.spec_string())
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn checked_order(p: u64, m: usize) -> Result<u64> {
    let mut order = 1u64;
    for _ in 0..m {
        order = order.checked_mul(p).ok_or(FieldError::TooLarge)?;
        if order > ORDER_LIMIT {
            return Err(FieldError::TooLarge);
        }
    }
    Ok(order)
}

impl FieldCtx {
    /// Builds GF(p^m). When `modulus` is `None` and `m > 1`, the
    /// lexicographically least monic irreducible polynomial of degree `m`
    /// is used (ascending coefficients compared from the constant term).
    pub fn new(p: u64, m: usize, modulus: Option<&[u64]>) -> Result<Field> {
        if p < 3 || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = checked_order(p, m)?;
        let modulus = match (m, modulus) {
            (1, None) => None,
            (1, Some(_)) => return Err(FieldError::UnexpectedModulus),
            (_, Some(f)) => {
                if f.len() != m + 1 || f[m] != 1 || f.iter().any(|&c| c >= p) {
                    return Err(FieldError::BadModulus(m));
                }
                if !irreducible_over_prime(p, f) {
                    return Err(FieldError::Reducible(p));
                }
                Some(f.to_vec())
            }
            (_, None) => Some(least_irreducible(p, m)),
        };
        let mut ctx = FieldCtx {
            p,
            m,
            modulus,
            order,
            tables: None,
        };
        if order <= TABLE_LIMIT {
            let generator = ctx.search_generator()?;
            ctx.tables = Some(ctx.build_tables(generator));
        }
        Ok(Arc::new(ctx))
    }

    pub fn prime(p: u64) -> Result<Field> {
        Self::new(p, 1, None)
    }

    /// Parses `"p"` or `"p^m/c0,c1,...,cm"` (ascending modulus coefficients).
    /// `"p^m"` without a modulus selects the default one.
    pub fn parse(input: &str) -> Result<Field> {
        let bad = |reason: &str| FieldError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let s = input.trim();
        let (head, modulus) = match s.split_once('/') {
            Some((h, m)) => (h, Some(m)),
            None => (s, None),
        };
        let (p, m) = match head.split_once('^') {
            Some((p, m)) => (
                p.trim().parse::<u64>().map_err(|_| bad("bad characteristic"))?,
                m.trim().parse::<usize>().map_err(|_| bad("bad degree"))?,
            ),
            None => (head.trim().parse::<u64>().map_err(|_| bad("bad characteristic"))?, 1),
        };
        let coeffs = match modulus {
            Some(list) => Some(
                list.split(',')
                    .map(|c| c.trim().parse::<u64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| bad("bad modulus coefficient"))?,
            ),
            None => None,
        };
        Self::new(p, m, coeffs.as_deref())
    }

    /// Inverse of [`FieldCtx::parse`]; always spells out the modulus.
    pub fn spec_string(&self) -> String {
        match &self.modulus {
            None => self.p.to_string(),
            Some(f) => {
                let cs: Vec<String> = f.iter().map(|c| c.to_string()).collect();
                format!("{}^{}/{}", self.p, self.m, cs.join(","))
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    // ------------------------------------------------------------------
    // element constructors

    pub fn elem(self: &Arc<Self>, value: u64) -> Result<Gf> {
        if value >= self.order {
            return Err(FieldError::OutOfRange {
                value,
                order: self.order,
            });
        }
        Ok(Gf {
            field: Arc::clone(self),
            value,
        })
    }

    /// Element of the prime subfield congruent to `n`.
    pub fn int(self: &Arc<Self>, n: i64) -> Gf {
        let r = n.rem_euclid(self.p as i64) as u64;
        Gf {
            field: Arc::clone(self),
            value: r,
        }
    }

    pub fn zero(self: &Arc<Self>) -> Gf {
        self.wrap(0)
    }

    pub fn one(self: &Arc<Self>) -> Gf {
        self.wrap(1)
    }

    /// Element from its ascending coefficient vector (length at most `m`).
    pub fn from_coeffs(self: &Arc<Self>, coeffs: &[u64]) -> Result<Gf> {
        if coeffs.len() > self.m || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::OutOfRange {
                value: coeffs.iter().copied().max().unwrap_or(0),
                order: self.order,
            });
        }
        Ok(self.wrap(self.pack_digits(coeffs)))
    }

    /// The class of `x` in GF(p)[x]/(modulus); for prime fields this is 0.
    pub fn basis_generator(self: &Arc<Self>) -> Gf {
        if self.m == 1 {
            self.zero()
        } else {
            self.wrap(self.p)
        }
    }

    pub(crate) fn wrap(self: &Arc<Self>, value: u64) -> Gf {
        debug_assert!(value < self.order);
        Gf {
            field: Arc::clone(self),
            value,
        }
    }

    /// Every element, in raw (integer) order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = Gf> + '_ {
        (0..self.order).map(move |v| self.wrap(v))
    }

    /// Every element in canonical order: lexicographic on the ascending
    /// coefficient vector, so the constant term is most significant.
    pub fn canonical_elements(self: &Arc<Self>) -> impl Iterator<Item = Gf> + '_ {
        (0..self.order).map(move |w| self.wrap(self.canonical_to_raw(w)))
    }

    // ------------------------------------------------------------------
    // raw arithmetic on encoded values

    pub(crate) fn digits(&self, mut v: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.m);
        for _ in 0..self.m {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    pub(crate) fn pack_digits(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn canonical_to_raw(&self, w: u64) -> u64 {
        if self.m == 1 {
            return w;
        }
        // w's most significant base-p digit is c_0.
        let mut d = self.digits(w);
        d.reverse();
        self.pack_digits(&d)
    }

    pub(crate) fn canonical_key(&self, v: u64) -> u64 {
        // canonical_to_raw is an involution on digit vectors
        self.canonical_to_raw(v)
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        if self.m == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else {
            let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
            for _ in 0..self.m {
                let s = (a % self.p + b % self.p) % self.p;
                out += s * place;
                place *= self.p;
                a /= self.p;
                b /= self.p;
            }
            out
        }
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u64) -> u64 {
        if self.m == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            let d: Vec<u64> = self
                .digits(a)
                .into_iter()
                .map(|c| if c == 0 { 0 } else { self.p - c })
                .collect();
            self.pack_digits(&d)
        }
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u64, b: u64) -> u64 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.m == 1 {
            return ((a as u128 * b as u128) % self.p as u128) as u64;
        }
        match &self.tables {
            Some(t) => {
                let n = self.order - 1;
                let e = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % n;
                t.exp[e as usize] as u64
            }
            None => self.mul_poly_raw(a, b),
        }
    }

    fn mul_poly_raw(&self, a: u64, b: u64) -> u64 {
        let p = self.p as u128;
        let m = self.m;
        let modulus = self.modulus.as_ref().expect("extension field has a modulus");
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u128; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        for d in (m..2 * m - 1).rev() {
            let lead = prod[d];
            if lead == 0 {
                continue;
            }
            // x^m = -(f_0 + ... + f_{m-1} x^{m-1})
            for (i, &f) in modulus[..m].iter().enumerate() {
                let sub = lead * f as u128 % p;
                prod[d - m + i] = (prod[d - m + i] + p - sub) % p;
            }
            prod[d] = 0;
        }
        let d: Vec<u64> = prod[..m].iter().map(|&c| c as u64).collect();
        self.pack_digits(&d)
    }

    pub(crate) fn pow_raw(&self, a: u64, mut e: u64) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            let n = self.order - 1;
            let idx = (t.log[a as usize] as u128 * (e % n) as u128 % n as u128) as usize;
            return t.exp[idx] as u64;
        }
        let (mut base, mut acc) = (a, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inv_raw(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if let Some(t) = &self.tables {
            let n = self.order - 1;
            let l = t.log[a as usize] as u64;
            return Some(t.exp[((n - l) % n) as usize] as u64);
        }
        Some(self.pow_raw(a, self.order - 2))
    }

    fn search_generator(&self) -> Result<u64> {
        let n = self.order - 1;
        if n > FACTOR_LIMIT {
            return Err(FieldError::FactorLimit(n));
        }
        let cofactors: Vec<u64> = prime_factors(n).into_iter().map(|r| n / r).collect();
        for w in 1..self.order {
            let g = self.canonical_to_raw(w);
            if g == 0 {
                continue;
            }
            if cofactors.iter().all(|&c| self.pow_raw(g, c) != 1) {
                return Ok(g);
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    fn build_tables(&self, generator: u64) -> LogTables {
        let n = (self.order - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![0u32; self.order as usize];
        let mut x = 1u64;
        for i in 0..n {
            exp.push(x as u32);
            log[x as usize] = i as u32;
            x = self.mul_raw(x, generator);
        }
        LogTables {
            exp,
            log,
            generator,
        }
    }

    /// Least element (canonical order) of multiplicative order `p^m - 1`.
    pub fn find_generator(self: &Arc<Self>) -> Result<Gf> {
        match &self.tables {
            Some(t) => Ok(self.wrap(t.generator)),
            None => Ok(self.wrap(self.search_generator()?)),
        }
    }

    /// Discrete logarithm to the base of [`FieldCtx::find_generator`].
    pub fn discrete_log(&self, x: &Gf) -> Option<u64> {
        let t = self.tables.as_ref()?;
        if x.value == 0 {
            return None;
        }
        Some(t.log[x.value as usize] as u64)
    }

    fn is_square_raw(&self, a: u64) -> bool {
        if a == 0 {
            return true;
        }
        match &self.tables {
            Some(t) => t.log[a as usize] % 2 == 0,
            None => self.pow_raw(a, (self.order - 1) / 2) == 1,
        }
    }

    fn sqrt_raw(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return Some(0);
        }
        if !self.is_square_raw(a) {
            return None;
        }
        let y = match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] / 2) as usize] as u64,
            None => self.tonelli_shanks(a),
        };
        let z = self.neg_raw(y);
        Some(if self.canonical_key(z) < self.canonical_key(y) {
            z
        } else {
            y
        })
    }

    fn tonelli_shanks(&self, a: u64) -> u64 {
        let mut q = self.order - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let minus_one = self.neg_raw(1);
        let z = (1..self.order)
            .map(|w| self.canonical_to_raw(w))
            .find(|&z| self.pow_raw(z, (self.order - 1) / 2) == minus_one)
            .expect("odd-order field has a non-residue");
        let mut m = s;
        let mut c = self.pow_raw(z, q);
        let mut t = self.pow_raw(a, q);
        let mut r = self.pow_raw(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul_raw(t2, t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.mul_raw(b, b);
            }
            m = i;
            c = self.mul_raw(b, b);
            t = self.mul_raw(t, c);
            r = self.mul_raw(r, b);
        }
        r
    }
}

// ----------------------------------------------------------------------
// polynomial helpers over GF(p), raw u64 coefficients (ascending)

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn prem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while r.len() > df {
        let d = r.len() - 1;
        let coef = (r[d] as u128 * lead_inv as u128 % p as u128) as u64;
        for (i, &fc) in f.iter().enumerate() {
            let sub = (coef as u128 * fc as u128 % p as u128) as u64;
            let idx = d - df + i;
            r[idx] = (r[idx] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

fn pmulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    prem(&prod, f, p)
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = prem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^i) mod f` for i = 1..=m, by repeated p-th powering.
fn frobenius_powers(p: u64, f: &[u64], count: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::with_capacity(count);
    let mut cur = prem(&[0, 1], f, p);
    for _ in 0..count {
        // cur <- cur^p
        let (mut base, mut e, mut acc) = (cur.clone(), p, vec![1u64]);
        while e > 0 {
            if e & 1 == 1 {
                acc = pmulmod(&acc, &base, f, p);
            }
            base = pmulmod(&base, &base, f, p);
            e >>= 1;
        }
        cur = acc;
        out.push(cur.clone());
    }
    out
}

/// Rabin's irreducibility test for a monic `f` of degree m over GF(p).
pub(crate) fn irreducible_over_prime(p: u64, f: &[u64]) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let pows = frobenius_powers(p, f, m);
    let x_minus = |mut v: Vec<u64>| {
        v.resize(v.len().max(2), 0);
        v[1] = (v[1] + p - 1) % p;
        trim(&mut v);
        v
    };
    if !x_minus(pows[m - 1].clone()).is_empty() {
        return false;
    }
    for r in prime_factors(m as u64) {
        let d = m / r as usize;
        let g = pgcd(f, &x_minus(pows[d - 1].clone()), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn least_irreducible(p: u64, m: usize) -> Vec<u64> {
    // c_0 is the most significant position in the lexicographic order.
    let total = p.pow(m as u32);
    for w in 0..total {
        let mut f = vec![0u64; m + 1];
        let mut x = w;
        for i in (0..m).rev() {
            f[i] = x % p;
            x /= p;
        }
        f[m] = 1;
        if irreducible_over_prime(p, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

// ----------------------------------------------------------------------
// elements

/// One element of a [`FieldCtx`].
///
/// Operators panic when the operands come from different fields; the
/// `try_*` methods report that as [`FieldError::FieldMismatch`] instead.
#[derive(Clone)]
pub struct Gf {
    field: Field,
    value: u64,
}

impl Gf {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The integer encoding `Σ c_i p^i`.
    pub fn raw(&self) -> u64 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.digits(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn is_one(&self) -> bool {
        self.value == 1
    }

    pub fn same_field(&self, other: &Gf) -> bool {
        same_field(&self.field, &other.field)
    }

    fn check(&self, other: &Gf) -> Result<()> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Gf) -> Result<Gf> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.add_raw(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &Gf) -> Result<Gf> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.sub_raw(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &Gf) -> Result<Gf> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.mul_raw(self.value, other.value)))
    }

    pub fn try_div(&self, other: &Gf) -> Result<Gf> {
        self.check(other)?;
        let inv = other.inv()?;
        Ok(self.field.wrap(self.field.mul_raw(self.value, inv.value)))
    }

    pub fn inv(&self) -> Result<Gf> {
        self.field
            .inv_raw(self.value)
            .map(|v| self.field.wrap(v))
            .ok_or(FieldError::ZeroInverse)
    }

    pub fn pow(&self, e: u64) -> Gf {
        self.field.wrap(self.field.pow_raw(self.value, e))
    }

    /// Negative exponents go through the inverse.
    pub fn pow_signed(&self, e: i64) -> Result<Gf> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    pub fn is_square(&self) -> bool {
        self.field.is_square_raw(self.value)
    }

    /// The canonically least square root, if one exists in this field.
    pub fn sqrt(&self) -> Option<Gf> {
        self.field.sqrt_raw(self.value).map(|v| self.field.wrap(v))
    }

    /// Multiplicative order; `None` for zero.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let n = self.field.order - 1;
        let mut ord = n;
        for r in prime_factors(n) {
            while ord.is_multiple_of(r) && self.field.pow_raw(self.value, ord / r) == 1 {
                ord /= r;
            }
        }
        Some(ord)
    }
}

pub(crate) fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.same_field(other)
    }
}

impl Eq for Gf {}

impl Hash for Gf {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl PartialOrd for Gf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: lexicographic on the ascending coefficient vector.
impl Ord for Gf {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .canonical_key(self.value)
            .cmp(&other.field.canonical_key(other.value))
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.m == 1 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{:?}", self.coeffs())
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Gf> for &Gf {
            type Output = Gf;
            fn $method(self, rhs: &Gf) -> Gf {
                self.$try(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $trait<Gf> for Gf {
            type Output = Gf;
            fn $method(self, rhs: Gf) -> Gf {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Gf> for Gf {
            type Output = Gf;
            fn $method(self, rhs: &Gf) -> Gf {
                (&self).$method(rhs)
            }
        }
        impl $trait<Gf> for &Gf {
            type Output = Gf;
            fn $method(self, rhs: Gf) -> Gf {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &Gf {
    type Output = Gf;
    fn neg(self) -> Gf {
        self.field.wrap(self.field.neg_raw(self.value))
    }
}

impl Neg for Gf {
    type Output = Gf;
    fn neg(self) -> Gf {
        -&self
    }
}

// ----------------------------------------------------------------------
// embeddings and square roots

/// A field homomorphism GF(p^a) -> GF(p^b), `a | b`, fixed by the image of
/// the source's basis generator: the canonically least root of the source
/// modulus inside the target.
#[derive(Clone)]
pub struct Embedding {
    source: Field,
    target: Field,
    /// Images of `1, x, ..., x^{a-1}` as raw target values.
    basis_images: Vec<u64>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({:?} -> {:?})", self.source, self.target)
    }
}

impl Embedding {
    pub fn new(source: &Field, target: &Field) -> Result<Self> {
        if source.p != target.p || !target.m.is_multiple_of(source.m) {
            return Err(FieldError::Embedding(format!(
                "GF({}) does not embed in GF({})",
                source.spec_string(),
                target.spec_string()
            )));
        }
        if source.m == 1 {
            return Ok(Embedding {
                source: Arc::clone(source),
                target: Arc::clone(target),
                basis_images: vec![1],
            });
        }
        if same_field(source, target) {
            let basis_images = (0..source.m).map(|i| source.p.pow(i as u32)).collect();
            return Ok(Embedding {
                source: Arc::clone(source),
                target: Arc::clone(target),
                basis_images,
            });
        }
        if target.order > TABLE_LIMIT {
            return Err(FieldError::ScanLimit(target.order));
        }
        let f = source.modulus.as_ref().expect("extension has a modulus");
        let root = (1..target.order)
            .map(|w| target.canonical_to_raw(w))
            .find(|&r| {
                // Horner over the target, coefficients are prime-field residues
                f.iter()
                    .rev()
                    .fold(0u64, |acc, &c| target.add_raw(target.mul_raw(acc, r), c))
                    == 0
            })
            .ok_or_else(|| FieldError::Embedding("source modulus has no root in target".into()))?;
        let mut basis_images = Vec::with_capacity(source.m);
        let mut x = 1u64;
        for _ in 0..source.m {
            basis_images.push(x);
            x = target.mul_raw(x, root);
        }
        Ok(Embedding {
            source: Arc::clone(source),
            target: Arc::clone(target),
            basis_images,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, x: &Gf) -> Result<Gf> {
        if !same_field(x.field(), &self.source) {
            return Err(FieldError::FieldMismatch);
        }
        let t = &self.target;
        let v = self
            .source
            .digits(x.value)
            .iter()
            .zip(&self.basis_images)
            .fold(0u64, |acc, (&c, &b)| t.add_raw(acc, t.mul_raw(c, b)));
        Ok(t.wrap(v))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Embedding) -> Result<Embedding> {
        if !same_field(&self.target, &next.source) {
            return Err(FieldError::FieldMismatch);
        }
        let basis_images = self
            .basis_images
            .iter()
            .map(|&b| next.apply(&self.target.wrap(b)).map(|g| g.value))
            .collect::<Result<Vec<_>>>()?;
        Ok(Embedding {
            source: Arc::clone(&self.source),
            target: Arc::clone(&next.target),
            basis_images,
        })
    }

    /// Preimage of `y`, if it lies in the image. Scans the source field.
    pub fn preimage(&self, y: &Gf) -> Result<Option<Gf>> {
        if self.source.order > TABLE_LIMIT {
            return Err(FieldError::ScanLimit(self.source.order));
        }
        for x in self.source.elements() {
            if self.apply(&x)? == *y {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }
}

/// Square root of an element of GF(p^s) inside GF(p^{2s}).
///
/// Every element of the subfield is a square in its quadratic extension, so
/// this only fails on incompatible field pairs. Of the two roots, the
/// canonically smaller one is returned.
pub fn sqrt_in_extension(x: &Gf, embedding: &Embedding) -> Result<Gf> {
    let (src, dst) = (embedding.source(), embedding.target());
    if dst.m != 2 * src.m {
        return Err(FieldError::Embedding(format!(
            "GF({}) is not a quadratic extension of GF({})",
            dst.spec_string(),
            src.spec_string()
        )));
    }
    let y = embedding.apply(x)?;
    y.sqrt().ok_or_else(|| {
        FieldError::Embedding("subfield element without a square root in the quadratic extension".into())
    })
}
